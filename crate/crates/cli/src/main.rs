//! `numap`: command-line access to numerical-map computations on JSON input.
//!
//! Exit codes: 0 success, 1 malformed input, 2 rank or degree mismatch,
//! 3 non-integral conversion, 4 verification failure.

use std::io::{Read, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use numap::augment::{chi_class, dev_class, universal_factor};
use numap::identities::{run_identities, IdentityConfig};
use numap::json::{int_from_value, int_vec_from_value, int_vec_to_value};
use numap::natural::{
    check_naturality, demo_counterexample, AlgebraHom, Diagonal, ElemJson, Evaluation, Identity,
    IntegerPower, Projection, TensorElem,
};
use numap::numap::{
    check_eq1, check_eq2, deviate, eval_table, extract, numerical_to_strict_rational, parse_spec,
    spec_oracle, strict_to_numerical, verify_degree, AnyTable, VerifySample,
};
use numap::random::{seeded, RandomElem};
use numap::ring::{IntegerValued, Integers};
use numap::{Error, NumTable};

#[derive(Parser)]
#[command(
    name = "numap",
    version,
    about = "Exact computation with numerical maps Z^k -> Z^m"
)]
struct Cli {
    /// Seed for randomized samples.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the JSON result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

/// JSON arguments are inline text, a file path, or `-` for standard input.
#[derive(Subcommand)]
enum Command {
    /// Deviation φ(x_1 ◇ ⋯ ◇ x_t) of an oracle.
    Deviate {
        #[arg(long)]
        oracle: String,
        /// Array of argument vectors.
        #[arg(long)]
        args: String,
    },
    /// Coefficient table of an oracle up to a degree bound.
    Extract {
        #[arg(long)]
        oracle: String,
        /// Defaults to the degree of the oracle spec.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Evaluate a table at a point of A^k.
    Eval {
        #[arg(long)]
        table: String,
        /// k elements of the algebra.
        #[arg(long)]
        point: String,
        /// Z, Z^r or IntZ.
        #[arg(long, default_value = "Z")]
        algebra: String,
    },
    /// Check both defining equations of degree ≤ n on a sample.
    Verify {
        #[arg(long)]
        oracle: String,
        #[arg(long)]
        degree: usize,
        /// Argument entries, as a:b.
        #[arg(long, allow_hyphen_values = true, default_value = "-3:3")]
        range: String,
        /// Scalars r, as a:b.
        #[arg(long, allow_hyphen_values = true, default_value = "-6:6")]
        scalars: String,
        /// Draw this many random cases instead of the grid.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Both sides of φ(rx) = Σ_m (−1)^{n−m} binom(r,m) binom(r−m−1,n−m) φ(mx).
    Eq1 {
        #[arg(long)]
        oracle: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        x: String,
    },
    /// Both sides of the expansion of φ(a_1x_1 ◇ ⋯ ◇ a_tx_t).
    Eq2 {
        #[arg(long)]
        oracle: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        a: String,
        #[arg(long)]
        xs: String,
    },
    /// Convert between the monomial and binomial bases.
    Convert {
        #[arg(long)]
        table: String,
    },
    /// The linear map on Z[t]/J_n through which the table factors.
    Universal {
        #[arg(long)]
        table: String,
        /// Also apply it to the class of this point.
        #[arg(long)]
        at: Option<String>,
    },
    /// Class of a point, or of a deviation, in Z[t]/J_n.
    Chi {
        #[arg(long)]
        degree: usize,
        #[arg(long, conflicts_with = "dev", required_unless_present = "dev")]
        x: Option<String>,
        /// Array of vectors x_1, …, x_t.
        #[arg(long)]
        dev: Option<String>,
        /// Number of variables, needed when --dev is empty.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Check that a homomorphism commutes with the extended map.
    Naturality {
        #[arg(long)]
        table: String,
        /// id, ev:a, diag or proj:i (1-based).
        #[arg(long)]
        hom: String,
        /// Algebra for id.
        #[arg(long, default_value = "Z")]
        algebra: String,
        /// Rank r of Z^r for diag and proj.
        #[arg(long, default_value_t = 2)]
        rank: usize,
        /// One tensor element (k source elements); random ones if absent.
        #[arg(long)]
        z: Option<String>,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
    /// binom(x,2) has no integral monomial representation; x² does.
    DemoCounterexample {
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Binomial lemma exhaustively, eq1 and eq2 on random table-backed maps.
    Identities {
        /// Range of r for the lemma, as a:b.
        #[arg(long, allow_hyphen_values = true, default_value = "-10:10")]
        range: String,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "-6:6")]
        scalars: String,
        #[arg(long, default_value_t = 500)]
        instances: usize,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Lib(Error::Json(e))
    }
}

type Outcome = Result<(Value, u8), Failure>;

fn load(arg: &str) -> Result<Value, Failure> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(e.to_string()))?;
        s
    } else if std::path::Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| Failure::Io(format!("{arg}: {e}")))?
    } else {
        arg.to_string()
    };
    Ok(serde_json::from_str(&text)?)
}

fn load_vectors(arg: &str) -> Result<Vec<Vec<numap::Int>>, Failure> {
    let v = load(arg)?;
    let list = v
        .as_array()
        .ok_or_else(|| Error::Malformed("expected an array of vectors".into()))?;
    Ok(list.iter().map(int_vec_from_value).collect::<Result<_, _>>()?)
}

fn load_table(arg: &str) -> Result<NumTable, Failure> {
    Ok(parse_spec(load(arg)?)?.to_numerical())
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, Failure> {
    let bad = || Error::Malformed(format!("range must be a:b with a <= b, found {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let (a, b): (i64, i64) = (
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    );
    if a > b {
        return Err(bad().into());
    }
    Ok(a..=b)
}

fn parse_algebra(s: &str) -> Result<Algebra, Failure> {
    match s {
        "Z" => Ok(Algebra::Z),
        "IntZ" => Ok(Algebra::IntZ),
        _ => s
            .strip_prefix("Z^")
            .and_then(|r| r.parse().ok())
            .map(|rank| Algebra::Power(IntegerPower { rank }))
            .ok_or_else(|| Error::Malformed(format!("unknown algebra {s:?}; use Z, Z^r or IntZ")).into()),
    }
}

enum Algebra {
    Z,
    Power(IntegerPower),
    IntZ,
}

fn eval_in<A: ElemJson>(t: &NumTable, alg: &A, point: &Value) -> Outcome {
    let elems = point
        .as_array()
        .ok_or_else(|| Error::Malformed("point must be an array of algebra elements".into()))?
        .iter()
        .map(|e| alg.decode(e))
        .collect::<Result<Vec<_>, _>>()?;
    let value = eval_table(t, alg, &elems)?;
    Ok((Value::Array(value.iter().map(|e| alg.encode(e)).collect()), 0))
}

fn naturality_for<H>(t: &NumTable, h: &H, z: Option<&Value>, count: usize, seed: u64) -> Outcome
where
    H: AlgebraHom,
    H::Source: ElemJson + RandomElem,
{
    let src = h.source();
    let zs = match z {
        Some(v) => {
            let comps = v
                .as_array()
                .ok_or_else(|| Error::Malformed("z must be an array of k algebra elements".into()))?
                .iter()
                .map(|e| src.decode(e))
                .collect::<Result<Vec<_>, _>>()?;
            vec![TensorElem::new(comps)]
        }
        None => {
            let mut rng = seeded(seed);
            (0..count)
                .map(|_| TensorElem::new((0..t.k()).map(|_| src.random_elem(&mut rng)).collect()))
                .collect()
        }
    };
    let report = check_naturality(t, h, &zs)?;
    let code = if report.is_empty() { 0 } else { 4 };
    Ok((report.to_json(), code))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Deviate { oracle, args } => {
            let phi = spec_oracle(&parse_spec(load(&oracle)?)?);
            Ok((int_vec_to_value(&deviate(&phi, &load_vectors(&args)?)?), 0))
        }
        Command::Extract { oracle, degree } => {
            let spec = parse_spec(load(&oracle)?)?;
            let n = degree.unwrap_or(spec.n());
            Ok((serde_json::to_value(extract(&spec_oracle(&spec), n)?)?, 0))
        }
        Command::Eval {
            table,
            point,
            algebra,
        } => {
            let t = load_table(&table)?;
            let point = load(&point)?;
            match parse_algebra(&algebra)? {
                Algebra::Z => eval_in(&t, &Integers, &point),
                Algebra::Power(p) => eval_in(&t, &p, &point),
                Algebra::IntZ => eval_in(&t, &IntegerValued, &point),
            }
        }
        Command::Verify {
            oracle,
            degree,
            range,
            scalars,
            random,
        } => {
            let spec = parse_spec(load(&oracle)?)?;
            let (args, scalars) = (parse_range(&range)?, parse_range(&scalars)?);
            let seed = cli.seed.unwrap_or(VerifySample::DEFAULT_SEED);
            let sample = match random {
                Some(count) => VerifySample::random(spec.k(), degree, args, scalars, count, seed),
                None => VerifySample::new(spec.k(), degree, args, scalars, seed),
            };
            let report = verify_degree(&spec_oracle(&spec), degree, &sample)?;
            let code = if report.is_empty() { 0 } else { 4 };
            Ok((report.to_json(), code))
        }
        Command::Eq1 { oracle, degree, r, x } => {
            let phi = spec_oracle(&parse_spec(load(&oracle)?)?);
            let r = int_from_value(&load(&r)?)?;
            let (lhs, rhs) = check_eq1(&phi, degree, &r, &int_vec_from_value(&load(&x)?)?)?;
            let code = if lhs == rhs { 0 } else { 4 };
            Ok((
                json!({"lhs": int_vec_to_value(&lhs), "rhs": int_vec_to_value(&rhs), "equal": code == 0}),
                code,
            ))
        }
        Command::Eq2 {
            oracle,
            degree,
            a,
            xs,
        } => {
            let phi = spec_oracle(&parse_spec(load(&oracle)?)?);
            let a = int_vec_from_value(&load(&a)?)?;
            let (lhs, rhs) = check_eq2(&phi, degree, &a, &load_vectors(&xs)?)?;
            let code = if lhs == rhs { 0 } else { 4 };
            Ok((
                json!({"lhs": int_vec_to_value(&lhs), "rhs": int_vec_to_value(&rhs), "equal": code == 0}),
                code,
            ))
        }
        Command::Convert { table } => match parse_spec(load(&table)?)? {
            AnyTable::Monomial(s) => Ok((serde_json::to_value(strict_to_numerical(&s))?, 0)),
            AnyTable::Binomial(t) => {
                let back = numerical_to_strict_rational(&t);
                match back.table.to_integral() {
                    Some(s) => Ok((serde_json::to_value(s)?, 0)),
                    None => Ok((serde_json::to_value(&back.table)?, 3)),
                }
            }
        },
        Command::Universal { table, at } => {
            let t = load_table(&table)?;
            let uf = universal_factor(&t);
            let mut out = uf.to_json();
            if let Some(at) = at {
                let a = int_vec_from_value(&load(&at)?)?;
                if a.len() != t.k() {
                    return Err(Error::RankMismatch {
                        what: "point",
                        expected: t.k(),
                        found: a.len(),
                    }
                    .into());
                }
                let class = chi_class(&a, t.n());
                out["at"] = int_vec_to_value(&a);
                out["chi"] = serde_json::to_value(&class)?;
                out["value"] = int_vec_to_value(&uf.apply(&class)?);
            }
            Ok((out, 0))
        }
        Command::Chi { degree, x, dev, k } => {
            let class = match (x, dev) {
                (Some(x), _) => chi_class(&int_vec_from_value(&load(&x)?)?, degree),
                (None, Some(dev)) => {
                    let xs = load_vectors(&dev)?;
                    let k = match (k, xs.first()) {
                        (Some(k), _) => k,
                        (None, Some(x)) => x.len(),
                        (None, None) => {
                            return Err(Error::Malformed("--k is needed for an empty --dev".into()).into())
                        }
                    };
                    dev_class(k, &xs, degree)?
                }
                (None, None) => unreachable!("clap requires one of --x and --dev"),
            };
            Ok((serde_json::to_value(&class)?, 0))
        }
        Command::Naturality {
            table,
            hom,
            algebra,
            rank,
            z,
            count,
        } => {
            let t = load_table(&table)?;
            let z = z.map(|z| load(&z)).transpose()?;
            let z = z.as_ref();
            let seed = cli.seed.unwrap_or(1);
            let power = IntegerPower { rank };
            if hom == "id" {
                return match parse_algebra(&algebra)? {
                    Algebra::Z => naturality_for(&t, &Identity(Integers), z, count, seed),
                    Algebra::Power(p) => naturality_for(&t, &Identity(p), z, count, seed),
                    Algebra::IntZ => naturality_for(&t, &Identity(IntegerValued), z, count, seed),
                };
            }
            if hom == "diag" {
                return naturality_for(&t, &Diagonal { target: power }, z, count, seed);
            }
            if let Some(a) = hom.strip_prefix("ev:") {
                let at = int_from_value(&Value::String(a.into()))?;
                return naturality_for(&t, &Evaluation { at }, z, count, seed);
            }
            if let Some(i) = hom.strip_prefix("proj:") {
                let index: usize = i
                    .parse()
                    .ok()
                    .filter(|&i| (1..=rank).contains(&i))
                    .ok_or_else(|| {
                        Error::Malformed(format!("proj index must be in 1..={rank}, found {i:?}"))
                    })?;
                return naturality_for(
                    &t,
                    &Projection {
                        source: power,
                        index: index - 1,
                    },
                    z,
                    count,
                    seed,
                );
            }
            Err(Error::Malformed(format!("unknown hom {hom:?}; use id, ev:a, diag or proj:i")).into())
        }
        Command::DemoCounterexample { degree } => {
            if degree < 2 {
                return Err(Error::Malformed("the counterexample needs degree at least 2".into()).into());
            }
            Ok((demo_counterexample(degree)?.to_json(), 0))
        }
        Command::Identities {
            range,
            max_n,
            scalars,
            instances,
        } => {
            let cfg = IdentityConfig {
                lemma_r: parse_range(&range)?,
                lemma_max_n: max_n,
                scalars: parse_range(&scalars)?,
                instances,
                seed: cli.seed.unwrap_or(IdentityConfig::default().seed),
            };
            let report = run_identities(&cfg)?;
            let code = if report.is_ok() { 0 } else { 4 };
            Ok((report.to_json(), code))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::RankMismatch { .. } | Error::DegreeExceeded { .. } | Error::Domain(_) => 2,
        Error::Malformed(_) | Error::Json(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let output = cli.output.clone();
    match run(cli) {
        Ok((value, code)) => {
            let text = serde_json::to_string(&value).expect("JSON values serialize") + "\n";
            let written = match output {
                Some(path) => std::fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display())),
                None => std::io::stdout()
                    .write_all(text.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("numap: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(code)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("numap: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(e)) => {
            eprintln!("numap: {e}");
            ExitCode::from(1)
        }
    }
}
