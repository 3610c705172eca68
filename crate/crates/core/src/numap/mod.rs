//! Numerical maps ℤ^k → ℤ^m: deviations, coefficient extraction, degree
//! verification and the characterization identities.

mod convert;
mod spec;
mod table;

use std::ops::RangeInclusive;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::int_vec_to_value;
use crate::multiset::{enumerate, multi_binom, repeat_args, MultiSet};
use crate::random::seeded;
use crate::ring::{binom, vecops, Int, Integers};

pub use convert::{numerical_to_strict_rational, strict_to_numerical, RationalStrict};
pub use spec::{parse_spec, spec_oracle};
pub use table::{
    degree_of, eval_strict, eval_table, AnyTable, Basis, Binomial, Coeff, Monomial, NumTable, StrictTable,
    Table,
};

/// A map ℤ^k → ℤ^m given as a black box.
///
/// Implementations must be deterministic and callable from several threads at
/// once. `apply` is only ever called with vectors of length `domain_rank`.
pub trait MapOracle: Sync {
    fn domain_rank(&self) -> usize;
    fn codomain_rank(&self) -> usize;
    fn apply(&self, x: &[Int]) -> Vec<Int>;
}

impl<O: MapOracle + ?Sized> MapOracle for &O {
    fn domain_rank(&self) -> usize {
        (**self).domain_rank()
    }
    fn codomain_rank(&self) -> usize {
        (**self).codomain_rank()
    }
    fn apply(&self, x: &[Int]) -> Vec<Int> {
        (**self).apply(x)
    }
}

impl<O: MapOracle + ?Sized + Send> MapOracle for Box<O> {
    fn domain_rank(&self) -> usize {
        (**self).domain_rank()
    }
    fn codomain_rank(&self) -> usize {
        (**self).codomain_rank()
    }
    fn apply(&self, x: &[Int]) -> Vec<Int> {
        (**self).apply(x)
    }
}

/// Wraps a closure as a [`MapOracle`].
pub struct FnOracle<F> {
    k: usize,
    m: usize,
    f: F,
}

impl<F: Fn(&[Int]) -> Vec<Int> + Sync> FnOracle<F> {
    pub fn new(k: usize, m: usize, f: F) -> Self {
        FnOracle { k, m, f }
    }
}

impl<F: Fn(&[Int]) -> Vec<Int> + Sync> MapOracle for FnOracle<F> {
    fn domain_rank(&self) -> usize {
        self.k
    }
    fn codomain_rank(&self) -> usize {
        self.m
    }
    fn apply(&self, x: &[Int]) -> Vec<Int> {
        (self.f)(x)
    }
}

/// The map a ↦ Σ_X binom(a, X) v_X over ℤ.
#[derive(Clone, Debug)]
pub struct TableOracle(NumTable);

impl TableOracle {
    pub fn table(&self) -> &NumTable {
        &self.0
    }
}

impl MapOracle for TableOracle {
    fn domain_rank(&self) -> usize {
        self.0.k()
    }
    fn codomain_rank(&self) -> usize {
        self.0.m()
    }
    fn apply(&self, x: &[Int]) -> Vec<Int> {
        eval_table(&self.0, &Integers, x).expect("rank checked by caller")
    }
}

pub fn table_as_oracle(t: &NumTable) -> TableOracle {
    TableOracle(t.clone())
}

/// The map a ↦ Σ_X a^X v_X over ℤ.
#[derive(Clone, Debug)]
pub struct StrictOracle(StrictTable);

impl MapOracle for StrictOracle {
    fn domain_rank(&self) -> usize {
        self.0.k()
    }
    fn codomain_rank(&self) -> usize {
        self.0.m()
    }
    fn apply(&self, x: &[Int]) -> Vec<Int> {
        eval_strict(&self.0, &Integers, x).expect("rank checked by caller")
    }
}

pub fn strict_as_oracle(t: &StrictTable) -> StrictOracle {
    StrictOracle(t.clone())
}

fn apply_checked<O: MapOracle + ?Sized>(phi: &O, x: &[Int]) -> Result<Vec<Int>> {
    let y = phi.apply(x);
    Error::check_rank("oracle output", phi.codomain_rank(), y.len())?;
    Ok(y)
}

/// φ(x_1 ◇ ⋯ ◇ x_t) = Σ_{I ⊆ [t]} (−1)^{t−|I|} φ(Σ_{i∈I} x_i).
///
/// With no arguments this is φ(0).
pub fn deviate<O: MapOracle + ?Sized>(phi: &O, xs: &[Vec<Int>]) -> Result<Vec<Int>> {
    let k = phi.domain_rank();
    for x in xs {
        Error::check_rank("deviation argument", k, x.len())?;
    }
    let t = xs.len();
    if t >= usize::BITS as usize {
        return Err(Error::Domain(format!("deviation of arity {t} is too large")));
    }
    let mut acc = vecops::zeros(phi.codomain_rank());
    for mask in 0usize..(1 << t) {
        let mut point = vecops::zeros(k);
        for (i, x) in xs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                vecops::add_assign(&mut point, x);
            }
        }
        let value = apply_checked(phi, &point)?;
        if (t - mask.count_ones() as usize).is_multiple_of(2) {
            vecops::add_assign(&mut acc, &value);
        } else {
            vecops::add_scaled(&mut acc, &-Int::one(), &value);
        }
    }
    Ok(acc)
}

/// Dev_j φ(x) = φ(x ◇ ⋯ ◇ x) with j copies.
fn deviate_repeated<O: MapOracle + ?Sized>(phi: &O, x: &[Int], j: usize) -> Result<Vec<Int>> {
    deviate(phi, &vec![x.to_vec(); j])
}

fn basis(k: usize) -> Vec<Vec<Int>> {
    (0..k).map(|i| vecops::unit(k, i)).collect()
}

/// Coefficients v_X = φ(◇_{i∈X} e_i) for every |X| ≤ n.
///
/// When φ is numerical of degree ≤ n the result evaluates back to φ; otherwise
/// it is whatever those deviations happen to be.
pub fn extract<O: MapOracle + ?Sized>(phi: &O, n: usize) -> Result<NumTable> {
    let k = phi.domain_rank();
    let e = basis(k);
    let keys = enumerate(k, n);
    let coeff = |x: &MultiSet| deviate(phi, &repeat_args(x, &e));

    #[cfg(feature = "parallel")]
    let values: Vec<Result<Vec<Int>>> = {
        use rayon::prelude::*;
        keys.par_iter().map(coeff).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let values: Vec<Result<Vec<Int>>> = keys.iter().map(coeff).collect();

    let mut t = NumTable::new(k, phi.codomain_rank(), n);
    for (x, v) in keys.into_iter().zip(values) {
        t.insert(x, v?)?;
    }
    Ok(t)
}

/// Test data for [`verify_degree`]: tuples for the vanishing (n+1)-st
/// deviation and (r, x) pairs for the scalar axiom.
#[derive(Clone, Debug)]
pub struct VerifySample {
    pub tuples: Vec<Vec<Vec<Int>>>,
    pub scalars: Vec<(Int, Vec<Int>)>,
    /// False when either family had to be subsampled.
    pub exhaustive: bool,
}

impl VerifySample {
    /// Cap on each family before switching to a seeded random subsample.
    pub const MAX_CASES: usize = 20_000;
    pub const DEFAULT_SEED: u64 = 0x006e_756d_6170;

    /// Arguments drawn from `args`^k, deviation tuples taken as multisets of
    /// n+1 such points (the deviation is symmetric), scalars r from `scalars`.
    pub fn new(
        k: usize,
        n: usize,
        args: RangeInclusive<i64>,
        scalars: RangeInclusive<i64>,
        seed: u64,
    ) -> Self {
        let points = grid(k, args);
        let arity = n + 1;
        let mut rng = seeded(seed);
        let mut exhaustive = true;

        let tuple_count = binom(&Int::from(points.len() + n), arity);
        let tuples = if tuple_count <= Int::from(Self::MAX_CASES) {
            nondecreasing_tuples(points.len(), arity)
                .into_iter()
                .map(|idx| idx.into_iter().map(|i| points[i].clone()).collect())
                .collect()
        } else {
            exhaustive = false;
            (0..Self::MAX_CASES)
                .map(|_| {
                    (0..arity)
                        .map(|_| points.choose(&mut rng).unwrap().clone())
                        .collect()
                })
                .collect()
        };

        let rs: Vec<Int> = scalars.map(Int::from).collect();
        let mut pairs: Vec<(Int, Vec<Int>)> = points
            .iter()
            .flat_map(|x| rs.iter().map(move |r| (r.clone(), x.clone())))
            .collect();
        if pairs.len() > Self::MAX_CASES {
            exhaustive = false;
            pairs.shuffle(&mut rng);
            pairs.truncate(Self::MAX_CASES);
        }

        VerifySample {
            tuples,
            scalars: pairs,
            exhaustive,
        }
    }

    /// Arguments in [−3, 3]^k, scalars in [−6, 6].
    pub fn standard(k: usize, n: usize) -> Self {
        Self::new(k, n, -3..=3, -6..=6, Self::DEFAULT_SEED)
    }

    /// `count` random tuples and pairs with entries in `args` and r in `scalars`.
    pub fn random(
        k: usize,
        n: usize,
        args: RangeInclusive<i64>,
        scalars: RangeInclusive<i64>,
        count: usize,
        seed: u64,
    ) -> Self {
        let mut rng = seeded(seed);
        let vector = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<Int> {
            (0..k).map(|_| Int::from(rng.gen_range(args.clone()))).collect()
        };
        let tuples = (0..count)
            .map(|_| (0..=n).map(|_| vector(&mut rng)).collect())
            .collect();
        let pairs = (0..count)
            .map(|_| (Int::from(rng.gen_range(scalars.clone())), vector(&mut rng)))
            .collect();
        VerifySample {
            tuples,
            scalars: pairs,
            exhaustive: false,
        }
    }
}

fn grid(k: usize, range: RangeInclusive<i64>) -> Vec<Vec<Int>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p| {
                range.clone().map(move |v| {
                    let mut q = p.clone();
                    q.push(Int::from(v));
                    q
                })
            })
            .collect();
    }
    out
}

fn nondecreasing_tuples(size: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size == 0 && len > 0 {
        return out;
    }
    let mut cur = vec![0; len];
    loop {
        out.push(cur.clone());
        // advance the rightmost position that can still grow
        let Some(pos) = (0..len).rev().find(|&p| cur[p] + 1 < size) else {
            return out;
        };
        let v = cur[pos] + 1;
        cur[pos..].iter_mut().for_each(|c| *c = v);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A nonzero (n+1)-st deviation.
    Deviation { args: Vec<Vec<Int>>, value: Vec<Int> },
    /// φ(rx) ≠ Σ_j binom(r, j) Dev_j φ(x).
    Scalar {
        r: Int,
        x: Vec<Int>,
        lhs: Vec<Int>,
        rhs: Vec<Int>,
    },
}

impl Violation {
    pub fn to_json(&self) -> Value {
        match self {
            Violation::Deviation { args, value } => json!({
                "kind": "deviation",
                "args": args.iter().map(|a| int_vec_to_value(a)).collect::<Vec<_>>(),
                "value": int_vec_to_value(value),
            }),
            Violation::Scalar { r, x, lhs, rhs } => json!({
                "kind": "scalar",
                "r": r.to_string(),
                "x": int_vec_to_value(x),
                "lhs": int_vec_to_value(lhs),
                "rhs": int_vec_to_value(rhs),
            }),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeReport {
    pub degree: usize,
    pub violations: Vec<Violation>,
    pub tuples_checked: usize,
    pub scalars_checked: usize,
    pub exhaustive: bool,
}

impl DegreeReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn deviation_violations(&self) -> usize {
        self.violations
            .iter()
            .filter(|v| matches!(v, Violation::Deviation { .. }))
            .count()
    }

    pub fn scalar_violations(&self) -> usize {
        self.violations.len() - self.deviation_violations()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "consistent": self.is_empty(),
            "exhaustive": self.exhaustive,
            "tuples_checked": self.tuples_checked,
            "scalars_checked": self.scalars_checked,
            "violations": self.violations.iter().map(Violation::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Checks both defining equations of a numerical map of degree ≤ n on a
/// sample. An empty report means φ is consistent with degree ≤ n there.
pub fn verify_degree<O: MapOracle + ?Sized>(
    phi: &O,
    n: usize,
    sample: &VerifySample,
) -> Result<DegreeReport> {
    let mut violations = Vec::new();
    for args in &sample.tuples {
        Error::check_rank("deviation tuple", n + 1, args.len())?;
        let value = deviate(phi, args)?;
        if !vecops::is_zero(&value) {
            violations.push(Violation::Deviation {
                args: args.clone(),
                value,
            });
        }
    }

    let mut devs_for: Option<(&Vec<Int>, Vec<Vec<Int>>)> = None;
    for (r, x) in &sample.scalars {
        let devs = match &devs_for {
            Some((cached, d)) if *cached == x => d.clone(),
            _ => {
                let d = (0..=n)
                    .map(|j| deviate_repeated(phi, x, j))
                    .collect::<Result<Vec<_>>>()?;
                devs_for = Some((x, d.clone()));
                d
            }
        };
        let lhs = apply_checked(phi, &vecops::scaled(r, x))?;
        let mut rhs = vecops::zeros(phi.codomain_rank());
        for (j, d) in devs.iter().enumerate() {
            vecops::add_scaled(&mut rhs, &binom(r, j), d);
        }
        if lhs != rhs {
            violations.push(Violation::Scalar {
                r: r.clone(),
                x: x.clone(),
                lhs,
                rhs,
            });
        }
    }

    Ok(DegreeReport {
        degree: n,
        violations,
        tuples_checked: sample.tuples.len(),
        scalars_checked: sample.scalars.len(),
        exhaustive: sample.exhaustive,
    })
}

/// (φ(rx), Σ_{m=0}^{n} (−1)^{n−m} binom(r,m) binom(r−m−1, n−m) φ(mx)).
pub fn check_eq1<O: MapOracle + ?Sized>(
    phi: &O,
    n: usize,
    r: &Int,
    x: &[Int],
) -> Result<(Vec<Int>, Vec<Int>)> {
    Error::check_rank("eq1 argument", phi.domain_rank(), x.len())?;
    let lhs = apply_checked(phi, &vecops::scaled(r, x))?;
    let mut rhs = vecops::zeros(phi.codomain_rank());
    for m in 0..=n {
        let mut c = binom(r, m) * binom(&(r - Int::from(m) - 1), n - m);
        if (n - m) % 2 == 1 {
            c = -c;
        }
        if c.is_zero() {
            continue;
        }
        let y = apply_checked(phi, &vecops::scaled(&Int::from(m), x))?;
        vecops::add_scaled(&mut rhs, &c, &y);
    }
    Ok((lhs, rhs))
}

/// (φ(a_1x_1 ◇ ⋯ ◇ a_tx_t), Σ_{#X=[t], |X|≤n} binom(a, X) φ(◇_{i∈X} x_i)).
pub fn check_eq2<O: MapOracle + ?Sized>(
    phi: &O,
    n: usize,
    a: &[Int],
    xs: &[Vec<Int>],
) -> Result<(Vec<Int>, Vec<Int>)> {
    Error::check_rank("eq2 scalars", xs.len(), a.len())?;
    let scaled: Vec<Vec<Int>> = a.iter().zip(xs).map(|(ai, x)| vecops::scaled(ai, x)).collect();
    let lhs = deviate(phi, &scaled)?;
    let mut rhs = vecops::zeros(phi.codomain_rank());
    for x in enumerate(xs.len(), n).iter().filter(|x| x.has_full_support()) {
        let c = multi_binom(a, x)?;
        if c.is_zero() {
            continue;
        }
        let d = deviate(phi, &repeat_args(x, xs))?;
        vecops::add_scaled(&mut rhs, &c, &d);
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    fn ms(v: &[usize]) -> MultiSet {
        MultiSet::new(v.to_vec())
    }

    fn square() -> FnOracle<impl Fn(&[Int]) -> Vec<Int> + Sync> {
        FnOracle::new(1, 1, |x: &[Int]| vec![&x[0] * &x[0]])
    }

    fn linear() -> FnOracle<impl Fn(&[Int]) -> Vec<Int> + Sync> {
        FnOracle::new(2, 1, |x: &[Int]| vec![int(3) * &x[0] - int(2) * &x[1]])
    }

    fn v(xs: &[i64]) -> Vec<Int> {
        xs.iter().copied().map(int).collect()
    }

    #[test]
    fn deviate_examples() {
        let phi = square();
        assert_eq!(deviate(&phi, &[]).unwrap(), v(&[0]));
        assert_eq!(deviate(&phi, &[v(&[5])]).unwrap(), v(&[25]));
        assert_eq!(deviate(&phi, &[v(&[1]), v(&[1])]).unwrap(), v(&[2]));
        assert_eq!(deviate(&linear(), &[v(&[4, -1]), v(&[2, 7])]).unwrap(), v(&[0]));
        let shifted = FnOracle::new(1, 1, |x: &[Int]| vec![&x[0] * &x[0] + int(7)]);
        assert_eq!(deviate(&shifted, &[v(&[3])]).unwrap(), v(&[9]));
        assert_eq!(deviate(&shifted, &[]).unwrap(), v(&[7]));
    }

    #[test]
    fn deviate_rank_checked() {
        assert!(matches!(
            deviate(&square(), &[v(&[1, 2])]),
            Err(Error::RankMismatch { .. })
        ));
        let bad = FnOracle::new(1, 2, |_: &[Int]| vec![int(1)]);
        assert!(matches!(deviate(&bad, &[]), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn extract_examples() {
        let t = extract(&square(), 2).unwrap();
        let expect = NumTable::from_entries(1, 1, 2, [(ms(&[1]), v(&[1])), (ms(&[2]), v(&[2]))]).unwrap();
        assert_eq!(t, expect);

        let c = FnOracle::new(2, 1, |_: &[Int]| v(&[4]));
        let expect = NumTable::from_entries(2, 1, 3, [(ms(&[0, 0]), v(&[4]))]).unwrap();
        assert_eq!(extract(&c, 3).unwrap(), expect);

        for d in 0..5 {
            let phi = FnOracle::new(1, 1, move |x: &[Int]| vec![binom(&x[0], d)]);
            let expect = NumTable::from_entries(1, 1, 5, [(ms(&[d]), v(&[1]))]).unwrap();
            assert_eq!(extract(&phi, 5).unwrap(), expect);
        }
    }

    #[test]
    fn verify_examples() {
        let lin = verify_degree(&linear(), 1, &VerifySample::standard(2, 1)).unwrap();
        assert!(lin.is_empty());
        assert!(lin.exhaustive);

        let sq1 = verify_degree(&square(), 1, &VerifySample::standard(1, 1)).unwrap();
        assert!(sq1.violations.contains(&Violation::Deviation {
            args: vec![v(&[1]), v(&[1])],
            value: v(&[2]),
        }));

        let sample = VerifySample::new(1, 2, -5..=5, -6..=6, 0);
        assert!(verify_degree(&square(), 2, &sample).unwrap().is_empty());
    }

    #[test]
    fn verify_sample_shapes() {
        // multisets of 3 points out of 7
        assert_eq!(VerifySample::standard(1, 2).tuples.len(), 84);
        assert_eq!(VerifySample::standard(1, 2).scalars.len(), 7 * 13);
        let big = VerifySample::standard(3, 4);
        assert!(!big.exhaustive);
        assert_eq!(big.tuples.len(), VerifySample::MAX_CASES);
        assert!(big.tuples.iter().all(|t| t.len() == 5));
    }

    #[test]
    fn eq1_examples() {
        let (l, r) = check_eq1(&square(), 2, &int(3), &v(&[1])).unwrap();
        assert_eq!((l, r), (v(&[9]), v(&[9])));
        for n in 0..5 {
            let (l, r) = check_eq1(&square(), n.max(2), &int(1), &v(&[4])).unwrap();
            assert_eq!(l, r);
        }
        let c = FnOracle::new(1, 1, |_: &[Int]| v(&[-3]));
        for r in -4..=4 {
            assert_eq!(check_eq1(&c, 0, &int(r), &v(&[2])).unwrap(), (v(&[-3]), v(&[-3])));
        }
    }

    #[test]
    fn eq2_examples() {
        // n+1 unit scalars: both sides are the vanishing (n+1)-st deviation
        let (l, r) = check_eq2(&square(), 2, &v(&[1, 1, 1]), &[v(&[2]), v(&[-1]), v(&[5])]).unwrap();
        assert_eq!((l, r), (v(&[0]), v(&[0])));

        // t = 1 reduces to the scalar axiom without the φ(0) term
        let (l, r) = check_eq2(&square(), 2, &v(&[-3]), &[v(&[2])]).unwrap();
        assert_eq!(l, v(&[36]));
        assert_eq!(r, v(&[36]));

        assert!(matches!(
            check_eq2(&square(), 2, &v(&[1]), &[v(&[1]), v(&[2])]),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn nondecreasing_tuples_count() {
        assert_eq!(nondecreasing_tuples(7, 3).len(), 84);
        assert_eq!(nondecreasing_tuples(1, 4), vec![vec![0; 4]]);
        assert_eq!(nondecreasing_tuples(3, 0), vec![Vec::<usize>::new()]);
        assert!(nondecreasing_tuples(0, 2).is_empty());
    }
}
