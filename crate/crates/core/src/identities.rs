//! Exhaustive and randomized runs of the binomial lemma and both
//! characterization identities.

use std::ops::RangeInclusive;

use rand::Rng;
use serde_json::{json, Value};

use crate::error::Result;
use crate::numap::{check_eq1, check_eq2, table_as_oracle, NumTable};
use crate::random::{random_table, random_vector, seeded};
use crate::ring::{lemma_binomial, Int};

#[derive(Clone, Debug)]
pub struct IdentityConfig {
    /// r for the binomial lemma, 0 ≤ m ≤ n ≤ `lemma_max_n`.
    pub lemma_r: RangeInclusive<i64>,
    pub lemma_max_n: usize,
    /// r and a_i for the two characterization identities.
    pub scalars: RangeInclusive<i64>,
    /// Random table-backed instances per identity.
    pub instances: usize,
    pub seed: u64,
}

impl Default for IdentityConfig {
    fn default() -> Self {
        IdentityConfig {
            lemma_r: -10..=10,
            lemma_max_n: 6,
            scalars: -6..=6,
            instances: 500,
            seed: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCase {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub cases: Vec<IdentityCase>,
}

impl IdentityReport {
    pub fn is_ok(&self) -> bool {
        self.cases.iter().all(|c| c.failures.is_empty())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ok": self.is_ok(),
            "cases": self.cases.iter().map(|c| json!({
                "name": c.name,
                "checked": c.checked,
                "failures": c.failures,
            })).collect::<Vec<_>>(),
        })
    }
}

fn random_instance_table(rng: &mut rand_chacha::ChaCha8Rng) -> NumTable {
    let k = rng.gen_range(1..=3);
    let m = rng.gen_range(1..=2);
    let n = rng.gen_range(0..=4);
    random_table(rng, k, m, n, -9..=9)
}

pub fn run_identities(cfg: &IdentityConfig) -> Result<IdentityReport> {
    let mut lemma = IdentityCase {
        name: "binomial_lemma",
        checked: 0,
        failures: Vec::new(),
    };
    for r in cfg.lemma_r.clone() {
        let r = Int::from(r);
        for n in 0..=cfg.lemma_max_n {
            for m in 0..=n {
                let (lhs, rhs) = lemma_binomial(&r, m, n)?;
                lemma.checked += 1;
                if lhs != rhs {
                    lemma.failures.push(format!("r={r} m={m} n={n}: {lhs} != {rhs}"));
                }
            }
        }
    }

    let mut rng = seeded(cfg.seed);
    let mut eq1 = IdentityCase {
        name: "eq1",
        checked: 0,
        failures: Vec::new(),
    };
    let mut eq2 = IdentityCase {
        name: "eq2",
        checked: 0,
        failures: Vec::new(),
    };
    for _ in 0..cfg.instances {
        let t = random_instance_table(&mut rng);
        let phi = table_as_oracle(&t);
        let r = Int::from(rng.gen_range(cfg.scalars.clone()));
        let x = random_vector(&mut rng, t.k(), -5..=5);
        let (l, rr) = check_eq1(&phi, t.n(), &r, &x)?;
        eq1.checked += 1;
        if l != rr {
            eq1.failures.push(format!("{t:?} r={r} x={x:?}"));
        }

        let arity = rng.gen_range(0..=t.n() + 1);
        let a = random_vector(&mut rng, arity, cfg.scalars.clone());
        let xs: Vec<Vec<Int>> = (0..arity)
            .map(|_| random_vector(&mut rng, t.k(), -5..=5))
            .collect();
        let (l, rr) = check_eq2(&phi, t.n(), &a, &xs)?;
        eq2.checked += 1;
        if l != rr {
            eq2.failures.push(format!("{t:?} a={a:?} xs={xs:?}"));
        }
    }

    Ok(IdentityReport {
        cases: vec![lemma, eq1, eq2],
    })
}
