//! The augmentation algebra of ℤ^k at level n, modeled as ℤ[t_1, …, t_k]/J_n
//! where J_n is spanned by the monomials of total degree > n.
//!
//! The class of a lattice point x is χ([x]) = (1+t)^x = Π_i (1+t_i)^{x_i}; every
//! identity about the quotient of the monoid algebra is checked through these
//! images.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::{dec, int_vec_to_value};
use crate::multiset::{enumerate, MultiSet};
use crate::numap::NumTable;
use crate::ring::{binom, vecops, Int};

/// Σ c_X t^X modulo J_n. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncPoly {
    k: usize,
    n: usize,
    coeffs: BTreeMap<MultiSet, Int>,
}

impl TruncPoly {
    pub fn zero(k: usize, n: usize) -> Self {
        TruncPoly {
            k,
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(k: usize, n: usize) -> Self {
        Self::monomial(k, n, MultiSet::empty(k), Int::one())
    }

    /// c·t^X, or zero if |X| > n.
    pub fn monomial(k: usize, n: usize, x: MultiSet, c: Int) -> Self {
        assert_eq!(x.rank(), k, "monomial over the wrong number of variables");
        let mut p = Self::zero(k, n);
        p.add_term(x, c);
        p
    }

    /// t_i, zero-based.
    pub fn variable(k: usize, n: usize, i: usize) -> Self {
        Self::monomial(k, n, MultiSet::singleton(k, i), Int::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (MultiSet, Int)>>(k: usize, n: usize, terms: I) -> Result<Self> {
        let mut p = Self::zero(k, n);
        for (x, c) in terms {
            Error::check_rank("monomial", k, x.rank())?;
            if x.cardinality() > n {
                return Err(Error::DegreeExceeded {
                    bound: n,
                    found: x.cardinality(),
                });
            }
            p.add_term(x, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, x: MultiSet, c: Int) {
        if x.cardinality() > self.n || c.is_zero() {
            return;
        }
        match self.coeffs.entry(x) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, x: &MultiSet) -> Int {
        self.coeffs.get(x).cloned().unwrap_or_else(Int::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiSet, &Int)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Int) -> Self {
        let mut p = Self::zero(self.k, self.n);
        for (x, v) in &self.coeffs {
            p.add_term(x.clone(), c * v);
        }
        p
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(self.k, self.n), |acc, _| &acc * self)
    }

    fn assert_same_ring(&self, other: &Self) {
        assert!(
            self.k == other.k && self.n == other.n,
            "truncated polynomials from different rings: (k={}, n={}) vs (k={}, n={})",
            self.k,
            self.n,
            other.k,
            other.n
        );
    }
}

impl Add for &TruncPoly {
    type Output = TruncPoly;

    fn add(self, other: &TruncPoly) -> TruncPoly {
        self.assert_same_ring(other);
        let mut p = self.clone();
        for (x, c) in &other.coeffs {
            p.add_term(x.clone(), c.clone());
        }
        p
    }
}

impl Neg for &TruncPoly {
    type Output = TruncPoly;

    fn neg(self) -> TruncPoly {
        TruncPoly {
            k: self.k,
            n: self.n,
            coeffs: self.coeffs.iter().map(|(x, c)| (x.clone(), -c)).collect(),
        }
    }
}

impl Sub for &TruncPoly {
    type Output = TruncPoly;

    fn sub(self, other: &TruncPoly) -> TruncPoly {
        self + &(-other)
    }
}

impl Mul for &TruncPoly {
    type Output = TruncPoly;

    fn mul(self, other: &TruncPoly) -> TruncPoly {
        self.assert_same_ring(other);
        let mut p = TruncPoly::zero(self.k, self.n);
        for (x, a) in &self.coeffs {
            for (y, b) in &other.coeffs {
                if x.cardinality() + y.cardinality() <= self.n {
                    p.add_term(x.union_sum(y), a * b);
                }
            }
        }
        p
    }
}

impl fmt::Debug for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 mod J_{}", self.n);
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(x, c)| {
                let mono: Vec<String> = x
                    .mults()
                    .iter()
                    .enumerate()
                    .filter(|(_, &m)| m > 0)
                    .map(|(i, &m)| {
                        if m == 1 {
                            format!("t{}", i + 1)
                        } else {
                            format!("t{}^{m}", i + 1)
                        }
                    })
                    .collect();
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}·{}", mono.join(""))
                }
            })
            .collect();
        write!(f, "{} mod J_{}", terms.join(" + "), self.n)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TruncRepr {
    k: usize,
    n: usize,
    coeffs: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    #[serde(rename = "X")]
    x: MultiSet,
    #[serde(with = "dec")]
    c: Int,
}

impl Serialize for TruncPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TruncRepr {
            k: self.k,
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(x, c)| TermRepr {
                    x: x.clone(),
                    c: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = TruncRepr::deserialize(d)?;
        TruncPoly::from_terms(repr.k, repr.n, repr.coeffs.into_iter().map(|t| (t.x, t.c)))
            .map_err(serde::de::Error::custom)
    }
}

/// (1+t_i)^a = Σ_{j=0}^{n} binom(a, j) t_i^j in ℤ[t_1..t_k]/J_n.
pub fn one_plus_t_pow(k: usize, i: usize, a: &Int, n: usize) -> TruncPoly {
    let mut p = TruncPoly::zero(k, n);
    for j in 0..=n {
        p.add_term(MultiSet::repeated(k, i, j), binom(a, j));
    }
    p
}

/// χ([x]) = Π_i (1+t_i)^{x_i}.
pub fn chi_class(x: &[Int], n: usize) -> TruncPoly {
    let k = x.len();
    x.iter().enumerate().fold(TruncPoly::one(k, n), |acc, (i, xi)| {
        &acc * &one_plus_t_pow(k, i, xi, n)
    })
}

/// χ([x_1 ◇ ⋯ ◇ x_t]), expanded over subsets. Asserts agreement with the
/// product Π_i (χ([x_i]) − 1).
pub fn dev_class(k: usize, xs: &[Vec<Int>], n: usize) -> Result<TruncPoly> {
    for x in xs {
        Error::check_rank("deviation argument", k, x.len())?;
    }
    let t = xs.len();
    if t >= usize::BITS as usize {
        return Err(Error::Domain(format!("deviation of arity {t} is too large")));
    }
    let mut sum = TruncPoly::zero(k, n);
    for mask in 0usize..(1 << t) {
        let mut point = vecops::zeros(k);
        for (i, x) in xs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                vecops::add_assign(&mut point, x);
            }
        }
        let chi = chi_class(&point, n);
        sum = if (t - mask.count_ones() as usize).is_multiple_of(2) {
            &sum + &chi
        } else {
            &sum - &chi
        };
    }
    let product = dev_class_product(k, xs, n);
    assert_eq!(sum, product, "deviation class disagrees with its product form");
    Ok(sum)
}

/// Π_i (χ([x_i]) − 1).
pub fn dev_class_product(k: usize, xs: &[Vec<Int>], n: usize) -> TruncPoly {
    let one = TruncPoly::one(k, n);
    xs.iter()
        .fold(one.clone(), |acc, x| &acc * &(&chi_class(x, n) - &one))
}

/// χ([rx] − Σ_{m=0}^{n} binom(r, m) [◇_m x]), which vanishes for every r and x.
pub fn scalar_relation_class(r: &Int, x: &[Int], n: usize) -> Result<TruncPoly> {
    let k = x.len();
    let mut acc = chi_class(&vecops::scaled(r, x), n);
    for m in 0..=n {
        let dev = dev_class(k, &vec![x.to_vec(); m], n)?;
        acc = &acc - &dev.scale(&binom(r, m));
    }
    Ok(acc)
}

/// ψ(t^X) mapped back through χ: Π_i (χ([e_i]) − 1)^{m_i}. Equals t^X.
pub fn psi_image(k: usize, x: &MultiSet, n: usize) -> Result<TruncPoly> {
    Error::check_rank("basis multiset", k, x.rank())?;
    let one = TruncPoly::one(k, n);
    let mut acc = one.clone();
    for (i, &m) in x.mults().iter().enumerate() {
        let gen = &chi_class(&vecops::unit(k, i), n) - &one;
        acc = &acc * &gen.pow(m);
    }
    Ok(acc)
}

/// The linear map φ̂ on ℤ[t]/J_n with t^X ↦ v_X, through which a numerical map
/// of degree ≤ n factors as φ = φ̂ ∘ χ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalFactor {
    table: NumTable,
}

impl UniversalFactor {
    pub fn k(&self) -> usize {
        self.table.k()
    }

    pub fn m(&self) -> usize {
        self.table.m()
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    /// φ̂(t^X).
    pub fn image(&self, x: &MultiSet) -> Vec<Int> {
        self.table.coeff(x)
    }

    /// (X, φ̂(t^X)) over the whole monomial basis, zeros included.
    pub fn assignment(&self) -> Vec<(MultiSet, Vec<Int>)> {
        enumerate(self.k(), self.n())
            .into_iter()
            .map(|x| {
                let v = self.image(&x);
                (x, v)
            })
            .collect()
    }

    pub fn apply(&self, p: &TruncPoly) -> Result<Vec<Int>> {
        Error::check_rank("truncated polynomial variables", self.k(), p.k())?;
        if p.n() != self.n() {
            return Err(Error::Domain(format!(
                "truncation order {} does not match degree bound {}",
                p.n(),
                self.n()
            )));
        }
        let mut out = vecops::zeros(self.m());
        for (x, c) in p.terms() {
            if let Some(v) = self.table.get(x) {
                vecops::add_scaled(&mut out, c, v);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k(),
            "m": self.m(),
            "n": self.n(),
            "assignment": self
                .assignment()
                .into_iter()
                .map(|(x, v)| json!({ "X": x, "v": int_vec_to_value(&v) }))
                .collect::<Vec<_>>(),
        })
    }
}

pub fn universal_factor(t: &NumTable) -> UniversalFactor {
    UniversalFactor { table: t.clone() }
}
