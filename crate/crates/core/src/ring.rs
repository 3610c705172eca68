//! Exact scalars over the integers and the numerical ring Int(ℤ).
//!
//! The base ring is always ℤ. Other numerical rings enter only through the
//! [`NumAlgebra`] interface, which is what coefficient tables are evaluated in.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::json::{parse_scalar, scalars_to_strings};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn factorial(k: usize) -> Int {
    (1..=k).fold(Int::one(), |acc, i| acc * Int::from(i))
}

/// r (r−1) ⋯ (r−k+1).
pub fn falling_factorial(r: &Int, k: usize) -> Int {
    (0..k).fold(Int::one(), |acc, i| acc * (r - Int::from(i)))
}

/// Binomial coefficient binom(r, k) for any integer r, including negative r.
///
/// Panics if k! fails to divide the falling factorial, which would mean the
/// integer arithmetic itself is broken.
pub fn binom(r: &Int, k: usize) -> Int {
    let (q, rem) = falling_factorial(r, k).div_rem(&factorial(k));
    assert!(
        rem.is_zero(),
        "k! does not divide the falling factorial of {r} at k = {k}"
    );
    q
}

fn sign(e: usize) -> Int {
    if e.is_multiple_of(2) {
        Int::one()
    } else {
        -Int::one()
    }
}

/// Both sides of
/// Σ_{k=m}^{n} (−1)^k binom(r,k) binom(k,m) = (−1)^n binom(r,m) binom(r−m−1, n−m).
pub fn lemma_binomial(r: &Int, m: usize, n: usize) -> Result<(Int, Int)> {
    if m > n {
        return Err(Error::Domain(format!(
            "lemma_binomial needs m <= n, got m = {m}, n = {n}"
        )));
    }
    let lhs = (m..=n)
        .map(|k| sign(k) * binom(r, k) * binom(&Int::from(k), m))
        .sum();
    let rhs = sign(n) * binom(r, m) * binom(&(r - Int::from(m) - 1), n - m);
    Ok((lhs, rhs))
}

/// Stirling number of the second kind S(m, j).
pub fn stirling2(m: usize, j: usize) -> Int {
    if j > m {
        return Int::zero();
    }
    // row[j] holds S(i, j) after processing row i
    let mut row = vec![Int::zero(); j + 1];
    row[0] = Int::one();
    for i in 1..=m {
        for jj in (1..=j.min(i)).rev() {
            row[jj] = Int::from(jj) * &row[jj] + &row[jj - 1];
        }
        row[0] = Int::zero();
    }
    row[j].clone()
}

/// Monomial coefficients of r(r−1)⋯(r−j+1), lowest power first (signed
/// Stirling numbers of the first kind).
pub fn falling_factorial_coeffs(j: usize) -> Vec<Int> {
    let mut coeffs = vec![Int::one()];
    for i in 0..j {
        // multiply by (x − i)
        let shift = Int::from(i);
        let mut next = vec![Int::zero(); coeffs.len() + 1];
        for (p, c) in coeffs.iter().enumerate() {
            next[p + 1] += c;
            next[p] -= &shift * c;
        }
        coeffs = next;
    }
    coeffs
}

/// Operations a numerical algebra supplies for evaluating coefficient tables.
///
/// The descriptor carries whatever context the carrier needs (e.g. the rank of
/// ℤ^r), so elements themselves stay plain values.
pub trait NumAlgebra {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Action of an integer scalar.
    fn scale(&self, c: &Int, a: &Self::Elem) -> Self::Elem;
    fn binom(&self, a: &Self::Elem, k: usize) -> Self::Elem;
    /// A finite family of elements used for axiom and naturality checks.
    fn samples(&self) -> Vec<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn embed(&self, c: &Int) -> Self::Elem {
        self.scale(c, &self.one())
    }
}

/// ℤ itself.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl NumAlgebra for Integers {
    type Elem = Int;

    fn name(&self) -> String {
        "Z".into()
    }
    fn zero(&self) -> Int {
        Int::zero()
    }
    fn one(&self) -> Int {
        Int::one()
    }
    fn add(&self, a: &Int, b: &Int) -> Int {
        a + b
    }
    fn neg(&self, a: &Int) -> Int {
        -a
    }
    fn mul(&self, a: &Int, b: &Int) -> Int {
        a * b
    }
    fn scale(&self, c: &Int, a: &Int) -> Int {
        c * a
    }
    fn binom(&self, a: &Int, k: usize) -> Int {
        binom(a, k)
    }
    fn samples(&self) -> Vec<Int> {
        (-12..=12).map(Int::from).collect()
    }
}

/// An integer-valued polynomial Σ c_j binom(x, j), stored in the binomial basis
/// without trailing zero coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct NumPoly {
    coeffs: Vec<Int>,
}

impl NumPoly {
    pub fn new(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        NumPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().copied().map(Int::from).collect())
    }

    pub fn zero() -> Self {
        NumPoly::default()
    }

    pub fn constant(c: Int) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial x = binom(x, 1).
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, a: &Int) -> Int {
        // binom(a, j+1) = binom(a, j) (a − j) / (j+1), carried incrementally
        let mut total = Int::zero();
        let mut b = Int::one();
        for (j, c) in self.coeffs.iter().enumerate() {
            total += c * &b;
            b = b * (a - Int::from(j)) / Int::from(j + 1);
        }
        total
    }

    /// Values at 0, 1, …, d.
    pub fn values_upto(&self, d: usize) -> Vec<Int> {
        (0..=d).map(|a| self.eval(&Int::from(a))).collect()
    }

    /// Newton forward-difference interpolation: the coefficient of binom(x, k)
    /// is the k-th forward difference of `values` at 0.
    pub fn interpolate(values: &[Int]) -> Self {
        let mut diffs = values.to_vec();
        let mut coeffs = Vec::with_capacity(values.len());
        while !diffs.is_empty() {
            coeffs.push(diffs[0].clone());
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        Self::new(coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = Int::zero();
        Self::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        NumPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Int) -> Self {
        Self::new(self.coeffs.iter().map(|x| c * x).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (Some(dp), Some(dq)) = (self.degree(), other.degree()) else {
            return Self::zero();
        };
        let d = dp + dq;
        let values: Vec<Int> = (0..=d)
            .map(|a| {
                let a = Int::from(a);
                self.eval(&a) * other.eval(&a)
            })
            .collect();
        Self::interpolate(&values)
    }

    /// The integer-valued polynomial a ↦ binom(p(a), k).
    pub fn binom(&self, k: usize) -> Self {
        let d = k * self.degree().unwrap_or(0);
        let values: Vec<Int> = (0..=d).map(|a| binom(&self.eval(&Int::from(a)), k)).collect();
        Self::interpolate(&values)
    }
}

impl fmt::Debug for NumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            write!(f, "{}·C(x,{j})", c.abs())?;
        }
        Ok(())
    }
}

impl Serialize for NumPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(scalars_to_strings(&self.coeffs))
    }
}

impl<'de> Deserialize<'de> for NumPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(|s| parse_scalar(s))
            .collect::<Result<Vec<Int>>>()
            .map_err(D::Error::custom)?;
        Ok(NumPoly::new(coeffs))
    }
}

/// Int(ℤ), the ring of integer-valued polynomials in one variable.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IntegerValued;

impl NumAlgebra for IntegerValued {
    type Elem = NumPoly;

    fn name(&self) -> String {
        "IntZ".into()
    }
    fn zero(&self) -> NumPoly {
        NumPoly::zero()
    }
    fn one(&self) -> NumPoly {
        NumPoly::constant(Int::one())
    }
    fn add(&self, a: &NumPoly, b: &NumPoly) -> NumPoly {
        a.add(b)
    }
    fn neg(&self, a: &NumPoly) -> NumPoly {
        a.neg()
    }
    fn mul(&self, a: &NumPoly, b: &NumPoly) -> NumPoly {
        a.mul(b)
    }
    fn scale(&self, c: &Int, a: &NumPoly) -> NumPoly {
        a.scale(c)
    }
    fn binom(&self, a: &NumPoly, k: usize) -> NumPoly {
        a.binom(k)
    }
    fn samples(&self) -> Vec<NumPoly> {
        let mut out = vec![NumPoly::zero(), self.one(), NumPoly::x(), NumPoly::x().neg()];
        for coeffs in [
            &[0, 0, 1][..],
            &[1, 2],
            &[0, 2],
            &[-1, 0, 1],
            &[0, 1, 2],
            &[3, -1],
            &[0, 0, 0, 1],
            &[2, -3, 1],
            &[-2, 1, 0, 1],
            &[5],
            &[-4, 1],
            &[0, -1, 1],
            &[1, 1, 1],
            &[0, 3],
            &[7, 0, -2],
            &[0, 1, -1, 1],
        ] {
            out.push(NumPoly::from_i64s(coeffs));
        }
        out
    }
}

/// Componentwise helpers for vectors in ℤ^m.
pub(crate) mod vecops {
    use super::Int;
    use num_traits::Zero;

    pub fn zeros(m: usize) -> Vec<Int> {
        vec![Int::zero(); m]
    }

    pub fn add_assign(acc: &mut [Int], v: &[Int]) {
        for (a, b) in acc.iter_mut().zip(v) {
            *a += b;
        }
    }

    pub fn add_scaled(acc: &mut [Int], c: &Int, v: &[Int]) {
        for (a, b) in acc.iter_mut().zip(v) {
            *a += c * b;
        }
    }

    pub fn scaled(c: &Int, v: &[Int]) -> Vec<Int> {
        v.iter().map(|x| c * x).collect()
    }

    pub fn is_zero(v: &[Int]) -> bool {
        v.iter().all(Zero::is_zero)
    }

    pub fn unit(k: usize, i: usize) -> Vec<Int> {
        let mut e = zeros(k);
        e[i] = Int::from(1);
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_small_values() {
        for r in -5..=5 {
            assert_eq!(binom(&int(r), 0), int(1));
            assert_eq!(binom(&int(r), 1), int(r));
        }
        assert_eq!(binom(&int(5), 2), int(10));
        assert_eq!(binom(&int(-2), 3), int(-4));
        assert_eq!(binom(&int(3), 5), int(0));
        assert_eq!(binom(&int(-1), 4), int(1));
    }

    #[test]
    fn lemma_binomial_examples() {
        assert_eq!(lemma_binomial(&int(5), 1, 3).unwrap(), (int(-15), int(-15)));
        assert_eq!(lemma_binomial(&int(0), 0, 4).unwrap(), (int(1), int(1)));
        for r in -4..=4 {
            let r = int(r);
            for n in 0..5 {
                let expect = sign(n) * binom(&r, n);
                assert_eq!(lemma_binomial(&r, n, n).unwrap(), (expect.clone(), expect));
            }
        }
    }

    #[test]
    fn lemma_binomial_rejects_m_above_n() {
        assert!(matches!(lemma_binomial(&int(3), 4, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn stirling2_values() {
        assert_eq!(stirling2(0, 0), int(1));
        assert_eq!(stirling2(3, 2), int(3));
        assert_eq!(stirling2(5, 3), int(25));
        assert_eq!(stirling2(6, 2), int(31));
        assert_eq!(stirling2(4, 0), int(0));
        assert_eq!(stirling2(2, 3), int(0));
        for m in 0..8 {
            assert_eq!(stirling2(m, m), int(1));
        }
    }

    #[test]
    fn falling_factorial_coeffs_match_direct_product() {
        for j in 0..7 {
            let c = falling_factorial_coeffs(j);
            assert_eq!(c.len(), j + 1);
            for a in -4..=6 {
                let a = int(a);
                let via_coeffs: Int = c
                    .iter()
                    .enumerate()
                    .map(|(p, ci)| ci * num_traits::pow(a.clone(), p))
                    .sum();
                assert_eq!(via_coeffs, falling_factorial(&a, j));
            }
        }
    }

    #[test]
    fn numpoly_eval_examples() {
        assert_eq!(NumPoly::zero().eval(&int(7)), int(0));
        assert_eq!(NumPoly::from_i64s(&[0, 0, 1]).eval(&int(4)), int(6));
        assert_eq!(NumPoly::from_i64s(&[0, 1, 2]).eval(&int(3)), int(9));
    }

    #[test]
    fn canonical_form_drops_trailing_zeros() {
        assert_eq!(NumPoly::from_i64s(&[1, 2, 0, 0]), NumPoly::from_i64s(&[1, 2]));
        assert!(NumPoly::from_i64s(&[0, 0]).is_zero());
        assert_eq!(NumPoly::from_i64s(&[0, 0]).degree(), None);
    }

    #[test]
    fn interpolate_examples() {
        let ints = |v: &[i64]| v.iter().copied().map(int).collect::<Vec<_>>();
        assert_eq!(
            NumPoly::interpolate(&ints(&[4, 4, 4, 4])),
            NumPoly::from_i64s(&[4])
        );
        assert_eq!(
            NumPoly::interpolate(&ints(&[0, 1, 4, 9])),
            NumPoly::from_i64s(&[0, 1, 2])
        );
        assert_eq!(
            NumPoly::interpolate(&ints(&[0, 0, 1, 3, 6])),
            NumPoly::from_i64s(&[0, 0, 1])
        );
        assert!(NumPoly::interpolate(&[]).is_zero());
    }

    #[test]
    fn mul_examples() {
        let p = NumPoly::from_i64s(&[3, -1, 2]);
        assert_eq!(p.mul(&NumPoly::constant(int(1))), p);
        assert_eq!(NumPoly::x().mul(&NumPoly::x()), NumPoly::from_i64s(&[0, 1, 2]));
        assert!(p.mul(&NumPoly::zero()).is_zero());
    }

    #[test]
    fn numpoly_binom_examples() {
        assert_eq!(NumPoly::x().binom(2), NumPoly::from_i64s(&[0, 0, 1]));
        assert_eq!(
            NumPoly::from_i64s(&[0, 2]).binom(2),
            NumPoly::from_i64s(&[0, 1, 4])
        );
        assert_eq!(NumPoly::from_i64s(&[5, 1, 7]).binom(0), NumPoly::from_i64s(&[1]));
        assert_eq!(NumPoly::zero().binom(0), NumPoly::from_i64s(&[1]));
        assert!(NumPoly::zero().binom(3).is_zero());
    }

    #[test]
    fn numpoly_json_is_decimal_strings() {
        let p = NumPoly::from_i64s(&[0, 1, 2]);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"["0","1","2"]"#);
        let back: NumPoly = serde_json::from_str(r#"["0","1","2","0"]"#).unwrap();
        assert_eq!(back, p);
        let big: NumPoly = serde_json::from_str(r#"["123456789012345678901234567890"]"#).unwrap();
        assert_eq!(big.coeffs()[0].to_string(), "123456789012345678901234567890");
    }
}
