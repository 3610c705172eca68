//! Multiset-indexed coefficient tables for maps ℤ^k → ℤ^m of bounded degree.
//!
//! A [`NumTable`] is read against binomial coefficients binom(a, X), a
//! [`StrictTable`] against monomials a^X. Zero vectors are never stored, so
//! structural equality is equality of maps.

use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};
use std::marker::PhantomData;
use std::str::FromStr;

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::json::{scalars_to_strings, strings_to_scalars};
use crate::multiset::{multi_binom_in, MultiSet};
use crate::ring::{Int, NumAlgebra, Rat};

pub trait Basis: Clone + Debug + PartialEq + Eq {
    const NAME: &'static str;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Binomial {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Monomial {}

impl Basis for Binomial {
    const NAME: &'static str = "binomial";
}

impl Basis for Monomial {
    const NAME: &'static str = "monomial";
}

/// Scalars a table may hold.
pub trait Coeff: Clone + PartialEq + Debug + Display + FromStr + Zero {}

impl<C: Clone + PartialEq + Debug + Display + FromStr + Zero> Coeff for C {}

#[derive(Clone, PartialEq, Eq)]
pub struct Table<B: Basis, C: Coeff = Int> {
    k: usize,
    m: usize,
    n: usize,
    coeffs: BTreeMap<MultiSet, Vec<C>>,
    basis: PhantomData<B>,
}

/// Numerical map in the binomial basis: φ(a) = Σ_X binom(a, X) v_X.
pub type NumTable = Table<Binomial, Int>;

/// Strict polynomial map in the monomial basis: φ(a) = Σ_X a^X v_X.
pub type StrictTable<C = Int> = Table<Monomial, C>;

impl<B: Basis, C: Coeff> Table<B, C> {
    pub fn new(k: usize, m: usize, n: usize) -> Self {
        Table {
            k,
            m,
            n,
            coeffs: BTreeMap::new(),
            basis: PhantomData,
        }
    }

    pub fn from_entries<I>(k: usize, m: usize, n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiSet, Vec<C>)>,
    {
        let mut t = Self::new(k, m, n);
        for (x, v) in entries {
            t.insert(x, v)?;
        }
        Ok(t)
    }

    /// Sets v_X, replacing any previous value. A zero vector removes the entry.
    pub fn insert(&mut self, x: MultiSet, v: Vec<C>) -> Result<()> {
        Error::check_rank("table key", self.k, x.rank())?;
        Error::check_rank("table entry", self.m, v.len())?;
        if x.cardinality() > self.n {
            return Err(Error::DegreeExceeded {
                bound: self.n,
                found: x.cardinality(),
            });
        }
        if v.iter().all(Zero::is_zero) {
            self.coeffs.remove(&x);
        } else {
            self.coeffs.insert(x, v);
        }
        Ok(())
    }

    /// Adds `v` to v_X.
    pub fn accumulate(&mut self, x: MultiSet, v: &[C]) -> Result<()>
    where
        for<'a> &'a C: std::ops::Add<&'a C, Output = C>,
    {
        let current = self.coeff(&x);
        let sum = current.iter().zip(v).map(|(a, b)| a + b).collect();
        self.insert(x, sum)
    }

    /// Domain rank.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Codomain rank.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Degree bound.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: &MultiSet) -> Option<&[C]> {
        self.coeffs.get(x).map(Vec::as_slice)
    }

    /// v_X, with the zero vector for absent keys.
    pub fn coeff(&self, x: &MultiSet) -> Vec<C> {
        self.get(x)
            .map(<[C]>::to_vec)
            .unwrap_or_else(|| vec![C::zero(); self.m])
    }

    /// Nonzero entries in lexicographic key order.
    pub fn entries(&self) -> impl Iterator<Item = (&MultiSet, &[C])> {
        self.coeffs.iter().map(|(x, v)| (x, v.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest |X| over nonzero entries; 0 for an empty table.
    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(MultiSet::cardinality).max().unwrap_or(0)
    }

    /// Same entries under a different degree bound.
    pub fn with_bound(&self, n: usize) -> Result<Self> {
        Self::from_entries(self.k, self.m, n, self.coeffs.clone())
    }
}

impl<B: Basis, C: Coeff> Debug for Table<B, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}Table(k={}, m={}, n={}) ", B::NAME, self.k, self.m, self.n)?;
        f.debug_map()
            .entries(self.coeffs.iter().map(|(x, v)| (x, scalars_to_strings(v))))
            .finish()
    }
}

pub fn degree_of(t: &NumTable) -> usize {
    t.degree()
}

/// Σ_X binom(a, X) v_X computed in `alg`, one component per output coordinate.
pub fn eval_table<A: NumAlgebra>(t: &NumTable, alg: &A, a: &[A::Elem]) -> Result<Vec<A::Elem>> {
    Error::check_rank("evaluation point", t.k(), a.len())?;
    let mut out = vec![alg.zero(); t.m()];
    for (x, v) in t.entries() {
        let b = multi_binom_in(alg, a, x)?;
        for (o, c) in out.iter_mut().zip(v) {
            if !c.is_zero() {
                *o = alg.add(o, &alg.scale(c, &b));
            }
        }
    }
    Ok(out)
}

/// Σ_X a^X v_X computed in `alg`.
pub fn eval_strict<A: NumAlgebra>(t: &StrictTable, alg: &A, a: &[A::Elem]) -> Result<Vec<A::Elem>> {
    Error::check_rank("evaluation point", t.k(), a.len())?;
    let mut out = vec![alg.zero(); t.m()];
    for (x, v) in t.entries() {
        let mut mono = alg.one();
        for (ai, &p) in a.iter().zip(x.mults()) {
            for _ in 0..p {
                mono = alg.mul(&mono, ai);
            }
        }
        for (o, c) in out.iter_mut().zip(v) {
            *o = alg.add(o, &alg.scale(c, &mono));
        }
    }
    Ok(out)
}

impl StrictTable<Rat> {
    /// The integer table with the same coefficients, if every one is integral.
    pub fn to_integral(&self) -> Option<StrictTable> {
        let mut out = StrictTable::new(self.k, self.m, self.n);
        for (x, v) in self.entries() {
            if !v.iter().all(Rat::is_integer) {
                return None;
            }
            out.coeffs
                .insert(x.clone(), v.iter().map(Rat::to_integer).collect());
        }
        Some(out)
    }

    pub fn is_integral(&self) -> bool {
        self.entries().all(|(_, v)| v.iter().all(Rat::is_integer))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableRepr {
    k: usize,
    m: usize,
    n: usize,
    basis: String,
    coeffs: Vec<EntryRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryRepr {
    #[serde(rename = "X")]
    x: MultiSet,
    v: Vec<String>,
}

impl<B: Basis, C: Coeff> Serialize for Table<B, C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TableRepr {
            k: self.k,
            m: self.m,
            n: self.n,
            basis: B::NAME.to_string(),
            coeffs: self
                .entries()
                .map(|(x, v)| EntryRepr {
                    x: x.clone(),
                    v: scalars_to_strings(v),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, B: Basis, C: Coeff> Deserialize<'de> for Table<B, C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = TableRepr::deserialize(d)?;
        from_repr(repr).map_err(D::Error::custom)
    }
}

fn from_repr<B: Basis, C: Coeff>(repr: TableRepr) -> Result<Table<B, C>> {
    if repr.basis != B::NAME {
        return Err(Error::Malformed(format!(
            "expected basis {:?}, found {:?}",
            B::NAME,
            repr.basis
        )));
    }
    let mut t = Table::new(repr.k, repr.m, repr.n);
    for e in repr.coeffs {
        if t.get(&e.x).is_some() {
            return Err(Error::Malformed(format!("duplicate key {:?}", e.x)));
        }
        let v = strings_to_scalars(&e.v)?;
        t.insert(e.x, v)?;
    }
    Ok(t)
}

/// A table of either basis, as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyTable {
    Binomial(NumTable),
    Monomial(StrictTable),
}

impl AnyTable {
    pub fn from_json(value: serde_json::Value) -> Result<Self> {
        let repr: TableRepr = serde_json::from_value(value)?;
        match repr.basis.as_str() {
            "binomial" => Ok(AnyTable::Binomial(from_repr(repr)?)),
            "monomial" => Ok(AnyTable::Monomial(from_repr(repr)?)),
            other => Err(Error::Malformed(format!("unknown basis {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, IntegerValued, Integers, NumPoly};

    fn ms(v: &[usize]) -> MultiSet {
        MultiSet::new(v.to_vec())
    }

    pub(crate) fn square_table() -> NumTable {
        NumTable::from_entries(1, 1, 2, [(ms(&[1]), vec![int(1)]), (ms(&[2]), vec![int(2)])]).unwrap()
    }

    #[test]
    fn insert_validates_shape() {
        let mut t = NumTable::new(2, 1, 2);
        assert!(matches!(
            t.insert(ms(&[2, 1]), vec![int(1)]),
            Err(Error::DegreeExceeded { bound: 2, found: 3 })
        ));
        assert!(matches!(
            t.insert(ms(&[1]), vec![int(1)]),
            Err(Error::RankMismatch { .. })
        ));
        assert!(matches!(
            t.insert(ms(&[1, 0]), vec![int(1), int(2)]),
            Err(Error::RankMismatch { .. })
        ));
        t.insert(ms(&[1, 0]), vec![int(3)]).unwrap();
        t.insert(ms(&[1, 0]), vec![int(0)]).unwrap();
        assert!(t.is_empty());
    }

    #[test]
    fn degree_examples() {
        let c = NumTable::from_entries(1, 1, 3, [(ms(&[0]), vec![int(5)])]).unwrap();
        assert_eq!(degree_of(&c), 0);
        assert_eq!(degree_of(&square_table()), 2);
        assert_eq!(degree_of(&NumTable::new(2, 2, 4)), 0);
    }

    #[test]
    fn eval_examples() {
        let empty = NumTable::new(2, 3, 2);
        assert_eq!(
            eval_table(&empty, &Integers, &[int(4), int(-1)]).unwrap(),
            vec![int(0); 3]
        );
        assert_eq!(
            eval_table(&square_table(), &Integers, &[int(3)]).unwrap(),
            vec![int(9)]
        );
        assert_eq!(
            eval_table(&square_table(), &IntegerValued, &[NumPoly::x()]).unwrap(),
            vec![NumPoly::from_i64s(&[0, 1, 2])]
        );
        assert!(matches!(
            eval_table(&square_table(), &Integers, &[int(1), int(2)]),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn json_layout() {
        let s = serde_json::to_string(&square_table()).unwrap();
        assert_eq!(
            s,
            r#"{"k":1,"m":1,"n":2,"basis":"binomial","coeffs":[{"X":[1],"v":["1"]},{"X":[2],"v":["2"]}]}"#
        );
        let back: NumTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, square_table());
        assert!(serde_json::from_str::<StrictTable>(&s).is_err());
    }

    #[test]
    fn json_rejects_bad_entries() {
        let dup =
            r#"{"k":1,"m":1,"n":2,"basis":"binomial","coeffs":[{"X":[1],"v":["1"]},{"X":[1],"v":["2"]}]}"#;
        assert!(serde_json::from_str::<NumTable>(dup).is_err());
        let deg = r#"{"k":1,"m":1,"n":1,"basis":"binomial","coeffs":[{"X":[2],"v":["1"]}]}"#;
        assert!(serde_json::from_str::<NumTable>(deg).is_err());
        let num = r#"{"k":1,"m":1,"n":1,"basis":"binomial","coeffs":[{"X":[1],"v":[1]}]}"#;
        assert!(serde_json::from_str::<NumTable>(num).is_err());
    }

    #[test]
    fn rational_tables_print_fractions() {
        let t = StrictTable::<Rat>::from_entries(
            1,
            1,
            2,
            [
                (ms(&[1]), vec![Rat::new(int(-1), int(2))]),
                (ms(&[2]), vec![Rat::new(int(1), int(2))]),
            ],
        )
        .unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.contains(r#"["-1/2"]"#), "{s}");
        assert!(!t.is_integral());
        assert!(t.to_integral().is_none());
    }
}
