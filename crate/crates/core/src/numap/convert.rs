//! Change of basis between monomial (strict) and binomial (numerical) tables.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::table::{NumTable, StrictTable};
use crate::multiset::MultiSet;
use crate::ring::{factorial, falling_factorial_coeffs, stirling2, Int, Rat};

/// Expands one variable's power over the other basis: a list of
/// (exponent in the target basis, coefficient).
fn cartesian<C: Clone + for<'a> std::ops::Mul<&'a C, Output = C>>(
    factors: &[Vec<(usize, C)>],
    unit: C,
) -> Vec<(MultiSet, C)> {
    let mut out = vec![(Vec::new(), unit)];
    for f in factors {
        out = out
            .into_iter()
            .flat_map(|(idx, c)| {
                f.iter().map(move |(j, fc)| {
                    let mut next = idx.clone();
                    next.push(*j);
                    (next, c.clone() * fc)
                })
            })
            .collect();
    }
    out.into_iter().map(|(idx, c)| (MultiSet::new(idx), c)).collect()
}

/// Rewrites a^X over binomials via a^m = Σ_j S(m, j) j! binom(a, j), one
/// variable at a time.
pub fn strict_to_numerical(s: &StrictTable) -> NumTable {
    let mut acc: BTreeMap<MultiSet, Vec<Int>> = BTreeMap::new();
    for (x, v) in s.entries() {
        let factors: Vec<Vec<(usize, Int)>> = x
            .mults()
            .iter()
            .map(|&m| {
                (0..=m)
                    .map(|j| (j, stirling2(m, j) * factorial(j)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        for (target, c) in cartesian(&factors, Int::from(1)) {
            let slot = acc.entry(target).or_insert_with(|| vec![Int::zero(); s.m()]);
            for (o, vi) in slot.iter_mut().zip(v) {
                *o += &c * vi;
            }
        }
    }
    NumTable::from_entries(s.k(), s.m(), s.n(), acc).expect("basis change preserves shape")
}

/// The unique monomial-basis table over ℚ agreeing with a numerical table,
/// and whether it happens to be integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalStrict {
    pub table: StrictTable<Rat>,
    pub integral: bool,
}

/// Rewrites binom(a, X) over monomials via
/// binom(a, j) = (Σ_p s(j, p) a^p) / j! with signed Stirling numbers s.
pub fn numerical_to_strict_rational(t: &NumTable) -> RationalStrict {
    let mut acc: BTreeMap<MultiSet, Vec<Rat>> = BTreeMap::new();
    for (x, v) in t.entries() {
        let factors: Vec<Vec<(usize, Rat)>> = x
            .mults()
            .iter()
            .map(|&m| {
                let denom = factorial(m);
                falling_factorial_coeffs(m)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(p, c)| (p, Rat::new(c, denom.clone())))
                    .collect()
            })
            .collect();
        for (target, c) in cartesian(&factors, Rat::from(Int::from(1))) {
            let slot = acc.entry(target).or_insert_with(|| vec![Rat::zero(); t.m()]);
            for (o, vi) in slot.iter_mut().zip(v) {
                *o += &c * Rat::from(vi.clone());
            }
        }
    }
    let table =
        StrictTable::<Rat>::from_entries(t.k(), t.m(), t.n(), acc).expect("basis change preserves shape");
    let integral = table.is_integral();
    RationalStrict { table, integral }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numap::{eval_strict, eval_table, extract, strict_as_oracle};
    use crate::ring::{int, Integers};

    fn ms(v: &[usize]) -> MultiSet {
        MultiSet::new(v.to_vec())
    }

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(int(n), int(d))
    }

    #[test]
    fn square_to_numerical() {
        let s = StrictTable::from_entries(1, 1, 2, [(ms(&[2]), vec![int(1)])]).unwrap();
        let t = strict_to_numerical(&s);
        let expect =
            NumTable::from_entries(1, 1, 2, [(ms(&[1]), vec![int(1)]), (ms(&[2]), vec![int(2)])]).unwrap();
        assert_eq!(t, expect);
        assert_eq!(extract(&strict_as_oracle(&s), 2).unwrap(), expect);
    }

    #[test]
    fn linear_and_constant_tables_unchanged() {
        let s = StrictTable::from_entries(
            2,
            2,
            1,
            [
                (ms(&[0, 0]), vec![int(4), int(0)]),
                (ms(&[1, 0]), vec![int(-1), int(2)]),
                (ms(&[0, 1]), vec![int(3), int(5)]),
            ],
        )
        .unwrap();
        let t = strict_to_numerical(&s);
        let back: Vec<_> = t.entries().map(|(x, v)| (x.clone(), v.to_vec())).collect();
        let orig: Vec<_> = s.entries().map(|(x, v)| (x.clone(), v.to_vec())).collect();
        assert_eq!(back, orig);
    }

    #[test]
    fn numerical_to_strict_examples() {
        let sq =
            NumTable::from_entries(1, 1, 2, [(ms(&[1]), vec![int(1)]), (ms(&[2]), vec![int(2)])]).unwrap();
        let r = numerical_to_strict_rational(&sq);
        assert!(r.integral);
        assert_eq!(
            r.table.to_integral().unwrap(),
            StrictTable::from_entries(1, 1, 2, [(ms(&[2]), vec![int(1)])]).unwrap()
        );

        let b2 = NumTable::from_entries(1, 1, 2, [(ms(&[2]), vec![int(1)])]).unwrap();
        let r = numerical_to_strict_rational(&b2);
        assert!(!r.integral);
        assert_eq!(r.table.coeff(&ms(&[1])), vec![rat(-1, 2)]);
        assert_eq!(r.table.coeff(&ms(&[2])), vec![rat(1, 2)]);
        assert_eq!(r.table.len(), 2);

        let c = NumTable::from_entries(3, 1, 0, [(ms(&[0, 0, 0]), vec![int(-8)])]).unwrap();
        let r = numerical_to_strict_rational(&c);
        assert!(r.integral);
        assert_eq!(r.table.coeff(&ms(&[0, 0, 0])), vec![rat(-8, 1)]);
    }

    #[test]
    fn conversion_preserves_values_in_two_variables() {
        let s = StrictTable::from_entries(
            2,
            1,
            4,
            [
                (ms(&[2, 1]), vec![int(3)]),
                (ms(&[0, 3]), vec![int(-2)]),
                (ms(&[1, 0]), vec![int(1)]),
            ],
        )
        .unwrap();
        let t = strict_to_numerical(&s);
        for a in -3..=3 {
            for b in -3..=3 {
                let p = [int(a), int(b)];
                assert_eq!(
                    eval_table(&t, &Integers, &p).unwrap(),
                    eval_strict(&s, &Integers, &p).unwrap()
                );
            }
        }
        let back = numerical_to_strict_rational(&t);
        assert!(back.integral);
        assert_eq!(back.table.to_integral().unwrap(), s);
    }
}
