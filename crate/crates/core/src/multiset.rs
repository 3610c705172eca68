//! Multisets over [k] = {1, …, k} as dense multiplicity vectors.
//!
//! Ordering is lexicographic on (m_1, …, m_k), reading m_1 first. Sub-multisets
//! of a multiset never come after it in this order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{binom, Int, NumAlgebra};

#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiSet(Vec<usize>);

impl MultiSet {
    pub fn new(mults: Vec<usize>) -> Self {
        MultiSet(mults)
    }

    pub fn empty(k: usize) -> Self {
        MultiSet(vec![0; k])
    }

    /// {i} over [k], with `i` zero-based.
    pub fn singleton(k: usize, i: usize) -> Self {
        let mut m = vec![0; k];
        m[i] = 1;
        MultiSet(m)
    }

    /// {i, i, …, i} (`count` copies), zero-based `i`.
    pub fn repeated(k: usize, i: usize, count: usize) -> Self {
        let mut m = vec![0; k];
        m[i] = count;
        MultiSet(m)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn mults(&self) -> &[usize] {
        &self.0
    }

    pub fn multiplicity(&self, i: usize) -> usize {
        self.0[i]
    }

    /// |X|
    pub fn cardinality(&self) -> usize {
        self.0.iter().sum()
    }

    /// #X, zero-based.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// True when every index of [k] occurs at least once.
    pub fn has_full_support(&self) -> bool {
        self.0.iter().all(|&m| m > 0)
    }

    pub fn is_submultiset_of(&self, other: &MultiSet) -> bool {
        self.rank() == other.rank() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn union_sum(&self, other: &MultiSet) -> MultiSet {
        assert_eq!(self.rank(), other.rank(), "multisets over different index sets");
        MultiSet(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Debug for MultiSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let elems: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .flat_map(|(i, &m)| std::iter::repeat_n((i + 1).to_string(), m))
            .collect();
        write!(f, "{{{}}}", elems.join(","))
    }
}

/// binom(a, X) = Π_i binom(a_i, m_i).
pub fn multi_binom(a: &[Int], x: &MultiSet) -> Result<Int> {
    Error::check_rank("multi_binom argument", x.rank(), a.len())?;
    Ok(a.iter().zip(x.mults()).map(|(ai, &m)| binom(ai, m)).product())
}

/// binom(a, X) computed inside a numerical algebra.
pub fn multi_binom_in<A: NumAlgebra>(alg: &A, a: &[A::Elem], x: &MultiSet) -> Result<A::Elem> {
    Error::check_rank("multi_binom argument", x.rank(), a.len())?;
    let mut acc = alg.one();
    for (ai, &m) in a.iter().zip(x.mults()) {
        if m > 0 {
            acc = alg.mul(&acc, &alg.binom(ai, m));
        }
    }
    Ok(acc)
}

/// All multisets over [k] with |X| ≤ n, in increasing lexicographic order.
/// There are binom(k+n, k) of them.
pub fn enumerate(k: usize, n: usize) -> Vec<MultiSet> {
    let mut out = Vec::new();
    let mut current = vec![0; k];
    fill(&mut current, 0, n, &mut out);
    out
}

fn fill(current: &mut [usize], pos: usize, budget: usize, out: &mut Vec<MultiSet>) {
    if pos == current.len() {
        out.push(MultiSet(current.to_vec()));
        return;
    }
    for m in 0..=budget {
        current[pos] = m;
        fill(current, pos + 1, budget - m, out);
    }
    current[pos] = 0;
}

/// The argument list with `xs[i]` repeated m_i times, in index order.
///
/// Panics if `xs` does not have one entry per index of X.
pub fn repeat_args<T: Clone>(x: &MultiSet, xs: &[T]) -> Vec<T> {
    assert_eq!(x.rank(), xs.len(), "repeat_args needs one argument per index");
    x.mults()
        .iter()
        .zip(xs)
        .flat_map(|(&m, v)| std::iter::repeat_n(v.clone(), m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    fn ms(v: &[usize]) -> MultiSet {
        MultiSet::new(v.to_vec())
    }

    #[test]
    fn multi_binom_examples() {
        assert_eq!(multi_binom(&[int(3), int(2)], &ms(&[0, 0])).unwrap(), int(1));
        assert_eq!(multi_binom(&[int(3), int(2)], &ms(&[2, 1])).unwrap(), int(6));
        assert_eq!(
            multi_binom(&[int(1), int(1), int(1)], &ms(&[0, 2, 1])).unwrap(),
            int(0)
        );
    }

    #[test]
    fn multi_binom_rank_mismatch() {
        assert!(matches!(
            multi_binom(&[int(1)], &ms(&[1, 1])),
            Err(Error::RankMismatch {
                expected: 2,
                found: 1,
                ..
            })
        ));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate(3, 0), vec![ms(&[0, 0, 0])]);
        assert_eq!(
            enumerate(2, 2),
            vec![
                ms(&[0, 0]),
                ms(&[0, 1]),
                ms(&[0, 2]),
                ms(&[1, 0]),
                ms(&[1, 1]),
                ms(&[2, 0])
            ]
        );
        assert_eq!(enumerate(3, 2).len(), 10);
        assert_eq!(enumerate(0, 4), vec![ms(&[])]);
    }

    #[test]
    fn enumerate_matches_brute_force() {
        for k in 0..=3 {
            for n in 0..=4 {
                let mut brute: Vec<MultiSet> = Vec::new();
                let total = (n + 1usize).pow(k as u32);
                for code in 0..total {
                    let mut c = code;
                    let v: Vec<usize> = (0..k)
                        .map(|_| {
                            let d = c % (n + 1);
                            c /= n + 1;
                            d
                        })
                        .collect();
                    if v.iter().sum::<usize>() <= n {
                        brute.push(MultiSet::new(v));
                    }
                }
                brute.sort();
                let listed = enumerate(k, n);
                assert_eq!(listed, brute, "k = {k}, n = {n}");
                assert_eq!(Int::from(listed.len()), binom(&Int::from(k + n), k));
            }
        }
    }

    #[test]
    fn repeat_args_examples() {
        let xs = ["u1", "u2"];
        assert!(repeat_args(&ms(&[0, 0]), &xs).is_empty());
        assert_eq!(repeat_args(&ms(&[2, 0]), &xs), vec!["u1", "u1"]);
        assert_eq!(repeat_args(&ms(&[1, 2]), &xs), vec!["u1", "u2", "u2"]);
    }

    #[test]
    fn triangularity_at_own_multiplicities() {
        for q in enumerate(3, 4) {
            let a: Vec<Int> = q.mults().iter().map(|&m| Int::from(m)).collect();
            for x in enumerate(3, 4) {
                let b = multi_binom(&a, &x).unwrap();
                if x == q {
                    assert_eq!(b, int(1));
                } else if !x.is_submultiset_of(&q) {
                    assert_eq!(b, int(0));
                }
            }
        }
    }

    #[test]
    fn debug_lists_elements() {
        assert_eq!(format!("{:?}", ms(&[2, 1])), "{1,1,2}");
        assert_eq!(serde_json::to_string(&ms(&[2, 1])).unwrap(), "[2,1]");
    }
}
