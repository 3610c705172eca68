//! Independent reference computations. Nothing here calls the library's
//! binomial, interpolation, extraction or basis-change code.
#![allow(dead_code)]

use num_traits::{One, Zero};
use numap::multiset::{enumerate, MultiSet};
use numap::{Int, MapOracle, NumTable, Rat};

pub fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().copied().map(Int::from).collect()
}

pub fn ms(v: &[usize]) -> MultiSet {
    MultiSet::new(v.to_vec())
}

/// binom(r, k) as a product of exact rationals (r − i)/(i + 1).
pub fn rat_binom(r: &Int, k: usize) -> Rat {
    (0..k).fold(Rat::one(), |acc, i| {
        acc * Rat::new(r - Int::from(i), Int::from(i + 1))
    })
}

pub fn binom_oracle(r: &Int, k: usize) -> Int {
    let q = rat_binom(r, k);
    assert!(q.is_integer());
    q.to_integer()
}

/// Counts set partitions of {1..m} into j blocks via restricted growth strings.
pub fn count_set_partitions(m: usize, j: usize) -> usize {
    fn go(pos: usize, m: usize, max_block: usize, j: usize) -> usize {
        if pos == m {
            return usize::from(max_block == j);
        }
        let mut total = 0;
        for b in 0..=max_block {
            if b < max_block || max_block < j {
                total += go(pos + 1, m, max_block.max(b + 1), j);
            }
        }
        total
    }
    go(0, m, 0, j)
}

/// Leading entries of the forward-difference table.
pub fn forward_differences(values: &[Int]) -> Vec<Int> {
    let mut table: Vec<Vec<Int>> = vec![values.to_vec()];
    while table.last().unwrap().len() > 1 {
        let row = table.last().unwrap();
        table.push((1..row.len()).map(|i| &row[i] - &row[i - 1]).collect());
    }
    table.iter().map(|row| row[0].clone()).collect()
}

fn binom_vec_oracle(a: &[Int], x: &MultiSet) -> Int {
    a.iter()
        .zip(x.mults())
        .map(|(ai, &m)| binom_oracle(ai, m))
        .product()
}

/// Coefficients by the lexicographic triangular solve: at the point q = Q,
/// φ(q) = v_Q + Σ_{X ⊊ Q} binom(q, X) v_X, and every such X precedes Q.
pub fn triangular_extract<O: MapOracle>(phi: &O, n: usize) -> NumTable {
    let k = phi.domain_rank();
    let m = phi.codomain_rank();
    let mut solved: Vec<(MultiSet, Vec<Int>)> = Vec::new();
    for q in enumerate(k, n) {
        let point: Vec<Int> = q.mults().iter().map(|&c| Int::from(c)).collect();
        let mut v = phi.apply(&point);
        for (x, vx) in &solved {
            let c = binom_vec_oracle(&point, x);
            for (vi, xi) in v.iter_mut().zip(vx) {
                *vi -= &c * xi;
            }
        }
        solved.push((q, v));
    }
    NumTable::from_entries(k, m, n, solved).unwrap()
}

#[allow(clippy::needless_range_loop)]
/// Monomial coefficients of the degree ≤ d polynomial through (j, values[j]),
/// j = 0..=d, by Gauss–Jordan elimination on the Vandermonde system over ℚ.
pub fn vandermonde_solve(values: &[Int]) -> Vec<Rat> {
    let size = values.len();
    let mut rows: Vec<Vec<Rat>> = (0..size)
        .map(|j| {
            let mut row: Vec<Rat> = (0..size)
                .map(|p| Rat::from(num_traits::pow(Int::from(j), p)))
                .collect();
            row.push(Rat::from(values[j].clone()));
            row
        })
        .collect();
    for col in 0..size {
        let pivot = (col..size).find(|&r| !rows[r][col].is_zero()).unwrap();
        rows.swap(col, pivot);
        let p = rows[col][col].clone();
        for c in col..=size {
            rows[col][c] = &rows[col][c] / &p;
        }
        for r in 0..size {
            if r != col && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..=size {
                    let sub = &f * &rows[col][c];
                    rows[r][c] -= sub;
                }
            }
        }
    }
    rows.into_iter().map(|row| row[size].clone()).collect()
}

/// Σ_p c_p x^p evaluated directly.
pub fn eval_monomial(coeffs: &[Int], x: &Int) -> Int {
    coeffs
        .iter()
        .enumerate()
        .map(|(p, c)| c * num_traits::pow(x.clone(), p))
        .sum()
}

/// All points of [lo, hi]^k.
pub fn grid(k: usize, lo: i64, hi: i64) -> Vec<Vec<Int>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Int>| {
                (lo..=hi).map(move |v| {
                    let mut q = p.clone();
                    q.push(Int::from(v));
                    q
                })
            })
            .collect();
    }
    out
}

/// φ(a) = Σ_X binom(a, X) v_X with the reference binomial.
pub fn eval_table_oracle(t: &NumTable, a: &[Int]) -> Vec<Int> {
    let mut out = vec![Int::zero(); t.m()];
    for (x, v) in t.entries() {
        let c = binom_vec_oracle(a, x);
        for (o, vi) in out.iter_mut().zip(v) {
            *o += &c * vi;
        }
    }
    out
}

/// Σ_X c_X a^X with direct powers.
pub fn eval_strict_oracle(t: &numap::StrictTable, a: &[Int]) -> Vec<Int> {
    let mut out = vec![Int::zero(); t.m()];
    for (x, v) in t.entries() {
        let c: Int = a
            .iter()
            .zip(x.mults())
            .map(|(ai, &p)| num_traits::pow(ai.clone(), p))
            .product();
        for (o, vi) in out.iter_mut().zip(v) {
            *o += &c * vi;
        }
    }
    out
}
