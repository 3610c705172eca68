//! Exact computation with numerical maps between free ℤ-modules.
//!
//! A map φ: ℤ^k → ℤ^m is numerical of degree ≤ n when its (n+1)-st deviation
//! vanishes and it is compatible with integer scalars through binomial
//! coefficients. Such a map is determined by finitely many coefficients v_X,
//! one per multiset X over [k] with |X| ≤ n:
//!
//! ```text
//! φ(a_1 e_1 + … + a_k e_k) = Σ_X binom(a, X) v_X
//! ```
//!
//! The crate extracts those coefficients from a black-box map, evaluates them in
//! any numerical algebra, converts them to and from the monomial basis, and
//! models the universal map of degree n through ℤ[t_1..t_k] truncated above
//! degree n. All arithmetic is exact.

pub mod augment;
pub mod error;
pub mod identities;
pub mod json;
pub mod multiset;
pub mod natural;
pub mod numap;
pub mod random;
pub mod ring;

pub use error::{Error, Result};
pub use multiset::MultiSet;
pub use numap::{MapOracle, NumTable, StrictTable};
pub use ring::{Int, NumAlgebra, NumPoly, Rat};
