//! Extending a numerical map to every numerical algebra and checking that the
//! extension is natural.
//!
//! A table T over ℤ^k → ℤ^m acts on A^k ≅ ℤ^k ⊗ A by
//! (a_1, …, a_k) ↦ Σ_X v_X ⊗ binom(a, X), computed inside A. Naturality is
//! checked square by square along concrete algebra homomorphisms.

use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::{int_from_value, int_vec_from_value, int_vec_to_value};
use crate::numap::{eval_table, extract, numerical_to_strict_rational, FnOracle, NumTable, RationalStrict};
use crate::random::{random_int, random_vector, RandomElem};
use crate::ring::{binom, factorial, Int, IntegerValued, Integers, NumAlgebra, NumPoly, Rat};

/// ℤ^r with componentwise operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegerPower {
    pub rank: usize,
}

impl NumAlgebra for IntegerPower {
    type Elem = Vec<Int>;

    fn name(&self) -> String {
        format!("Z^{}", self.rank)
    }
    fn zero(&self) -> Vec<Int> {
        vec![Int::zero(); self.rank]
    }
    fn one(&self) -> Vec<Int> {
        vec![Int::one(); self.rank]
    }
    fn add(&self, a: &Vec<Int>, b: &Vec<Int>) -> Vec<Int> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn neg(&self, a: &Vec<Int>) -> Vec<Int> {
        a.iter().map(|x| -x).collect()
    }
    fn mul(&self, a: &Vec<Int>, b: &Vec<Int>) -> Vec<Int> {
        a.iter().zip(b).map(|(x, y)| x * y).collect()
    }
    fn scale(&self, c: &Int, a: &Vec<Int>) -> Vec<Int> {
        a.iter().map(|x| c * x).collect()
    }
    fn binom(&self, a: &Vec<Int>, k: usize) -> Vec<Int> {
        a.iter().map(|x| binom(x, k)).collect()
    }
    fn samples(&self) -> Vec<Vec<Int>> {
        // a fixed spread of small lattice points
        (0..24i64)
            .map(|s| {
                (0..self.rank as i64)
                    .map(|j| Int::from((s * (2 * j + 3) + j) % 11 - 5))
                    .collect()
            })
            .collect()
    }
}

impl RandomElem for Integers {
    fn random_elem(&self, rng: &mut ChaCha8Rng) -> Int {
        random_int(rng, -9..=9)
    }
}

impl RandomElem for IntegerPower {
    fn random_elem(&self, rng: &mut ChaCha8Rng) -> Vec<Int> {
        random_vector(rng, self.rank, -9..=9)
    }
}

impl RandomElem for IntegerValued {
    fn random_elem(&self, rng: &mut ChaCha8Rng) -> NumPoly {
        let len = rand::Rng::gen_range(rng, 0..=3);
        NumPoly::new(random_vector(rng, len, -3..=3))
    }
}

/// JSON encoding of algebra elements: integers as decimal strings, ℤ^r as an
/// array of r such strings, Int(ℤ) as its binomial coefficient array.
pub trait ElemJson: NumAlgebra {
    fn encode(&self, e: &Self::Elem) -> Value;
    fn decode(&self, v: &Value) -> Result<Self::Elem>;
}

impl ElemJson for Integers {
    fn encode(&self, e: &Int) -> Value {
        Value::String(e.to_string())
    }
    fn decode(&self, v: &Value) -> Result<Int> {
        int_from_value(v)
    }
}

impl ElemJson for IntegerPower {
    fn encode(&self, e: &Vec<Int>) -> Value {
        int_vec_to_value(e)
    }
    fn decode(&self, v: &Value) -> Result<Vec<Int>> {
        let e = int_vec_from_value(v)?;
        Error::check_rank("element of Z^r", self.rank, e.len())?;
        Ok(e)
    }
}

impl ElemJson for IntegerValued {
    fn encode(&self, e: &NumPoly) -> Value {
        int_vec_to_value(e.coeffs())
    }
    fn decode(&self, v: &Value) -> Result<NumPoly> {
        Ok(NumPoly::new(int_vec_from_value(v)?))
    }
}

/// Ring axioms and binomial consistency on the algebra's own samples. Returns
/// a description of every failure.
pub fn check_algebra<A: NumAlgebra>(alg: &A) -> Vec<String> {
    let s = alg.samples();
    let mut fails = Vec::new();
    let mut expect = |ok: bool, what: String| {
        if !ok {
            fails.push(what);
        }
    };
    let zero = alg.zero();
    let one = alg.one();
    for a in &s {
        expect(alg.add(a, &zero) == *a, format!("{a:?} + 0"));
        expect(alg.mul(a, &one) == *a, format!("{a:?} * 1"));
        expect(alg.add(a, &alg.neg(a)) == zero, format!("{a:?} - {a:?}"));
        expect(alg.binom(a, 0) == one, format!("binom({a:?}, 0)"));
        expect(alg.binom(a, 1) == *a, format!("binom({a:?}, 1)"));
        for k in 2..=4 {
            let mut falling = one.clone();
            for i in 0..k {
                falling = alg.mul(&falling, &alg.sub(a, &alg.embed(&Int::from(i))));
            }
            expect(
                alg.scale(&factorial(k), &alg.binom(a, k)) == falling,
                format!("{k}! binom({a:?}, {k})"),
            );
        }
        for c in [-3i64, 0, 2] {
            let c = Int::from(c);
            expect(
                alg.scale(&c, a) == alg.mul(&alg.embed(&c), a),
                format!("{c} . {a:?}"),
            );
        }
        for b in &s {
            expect(alg.add(a, b) == alg.add(b, a), format!("{a:?} + {b:?} commutes"));
            expect(alg.mul(a, b) == alg.mul(b, a), format!("{a:?} * {b:?} commutes"));
        }
    }
    let few = &s[..s.len().min(8)];
    for a in few {
        for b in few {
            for c in few {
                expect(
                    alg.add(&alg.add(a, b), c) == alg.add(a, &alg.add(b, c)),
                    format!("({a:?} + {b:?}) + {c:?}"),
                );
                expect(
                    alg.mul(&alg.mul(a, b), c) == alg.mul(a, &alg.mul(b, c)),
                    format!("({a:?} * {b:?}) * {c:?}"),
                );
                expect(
                    alg.mul(a, &alg.add(b, c)) == alg.add(&alg.mul(a, b), &alg.mul(a, c)),
                    format!("{a:?} * ({b:?} + {c:?})"),
                );
            }
        }
    }
    fails
}

/// A homomorphism of numerical algebras.
pub trait AlgebraHom {
    type Source: NumAlgebra;
    type Target: NumAlgebra;

    fn name(&self) -> String;
    fn source(&self) -> &Self::Source;
    fn target(&self) -> &Self::Target;
    fn apply(&self, a: &<Self::Source as NumAlgebra>::Elem) -> <Self::Target as NumAlgebra>::Elem;
}

/// Preservation of 0, 1, +, ·, integer scalars and binom on source samples.
pub fn check_hom<H: AlgebraHom>(h: &H) -> Vec<String> {
    let (src, tgt) = (h.source(), h.target());
    let mut fails = Vec::new();
    if h.apply(&src.zero()) != tgt.zero() {
        fails.push(format!("{} does not preserve 0", h.name()));
    }
    if h.apply(&src.one()) != tgt.one() {
        fails.push(format!("{} does not preserve 1", h.name()));
    }
    let s = src.samples();
    for a in &s {
        let ha = h.apply(a);
        for k in 0..=3 {
            if h.apply(&src.binom(a, k)) != tgt.binom(&ha, k) {
                fails.push(format!("{} does not preserve binom({a:?}, {k})", h.name()));
            }
        }
        let c = Int::from(-4);
        if h.apply(&src.scale(&c, a)) != tgt.scale(&c, &ha) {
            fails.push(format!("{} does not preserve scalars at {a:?}", h.name()));
        }
        for b in &s {
            let hb = h.apply(b);
            if h.apply(&src.add(a, b)) != tgt.add(&ha, &hb) {
                fails.push(format!("{} does not preserve {a:?} + {b:?}", h.name()));
            }
            if h.apply(&src.mul(a, b)) != tgt.mul(&ha, &hb) {
                fails.push(format!("{} does not preserve {a:?} * {b:?}", h.name()));
            }
        }
    }
    fails
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity<A>(pub A);

impl<A: NumAlgebra> AlgebraHom for Identity<A> {
    type Source = A;
    type Target = A;

    fn name(&self) -> String {
        format!("id_{}", self.0.name())
    }
    fn source(&self) -> &A {
        &self.0
    }
    fn target(&self) -> &A {
        &self.0
    }
    fn apply(&self, a: &A::Elem) -> A::Elem {
        a.clone()
    }
}

/// Int(ℤ) → ℤ, p ↦ p(at).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub at: Int,
}

impl AlgebraHom for Evaluation {
    type Source = IntegerValued;
    type Target = Integers;

    fn name(&self) -> String {
        format!("ev:{}", self.at)
    }
    fn source(&self) -> &IntegerValued {
        &IntegerValued
    }
    fn target(&self) -> &Integers {
        &Integers
    }
    fn apply(&self, p: &NumPoly) -> Int {
        p.eval(&self.at)
    }
}

/// ℤ → ℤ^r, a ↦ (a, …, a).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonal {
    pub target: IntegerPower,
}

impl AlgebraHom for Diagonal {
    type Source = Integers;
    type Target = IntegerPower;

    fn name(&self) -> String {
        "diag".into()
    }
    fn source(&self) -> &Integers {
        &Integers
    }
    fn target(&self) -> &IntegerPower {
        &self.target
    }
    fn apply(&self, a: &Int) -> Vec<Int> {
        vec![a.clone(); self.target.rank]
    }
}

/// ℤ^r → ℤ, the coordinate `index` (zero-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub source: IntegerPower,
    pub index: usize,
}

impl AlgebraHom for Projection {
    type Source = IntegerPower;
    type Target = Integers;

    fn name(&self) -> String {
        format!("proj:{}", self.index + 1)
    }
    fn source(&self) -> &IntegerPower {
        &self.source
    }
    fn target(&self) -> &Integers {
        &Integers
    }
    fn apply(&self, a: &Vec<Int>) -> Int {
        a[self.index].clone()
    }
}

/// `second ∘ first`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composite<F, G> {
    pub first: F,
    pub second: G,
}

impl<F, G> AlgebraHom for Composite<F, G>
where
    F: AlgebraHom,
    G: AlgebraHom<Source = F::Target>,
{
    type Source = F::Source;
    type Target = G::Target;

    fn name(&self) -> String {
        format!("{} . {}", self.second.name(), self.first.name())
    }
    fn source(&self) -> &F::Source {
        self.first.source()
    }
    fn target(&self) -> &G::Target {
        self.second.target()
    }
    fn apply(&self, a: &<F::Source as NumAlgebra>::Elem) -> <G::Target as NumAlgebra>::Elem {
        self.second.apply(&self.first.apply(a))
    }
}

/// Σ e_j ⊗ a_j ∈ ℤ^k ⊗ A, stored as its k components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElem<E> {
    pub components: Vec<E>,
}

impl<E> TensorElem<E> {
    pub fn new(components: Vec<E>) -> Self {
        TensorElem { components }
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }
}

/// φ_A(z) = Σ_X v_X ⊗ binom(a, X), all arithmetic inside A.
pub fn extend<A: NumAlgebra>(t: &NumTable, alg: &A, z: &TensorElem<A::Elem>) -> Result<TensorElem<A::Elem>> {
    Error::check_rank("tensor element", t.k(), z.rank())?;
    Ok(TensorElem::new(eval_table(t, alg, &z.components)?))
}

/// One square that failed to commute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalityMismatch {
    pub index: usize,
    /// h(φ_source(z)), rendered with `Debug`.
    pub map_then_hom: String,
    /// φ_target(h(z)), rendered with `Debug`.
    pub hom_then_map: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NaturalityReport {
    pub hom: String,
    pub checked: usize,
    pub mismatches: Vec<NaturalityMismatch>,
}

impl NaturalityReport {
    pub fn is_empty(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "hom": self.hom,
            "checked": self.checked,
            "commutes": self.is_empty(),
            "mismatches": self.mismatches.iter().map(|m| json!({
                "index": m.index,
                "map_then_hom": m.map_then_hom,
                "hom_then_map": m.hom_then_map,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Compares h ∘ φ_source with φ_target ∘ h on every z.
pub fn check_naturality<H: AlgebraHom>(
    t: &NumTable,
    h: &H,
    zs: &[TensorElem<<H::Source as NumAlgebra>::Elem>],
) -> Result<NaturalityReport> {
    let mut report = NaturalityReport {
        hom: h.name(),
        checked: zs.len(),
        mismatches: Vec::new(),
    };
    for (index, z) in zs.iter().enumerate() {
        let left: Vec<_> = extend(t, h.source(), z)?
            .components
            .iter()
            .map(|c| h.apply(c))
            .collect();
        let hz = TensorElem::new(z.components.iter().map(|c| h.apply(c)).collect());
        let right = extend(t, h.target(), &hz)?.components;
        if left != right {
            report.mismatches.push(NaturalityMismatch {
                index,
                map_then_hom: format!("{left:?}"),
                hom_then_map: format!("{right:?}"),
            });
        }
    }
    Ok(report)
}

/// φ extended over Int(ℤ) at the point with x in coordinate `j` and the
/// constants `others` elsewhere (`others` has k entries; entry j is ignored).
pub fn generic_point(t: &NumTable, j: usize, others: &[Int]) -> Result<Vec<NumPoly>> {
    Error::check_rank("generic point", t.k(), others.len())?;
    let a: Vec<NumPoly> = others
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if i == j {
                NumPoly::x()
            } else {
                NumPoly::constant(c.clone())
            }
        })
        .collect();
    eval_table(t, &IntegerValued, &a)
}

/// The monomial representation over ℚ of a univariate map ℤ → ℤ, determined
/// from its numerical table of degree ≤ d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictAttempt {
    pub label: String,
    pub numerical: NumTable,
    /// Coefficients of x^0, …, x^d.
    pub coeffs: Vec<Rat>,
    pub integral: bool,
}

impl StrictAttempt {
    pub fn to_json(&self) -> Value {
        json!({
            "map": self.label,
            "coeffs": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "integral": self.integral,
            "numerical": serde_json::to_value(&self.numerical).expect("tables serialize"),
        })
    }
}

pub fn strict_attempt<F>(label: &str, f: F, d: usize) -> Result<StrictAttempt>
where
    F: Fn(&Int) -> Int + Sync,
{
    let oracle = FnOracle::new(1, 1, |x: &[Int]| vec![f(&x[0])]);
    let numerical = extract(&oracle, d)?;
    let RationalStrict { table, integral } = numerical_to_strict_rational(&numerical);
    let coeffs = (0..=d)
        .map(|p| table.coeff(&crate::multiset::MultiSet::new(vec![p]))[0].clone())
        .collect();
    Ok(StrictAttempt {
        label: label.to_string(),
        numerical,
        coeffs,
        integral,
    })
}

/// x ↦ binom(x, 2) has an integral numerical table but only a non-integral
/// monomial representation, for every degree bound d ≥ 2; x ↦ x² is the
/// integral control.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub degree: usize,
    pub binomial: StrictAttempt,
    pub control: StrictAttempt,
}

impl CounterexampleReport {
    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "binomial": self.binomial.to_json(),
            "control": self.control.to_json(),
        })
    }
}

pub fn demo_counterexample(d: usize) -> Result<CounterexampleReport> {
    Ok(CounterexampleReport {
        degree: d,
        binomial: strict_attempt("binom(x,2)", |x| binom(x, 2), d)?,
        control: strict_attempt("x^2", |x| x * x, d)?,
    })
}
