//! The minimal bimodule resolution of A_h
//!
//! ```text
//!   0 → A⊗R⊗A --d1--> A⊗V⊗A --d0--> A⊗A --mu--> A → 0
//! ```
//!
//! with V = Fx ⊕ Fŷ and R = Fr, together with the contracting homotopy
//! (s_{-1}, s_0, s_1), the derivation-like map G, and the ψ-operator
//! liftings D_1, D_2 of a derivation used to evaluate Gerstenhaber
//! brackets on this resolution.
//!
//! Tensors are stored fully expanded over the monomial bases, so every
//! identity check is an equality of canonical forms.

use crate::cohomology::Derivation;
use crate::ore::{binomial_scalar, OreAlgebra, OreElement};
use crate::poly::Poly;
use crate::scalar::Scalar;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// x-degree and ŷ-degree of a monomial x^i ŷ^j.
pub type Mono = (usize, usize);

fn mono_str(m: Mono) -> String {
    match m {
        (0, 0) => "1".to_string(),
        (i, 0) => format!("x^{i}"),
        (0, j) => format!("yh^{j}"),
        (i, j) => format!("x^{i}*yh^{j}"),
    }
}

/// The middle slot of A⊗V⊗A: one of the two basis vectors of V.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MidV {
    X,
    YHat,
}

macro_rules! tensor_common {
    ($name:ident, $key:ty) => {
        impl $name {
            pub fn zero(alg: &OreAlgebra) -> Self {
                $name {
                    alg: alg.clone(),
                    terms: BTreeMap::new(),
                }
            }

            pub fn is_zero(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn algebra(&self) -> &OreAlgebra {
                &self.alg
            }

            pub fn terms(&self) -> impl Iterator<Item = (&$key, &Scalar)> {
                self.terms.iter()
            }

            fn insert(&mut self, key: $key, c: Scalar) {
                if c.is_zero() {
                    return;
                }
                match self.terms.remove(&key) {
                    None => {
                        self.terms.insert(key, c);
                    }
                    Some(old) => {
                        let s = old.add(&c);
                        if !s.is_zero() {
                            self.terms.insert(key, s);
                        }
                    }
                }
            }

            pub fn add(&self, other: &Self) -> Self {
                assert_eq!(self.alg, other.alg, "tensor arithmetic across contexts");
                let mut out = self.clone();
                for (k, c) in &other.terms {
                    out.insert(k.clone(), c.clone());
                }
                out
            }

            pub fn sub(&self, other: &Self) -> Self {
                self.add(&other.neg())
            }

            pub fn neg(&self) -> Self {
                $name {
                    alg: self.alg.clone(),
                    terms: self
                        .terms
                        .iter()
                        .map(|(k, c)| (k.clone(), c.neg()))
                        .collect(),
                }
            }

            pub fn mul_scalar(&self, s: &Scalar) -> Self {
                if s.is_zero() {
                    return Self::zero(&self.alg);
                }
                $name {
                    alg: self.alg.clone(),
                    terms: self
                        .terms
                        .iter()
                        .map(|(k, c)| (k.clone(), c.mul(s)))
                        .collect(),
                }
            }
        }
    };
}

/// Element of A⊗A in the basis (x^i ŷ^j) ⊗ (x^k ŷ^l).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorAA {
    alg: OreAlgebra,
    terms: BTreeMap<(Mono, Mono), Scalar>,
}
tensor_common!(TensorAA, (Mono, Mono));

/// Element of A⊗V⊗A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorV {
    alg: OreAlgebra,
    terms: BTreeMap<(Mono, MidV, Mono), Scalar>,
}
tensor_common!(TensorV, (Mono, MidV, Mono));

/// Element of A⊗R⊗A, written on the basis (x^i ŷ^j) ⊗ r ⊗ (x^k ŷ^l).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorR {
    alg: OreAlgebra,
    terms: BTreeMap<(Mono, Mono), Scalar>,
}
tensor_common!(TensorR, (Mono, Mono));

impl TensorAA {
    /// a ⊗ b, expanded to the monomial basis.
    pub fn of(a: &OreElement, b: &OreElement) -> Self {
        let alg = a.algebra();
        let mut out = TensorAA::zero(&alg);
        for (i1, j1, c1) in a.monomials() {
            for (i2, j2, c2) in b.monomials() {
                out.insert(((i1, j1), (i2, j2)), c1.mul(&c2));
            }
        }
        out
    }

    /// a · self · b (bimodule action).
    pub fn act(&self, a: &OreElement, b: &OreElement) -> Self {
        let mut out = TensorAA::zero(&self.alg);
        for ((m1, m2), c) in &self.terms {
            let left = a.mul(&self.alg.monomial(c.clone(), m1.0, m1.1));
            let right = self.alg.monomial(self.alg.field().one(), m2.0, m2.1).mul(b);
            out = out.add(&TensorAA::of(&left, &right));
        }
        out
    }
}

impl fmt::Display for TensorAA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((m1, m2), c)| format!("{} {} (x) {}", c, mono_str(*m1), mono_str(*m2)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl TensorR {
    /// a ⊗ r ⊗ b.
    pub fn of(a: &OreElement, b: &OreElement) -> Self {
        let alg = a.algebra();
        let mut out = TensorR::zero(&alg);
        for (i1, j1, c1) in a.monomials() {
            for (i2, j2, c2) in b.monomials() {
                out.insert(((i1, j1), (i2, j2)), c1.mul(&c2));
            }
        }
        out
    }

    pub fn generator(alg: &OreAlgebra) -> Self {
        TensorR::of(&alg.one(), &alg.one())
    }

    /// a · self · b.
    pub fn act(&self, a: &OreElement, b: &OreElement) -> Self {
        let mut out = TensorR::zero(&self.alg);
        for ((m1, m2), c) in &self.terms {
            let left = a.mul(&self.alg.monomial(c.clone(), m1.0, m1.1));
            let right = self.alg.monomial(self.alg.field().one(), m2.0, m2.1).mul(b);
            out = out.add(&TensorR::of(&left, &right));
        }
        out
    }

    /// Right multiplication by ŷ^k.
    fn mul_yhat_right(&self, k: usize) -> Self {
        self.act(
            &self.alg.one(),
            &self.alg.term(&Poly::one(self.alg.field()), k),
        )
    }

    /// The bimodule map χ_a with χ_a(1⊗r⊗1) = a.
    pub fn chi(&self, a: &OreElement) -> OreElement {
        let mut acc = a.algebra().zero();
        for ((m1, m2), c) in &self.terms {
            let left = self.alg.monomial(c.clone(), m1.0, m1.1);
            let right = self.alg.monomial(self.alg.field().one(), m2.0, m2.1);
            acc = acc.add(&left.mul(a).mul(&right));
        }
        acc
    }
}

impl TensorV {
    /// a ⊗ v ⊗ b.
    pub fn of(a: &OreElement, v: MidV, b: &OreElement) -> Self {
        let alg = a.algebra();
        let mut out = TensorV::zero(&alg);
        for (i1, j1, c1) in a.monomials() {
            for (i2, j2, c2) in b.monomials() {
                out.insert(((i1, j1), v, (i2, j2)), c1.mul(&c2));
            }
        }
        out
    }

    pub fn generator(alg: &OreAlgebra, v: MidV) -> Self {
        TensorV::of(&alg.one(), v, &alg.one())
    }

    /// a · self · b.
    pub fn act(&self, a: &OreElement, b: &OreElement) -> Self {
        let mut out = TensorV::zero(&self.alg);
        for ((m1, v, m2), c) in &self.terms {
            let left = a.mul(&self.alg.monomial(c.clone(), m1.0, m1.1));
            let right = self.alg.monomial(self.alg.field().one(), m2.0, m2.1).mul(b);
            out = out.add(&TensorV::of(&left, *v, &right));
        }
        out
    }
}

impl fmt::Display for TensorR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((m1, m2), c)| format!("{} {} (x) r (x) {}", c, mono_str(*m1), mono_str(*m2)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Display for TensorV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((m1, v, m2), c)| {
                let vs = match v {
                    MidV::X => "x",
                    MidV::YHat => "yh",
                };
                format!("{} {} (x) {} (x) {}", c, mono_str(*m1), vs, mono_str(*m2))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// μ: A⊗A → A, the multiplication map.
pub fn mu(t: &TensorAA) -> OreElement {
    let alg = t.algebra().clone();
    let mut acc = alg.zero();
    for ((m1, m2), c) in t.terms() {
        let prod =
            alg.monomial(c.clone(), m1.0, m1.1)
                .mul(&alg.monomial(alg.field().one(), m2.0, m2.1));
        acc = acc.add(&prod);
    }
    acc
}

/// d0(1⊗v⊗1) = v⊗1 − 1⊗v, extended as a bimodule map.
pub fn d0(t: &TensorV) -> TensorAA {
    let alg = t.algebra().clone();
    let mut acc = TensorAA::zero(&alg);
    for ((m1, v, m2), c) in t.terms() {
        let a = alg.monomial(c.clone(), m1.0, m1.1);
        let b = alg.monomial(alg.field().one(), m2.0, m2.1);
        let velt = match v {
            MidV::X => alg.x(),
            MidV::YHat => alg.yhat(),
        };
        acc = acc.add(&TensorAA::of(&a.mul(&velt), &b));
        acc = acc.sub(&TensorAA::of(&a, &velt.mul(&b)));
    }
    acc
}

/// d1(1⊗r⊗1) = 1⊗ŷ⊗x + ŷ⊗x⊗1 − 1⊗x⊗ŷ − x⊗ŷ⊗1 − s0(h⊗1).
pub fn d1_generator(alg: &OreAlgebra) -> TensorV {
    let one = alg.one();
    let x = alg.x();
    let yhat = alg.yhat();
    TensorV::of(&one, MidV::YHat, &x)
        .add(&TensorV::of(&yhat, MidV::X, &one))
        .sub(&TensorV::of(&one, MidV::X, &yhat))
        .sub(&TensorV::of(&x, MidV::YHat, &one))
        .sub(&s0(&TensorAA::of(&alg.from_poly(alg.h()), &one)))
}

/// d1: A⊗R⊗A → A⊗V⊗A, the bimodule extension of [`d1_generator`].
pub fn d1(t: &TensorR) -> TensorV {
    let alg = t.algebra().clone();
    let gen = d1_generator(&alg);
    let mut acc = TensorV::zero(&alg);
    for ((m1, m2), c) in t.terms() {
        let a = alg.monomial(c.clone(), m1.0, m1.1);
        let b = alg.monomial(alg.field().one(), m2.0, m2.1);
        acc = acc.add(&gen.act(&a, &b));
    }
    acc
}

/// s_{-1}: A → A⊗A, a ↦ 1⊗a (a right A-module map).
pub fn s_minus1(a: &OreElement) -> TensorAA {
    TensorAA::of(&a.algebra().one(), a)
}

/// s0: A⊗A → A⊗V⊗A, the right A-module map with
/// s0(x^k ŷ^ℓ ⊗ 1) = Σ_{i<k} x^i ⊗ x ⊗ x^{k−1−i} ŷ^ℓ + Σ_{j<ℓ} x^k ŷ^j ⊗ ŷ ⊗ ŷ^{ℓ−1−j}.
pub fn s0(t: &TensorAA) -> TensorV {
    let alg = t.algebra().clone();
    let one = alg.field().one();
    let mut acc = TensorV::zero(&alg);
    for (((k, l), m2), c) in t.terms() {
        let right = alg.monomial(c.clone(), m2.0, m2.1);
        for i in 0..*k {
            let mid_right = alg.monomial(one.clone(), k - 1 - i, *l).mul(&right);
            acc = acc.add(&TensorV::of(
                &alg.monomial(one.clone(), i, 0),
                MidV::X,
                &mid_right,
            ));
        }
        for j in 0..*l {
            let mid_right = alg.monomial(one.clone(), 0, l - 1 - j).mul(&right);
            acc = acc.add(&TensorV::of(
                &alg.monomial(one.clone(), *k, j),
                MidV::YHat,
                &mid_right,
            ));
        }
    }
    acc
}

/// G: F[x] → A⊗R⊗A with G(x^k) = Σ_{i<k} x^i ⊗ r ⊗ x^{k−1−i}, G(1) = 0.
pub fn g_poly(alg: &OreAlgebra, f: &Poly) -> TensorR {
    let one = alg.field().one();
    let mut acc = TensorR::zero(alg);
    for (k, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for i in 0..k {
            let mut t = TensorR::zero(alg);
            t.insert(((i, 0), (k - 1 - i, 0)), c.mul(&one));
            acc = acc.add(&t);
        }
    }
    acc
}

/// The linear extension of G to A: G(f ŷ^ℓ) = G(f) ŷ^ℓ.
pub fn g_ore(a: &OreElement) -> TensorR {
    let alg = a.algebra();
    let mut acc = TensorR::zero(&alg);
    for (l, f) in a.terms() {
        acc = acc.add(&g_poly(&alg, f).mul_yhat_right(l));
    }
    acc
}

/// Which implementation of s1(ŷ^ℓ ⊗ x ⊗ 1) to use; the recursive definition
/// and the closed-form expansion are kept as independent code paths and are
/// required to agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum S1Route {
    #[default]
    Recursive,
    ClosedForm,
}

/// s1(ŷ^ℓ ⊗ x ⊗ 1) by the inductive definition:
/// s1(1⊗x⊗1) = 0 and
/// s1(ŷ^{ℓ+1}⊗x⊗1) = ŷ·s1(ŷ^ℓ⊗x⊗1) + Σ_j C(ℓ,j) G(δ^j(x)) ŷ^{ℓ−j}.
fn s1_yhat_pow_recursive(alg: &OreAlgebra, l: usize) -> TensorR {
    if l == 0 {
        return TensorR::zero(alg);
    }
    let lm1 = l - 1;
    let x = Poly::x(alg.field());
    let mut acc = s1_yhat_pow_recursive(alg, lm1).act(&alg.yhat(), &alg.one());
    for j in 0..=lm1 {
        let c = binomial_scalar(alg.field(), lm1, j);
        if c.is_zero() {
            continue;
        }
        let term = g_poly(alg, &alg.delta(&x, j))
            .mul_yhat_right(lm1 - j)
            .mul_scalar(&c);
        acc = acc.add(&term);
    }
    acc
}

/// s1(ŷ^{ℓ+1} ⊗ x ⊗ 1) = Σ_{j,k} C(ℓ−k, j) ŷ^k G(δ^j(x)) ŷ^{ℓ−j−k}, the
/// closed form; evaluated here for input exponent `l` (so with ℓ = l − 1).
fn s1_yhat_pow_closed(alg: &OreAlgebra, l: usize) -> TensorR {
    if l == 0 {
        return TensorR::zero(alg);
    }
    let ell = l - 1;
    let x = Poly::x(alg.field());
    let mut acc = TensorR::zero(alg);
    for j in 0..=ell {
        let gdjx = g_poly(alg, &alg.delta(&x, j));
        for k in 0..=(ell - j) {
            let c = binomial_scalar(alg.field(), ell - k, j);
            if c.is_zero() {
                continue;
            }
            let term = gdjx
                .act(&alg.term(&Poly::one(alg.field()), k), &alg.one())
                .mul_yhat_right(ell - j - k)
                .mul_scalar(&c);
            acc = acc.add(&term);
        }
    }
    acc
}

pub fn s1_yhat_pow(alg: &OreAlgebra, l: usize, route: S1Route) -> TensorR {
    match route {
        S1Route::Recursive => s1_yhat_pow_recursive(alg, l),
        S1Route::ClosedForm => s1_yhat_pow_closed(alg, l),
    }
}

/// s1: A⊗V⊗A → A⊗R⊗A. On the basis: s1(a⊗ŷ⊗b) = 0 and
/// s1(x^i ŷ^j ⊗ x ⊗ b) = x^i · s1(ŷ^j⊗x⊗1) · b.
pub fn s1_with(t: &TensorV, route: S1Route) -> TensorR {
    let alg = t.algebra().clone();
    let mut acc = TensorR::zero(&alg);
    let mut cache: BTreeMap<usize, TensorR> = BTreeMap::new();
    for ((m1, v, m2), c) in t.terms() {
        if *v == MidV::YHat {
            continue;
        }
        let (i, j) = *m1;
        let base = cache
            .entry(j)
            .or_insert_with(|| s1_yhat_pow(&alg, j, route))
            .clone();
        let left = alg.monomial(c.clone(), i, 0);
        let right = alg.monomial(alg.field().one(), m2.0, m2.1);
        acc = acc.add(&base.act(&left, &right));
    }
    acc
}

pub fn s1(t: &TensorV) -> TensorR {
    s1_with(t, S1Route::Recursive)
}

/// The ψ-operator lifting D_1 of a derivation D to A⊗V⊗A:
/// D_1(a⊗v⊗b) = a·s0(D(v)⊗b) + D(a)⊗v⊗b + a⊗v⊗D(b).
pub fn lift1(d: &Derivation, t: &TensorV) -> TensorV {
    let alg = t.algebra().clone();
    let mut acc = TensorV::zero(&alg);
    for ((m1, v, m2), c) in t.terms() {
        let a = alg.monomial(c.clone(), m1.0, m1.1);
        let b = alg.monomial(alg.field().one(), m2.0, m2.1);
        let dv = match v {
            MidV::X => d.dx().clone(),
            MidV::YHat => d.dyhat().clone(),
        };
        acc = acc.add(&s0(&TensorAA::of(&dv, &b)).act(&a, &alg.one()));
        acc = acc.add(&TensorV::of(&d.apply(&a), *v, &b));
        acc = acc.add(&TensorV::of(&a, *v, &d.apply(&b)));
    }
    acc
}

/// The degree-2 lifting evaluated on the generator:
/// D_2(1⊗r⊗1) = G(D(x)) + s1(D(ŷ)⊗x⊗1) − s1(D_1(s0(h⊗1))).
pub fn lift2_element(d: &Derivation) -> TensorR {
    let alg = d.algebra();
    let one = alg.one();
    let part1 = g_ore(d.dx());
    let part2 = s1(&TensorV::of(d.dyhat(), MidV::X, &one));
    let s0h = s0(&TensorAA::of(&alg.from_poly(alg.h()), &one));
    let part3 = s1(&lift1(d, &s0h));
    part1.add(&part2).sub(&part3)
}

/// One failing sample of a verified identity.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityFailure {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of checking one identity on a batch of random elements.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub trials: usize,
    pub failures: Vec<IdentityFailure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Sampler for sparse random elements with small integer coefficients.
pub struct Sampler {
    pub rng: ChaCha8Rng,
    pub max_x_deg: usize,
    pub max_yhat_deg: usize,
}

impl Sampler {
    pub fn new(seed: u64, max_x_deg: usize, max_yhat_deg: usize) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_x_deg,
            max_yhat_deg,
        }
    }

    fn coeff(&mut self, alg: &OreAlgebra) -> Scalar {
        loop {
            let c: i64 = self.rng.gen_range(-5..=5);
            let s = alg.field().from_i64(c);
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn ore(&mut self, alg: &OreAlgebra) -> OreElement {
        let nterms = self.rng.gen_range(1..=3);
        let mut acc = alg.zero();
        for _ in 0..nterms {
            let i = self.rng.gen_range(0..=self.max_x_deg);
            let j = self.rng.gen_range(0..=self.max_yhat_deg);
            let c = self.coeff(alg);
            acc = acc.add(&alg.monomial(c, i, j));
        }
        acc
    }

    pub fn poly(&mut self, alg: &OreAlgebra, max_deg: usize) -> Poly {
        let nterms = self.rng.gen_range(1..=3);
        let mut acc = Poly::zero(alg.field());
        for _ in 0..nterms {
            let i = self.rng.gen_range(0..=max_deg);
            acc = acc.add(&Poly::monomial(self.coeff(alg), i));
        }
        acc
    }

    pub fn tensor_aa(&mut self, alg: &OreAlgebra) -> TensorAA {
        let mut acc = TensorAA::zero(alg);
        for _ in 0..self.rng.gen_range(1..=3) {
            let a = alg.monomial(
                self.coeff(alg),
                self.rng.gen_range(0..=self.max_x_deg),
                self.rng.gen_range(0..=self.max_yhat_deg),
            );
            let b = alg.monomial(
                alg.field().one(),
                self.rng.gen_range(0..=self.max_x_deg),
                self.rng.gen_range(0..=self.max_yhat_deg),
            );
            acc = acc.add(&TensorAA::of(&a, &b));
        }
        acc
    }

    pub fn tensor_v(&mut self, alg: &OreAlgebra) -> TensorV {
        let mut acc = TensorV::zero(alg);
        for _ in 0..self.rng.gen_range(1..=3) {
            let a = alg.monomial(
                self.coeff(alg),
                self.rng.gen_range(0..=self.max_x_deg),
                self.rng.gen_range(0..=self.max_yhat_deg),
            );
            let v = if self.rng.gen_bool(0.5) {
                MidV::X
            } else {
                MidV::YHat
            };
            let b = alg.monomial(
                alg.field().one(),
                self.rng.gen_range(0..=self.max_x_deg),
                self.rng.gen_range(0..=self.max_yhat_deg),
            );
            acc = acc.add(&TensorV::of(&a, v, &b));
        }
        acc
    }

    pub fn tensor_r(&mut self, alg: &OreAlgebra) -> TensorR {
        let mut acc = TensorR::zero(alg);
        for _ in 0..self.rng.gen_range(1..=3) {
            let a = alg.monomial(
                self.coeff(alg),
                self.rng.gen_range(0..=self.max_x_deg),
                self.rng.gen_range(0..=self.max_yhat_deg),
            );
            let b = alg.monomial(
                alg.field().one(),
                self.rng.gen_range(0..=self.max_x_deg),
                self.rng.gen_range(0..=self.max_yhat_deg),
            );
            acc = acc.add(&TensorR::of(&a, &b));
        }
        acc
    }
}

/// Check the four contracting-homotopy identities
/// μ∘s_{-1} = 1, s_{-1}∘μ + d0∘s0 = 1, s0∘d0 + d1∘s1 = 1, s1∘d1 = 1
/// on `trials` seeded random elements each.
pub fn verify_homotopy(
    h: &Poly,
    max_x_deg: usize,
    max_yhat_deg: usize,
    trials: usize,
    seed: u64,
) -> Vec<IdentityReport> {
    let alg = OreAlgebra::new(h.clone()).expect("nonzero h");
    let mut sampler = Sampler::new(seed, max_x_deg, max_yhat_deg);
    let mut reports = Vec::new();

    let mut rep = IdentityReport {
        identity: "mu∘s_{-1} = 1_A".into(),
        trials,
        failures: vec![],
    };
    for _ in 0..trials {
        let a = sampler.ore(&alg);
        let lhs = mu(&s_minus1(&a));
        if lhs != a {
            rep.failures.push(IdentityFailure {
                input: a.to_string(),
                lhs: lhs.to_string(),
                rhs: a.to_string(),
            });
        }
    }
    reports.push(rep);

    let mut rep = IdentityReport {
        identity: "s_{-1}∘mu + d0∘s0 = 1_{A⊗A}".into(),
        trials,
        failures: vec![],
    };
    for _ in 0..trials {
        let t = sampler.tensor_aa(&alg);
        let lhs = s_minus1(&mu(&t)).add(&d0(&s0(&t)));
        if lhs != t {
            rep.failures.push(IdentityFailure {
                input: t.to_string(),
                lhs: lhs.to_string(),
                rhs: t.to_string(),
            });
        }
    }
    reports.push(rep);

    let mut rep = IdentityReport {
        identity: "s0∘d0 + d1∘s1 = 1_{A⊗V⊗A}".into(),
        trials,
        failures: vec![],
    };
    for _ in 0..trials {
        let t = sampler.tensor_v(&alg);
        let lhs = s0(&d0(&t)).add(&d1(&s1(&t)));
        if lhs != t {
            rep.failures.push(IdentityFailure {
                input: t.to_string(),
                lhs: lhs.to_string(),
                rhs: t.to_string(),
            });
        }
    }
    reports.push(rep);

    let mut rep = IdentityReport {
        identity: "s1∘d1 = 1_{A⊗R⊗A}".into(),
        trials,
        failures: vec![],
    };
    for _ in 0..trials {
        let t = sampler.tensor_r(&alg);
        let lhs = s1(&d1(&t));
        if lhs != t {
            rep.failures.push(IdentityFailure {
                input: t.to_string(),
                lhs: lhs.to_string(),
                rhs: t.to_string(),
            });
        }
    }
    reports.push(rep);

    reports
}

/// Check the chain conditions μ∘d0 = 0 and d0∘d1 = 0 on random elements.
pub fn verify_chain(
    h: &Poly,
    max_x_deg: usize,
    max_yhat_deg: usize,
    trials: usize,
    seed: u64,
) -> Vec<IdentityReport> {
    let alg = OreAlgebra::new(h.clone()).expect("nonzero h");
    let mut sampler = Sampler::new(seed, max_x_deg, max_yhat_deg);
    let mut reports = Vec::new();

    let mut rep = IdentityReport {
        identity: "mu∘d0 = 0".into(),
        trials,
        failures: vec![],
    };
    for _ in 0..trials {
        let t = sampler.tensor_v(&alg);
        let lhs = mu(&d0(&t));
        if !lhs.is_zero() {
            rep.failures.push(IdentityFailure {
                input: t.to_string(),
                lhs: lhs.to_string(),
                rhs: "0".into(),
            });
        }
    }
    reports.push(rep);

    let mut rep = IdentityReport {
        identity: "d0∘d1 = 0".into(),
        trials,
        failures: vec![],
    };
    for _ in 0..trials {
        let t = sampler.tensor_r(&alg);
        let lhs = d0(&d1(&t));
        if !lhs.is_zero() {
            rep.failures.push(IdentityFailure {
                input: t.to_string(),
                lhs: lhs.to_string(),
                rhs: "0".into(),
            });
        }
    }
    reports.push(rep);

    reports
}
