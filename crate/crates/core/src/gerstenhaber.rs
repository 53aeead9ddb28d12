//! The Gerstenhaber bracket action of HH^1(A_h) on HH^2(A_h) in
//! characteristic 0, computed along two independent routes:
//!
//! - closed operator formulas: [D_g, −] = g·d/dŷ and
//!   [ad_{g a_n}, −] = n π_h g ŷ^{n−1} d/dx − δ_0(g) ŷ^n d/dŷ
//!   − n g (π_h h'/h) ŷ^{n−1};
//! - the resolution route [D, a] = D(a) − χ_a(D_2(1⊗r⊗1)) through the
//!   ψ-operator lifting on the minimal resolution.
//!
//! On top of the bracket sit the Θ_i filtration P_i = Θ_i D[ŷ], the
//! composition series of HH^2 with intermediate-series factors V_μ for the
//! Witt algebra, the Virasoro extension U_μ, and the per-factor action on
//! the semisimple layers S_i = P_i/P_{i+1}.

use crate::cohomology::{project_hh2, CohomologyError, Derivation, HH2Class};
use crate::ore::{OreAlgebra, OreElement};
use crate::poly::{crt_idempotents, theta_factored, FactoredPoly, Poly, PolyError, Residue};
use crate::resolution::{lift2_element, TensorR};
use crate::scalar::{Field, Scalar};
use std::collections::BTreeMap;
use thiserror::Error;

pub use crate::poly::delta0;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GerstenhaberError {
    #[error("operation requires characteristic 0")]
    RequiresChar0,
    #[error("HH^2 is trivial (gcd(h, h') = 1)")]
    TrivialHH2,
    #[error("delta_0(1) and Theta_1 are not coprime; this cannot happen for valid h")]
    NuNotCoprime,
    #[error("factor index {0} out of range")]
    BadFactorIndex(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// [D_g, −] = g·d/dŷ on D[ŷ].
pub fn bracket_dg(g: &Poly, a: &HH2Class) -> HH2Class {
    let field = g.field();
    let mut out = HH2Class::zero_class(a.h()).expect("class exists");
    for (l, f) in a.terms() {
        if l == 0 {
            continue;
        }
        let c = field.from_i64(l as i64);
        out =
            out.add(&HH2Class::term(a.h(), &f.mul(g).mul_scalar(&c), l - 1).expect("class exists"));
    }
    out
}

/// [ad_{g a_n}, −] = n π_h g ŷ^{n−1} d/dx − δ_0(g) ŷ^n d/dŷ
/// − n g (π_h h'/h) ŷ^{n−1} on D[ŷ]; d/dx acts on the canonical residue
/// representatives and the result is re-reduced.
pub fn bracket_adgan(g: &Poly, n: usize, a: &HH2Class) -> Result<HH2Class, GerstenhaberError> {
    let h = a.h();
    let field = h.field();
    if field.characteristic() != 0 {
        return Err(GerstenhaberError::RequiresChar0);
    }
    let hp = h.derivative(1);
    let gcd = h.gcd_monic(&hp)?;
    let pih = h.exact_div(&gcd)?.monic();
    let lc_inv = h.leading_coeff().unwrap().inv().unwrap();
    let q = hp.exact_div(&gcd)?.mul_scalar(&lc_inv); // π_h h'/h
    let d0g = delta0(g, h)?;
    let n_scalar = field.from_i64(n as i64);

    let mut out = HH2Class::zero_class(h).expect("class exists");
    for (l, f) in a.terms() {
        // n π_h g f' at ŷ^{n+l−1}
        if n >= 1 {
            let t1 = pih.mul(g).mul(&f.derivative(1)).mul_scalar(&n_scalar);
            out = out.add(&HH2Class::term(h, &t1, n + l - 1)?);
            let t3 = g.mul(&q).mul(f).mul_scalar(&n_scalar).neg();
            out = out.add(&HH2Class::term(h, &t3, n + l - 1)?);
        }
        // −l δ_0(g) f at ŷ^{n+l−1}
        if l >= 1 {
            let c = field.from_i64(l as i64);
            let t2 = d0g.mul(f).mul_scalar(&c).neg();
            out = out.add(&HH2Class::term(h, &t2, n + l - 1)?);
        }
    }
    Ok(out)
}

/// The general (resolution) route: [D, a] = D(a) − χ_a(D_2(1⊗r⊗1)),
/// projected to HH^2. `lift2` must be `lift2_element(d)`; it only depends
/// on D, so callers evaluating many brackets against one derivation should
/// compute it once.
pub fn bracket_general_with(
    d: &Derivation,
    lift2: &TensorR,
    a: &OreElement,
) -> Result<HH2Class, GerstenhaberError> {
    if a.field().characteristic() != 0 {
        return Err(GerstenhaberError::RequiresChar0);
    }
    let da = d.apply(a);
    let chi = lift2.chi(a);
    Ok(project_hh2(&da.sub(&chi))?)
}

/// One-shot variant of [`bracket_general_with`].
pub fn bracket_general(d: &Derivation, a: &OreElement) -> Result<HH2Class, GerstenhaberError> {
    let lift2 = lift2_element(d);
    bracket_general_with(d, &lift2, a)
}

/// Bracket a derivation against a class by lifting its canonical
/// representative (well defined since D preserves gcd(h,h')·A).
pub fn bracket_on_class(d: &Derivation, a: &HH2Class) -> Result<HH2Class, GerstenhaberError> {
    bracket_general(d, &a.lift())
}

/// An element of the Witt algebra W = span{w_m : m ≥ −1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittElement {
    field: Field,
    terms: BTreeMap<i64, Scalar>,
}

impl WittElement {
    pub fn zero(field: Field) -> Self {
        WittElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn generator(field: Field, m: i64) -> Self {
        assert!(m >= -1, "Witt generators are w_m with m >= -1");
        let mut w = WittElement::zero(field);
        w.insert(m, field.one());
        w
    }

    fn insert(&mut self, m: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        assert!(m >= -1, "index below -1 in a Witt element");
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn coeff(&self, m: i64) -> Scalar {
        self.terms
            .get(&m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &WittElement) -> WittElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(*m, c.clone());
        }
        out
    }

    pub fn mul_scalar(&self, s: &Scalar) -> WittElement {
        let mut out = WittElement::zero(self.field);
        for (m, c) in &self.terms {
            out.insert(*m, c.mul(s));
        }
        out
    }
}

/// [w_m, w_n] = (n − m) w_{m+n}.
pub fn witt_bracket(u: &WittElement, v: &WittElement) -> WittElement {
    let field = u.field;
    let mut out = WittElement::zero(field);
    for (m, a) in &u.terms {
        for (n, b) in &v.terms {
            let c = field.from_i64(n - m).mul(a).mul(b);
            out.insert(m + n, c);
        }
    }
    out
}

/// An element of the Virasoro algebra: full Witt part (m ∈ Z) plus the
/// central generator c.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirasoroElement {
    field: Field,
    terms: BTreeMap<i64, Scalar>,
    central: Scalar,
}

impl VirasoroElement {
    pub fn zero(field: Field) -> Self {
        VirasoroElement {
            field,
            terms: BTreeMap::new(),
            central: field.zero(),
        }
    }

    pub fn generator(field: Field, m: i64) -> Self {
        let mut v = VirasoroElement::zero(field);
        v.terms.insert(m, field.one());
        v
    }

    pub fn central(field: Field) -> Self {
        let mut v = VirasoroElement::zero(field);
        v.central = field.one();
        v
    }

    pub fn coeff(&self, m: i64) -> Scalar {
        self.terms
            .get(&m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn central_coeff(&self) -> &Scalar {
        &self.central
    }

    fn insert(&mut self, m: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
    }
}

/// [w_m, w_n] = (n − m) w_{m+n} + δ_{m+n,0} (m³ − m)/12 · c, with c central.
pub fn virasoro_bracket(u: &VirasoroElement, v: &VirasoroElement) -> VirasoroElement {
    let field = u.field;
    let mut out = VirasoroElement::zero(field);
    for (m, a) in &u.terms {
        for (n, b) in &v.terms {
            out.insert(m + n, field.from_i64(n - m).mul(a).mul(b));
            if m + n == 0 {
                let cocycle = field.from_ratio(m * m * m - m, 12).expect("12 invertible");
                out.central = out.central.add(&cocycle.mul(a).mul(b));
            }
        }
    }
    out
}

/// A vector in the intermediate-series module V_μ = F[ŷ] (indices ≥ 0) or
/// U_μ = F[ŷ^{±1}] (all integer indices), with action
/// w_m·ŷ^ℓ = (ℓ − (m+1)μ) ŷ^{m+ℓ}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VmuVector {
    mu: Scalar,
    coeffs: BTreeMap<i64, Scalar>,
}

impl VmuVector {
    pub fn zero(mu: Scalar) -> Self {
        VmuVector {
            mu,
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis vector ŷ^l.
    pub fn basis(mu: Scalar, l: i64) -> Self {
        let field = mu.field();
        let mut v = VmuVector::zero(mu);
        v.coeffs.insert(l, field.one());
        v
    }

    pub fn mu(&self) -> &Scalar {
        &self.mu
    }

    pub fn coeff(&self, l: i64) -> Scalar {
        self.coeffs
            .get(&l)
            .cloned()
            .unwrap_or_else(|| self.mu.field().zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_index(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    fn insert(&mut self, l: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&l) {
            None => {
                self.coeffs.insert(l, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.coeffs.insert(l, s);
                }
            }
        }
    }

    pub fn add(&self, other: &VmuVector) -> VmuVector {
        assert_eq!(self.mu, other.mu, "vectors from different V_mu");
        let mut out = self.clone();
        for (l, c) in &other.coeffs {
            out.insert(*l, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &VmuVector) -> VmuVector {
        self.add(&other.mul_scalar(&self.mu.field().from_i64(-1)))
    }

    pub fn mul_scalar(&self, s: &Scalar) -> VmuVector {
        let mut out = VmuVector::zero(self.mu.clone());
        for (l, c) in &self.coeffs {
            out.insert(*l, c.mul(s));
        }
        out
    }
}

/// w_m acting on V_μ (m ≥ −1, indices stay ≥ 0: the only boundary case
/// m = −1, ℓ = 0 has coefficient ℓ = 0).
pub fn vmu_action(m: i64, v: &VmuVector) -> VmuVector {
    assert!(m >= -1, "V_mu only carries w_m with m >= -1");
    let field = v.mu.field();
    let mut out = VmuVector::zero(v.mu.clone());
    for (l, c) in &v.coeffs {
        assert!(*l >= 0, "V_mu vector with negative index");
        let factor = field.from_i64(*l).sub(&field.from_i64(m + 1).mul(&v.mu));
        let coeff = factor.mul(c);
        if !coeff.is_zero() {
            debug_assert!(m + l >= 0);
            out.insert(m + l, coeff);
        }
    }
    out
}

/// w_m acting on U_μ (any m ∈ Z, any indices); the central element acts as 0.
pub fn umu_action(m: i64, v: &VmuVector) -> VmuVector {
    let field = v.mu.field();
    let mut out = VmuVector::zero(v.mu.clone());
    for (l, c) in &v.coeffs {
        let factor = field.from_i64(*l).sub(&field.from_i64(m + 1).mul(&v.mu));
        out.insert(m + l, factor.mul(c));
    }
    out
}

/// Truncated irreducibility certificate for V_μ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VmuCertificate {
    /// μ ≠ 0: from every ŷ^ℓ (ℓ ≤ N) the vector ŷ^0 is reached by w_{-1}
    /// iterates, and every ŷ^m (m ≤ N) is regenerated from ŷ^0 by w_m.
    /// Truncated evidence, not a proof.
    Irreducible { checked_up_to: i64 },
    /// μ = 0: the line F·ŷ^0 is invariant.
    ReducibleInvariantLine { index: i64 },
}

pub fn vmu_irreducible(mu: &Scalar, truncation: i64) -> VmuCertificate {
    assert!(truncation >= 2);
    let field = mu.field();
    if mu.is_zero() {
        // exhibit the invariant line: w_m·ŷ^0 = (0 − (m+1)·0)ŷ^m = 0
        for m in -1..=truncation {
            let img = vmu_action(m, &VmuVector::basis(mu.clone(), 0));
            assert!(img.is_zero(), "invariant line violated at m = {m}");
        }
        return VmuCertificate::ReducibleInvariantLine { index: 0 };
    }
    // descent: w_{-1}^ℓ · ŷ^ℓ = ℓ! ŷ^0 ≠ 0
    for l in 0..=truncation {
        let mut v = VmuVector::basis(mu.clone(), l);
        for _ in 0..l {
            v = vmu_action(-1, &v);
        }
        let mut factorial = field.one();
        for k in 1..=l {
            factorial = factorial.mul(&field.from_i64(k));
        }
        assert_eq!(v.coeff(0), factorial, "descent failed at l = {l}");
        assert!(!v.is_zero());
    }
    // regeneration: w_m·ŷ^0 = −(m+1)μ ŷ^m ≠ 0 for m ≥ 0
    for m in 0..=truncation {
        let img = vmu_action(m, &VmuVector::basis(mu.clone(), 0));
        let expected = field.from_i64(-(m + 1)).mul(mu);
        assert_eq!(img.coeff(m), expected);
        assert!(!img.is_zero(), "regeneration failed at m = {m}");
    }
    VmuCertificate::Irreducible {
        checked_up_to: truncation,
    }
}

/// The diagonal w_0-spectrum of V_μ at truncation: the eigenvalue on ŷ^ℓ.
pub fn vmu_w0_spectrum(mu: &Scalar, truncation: i64) -> Vec<Scalar> {
    (0..=truncation)
        .map(|l| {
            let v = vmu_action(0, &VmuVector::basis(mu.clone(), l));
            v.coeff(l)
        })
        .collect()
}

/// Recover μ from the truncated w_0-spectrum: −μ is the unique eigenvalue λ
/// in the spectrum with λ − 1 absent.
pub fn vmu_recover_mu(mu: &Scalar, truncation: i64) -> Scalar {
    let spectrum = vmu_w0_spectrum(mu, truncation);
    let one = mu.field().one();
    let candidates: Vec<&Scalar> = spectrum
        .iter()
        .filter(|l| !spectrum.contains(&l.sub(&one)))
        .collect();
    assert_eq!(candidates.len(), 1, "spectrum did not determine mu");
    candidates[0].neg()
}

/// V_μ ≅ V_{μ'} iff μ = μ'; the spectral recovery is run on both sides as
/// the executable justification.
pub fn vmu_isomorphic(mu: &Scalar, mu2: &Scalar, truncation: i64) -> bool {
    let r1 = vmu_recover_mu(mu, truncation);
    let r2 = vmu_recover_mu(mu2, truncation);
    assert_eq!(r1, mu.neg().neg());
    assert_eq!(r2, mu2.neg().neg());
    r1 == r2
}

/// The recorded irreducibility criterion for U_μ as a Virasoro module:
/// irreducible exactly when μ is neither 0 nor 1. This is an annotation,
/// not a decision procedure on the infinite-dimensional module.
pub fn umu_irreducible_as_virasoro(mu: &Scalar) -> bool {
    !mu.is_zero() && !mu.is_one()
}

/// ν with ν·δ_0(1) ≡ 1 (mod Θ_1), reduced mod Θ_1.
pub fn nu_element(h: &Poly) -> Result<Poly, GerstenhaberError> {
    if h.field().characteristic() != 0 {
        return Err(GerstenhaberError::RequiresChar0);
    }
    let gcd = h.gcd_monic(&h.derivative(1))?;
    if gcd.is_one() {
        return Err(GerstenhaberError::TrivialHH2);
    }
    let theta1 = gcd.squarefree_part()?;
    let d01 = delta0(&Poly::one(h.field()), h)?;
    let (d, a, _) = d01.extended_gcd(&theta1)?;
    if !d.is_one() {
        return Err(GerstenhaberError::NuNotCoprime);
    }
    // a·δ0(1) + b·Θ1 = 1, so ν = a mod Θ1
    let (_, nu) = a.divrem(&theta1)?;
    Ok(nu)
}

/// One composition factor: the layer S_i component at the repeated factor
/// u_j (1-based j), isomorphic to D̄_j ⊗ V_{μ_ij} with μ_ij = (α_j−i)/(α_j−1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionFactor {
    pub i: u32,
    pub j: usize,
    pub u: Poly,
    pub alpha: u32,
    pub mu: Scalar,
}

/// The full composition-series report for HH^2(A_h) as an HH^1(A_h)-module.
#[derive(Clone, Debug)]
pub struct CompositionReport {
    pub h: Poly,
    pub gcd: Poly,
    /// Filtration length: largest multiplicity in h minus 1 (0 when HH^2 = 0).
    pub m_h: u32,
    /// Θ_0, ..., Θ_{m_h}.
    pub thetas: Vec<Poly>,
    /// Composition length Σ_j (α_j − 1).
    pub length: u32,
    /// Semisimple iff m_h ≤ 1, i.e. h is cube free.
    pub semisimple: bool,
    pub factors: Vec<CompositionFactor>,
    /// True when gcd(h, h') = 1 and HH^2 = 0.
    pub trivial: bool,
}

impl CompositionReport {
    /// Membership of a class in P_i = Θ_i·D[ŷ]: every canonical coefficient
    /// is divisible by Θ_i. P_{m_h} = 0.
    pub fn filtration_contains(&self, i: u32, a: &HH2Class) -> bool {
        if i >= self.m_h {
            return a.is_zero();
        }
        let theta = &self.thetas[i as usize];
        a.terms().all(|(_, f)| theta.divides(f))
    }
}

/// ```
/// use ahoch::gerstenhaber::composition_series;
/// use ahoch::poly::{FactoredPoly, Poly};
/// use ahoch::scalar::Field;
///
/// // h = x^3: HH^2 has length 2 with factors V_{3/2} and V_1
/// let q = Field::Rational;
/// let x = Poly::from_ints(q, &[0, 1]);
/// let h = FactoredPoly::new(q.one(), vec![(x, 3)]).unwrap();
/// let report = composition_series(&h).unwrap();
/// assert_eq!(report.length, 2);
/// assert!(!report.semisimple);
/// let mus: Vec<String> = report.factors.iter().map(|f| f.mu.to_string()).collect();
/// assert_eq!(mus, vec!["3/2", "1"]);
/// ```
pub fn composition_series(h_fac: &FactoredPoly) -> Result<CompositionReport, GerstenhaberError> {
    let field = h_fac.field();
    if field.characteristic() != 0 {
        return Err(GerstenhaberError::RequiresChar0);
    }
    let h = h_fac.expand();
    let gcd = h.gcd_monic(&h.derivative(1))?;
    let repeated: Vec<(Poly, u32)> = h_fac
        .factors()
        .iter()
        .filter(|(_, a)| *a >= 2)
        .cloned()
        .collect();
    let m_h = repeated.iter().map(|(_, a)| a - 1).max().unwrap_or(0);
    let length: u32 = h_fac.factors().iter().map(|(_, a)| a - 1).sum();
    let thetas: Vec<Poly> = (0..=m_h).map(|i| theta_factored(h_fac, i)).collect();
    let mut factors = Vec::new();
    for i in 0..m_h {
        for (j, (u, alpha)) in repeated.iter().enumerate() {
            if *alpha >= i + 2 {
                let mu = field
                    .from_ratio((*alpha - i) as i64, (*alpha - 1) as i64)
                    .expect("char 0");
                factors.push(CompositionFactor {
                    i,
                    j: j + 1,
                    u: u.clone(),
                    alpha: *alpha,
                    mu,
                });
            }
        }
    }
    Ok(CompositionReport {
        h,
        gcd,
        m_h,
        thetas,
        length,
        semisimple: m_h <= 1,
        factors,
        trivial: repeated.is_empty(),
    })
}

/// The CRT idempotents e_j of D = F[x]/gcd(h,h') over the repeated-factor
/// moduli u_j^{α_j − 1}, indexed like the composition factors (1-based j).
pub fn layer_idempotents(h_fac: &FactoredPoly) -> Result<Vec<Residue>, GerstenhaberError> {
    let moduli: Vec<Poly> = h_fac
        .factors()
        .iter()
        .filter(|(_, a)| *a >= 2)
        .map(|(u, a)| u.pow(a - 1))
        .collect();
    if moduli.is_empty() {
        return Err(GerstenhaberError::TrivialHH2);
    }
    Ok(crt_idempotents(&moduli)?)
}

/// The action of g ē_j ⊗ w_m on the vector f ē_j ŷ^ℓ in the layer S_i,
/// by the closed scalar formula: zero if α_j ≤ i + 1, otherwise
/// (ℓ − (m+1)·(α_j−i)/(α_j−1)) · f g ē_j ŷ^{m+ℓ}. The value is returned as
/// the residue coefficient mod u_j together with the resulting exponent.
pub fn si_action_formula(
    h_fac: &FactoredPoly,
    i: u32,
    j: usize,
    g: &Poly,
    m: i64,
    f: &Poly,
    l: i64,
) -> Result<(Residue, i64), GerstenhaberError> {
    let field = h_fac.field();
    let repeated: Vec<(Poly, u32)> = h_fac
        .factors()
        .iter()
        .filter(|(_, a)| *a >= 2)
        .cloned()
        .collect();
    let (u, alpha) = repeated
        .get(
            j.checked_sub(1)
                .ok_or(GerstenhaberError::BadFactorIndex(j))?,
        )
        .ok_or(GerstenhaberError::BadFactorIndex(j))?;
    assert!(m >= -1 && l >= 0);
    if *alpha <= i + 1 {
        return Ok((Residue::new(Poly::zero(field), u.clone())?, m + l));
    }
    let mu = field
        .from_ratio((*alpha - i) as i64, (*alpha - 1) as i64)
        .expect("char 0");
    let scalar = field.from_i64(l).sub(&field.from_i64(m + 1).mul(&mu));
    let coeff = f.mul(g).mul_scalar(&scalar);
    Ok((Residue::new(coeff, u.clone())?, m + l))
}

/// The same action through the bracket: g ē_j ⊗ w_m corresponds to
/// −ad_{g e_j ν a_{m+1}}; the bracket is evaluated on the representative
/// Θ_i f E_j ŷ^ℓ through the resolution lifting and projected back to the
/// S_i component at u_j.
pub fn si_action_lifting(
    h_fac: &FactoredPoly,
    i: u32,
    j: usize,
    g: &Poly,
    m: i64,
    f: &Poly,
    l: i64,
) -> Result<(Residue, i64), GerstenhaberError> {
    let h = h_fac.expand();
    let alg = OreAlgebra::new(h.clone()).expect("nonzero h");
    let repeated: Vec<(Poly, u32)> = h_fac
        .factors()
        .iter()
        .filter(|(_, a)| *a >= 2)
        .cloned()
        .collect();
    let (u, _alpha) = repeated
        .get(
            j.checked_sub(1)
                .ok_or(GerstenhaberError::BadFactorIndex(j))?,
        )
        .ok_or(GerstenhaberError::BadFactorIndex(j))?;
    assert!(m >= -1 && l >= 0);

    let idempotents = layer_idempotents(h_fac)?;
    let e_j = idempotents[j - 1].rep().clone();
    let nu = nu_element(&h)?;
    let theta_i = theta_factored(h_fac, i);

    // representative of the layer vector in HH^2
    let rep = alg.term(&theta_i.mul(f).mul(&e_j), l as usize);
    let w = g.mul(&e_j).mul(&nu);
    let d = Derivation::ad_gan(&alg, &w, (m + 1) as usize)?;
    let bracket = bracket_general(&d, &rep)?.neg();

    // the action is concentrated at ŷ^{m+ℓ}
    for (exp, _) in bracket.terms() {
        assert_eq!(exp as i64, m + l, "stray exponent in layer action");
    }
    let target = if m + l >= 0 {
        bracket.coeff((m + l) as usize)
    } else {
        Poly::zero(h.field())
    };
    // the bracket lands in P_i; divide out Θ_i and reduce mod u_j
    let reduced = target
        .exact_div(&theta_i)
        .expect("bracket must land in the filtration layer P_i");
    Ok((Residue::new(reduced, u.clone())?, m + l))
}
