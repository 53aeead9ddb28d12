//! Canonical-form arithmetic in the algebra A_h (generators x, ŷ with
//! ŷx − xŷ = h) and in the first Weyl algebra A_1 (yx − xy = 1), the
//! derivation δ(f) = f'h, the Leibniz-type map F_α, the embedding
//! A_h → A_1 given by x ↦ x, ŷ ↦ yh, the {h^j y^j} basis, and the
//! characteristic-p center and commutator-subspace decompositions.
//!
//! Elements are stored on the left F[x]-basis x^i ŷ^j (resp. x^i y^j):
//! a finite map from ŷ-degree to the polynomial coefficient. Products are
//! normalized with the rewriting rule ŷ^n f = Σ C(n,j) δ^j(f) ŷ^{n−j}.

use crate::poly::Poly;
use crate::scalar::{Field, Scalar};
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OreError {
    #[error("the defining polynomial h must be nonzero")]
    ZeroH,
    #[error(
        "element is not in the subalgebra: h^{degree} does not divide the y^{degree} coefficient"
    )]
    NotInSubalgebra { degree: usize },
}

/// Binomial coefficient landed into the coefficient field.
pub(crate) fn binomial_scalar(field: Field, n: usize, k: usize) -> Scalar {
    let b: BigInt = num_integer::binomial(BigInt::from(n), BigInt::from(k));
    field.from_bigint(&b)
}

/// The algebra A_h for a fixed nonzero h; hands out elements and owns the
/// rewriting data (h itself).
///
/// ```
/// use ahoch::ore::OreAlgebra;
/// use ahoch::poly::Poly;
/// use ahoch::scalar::Field;
///
/// // the Jordan plane: ŷx = xŷ + x^2
/// let alg = OreAlgebra::new(Poly::from_ints(Field::Rational, &[0, 0, 1])).unwrap();
/// let lhs = alg.yhat().mul(&alg.x());
/// let rhs = alg.x().mul(&alg.yhat()).add(&alg.from_poly(alg.h()));
/// assert_eq!(lhs, rhs);
/// assert_eq!(lhs.to_string(), "(x)*yh^1 + x^2");
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreAlgebra {
    h: Poly,
}

impl OreAlgebra {
    pub fn new(h: Poly) -> Result<Self, OreError> {
        if h.is_zero() {
            return Err(OreError::ZeroH);
        }
        Ok(OreAlgebra { h })
    }

    pub fn h(&self) -> &Poly {
        &self.h
    }

    pub fn field(&self) -> Field {
        self.h.field()
    }

    /// The derivation δ(f) = f'h, applied j times.
    pub fn delta(&self, f: &Poly, j: usize) -> Poly {
        let mut cur = f.clone();
        for _ in 0..j {
            cur = cur.derivative(1).mul(&self.h);
        }
        cur
    }

    pub fn zero(&self) -> OreElement {
        OreElement {
            h: self.h.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> OreElement {
        self.from_poly(&Poly::one(self.field()))
    }

    pub fn x(&self) -> OreElement {
        self.from_poly(&Poly::x(self.field()))
    }

    pub fn yhat(&self) -> OreElement {
        self.term(&Poly::one(self.field()), 1)
    }

    pub fn from_poly(&self, f: &Poly) -> OreElement {
        self.term(f, 0)
    }

    pub fn from_scalar(&self, c: &Scalar) -> OreElement {
        self.from_poly(&Poly::constant(c.clone()))
    }

    /// The single term f(x)·ŷ^j.
    pub fn term(&self, f: &Poly, j: usize) -> OreElement {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(j, f.clone());
        }
        OreElement {
            h: self.h.clone(),
            terms,
        }
    }

    /// The monomial c·x^i ŷ^j.
    pub fn monomial(&self, c: Scalar, i: usize, j: usize) -> OreElement {
        self.term(&Poly::monomial(c, i), j)
    }
}

/// An element of A_h in canonical form Σ_j f_j(x) ŷ^j. The map never stores
/// zero polynomials, so representations are unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreElement {
    h: Poly,
    terms: BTreeMap<usize, Poly>,
}

impl OreElement {
    pub fn h(&self) -> &Poly {
        &self.h
    }

    pub fn field(&self) -> Field {
        self.h.field()
    }

    pub fn algebra(&self) -> OreAlgebra {
        OreAlgebra { h: self.h.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Poly)> {
        self.terms.iter().map(|(j, f)| (*j, f))
    }

    /// Coefficient of ŷ^j.
    pub fn coeff(&self, j: usize) -> Poly {
        self.terms
            .get(&j)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.field()))
    }

    pub fn yhat_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.terms.values().filter_map(|f| f.degree()).max()
    }

    /// Iterate the monomial expansion c·x^i ŷ^j.
    pub fn monomials(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (j, f) in &self.terms {
            for (i, c) in f.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, *j, c.clone()));
                }
            }
        }
        out
    }

    fn same_context(&self, other: &OreElement) {
        assert_eq!(
            self.h, other.h,
            "arithmetic across distinct A_h contexts (h mismatch)"
        );
    }

    fn insert_term(terms: &mut BTreeMap<usize, Poly>, j: usize, f: Poly) {
        if f.is_zero() {
            return;
        }
        match terms.remove(&j) {
            None => {
                terms.insert(j, f);
            }
            Some(g) => {
                let s = g.add(&f);
                if !s.is_zero() {
                    terms.insert(j, s);
                }
            }
        }
    }

    pub fn add(&self, other: &OreElement) -> OreElement {
        self.same_context(other);
        let mut terms = self.terms.clone();
        for (j, f) in &other.terms {
            Self::insert_term(&mut terms, *j, f.clone());
        }
        OreElement {
            h: self.h.clone(),
            terms,
        }
    }

    pub fn sub(&self, other: &OreElement) -> OreElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> OreElement {
        OreElement {
            h: self.h.clone(),
            terms: self.terms.iter().map(|(j, f)| (*j, f.neg())).collect(),
        }
    }

    pub fn mul_scalar(&self, c: &Scalar) -> OreElement {
        if c.is_zero() {
            return OreElement {
                h: self.h.clone(),
                terms: BTreeMap::new(),
            };
        }
        OreElement {
            h: self.h.clone(),
            terms: self
                .terms
                .iter()
                .map(|(j, f)| (*j, f.mul_scalar(c)))
                .collect(),
        }
    }

    /// Left multiplication by a plain polynomial in x.
    pub fn mul_poly_left(&self, f: &Poly) -> OreElement {
        if f.is_zero() {
            return self.algebra().zero();
        }
        OreElement {
            h: self.h.clone(),
            terms: self.terms.iter().map(|(j, g)| (*j, f.mul(g))).collect(),
        }
    }

    /// Product in canonical form, via ŷ^n f = Σ_j C(n,j) δ^j(f) ŷ^{n−j}.
    pub fn mul(&self, other: &OreElement) -> OreElement {
        self.same_context(other);
        let alg = self.algebra();
        let field = self.field();
        let mut terms = BTreeMap::new();
        for (m, f) in &self.terms {
            for (n, g) in &other.terms {
                let mut dg = g.clone();
                for j in 0..=*m {
                    if !dg.is_zero() {
                        let c = binomial_scalar(field, *m, j);
                        if !c.is_zero() {
                            Self::insert_term(&mut terms, m - j + n, f.mul(&dg).mul_scalar(&c));
                        }
                    }
                    if j < *m {
                        dg = alg.delta(&dg, 1);
                    }
                }
            }
        }
        OreElement {
            h: self.h.clone(),
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> OreElement {
        let mut acc = self.algebra().one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// [a, b] = ab − ba.
    pub fn commutator(&self, other: &OreElement) -> OreElement {
        self.mul(other).sub(&other.mul(self))
    }

    /// Oracle product: iterated single-step rewriting ŷg = gŷ + δ(g),
    /// kept independent of [`OreElement::mul`] for cross-checking.
    pub fn mul_oracle(&self, other: &OreElement) -> OreElement {
        self.same_context(other);
        let alg = self.algebra();
        let mut acc = alg.zero();
        for (m, f) in &self.terms {
            let mut cur = other.clone();
            for _ in 0..*m {
                cur = cur.yhat_left_once();
            }
            acc = acc.add(&cur.mul_poly_left(f));
        }
        acc
    }

    /// Left multiplication by ŷ using only the single-step rule.
    fn yhat_left_once(&self) -> OreElement {
        let alg = self.algebra();
        let mut terms = BTreeMap::new();
        for (j, f) in &self.terms {
            Self::insert_term(&mut terms, j + 1, f.clone());
            Self::insert_term(&mut terms, *j, alg.delta(f, 1));
        }
        OreElement {
            h: self.h.clone(),
            terms,
        }
    }

    /// True when every ŷ-coefficient is divisible by f, i.e. the element
    /// lies in f·A_h (for f a divisor-of-h style normal element this is
    /// two-sided membership).
    pub fn is_divisible_by(&self, f: &Poly) -> bool {
        self.terms.values().all(|g| f.divides(g))
    }

    /// Divide every ŷ-coefficient by f; errors on inexact division.
    pub fn divide_poly(&self, f: &Poly) -> Result<OreElement, crate::poly::PolyError> {
        let mut terms = BTreeMap::new();
        for (j, g) in &self.terms {
            terms.insert(*j, g.exact_div(f)?);
        }
        Ok(OreElement {
            h: self.h.clone(),
            terms,
        })
    }
}

impl fmt::Display for OreElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_terms(self.terms.iter().rev(), "yh"))
    }
}

fn render_terms<'a, I>(terms: I, var: &str) -> String
where
    I: Iterator<Item = (&'a usize, &'a Poly)>,
{
    let mut parts = Vec::new();
    for (j, coeff) in terms {
        let part = if *j == 0 {
            format!("{coeff}")
        } else if coeff.is_one() {
            format!("{var}^{j}")
        } else {
            format!("({coeff})*{var}^{j}")
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// The linear map F_α with F_α(x^s) = Σ_{ℓ<s} x^ℓ α x^{s−ℓ−1} and F_α(1) = 0.
pub fn f_alpha(alpha: &OreElement, f: &Poly) -> OreElement {
    let alg = alpha.algebra();
    let x = alg.x();
    let mut acc = alg.zero();
    for (s, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for l in 0..s {
            let term = x.pow(l as u32).mul(alpha).mul(&x.pow((s - l - 1) as u32));
            acc = acc.add(&term.mul_scalar(c));
        }
    }
    acc
}

/// An element of the Weyl algebra A_1 in canonical form Σ_j f_j(x) y^j,
/// normalized with y^n f = Σ C(n,j) f^{(j)} y^{n−j}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    field: Field,
    terms: BTreeMap<usize, Poly>,
}

impl WeylElement {
    pub fn zero(field: Field) -> Self {
        WeylElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        WeylElement::from_poly(field, &Poly::one(field))
    }

    pub fn x(field: Field) -> Self {
        WeylElement::from_poly(field, &Poly::x(field))
    }

    pub fn y(field: Field) -> Self {
        WeylElement::term(field, &Poly::one(field), 1)
    }

    pub fn from_poly(field: Field, f: &Poly) -> Self {
        WeylElement::term(field, f, 0)
    }

    /// The single term f(x)·y^j.
    pub fn term(field: Field, f: &Poly, j: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(j, f.clone());
        }
        WeylElement { field, terms }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Poly)> {
        self.terms.iter().map(|(j, f)| (*j, f))
    }

    pub fn coeff(&self, j: usize) -> Poly {
        self.terms
            .get(&j)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.field))
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(self.field, other.field, "Weyl arithmetic across fields");
        let mut terms = self.terms.clone();
        for (j, f) in &other.terms {
            OreElement::insert_term(&mut terms, *j, f.clone());
        }
        WeylElement {
            field: self.field,
            terms,
        }
    }

    pub fn sub(&self, other: &WeylElement) -> WeylElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> WeylElement {
        WeylElement {
            field: self.field,
            terms: self.terms.iter().map(|(j, f)| (*j, f.neg())).collect(),
        }
    }

    pub fn mul_scalar(&self, c: &Scalar) -> WeylElement {
        if c.is_zero() {
            return WeylElement::zero(self.field);
        }
        WeylElement {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(j, f)| (*j, f.mul_scalar(c)))
                .collect(),
        }
    }

    pub fn mul_poly_left(&self, f: &Poly) -> WeylElement {
        if f.is_zero() {
            return WeylElement::zero(self.field);
        }
        WeylElement {
            field: self.field,
            terms: self.terms.iter().map(|(j, g)| (*j, f.mul(g))).collect(),
        }
    }

    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(self.field, other.field, "Weyl arithmetic across fields");
        let mut terms = BTreeMap::new();
        for (m, f) in &self.terms {
            for (n, g) in &other.terms {
                for j in 0..=*m {
                    let dg = g.derivative(j);
                    if dg.is_zero() {
                        continue;
                    }
                    let c = binomial_scalar(self.field, *m, j);
                    if !c.is_zero() {
                        OreElement::insert_term(&mut terms, m - j + n, f.mul(&dg).mul_scalar(&c));
                    }
                }
            }
        }
        WeylElement {
            field: self.field,
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> WeylElement {
        let mut acc = WeylElement::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn commutator(&self, other: &WeylElement) -> WeylElement {
        self.mul(other).sub(&other.mul(self))
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_terms(self.terms.iter().rev(), "y"))
    }
}

/// The embedding A_h → A_1 given by x ↦ x, ŷ ↦ yh.
pub fn ore_to_weyl(a: &OreElement) -> WeylElement {
    let field = a.field();
    let yh = WeylElement::y(field).mul(&WeylElement::from_poly(field, a.h()));
    let mut acc = WeylElement::zero(field);
    let mut yh_pow = WeylElement::one(field);
    let top = a.yhat_degree().unwrap_or(0);
    let mut powers = Vec::with_capacity(top + 1);
    for _ in 0..=top {
        powers.push(yh_pow.clone());
        yh_pow = yh_pow.mul(&yh);
    }
    for (j, f) in a.terms() {
        acc = acc.add(&powers[j].mul_poly_left(f));
    }
    acc
}

/// The partial inverse of [`ore_to_weyl`]: succeeds exactly on the image,
/// which is { Σ f_j y^j : h^j divides f_j for every j }.
pub fn weyl_to_ore(w: &WeylElement, h: &Poly) -> Result<OreElement, OreError> {
    let alg = OreAlgebra::new(h.clone()).map_err(|_| OreError::ZeroH)?;
    for (j, f) in w.terms() {
        if !h.pow(j as u32).divides(f) {
            return Err(OreError::NotInSubalgebra { degree: j });
        }
    }
    let mut remaining = w.clone();
    let mut result = alg.zero();
    while let Some(n) = remaining.y_degree() {
        let f = remaining.coeff(n);
        let c = f
            .exact_div(&h.pow(n as u32))
            .expect("membership already checked");
        let term = alg.term(&c, n);
        result = result.add(&term);
        remaining = remaining.sub(&ore_to_weyl(&term));
    }
    Ok(result)
}

/// Coefficients of an element of A_h on the free left F[x]-basis {h^j y^j}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HYBasisForm {
    h: Poly,
    terms: BTreeMap<usize, Poly>,
}

impl HYBasisForm {
    pub fn coeff(&self, j: usize) -> Poly {
        self.terms
            .get(&j)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.h.field()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Poly)> {
        self.terms.iter().map(|(j, f)| (*j, f))
    }

    /// Rebuild the element Σ c_j h^j y^j as an OreElement.
    pub fn reconstruct(&self) -> OreElement {
        let field = self.h.field();
        let mut w = WeylElement::zero(field);
        for (j, c) in &self.terms {
            w = w.add(&WeylElement::term(
                field,
                &c.mul(&self.h.pow(*j as u32)),
                *j,
            ));
        }
        weyl_to_ore(&w, &self.h).expect("hy-basis combinations lie in A_h")
    }
}

/// Expand an element on the basis {h^j y^j}: since each h^j y^j has the
/// single-term Weyl form h^j·y^j, the coefficients are the Weyl
/// y-coefficients divided by h^j.
pub fn hy_basis(a: &OreElement) -> HYBasisForm {
    let w = ore_to_weyl(a);
    let mut terms = BTreeMap::new();
    for (j, f) in w.terms() {
        let c = f
            .exact_div(&a.h().pow(j as u32))
            .expect("image of A_h always has divisible coefficients");
        if !c.is_zero() {
            terms.insert(j, c);
        }
    }
    HYBasisForm {
        h: a.h().clone(),
        terms,
    }
}

/// The center of A_h: trivial in characteristic 0, the polynomial algebra
/// on x^p and h^p y^p in characteristic p.
#[derive(Clone, Debug)]
pub enum CenterDescription {
    /// Z(A_h) = F.
    Char0,
    /// Z(A_h) = F[x^p, h^p y^p].
    CharP {
        p: u64,
        xp: WeylElement,
        hp_yp: WeylElement,
    },
}

pub fn center(h: &Poly) -> CenterDescription {
    match h.field() {
        Field::Rational => CenterDescription::Char0,
        Field::Prime(p) => {
            let field = h.field();
            let xp = WeylElement::from_poly(field, &Poly::x(field).pow(p as u32));
            let hp_yp = WeylElement::term(field, &h.pow(p as u32), p as usize);
            CenterDescription::CharP { p, xp, hp_yp }
        }
    }
}

/// Centrality test: commutes with both generators.
pub fn is_central(a: &OreElement) -> bool {
    let alg = a.algebra();
    a.commutator(&alg.x()).is_zero() && a.commutator(&alg.yhat()).is_zero()
}

/// Membership report for the commutator subspaces of A_h.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorMembership {
    pub in_h_a: bool,
    pub in_ad_x: bool,
    pub in_ad_x_plus_ad_yhat: bool,
}

/// Decide membership of `a` in hA, in [x, A], and in [x, A] + [ŷ, A].
///
/// In characteristic 0 all three subspaces coincide with hA. In
/// characteristic p the decision uses the decomposition of A over its
/// center: on the basis {h^m y^m} over F[x], the subspace [x, A] consists
/// of the h-multiples with no components at m ≡ p−1 (mod p), and
/// [x, A] + [ŷ, A] additionally allows those components except in the
/// x-degree ≡ p−1 (mod p) slice.
pub fn commutator_subspace_membership(a: &OreElement) -> CommutatorMembership {
    let h = a.h().clone();
    let in_h_a = a.is_divisible_by(&h);
    match a.field() {
        Field::Rational => CommutatorMembership {
            in_h_a,
            in_ad_x: in_h_a,
            in_ad_x_plus_ad_yhat: in_h_a,
        },
        Field::Prime(p) => {
            if !in_h_a {
                return CommutatorMembership {
                    in_h_a: false,
                    in_ad_x: false,
                    in_ad_x_plus_ad_yhat: false,
                };
            }
            let b = a.divide_poly(&h).expect("h-divisibility checked");
            let hy = hy_basis(&b);
            let pm1 = (p - 1) as usize;
            let mut in_ad_x = true;
            let mut in_sum = true;
            for (m, c) in hy.terms() {
                if m % p as usize == pm1 {
                    if !c.is_zero() {
                        in_ad_x = false;
                    }
                    let slices = c.slice_mod_p(p);
                    if !slices[pm1].is_zero() {
                        in_sum = false;
                    }
                }
            }
            CommutatorMembership {
                in_h_a: true,
                in_ad_x,
                in_ad_x_plus_ad_yhat: in_sum,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn q() -> Field {
        Field::Rational
    }

    fn poly(ints: &[i64]) -> Poly {
        Poly::from_ints(q(), ints)
    }

    fn jordan() -> OreAlgebra {
        OreAlgebra::new(poly(&[0, 0, 1])).unwrap()
    }

    #[test]
    fn delta_examples() {
        let alg = jordan(); // h = x^2
        assert!(alg.delta(&poly(&[1]), 1).is_zero());
        assert_eq!(alg.delta(&poly(&[0, 1]), 1), poly(&[0, 0, 1]));
        assert_eq!(alg.delta(&poly(&[0, 1]), 2), poly(&[0, 0, 0, 2]));
    }

    #[test]
    fn defining_relation() {
        let alg = jordan();
        let lhs = alg.yhat().mul(&alg.x());
        let rhs = alg.x().mul(&alg.yhat()).add(&alg.from_poly(alg.h()));
        assert_eq!(lhs, rhs);
        let a = alg.term(&poly(&[1, 2, 3]), 2);
        assert_eq!(a.mul(&alg.one()), a);
    }

    #[test]
    fn yhat_squared_times_x() {
        // h = x^2: ŷ^2 x = xŷ^2 + 2x^2 ŷ + 2x^3
        let alg = jordan();
        let got = alg.yhat().pow(2).mul(&alg.x());
        let expected = alg
            .term(&poly(&[0, 1]), 2)
            .add(&alg.term(&poly(&[0, 0, 2]), 1))
            .add(&alg.from_poly(&poly(&[0, 0, 0, 2])));
        assert_eq!(got, expected);
        assert_eq!(got, alg.yhat().pow(2).mul_oracle(&alg.x()));
    }

    #[test]
    fn commutator_examples() {
        let alg = jordan();
        assert!(alg.x().commutator(&alg.x()).is_zero());
        assert_eq!(alg.yhat().commutator(&alg.x()), alg.from_poly(alg.h()));
        // [ŷ, x^2] = δ(x^2) = 2x^3
        assert_eq!(
            alg.yhat().commutator(&alg.from_poly(&poly(&[0, 0, 1]))),
            alg.from_poly(&poly(&[0, 0, 0, 2]))
        );
    }

    #[test]
    fn f_alpha_examples() {
        let alg = jordan();
        let alpha = alg.yhat();
        assert!(f_alpha(&alpha, &poly(&[1])).is_zero());
        assert_eq!(f_alpha(&alpha, &poly(&[0, 1])), alpha);
        // F_ŷ(x^2) = ŷx + xŷ = 2xŷ + h
        let got = f_alpha(&alpha, &poly(&[0, 0, 1]));
        let expected = alg.term(&poly(&[0, 2]), 1).add(&alg.from_poly(alg.h()));
        assert_eq!(got, expected);
    }

    #[test]
    fn f_alpha_is_derivation() {
        let alg = OreAlgebra::new(poly(&[1, 2, 0, 1])).unwrap();
        let alpha = alg.term(&poly(&[1, 1]), 2).add(&alg.x());
        let f = poly(&[2, 0, 1]);
        let g = poly(&[-1, 3]);
        let lhs = f_alpha(&alpha, &f.mul(&g));
        let rhs = f_alpha(&alpha, &g)
            .mul_poly_left(&f)
            .add(&f_alpha(&alpha, &f).mul(&alg.from_poly(&g)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn embedding_examples() {
        let alg = jordan();
        assert_eq!(ore_to_weyl(&alg.x()), WeylElement::x(q()));
        // ŷ = yh = hy + h' = x^2 y + 2x
        let w = ore_to_weyl(&alg.yhat());
        let expected = WeylElement::term(q(), &poly(&[0, 0, 1]), 1)
            .add(&WeylElement::from_poly(q(), &poly(&[0, 2])));
        assert_eq!(w, expected);

        // h = x: ŷ^2 = x^2 y^2 + 3xy + 1
        let algx = OreAlgebra::new(poly(&[0, 1])).unwrap();
        let w2 = ore_to_weyl(&algx.yhat().pow(2));
        let expected2 = WeylElement::term(q(), &poly(&[0, 0, 1]), 2)
            .add(&WeylElement::term(q(), &poly(&[0, 3]), 1))
            .add(&WeylElement::one(q()));
        assert_eq!(w2, expected2);
    }

    #[test]
    fn weyl_mul_examples() {
        let y = WeylElement::y(q());
        let x = WeylElement::x(q());
        // yx = xy + 1
        assert_eq!(
            y.mul(&x),
            WeylElement::term(q(), &poly(&[0, 1]), 1).add(&WeylElement::one(q()))
        );
        // y^2 x = x y^2 + 2y
        assert_eq!(
            y.pow(2).mul(&x),
            WeylElement::term(q(), &poly(&[0, 1]), 2).add(&WeylElement::term(q(), &poly(&[2]), 1))
        );
        let a = WeylElement::term(q(), &poly(&[1, 5]), 3);
        assert_eq!(a.mul(&WeylElement::one(q())), a);
    }

    #[test]
    fn weyl_to_ore_examples() {
        let h = poly(&[0, 1]); // h = x
                               // xy = ŷ - 1
        let w = WeylElement::term(q(), &poly(&[0, 1]), 1);
        let alg = OreAlgebra::new(h.clone()).unwrap();
        let got = weyl_to_ore(&w, &h).unwrap();
        assert_eq!(got, alg.yhat().sub(&alg.one()));

        // y alone is not in A_x
        assert_eq!(
            weyl_to_ore(&WeylElement::y(q()), &h),
            Err(OreError::NotInSubalgebra { degree: 1 })
        );

        // round trip on a generic element
        let alg2 = jordan();
        let a = alg2
            .term(&poly(&[1, -2]), 3)
            .add(&alg2.term(&poly(&[5]), 1))
            .add(&alg2.from_poly(&poly(&[0, 0, 7])));
        assert_eq!(weyl_to_ore(&ore_to_weyl(&a), alg2.h()).unwrap(), a);
    }

    #[test]
    fn embedding_is_ring_hom() {
        let alg = OreAlgebra::new(poly(&[1, 0, 2])).unwrap();
        let a = alg.term(&poly(&[0, 1]), 1).add(&alg.from_poly(&poly(&[3])));
        let b = alg.term(&poly(&[2, 1]), 2).add(&alg.x());
        assert_eq!(
            ore_to_weyl(&a.mul(&b)),
            ore_to_weyl(&a).mul(&ore_to_weyl(&b))
        );
        assert_eq!(
            ore_to_weyl(&a.add(&b)),
            ore_to_weyl(&a).add(&ore_to_weyl(&b))
        );
    }

    #[test]
    fn hy_basis_examples() {
        // h = x^2: ŷ = hy + h' so c_0 = h' = 2x, c_1 = 1
        let alg = jordan();
        let hy = hy_basis(&alg.yhat());
        assert_eq!(hy.coeff(0), poly(&[0, 2]));
        assert_eq!(hy.coeff(1), poly(&[1]));
        assert_eq!(hy.reconstruct(), alg.yhat());

        // x^k stays put
        let xk = alg.from_poly(&poly(&[0, 0, 0, 5]));
        let hy = hy_basis(&xk);
        assert_eq!(hy.coeff(0), poly(&[0, 0, 0, 5]));

        // ŷ^2 = (hy + h')^2 = h^2 y^2 + 3hh'y + (hh'' + h'^2), so for h = x^2:
        // x^4 y^2 + 6x^3 y + 6x^2, giving c_2 = 1, c_1 = 6x, c_0 = 6x^2
        let hy = hy_basis(&alg.yhat().pow(2));
        assert_eq!(hy.coeff(2), poly(&[1]));
        assert_eq!(hy.coeff(1), poly(&[0, 6]));
        assert_eq!(hy.coeff(0), poly(&[0, 0, 6]));
        assert_eq!(hy.reconstruct(), alg.yhat().pow(2));
    }

    #[test]
    fn center_char_p() {
        let f3 = Field::Prime(3);
        // h = 1: [x^3, y] = 0 and [y^3, x] = 0 in A_1
        let x3 = WeylElement::from_poly(f3, &Poly::x(f3).pow(3));
        let y3 = WeylElement::y(f3).pow(3);
        assert!(x3.commutator(&WeylElement::y(f3)).is_zero());
        assert!(y3.commutator(&WeylElement::x(f3)).is_zero());

        // generators from the center description commute with x and ŷ
        let h = Poly::from_ints(f3, &[0, 0, 1]);
        let alg = OreAlgebra::new(h.clone()).unwrap();
        if let CenterDescription::CharP { xp, hp_yp, .. } = center(&h) {
            let xp_ore = weyl_to_ore(&xp, &h).unwrap();
            let z_ore = weyl_to_ore(&hp_yp, &h).unwrap();
            assert!(is_central(&xp_ore));
            assert!(is_central(&z_ore));
        } else {
            panic!("expected char-p center");
        }

        // x is never central for h != 0
        assert!(!is_central(&alg.x()));

        // p = 2, h = x^2: x^2 is central
        let f2 = Field::Prime(2);
        let h2 = Poly::from_ints(f2, &[0, 0, 1]);
        let alg2 = OreAlgebra::new(h2).unwrap();
        assert!(is_central(&alg2.from_poly(&Poly::x(f2).pow(2))));
    }

    #[test]
    fn commutator_subspace_examples() {
        let p = 3u64;
        let f3 = Field::Prime(p);
        let h = Poly::from_ints(f3, &[0, 0, 1]); // x^2
        let alg = OreAlgebra::new(h.clone()).unwrap();

        // h x^{p-1} h^{p-1} y^{p-1}: in hA, not in [x,A]+[ŷ,A]
        let inner = WeylElement::term(
            f3,
            &Poly::x(f3).pow((p - 1) as u32).mul(&h.pow((p - 1) as u32)),
            (p - 1) as usize,
        );
        let elt = weyl_to_ore(&inner, &h).unwrap().mul_poly_left(&h);
        let rep = commutator_subspace_membership(&elt);
        assert!(rep.in_h_a);
        assert!(!rep.in_ad_x);
        assert!(!rep.in_ad_x_plus_ad_yhat);

        // zero is in everything
        let rep = commutator_subspace_membership(&alg.zero());
        assert!(rep.in_h_a && rep.in_ad_x && rep.in_ad_x_plus_ad_yhat);

        // h·1 is the (0,0) component of the sum
        let rep = commutator_subspace_membership(&alg.from_poly(&h));
        assert!(rep.in_h_a && rep.in_ad_x && rep.in_ad_x_plus_ad_yhat);

        // characteristic 0 collapses to hA membership
        let algq = jordan();
        let rep = commutator_subspace_membership(&algq.from_poly(algq.h()));
        assert!(rep.in_h_a && rep.in_ad_x && rep.in_ad_x_plus_ad_yhat);
        let rep = commutator_subspace_membership(&algq.x());
        assert!(!rep.in_h_a && !rep.in_ad_x && !rep.in_ad_x_plus_ad_yhat);
    }

    #[test]
    fn commutators_land_in_h_a() {
        // [A, A] ⊆ hA, and in char 0 random commutators divided by h stay in A
        let alg = OreAlgebra::new(poly(&[0, 1, 1])).unwrap();
        let a = alg.term(&poly(&[1, 2]), 2).add(&alg.x());
        let b = alg
            .term(&poly(&[0, 3]), 1)
            .add(&alg.from_poly(&poly(&[4, 0, 1])));
        let c = a.commutator(&b);
        assert!(c.is_divisible_by(alg.h()));
    }

    #[test]
    fn display_format() {
        let alg = jordan();
        let e = alg
            .term(&poly(&[0, 0, 2]), 1)
            .add(&alg.from_poly(&poly(&[0, 0, 0, 1])));
        assert_eq!(e.to_string(), "(2*x^2)*yh^1 + x^3");
        assert_eq!(alg.zero().to_string(), "0");
        assert_eq!(alg.yhat().pow(2).to_string(), "yh^2");
    }

    #[test]
    #[should_panic(expected = "distinct A_h contexts")]
    fn context_mismatch_panics() {
        let a = jordan().x();
        let b = OreAlgebra::new(poly(&[0, 1])).unwrap().x();
        let _ = a.mul(&b);
    }
}
