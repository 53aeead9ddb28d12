//! Exact univariate polynomial arithmetic over Q or F_p, plus the
//! polynomial constructions the cohomology computations are built on:
//! monic gcds, extended gcd, Yun squarefree decomposition, CRT idempotents,
//! the squarefree part `pi`, the filtration polynomials `theta`, and the
//! maximal p-th-power divisor `rho` in positive characteristic.

use crate::scalar::{Field, Scalar};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("operation requires characteristic 0")]
    RequiresChar0,
    #[error("operation requires prime characteristic")]
    RequiresCharP,
    #[error("zero polynomial not allowed here")]
    ZeroInput,
    #[error("moduli are not pairwise coprime")]
    NotCoprime,
    #[error("invalid factored polynomial: {0}")]
    BadFactorization(String),
    #[error("modulus must be monic and nonconstant")]
    BadModulus,
}

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `x^i`.
/// Canonical form: no trailing zero coefficients (the zero polynomial has
/// an empty coefficient vector), all coefficients in one field.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero(field: Field) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Poly::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Self {
        let field = c.field();
        let mut p = Poly {
            field,
            coeffs: vec![c],
        };
        p.trim();
        p
    }

    pub fn x(field: Field) -> Self {
        Poly::monomial(field.one(), 1)
    }

    /// `c * x^deg`
    pub fn monomial(c: Scalar, deg: usize) -> Self {
        let field = c.field();
        if c.is_zero() {
            return Poly::zero(field);
        }
        let mut coeffs = vec![field.zero(); deg + 1];
        coeffs[deg] = c;
        Poly { field, coeffs }
    }

    pub fn from_coeffs(field: Field, coeffs: Vec<Scalar>) -> Self {
        for c in &coeffs {
            assert_eq!(c.field(), field, "coefficient outside the polynomial field");
        }
        let mut p = Poly { field, coeffs };
        p.trim();
        p
    }

    /// Convenience constructor from small integers, `ints[i]` the coefficient of `x^i`.
    pub fn from_ints(field: Field, ints: &[i64]) -> Self {
        Poly::from_coeffs(field, ints.iter().map(|&n| field.from_i64(n)).collect())
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention `deg 0 = 0`, handy for size bookkeeping.
    pub fn deg_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    fn same_field(&self, other: &Poly) {
        assert_eq!(
            self.field, other.field,
            "polynomial arithmetic across distinct fields"
        );
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i).add(&other.coeff(i)));
        }
        Poly::from_coeffs(self.field, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            field: self.field,
            coeffs: self.coeffs.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.same_field(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(self.field, coeffs)
    }

    pub fn mul_scalar(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field);
        }
        Poly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly {
            field: self.field,
            coeffs,
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division: `self = q*g + r` with `deg r < deg g`.
    pub fn divrem(&self, g: &Poly) -> Result<(Poly, Poly), PolyError> {
        self.same_field(g);
        if g.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let mut r = self.clone();
        let mut q = Poly::zero(self.field);
        let glead_inv = g.leading_coeff().unwrap().inv().unwrap();
        let gdeg = g.degree().unwrap();
        while let Some(rdeg) = r.degree() {
            if rdeg < gdeg {
                break;
            }
            let c = r.leading_coeff().unwrap().mul(&glead_inv);
            let t = Poly::monomial(c, rdeg - gdeg);
            q = q.add(&t);
            r = r.sub(&t.mul(g));
        }
        Ok((q, r))
    }

    /// Division known to be exact; errors if a nonzero remainder shows up.
    pub fn exact_div(&self, g: &Poly) -> Result<Poly, PolyError> {
        let (q, r) = self.divrem(g)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::InexactDivision(format!(
                "{self} not divisible by {g}"
            )))
        }
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other
            .divrem(self)
            .map(|(_, r)| r.is_zero())
            .unwrap_or(false)
    }

    pub fn eval(&self, at: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(c);
        }
        acc
    }

    /// k-fold formal derivative.
    pub fn derivative(&self, k: usize) -> Poly {
        let mut cur = self.clone();
        for _ in 0..k {
            cur = cur.derivative_once();
        }
        cur
    }

    fn derivative_once(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&self.field.from_i64(i as i64)))
            .collect();
        Poly::from_coeffs(self.field, coeffs)
    }

    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.mul_scalar(&lc.inv().unwrap()),
        }
    }

    pub fn is_monic(&self) -> bool {
        matches!(self.leading_coeff(), Some(c) if c.is_one())
    }

    /// Monic greatest common divisor by Euclid; `gcd(f, 0) = monic(f)`.
    pub fn gcd_monic(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same_field(other);
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::BothZero);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended gcd: returns `(d, a, b)` with `d` monic and `a*self + b*other = d`.
    pub fn extended_gcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly), PolyError> {
        self.same_field(other);
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::BothZero);
        }
        let field = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(field), Poly::zero(field));
        let (mut t0, mut t1) = (Poly::zero(field), Poly::one(field));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            (r0, r1) = (r1, r);
            let (ns, nt) = (s0.sub(&q.mul(&s1)), t0.sub(&q.mul(&t1)));
            (s0, s1) = (s1, ns);
            (t0, t1) = (t1, nt);
        }
        let lc_inv = r0.leading_coeff().unwrap().inv().unwrap();
        Ok((
            r0.mul_scalar(&lc_inv),
            s0.mul_scalar(&lc_inv),
            t0.mul_scalar(&lc_inv),
        ))
    }

    /// Yun's squarefree decomposition in characteristic 0: returns the
    /// multiplicity-grouped factors `(s_m, m)` with the `s_m` squarefree,
    /// pairwise coprime, and `prod s_m^m = monic(self)`.
    pub fn squarefree_decomposition(&self) -> Result<FactoredPoly, PolyError> {
        if self.field.characteristic() != 0 {
            return Err(PolyError::RequiresChar0);
        }
        if self.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let unit = self.leading_coeff().unwrap().clone();
        let f = self.monic();
        if f.is_one() {
            return FactoredPoly::new(unit, vec![]);
        }
        let fp = f.derivative(1);
        let a0 = f.gcd_monic(&fp)?;
        let mut b = f.exact_div(&a0)?;
        let mut c = fp.exact_div(&a0)?;
        let mut d = c.sub(&b.derivative(1));
        let mut factors = Vec::new();
        let mut m = 1u32;
        loop {
            let a = b.gcd_monic(&d)?;
            if !a.is_one() {
                factors.push((a.clone(), m));
            }
            b = b.exact_div(&a)?;
            if b.is_one() {
                break;
            }
            c = d.exact_div(&a)?;
            d = c.sub(&b.derivative(1));
            m += 1;
        }
        FactoredPoly::new(unit, factors)
    }

    /// The monic squarefree part `self / gcd(self, self')`.
    pub fn squarefree_part(&self) -> Result<Poly, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let g = self.gcd_monic(&self.derivative(1))?;
        Ok(self.exact_div(&g)?.monic())
    }

    /// Split into residue classes of the exponent mod p: returns `p` polynomials
    /// `f_i(t)` with `self = sum_i f_i(x^p) x^i`. The slice polynomials are in
    /// the formal variable `t = x^p`.
    pub fn slice_mod_p(&self, p: u64) -> Vec<Poly> {
        let p = p as usize;
        let mut slices = vec![Vec::new(); p];
        for (e, c) in self.coeffs.iter().enumerate() {
            let (k, i) = (e / p, e % p);
            if slices[i].len() <= k {
                slices[i].resize(k + 1, self.field.zero());
            }
            slices[i][k] = c.clone();
        }
        slices
            .into_iter()
            .map(|cs| Poly::from_coeffs(self.field, cs))
            .collect()
    }

    /// Inverse of [`Poly::slice_mod_p`]: reassemble `sum_i f_i(x^p) x^i`.
    pub fn from_slices(field: Field, slices: &[Poly], p: u64) -> Poly {
        let mut acc = Poly::zero(field);
        for (i, fi) in slices.iter().enumerate() {
            for (k, c) in fi.coeffs.iter().enumerate() {
                acc = acc.add(&Poly::monomial(c.clone(), k * p as usize + i));
            }
        }
        acc
    }

    /// Substitute `x -> x^p` (the inclusion F[t] -> F[x^p]).
    pub fn inflate(&self, p: u64) -> Poly {
        let mut acc = Poly::zero(self.field);
        for (k, c) in self.coeffs.iter().enumerate() {
            acc = acc.add(&Poly::monomial(c.clone(), k * p as usize));
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_poly(self, "x"))
    }
}

/// Render in the CLI grammar with the given variable name, highest degree first.
pub fn render_poly(p: &Poly, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (e, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (sign, mag) = match c {
            Scalar::Q(q) if q.numer().sign() == num_bigint::Sign::Minus => {
                (true, c.neg().to_string())
            }
            _ => (false, c.to_string()),
        };
        if out.is_empty() {
            if sign {
                out.push('-');
            }
        } else {
            out.push_str(if sign { " - " } else { " + " });
        }
        let coeff_part = if mag == "1" && e > 0 { None } else { Some(mag) };
        match (coeff_part, e) {
            (None, 1) => out.push_str(var),
            (None, _) => out.push_str(&format!("{var}^{e}")),
            (Some(m), 0) => out.push_str(&m),
            (Some(m), 1) => out.push_str(&format!("{m}*{var}")),
            (Some(m), _) => out.push_str(&format!("{m}*{var}^{e}")),
        }
    }
    out
}

/// A polynomial in partially or fully factored form: a unit times a product
/// of monic pairwise-coprime factors with positive multiplicities. Whether
/// the factors are irreducible is asserted by the supplier; only degree-1
/// factors can be certified here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredPoly {
    unit: Scalar,
    factors: Vec<(Poly, u32)>,
}

impl FactoredPoly {
    pub fn new(unit: Scalar, factors: Vec<(Poly, u32)>) -> Result<Self, PolyError> {
        if unit.is_zero() {
            return Err(PolyError::BadFactorization("zero unit".into()));
        }
        for (u, a) in &factors {
            if u.is_zero() || u.is_constant() {
                return Err(PolyError::BadFactorization(
                    "factors must be nonconstant".into(),
                ));
            }
            if !u.is_monic() {
                return Err(PolyError::BadFactorization(format!("{u} is not monic")));
            }
            if *a == 0 {
                return Err(PolyError::BadFactorization("zero multiplicity".into()));
            }
        }
        for i in 0..factors.len() {
            for j in (i + 1)..factors.len() {
                let g = factors[i].0.gcd_monic(&factors[j].0)?;
                if !g.is_one() {
                    return Err(PolyError::BadFactorization(format!(
                        "factors {} and {} share divisor {g}",
                        factors[i].0, factors[j].0
                    )));
                }
            }
        }
        Ok(FactoredPoly { unit, factors })
    }

    pub fn unit(&self) -> &Scalar {
        &self.unit
    }

    pub fn factors(&self) -> &[(Poly, u32)] {
        &self.factors
    }

    pub fn field(&self) -> Field {
        self.unit.field()
    }

    pub fn expand(&self) -> Poly {
        let mut acc = Poly::constant(self.unit.clone());
        for (u, a) in &self.factors {
            acc = acc.mul(&u.pow(*a));
        }
        acc
    }

    /// Largest multiplicity, 0 for an empty (constant) factorization.
    pub fn max_multiplicity(&self) -> u32 {
        self.factors.iter().map(|(_, a)| *a).max().unwrap_or(0)
    }
}

/// An element of the quotient ring F[x]/(modulus), stored as the canonical
/// representative of degree < deg(modulus).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    rep: Poly,
    modulus: Poly,
}

impl Residue {
    pub fn new(rep: Poly, modulus: Poly) -> Result<Self, PolyError> {
        if modulus.is_constant() || !modulus.is_monic() {
            return Err(PolyError::BadModulus);
        }
        let (_, r) = rep.divrem(&modulus)?;
        Ok(Residue { rep: r, modulus })
    }

    pub fn rep(&self) -> &Poly {
        &self.rep
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn same_modulus(&self, other: &Residue) {
        assert_eq!(self.modulus, other.modulus, "residues with distinct moduli");
    }

    pub fn add(&self, other: &Residue) -> Residue {
        self.same_modulus(other);
        Residue::new(self.rep.add(&other.rep), self.modulus.clone()).unwrap()
    }

    pub fn sub(&self, other: &Residue) -> Residue {
        self.same_modulus(other);
        Residue::new(self.rep.sub(&other.rep), self.modulus.clone()).unwrap()
    }

    pub fn mul(&self, other: &Residue) -> Residue {
        self.same_modulus(other);
        Residue::new(self.rep.mul(&other.rep), self.modulus.clone()).unwrap()
    }

    pub fn mul_poly(&self, other: &Poly) -> Residue {
        Residue::new(self.rep.mul(other), self.modulus.clone()).unwrap()
    }
}

/// Monic `f / gcd(f, f')`, the squarefree part of `f`.
pub fn pi(f: &Poly) -> Result<Poly, PolyError> {
    f.squarefree_part()
}

/// The filtration polynomial `theta_i = prod_j u_j^{min(alpha_j - 1, i)}`,
/// computed from an explicit factorization.
pub fn theta_factored(h: &FactoredPoly, i: u32) -> Poly {
    let field = h.field();
    let mut acc = Poly::one(field);
    for (u, a) in h.factors() {
        let e = (*a - 1).min(i);
        acc = acc.mul(&u.pow(e));
    }
    acc
}

/// `theta_i` from an unfactored `h` (characteristic 0) via iterated gcds:
/// `d_1 = gcd(h, h')`, `d_{m+1} = gcd(d_m, d_m')`, `s_m = d_m / d_{m+1}`,
/// and `theta_i = prod_{m<=i} s_m`.
pub fn theta(h: &Poly, i: u32) -> Result<Poly, PolyError> {
    if h.field().characteristic() != 0 {
        return Err(PolyError::RequiresChar0);
    }
    if h.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    let mut acc = Poly::one(h.field());
    let mut d = h.gcd_monic(&h.derivative(1))?;
    for _ in 0..i {
        if d.is_one() {
            break;
        }
        let dnext = d.gcd_monic(&d.derivative(1))?;
        acc = acc.mul(&d.exact_div(&dnext)?);
        d = dnext;
    }
    Ok(acc)
}

/// Largest multiplicity in `h` minus bookkeeping: the filtration length
/// `m_h = max(alpha_j) - 1`, computed by iterated gcds (characteristic 0).
pub fn filtration_length(h: &Poly) -> Result<u32, PolyError> {
    if h.field().characteristic() != 0 {
        return Err(PolyError::RequiresChar0);
    }
    if h.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    let mut d = h.gcd_monic(&h.derivative(1))?;
    let mut m = 0;
    while !d.is_one() {
        d = d.gcd_monic(&d.derivative(1))?;
        m += 1;
    }
    Ok(m)
}

/// Pairwise-orthogonal idempotents for F[x]/(m_1 ... m_k): `e_j ≡ 1 (mod m_j)`
/// and `e_j ≡ 0 (mod m_i)` for `i ≠ j`, with `sum e_j = 1`.
pub fn crt_idempotents(moduli: &[Poly]) -> Result<Vec<Residue>, PolyError> {
    assert!(!moduli.is_empty(), "need at least one modulus");
    let field = moduli[0].field();
    for m in moduli {
        if m.is_constant() || !m.is_monic() {
            return Err(PolyError::BadModulus);
        }
    }
    for i in 0..moduli.len() {
        for j in (i + 1)..moduli.len() {
            if !moduli[i].gcd_monic(&moduli[j])?.is_one() {
                return Err(PolyError::NotCoprime);
            }
        }
    }
    let product = moduli.iter().fold(Poly::one(field), |acc, m| acc.mul(m));
    let mut out = Vec::with_capacity(moduli.len());
    for m in moduli {
        let rest = product.exact_div(m)?;
        // a*m + b*rest = 1, so b*rest is 1 mod m and 0 mod every other modulus
        let (d, _, b) = m.extended_gcd(&rest)?;
        debug_assert!(d.is_one());
        out.push(Residue::new(b.mul(&rest), product.clone())?);
    }
    Ok(out)
}

/// The polynomial `delta_0(g) = (g·pi_h)' − g·(pi_h·h'/h)` (characteristic 0).
/// The second quotient is exact: `pi_h·h'/h = h'/(lc(h)·gcd(h, h'))`.
pub fn delta0(g: &Poly, h: &Poly) -> Result<Poly, PolyError> {
    if h.field().characteristic() != 0 {
        return Err(PolyError::RequiresChar0);
    }
    if h.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    let hp = h.derivative(1);
    let gcd = h.gcd_monic(&hp)?;
    let pih = h.exact_div(&gcd)?.monic();
    let lc_inv = h.leading_coeff().unwrap().inv().unwrap();
    let q = hp.exact_div(&gcd)?.mul_scalar(&lc_inv);
    Ok(g.mul(&pih).derivative(1).sub(&g.mul(&q)))
}

/// The largest monic divisor of `h` lying in F[x^p], over the prime field:
/// `rho_h = e^p` with `e = prod u_j^{floor(alpha_j / p)}`.
pub fn rho(h: &FactoredPoly, p: u64) -> Result<Poly, PolyError> {
    let field = h.field();
    if field != Field::Prime(p) {
        return Err(PolyError::RequiresCharP);
    }
    let mut e = Poly::one(field);
    for (u, a) in h.factors() {
        e = e.mul(&u.pow(a / p as u32));
    }
    Ok(e.pow(p as u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn p(ints: &[i64]) -> Poly {
        Poly::from_ints(q(), ints)
    }

    #[test]
    fn difference_of_squares() {
        let f = p(&[1, 1]); // x+1
        let g = p(&[-1, 1]); // x-1
        assert_eq!(f.mul(&g), p(&[-1, 0, 1]));
    }

    #[test]
    fn divrem_exact() {
        let f = p(&[0, 0, 0, 1]); // x^3
        let g = p(&[0, 0, 1]); // x^2
        let (qq, r) = f.divrem(&g).unwrap();
        assert_eq!(qq, p(&[0, 1]));
        assert!(r.is_zero());
        assert_eq!(
            p(&[1]).divrem(&Poly::zero(q())),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn frobenius_cube_over_f3() {
        let f3 = Field::Prime(3);
        let f = Poly::from_ints(f3, &[1, 1]); // x+1
        let cube = f.pow(3);
        // oracle: naive expansion via binomial coefficients reduced mod 3
        let mut naive = Poly::zero(f3);
        for (k, b) in [1i64, 3, 3, 1].iter().enumerate() {
            naive = naive.add(&Poly::monomial(f3.from_i64(*b), k));
        }
        assert_eq!(cube, naive);
        assert_eq!(cube, Poly::from_ints(f3, &[1, 0, 0, 1])); // x^3+1
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[0, 0, 0, 1]).derivative(1), p(&[0, 0, 3]));
        let f3 = Field::Prime(3);
        assert!(Poly::from_ints(f3, &[0, 0, 0, 1]).derivative(1).is_zero());
        assert_eq!(p(&[0, 1, 0, 0, 1]).derivative(2), p(&[0, 0, 12]));
    }

    #[test]
    fn derivative_is_linear_and_leibniz() {
        let f = p(&[3, -1, 2, 5]);
        let g = p(&[-2, 0, 7, 0, 1]);
        assert_eq!(
            f.add(&g).derivative(1),
            f.derivative(1).add(&g.derivative(1))
        );
        assert_eq!(
            f.mul(&g).derivative(1),
            f.derivative(1).mul(&g).add(&f.mul(&g.derivative(1)))
        );
    }

    #[test]
    fn gcd_examples() {
        // gcd(x^2, 2x) = x: the Jordan-plane gcd(h, h')
        assert_eq!(p(&[0, 0, 1]).gcd_monic(&p(&[0, 2])).unwrap(), p(&[0, 1]));
        // coprime
        assert_eq!(p(&[1, 0, 1]).gcd_monic(&p(&[0, 1])).unwrap(), p(&[1]));
        // h = x^3 (x-1)^2, h' = 3x^2(x-1)^2 + 2x^3(x-1); gcd = x^2 (x-1)
        let h = p(&[0, 0, 0, 1]).mul(&p(&[-1, 1]).pow(2));
        let hp = h.derivative(1);
        let expected = p(&[0, 0, 1]).mul(&p(&[-1, 1]));
        assert_eq!(h.gcd_monic(&hp).unwrap(), expected);
        // gcd(f, 0) = monic f
        assert_eq!(p(&[0, 2]).gcd_monic(&Poly::zero(q())).unwrap(), p(&[0, 1]));
        assert_eq!(
            Poly::zero(q()).gcd_monic(&Poly::zero(q())),
            Err(PolyError::BothZero)
        );
    }

    #[test]
    fn extended_gcd_examples() {
        let (d, a, b) = p(&[0, 1]).extended_gcd(&p(&[1, 1])).unwrap();
        assert_eq!(d, p(&[1]));
        assert_eq!(a, p(&[-1]));
        assert_eq!(b, p(&[1]));

        let f = p(&[0, 0, 1]);
        let (d, a, b) = f.extended_gcd(&f).unwrap();
        assert_eq!(d, f.clone());
        assert_eq!(a.mul(&f).add(&b.mul(&f)), f);

        let (d, a, b) = p(&[-1, 0, 1]).extended_gcd(&p(&[-1, 1])).unwrap();
        assert_eq!(d, p(&[-1, 1]));
        assert_eq!(
            a.mul(&p(&[-1, 0, 1])).add(&b.mul(&p(&[-1, 1]))),
            p(&[-1, 1])
        );
    }

    #[test]
    fn yun_examples() {
        // x^2 (x-1)^3
        let f = p(&[0, 0, 1]).mul(&p(&[-1, 1]).pow(3));
        let fac = f.squarefree_decomposition().unwrap();
        assert_eq!(fac.factors(), &[(p(&[0, 1]), 2), (p(&[-1, 1]), 3)]);
        assert_eq!(fac.expand(), f);

        let g = p(&[1, 0, 1]);
        let fac = g.squarefree_decomposition().unwrap();
        assert_eq!(fac.factors(), &[(p(&[1, 0, 1]), 1)]);

        let x4 = p(&[0, 0, 0, 0, 1]);
        let fac = x4.squarefree_decomposition().unwrap();
        assert_eq!(fac.factors(), &[(p(&[0, 1]), 4)]);

        assert_eq!(
            Poly::zero(q()).squarefree_decomposition(),
            Err(PolyError::ZeroInput)
        );
        assert_eq!(
            Poly::from_ints(Field::Prime(3), &[0, 1]).squarefree_decomposition(),
            Err(PolyError::RequiresChar0)
        );
    }

    #[test]
    fn pi_examples() {
        assert_eq!(pi(&p(&[0, 0, 1])).unwrap(), p(&[0, 1]));
        assert_eq!(pi(&p(&[1, 0, 1])).unwrap(), p(&[1, 0, 1]));
        let h = p(&[0, 0, 0, 1]).mul(&p(&[-1, 1]).pow(2));
        assert_eq!(pi(&h).unwrap(), p(&[0, 1]).mul(&p(&[-1, 1])));
    }

    #[test]
    fn theta_examples() {
        let h = p(&[0, 0, 1]).mul(&p(&[-1, 1]).pow(3));
        assert_eq!(theta(&h, 0).unwrap(), p(&[1]));
        let x3 = p(&[0, 0, 0, 1]);
        assert_eq!(theta(&x3, 1).unwrap(), p(&[0, 1]));
        assert_eq!(theta(&x3, 2).unwrap(), p(&[0, 0, 1]));
        // x^2 (x-1)^3 at i=2: x^min(1,2) (x-1)^min(2,2)
        assert_eq!(theta(&h, 2).unwrap(), p(&[0, 1]).mul(&p(&[-1, 1]).pow(2)));
        assert_eq!(filtration_length(&h).unwrap(), 2);
        assert_eq!(filtration_length(&p(&[1, 0, 1])).unwrap(), 0);
    }

    #[test]
    fn theta_routes_agree() {
        // random-ish factored inputs: compare explicit exponents vs iterated gcds
        let candidates = [
            vec![(p(&[0, 1]), 1u32)],
            vec![(p(&[0, 1]), 3), (p(&[-1, 1]), 2)],
            vec![(p(&[0, 1]), 2), (p(&[1, 1]), 4), (p(&[1, 0, 1]), 1)],
            vec![(p(&[-2, 1]), 5), (p(&[3, 1]), 5)],
            vec![(p(&[1, 0, 1]), 4), (p(&[0, 1]), 3), (p(&[2, 1]), 1)], // deg 12
        ];
        for factors in candidates {
            let fac = FactoredPoly::new(q().one(), factors).unwrap();
            let h = fac.expand();
            for i in 0..=6 {
                assert_eq!(theta(&h, i).unwrap(), theta_factored(&fac, i), "i={i}");
            }
            assert_eq!(
                filtration_length(&h).unwrap(),
                fac.max_multiplicity().saturating_sub(1)
            );
        }
    }

    #[test]
    fn crt_examples() {
        let single = crt_idempotents(&[p(&[1, 0, 1])]).unwrap();
        assert_eq!(single[0].rep(), &p(&[1]));

        let es = crt_idempotents(&[p(&[0, 1]), p(&[-1, 1])]).unwrap();
        assert_eq!(es[0].rep(), &p(&[1, -1])); // 1 - x
        assert_eq!(es[1].rep(), &p(&[0, 1])); // x

        let moduli = [p(&[0, 1]), p(&[1, 1]), p(&[-1, 1])];
        let es = crt_idempotents(&moduli).unwrap();
        let sum = es.iter().fold(
            Residue::new(Poly::zero(q()), es[0].modulus().clone()).unwrap(),
            |acc, e| acc.add(e),
        );
        assert_eq!(sum.rep(), &p(&[1]));
        for (i, ei) in es.iter().enumerate() {
            for (j, ej) in es.iter().enumerate() {
                let prod = ei.mul(ej);
                if i == j {
                    assert_eq!(&prod, ei);
                } else {
                    assert!(prod.is_zero());
                }
            }
        }

        assert_eq!(
            crt_idempotents(&[p(&[0, 1]), p(&[0, 1])]),
            Err(PolyError::NotCoprime)
        );
    }

    #[test]
    fn rho_examples() {
        let f3 = Field::Prime(3);
        let x = Poly::from_ints(f3, &[0, 1]);
        let h = FactoredPoly::new(f3.one(), vec![(x.clone(), 3)]).unwrap();
        assert_eq!(rho(&h, 3).unwrap(), x.pow(3));

        let h = FactoredPoly::new(f3.one(), vec![(x.clone(), 1)]).unwrap();
        assert!(rho(&h, 3).unwrap().is_one());

        // h in F[x^p]: multiplicities divisible by p keep h itself
        let h = FactoredPoly::new(f3.one(), vec![(x.clone(), 6)]).unwrap();
        assert_eq!(rho(&h, 3).unwrap(), x.pow(6));

        let hq = FactoredPoly::new(q().one(), vec![(p(&[0, 1]), 3)]).unwrap();
        assert_eq!(rho(&hq, 3), Err(PolyError::RequiresCharP));
    }

    #[test]
    fn rho_divides_and_lives_in_xp_slots() {
        let f3 = Field::Prime(3);
        let x = Poly::from_ints(f3, &[0, 1]);
        let xp1 = Poly::from_ints(f3, &[1, 1]);
        let h = FactoredPoly::new(f3.one(), vec![(x, 4), (xp1, 2)]).unwrap();
        let r = rho(&h, 3).unwrap();
        assert!(r.divides(&h.expand()));
        for (e, c) in r.coeffs().iter().enumerate() {
            if !c.is_zero() {
                assert_eq!(e % 3, 0);
            }
        }
    }

    #[test]
    fn slices_round_trip() {
        let f3 = Field::Prime(3);
        let f = Poly::from_ints(f3, &[1, 2, 0, 1, 0, 0, 0, 2]);
        let slices = f.slice_mod_p(3);
        assert_eq!(Poly::from_slices(f3, &slices, 3), f);
    }

    #[test]
    fn display_round_trip_shapes() {
        assert_eq!(p(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(p(&[1]).to_string(), "1");
        assert_eq!(Poly::zero(q()).to_string(), "0");
        let half = Poly::constant(q().from_ratio(3, 2).unwrap());
        assert_eq!(half.mul(&p(&[0, 1])).add(&p(&[1])).to_string(), "3/2*x + 1");
    }

    #[test]
    fn evaluation_and_scalar_multiplication() {
        let f = p(&[1, -2, 0, 1]); // x^3 - 2x + 1
        assert_eq!(f.eval(&q().from_i64(2)), q().from_i64(5));
        assert_eq!(f.eval(&q().from_ratio(1, 2).unwrap()), q().from_ratio(1, 8).unwrap());
        assert_eq!(f.eval(&q().zero()), q().one());
        let f5 = Field::Prime(5);
        let g = Poly::from_ints(f5, &[1, 1, 1]);
        assert_eq!(g.eval(&f5.from_i64(3)), f5.from_i64(13));
        // scalar multiplication distributes over evaluation
        let c = q().from_ratio(-3, 7).unwrap();
        assert_eq!(
            f.mul_scalar(&c).eval(&q().from_i64(2)),
            c.mul(&f.eval(&q().from_i64(2)))
        );
        assert!(f.mul_scalar(&q().zero()).is_zero());
    }

    #[test]
    fn delta0_examples() {
        // h = x^2: δ0(1) = (x)' − 2 = −1; h = x^3: δ0(1) = 1 − 3 = −2
        assert_eq!(delta0(&p(&[1]), &p(&[0, 0, 1])).unwrap(), p(&[-1]));
        assert_eq!(delta0(&p(&[1]), &p(&[0, 0, 0, 1])).unwrap(), p(&[-2]));
        // scaling h does not change δ0
        assert_eq!(
            delta0(&p(&[1, 1]), &p(&[0, 0, 2])).unwrap(),
            delta0(&p(&[1, 1]), &p(&[0, 0, 1])).unwrap()
        );
        assert_eq!(
            delta0(&p(&[1]), &Poly::from_ints(Field::Prime(3), &[0, 1])),
            Err(PolyError::RequiresChar0)
        );
    }
}
