//! Exact scalar arithmetic: arbitrary-precision rationals and prime fields.
//!
//! Every coefficient in this crate is a [`Scalar`] tagged with its [`Field`].
//! There is no floating point anywhere; arithmetic is exact by construction.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// The coefficient field: the rationals or a prime field F_p.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Field {
    /// Characteristic 0, elements are arbitrary-precision rationals.
    Rational,
    /// The prime field F_p, elements are residues in `[0, p)`.
    Prime(u64),
}

impl Field {
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::zero()),
            Field::Prime(p) => Scalar::Fp { p: *p, v: 0 },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let p_i = *p as i128;
                let v = ((n as i128 % p_i) + p_i) % p_i;
                Scalar::Fp { p: *p, v: v as u64 }
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let m = mod_floor_u64(n, *p);
                Scalar::Fp { p: *p, v: m }
            }
        }
    }

    /// Build `a/b` in this field. Fails over F_p when `b ≡ 0 (mod p)`.
    pub fn from_ratio(&self, num: i64, den: i64) -> Option<Scalar> {
        assert!(den != 0, "zero denominator");
        match self {
            Field::Rational => Some(Scalar::Q(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            Field::Prime(_) => {
                let d = self.from_i64(den);
                let inv = d.inv()?;
                Some(self.from_i64(num).mul(&inv))
            }
        }
    }

    pub fn from_big_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Scalar> {
        assert!(!den.is_zero(), "zero denominator");
        match self {
            Field::Rational => Some(Scalar::Q(BigRational::new(num.clone(), den.clone()))),
            Field::Prime(_) => {
                let d = self.from_bigint(den);
                let inv = d.inv()?;
                Some(self.from_bigint(num).mul(&inv))
            }
        }
    }
}

fn mod_floor_u64(n: &BigInt, p: u64) -> u64 {
    use num_integer::Integer;
    let m = n.mod_floor(&BigInt::from(p));
    let (_, digits) = m.to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => digits[0],
        _ => unreachable!("residue below a u64 modulus"),
    }
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator (the `BigRational` invariant); F_p residues live in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { p: u64, v: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    fn same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across distinct fields"
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.same_field(other);
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                p: *p,
                v: ((*a as u128 + *b as u128) % *p as u128) as u64,
            },
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { p, v } => Scalar::Fp {
                p: *p,
                v: if *v == 0 { 0 } else { p - v },
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.same_field(other);
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                p: *p,
                v: ((*a as u128 * *b as u128) % *p as u128) as u64,
            },
            _ => unreachable!(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(a) => Scalar::Q(a.recip()),
            Scalar::Fp { p, v } => Scalar::Fp {
                p: *p,
                v: mod_inverse(*v, *p),
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv().expect("division by zero scalar"))
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.clone().mul(&base);
            e >>= 1;
        }
        acc
    }
}

fn mod_inverse(v: u64, p: u64) -> u64 {
    // extended Euclid on (v, p); p prime, v != 0 mod p
    let (mut r0, mut r1) = (v as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "inverse of non-unit mod {p}");
    (((s0 % p as i128) + p as i128) % p as i128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_lowest_terms() {
        let f = Field::Rational;
        let x = f.from_ratio(6, 4).unwrap();
        assert_eq!(x.to_string(), "3/2");
        let y = f.from_ratio(-6, -4).unwrap();
        assert_eq!(y, x);
    }

    #[test]
    fn fp_wraps_and_inverts() {
        let f = Field::Prime(7);
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        let three = f.from_i64(3);
        assert!(three.mul(&three.inv().unwrap()).is_one());
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn fp_ratio_rejects_p_denominator() {
        let f = Field::Prime(3);
        assert!(f.from_ratio(1, 3).is_none());
        assert_eq!(f.from_ratio(1, 2).unwrap(), f.from_i64(2));
    }

    #[test]
    #[should_panic(expected = "distinct fields")]
    fn mixed_fields_panic() {
        let a = Field::Rational.one();
        let b = Field::Prime(5).one();
        let _ = a.add(&b);
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let f = Field::Prime(5);
        let a = f.from_i64(3);
        assert_eq!(a.pow(4), a.mul(&a).mul(&a).mul(&a));
        assert!(a.pow(0).is_one());
    }
}
