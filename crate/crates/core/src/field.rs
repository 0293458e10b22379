//! Exact coefficient arithmetic: the rationals or a prime field F_p.
//!
//! Scalars never carry floating point. A `FieldSpec` names the field once per
//! container (polynomial, operator, matrix row) and performs all arithmetic,
//! so characteristic mismatches are caught at the container boundary.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Coefficient field: characteristic 0 (arbitrary-precision rationals) or a
/// prime field F_p with p < 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

/// A scalar value; its field is tracked by the enclosing container.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    /// Residue in 0..p, for the `FieldSpec::Prime(p)` field.
    Residue(u64),
}

impl FieldSpec {
    /// Builds a field from a characteristic: 0 means the rationals, a prime
    /// p < 2^31 means F_p. Anything else is rejected.
    pub fn from_char(ch: u32) -> Result<FieldSpec> {
        if ch == 0 {
            return Ok(FieldSpec::Rationals);
        }
        if ch < 2 || ch >= (1 << 31) {
            return Err(Error::Domain(format!("characteristic {ch} out of range")));
        }
        if !is_prime(ch) {
            return Err(Error::Domain(format!("characteristic {ch} is not prime")));
        }
        Ok(FieldSpec::Prime(ch))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime(_) => Scalar::Residue(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::one()),
            FieldSpec::Prime(_) => Scalar::Residue(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => {
                let p = BigInt::from(*p);
                let mut r = v % &p;
                if r.is_negative() {
                    r += &p;
                }
                Scalar::Residue(u64::try_from(r).expect("reduced residue fits"))
            }
        }
    }

    /// Scalar from a ratio of integers; the denominator must be invertible.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        let n = self.from_bigint(num);
        let d = self.from_bigint(den);
        let inv = self.inv(&d)?;
        Ok(self.mul(&n, &inv))
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Residue(x) => *x == 0,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x + y)
            }
            (FieldSpec::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue((x + y) % u64::from(*p))
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rational(x)) => Scalar::Rational(-x),
            (FieldSpec::Prime(p), Scalar::Residue(x)) => {
                Scalar::Residue(if *x == 0 { 0 } else { u64::from(*p) - x })
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x * y)
            }
            (FieldSpec::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue((x * y) % u64::from(*p))
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::Domain("division by zero".into()));
        }
        Ok(match (self, a) {
            (FieldSpec::Rationals, Scalar::Rational(x)) => Scalar::Rational(x.recip()),
            (FieldSpec::Prime(p), Scalar::Residue(x)) => {
                Scalar::Residue(pow_mod(*x, u64::from(*p) - 2, u64::from(*p)))
            }
            _ => panic!("scalar/field mismatch"),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rational(x) => {
                if x.is_integer() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Residue(x) => x.to_string(),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Binomial coefficient C(v, t) as an exact integer (0 when t > v).
pub fn binomial(v: u32, t: u32) -> BigInt {
    if t > v {
        return BigInt::zero();
    }
    let t = t.min(v - t);
    let mut acc = BigInt::one();
    for k in 0..t {
        acc = acc * BigInt::from(v - k) / BigInt::from(k + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristic_validation() {
        assert_eq!(FieldSpec::from_char(0).unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::from_char(7).unwrap(), FieldSpec::Prime(7));
        assert!(FieldSpec::from_char(1).is_err());
        assert!(FieldSpec::from_char(6).is_err());
        assert!(FieldSpec::from_char(1 << 31).is_err());
    }

    #[test]
    fn rational_arithmetic() {
        let f = FieldSpec::Rationals;
        let half = f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        let third = f.from_ratio(&BigInt::from(1), &BigInt::from(3)).unwrap();
        let sum = f.add(&half, &third);
        assert_eq!(f.format(&sum), "5/6");
        assert_eq!(f.format(&f.mul(&half, &third)), "1/6");
        assert!(f.is_zero(&f.sub(&half, &half)));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::Prime(7);
        let a = f.from_i64(-3); // 4 mod 7
        assert_eq!(f.format(&a), "4");
        let inv = f.inv(&a).unwrap();
        assert_eq!(f.format(&f.mul(&a, &inv)), "1");
        assert!(f.inv(&f.zero()).is_err());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }
}
