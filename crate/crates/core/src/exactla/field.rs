use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Field elements are always carried as reduced rationals. Over a prime
/// field the stored value is an integer residue in `0..p`.
pub type Scalar = BigRational;

/// The ground field `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::InvalidInput(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.reduce(Scalar::from_integer(BigInt::from(v)))
    }

    /// Brings an arbitrary rational into canonical form for this field.
    /// Over `F_p` the denominator is inverted modulo `p`; a denominator
    /// divisible by `p` is a caller bug and panics.
    pub fn reduce(&self, v: Scalar) -> Scalar {
        match self {
            Field::Rationals => v,
            Field::Prime(p) => {
                if v.is_integer() {
                    let p = BigInt::from(*p);
                    return Scalar::from_integer(v.numer().mod_floor(&p));
                }
                let p_big = BigInt::from(*p);
                let num = v.numer().mod_floor(&p_big);
                let den = v.denom().mod_floor(&p_big);
                assert!(!den.is_zero(), "denominator divisible by the characteristic");
                let inv = mod_inverse(&den, &p_big);
                Scalar::from_integer((num * inv).mod_floor(&p_big))
            }
        }
    }

    pub fn try_reduce(&self, v: Scalar) -> Result<Scalar> {
        if let Field::Prime(p) = self {
            if v.denom().mod_floor(&BigInt::from(*p)).is_zero() {
                return Err(Error::InvalidInput(format!(
                    "scalar {v} has a denominator divisible by {p}"
                )));
            }
        }
        Ok(self.reduce(v))
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a + b,
            Field::Prime(_) => self.reduce(a + b),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a - b,
            Field::Prime(_) => self.reduce(a - b),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            Field::Rationals => -a,
            Field::Prime(_) => self.reduce(-a),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a * b,
            Field::Prime(_) => self.reduce(a * b),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            Field::Rationals => Some(a.recip()),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                Some(Scalar::from_integer(mod_inverse(a.numer(), &p)))
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let inv = self.inv(b).expect("division by zero");
        self.mul(a, &inv)
    }

    /// Parses `"p/q"`, `"-3"` or `"7"`.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let parse_int = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::InvalidInput(format!("cannot parse scalar {s:?}")))
        };
        let v = match s.split_once('/') {
            Some((n, d)) => {
                let n = parse_int(n)?;
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
                }
                Scalar::new(n, d)
            }
            None => Scalar::from_integer(parse_int(s)?),
        };
        self.try_reduce(v)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.mod_floor(p).extended_gcd(p);
    assert!(e.gcd.is_one(), "element not invertible modulo p");
    e.x.mod_floor(p)
}

/// Canonical text form: `"n"` or `"n/d"`.
pub fn format_scalar(v: &Scalar) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let three = f.from_i64(3);
        assert_eq!(f.inv(&three).unwrap(), f.from_i64(5));
        assert_eq!(f.parse("1/2").unwrap(), f.from_i64(4));
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        assert!(Field::prime(8).is_err());
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Rationals;
        let v = q.parse("6/-4").unwrap();
        assert_eq!(format_scalar(&v), "-3/2");
        assert!(q.parse("1/0").is_err());
    }

    #[test]
    fn bad_denominator_mod_p() {
        let f = Field::prime(3).unwrap();
        assert!(f.parse("1/3").is_err());
    }
}
