//! Coefficient rings. Every scalar is carried as a `BigRational`; the ring tag
//! decides how arithmetic is normalized.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

pub type Scalar = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical string for an exact scalar: `p` or `p/q`.
pub fn fmt_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl Ring {
    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Integers)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::PrimeField(p) => *p,
            _ => 0,
        }
    }

    /// Bring an arbitrary rational into the ring. For F_p the denominator is
    /// inverted mod p; for Z a non-integer is rejected by returning `None`.
    pub fn try_coerce(&self, x: &Scalar) -> Option<Scalar> {
        match self {
            Ring::Rationals => Some(x.clone()),
            Ring::Integers => x.is_integer().then(|| x.clone()),
            Ring::PrimeField(p) => {
                let p = BigInt::from(*p);
                let den = x.denom().mod_floor(&p);
                if den.is_zero() {
                    return None;
                }
                let inv = mod_inverse(&den, &p)?;
                let v = (x.numer() * inv).mod_floor(&p);
                Some(BigRational::from_integer(v))
            }
        }
    }

    pub fn coerce(&self, x: &Scalar) -> Scalar {
        self.try_coerce(x)
            .unwrap_or_else(|| panic!("scalar {} is not an element of {}", fmt_scalar(x), self))
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.coerce(&int(n))
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.norm(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.norm(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.norm(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.norm(-a)
    }

    fn norm(&self, x: Scalar) -> Scalar {
        match self {
            Ring::PrimeField(p) => {
                let p = BigInt::from(*p);
                BigRational::from_integer(x.to_integer().mod_floor(&p))
            }
            _ => x,
        }
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        match self {
            Ring::Integers => a.abs().is_one(),
            _ => !a.is_zero(),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            Ring::Integers => a.abs().is_one().then(|| a.clone()),
            Ring::Rationals => Some(a.recip()),
            Ring::PrimeField(p) => {
                let p = BigInt::from(*p);
                mod_inverse(&a.to_integer(), &p).map(BigRational::from_integer)
            }
        }
    }

    /// Euclidean size used to pick pivots: |a| over Z, 0/1 over a field.
    pub fn size(&self, a: &Scalar) -> BigInt {
        match self {
            Ring::Integers => a.to_integer().abs(),
            _ => {
                if a.is_zero() {
                    BigInt::zero()
                } else {
                    BigInt::one()
                }
            }
        }
    }

    /// Division with remainder `a = q*b + r`, `size(r) < size(b)`.
    pub fn div_rem(&self, a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        match self {
            Ring::Integers => {
                let (q, r) = a.to_integer().div_mod_floor(&b.to_integer());
                (BigRational::from_integer(q), BigRational::from_integer(r))
            }
            _ => {
                let inv = self.inv(b).expect("division by zero");
                (self.mul(a, &inv), Scalar::zero())
            }
        }
    }

    /// Extended gcd: returns (g, s, t) with s*a + t*b = g, g normalized.
    pub fn xgcd(&self, a: &Scalar, b: &Scalar) -> (Scalar, Scalar, Scalar) {
        match self {
            Ring::Integers => {
                let e = a.to_integer().extended_gcd(&b.to_integer());
                let (mut g, mut s, mut t) = (e.gcd, e.x, e.y);
                if g.is_negative() {
                    g = -g;
                    s = -s;
                    t = -t;
                }
                (
                    BigRational::from_integer(g),
                    BigRational::from_integer(s),
                    BigRational::from_integer(t),
                )
            }
            _ => {
                if !a.is_zero() {
                    (Scalar::one(), self.inv(a).unwrap(), Scalar::zero())
                } else if !b.is_zero() {
                    (Scalar::one(), Scalar::zero(), self.inv(b).unwrap())
                } else {
                    (Scalar::zero(), Scalar::one(), Scalar::zero())
                }
            }
        }
    }

    /// Associate normalization: nonnegative over Z, 1 over a field.
    pub fn unit_normalizer(&self, a: &Scalar) -> Scalar {
        match self {
            Ring::Integers => {
                if a.is_negative() {
                    int(-1)
                } else {
                    Scalar::one()
                }
            }
            _ => self.inv(a).unwrap_or_else(Scalar::one),
        }
    }

    /// Iterate over all elements; only finite fields.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            Ring::PrimeField(p) => Some((0..*p as i64).map(int).collect()),
            _ => None,
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(p);
    if e.gcd.abs().is_one() {
        Some((e.x * e.gcd).mod_floor(p))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_normalizes() {
        let f = Ring::PrimeField(5);
        assert_eq!(f.add(&int(3), &int(4)), int(2));
        assert_eq!(f.neg(&int(1)), int(4));
        assert_eq!(f.inv(&int(2)), Some(int(3)));
        assert_eq!(f.coerce(&ratio(1, 2)), int(3));
    }

    #[test]
    fn integer_division_is_floor() {
        let z = Ring::Integers;
        assert_eq!(z.div_rem(&int(-7), &int(2)), (int(-4), int(1)));
        assert!(z.try_coerce(&ratio(1, 2)).is_none());
        let (g, s, t) = z.xgcd(&int(6), &int(-4));
        assert_eq!(g, int(2));
        assert_eq!(&s * int(6) + &t * int(-4), int(2));
    }
}
