//! Exact scalars over ℚ and prime fields GF(p).
//!
//! A [`Scalar`] carries its own field tag so that values can be combined
//! without threading a context through every call. Mixing fields inside one
//! computation is a programming error and panics; the checked entry points in
//! [`crate::ground`] turn it into [`Error::FieldMismatch`] instead.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted for GF(p); keeps `a + b` inside `u64`.
pub const MAX_PRIME: u64 = 1 << 62;

/// The coefficient field: ℚ or GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// GF(p), checking that `p` is prime.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// 0 for ℚ, `p` for GF(p).
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        Scalar::zero(self)
    }

    pub fn one(self) -> Scalar {
        Scalar::one(self)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        Scalar::from_i64(self, v)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "p={p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `q`, `Q`, `p=7`, `gf7`, `GF(7)`.
    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rational") {
            return Ok(Field::Rational);
        }
        let lower = t.to_ascii_lowercase();
        let digits = lower
            .strip_prefix("p=")
            .or_else(|| lower.strip_prefix("gf(").and_then(|r| r.strip_suffix(')')))
            .or_else(|| lower.strip_prefix("gf"))
            .ok_or_else(|| Error::InvalidScalar {
                value: s.to_string(),
                reason: "expected `q` or `p=PRIME`".into(),
            })?;
        let p: u64 = digits.parse().map_err(|_| Error::InvalidScalar {
            value: s.to_string(),
            reason: "prime is not an integer".into(),
        })?;
        Field::prime(p)
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Modular { value: 0, modulus: p },
        }
    }

    pub fn one(field: Field) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::one()),
            Field::Prime(p) => Scalar::Modular { value: 1 % p, modulus: p },
        }
    }

    pub fn from_i64(field: Field, v: i64) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Modular {
                value: (v as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(field: Field, v: &BigInt) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Modular {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: p,
                }
            }
        }
    }

    /// `num/den` in the given field. Fails when `den` vanishes in the field.
    pub fn from_ratio(field: Field, num: i64, den: i64) -> Result<Scalar> {
        let d = Scalar::from_i64(field, den);
        let inv = d.inv().ok_or_else(|| Error::InvalidScalar {
            value: format!("{num}/{den}"),
            reason: "denominator vanishes".into(),
        })?;
        Ok(&Scalar::from_i64(field, num) * &inv)
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: mod_inverse(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self * &i)
    }

    /// The rational value, if this is a ℚ scalar.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Modular { .. } => None,
        }
    }

    /// Total order used for canonical sorting: numeric on ℚ, residue order on GF(p).
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Modular { value: a, .. }, Scalar::Modular { value: b, .. }) => a.cmp(b),
            (Scalar::Rational(_), Scalar::Modular { .. }) => Ordering::Less,
            (Scalar::Modular { .. }, Scalar::Rational(_)) => Ordering::Greater,
        }
    }

    /// Parses the serialized form: `"p/q"` or an integer string on ℚ, an integer on GF(p).
    pub fn parse(field: Field, s: &str) -> Result<Scalar> {
        let bad = |reason: &str| Error::InvalidScalar {
            value: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        match field {
            Field::Rational => {
                let (num, den) = match t.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (t, "1"),
                };
                let num: BigInt = num.parse().map_err(|_| bad("numerator is not an integer"))?;
                let den: BigInt = den.parse().map_err(|_| bad("denominator is not an integer"))?;
                if den.is_zero() {
                    return Err(bad("zero denominator"));
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            Field::Prime(_) => {
                if t.contains('/') {
                    let (n, d) = t.split_once('/').unwrap();
                    let n = Scalar::parse(field, n)?;
                    let d = Scalar::parse(field, d)?;
                    return n.div(&d).ok_or_else(|| bad("denominator vanishes mod p"));
                }
                let v: BigInt = t.parse().map_err(|_| bad("not an integer"))?;
                Ok(Scalar::from_bigint(field, &v))
            }
        }
    }

    /// JSON form: strings `"p/q"` on ℚ, integers on GF(p).
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Rational(_) => serde_json::Value::String(self.to_string()),
            Scalar::Modular { value, .. } => serde_json::Value::from(*value),
        }
    }

    pub fn from_json(field: Field, v: &serde_json::Value) -> Result<Scalar> {
        match v {
            serde_json::Value::String(s) => Scalar::parse(field, s),
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Scalar::from_i64(field, i))
                } else if let Some(u) = n.as_u64() {
                    Ok(Scalar::from_bigint(field, &BigInt::from(u)))
                } else {
                    Err(Error::InvalidScalar {
                        value: n.to_string(),
                        reason: "floating point values are not exact".into(),
                    })
                }
            }
            other => Err(Error::InvalidScalar {
                value: other.to_string(),
                reason: "expected a string or an integer".into(),
            }),
        }
    }

    fn assert_same_field(&self, other: &Scalar) {
        if let (Scalar::Modular { modulus: a, .. }, Scalar::Modular { modulus: b, .. }) = (self, other) {
            assert_eq!(a, b, "mixed moduli in scalar arithmetic");
        } else {
            assert_eq!(self.field(), other.field(), "mixed fields in scalar arithmetic");
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                let s = a + b;
                Scalar::Modular {
                    value: if s >= *modulus { s - modulus } else { s },
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => Scalar::Modular {
                value: if a >= b { a - b } else { a + modulus - b },
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => Scalar::Modular {
                value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u128 = 1 % m as u128;
    let m128 = m as u128;
    let mut b = base as u128 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime, so Fermat applies.
    mod_pow(a, p - 2, p)
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let f = Field::Rational;
        let a = Scalar::parse(f, "6/-4").unwrap();
        assert_eq!(a.to_string(), "-3/2");
        let b = Scalar::parse(f, "2/4").unwrap();
        assert_eq!(&a + &b, Scalar::from_i64(f, -1));
    }

    #[test]
    fn modular_arithmetic() {
        let f = Field::prime(5).unwrap();
        let a = Scalar::from_i64(f, 3);
        let b = Scalar::from_i64(f, 4);
        assert_eq!(&a * &b, Scalar::from_i64(f, 2));
        assert_eq!(&a - &b, Scalar::from_i64(f, 4));
        assert_eq!(a.inv().unwrap(), Scalar::from_i64(f, 2));
        assert_eq!(Scalar::from_i64(f, -1), Scalar::from_i64(f, 4));
        assert!(Scalar::from_i64(f, 5).is_zero());
    }

    #[test]
    fn prime_check() {
        assert!(Field::prime(7).is_ok());
        assert_eq!(Field::prime(9), Err(Error::NotPrime(9)));
        assert_eq!(Field::prime(1), Err(Error::NotPrime(1)));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn field_parsing() {
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("p=7".parse::<Field>().unwrap(), Field::Prime(7));
        assert_eq!("GF(5)".parse::<Field>().unwrap(), Field::Prime(5));
        assert!("p=8".parse::<Field>().is_err());
    }

    #[test]
    fn ratio_in_prime_field() {
        let f = Field::Prime(7);
        let half = Scalar::from_ratio(f, 1, 2).unwrap();
        assert_eq!(half, Scalar::from_i64(f, 4));
        assert!(Scalar::from_ratio(f, 1, 7).is_err());
        assert_eq!(Scalar::parse(f, "3/2").unwrap(), Scalar::from_i64(f, 5));
    }
}
