//! Exact scalars: residues modulo a prime and reduced rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::LinalgError;

/// The base field of a computation.
///
/// Construct prime fields through [`FieldSpec::prime`], which checks primality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Prime(u32),
    Rationals,
}

impl FieldSpec {
    pub const MAX_PRIME: u32 = 1 << 31;

    pub fn prime(p: u32) -> Result<Self, LinalgError> {
        if p >= Self::MAX_PRIME || !is_prime(p) {
            return Err(LinalgError::NotPrime(p as u64));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// Characteristic-`p` size, or `None` over the rationals.
    pub fn order(self) -> Option<u32> {
        match self {
            FieldSpec::Prime(p) => Some(p),
            FieldSpec::Rationals => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    pub fn zero(self) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Mod { value: 0, p },
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Mod { value: 1 % p, p },
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Mod {
                value: v.rem_euclid(p as i64) as u32,
                p,
            },
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_bigint(self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Prime(p) => {
                let r = v % BigInt::from(p);
                let r = if r.is_negative() {
                    r + BigInt::from(p)
                } else {
                    r
                };
                Scalar::Mod {
                    value: r.to_u32().expect("residue fits in u32"),
                    p,
                }
            }
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(v.clone())),
        }
    }

    /// Maps a rational into this field. Fails when the denominator is not
    /// invertible modulo `p`.
    pub fn from_rational(self, v: &BigRational) -> Option<Scalar> {
        match self {
            FieldSpec::Rationals => Some(Scalar::Rat(v.clone())),
            FieldSpec::Prime(_) => {
                let num = self.from_bigint(v.numer());
                let den = self.from_bigint(v.denom());
                den.inv().map(|d| &num * &d)
            }
        }
    }

    /// All field elements, in increasing residue order. Finite fields only.
    pub fn elements(self) -> Option<impl Iterator<Item = Scalar>> {
        self.order()
            .map(move |p| (0..p).map(move |value| Scalar::Mod { value, p }))
    }

    pub fn parse_scalar(self, text: &str) -> Result<Scalar, LinalgError> {
        let bad = || LinalgError::BadScalar(text.to_string());
        let q = match text.split_once('/') {
            Some((a, b)) => {
                let a = BigInt::from_str(a.trim()).map_err(|_| bad())?;
                let b = BigInt::from_str(b.trim()).map_err(|_| bad())?;
                if b.is_zero() {
                    return Err(bad());
                }
                BigRational::new(a, b)
            }
            None => BigRational::from_integer(BigInt::from_str(text.trim()).map_err(|_| bad())?),
        };
        self.from_rational(&q).ok_or_else(bad)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FieldRepr {
    Prime { prime: u32 },
    Named(String),
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            FieldSpec::Prime(p) => FieldRepr::Prime { prime: p }.serialize(s),
            FieldSpec::Rationals => FieldRepr::Named("Q".into()).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match FieldRepr::deserialize(d)? {
            FieldRepr::Prime { prime } => FieldSpec::prime(prime).map_err(serde::de::Error::custom),
            FieldRepr::Named(s) if s == "Q" => Ok(FieldSpec::Rationals),
            FieldRepr::Named(s) => Err(serde::de::Error::custom(format!("unknown field {s:?}"))),
        }
    }
}

/// Trial division; `p < 2^31` keeps this cheap.
pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut k = 2u64;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// An exact field element that carries its field.
///
/// Residues are kept in `[0, p)`; rationals are reduced with a positive
/// denominator, so structural equality is field equality. Arithmetic between
/// elements of different fields panics; the matrix layer validates fields up
/// front and reports [`LinalgError::FieldMismatch`] instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Mod { value: u32, p: u32 },
    Rat(BigRational),
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Mod { p, .. } => FieldSpec::Prime(*p),
            Scalar::Rat(_) => FieldSpec::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Mod { value, p } => Scalar::Mod {
                value: pow_mod(*value as u64, (*p - 2) as u64, *p as u64) as u32,
                p: *p,
            },
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
        })
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Canonical textual form: `"3"` for residues, `"2/7"` or `"-4"` for rationals.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// For printing coefficients: true when the canonical form reads as negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod { value, .. } => write!(f, "{value}"),
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                let s = *a as u64 + *b as u64;
                let p64 = *p as u64;
                Scalar::Mod {
                    value: if s >= p64 { s - p64 } else { s } as u32,
                    p: *p,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                let v = if a >= b { a - b } else { p - (b - a) };
                Scalar::Mod { value: v, p: *p }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Scalar::Mod {
                    value: (*a as u64 * *b as u64 % *p as u64) as u32,
                    p: *p,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Mod { value, p } => Scalar::Mod {
                value: if *value == 0 { 0 } else { p - value },
                p: *p,
            },
            Scalar::Rat(r) => Scalar::Rat(-r),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

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

/// Rescales `v` so its first nonzero entry is 1. Returns `false` for the zero vector.
pub fn normalize_leading_one(v: &mut [Scalar]) -> bool {
    let Some(lead) = v.iter().find(|x| !x.is_zero()) else {
        return false;
    };
    if lead.is_one() {
        return true;
    }
    let inv = lead.inv().expect("nonzero");
    for x in v.iter_mut() {
        *x *= &inv;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_by_trial_division() {
        let primes: Vec<u32> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(FieldSpec::prime(2_147_483_647).is_ok());
        assert!(FieldSpec::prime(2_147_483_659).is_err());
        assert!(FieldSpec::prime(2_147_483_629).is_ok());
        assert!(FieldSpec::prime(9).is_err());
    }

    #[test]
    fn residues_are_canonical() {
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(f.from_i64(-1), f.from_i64(4));
        assert_eq!((f.from_i64(3) * f.from_i64(2)).to_string(), "1");
        assert_eq!(f.from_i64(3).inv(), Some(f.from_i64(2)));
        assert_eq!(f.zero().inv(), None);
        assert_eq!(f.from_i64(2).pow(4), f.one());
    }

    #[test]
    fn rationals_reduce_and_print() {
        let q = FieldSpec::Rationals;
        let half = q.parse_scalar("2/4").unwrap();
        assert_eq!(half.to_string(), "1/2");
        assert_eq!(q.parse_scalar("6/-3").unwrap().to_string(), "-2");
        assert_eq!((&half + &half), q.one());
        assert!(q.parse_scalar("1/0").is_err());
    }

    #[test]
    fn rational_into_prime_field() {
        let f = FieldSpec::prime(7).unwrap();
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_i64(4));
        assert!(f.parse_scalar("1/7").is_err());
    }

    #[test]
    fn field_json_shapes() {
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"prime":5}"#);
        assert_eq!(
            serde_json::to_string(&FieldSpec::Rationals).unwrap(),
            r#""Q""#
        );
        let back: FieldSpec = serde_json::from_str(r#"{"prime":5}"#).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"prime":6}"#).is_err());
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixed_arithmetic_panics() {
        let _ = FieldSpec::prime(3).unwrap().one() + FieldSpec::Rationals.one();
    }
}
