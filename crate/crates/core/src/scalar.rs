//! Exact field scalars: arbitrary-precision rationals and real quadratic
//! extensions Q(√d), written a + b√d with d squarefree and not a square.
//!
//! Rationals embed into Q(√d) on the fly (b = 0), so mixed expressions with a
//! single d are fine. Combining two quadratic scalars with different d is a
//! programming error and panics; file loading rejects such inputs up front.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field of an arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    /// Q(√d), d &ge; 2 squarefree.
    Quadratic(u64),
}

impl Field {
    pub fn quadratic(d: u64) -> Result<Field> {
        validate_quadratic_d(d)?;
        Ok(Field::Quadratic(d))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Quadratic(d) => write!(f, "Q(sqrt {d})"),
        }
    }
}

/// Rejects d that is 0, 1, a perfect square, or not squarefree.
pub fn validate_quadratic_d(d: u64) -> Result<()> {
    if d < 2 {
        return Err(Error::Parse(format!("quadratic d must be >= 2, got {d}")));
    }
    let mut m = d;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return Err(Error::Parse(format!("quadratic d = {d} is not squarefree")));
            }
        }
        p += 1;
    }
    Ok(())
}

/// An exact field element: a rational, or a + b√d with b ≠ 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Quadratic { a: BigRational, b: BigRational, d: u64 },
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// p/q as a rational scalar. Panics if q = 0.
    pub fn ratio(p: i64, q: i64) -> Scalar {
        Scalar::Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar::Rational(r)
    }

    /// a + b√d, collapsing to a plain rational when b = 0.
    pub fn quadratic(a: BigRational, b: BigRational, d: u64) -> Scalar {
        if b.is_zero() {
            Scalar::Rational(a)
        } else {
            Scalar::Quadratic { a, b, d }
        }
    }

    /// √d itself.
    pub fn sqrt_of(d: u64) -> Scalar {
        Scalar::quadratic(BigRational::zero(), BigRational::one(), d)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    /// The d of the quadratic part, if any.
    pub fn quadratic_d(&self) -> Option<u64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Quadratic { d, .. } => Some(*d),
        }
    }

    /// Rational and quadratic coefficients (a, b).
    pub fn parts(&self) -> (BigRational, BigRational) {
        match self {
            Scalar::Rational(r) => (r.clone(), BigRational::zero()),
            Scalar::Quadratic { a, b, .. } => (a.clone(), b.clone()),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => {
                assert!(!r.is_zero(), "division by zero scalar");
                Scalar::Rational(r.recip())
            }
            Scalar::Quadratic { a, b, d } => {
                // (a + b√d)^-1 = (a - b√d) / (a^2 - b^2 d); the norm is nonzero
                // because d is not a rational square and b != 0.
                let dr = BigRational::from_integer(BigInt::from(*d));
                let norm = a * a - b * b * dr;
                assert!(!norm.is_zero(), "zero norm in quadratic inverse");
                Scalar::quadratic(a / &norm, -(b / &norm), *d)
            }
        }
    }

    /// Sign of the canonical ordering key: the rational part first, then the
    /// quadratic coefficient. Not the sign of the real value a + b√d; used
    /// only as a normalization tie-break.
    pub fn canonical_sign(&self) -> i32 {
        let (a, b) = match self {
            Scalar::Rational(r) => return rational_sign(r),
            Scalar::Quadratic { a, b, .. } => (a, b),
        };
        match rational_sign(a) {
            0 => rational_sign(b),
            s => s,
        }
    }

    fn merge_d(x: Option<u64>, y: Option<u64>) -> Option<u64> {
        match (x, y) {
            (None, other) | (other, None) => other,
            (Some(p), Some(q)) => {
                assert_eq!(p, q, "mixed quadratic fields: sqrt({p}) vs sqrt({q})");
                Some(p)
            }
        }
    }
}

fn rational_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let d = Scalar::merge_d(self.quadratic_d(), rhs.quadratic_d());
        let (a1, b1) = self.parts();
        let (a2, b2) = rhs.parts();
        match d {
            None => Scalar::Rational(a1 + a2),
            Some(d) => Scalar::quadratic(a1 + a2, b1 + b2, d),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            _ => {
                let d = Scalar::merge_d(self.quadratic_d(), rhs.quadratic_d())
                    .expect("quadratic operand expected");
                let dr = BigRational::from_integer(BigInt::from(d));
                let (a1, b1) = self.parts();
                let (a2, b2) = rhs.parts();
                Scalar::quadratic(&a1 * &a2 + &b1 * &b2 * dr, &a1 * &b2 + &b1 * &a2, d)
            }
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Quadratic { a, b, d } => Scalar::Quadratic {
                a: -a,
                b: -b,
                d: *d,
            },
        }
    }
}

macro_rules! owned_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $trait::$method(&self, &rhs)
            }
        }
    )*};
}
owned_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Quadratic { a, b, d } => {
                write!(f, "{} + {}*sqrt({d})", fmt_rat(a), fmt_rat(b))
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses "p" or "p/q" into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p = BigInt::from_str(num).map_err(|e| Error::Parse(format!("bad numerator {num:?}: {e}")))?;
    let q = BigInt::from_str(den).map_err(|e| Error::Parse(format!("bad denominator {den:?}: {e}")))?;
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(p, q))
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Scalar> {
        Ok(Scalar::Rational(parse_rational(s)?))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Rational(r) => serializer.serialize_str(&fmt_rat(r)),
            Scalar::Quadratic { a, b, d } => {
                let mut st = serializer.serialize_struct("Scalar", 3)?;
                st.serialize_field("a", &fmt_rat(a))?;
                st.serialize_field("b", &fmt_rat(b))?;
                st.serialize_field("d", d)?;
                st.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Scalar, D::Error> {
        struct ScalarVisitor;

        impl<'de> Visitor<'de> for ScalarVisitor {
            type Value = Scalar;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string \"p/q\", an integer, or {a, b, d}")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Scalar, E> {
                parse_rational(v)
                    .map(Scalar::Rational)
                    .map_err(|e| E::custom(e.to_string()))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Scalar, E> {
                Ok(Scalar::from_int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Scalar, E> {
                Ok(Scalar::Rational(BigRational::from_integer(BigInt::from(v))))
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Scalar, A::Error> {
                let mut a: Option<String> = None;
                let mut b: Option<String> = None;
                let mut d: Option<u64> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "a" => a = Some(map.next_value()?),
                        "b" => b = Some(map.next_value()?),
                        "d" => d = Some(map.next_value()?),
                        other => return Err(de::Error::unknown_field(other, &["a", "b", "d"])),
                    }
                }
                let a = a.ok_or_else(|| de::Error::missing_field("a"))?;
                let b = b.ok_or_else(|| de::Error::missing_field("b"))?;
                let d = d.ok_or_else(|| de::Error::missing_field("d"))?;
                validate_quadratic_d(d).map_err(|e| de::Error::custom(e.to_string()))?;
                let a = parse_rational(&a).map_err(|e| de::Error::custom(e.to_string()))?;
                let b = parse_rational(&b).map_err(|e| de::Error::custom(e.to_string()))?;
                Ok(Scalar::quadratic(a, b, d))
            }
        }

        deserializer.deserialize_any(ScalarVisitor)
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Field::Rational => serializer.serialize_str("rational"),
            Field::Quadratic(d) => {
                let mut st = serializer.serialize_struct("Field", 1)?;
                st.serialize_field("quadratic", d)?;
                st.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Field, D::Error> {
        struct FieldVisitor;

        impl<'de> Visitor<'de> for FieldVisitor {
            type Value = Field;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("\"rational\" or {\"quadratic\": d}")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Field, E> {
                match v {
                    "rational" => Ok(Field::Rational),
                    other => Err(E::custom(format!("unknown field tag {other:?}"))),
                }
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Field, A::Error> {
                let mut d: Option<u64> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "quadratic" => d = Some(map.next_value()?),
                        other => return Err(de::Error::unknown_field(other, &["quadratic"])),
                    }
                }
                let d = d.ok_or_else(|| de::Error::missing_field("quadratic"))?;
                Field::quadratic(d).map_err(|e| de::Error::custom(e.to_string()))
            }
        }

        deserializer.deserialize_any(FieldVisitor)
    }
}
