//! Exact scalars in a quadratic extension `Q(√d)`.
//!
//! A [`Scalar`] is `rat + irr·√d` with rational parts and a square-free
//! radicand `d > 1`. Purely rational values carry `d = 1`. Arithmetic between
//! two values with different nonzero irrational parts in different extensions
//! is a programming error and panics; a polynomial field always lives in a
//! single extension, which the JSON loader enforces.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarParseError {
    #[error("empty number")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("radicand must be a positive integer, got {0}")]
    BadRadicand(i64),
}

/// `rat + irr·√radicand`, always normalized.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    rat: BigRational,
    irr: BigRational,
    radicand: u64,
}

fn square_free_split(d: u64) -> (u64, u64) {
    // d = s² · r with r square-free
    let mut r = d;
    let mut s = 1u64;
    let mut p = 2u64;
    while p * p <= r {
        while r % (p * p) == 0 {
            r /= p * p;
            s *= p;
        }
        p += 1;
    }
    (s, r)
}

fn merge_radicands(a: u64, b: u64) -> u64 {
    match (a, b) {
        (1, x) | (x, 1) => x,
        (x, y) if x == y => x,
        (x, y) => panic!("mixed quadratic extensions √{x} and √{y}"),
    }
}

impl Scalar {
    pub fn new(rat: BigRational, irr: BigRational, radicand: u64) -> Self {
        assert!(radicand > 0, "radicand must be positive");
        if irr.is_zero() {
            return Scalar { rat, irr, radicand: 1 };
        }
        let (s, r) = square_free_split(radicand);
        let irr = irr * BigRational::from_integer(BigInt::from(s));
        if r == 1 {
            Scalar {
                rat: rat + irr,
                irr: BigRational::zero(),
                radicand: 1,
            }
        } else {
            Scalar { rat, irr, radicand: r }
        }
    }

    pub fn rational(rat: BigRational) -> Self {
        Scalar {
            rat,
            irr: BigRational::zero(),
            radicand: 1,
        }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// `c·√d`.
    pub fn surd(c: BigRational, d: u64) -> Self {
        Self::new(BigRational::zero(), c, d)
    }

    /// `√d` itself.
    pub fn sqrt_of(d: u64) -> Self {
        Self::surd(BigRational::one(), d)
    }

    /// The exact binary value of a finite `f64`.
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Self::rational)
    }

    pub fn rat(&self) -> &BigRational {
        &self.rat
    }

    pub fn irr(&self) -> &BigRational {
        &self.irr
    }

    /// Square-free radicand; `1` for rational values.
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.rat)
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.rat.to_f64().unwrap_or(f64::NAN);
        if self.irr.is_zero() {
            r
        } else {
            r + self.irr.to_f64().unwrap_or(f64::NAN) * (self.radicand as f64).sqrt()
        }
    }

    pub fn conj(&self) -> Self {
        Scalar {
            rat: self.rat.clone(),
            irr: -self.irr.clone(),
            radicand: self.radicand,
        }
    }

    /// Field norm `rat² − d·irr²`.
    pub fn norm(&self) -> BigRational {
        let d = BigRational::from_integer(BigInt::from(self.radicand));
        &self.rat * &self.rat - d * &self.irr * &self.irr
    }

    /// Exact sign.
    pub fn signum(&self) -> i32 {
        fn s(x: &BigRational) -> i32 {
            match x.numer().sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            }
        }
        let (sa, sb) = (s(&self.rat), s(&self.irr));
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let d = BigRational::from_integer(BigInt::from(self.radicand));
        let a2 = &self.rat * &self.rat;
        let b2d = &self.irr * &self.irr * d;
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        let n = self.norm();
        Scalar {
            rat: &self.rat / &n,
            irr: -(&self.irr / &n),
            radicand: self.radicand,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact square root inside the same extension, if one exists.
    pub fn sqrt_exact(&self) -> Option<Self> {
        match self.signum() {
            -1 => return None,
            0 => return Some(Scalar::zero()),
            _ => {}
        }
        if self.is_rational() {
            if let Some(r) = rational_sqrt(&self.rat) {
                return Some(Scalar::rational(r));
            }
            // maybe c·√d for a square-free d dividing the value
            let (num, den) = (self.rat.numer().clone(), self.rat.denom().clone());
            let prod = num * &den; // q = prod / den², so √q = √prod / den
            let small = prod.to_u64()?;
            let (s, r) = square_free_split(small);
            let c = BigRational::new(BigInt::from(s), den);
            return Some(Scalar::surd(c, r));
        }
        // (x + y√d)² = a + b√d  =>  x² + d y² = a, 2xy = b
        let disc = rational_sqrt(&self.norm())?;
        let two = BigRational::from_integer(BigInt::from(2));
        for cand in [(&self.rat + &disc) / &two, (&self.rat - &disc) / &two] {
            if cand.is_negative() {
                continue;
            }
            if let Some(x) = rational_sqrt(&cand) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.irr / (&two * &x);
                let root = Scalar::new(x, y, self.radicand);
                if &(&root * &root) == self {
                    return Some(root);
                }
            }
        }
        None
    }

    /// Numeric total order; exact within one extension.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        if self.radicand == other.radicand || self.is_rational() || other.is_rational() {
            (self - other).signum().cmp(&0)
        } else {
            self.to_f64()
                .partial_cmp(&other.to_f64())
                .unwrap_or(Ordering::Equal)
        }
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
            .then_with(|| self.radicand.cmp(&other.radicand))
            .then_with(|| self.irr.cmp(&other.irr))
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::rational(BigRational::one())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::rational(q)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &'a Scalar) -> Scalar {
        let d = merge_radicands(self.radicand, o.radicand);
        Scalar::new(&self.rat + &o.rat, &self.irr + &o.irr, d)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &'a Scalar) -> Scalar {
        let d = merge_radicands(self.radicand, o.radicand);
        Scalar::new(&self.rat - &o.rat, &self.irr - &o.irr, d)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &'a Scalar) -> Scalar {
        let d = merge_radicands(self.radicand, o.radicand);
        let dq = BigRational::from_integer(BigInt::from(d));
        let rat = &self.rat * &o.rat + &self.irr * &o.irr * dq;
        let irr = &self.rat * &o.irr + &self.irr * &o.rat;
        Scalar::new(rat, irr, d)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &'a Scalar) -> Scalar {
        self * &o.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            rat: -self.rat.clone(),
            irr: -self.irr.clone(),
            radicand: self.radicand,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &'a Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

fn fmt_rat(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", fmt_rat(&self.rat));
        }
        let irr = if self.irr.is_one() {
            format!("√{}", self.radicand)
        } else if (-self.irr.clone()).is_one() {
            format!("-√{}", self.radicand)
        } else {
            format!("{}√{}", fmt_rat(&self.irr), self.radicand)
        };
        if self.rat.is_zero() {
            write!(f, "{irr}")
        } else if irr.starts_with('-') {
            write!(f, "{}{}", fmt_rat(&self.rat), irr)
        } else {
            write!(f, "{}+{}", fmt_rat(&self.rat), irr)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses `p`, `p/q`, or a plain decimal such as `-0.75` / `1e-3`.
pub fn parse_rational(s: &str) -> Result<BigRational, ScalarParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ScalarParseError::Empty);
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| ScalarParseError::Invalid(s.into()))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| ScalarParseError::Invalid(s.into()))?;
        if d.is_zero() {
            return Err(ScalarParseError::ZeroDenominator(s.into()));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Ok(n) = BigInt::from_str(s) {
        return Ok(BigRational::from_integer(n));
    }
    parse_decimal(s).ok_or_else(|| ScalarParseError::Invalid(s.into()))
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut n = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    if neg {
        n = -n;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        BigRational::from_integer(n * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(n, num_traits::pow(ten, (-scale) as usize))
    })
}

impl FromStr for Scalar {
    type Err = ScalarParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s).map(Scalar::rational)
    }
}

/// Serialized as `"p/q"` when rational, otherwise
/// `{"rat": "p/q", "irr": "r/s", "d": d}`.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        if self.is_rational() {
            ser.serialize_str(&fmt_rat(&self.rat))
        } else {
            let mut m = ser.serialize_map(Some(3))?;
            m.serialize_entry("rat", &fmt_rat(&self.rat))?;
            m.serialize_entry("irr", &fmt_rat(&self.irr))?;
            m.serialize_entry("d", &self.radicand)?;
            m.end()
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(de)?;
        scalar_from_json(&v).map_err(de::Error::custom)
    }
}

/// Decodes the JSON scalar encoding (string, number, or `{rat, irr, d}` object).
pub fn scalar_from_json(v: &serde_json::Value) -> Result<Scalar, String> {
    use serde_json::Value;
    match v {
        Value::String(s) => s.parse::<Scalar>().map_err(|e| e.to_string()),
        Value::Number(n) => n.to_string().parse::<Scalar>().map_err(|e| e.to_string()),
        Value::Object(o) => {
            for k in o.keys() {
                if !matches!(k.as_str(), "rat" | "irr" | "d") {
                    return Err(format!("unknown key `{k}` in scalar object"));
                }
            }
            let part = |key: &str| -> Result<BigRational, String> {
                match o.get(key) {
                    None => Ok(BigRational::zero()),
                    Some(Value::String(s)) => parse_rational(s).map_err(|e| format!("{key}: {e}")),
                    Some(Value::Number(n)) => {
                        parse_rational(&n.to_string()).map_err(|e| format!("{key}: {e}"))
                    }
                    Some(_) => Err(format!("{key}: expected a rational string")),
                }
            };
            let rat = part("rat")?;
            let irr = part("irr")?;
            let d = match o.get("d") {
                None if irr.is_zero() => 1,
                None => return Err("missing radicand `d`".into()),
                Some(Value::Number(n)) => match n.as_i64() {
                    Some(d) if d > 0 => d as u64,
                    Some(d) => return Err(ScalarParseError::BadRadicand(d).to_string()),
                    None => return Err("radicand `d` must be a positive integer".into()),
                },
                Some(_) => return Err("radicand `d` must be a positive integer".into()),
            };
            Ok(Scalar::new(rat, irr, d))
        }
        _ => Err("expected a rational string or {rat, irr, d} object".into()),
    }
}

/// Best rational approximation with denominator at most `max_den`
/// (continued-fraction convergents).
pub fn rational_approx(x: f64, max_den: u64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let mut v = x;
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let p2 = ai * p1 + p0;
        let q2 = ai * q1 + q0;
        if q2 > max_den as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = v - a;
        if frac.abs() < 1e-300 || ((p1 as f64) / (q1 as f64) - x).abs() <= f64::EPSILON * x.abs() {
            break;
        }
        v = 1.0 / frac;
    }
    if q1 == 0 {
        return None;
    }
    Some(BigRational::new(BigInt::from(p1), BigInt::from(q1)))
}
