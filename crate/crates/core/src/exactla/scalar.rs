use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::LaError;

/// Exact rational number.
///
/// Values whose reduced numerator and denominator fit in `i64` live in the
/// `Small` variant; everything else falls back to an arbitrary precision
/// `BigRational`. The representation is canonical, so structural equality
/// is numeric equality.
#[derive(Clone)]
pub enum ExactScalar {
    Small(i64, i64),
    Big(Box<BigRational>),
}

#[inline]
fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[inline]
fn gcd_i64(a: i64, b: i64) -> i64 {
    let g = gcd_u128(a.unsigned_abs() as u128, b.unsigned_abs() as u128);
    g as i64
}

impl ExactScalar {
    pub const ZERO: ExactScalar = ExactScalar::Small(0, 1);
    pub const ONE: ExactScalar = ExactScalar::Small(1, 1);

    pub fn zero() -> Self {
        Self::ZERO
    }

    pub fn one() -> Self {
        Self::ONE
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar::Small(n, 1)
    }

    /// Builds `num/den`. Panics if `den` is zero.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(n))
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let (mut num, mut den) = (num, den);
        if den < 0 {
            num = -num;
            den = -den;
        }
        if num == 0 {
            return Self::ZERO;
        }
        let g = gcd_u128(num.unsigned_abs(), den as u128) as i128;
        if g > 1 {
            num /= g;
            den /= g;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) if n != i64::MIN => ExactScalar::Small(n, d),
            _ => ExactScalar::Big(Box::new(BigRational::new_raw(
                BigInt::from(num),
                BigInt::from(den),
            ))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational arithmetic keeps values reduced with positive denominators.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return ExactScalar::Small(n, d);
            }
        }
        ExactScalar::Big(Box::new(r))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            ExactScalar::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            ExactScalar::Big(b) => (**b).clone(),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, ExactScalar::Small(0, _))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self, ExactScalar::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            ExactScalar::Small(_, d) => *d == 1,
            ExactScalar::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            ExactScalar::Small(n, _) => n.signum() as i32,
            ExactScalar::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            ExactScalar::Small(n, _) => BigInt::from(*n),
            ExactScalar::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            ExactScalar::Small(_, d) => BigInt::from(*d),
            ExactScalar::Big(b) => b.denom().clone(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        match self {
            ExactScalar::Small(0, _) => panic!("reciprocal of zero"),
            ExactScalar::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            ExactScalar::Big(b) => Self::from_big(b.recip()),
        }
    }

    pub fn checked_recip(&self) -> Result<Self, LaError> {
        if self.is_zero() {
            Err(LaError::Singular)
        } else {
            Ok(self.recip())
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactScalar::Small(n, d) => *n as f64 / *d as f64,
            ExactScalar::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Rough size measure used for pivot selection.
    pub fn height(&self) -> u64 {
        match self {
            ExactScalar::Small(n, d) => n.unsigned_abs().max(*d as u64),
            ExactScalar::Big(_) => u64::MAX,
        }
    }

    /// Serialized form, always `p/q`.
    pub fn to_pq(&self) -> String {
        match self {
            ExactScalar::Small(n, d) => format!("{n}/{d}"),
            ExactScalar::Big(b) => format!("{}/{}", b.numer(), b.denom()),
        }
    }

    /// `self - a * b`, the update used by elimination.
    #[inline]
    pub fn sub_mul(&self, a: &Self, b: &Self) -> Self {
        if let (ExactScalar::Small(n0, d0), ExactScalar::Small(n1, d1), ExactScalar::Small(n2, d2)) =
            (self, a, b)
        {
            if *d0 == 1 && *d1 == 1 && *d2 == 1 {
                let v = *n0 as i128 - (*n1 as i128) * (*n2 as i128);
                if let Ok(v) = i64::try_from(v) {
                    if v != i64::MIN {
                        return ExactScalar::Small(v, 1);
                    }
                }
            }
        }
        self - &(a * b)
    }
}

impl Default for ExactScalar {
    fn default() -> Self {
        Self::ZERO
    }
}

impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ExactScalar::Small(a, b), ExactScalar::Small(c, d)) => a == c && b == d,
            (ExactScalar::Big(a), ExactScalar::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for ExactScalar {}

impl Hash for ExactScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            ExactScalar::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            ExactScalar::Big(b) => {
                1u8.hash(state);
                b.numer().hash(state);
                b.denom().hash(state);
            }
        }
    }
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExactScalar::Small(a, b), ExactScalar::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
}

impl From<i32> for ExactScalar {
    fn from(n: i32) -> Self {
        ExactScalar::from_int(n as i64)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(r: BigRational) -> Self {
        ExactScalar::from_big(r)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Small(n, 1) => write!(f, "{n}"),
            ExactScalar::Small(n, d) => write!(f, "{n}/{d}"),
            ExactScalar::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactScalar {
    type Err = LaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || LaError::Parse(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Self::from_big(BigRational::new(n, d)))
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_pq())
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn add_ref(a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
    match (a, b) {
        (ExactScalar::Small(0, _), _) => b.clone(),
        (_, ExactScalar::Small(0, _)) => a.clone(),
        (ExactScalar::Small(n1, d1), ExactScalar::Small(n2, d2)) => {
            if d1 == d2 {
                ExactScalar::from_i128(*n1 as i128 + *n2 as i128, *d1 as i128)
            } else {
                let g = gcd_i64(*d1, *d2) as i128;
                let (d1, d2) = (*d1 as i128, *d2 as i128);
                let num = *n1 as i128 * (d2 / g) + *n2 as i128 * (d1 / g);
                let den = (d1 / g).checked_mul(d2);
                match den {
                    Some(den) => ExactScalar::from_i128(num, den),
                    None => ExactScalar::from_big(a.to_big() + b.to_big()),
                }
            }
        }
        _ => ExactScalar::from_big(a.to_big() + b.to_big()),
    }
}

fn neg_ref(a: &ExactScalar) -> ExactScalar {
    match a {
        ExactScalar::Small(n, d) => ExactScalar::from_i128(-(*n as i128), *d as i128),
        ExactScalar::Big(b) => ExactScalar::from_big(-(**b).clone()),
    }
}

fn sub_ref(a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
    match (a, b) {
        (_, ExactScalar::Small(0, _)) => a.clone(),
        (ExactScalar::Small(_, _), ExactScalar::Small(n2, d2)) => {
            add_ref(a, &ExactScalar::Small(-*n2, *d2))
        }
        _ => ExactScalar::from_big(a.to_big() - b.to_big()),
    }
}

fn mul_ref(a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
    match (a, b) {
        (ExactScalar::Small(0, _), _) | (_, ExactScalar::Small(0, _)) => ExactScalar::ZERO,
        (ExactScalar::Small(1, 1), _) => b.clone(),
        (_, ExactScalar::Small(1, 1)) => a.clone(),
        (ExactScalar::Small(n1, d1), ExactScalar::Small(n2, d2)) => {
            let g1 = gcd_i64(*n1, *d2);
            let g2 = gcd_i64(*n2, *d1);
            let num = (*n1 / g1) as i128 * (*n2 / g2) as i128;
            let den = (*d1 / g2) as i128 * (*d2 / g1) as i128;
            ExactScalar::from_i128(num, den)
        }
        _ => ExactScalar::from_big(a.to_big() * b.to_big()),
    }
}

fn div_ref(a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
    mul_ref(a, &b.recip())
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            #[inline]
            fn $m(self, rhs: &ExactScalar) -> ExactScalar {
                $f(self, rhs)
            }
        }
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            #[inline]
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                $f(&self, &rhs)
            }
        }
        impl $tr<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            #[inline]
            fn $m(self, rhs: &ExactScalar) -> ExactScalar {
                $f(&self, rhs)
            }
        }
        impl $tr<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            #[inline]
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                $f(self, &rhs)
            }
        }
    };
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);
binop!(Div, div, div_ref);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        neg_ref(&self)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        neg_ref(self)
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        *self = add_ref(self, rhs);
    }
}

impl AddAssign for ExactScalar {
    fn add_assign(&mut self, rhs: ExactScalar) {
        *self = add_ref(self, &rhs);
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        *self = sub_ref(self, rhs);
    }
}

impl SubAssign for ExactScalar {
    fn sub_assign(&mut self, rhs: ExactScalar) {
        *self = sub_ref(self, &rhs);
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = mul_ref(self, rhs);
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        Self::ZERO
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        Self::ONE
    }
}

impl Sum for ExactScalar {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

impl<'a> Sum<&'a ExactScalar> for ExactScalar {
    fn sum<I: Iterator<Item = &'a ExactScalar>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

impl Product for ExactScalar {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ONE, |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::new(n, d)
    }

    #[test]
    fn arithmetic_small() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        assert_eq!(q(1, 2) - q(1, 2), ExactScalar::zero());
        assert_eq!(q(2, 3) * q(3, 4), q(1, 2));
        assert_eq!(q(2, 3) / q(4, 9), q(3, 2));
        assert_eq!(q(-4, -6), q(2, 3));
        assert_eq!(q(3, -6).to_pq(), "-1/2");
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = ExactScalar::from_int(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq, ExactScalar::Big(_)));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back, ExactScalar::Small(_, _)));
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0/1", "-7/3", "5/1", "123456789012345678901234567891/2"] {
            let x: ExactScalar = s.parse().unwrap();
            assert_eq!(x.to_pq(), s);
        }
        assert_eq!("4/6".parse::<ExactScalar>().unwrap(), q(2, 3));
        assert!("1/0".parse::<ExactScalar>().is_err());
        assert!("abc".parse::<ExactScalar>().is_err());
    }

    #[test]
    fn ordering() {
        assert!(q(1, 3) < q(1, 2));
        assert!(q(-1, 2) < ExactScalar::zero());
    }
}
