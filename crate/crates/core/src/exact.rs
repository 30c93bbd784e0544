//! Exact scalars: arbitrary-precision rationals, binomial coefficients and
//! Bernoulli numbers.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number, always in lowest terms with a positive
/// denominator.
///
/// The textual form is `num/den`, or just `num` when the denominator is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational> {
        Rational::one().checked_div(self)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, exp: i32) -> Result<Rational> {
        if exp < 0 && self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(num_traits::Pow::pow(&self.0, exp)))
    }

    /// The integer value, if this rational is an integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `n` or `n/d`; the result is normalized.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let numer = BigInt::from_str(n).map_err(|_| bad())?;
        let denom = match d {
            Some(d) => BigInt::from_str(d).map_err(|_| bad())?,
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(bad());
        }
        Rational::new(numer, denom)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! from_int {
    ($($t:ty),*) => {
        $(impl From<$t> for Rational {
            fn from(n: $t) -> Self {
                Rational::from_integer(n)
            }
        })*
    };
}
from_int!(i32, i64, u32, u64, usize, BigInt);

macro_rules! binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0 $op &rhs.0)
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(&self.0 $op rhs.0)
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
    };
}
binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

// Division through the operator panics on a zero divisor, like the integer
// types; use `checked_div` where the divisor is not known to be nonzero.
impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self.checked_div(rhs).expect("rational division by zero")
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl Div<&Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        &self / rhs
    }
}

impl Div<Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        self / &rhs
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl SubAssign<Rational> for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        self.0 -= rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::one()
    }
}

/// Compare two rationals; provided alongside the `Ord` impl for symmetry
/// with the other named operations.
pub fn cmp(a: &Rational, b: &Rational) -> Ordering {
    a.cmp(b)
}

/// Binomial coefficient C(n, k) for `n >= 0`; zero when k < 0 or k > n.
pub fn binomial(n: i64, k: i64) -> BigInt {
    assert!(n >= 0, "binomial requires n >= 0, got {n}");
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Generalized binomial e(e-1)...(e-k+1)/k! for a rational upper argument.
pub fn generalized_binomial(e: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * (e - Rational::from(i)) / Rational::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Bernoulli numbers with the convention B_1 = -1/2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Result<&Rational> {
        self.values.get(n).ok_or(Error::TableTooSmall {
            kind: "bernoulli",
            have: self.max_index(),
            need: n,
        })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// B_0..=B_{n_max} from the convolution recurrence
/// sum_{j=0}^{n} C(n+1, j) B_j = 0 for n >= 1.
pub fn bernoulli_table(n_max: usize) -> BernoulliTable {
    let mut values = Vec::with_capacity(n_max + 1);
    values.push(Rational::one());
    for n in 1..=n_max {
        if n > 1 && n % 2 == 1 {
            values.push(Rational::zero());
            continue;
        }
        let s: Rational = values
            .iter()
            .enumerate()
            .map(|(j, b)| b * Rational::from(binomial(n as i64 + 1, j as i64)))
            .sum();
        values.push(-s / Rational::from(n + 1));
    }
    BernoulliTable { values }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(r("1/12") + r("5/6"), r("11/12"));
        assert_eq!(r("25/36") * r("1/2"), r("25/72"));
        assert_eq!(Rational::one().checked_div(&Rational::zero()), Err(Error::DivisionByZero));
        assert_eq!(-r("3/4"), r("-3/4"));
        assert_eq!(cmp(&r("1/3"), &r("1/2")), Ordering::Less);
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(r("6/4").to_string(), "3/2");
        assert_eq!(r("4/2").to_string(), "2");
        assert_eq!(r("3/-6").to_string(), "-1/2");
        assert_eq!(r("0/7").to_string(), "0");
        assert!(r("7").is_integer());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn serde_uses_string_form() {
        let v = serde_json::to_string(&r("-25/72")).unwrap();
        assert_eq!(v, "\"-25/72\"");
        let back: Rational = serde_json::from_str(&v).unwrap();
        assert_eq!(back, r("-25/72"));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(5, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(3, -1), BigInt::from(0));
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn generalized_binomial_half() {
        let half = r("1/2");
        assert_eq!(generalized_binomial(&half, 0), r("1"));
        assert_eq!(generalized_binomial(&half, 1), r("1/2"));
        assert_eq!(generalized_binomial(&half, 2), r("-1/8"));
        assert_eq!(generalized_binomial(&r("-1"), 3), r("-1"));
    }

    #[test]
    fn bernoulli_examples() {
        let b = bernoulli_table(12);
        assert_eq!(b.get(0).unwrap(), &r("1"));
        assert_eq!(b.get(1).unwrap(), &r("-1/2"));
        assert_eq!(b.get(2).unwrap(), &r("1/6"));
        assert_eq!(b.get(3).unwrap(), &r("0"));
        assert_eq!(b.get(4).unwrap(), &r("-1/30"));
        assert_eq!(b.get(12).unwrap(), &r("-691/2730"));
        assert!(b.get(13).is_err());
    }

    #[test]
    fn bernoulli_matches_generating_function() {
        // x/(e^x - 1) * (e^x - 1)/x = 1, with (e^x - 1)/x = sum x^n/(n+1)!.
        let n = 30;
        let b = bernoulli_table(n);
        for m in 1..=n {
            let s: Rational = (0..=m)
                .map(|a| {
                    b.get(a).unwrap() / &Rational::from(factorial(a as u64))
                        / Rational::from(factorial((m - a + 1) as u64))
                })
                .sum();
            assert!(s.is_zero(), "m = {m}");
        }
    }

    #[test]
    fn bernoulli_convolution_invariant() {
        let b = bernoulli_table(40);
        for n in 1..=40i64 {
            let s: Rational = (0..=n)
                .map(|j| b.get(j as usize).unwrap() * Rational::from(binomial(n + 1, j)))
                .sum();
            assert!(s.is_zero());
        }
    }
}
