//! Exact arithmetic in the Gaussian rationals Q(i).
//!
//! Both real and imaginary parts are reduced fractions. Parts whose numerator
//! and denominator fit in an `i64` are kept inline; anything larger moves to
//! `BigInt` transparently, so arithmetic never rounds and never overflows.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
enum Repr {
    /// `num / den` with `den > 0` and `gcd(num, den) = 1`.
    Small(i64, i64),
    /// Same invariants; only used when the value does not fit `Small`.
    Big(Box<(BigInt, BigInt)>),
}

/// A reduced rational number.
#[derive(Clone, Debug)]
pub struct Rational(Repr);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd_u128(a.unsigned_abs() as u128, b.unsigned_abs() as u128) as i64
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(Repr::Small(n, 1))
    }

    /// `num / den`, reduced. Errors when `den = 0`.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_i128(num as i128, den as i128))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_big(num, den))
    }

    fn from_i128(mut num: i128, mut den: i128) -> Self {
        debug_assert!(den != 0);
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = gcd_u128(num.unsigned_abs(), den as u128) as i128;
        if g > 1 {
            num /= g;
            den /= g;
        }
        Self::fit_reduced(num, den)
    }

    /// Caller guarantees `den > 0` and lowest terms.
    fn fit_reduced(num: i128, den: i128) -> Self {
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(Box::new((BigInt::from(num), BigInt::from(den))))),
        }
    }

    fn normalize_big(mut num: BigInt, mut den: BigInt) -> Self {
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        match (num.to_i64(), den.to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(Box::new((num, den)))),
        }
    }

    fn to_big(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (b.0.clone(), b.1.clone()),
        }
    }

    pub fn numer(&self) -> BigInt {
        self.to_big().0
    }

    pub fn denom(&self) -> BigInt {
        self.to_big().1
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.1.is_one(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.0.is_negative(),
        }
    }

    /// The value as an `i64` when it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    pub fn add_ref(&self, other: &Rational) -> Rational {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            let (a, b, c, d) = (*a, *b, *c, *d);
            if b == 1 && d == 1 {
                if let Some(s) = a.checked_add(c) {
                    return Rational(Repr::Small(s, 1));
                }
                return Self::fit_reduced(a as i128 + c as i128, 1);
            }
            if b == d {
                return Self::from_i128(a as i128 + c as i128, b as i128);
            }
            let num = a as i128 * d as i128 + c as i128 * b as i128;
            let den = b as i128 * d as i128;
            return Self::from_i128(num, den);
        }
        let (a, b) = self.to_big();
        let (c, d) = other.to_big();
        Self::normalize_big(a * &d + c * &b, b * d)
    }

    pub fn neg_ref(&self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational(Repr::Small(m, *d)),
                None => Self::fit_reduced(-(*n as i128), *d as i128),
            },
            Repr::Big(b) => Self::normalize_big(-b.0.clone(), b.1.clone()),
        }
    }

    pub fn sub_ref(&self, other: &Rational) -> Rational {
        if let (Repr::Small(a, 1), Repr::Small(c, 1)) = (&self.0, &other.0) {
            if let Some(s) = a.checked_sub(*c) {
                return Rational(Repr::Small(s, 1));
            }
        }
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Rational) -> Rational {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            let (a, b, c, d) = (*a, *b, *c, *d);
            if a == 0 || c == 0 {
                return Rational::zero();
            }
            if b == 1 && d == 1 {
                if let Some(p) = a.checked_mul(c) {
                    return Rational(Repr::Small(p, 1));
                }
                return Self::fit_reduced(a as i128 * c as i128, 1);
            }
            let g1 = gcd_i64(a, d);
            let g2 = gcd_i64(c, b);
            let num = (a / g1) as i128 * (c / g2) as i128;
            let den = (b / g2) as i128 * (d / g1) as i128;
            return Self::fit_reduced(num, den);
        }
        let (a, b) = self.to_big();
        let (c, d) = other.to_big();
        Self::normalize_big(a * c, b * d)
    }

    pub fn inv(&self) -> Result<Rational> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Repr::Big(b) => Self::normalize_big(b.1.clone(), b.0.clone()),
        })
    }

    pub fn div_ref(&self, other: &Rational) -> Result<Rational> {
        Ok(self.mul_ref(&other.inv()?))
    }

    /// Residue modulo a prime `p`; `None` when `p` divides the denominator.
    pub fn to_mod(&self, p: u64) -> Option<u64> {
        let (n, d) = match &self.0 {
            Repr::Small(n, d) => {
                let pm = p as i128;
                ((*n as i128).rem_euclid(pm) as u64, (*d as i128).rem_euclid(pm) as u64)
            }
            Repr::Big(b) => {
                let pb = BigInt::from(p);
                (
                    b.0.mod_floor(&pb).to_u64().unwrap_or(0),
                    b.1.mod_floor(&pb).to_u64().unwrap_or(0),
                )
            }
        };
        if d == 0 {
            return None;
        }
        Some(crate::field::modular::mul_mod(n, crate::field::modular::inv_mod(d, p), p))
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.0.hash(state);
                b.1.hash(state);
            }
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.1.is_one() => write!(f, "{}", b.0),
            Repr::Big(b) => write!(f, "{}/{}", b.0, b.1),
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p` or `p/q` with `q > 0` and the fraction in lowest terms.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("bad rational {s:?}: {why}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let is_int = |t: &str| {
            let digits = t.strip_prefix('-').unwrap_or(t);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !is_int(num) {
            return Err(bad("numerator is not an integer"));
        }
        let n: BigInt = num.parse().map_err(|_| bad("numerator"))?;
        let d: BigInt = match den {
            None => BigInt::one(),
            Some(d) => {
                if d.starts_with('-') || !is_int(d) {
                    return Err(bad("denominator must be a positive integer"));
                }
                d.parse().map_err(|_| bad("denominator"))?
            }
        };
        if d.is_zero() {
            return Err(bad("zero denominator"));
        }
        if !n.gcd(&d).is_one() {
            return Err(bad("fraction is not reduced"));
        }
        Ok(Self::normalize_big(n, d))
    }
}

/// An element `re + im * i` of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: Rational,
    im: Rational,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { re: Rational::zero(), im: Rational::zero() }
    }

    pub fn one() -> Self {
        Scalar { re: Rational::one(), im: Rational::zero() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar { re: Rational::zero(), im: Rational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { re: Rational::from_int(n), im: Rational::zero() }
    }

    pub fn from_rational(re: Rational) -> Self {
        Scalar { re, im: Rational::zero() }
    }

    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    /// `num / den` as a real scalar.
    pub fn frac(num: i64, den: i64) -> Result<Self> {
        Ok(Scalar::from_rational(Rational::new(num, den)?))
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Scalar::one(),
            1 => Scalar::i(),
            2 => Scalar::from_int(-1),
            _ => -Scalar::i(),
        }
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Scalar {
        Scalar { re: self.re.clone(), im: self.im.neg_ref() }
    }

    pub fn add_ref(&self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::from_rational(self.re.add_ref(&o.re));
        }
        Scalar { re: self.re.add_ref(&o.re), im: self.im.add_ref(&o.im) }
    }

    pub fn sub_ref(&self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::from_rational(self.re.sub_ref(&o.re));
        }
        Scalar { re: self.re.sub_ref(&o.re), im: self.im.sub_ref(&o.im) }
    }

    pub fn mul_ref(&self, o: &Scalar) -> Scalar {
        match (self.im.is_zero(), o.im.is_zero()) {
            (true, true) => Scalar::from_rational(self.re.mul_ref(&o.re)),
            (true, false) => Scalar { re: self.re.mul_ref(&o.re), im: self.re.mul_ref(&o.im) },
            (false, true) => Scalar { re: self.re.mul_ref(&o.re), im: self.im.mul_ref(&o.re) },
            (false, false) => Scalar {
                re: self.re.mul_ref(&o.re).sub_ref(&self.im.mul_ref(&o.im)),
                im: self.re.mul_ref(&o.im).add_ref(&self.im.mul_ref(&o.re)),
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.im.is_zero() {
            return Ok(Scalar::from_rational(self.re.inv()?));
        }
        let norm = self.re.mul_ref(&self.re).add_ref(&self.im.mul_ref(&self.im));
        let inv = norm.inv()?;
        Ok(Scalar { re: self.re.mul_ref(&inv), im: self.im.neg_ref().mul_ref(&inv) })
    }

    pub fn div_ref(&self, o: &Scalar) -> Result<Scalar> {
        Ok(self.mul_ref(&o.inv()?))
    }

    /// Image under `Z[i]_(p) -> F_p` sending `i` to `sqrt_m1`. `None` when
    /// `p` divides a denominator, or the scalar is not real and `p` has no
    /// square root of -1 (`sqrt_m1 = None`).
    pub fn to_mod(&self, p: u64, sqrt_m1: Option<u64>) -> Option<u64> {
        let re = self.re.to_mod(p)?;
        if self.im.is_zero() {
            return Some(re);
        }
        let im = self.im.to_mod(p)?;
        let r = sqrt_m1?;
        Some((re + crate::field::modular::mul_mod(im, r, p)) % p)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im = if self.im.is_one() {
            "i".to_string()
        } else if self.im.neg_ref().is_one() {
            "-i".to_string()
        } else {
            format!("{}i", self.im)
        };
        if self.re.is_zero() {
            write!(f, "{im}")
        } else if self.im.is_negative() {
            write!(f, "{}{}", self.re, im)
        } else {
            write!(f, "{}+{}", self.re, im)
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        self.add_ref(&o)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.add_ref(o)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        self.sub_ref(&o)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.sub_ref(o)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        self.mul_ref(&o)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.mul_ref(o)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: self.re.neg_ref(), im: self.im.neg_ref() }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: self.re.neg_ref(), im: self.im.neg_ref() }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = self.add_ref(o);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = self.sub_ref(o);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::frac(n, d).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(q(1, 2).mul_ref(&Scalar::i()), Scalar::new(Rational::zero(), Rational::new(1, 2).unwrap()));
        assert_eq!(Scalar::i().mul_ref(&Scalar::i()), Scalar::from_int(-1));
        assert_eq!(q(3, 4).div_ref(&q(3, 4)).unwrap(), Scalar::one());
        assert!(matches!(Scalar::one().div_ref(&Scalar::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn promotes_past_i64() {
        let big = Scalar::from_int(i64::MAX);
        let sq = big.mul_ref(&big);
        let back = sq.div_ref(&big).unwrap();
        assert_eq!(back, big);
        let tiny = q(1, i64::MAX).mul_ref(&q(1, i64::MAX));
        assert_eq!(tiny.mul_ref(&sq), Scalar::one());
        assert_eq!(Scalar::from_int(i64::MIN).neg_ref_check(), "9223372036854775808");
    }

    impl Scalar {
        fn neg_ref_check(&self) -> String {
            (-self).to_string()
        }
    }

    #[test]
    fn parse_rejects_unreduced() {
        assert!("2/4".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert_eq!("-3/4".parse::<Rational>().unwrap(), Rational::new(-3, 4).unwrap());
        assert_eq!("7".parse::<Rational>().unwrap().to_string(), "7");
    }

    #[test]
    fn gaussian_inverse() {
        let z = Scalar::new(Rational::from_int(3), Rational::from_int(-4));
        let w = z.inv().unwrap();
        assert_eq!(z.mul_ref(&w), Scalar::one());
        assert_eq!(w.to_string(), "3/25+4/25i");
    }
}
