//! Exact scalars: rationals and elements of a single quadratic extension.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Commutative field operations shared by every exact coefficient type.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: Rational) -> Self;
    fn inv(&self) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|o| self.clone() * o)
    }

    fn scale(&self, r: &Rational) -> Self {
        self.clone() * Self::from_rational(r.clone())
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// `a + b·√d` for a fixed nonsquare rational `d`.
///
/// Pure rationals carry no discriminant and combine with anything; two
/// values tagged with different discriminants must never meet, and doing so
/// panics.
#[derive(Clone, Debug)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
    pub d: Option<Rational>,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Self {
        QuadExt { a, b, d: Some(d) }
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt {
            a,
            b: Zero::zero(),
            d: None,
        }
    }

    /// The generator `√d`.
    pub fn sqrt(d: Rational) -> Self {
        QuadExt::new(Zero::zero(), One::one(), d)
    }

    /// `i` in `ℚ(i)`.
    pub fn i() -> Self {
        QuadExt::sqrt(rat(-1))
    }

    pub fn gaussian(re: Rational, im: Rational) -> Self {
        QuadExt::new(re, im, rat(-1))
    }

    fn join(x: &Option<Rational>, y: &Option<Rational>) -> Option<Rational> {
        match (x, y) {
            (Some(p), Some(q)) => {
                assert!(
                    p == q,
                    "quadratic extensions with different discriminants mixed"
                );
                Some(p.clone())
            }
            (Some(p), None) | (None, Some(p)) => Some(p.clone()),
            (None, None) => None,
        }
    }

    pub fn conj(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> Rational {
        match &self.d {
            Some(d) => &self.a * &self.a - d * &self.b * &self.b,
            None => &self.a * &self.a,
        }
    }

    pub fn is_rational(&self) -> bool {
        Zero::is_zero(&self.b)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    /// Real and imaginary parts when the extension is `ℚ(i)`.
    pub fn re(&self) -> &Rational {
        &self.a
    }

    pub fn im(&self) -> &Rational {
        &self.b
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        if self.a != other.a || self.b != other.b {
            return false;
        }
        Zero::is_zero(&self.b) || self.d == other.d
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.d, Zero::is_zero(&self.b)) {
            (Some(d), false) => write!(
                f,
                "{}{}{}*sqrt({})",
                fmt_rational(&self.a),
                if self.b.is_negative() { "" } else { "+" },
                fmt_rational(&self.b),
                fmt_rational(d)
            ),
            _ => write!(f, "{}", fmt_rational(&self.a)),
        }
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, o: QuadExt) -> QuadExt {
        let d = QuadExt::join(&self.d, &o.d);
        QuadExt {
            a: self.a + o.a,
            b: self.b + o.b,
            d,
        }
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, o: QuadExt) -> QuadExt {
        self + (-o)
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, o: QuadExt) -> QuadExt {
        let d = QuadExt::join(&self.d, &o.d);
        let bb = &self.b * &o.b;
        let a = match &d {
            Some(d) => &self.a * &o.a + d * bb,
            None => &self.a * &o.a,
        };
        let b = &self.a * &o.b + &self.b * &o.a;
        QuadExt { a, b, d }
    }
}

impl Scalar for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(Zero::zero())
    }
    fn one() -> Self {
        QuadExt::rational(One::one())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn from_rational(r: Rational) -> Self {
        QuadExt::rational(r)
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        let c = self.conj();
        Some(QuadExt {
            a: c.a / &n,
            b: c.b / &n,
            d: c.d,
        })
    }
}

/// `n!!` with `0!! = (−1)!! = 1`.
pub fn double_factorial(n: i64) -> BigInt {
    assert!(n >= -1, "double factorial of {n}");
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_arithmetic() {
        let i = QuadExt::i();
        assert_eq!(i.clone() * i.clone(), QuadExt::from_int(-1));
        let z = QuadExt::gaussian(rat(3), rat(4));
        assert_eq!(z.norm(), rat(25));
        assert_eq!(z.clone() * z.inv().unwrap(), QuadExt::one());
    }

    #[test]
    #[should_panic(expected = "different discriminants")]
    fn mixing_discriminants_panics() {
        let _ = QuadExt::sqrt(rat(2)) + QuadExt::sqrt(rat(3));
    }

    #[test]
    fn display_forms() {
        assert_eq!(fmt_rational(&frac(-3, 6)), "-1/2");
        assert_eq!(
            QuadExt::new(rat(1), frac(-1, 2), rat(-3)).to_string(),
            "1-1/2*sqrt(-3)"
        );
        assert_eq!(QuadExt::new(rat(2), rat(0), rat(5)).to_string(), "2");
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(-1), BigInt::one());
        assert_eq!(double_factorial(0), BigInt::one());
        assert_eq!(double_factorial(9), BigInt::from(945));
        assert_eq!(double_factorial(8), BigInt::from(384));
    }
}
