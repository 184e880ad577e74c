//! Exact complex scalars with unbounded rational real and imaginary parts.
//!
//! `ComplexRational` is the coefficient field for every polynomial object in
//! this crate. Values are kept in reduced canonical form by `BigRational`, so
//! structural equality is value equality and zero-tests are exact.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::AlgebraError;

/// Exact rational scalar, re-exported for callers that need real values.
pub type Rational = BigRational;

/// Parses a decimal-free rational string: `"p"`, `"-p"`, or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let s = s.trim();
    let make_err = || AlgebraError::RationalParse(s.to_string());
    match s.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| make_err())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| make_err())?;
            if den.is_zero() {
                return Err(make_err());
            }
            Ok(BigRational::new(num, den))
        }
        None => {
            let num = BigInt::from_str(s).map_err(|_| make_err())?;
            Ok(BigRational::from_integer(num))
        }
    }
}

/// Formats a rational as `"p"` or `"p/q"` (reduced, positive denominator).
pub fn rational_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact complex number with rational real and imaginary parts.
///
/// Both parts are stored reduced, so `==` is structural and canonical at the
/// same time. Conjugation, inversion and the ring operations never leave the
/// Gaussian-rational field.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComplexRational {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(Rational::from_integer(BigInt::from(n)), Rational::zero())
    }

    /// `p/q` as a real scalar.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::new(
            Rational::new(BigInt::from(p), BigInt::from(q)),
            Rational::zero(),
        )
    }

    /// `(p + q i)/d`.
    pub fn gaussian(p: i64, q: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self::new(
            Rational::new(BigInt::from(p), BigInt::from(d)),
            Rational::new(BigInt::from(q), BigInt::from(d)),
        )
    }

    pub fn from_real(re: Rational) -> Self {
        Self::new(re, Rational::zero())
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

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `x · conj(x)` as an exact rational (always non-negative).
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Exact square root when both parts of the radicand cooperate: returns
    /// `Some(r)` with `r ≥ 0`, `r² = self`, only for non-negative real
    /// rationals with perfect-square numerator and denominator.
    pub fn sqrt_exact(&self) -> Option<Rational> {
        if !self.im.is_zero() || self.re.is_negative() {
            return None;
        }
        let num = self.re.numer().sqrt();
        let den = self.re.denom().sqrt();
        if &num * &num == *self.re.numer() && &den * &den == *self.re.denom() {
            Some(Rational::new(num, den))
        } else {
            None
        }
    }
}

impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", rational_string(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}i", rational_string(&self.im));
        }
        if self.im.is_negative() {
            write!(
                f,
                "{}-{}i",
                rational_string(&self.re),
                rational_string(&-self.im.clone())
            )
        } else {
            write!(
                f,
                "{}+{}i",
                rational_string(&self.re),
                rational_string(&self.im)
            )
        }
    }
}

impl fmt::Debug for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &ComplexRational {
    type Output = ComplexRational;
    fn add(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &ComplexRational {
    type Output = ComplexRational;
    fn sub(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &ComplexRational {
    type Output = ComplexRational;
    fn mul(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &ComplexRational {
    type Output = ComplexRational;
    #[allow(clippy::suspicious_arithmetic_impl)] // division is multiplication by the inverse
    fn div(self, rhs: &ComplexRational) -> ComplexRational {
        let inv = rhs.inv().expect("division by zero");
        self * &inv
    }
}

impl Neg for &ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ComplexRational {
            type Output = ComplexRational;
            fn $method(self, rhs: ComplexRational) -> ComplexRational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ComplexRational> for ComplexRational {
            type Output = ComplexRational;
            fn $method(self, rhs: &ComplexRational) -> ComplexRational {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        -&self
    }
}

impl AddAssign<&ComplexRational> for ComplexRational {
    fn add_assign(&mut self, rhs: &ComplexRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&ComplexRational> for ComplexRational {
    fn sub_assign(&mut self, rhs: &ComplexRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&ComplexRational> for ComplexRational {
    fn mul_assign(&mut self, rhs: &ComplexRational) {
        *self = &*self * rhs;
    }
}
