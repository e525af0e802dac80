//! Coefficient fields.
//!
//! The polynomial and Gröbner layers are written against [`Field`], which is
//! blanket-implemented for every `num-traits` numeric type whose references
//! also support arithmetic. In practice the toolkit runs over [`Rational`]
//! (arbitrary precision); `Ratio<i64>`/`Ratio<i128>` work for small inputs.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, RefNum, Signed};

/// Arbitrary-precision rational numbers, always in lowest terms.
pub type Rational = BigRational;

/// A commutative field usable as polynomial coefficients.
pub trait Field: Num + Clone + Debug + Display + Neg<Output = Self> + Send + Sync + 'static {
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn div_ref(&self, other: &Self) -> Self;
    fn from_int(n: i64) -> Self;

    fn neg_ref(&self) -> Self {
        -self.clone()
    }

    fn inv(&self) -> Self {
        Self::one().div_ref(self)
    }

    /// Parses an integer literal (`"12"`) or a fraction literal (`"3/4"`).
    fn parse_literal(text: &str) -> Option<Self> {
        // `Ratio` only accepts "a/b", plain numeric types only accept "a"
        let integer = |s: &str| {
            Self::from_str_radix(s, 10)
                .ok()
                .or_else(|| Self::from_str_radix(&format!("{s}/1"), 10).ok())
        };
        match text.split_once('/') {
            None => integer(text),
            Some((n, d)) => {
                let (n, d) = (integer(n.trim())?, integer(d.trim())?);
                (!d.is_zero()).then(|| n.div_ref(&d))
            }
        }
    }

    /// Whether the printed form needs a leading minus sign.
    fn is_negative_hint(&self) -> bool {
        self.to_string().starts_with('-')
    }
}

impl<T> Field for T
where
    T: Num + Clone + Debug + Display + Neg<Output = T> + FromPrimitive + Send + Sync + 'static,
    for<'a> &'a T: RefNum<T>,
{
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }
    fn from_int(n: i64) -> Self {
        T::from_i64(n).expect("every field contains the integers")
    }
}

/// Shorthand for an integral rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`; panics when `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"a"` or `"a/b"` (optionally signed) into a rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let r = Rational::parse_literal(text)?;
    if r.denom().is_negative() {
        return None;
    }
    Some(r)
}
