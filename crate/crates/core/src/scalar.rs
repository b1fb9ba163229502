//! Exact scalar types used as chain values.
//!
//! Every algebraic routine in this crate is generic over [`Scalar`]. The
//! trait is implemented for `num_rational::Ratio<T>` with any signed integer
//! backing type that converts from `i64`, which covers `Rational64`,
//! `Ratio<i128>` and `BigRational`. Floating point types are deliberately not
//! scalars: equalities such as `¬x = 0` must be decided exactly.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive};

/// An exact ordered field element.
pub trait Scalar: Clone + Ord + Hash + Debug + Display + FromStr + Num + Signed + Send + Sync + 'static {
    /// `numer / denom`. Panics on a zero denominator.
    fn from_frac(numer: i64, denom: i64) -> Self;

    /// If `self * steps` is an integer in `0..=steps`, that integer.
    fn grid_index(&self, steps: usize) -> Option<usize>;

    /// Numerator and denominator in lowest terms, if they fit in `i64`.
    fn to_frac(&self) -> Option<(i64, i64)>;

    fn from_int(n: i64) -> Self {
        Self::from_frac(n, 1)
    }

    /// The `i`-th point of the uniform grid `{0, 1/steps, ..., 1}`.
    fn grid_point(i: usize, steps: usize) -> Self {
        Self::from_frac(i as i64, steps as i64)
    }

    fn midpoint(a: &Self, b: &Self) -> Self {
        (a.clone() + b.clone()) / Self::from_int(2)
    }

    /// Parse `p/q` or an integer, ignoring surrounding whitespace.
    fn parse_exact(text: &str) -> Option<Self> {
        let text = text.trim();
        if text.is_empty() {
            return None;
        }
        let ok = text.chars().all(|c| c.is_ascii_digit() || c == '/' || c == '-' || c == '+');
        if !ok || text.matches('/').count() > 1 {
            return None;
        }
        if let Some((n, d)) = text.split_once('/') {
            if d.trim().starts_with('-') || d.trim().starts_with('+') {
                return None;
            }
            let n = Self::from_str(n.trim()).ok()?;
            let d = Self::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(n / d)
        } else {
            Self::from_str(text).ok()
        }
    }

    fn is_unit_interval(&self) -> bool {
        !self.is_negative() && *self <= Self::one()
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Clone + Integer + Signed + Hash + Debug + Display + FromStr + ToPrimitive + From<i64> + Send + Sync + 'static,
{
    fn from_frac(numer: i64, denom: i64) -> Self {
        Ratio::new(T::from(numer), T::from(denom))
    }

    fn grid_index(&self, steps: usize) -> Option<usize> {
        let scaled = self.clone() * Ratio::from_integer(T::from(steps as i64));
        if !scaled.is_integer() {
            return None;
        }
        let i = scaled.to_integer().to_i64()?;
        if i < 0 || i as usize > steps {
            return None;
        }
        Some(i as usize)
    }

    fn to_frac(&self) -> Option<(i64, i64)> {
        Some((self.numer().to_i64()?, self.denom().to_i64()?))
    }
}

pub(crate) fn min_of<S: Scalar>(a: &S, b: &S) -> S {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub(crate) fn max_of<S: Scalar>(a: &S, b: &S) -> S {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Rational64};

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(Rational64::parse_exact("3/4"), Some(Rational64::new(3, 4)));
        assert_eq!(Rational64::parse_exact(" 1 "), Some(Rational64::from_int(1)));
        assert_eq!(Rational64::parse_exact("6/8"), Some(Rational64::new(3, 4)));
        assert_eq!(Rational64::parse_exact("1/0"), None);
        assert_eq!(Rational64::parse_exact("0.5"), None);
        assert_eq!(Rational64::parse_exact("x"), None);
        assert_eq!(BigRational::parse_exact("12/15").unwrap().to_string(), "4/5");
    }

    #[test]
    fn grid_index_requires_exact_membership() {
        let x = Rational64::new(1, 2);
        assert_eq!(x.grid_index(4), Some(2));
        assert_eq!(x.grid_index(3), None);
        assert_eq!(Rational64::from_int(2).grid_index(4), None);
        assert_eq!(Rational64::new(-1, 4).grid_index(4), None);
    }

    #[test]
    fn display_is_p_over_q() {
        assert_eq!(BigRational::from_frac(2, 6).to_string(), "1/3");
        assert_eq!(BigRational::from_frac(4, 4).to_string(), "1");
    }
}
