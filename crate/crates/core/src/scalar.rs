//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! Everything that stores or compares function values is generic over
//! [`Scalar`]. Floating point (`f32`, `f64`) is the everyday choice; the
//! exact rationals ([`num_rational::BigRational`]) make identities such as
//! `u - v == f` hold bit for bit.

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Ordered field-like scalar.
pub trait Scalar:
    Num + Signed + PartialOrd + Clone + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Converts an `f64` literal. Exact for rationals built from finite floats.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).unwrap_or_else(|| panic!("{x} is not representable"))
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half(&self) -> Self {
        self.clone() / Self::two()
    }

    /// Lossy view used for reporting and for floating point subroutines.
    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn max_of(a: &Self, b: &Self) -> Self {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    fn min_of(a: &Self, b: &Self) -> Self {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }
}

impl<T> Scalar for T where
    T: Num
        + Signed
        + PartialOrd
        + Clone
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Smallest and largest element of a slice (`None` when empty).
pub(crate) fn extent<T: Scalar>(values: &[T]) -> Option<(T, T)> {
    let mut it = values.iter();
    let first = it.next()?;
    let mut lo = first.clone();
    let mut hi = first.clone();
    for v in it {
        if *v < lo {
            lo = v.clone();
        }
        if *v > hi {
            hi = v.clone();
        }
    }
    Some((lo, hi))
}

/// Index of the half-open bin `[lo + j*width, lo + (j+1)*width)` holding `value`;
/// the last bin is closed on the right so that `hi` lands in bin `bins - 1`.
pub(crate) fn bin_index<T: Scalar>(value: &T, lo: &T, width: &T, bins: usize) -> usize {
    debug_assert!(bins >= 1);
    let guess = ((value.clone() - lo.clone()) / width.clone()).approx().floor();
    let mut j = if guess.is_finite() && guess > 0.0 { guess as usize } else { 0 };
    j = j.min(bins - 1);
    // correct the float guess with comparisons carried out in T
    while j > 0 && lo.clone() + T::from_usize(j).unwrap() * width.clone() > *value {
        j -= 1;
    }
    while j + 1 < bins && lo.clone() + T::from_usize(j + 1).unwrap() * width.clone() <= *value {
        j += 1;
    }
    j
}

/// Number of width-`width` bins needed to cover `[lo, hi]` (at least one).
pub(crate) fn bin_count<T: Scalar>(lo: &T, hi: &T, width: &T) -> usize {
    let span = hi.clone() - lo.clone();
    if span <= T::zero() {
        return 1;
    }
    let guess = (span.clone() / width.clone()).approx().ceil();
    let mut b = if guess.is_finite() && guess >= 1.0 { guess as usize } else { 1 };
    while b > 1 && T::from_usize(b - 1).unwrap() * width.clone() >= span {
        b -= 1;
    }
    while T::from_usize(b).unwrap() * width.clone() < span {
        b += 1;
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn bins_cover_closed_range() {
        assert_eq!(bin_count(&0.0, &1.0, &0.2), 5);
        assert_eq!(bin_count(&0.0, &1.0, &0.25), 4);
        assert_eq!(bin_count(&0.0, &1.0, &0.3), 4);
        assert_eq!(bin_count(&0.0, &0.0, &0.3), 1);
        assert_eq!(bin_index(&1.0, &0.0, &0.25, 4), 3);
        assert_eq!(bin_index(&0.25, &0.0, &0.25, 4), 1);
        assert_eq!(bin_index(&0.0, &0.0, &0.25, 4), 0);
    }

    #[test]
    fn rational_bins_are_exact() {
        let third = BigRational::new(1.into(), 3.into());
        let lo = BigRational::lit(0.0);
        let hi = BigRational::lit(1.0);
        assert_eq!(bin_count(&lo, &hi, &third), 3);
        assert_eq!(bin_index(&third, &lo, &third, 3), 1);
        assert_eq!(bin_index(&hi, &lo, &third, 3), 2);
    }
}
