//! Scalar abstraction shared by the scoring, detection and lemma code.
//!
//! Every quantity in the permanence family of metrics is a ratio of small
//! integer counts, so the same code runs over `f32`, `f64` and arbitrary
//! precision rationals. The rational instantiation is what the lemma
//! laboratory and the brute-force oracles use when they need exact answers.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};

/// A numeric type every metric in this crate can be evaluated in.
pub trait Scalar:
    Num + Signed + Clone + Debug + PartialOrd + ToPrimitive + Send + Sync + 'static
{
    /// `num / den` in this scalar type. `den` must be non-zero.
    fn ratio(num: i64, den: i64) -> Self;

    fn from_count(n: usize) -> Self {
        Self::ratio(n as i64, 1)
    }

    /// Lossy conversion for reporting.
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Whether arithmetic in this type is exact.
    fn is_exact() -> bool {
        false
    }
}

impl Scalar for f64 {
    #[inline]
    fn ratio(num: i64, den: i64) -> Self {
        debug_assert!(den != 0);
        num as f64 / den as f64
    }
}

impl Scalar for f32 {
    #[inline]
    fn ratio(num: i64, den: i64) -> Self {
        debug_assert!(den != 0);
        (num as f64 / den as f64) as f32
    }
}

impl Scalar for BigRational {
    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64_lossy(&self) -> f64 {
        // BigRational::to_f64 handles large numerators/denominators.
        self.to_f64().unwrap_or_else(|| {
            let n = self.numer().to_f64().unwrap_or(f64::NAN);
            let d = self.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        })
    }

    fn is_exact() -> bool {
        true
    }
}

/// Arithmetic mean of a sequence of scalars; `None` when empty.
pub fn mean<S: Scalar>(values: impl IntoIterator<Item = S>) -> Option<S> {
    let mut total = S::zero();
    let mut count = 0usize;
    for v in values {
        total = total + v;
        count += 1;
    }
    (count > 0).then(|| total / S::from_count(count))
}
