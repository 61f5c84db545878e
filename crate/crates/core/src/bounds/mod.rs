//! Bounds on cover-free families.
//!
//! Upper bounds on the number of blocks `T` are exact big integers.
//! Everything real-valued (lower bounds on `N`, rates, existence thresholds)
//! is generic over the scalar [`Real`], so the same evaluators run in `f32`
//! or `f64`. All logarithms are base 2.

mod brute;
mod drr;
mod exact;
mod lower;
mod rates;
mod threshold;

pub use brute::{min_n_bruteforce, MinN, MAX_BLOCKS, MAX_POINTS};
pub use drr::{
    binary_entropy, drr_rate, dyachkov_threshold, rate_asymptotic, RateVariant, DRR_GRID,
};
pub use exact::{binomial, bound_2d_t, gbound_exponent, gbound_t, sperner_t, uniform_t, Bound2d};
pub use lower::{
    bound_report, lower_bounds_n, Applicability, BoundEntry, BoundQuery, BoundReport, BoundValue,
    Direction, DEFAULT_C,
};
pub use rates::{rate_compare, RateComparison};
pub use threshold::{existence_threshold_n, ExistenceThreshold};

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Scalar type for the real-valued evaluators.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }
}

impl<F> Real for F where
    F: Float + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}
