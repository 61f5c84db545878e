//! Cover-free families: construction, verification, bounds, and group testing.
//!
//! A `(w,r;d)`-CFF is a family of `T` blocks on `N` points such that for any
//! `w` blocks `B` and `r` other blocks `A`, more than `d` points lie in every
//! block of `B` and in no block of `A`. Families are stored as `T x N`
//! [`IncidenceMatrix`] values, one row per block.
//!
//! ```
//! use cff::{construct, is_cff};
//!
//! let c = construct::sperner_cff(4).unwrap();
//! assert_eq!(c.matrix.num_blocks(), 6);
//! assert!(is_cff(&c.matrix, &c.params).unwrap().passed());
//! ```

pub mod bounds;
pub mod code;
pub mod construct;
mod error;
pub mod field;
pub mod format;
pub mod grouptest;
mod matrix;
mod params;
pub mod verify;

pub use code::{code_to_set_system, Code};
pub use construct::Construction;
pub use error::{Error, Result};
pub use field::FiniteField;
pub use format::{parse_matrix, write_matrix, Claim};
pub use matrix::IncidenceMatrix;
pub use params::CffParams;
pub use verify::{
    certify, is_cff, is_cff_sampled, is_disjunct, max_r, Certificate, Verdict, Violation,
};

pub type BoundReport64 = bounds::BoundReport<f64>;
pub type BoundReport32 = bounds::BoundReport<f32>;
pub type ExistenceThreshold64 = bounds::ExistenceThreshold<f64>;
pub type ExistenceThreshold32 = bounds::ExistenceThreshold<f32>;
pub type RateComparison64 = bounds::RateComparison<f64>;
pub type RateComparison32 = bounds::RateComparison<f32>;
