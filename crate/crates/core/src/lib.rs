// NaN must fail these guards, hence `!(x > 0.0)` over `x <= 0.0`.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop, clippy::too_many_arguments)]

pub mod catalog;
pub mod cli;
pub mod derivation;
pub mod error;
pub mod field;
pub mod geometry;
pub mod verify;

pub use error::{Error, Result};
