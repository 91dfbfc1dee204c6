// `!(a <= b)` is used on purpose so that NaN counts as failing a bound.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dd;
pub mod error;
pub mod expansion;
pub mod lsq;
pub mod oracle;
pub mod quad;
pub mod real;
pub mod special;
pub mod symbolic;

pub use error::{Error, Result};
