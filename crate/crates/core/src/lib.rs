// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod error;
pub mod model;
pub mod ode;
pub mod specfun;
pub mod spectrum;
pub mod verify;
pub mod wavefunction;
pub mod wkb;

pub use error::{Error, Result};
