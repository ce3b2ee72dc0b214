//! q-gamma, q-digamma and q-series primitives with tracked truncation error.
//!
//! Every evaluation takes a [`QContext`] carrying the base `q`, the target
//! truncation error and a hard cap on series length, and returns an
//! [`Approx`] pairing the value with a bound on its absolute error.
//!
//! The crate is `no_std` and needs only `alloc`.
#![no_std]

extern crate alloc;

mod approx;
mod context;
mod error;
mod sum;

pub mod catalog;
pub mod identities;
pub mod qcore;
pub mod qgamma;
pub mod roots;

pub use approx::Approx;
pub use context::{QContext, Q_MAX, Q_MIN};
pub use error::{Error, Result};
