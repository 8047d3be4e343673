//! Numerical laboratory for attention scaling temperatures.
//!
//! The crate provides length-aware temperature rules for softmax attention
//! (an entropy-matching scale on the dot-product path and a fixed scale for
//! the cosine path), positional mechanisms to compare them under (rotary,
//! interpolated, rectified-window, and linear-bias variants), an entropy
//! approximation chain with a Monte Carlo ground truth, and independent
//! numerical checks of the closed-form results those rules rest on.

// `!(x > 0.0)` style guards must also reject NaN, which `x <= 0.0` lets through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod attention;
pub mod entropy;
pub mod error;
pub mod numerics;
pub mod positional;
pub mod sweeps;
pub mod theory;

pub use error::{Error, Result};
