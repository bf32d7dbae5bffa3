//! Reproducing kernels, Paley–Wiener and Mellin isometries for weighted
//! Hardy–Bergman spaces on the right half-plane, with zero-set analytics and
//! numerical counterexamples.
#![allow(non_snake_case)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod kernels;
pub mod measures;
pub mod pathology;
pub mod quadrature;
pub mod special;
pub mod spectral;
pub mod zerosets;

mod linexp;

pub use error::{Error, Result};
