//! A calculus for building feedforward ReLU networks as explicit weight
//! matrices.
//!
//! Networks here are nothing but finite lists of dense `(weight, bias)`
//! layers; nothing is trained. The crate provides:
//!
//! - [`network`]: the network representation, its six measurement functions
//!   (`param`, `dep`, `inn`, `out`, `hid`, `lay`/`wid`), and instantiation
//!   with an activation into an evaluatable function.
//! - [`ops`]: the operator calculus — composition, block-diagonal stacking
//!   (equal and tunnel-padded), pointwise sums, scalar action, and the affine
//!   building blocks (copy, sum, identity, tunnel networks).
//! - [`approx`]: approximation networks built from the calculus — squaring on
//!   `[0,1]` and on all of `R`, products, powers, polynomials, and Taylor
//!   approximants for `exp`, `cos`, `sin` — together with evaluators for
//!   their error bounds.
//! - [`quad`]: trapezoid-rule networks and the exp-of-integral composite.
//! - [`interp`]: 1-norm and maximum networks, and the max-convolution
//!   interpolant of Lipschitz data with its convergence bound.
//! - [`verify`]: the verification harness. Every advertised structural
//!   identity (parameter counts, depths, widths) and every error bound is
//!   checked against independent oracles; results are serializable reports.
//!
//! All constructors are pure and all constructed values are immutable, so
//! everything is safe to share across threads.

#![forbid(unsafe_code)]

pub mod approx;
pub mod error;
pub mod interp;
pub mod network;
pub mod ops;
pub mod quad;
pub mod verify;

pub use error::{Error, Result};
pub use network::{Activation, Layer, Matrix, Network, Realization};
