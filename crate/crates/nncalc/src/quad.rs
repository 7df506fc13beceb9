//! Trapezoid-rule networks and the exp-of-integral composite.
//!
//! Both quadrature networks are single affine layers, so their realizations
//! are exact weighted sums of the supplied node values. Sampling integrands
//! at the mesh nodes is the caller's job: the networks consume node values,
//! never function handles.

use crate::approx::{xpn, PowerFamily, QEps};
use crate::error::{Error, Result};
use crate::network::{Matrix, Network};
use crate::ops::{affine, compose};

/// Uniform 1-D mesh on `[a, b]` with `n` panels and `n + 1` nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshSpec {
    a: f64,
    b: f64,
    panels: usize,
}

impl MeshSpec {
    pub fn new(a: f64, b: f64, panels: usize) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::NonFinite("mesh endpoints"));
        }
        if b < a {
            return Err(Error::invalid(format!("mesh needs b >= a (got [{a}, {b}])")));
        }
        if panels == 0 {
            return Err(Error::invalid("mesh needs at least one panel"));
        }
        Ok(Self { a, b, panels })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    pub fn h(&self) -> f64 {
        (self.b - self.a) / self.panels as f64
    }

    /// The `n + 1` nodes `a + i * h`. Strictly increasing when `b > a`, and
    /// the last node lands on `b` up to rounding.
    pub fn nodes(&self) -> Vec<f64> {
        let h = self.h();
        (0..=self.panels).map(|i| self.a + i as f64 * h).collect()
    }

    /// Samples a function at the mesh nodes.
    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        self.nodes().into_iter().map(f).collect()
    }
}

/// Single-panel trapezoid network: `(x1, x2) -> h/2 * (x1 + x2)`.
pub fn trp(h: f64) -> Result<Network> {
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::invalid(format!("trp requires h > 0 (got {h})")));
    }
    affine(Matrix::from_rows(&[&[h / 2.0, h / 2.0]])?, vec![0.0])
}

/// Composite trapezoid network on `n + 1` node values: the affine row
/// `[h/2, h, ..., h, h/2]`.
pub fn etr(panels: usize, h: f64) -> Result<Network> {
    if panels == 0 {
        return Err(Error::invalid("etr requires at least one panel"));
    }
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::invalid(format!("etr requires h > 0 (got {h})")));
    }
    let width = panels + 1;
    let w = Matrix::from_fn(1, width, |_, c| {
        if c == 0 || c == width - 1 {
            h / 2.0
        } else {
            h
        }
    });
    affine(w, vec![0.0])
}

/// Exp-of-integral network: the order-`n` exp approximant composed with the
/// composite trapezoid rule. Consumes the `n + 1` sampled integrand values
/// and approximates `exp(integral of f over [a, b])`.
pub fn e_net(order: usize, mesh: &MeshSpec, qe: &QEps) -> Result<Network> {
    compose(&xpn(order, qe)?, &etr(mesh.panels(), mesh.h())?)
}

/// Combined error bound for the exp-of-integral network.
///
/// `trap_value` is the realized trapezoid sum of the samples and
/// `trap_remainder` an upper bound on `(b-a)^3 / (12 N^2) * sup|f''|`. The
/// bound stacks the quadrature error pushed through the truncated series,
/// the series-vs-network error at the trapezoid value, and the Taylor
/// remainder of `exp` (the integral is assumed nonnegative).
pub fn e_net_error_bound(
    order: usize,
    qe: &QEps,
    trap_value: f64,
    trap_remainder: f64,
) -> Result<f64> {
    if order == 0 {
        // the order-0 network is the constant 1; only the remainder is left
        let upper = trap_value + trap_remainder;
        return Ok(crate::approx::exp_taylor_remainder(upper.max(0.0), 0));
    }
    let family = PowerFamily::new(order, *qe)?;
    let n = order as f64;
    let upper = (trap_value + trap_remainder).max(0.0);
    let quad_term = trap_remainder * n * n * upper.powi(order as i32 - 1);
    let series_term = family.exp_series_bound(order, trap_value);
    let taylor_term = crate::approx::exp_taylor_remainder(upper, order);
    Ok(quad_term + series_term + taylor_term)
}
