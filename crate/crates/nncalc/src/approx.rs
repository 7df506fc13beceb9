//! Approximation networks: squaring on `[0,1]` and on `R`, products,
//! powers, polynomials, and Taylor approximants for `exp`, `cos`, `sin`.
//!
//! The squaring network on `[0,1]` refines a piecewise-linear interpolant of
//! `x^2` at dyadic nodes; one extra level halves the node spacing and divides
//! the sup error by four. Products come from the polarization identity
//! `xy = ((x+y)^2 - x^2 - y^2) / 2`, powers from repeated products with a
//! tunnel carrying the argument, and everything downstream is a coefficient
//! sum of powers.
//!
//! Each constructor takes a pair `(q, eps)` with `q > 2`: `eps` controls the
//! error near the origin and `q` the polynomial growth of the error bound
//! away from it.

use crate::error::{Error, Result};
use crate::network::{Activation, Matrix, Network};
use crate::ops::{affine, compose, cpy, net_sum, scalar_left, stack, tunnel};

/// Accuracy parameters: `q > 2` strictly, `eps > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QEps {
    q: f64,
    eps: f64,
}

impl QEps {
    pub fn new(q: f64, eps: f64) -> Result<Self> {
        if !q.is_finite() || q <= 2.0 {
            return Err(Error::invalid(format!("q must exceed 2 (got {q})")));
        }
        if !eps.is_finite() || eps <= 0.0 {
            return Err(Error::invalid(format!("eps must be positive (got {eps})")));
        }
        Ok(Self { q, eps })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Accuracy passed to the squaring networks inside a product network.
    pub(crate) fn prd_delta(&self) -> f64 {
        self.eps / ((2f64).powf(self.q - 1.0) + 1.0)
    }

    /// Accuracy required of the `[0,1]` squaring core inside `sqr`.
    pub(crate) fn sqr_delta(&self) -> f64 {
        (2f64).powf(-2.0 / (self.q - 2.0)) * self.eps.powf(self.q / (self.q - 2.0))
    }

    /// Input scale used by `sqr` to reduce squaring on `R` to `[0,1]`.
    pub(crate) fn sqr_alpha(&self) -> f64 {
        (self.eps / 2.0).powf(1.0 / (self.q - 2.0))
    }
}

/// Activation network on `R^d`: realizes componentwise ReLU,
/// `lay = (d, d, d)`, `param = 2d^2 + 2d`.
pub fn act_net(d: usize) -> Result<Network> {
    if d == 0 {
        return Err(Error::invalid("act_net requires d >= 1"));
    }
    let layer = || {
        crate::network::Layer::new(Matrix::identity(d), vec![0.0; d])
            .expect("identity layer is valid")
    };
    Network::new(vec![layer(), layer()])
}

fn level_coeff(k: usize) -> f64 {
    // 2^(1 - 2k), exact in binary
    (2f64).powi(1 - 2 * k as i32)
}

fn refine_matrix(c: f64) -> Matrix {
    Matrix::from_rows(&[
        &[2.0, -4.0, 2.0, 0.0],
        &[2.0, -4.0, 2.0, 0.0],
        &[2.0, -4.0, 2.0, 0.0],
        &[-c, 2.0 * c, -c, 1.0],
    ])
    .unwrap()
}

fn readout_matrix(c: f64) -> Matrix {
    Matrix::from_rows(&[&[-c, 2.0 * c, -c, 1.0]]).unwrap()
}

fn lift_bias() -> Vec<f64> {
    vec![0.0, -0.5, -1.0, 0.0]
}

/// Squaring network at refinement level `k >= 1`.
///
/// On `[0,1]` it realizes the piecewise-linear interpolant of `x^2` at the
/// nodes `j / 2^k`, so the sup error is exactly `2^(-2k-2)`, attained at the
/// dyadic midpoints. Outside `[0,1]` it realizes `relu(x)` exactly.
/// `lay = (1, 4, ..., 4, 1)` with `k+2` entries and `param = 20k - 7`.
pub fn phi_k(k: usize) -> Result<Network> {
    if k == 0 {
        return Err(Error::invalid("phi_k requires k >= 1"));
    }
    let ones = Matrix::from_rows(&[&[1.0], &[1.0], &[1.0], &[1.0]]).unwrap();
    let mut net = affine(ones, lift_bias())?;
    for j in 1..k {
        let step = compose(&affine(refine_matrix(level_coeff(j)), lift_bias())?, &act_net(4)?)?;
        net = compose(&step, &net)?;
    }
    let readout = compose(&affine(readout_matrix(level_coeff(k)), vec![0.0])?, &act_net(4)?)?;
    compose(&readout, &net)
}

/// Refinement level needed for sup error `<= eps` on `[0,1]`, clamped to 1.
///
/// Level `m` guarantees `2^(-2m-2)`; for `eps >= 2^-4` the clamp applies and
/// the guarantee is `2^-4`.
pub fn phi_level(eps: f64) -> Result<usize> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::invalid(format!(
            "accuracy must be positive and finite (got {eps})"
        )));
    }
    let m = (0.5 * eps.recip().log2() - 1.0).ceil();
    Ok(if m < 1.0 { 1 } else { m as usize })
}

/// Squaring network on `[0,1]` with auto-chosen refinement level for the
/// requested accuracy.
pub fn phi(eps: f64) -> Result<Network> {
    phi_k(phi_level(eps)?)
}

/// Squaring network on all of `R`: `|x^2 - R(sqr)(x)| <= eps * max(1, |x|^q)`.
///
/// Two rescaled copies of the `[0,1]` core, one per sign, are summed; the
/// realization is nonnegative, even, and exactly zero at zero.
pub fn sqr(qe: &QEps) -> Result<Network> {
    let delta = qe.sqr_delta();
    if delta <= 0.0 {
        return Err(Error::invalid(
            "sqr internal accuracy underflowed; eps too small for this q",
        ));
    }
    let alpha = qe.sqr_alpha();
    let core = phi(delta)?;
    let scale_in = |s: f64| affine(Matrix::new(1, 1, vec![s]).unwrap(), vec![0.0]);
    let out_gain = alpha.powi(-2);
    let pos = compose(&scale_in(out_gain)?, &compose(&core, &scale_in(alpha)?)?)?;
    let neg = compose(&scale_in(out_gain)?, &compose(&core, &scale_in(-alpha)?)?)?;
    net_sum(&[pos, neg])
}

/// Product network on `R^2`: `|xy - R(prd)(x, y)| <= eps * max(1, |x|^q, |y|^q)`.
///
/// Polarization of three squaring networks; both axes are annihilated
/// exactly: `R(prd)(x, 0) = R(prd)(0, y) = 0`.
pub fn prd(qe: &QEps) -> Result<Network> {
    let psi = sqr(&QEps::new(qe.q, qe.prd_delta())?)?;
    let pair = |a: f64, b: f64| affine(Matrix::from_rows(&[&[a, b]]).unwrap(), vec![0.0]);
    let branch = |scale: f64, a: f64, b: f64| -> Result<Network> {
        scalar_left(scale, &compose(&psi, &pair(a, b)?)?)
    };
    net_sum(&[
        branch(0.5, 1.0, 1.0)?,
        branch(-0.5, 1.0, 0.0)?,
        branch(-0.5, 0.0, 1.0)?,
    ])
}

fn pwr_zero() -> Network {
    affine(Matrix::new(1, 1, vec![0.0]).unwrap(), vec![1.0]).expect("constant one network")
}

fn pwr_step(product: &Network, prev: &Network) -> Result<Network> {
    // tunnel carries the argument, prev carries the running power
    let carried = stack(&[tunnel(prev.dep())?, prev.clone()])?;
    compose(&compose(product, &carried)?, &cpy(2, 1)?)
}

/// Power network approximating `x^n`. `pwr(0, _)` is the constant 1.
pub fn pwr(n: usize, qe: &QEps) -> Result<Network> {
    if n == 0 {
        return Ok(pwr_zero());
    }
    let product = prd(qe)?;
    let mut net = pwr_zero();
    for _ in 1..=n {
        net = pwr_step(&product, &net)?;
    }
    Ok(net)
}

/// Coefficient sum of power networks: realizes approximately
/// `sum_i coeff_i * x^(power_i)`.
///
/// Every summand is padded with a tunnel to the depth of the deepest power,
/// scaled, and the padded summands are added pointwise.
fn poly_in_powers(terms: &[(usize, f64)], qe: &QEps) -> Result<Network> {
    if terms.is_empty() {
        return Err(Error::invalid("polynomial needs at least one term"));
    }
    if terms.iter().any(|(_, c)| !c.is_finite()) {
        return Err(Error::NonFinite("polynomial coefficients"));
    }
    let max_pow = terms.iter().map(|t| t.0).max().unwrap();
    let family = PowerFamily::new(max_pow, *qe)?;
    let max_dep = terms.iter().map(|t| family.net(t.0).dep()).max().unwrap();
    let mut summands = Vec::with_capacity(terms.len());
    for &(i, c) in terms {
        let base = family.net(i);
        let padded = compose(&tunnel(max_dep + 1 - base.dep())?, base)?;
        debug_assert_eq!(padded.dep(), max_dep);
        summands.push(scalar_left(c, &padded)?);
    }
    net_sum(&summands)
}

/// Polynomial network for coefficients `c_0, ..., c_n` (constant term first).
pub fn pnm(coeffs: &[f64], qe: &QEps) -> Result<Network> {
    if coeffs.is_empty() {
        return Err(Error::invalid("pnm requires at least one coefficient"));
    }
    let terms: Vec<(usize, f64)> = coeffs.iter().copied().enumerate().collect();
    poly_in_powers(&terms, qe)
}

fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, v| acc * v as f64)
}

/// Taylor network for `exp` of order `n`: coefficients `1/i!`.
pub fn xpn(n: usize, qe: &QEps) -> Result<Network> {
    let terms: Vec<(usize, f64)> = (0..=n).map(|i| (i, 1.0 / factorial(i))).collect();
    poly_in_powers(&terms, qe)
}

/// Taylor network for `cos` of order `n`: even powers `x^(2i)` with
/// coefficients `(-1)^i / (2i)!`.
pub fn csn(n: usize, qe: &QEps) -> Result<Network> {
    let terms: Vec<(usize, f64)> = (0..=n)
        .map(|i| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            (2 * i, sign / factorial(2 * i))
        })
        .collect();
    poly_in_powers(&terms, qe)
}

/// Taylor network for `sin`: the cosine network precomposed with the shift
/// `x -> x - pi/2`.
pub fn sne(n: usize, qe: &QEps) -> Result<Network> {
    let shift = affine(
        Matrix::new(1, 1, vec![1.0])?,
        vec![-std::f64::consts::FRAC_PI_2],
    )?;
    compose(&csn(n, qe)?, &shift)
}

/// Majorant recursion bounding the realized power networks:
/// `p_1 = eps + 2 + 2x^2`, `p_i = eps + 2 p_{i-1}^2 + 2x^2`.
/// Requires `i >= 1`.
pub fn p_bound(i: usize, x: f64, eps: f64) -> f64 {
    assert!(i >= 1, "p_bound is defined for i >= 1");
    let mut p = eps + 2.0 + 2.0 * x * x;
    for _ in 2..=i {
        p = eps + 2.0 * p * p + 2.0 * x * x;
    }
    p
}

/// `p_bound` extended downward: the order-0 power network is the constant 1,
/// so its majorant is 1.
fn p_majorant(i: usize, x: f64, eps: f64) -> f64 {
    if i == 0 {
        1.0
    } else {
        p_bound(i, x, eps)
    }
}

/// The power networks `pwr(0..=max_n)` built once, with evaluators for the
/// recursive error bound that references the realized lower-order networks.
pub struct PowerFamily {
    qe: QEps,
    nets: Vec<Network>,
}

impl PowerFamily {
    pub fn new(max_n: usize, qe: QEps) -> Result<Self> {
        let mut nets = Vec::with_capacity(max_n + 1);
        nets.push(pwr_zero());
        if max_n >= 1 {
            let product = prd(&qe)?;
            for n in 1..=max_n {
                let next = pwr_step(&product, &nets[n - 1])?;
                nets.push(next);
            }
        }
        Ok(Self { qe, nets })
    }

    pub fn qe(&self) -> &QEps {
        &self.qe
    }

    pub fn max_n(&self) -> usize {
        self.nets.len() - 1
    }

    pub fn net(&self, n: usize) -> &Network {
        &self.nets[n]
    }

    pub fn into_net(mut self, n: usize) -> Network {
        self.nets.swap_remove(n)
    }

    /// ReLU realization of `pwr(n)` at `x`.
    pub fn realized(&self, n: usize, x: f64) -> f64 {
        self.nets[n]
            .realize(Activation::ReLU)
            .eval1(x)
            .expect("power networks map R to R")
    }

    /// Upper bound on `|x^n - R(pwr(n))(x)|`: zero at order 0, then one
    /// product-error term on top of the realized previous order,
    /// `|x| |x^(n-1) - R(pwr(n-1))(x)| + eps (1 + |x|^q + p_{n-1}^q)`.
    pub fn power_error_bound(&self, n: usize, x: f64) -> f64 {
        if n == 0 {
            return 0.0;
        }
        let prev_err = (x.powi((n - 1) as i32) - self.realized(n - 1, x)).abs();
        let q = self.qe.q();
        let eps = self.qe.eps();
        let majorant = p_majorant(n - 1, x, eps).powf(q);
        (x * prev_err).abs() + eps * (1.0 + x.abs().powf(q) + majorant)
    }

    /// Bound for a coefficient sum of powers: constant terms are exact, so
    /// only `power >= 1` terms contribute `|c| * power_error_bound`.
    pub fn terms_error_bound(&self, terms: &[(usize, f64)], x: f64) -> f64 {
        terms
            .iter()
            .filter(|(i, _)| *i >= 1)
            .map(|&(i, c)| c.abs() * self.power_error_bound(i, x))
            .sum()
    }

    /// Bound for the polynomial with coefficients `c_0, ..., c_n`.
    pub fn poly_error_bound(&self, coeffs: &[f64], x: f64) -> f64 {
        let terms: Vec<(usize, f64)> = coeffs.iter().copied().enumerate().collect();
        self.terms_error_bound(&terms, x)
    }

    /// Bound for the order-`n` exp approximant vs its truncated Taylor sum.
    pub fn exp_series_bound(&self, n: usize, x: f64) -> f64 {
        let terms: Vec<(usize, f64)> = (0..=n).map(|i| (i, 1.0 / factorial(i))).collect();
        self.terms_error_bound(&terms, x)
    }

    /// Bound for the order-`n` cos approximant vs its truncated Taylor sum.
    pub fn cos_series_bound(&self, n: usize, x: f64) -> f64 {
        let terms: Vec<(usize, f64)> = (0..=n).map(|i| (2 * i, 1.0 / factorial(2 * i))).collect();
        self.terms_error_bound(&terms, x)
    }
}

/// Lagrange remainder of the order-`n` Taylor sum for `exp` on `[0, b]`.
pub fn exp_taylor_remainder(b: f64, n: usize) -> f64 {
    b.exp() * b.powi(n as i32 + 1) / factorial(n + 1)
}

/// Remainder surrogate for the truncated `cos`/`sin` series on arguments of
/// magnitude at most `b`. Valid whenever `b^(n+1)/(n+1)!` dominates the true
/// `b^(2n+1)/(2n+1)!` remainder, which holds for the moderate `b` used here.
pub fn cos_taylor_remainder(b: f64, n: usize) -> f64 {
    b.powi(n as i32 + 1) / factorial(n + 1)
}

/// Truncated Taylor sum of `exp` at order `n`.
pub fn exp_taylor_sum(x: f64, n: usize) -> f64 {
    (0..=n).map(|i| x.powi(i as i32) / factorial(i)).sum()
}

/// Truncated Taylor sum of `cos` at order `n` (even powers up to `2n`).
pub fn cos_taylor_sum(x: f64, n: usize) -> f64 {
    (0..=n)
        .map(|i| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            sign * x.powi(2 * i as i32) / factorial(2 * i)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Activation::ReLU;

    fn relu(x: f64) -> f64 {
        x.max(0.0)
    }

    /// Piecewise-linear interpolant of x^2 at nodes j/2^k, written from the
    /// sawtooth sum so it shares nothing with the network construction.
    fn interpolant_oracle(k: usize, x: f64) -> f64 {
        let mut sum = 0.0;
        let mut g = x.clamp(0.0, 1.0);
        // g starts as g_0(x) = x on [0,1]; iterate the tent map
        for j in 1..=k {
            g = if g < 0.5 { 2.0 * g } else { 2.0 - 2.0 * g };
            sum += (2f64).powi(-2 * j as i32) * g;
        }
        x - sum
    }

    #[test]
    fn act_net_structure_and_realization() {
        let a4 = act_net(4).unwrap();
        assert_eq!(a4.param(), 40);
        assert_eq!(a4.lay(), vec![4, 4, 4]);
        let a1 = act_net(1).unwrap();
        for x in [-2.0, -0.5, 0.0, 1.5] {
            assert_eq!(a1.realize(ReLU).eval1(x).unwrap(), relu(x));
        }
    }

    #[test]
    fn phi_k_structure() {
        assert_eq!(phi_k(1).unwrap().param(), 13);
        assert_eq!(phi_k(3).unwrap().param(), 53);
        for k in 1..=8 {
            let net = phi_k(k).unwrap();
            assert_eq!(net.param(), 20 * k - 7);
            assert_eq!(net.dep(), k + 1);
            let mut expect = vec![1];
            expect.extend(std::iter::repeat_n(4, k));
            expect.push(1);
            assert_eq!(net.lay(), expect);
        }
        assert!(phi_k(0).is_err());
    }

    #[test]
    fn phi_k_exact_at_dyadic_nodes_and_midpoints() {
        let net = phi_k(1).unwrap();
        let r = net.realize(ReLU);
        assert_eq!(r.eval1(0.5).unwrap(), 0.25);
        let at_quarter = r.eval1(0.25).unwrap();
        assert_eq!(at_quarter, 0.125);
        assert_eq!((0.25f64 * 0.25 - at_quarter).abs(), (2f64).powi(-4));
    }

    /// Equivalent oracle written segment by segment: on the dyadic cell
    /// [n/2^k, (n+1)/2^k) the interpolant of x^2 is the chord
    /// ((2n+1)/2^k) x - (n^2+n)/2^(2k).
    fn chord_oracle(k: usize, x: f64) -> f64 {
        if x >= 1.0 {
            return 1.0;
        }
        let cells = (1u64 << k) as f64;
        let n = (x * cells).floor();
        (2.0 * n + 1.0) / cells * x - (n * n + n) / (cells * cells)
    }

    #[test]
    fn phi_k_matches_interpolant_oracle() {
        for k in 1..=6 {
            let net = phi_k(k).unwrap();
            let r = net.realize(ReLU);
            for i in 0..=256 {
                let x = i as f64 / 256.0;
                let got = r.eval1(x).unwrap();
                assert!(
                    (got - interpolant_oracle(k, x)).abs() <= 1e-12,
                    "k={k} x={x}"
                );
                assert!((got - chord_oracle(k, x)).abs() <= 1e-12, "k={k} x={x}");
            }
        }
    }

    #[test]
    fn phi_k_is_relu_outside_unit_interval() {
        for k in 1..=8 {
            let net = phi_k(k).unwrap();
            let r = net.realize(ReLU);
            for x in [-10.0, -1.0, 1.0, 2.0, 10.0] {
                assert!((r.eval1(x).unwrap() - relu(x)).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn phi_level_selection() {
        assert_eq!(phi_level((2f64).powi(-4)).unwrap(), 1);
        assert_eq!(phi_level((2f64).powi(-10)).unwrap(), 4);
        assert_eq!(phi_level(0.25).unwrap(), 1);
        assert_eq!(phi_level(10.0).unwrap(), 1);
        assert_eq!(phi(
            (2f64).powi(-4)).unwrap().param(), 13);
    }

    #[test]
    fn phi_meets_requested_accuracy() {
        let eps = (2f64).powi(-10);
        let net = phi(eps).unwrap();
        let r = net.realize(ReLU);
        let mut sup: f64 = 0.0;
        for i in 0..=10_000 {
            let x = i as f64 / 10_000.0;
            sup = sup.max((x * x - r.eval1(x).unwrap()).abs());
        }
        assert!(sup <= eps);
    }

    #[test]
    fn sqr_basics() {
        let qe = QEps::new(4.0, 0.1).unwrap();
        let net = sqr(&qe).unwrap();
        let r = net.realize(ReLU);
        assert_eq!(r.eval1(0.0).unwrap(), 0.0);
        let mut sup = 0.0f64;
        for i in 0..=2000 {
            let x = -5.0 + 10.0 * i as f64 / 2000.0;
            let v = r.eval1(x).unwrap();
            let err = (x * x - v).abs() / 1f64.max(x.abs().powf(4.0));
            sup = sup.max(err);
            assert!(v >= 0.0 && v <= 0.1 + x * x + 1e-12);
            // even function
            assert!((v - r.eval1(-x).unwrap()).abs() <= 1e-12);
        }
        assert!(sup <= 0.1);
        assert!(QEps::new(2.0, 0.1).is_err());
        assert!(QEps::new(2.5, 0.0).is_err());
    }

    #[test]
    fn prd_annihilates_axes_and_multiplies() {
        let qe = QEps::new(2.5, 0.01).unwrap();
        let net = prd(&qe).unwrap();
        assert_eq!((net.inn(), net.out()), (2, 1));
        let r = net.realize(ReLU);
        for t in [-1.0, 0.3, 7.0] {
            assert!(r.eval(&[t, 0.0]).unwrap()[0].abs() <= 1e-12);
            assert!(r.eval(&[0.0, t]).unwrap()[0].abs() <= 1e-12);
        }
        assert_eq!(net.wid(1), 24);
        assert_eq!(net.wid(net.hid()), 24);
        let qe = QEps::new(2.5, 0.01).unwrap();
        let got = r.eval(&[2.0, 3.0]).unwrap()[0];
        assert!((6.0 - got).abs() <= qe.eps() * (3f64).powf(2.5));
    }

    #[test]
    fn pwr_zero_and_widths() {
        let qe = QEps::new(2.5, 0.05).unwrap();
        let p0 = pwr(0, &qe).unwrap();
        assert_eq!(p0.param(), 2);
        for x in [-3.0, 0.0, 0.7] {
            assert_eq!(p0.realize(ReLU).eval1(x).unwrap(), 1.0);
        }
        let fam = PowerFamily::new(3, qe).unwrap();
        assert_eq!(fam.net(1).wid(1), 24);
        assert_eq!(fam.net(2).wid(1), 26);
        assert_eq!(fam.net(3).wid(1), 28);
        for n in 1..=3 {
            let net = fam.net(n);
            assert_eq!(net.wid(net.hid()), 24);
            assert_eq!((net.inn(), net.out()), (1, 1));
        }
    }

    #[test]
    fn pwr_error_within_recursive_bound() {
        let qe = QEps::new(2.5, 0.05).unwrap();
        let fam = PowerFamily::new(2, qe).unwrap();
        let x = 1.5;
        let err = (x * x - fam.realized(2, x)).abs();
        let expect =
            (x * (x - fam.realized(1, x))).abs() + 0.05 * (1.0 + x.powf(2.5) + p_bound(1, x, 0.05).powf(2.5));
        assert!(err <= expect);
        assert!((fam.power_error_bound(2, x) - expect).abs() <= 1e-12);
    }

    #[test]
    fn p_bound_values() {
        assert_eq!(p_bound(1, 0.0, 0.1), 2.1);
        assert!((p_bound(2, 0.0, 0.1) - 8.92).abs() < 1e-12);
        let qe = QEps::new(2.5, 0.1).unwrap();
        let fam = PowerFamily::new(4, qe).unwrap();
        for n in 1..=4 {
            for i in 0..=12 {
                let x = -3.0 + 0.5 * i as f64;
                assert!(fam.realized(n, x).abs() <= p_bound(n, x, 0.1));
            }
        }
    }

    #[test]
    fn pnm_constant_and_zero() {
        let qe = QEps::new(2.5, 0.01).unwrap();
        let c = pnm(&[4.25], &qe).unwrap();
        assert_eq!(c.param(), 2);
        for x in [-1.0, 0.0, 2.0] {
            assert_eq!(c.realize(ReLU).eval1(x).unwrap(), 4.25);
        }
        let z = pnm(&[0.0, 0.0, 0.0], &qe).unwrap();
        for x in [-2.0, 0.3, 1.0] {
            assert_eq!(z.realize(ReLU).eval1(x).unwrap().abs(), 0.0);
        }
    }

    #[test]
    fn pnm_linear_within_bound() {
        let qe = QEps::new(2.5, 0.01).unwrap();
        let net = pnm(&[1.0, 1.0], &qe).unwrap();
        let fam = PowerFamily::new(1, qe).unwrap();
        let r = net.realize(ReLU);
        for i in 0..=40 {
            let x = -1.0 + 0.05 * i as f64;
            let err = ((1.0 + x) - r.eval1(x).unwrap()).abs();
            assert!(err <= fam.poly_error_bound(&[1.0, 1.0], x));
        }
    }

    #[test]
    fn xpn_is_one_at_zero() {
        let qe = QEps::new(2.5, 1e-3).unwrap();
        for n in [0usize, 1, 3] {
            let net = xpn(n, &qe).unwrap();
            assert!((net.realize(ReLU).eval1(0.0).unwrap() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn xpn_tracks_exp_within_combined_bound() {
        let qe = QEps::new(2.5, 1e-3).unwrap();
        let n = 4;
        let net = xpn(n, &qe).unwrap();
        let fam = PowerFamily::new(n, qe).unwrap();
        let x = 0.5f64;
        let err = (x.exp() - net.realize(ReLU).eval1(x).unwrap()).abs();
        let bound = fam.exp_series_bound(n, x) + exp_taylor_remainder(1.0, n);
        assert!(err <= bound);
    }

    #[test]
    fn padded_stack_and_sum_of_powers() {
        use crate::ops::{net_sum_padded, stack_padded};
        let qe = QEps::new(2.5, 0.01).unwrap();
        let fam = PowerFamily::new(1, qe).unwrap();
        let stacked = stack_padded(&[fam.net(0).clone(), fam.net(1).clone()]).unwrap();
        for x in [-1.0, 0.0, 0.8] {
            let out = stacked.realize(ReLU).eval(&[x, x]).unwrap();
            assert_eq!(out[0], 1.0);
            assert!((out[1] - fam.realized(1, x)).abs() <= 1e-12);
        }
        let summed = net_sum_padded(&[fam.net(0).clone(), fam.net(1).clone()]).unwrap();
        let got = summed.realize(ReLU).eval1(0.0).unwrap();
        assert!((got - (1.0 + fam.realized(1, 0.0))).abs() <= 1e-12);
    }

    #[test]
    fn sne_is_shifted_csn() {
        let qe = QEps::new(2.5, 0.01).unwrap();
        let n = 2;
        let s = sne(n, &qe).unwrap();
        let c = csn(n, &qe).unwrap();
        for i in 0..=20 {
            let x = -1.0 + 0.1 * i as f64;
            let vs = s.realize(ReLU).eval1(x).unwrap();
            let vc = c
                .realize(ReLU)
                .eval1(x - std::f64::consts::FRAC_PI_2)
                .unwrap();
            assert!((vs - vc).abs() <= 1e-12);
        }
    }
}
