//! 1-norm and maximum networks, and the max-convolution interpolant of
//! Lipschitz data.
//!
//! The interpolant for samples `(x_i, y_i)` with Lipschitz constant `L`
//! realizes `x -> max_i (y_i - L * |x - x_i|_1)` exactly: it interpolates
//! the data, never exceeds any `L`-Lipschitz function through it, and its
//! sup error is at most `2L` times the fill distance of the sample set.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{Matrix, Network};
use crate::ops::{affine, compose, cpy, identity_net, sm, stack};

/// Lipschitz sample data: `n` points in `R^d` with scalar values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SampleSetJson", into = "SampleSetJson")]
pub struct SampleSet {
    dim: usize,
    points: Vec<Vec<f64>>,
    values: Vec<f64>,
    lipschitz: f64,
}

#[derive(Serialize, Deserialize)]
struct SampleSetJson {
    d: usize,
    points: Vec<Vec<f64>>,
    values: Vec<f64>,
    #[serde(rename = "L")]
    lipschitz: f64,
}

impl TryFrom<SampleSetJson> for SampleSet {
    type Error = Error;

    fn try_from(j: SampleSetJson) -> Result<Self> {
        SampleSet::new(j.d, j.points, j.values, j.lipschitz)
    }
}

impl From<SampleSet> for SampleSetJson {
    fn from(s: SampleSet) -> Self {
        SampleSetJson { d: s.dim, points: s.points, values: s.values, lipschitz: s.lipschitz }
    }
}

impl SampleSet {
    pub fn new(dim: usize, points: Vec<Vec<f64>>, values: Vec<f64>, lipschitz: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("sample dimension must be positive"));
        }
        if points.is_empty() {
            return Err(Error::invalid("sample set needs at least one point"));
        }
        if points.len() != values.len() {
            return Err(Error::shape(format!(
                "{} points but {} values",
                points.len(),
                values.len()
            )));
        }
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::shape("sample point of wrong dimension"));
        }
        let finite = points.iter().flatten().all(|v| v.is_finite())
            && values.iter().all(|v| v.is_finite());
        if !finite {
            return Err(Error::NonFinite("sample data"));
        }
        if !lipschitz.is_finite() || lipschitz < 0.0 {
            return Err(Error::invalid("Lipschitz constant must be nonnegative"));
        }
        Ok(Self { dim, points, values, lipschitz })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }
}

/// 1-norm network on `R^d`: realizes `|x|_1` exactly, `lay = (d, 2d, 1)`.
pub fn nrm(d: usize) -> Result<Network> {
    if d == 0 {
        return Err(Error::invalid("nrm requires d >= 1"));
    }
    let abs1 = Network::new(vec![
        crate::network::Layer::new(Matrix::from_rows(&[&[1.0], &[-1.0]])?, vec![0.0, 0.0])?,
        crate::network::Layer::new(Matrix::from_rows(&[&[1.0, 1.0]])?, vec![0.0])?,
    ])?;
    if d == 1 {
        return Ok(abs1);
    }
    compose(&sm(d, 1)?, &stack(&vec![abs1; d])?)
}

fn mxm_two() -> Result<Network> {
    // max{x1, x2} = relu(x1 - x2) + relu(x2) - relu(-x2)
    Network::new(vec![
        crate::network::Layer::new(
            Matrix::from_rows(&[&[1.0, -1.0], &[0.0, 1.0], &[0.0, -1.0]])?,
            vec![0.0, 0.0, 0.0],
        )?,
        crate::network::Layer::new(Matrix::from_rows(&[&[1.0, 1.0, -1.0]])?, vec![0.0])?,
    ])
}

/// Maximum network on `R^d`: realizes `max(x_1, ..., x_d)` exactly with
/// `ceil(log2 d)` hidden layers. Pairs are reduced by the two-input maximum;
/// an odd leftover rides through a 1-D identity to the next round.
pub fn mxm(d: usize) -> Result<Network> {
    match d {
        0 => Err(Error::invalid("mxm requires d >= 1")),
        1 => affine(Matrix::new(1, 1, vec![1.0])?, vec![0.0]),
        2 => mxm_two(),
        _ => {
            let two = mxm_two()?;
            let round = if d.is_multiple_of(2) {
                stack(&vec![two; d / 2])?
            } else {
                let mut blocks = vec![two; (d - 1) / 2];
                blocks.push(identity_net(1)?);
                stack(&blocks)?
            };
            compose(&mxm(d.div_ceil(2))?, &round)
        }
    }
}

/// Max-convolution interpolant of a sample set, as a network:
/// `max over i of (y_i - L * |x - x_i|_1)`.
pub fn max_conv(s: &SampleSet) -> Result<Network> {
    let n = s.len();
    let d = s.dim();
    let mut branches = Vec::with_capacity(n);
    for p in s.points() {
        let shift: Vec<f64> = p.iter().map(|v| -v).collect();
        let recenter = affine(Matrix::identity(d), shift)?;
        branches.push(compose(&nrm(d)?, &recenter)?);
    }
    let distances = compose(&stack(&branches)?, &cpy(n, d)?)?;
    let scale = Matrix::from_fn(n, n, |r, c| if r == c { -s.lipschitz() } else { 0.0 });
    let offset = compose(&affine(scale, s.values().to_vec())?, &distances)?;
    compose(&mxm(n)?, &offset)
}

/// The interpolant's defining formula, evaluated directly.
pub fn max_conv_closed_form(s: &SampleSet, x: &[f64]) -> f64 {
    assert_eq!(x.len(), s.dim(), "query point dimension mismatch");
    s.points()
        .iter()
        .zip(s.values())
        .map(|(p, y)| {
            let dist: f64 = p.iter().zip(x).map(|(a, b)| (b - a).abs()).sum();
            y - s.lipschitz() * dist
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Evaluation grid over the box `[lo, hi]`: a uniform grid of `2^12` points
/// total for `d <= 2` (4096 points in 1-D, 64 per axis in 2-D), and `10^5`
/// fixed-seed uniform samples for `d = 3`. Higher dimensions are not
/// supported.
pub fn domain_grid(lo: &[f64], hi: &[f64]) -> Result<Vec<Vec<f64>>> {
    if lo.len() != hi.len() || lo.is_empty() {
        return Err(Error::shape("domain corners of unequal dimension"));
    }
    if lo.iter().zip(hi).any(|(a, b)| !a.is_finite() || !b.is_finite() || b < a) {
        return Err(Error::invalid("domain box needs finite lo <= hi"));
    }
    let d = lo.len();
    match d {
        1 | 2 => {
            let per_axis: usize = if d == 1 { 1 << 12 } else { 1 << 6 };
            let axis = |k: usize| -> Vec<f64> {
                (0..per_axis)
                    .map(|i| lo[k] + (hi[k] - lo[k]) * i as f64 / (per_axis - 1) as f64)
                    .collect()
            };
            if d == 1 {
                Ok(axis(0).into_iter().map(|x| vec![x]).collect())
            } else {
                let (xs, ys) = (axis(0), axis(1));
                let mut grid = Vec::with_capacity(per_axis * per_axis);
                for x in &xs {
                    for y in &ys {
                        grid.push(vec![*x, *y]);
                    }
                }
                Ok(grid)
            }
        }
        3 => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x1d);
            Ok((0..100_000)
                .map(|_| (0..3).map(|k| rng.gen_range(lo[k]..=hi[k])).collect())
                .collect())
        }
        _ => Err(Error::invalid("domain grids support d <= 3")),
    }
}

/// Fill distance of the samples over the given evaluation points: the
/// largest 1-norm distance from a grid point to its nearest sample.
pub fn fill_distance(s: &SampleSet, grid: &[Vec<f64>]) -> f64 {
    grid.iter()
        .map(|g| {
            s.points()
                .iter()
                .map(|p| p.iter().zip(g).map(|(a, b)| (b - a).abs()).sum::<f64>())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// Sup-error bound for the interpolant against any function with the
/// sample set's Lipschitz constant: `2L` times the fill distance.
pub fn max_conv_error_bound(s: &SampleSet, grid: &[Vec<f64>]) -> Result<f64> {
    if grid.is_empty() {
        return Err(Error::invalid("error bound needs a nonempty evaluation grid"));
    }
    Ok(2.0 * s.lipschitz() * fill_distance(s, grid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Activation::ReLU;

    #[test]
    fn nrm_is_exact_one_norm() {
        let n1 = nrm(1).unwrap();
        assert_eq!(n1.realize(ReLU).eval1(-3.0).unwrap(), 3.0);
        assert_eq!(n1.param(), 7);
        let n3 = nrm(3).unwrap();
        assert_eq!(n3.realize(ReLU).eval(&[1.0, -2.0, 3.0]).unwrap(), vec![6.0]);
        for d in 1..=9 {
            let net = nrm(d).unwrap();
            assert_eq!(net.lay(), vec![d, 2 * d, 1]);
            assert_eq!(net.hid(), 1);
            assert_eq!(net.dep(), 2);
            assert!(net.param() <= 7 * d * d);
        }
    }

    #[test]
    fn mxm_is_exact_maximum() {
        let m2 = mxm(2).unwrap();
        assert_eq!(m2.realize(ReLU).eval(&[3.0, 5.0]).unwrap(), vec![5.0]);
        assert_eq!(m2.realize(ReLU).eval(&[5.0, 3.0]).unwrap(), vec![5.0]);
        let m5 = mxm(5).unwrap();
        assert_eq!(
            m5.realize(ReLU).eval(&[1.0, 9.0, 2.0, 8.0, 3.0]).unwrap(),
            vec![9.0]
        );
        assert_eq!(m5.hid(), 3);
        for d in 2..=16usize {
            let net = mxm(d).unwrap();
            let levels = (d as f64).log2().ceil() as usize;
            assert_eq!(net.hid(), levels, "d={d}");
            assert_eq!(net.dep(), levels + 1);
            for i in 1..=net.dep() {
                assert!(net.wid(i) <= 3 * d.div_ceil(1 << i).max(1) || i == net.dep());
            }
        }
    }

    #[test]
    fn mxm_width_bound() {
        for d in 2..=16usize {
            let net = mxm(d).unwrap();
            for i in 1..net.dep() {
                assert!(
                    net.wid(i) <= 3 * d.div_ceil(1 << i),
                    "d={d} i={i} wid={}",
                    net.wid(i)
                );
            }
        }
    }

    fn hat_samples(n: usize) -> SampleSet {
        let points: Vec<Vec<f64>> = (0..n).map(|i| vec![i as f64 / (n - 1) as f64]).collect();
        let values = points.iter().map(|p| (p[0] - 0.5).abs()).collect();
        SampleSet::new(1, points, values, 1.0).unwrap()
    }

    #[test]
    fn max_conv_basics() {
        let s = SampleSet::new(1, vec![vec![0.0], vec![1.0]], vec![0.0, 1.0], 1.0).unwrap();
        let net = max_conv(&s).unwrap();
        assert_eq!(net.realize(ReLU).eval(&[0.5]).unwrap(), vec![0.5]);
        assert_eq!((net.inn(), net.out()), (1, 1));
        // interpolates the data
        assert_eq!(net.realize(ReLU).eval(&[0.0]).unwrap()[0], 0.0);
        assert_eq!(net.realize(ReLU).eval(&[1.0]).unwrap()[0], 1.0);
    }

    #[test]
    fn max_conv_structure() {
        let s = SampleSet::new(
            2,
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![0.0, 1.0, 2.0],
            1.5,
        )
        .unwrap();
        let net = max_conv(&s).unwrap();
        assert_eq!(net.wid(1), 2 * 2 * 3);
        assert_eq!(net.hid(), 3); // ceil(log2 3) + 1
    }

    #[test]
    fn max_conv_matches_closed_form() {
        let s = hat_samples(5);
        let net = max_conv(&s).unwrap();
        let r = net.realize(ReLU);
        for i in 0..=100 {
            let x = i as f64 / 100.0;
            let got = r.eval(&[x]).unwrap()[0];
            assert!((got - max_conv_closed_form(&s, &[x])).abs() <= 1e-10);
        }
    }

    #[test]
    fn constant_function_with_zero_lipschitz() {
        let s = SampleSet::new(1, vec![vec![0.2], vec![0.8]], vec![3.0, 3.0], 0.0).unwrap();
        let net = max_conv(&s).unwrap();
        for x in [0.0, 0.41, 1.0] {
            assert_eq!(net.realize(ReLU).eval(&[x]).unwrap()[0], 3.0);
        }
        let grid = domain_grid(&[0.0], &[1.0]).unwrap();
        assert_eq!(max_conv_error_bound(&s, &grid).unwrap(), 0.0);
    }

    #[test]
    fn fill_distance_halves_under_refinement() {
        let grid = domain_grid(&[0.0], &[1.0]).unwrap();
        let bound3 = max_conv_error_bound(&hat_samples(3), &grid).unwrap();
        let bound5 = max_conv_error_bound(&hat_samples(5), &grid).unwrap();
        assert!((bound3 - 0.5).abs() <= 1e-3);
        assert!((bound5 - 0.25).abs() <= 1e-3);
    }

    #[test]
    fn sample_set_json_round_trip() {
        let s = hat_samples(3);
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.contains("\"L\""));
        let back: SampleSet = serde_json::from_str(&text).unwrap();
        assert_eq!(s, back);
        let bad = r#"{"d":1,"points":[[0.0]],"values":[1.0,2.0],"L":1.0}"#;
        assert!(serde_json::from_str::<SampleSet>(bad).is_err());
    }
}
