//! Networks as lists of dense affine layers, their measurement functions,
//! and instantiation with an activation.
//!
//! A network with layer widths `l_0, ..., l_L` stores one `(W_k, b_k)` pair
//! per layer, `W_k` of shape `l_k x l_{k-1}`. Instantiation applies the
//! activation componentwise after every layer except the last, so a
//! single-layer network realizes a plain affine map.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense row-major matrix of finite `f64` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl Matrix {
    /// Builds a matrix from row-major entries. Rejects zero dimensions,
    /// length mismatches, and non-finite entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::invalid("matrix dimensions must be positive"));
        }
        if entries.len() != rows * cols {
            return Err(Error::shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(Error::NonFinite("matrix entries"));
        }
        Ok(Self { rows, cols, entries })
    }

    /// Builds a matrix from a slice of equal-length rows.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::invalid("matrix needs at least one row"));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::shape("rows of unequal length"));
        }
        let entries = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Matrix::new(rows.len(), cols, entries)
    }

    /// Builds a matrix by evaluating `f(row, col)` at every position.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { 1.0 } else { 0.0 })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![0.0; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Matrix product `self * rhs`.
    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0.0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    out.entries[r * rhs.cols + c] += a * rhs.get(k, c);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product. The accumulation order is fixed (left to
    /// right over columns) so evaluation is deterministic.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols, "matvec width mismatch");
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let row = &self.entries[r * self.cols..(r + 1) * self.cols];
            let mut acc = 0.0;
            for (w, v) in row.iter().zip(x) {
                acc += w * v;
            }
            out.push(acc);
        }
        out
    }

    /// Block-diagonal assembly of the given blocks, zero-filled elsewhere.
    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|m| m.rows).sum();
        let cols = blocks.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in blocks {
            for r in 0..m.rows {
                for c in 0..m.cols {
                    out.entries[(r0 + r) * cols + (c0 + c)] = m.get(r, c);
                }
            }
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }
}

/// One affine layer: weight matrix plus bias vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    weight: Matrix,
    bias: Vec<f64>,
}

impl Layer {
    pub fn new(weight: Matrix, bias: Vec<f64>) -> Result<Self> {
        if bias.len() != weight.rows() {
            return Err(Error::shape(format!(
                "bias length {} does not match {} output rows",
                bias.len(),
                weight.rows()
            )));
        }
        if bias.iter().any(|b| !b.is_finite()) {
            return Err(Error::NonFinite("bias entries"));
        }
        Ok(Self { weight, bias })
    }

    pub fn weight(&self) -> &Matrix {
        &self.weight
    }

    pub fn bias(&self) -> &[f64] {
        &self.bias
    }

    pub fn in_width(&self) -> usize {
        self.weight.cols()
    }

    pub fn out_width(&self) -> usize {
        self.weight.rows()
    }
}

/// Componentwise activations used at instantiation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Activation {
    ReLU,
    Identity,
}

impl Activation {
    #[inline]
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Activation::ReLU => x.max(0.0),
            Activation::Identity => x,
        }
    }
}

/// A feedforward network: a nonempty list of layers with chained shapes.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    layers: Vec<Layer>,
}

impl Network {
    /// Validates the shape chain: consecutive layers must satisfy
    /// `layers[k].in_width() == layers[k-1].out_width()`.
    pub fn new(layers: Vec<Layer>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::invalid("a network needs at least one layer"));
        }
        for k in 1..layers.len() {
            if layers[k].in_width() != layers[k - 1].out_width() {
                return Err(Error::shape(format!(
                    "layer {} expects {} inputs but layer {} produces {}",
                    k,
                    layers[k].in_width(),
                    k - 1,
                    layers[k - 1].out_width()
                )));
            }
        }
        Ok(Self { layers })
    }

    pub fn single(layer: Layer) -> Self {
        Self { layers: vec![layer] }
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// Total parameter count: sum over layers of `l_k * (l_{k-1} + 1)`,
    /// counting every dense weight entry plus the bias.
    pub fn param(&self) -> usize {
        self.layers
            .iter()
            .map(|l| l.out_width() * (l.in_width() + 1))
            .sum()
    }

    /// Number of layers (the input layer is not counted).
    pub fn dep(&self) -> usize {
        self.layers.len()
    }

    /// Input width `l_0`.
    pub fn inn(&self) -> usize {
        self.layers[0].in_width()
    }

    /// Output width `l_L`.
    pub fn out(&self) -> usize {
        self.layers[self.layers.len() - 1].out_width()
    }

    /// Number of hidden layers, `dep - 1`.
    pub fn hid(&self) -> usize {
        self.layers.len() - 1
    }

    /// The full width tuple `(l_0, l_1, ..., l_L)`.
    pub fn lay(&self) -> Vec<usize> {
        let mut widths = Vec::with_capacity(self.layers.len() + 1);
        widths.push(self.inn());
        widths.extend(self.layers.iter().map(|l| l.out_width()));
        widths
    }

    /// Width of layer `i`: `l_i` for `i <= dep`, and `0` past the end.
    /// `wid(0)` is the input width.
    pub fn wid(&self, i: usize) -> usize {
        if i <= self.dep() {
            self.lay()[i]
        } else {
            0
        }
    }

    /// Instantiates the network with an activation function.
    pub fn realize(&self, act: Activation) -> Realization<'_> {
        Realization { net: self, act }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("network serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// An instantiated network: a pure, deterministic map `R^inn -> R^out`.
///
/// The activation is applied componentwise after every layer except the
/// last. Evaluation rejects inputs of the wrong width and non-finite
/// inputs.
#[derive(Debug, Clone, Copy)]
pub struct Realization<'a> {
    net: &'a Network,
    act: Activation,
}

impl Realization<'_> {
    pub fn input_width(&self) -> usize {
        self.net.inn()
    }

    pub fn output_width(&self) -> usize {
        self.net.out()
    }

    pub fn eval(&self, input: &[f64]) -> Result<Vec<f64>> {
        if input.len() != self.net.inn() {
            return Err(Error::shape(format!(
                "input has {} components, network expects {}",
                input.len(),
                self.net.inn()
            )));
        }
        if input.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("evaluation input"));
        }
        let last = self.net.layers.len() - 1;
        let mut x = input.to_vec();
        for (k, layer) in self.net.layers.iter().enumerate() {
            let mut y = layer.weight.matvec(&x);
            for (v, b) in y.iter_mut().zip(layer.bias()) {
                *v += b;
            }
            if k < last {
                for v in y.iter_mut() {
                    *v = self.act.apply(*v);
                }
            }
            x = y;
        }
        Ok(x)
    }

    /// Scalar convenience for networks mapping `R -> R`.
    pub fn eval1(&self, x: f64) -> Result<f64> {
        let out = self.eval(&[x])?;
        if out.len() != 1 {
            return Err(Error::shape(format!(
                "network has {} outputs, expected 1",
                out.len()
            )));
        }
        Ok(out[0])
    }
}

// JSON wire format: {"layers":[{"rows":..,"cols":..,"weights":[..],"bias":[..]}]}
// Serialization uses shortest round-trip decimals, so finite doubles survive
// a round trip bit-exactly.

#[derive(Serialize, Deserialize)]
struct LayerJson {
    rows: usize,
    cols: usize,
    weights: Vec<f64>,
    bias: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct NetworkJson {
    layers: Vec<LayerJson>,
}

impl Serialize for Network {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let json = NetworkJson {
            layers: self
                .layers
                .iter()
                .map(|l| LayerJson {
                    rows: l.weight.rows(),
                    cols: l.weight.cols(),
                    weights: l.weight.entries().to_vec(),
                    bias: l.bias.clone(),
                })
                .collect(),
        };
        json.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Network {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = NetworkJson::deserialize(d)?;
        let mut layers = Vec::with_capacity(json.layers.len());
        for l in json.layers {
            let weight = Matrix::new(l.rows, l.cols, l.weights).map_err(serde::de::Error::custom)?;
            layers.push(Layer::new(weight, l.bias).map_err(serde::de::Error::custom)?);
        }
        Network::new(layers).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::{identity_net, tunnel};

    fn aff1(w: f64, b: f64) -> Network {
        Network::single(Layer::new(Matrix::new(1, 1, vec![w]).unwrap(), vec![b]).unwrap())
    }

    #[test]
    fn param_of_single_scalar_layer_is_two() {
        assert_eq!(aff1(0.0, 1.0).param(), 2);
    }

    #[test]
    fn param_of_identity_and_tunnel() {
        assert_eq!(identity_net(1).unwrap().param(), 7);
        assert_eq!(tunnel(3).unwrap().param(), 13);
    }

    #[test]
    fn depth_measurements() {
        for n in [1, 2, 5, 9] {
            assert_eq!(tunnel(n).unwrap().dep(), n);
        }
        let a = aff1(2.0, 0.5);
        assert_eq!(a.hid(), 0);
        assert_eq!(a.dep(), 1);
    }

    #[test]
    fn lay_and_wid() {
        assert_eq!(tunnel(4).unwrap().lay(), vec![1, 2, 2, 2, 1]);
        let t = tunnel(3).unwrap();
        assert_eq!(t.wid(0), 1);
        assert_eq!(t.wid(1), 2);
        assert_eq!(t.wid(3), 1);
        assert_eq!(t.wid(t.dep() + 5), 0);
    }

    #[test]
    fn single_layer_realizes_affine_without_activation() {
        let net = aff1(2.0, 1.0);
        let r = net.realize(Activation::ReLU);
        // no activation on the last layer, so negative outputs pass through
        assert_eq!(r.eval1(5.0).unwrap(), 11.0);
        assert_eq!(r.eval1(-5.0).unwrap(), -9.0);
    }

    #[test]
    fn identity_net_is_exact_on_negatives() {
        let id = identity_net(1).unwrap();
        assert_eq!(id.realize(Activation::ReLU).eval1(-3.0).unwrap(), -3.0);
    }

    #[test]
    fn shape_chain_is_validated() {
        let l1 = Layer::new(Matrix::identity(2), vec![0.0, 0.0]).unwrap();
        let l2 = Layer::new(Matrix::identity(3), vec![0.0; 3]).unwrap();
        assert!(Network::new(vec![l1, l2]).is_err());
        assert!(Network::new(vec![]).is_err());
    }

    #[test]
    fn eval_rejects_bad_inputs() {
        let id = identity_net(2).unwrap();
        let r = id.realize(Activation::ReLU);
        assert!(r.eval(&[1.0]).is_err());
        assert!(r.eval(&[1.0, f64::NAN]).is_err());
        assert!(r.eval(&[1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn matrix_construction_rejects_non_finite() {
        assert!(Matrix::new(1, 2, vec![1.0, f64::NAN]).is_err());
        assert!(Matrix::new(2, 2, vec![1.0]).is_err());
        assert!(Matrix::new(0, 1, vec![]).is_err());
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let net = tunnel(3).unwrap();
        let back = Network::from_json(&net.to_json()).unwrap();
        assert_eq!(net, back);
        // an awkward constant survives the trip
        let odd = aff1(0.1 + 0.2, -1.0 / 3.0);
        let back = Network::from_json(&odd.to_json()).unwrap();
        assert_eq!(odd, back);
    }

    #[test]
    fn json_rejects_inconsistent_shapes() {
        let bad = r#"{"layers":[{"rows":1,"cols":2,"weights":[1.0],"bias":[0.0]}]}"#;
        assert!(Network::from_json(bad).is_err());
    }
}
