//! The operator calculus on networks.
//!
//! Composition fuses the first layer of the outer network with the last
//! layer of the inner one, so depths add minus one. Stacking places
//! equal-depth networks block-diagonally. Sums copy the input, stack the
//! summands, and add the outputs. Tunnels are depth-padding networks whose
//! ReLU realization is the identity on `R`.

use crate::error::{Error, Result};
use crate::network::{Layer, Matrix, Network};

/// Single-layer network realizing `x -> Wx + b` under any activation.
pub fn affine(weight: Matrix, bias: Vec<f64>) -> Result<Network> {
    Ok(Network::single(Layer::new(weight, bias)?))
}

/// Affine network mapping `x` in `R^k` to `n` stacked copies of `x`.
pub fn cpy(n: usize, k: usize) -> Result<Network> {
    if n == 0 || k == 0 {
        return Err(Error::invalid("cpy requires n >= 1 and k >= 1"));
    }
    let w = Matrix::from_fn(n * k, k, |r, c| if r % k == c { 1.0 } else { 0.0 });
    affine(w, vec![0.0; n * k])
}

/// Affine network summing `n` consecutive blocks of width `k`.
pub fn sm(n: usize, k: usize) -> Result<Network> {
    if n == 0 || k == 0 {
        return Err(Error::invalid("sm requires n >= 1 and k >= 1"));
    }
    let w = Matrix::from_fn(k, n * k, |r, c| if c % k == r { 1.0 } else { 0.0 });
    affine(w, vec![0.0; k])
}

/// Composition `outer . inner`: realizes `R(outer)(R(inner)(x))`.
///
/// The inner network's last layer and the outer network's first layer fuse
/// into the single affine layer `(W_1 W'_M, W_1 b'_M + b_1)`. The four
/// depth cases are dispatched structurally.
pub fn compose(outer: &Network, inner: &Network) -> Result<Network> {
    if outer.inn() != inner.out() {
        return Err(Error::shape(format!(
            "compose: outer expects {} inputs, inner produces {}",
            outer.inn(),
            inner.out()
        )));
    }
    let l = outer.dep();
    let m = inner.dep();
    let w1 = outer.layers()[0].weight();
    let b1 = outer.layers()[0].bias();
    let wm = inner.layers()[m - 1].weight();
    let bm = inner.layers()[m - 1].bias();

    let fused_w = w1.matmul(wm)?;
    let mut fused_b = w1.matvec(bm);
    for (v, b) in fused_b.iter_mut().zip(b1) {
        *v += b;
    }
    let fused = Layer::new(fused_w, fused_b)?;

    let inner_head = || inner.layers()[..m - 1].iter().cloned();
    let outer_tail = || outer.layers()[1..].iter().cloned();

    let layers: Vec<Layer> = match (l > 1, m > 1) {
        (true, true) => inner_head().chain([fused]).chain(outer_tail()).collect(),
        (true, false) => [fused].into_iter().chain(outer_tail()).collect(),
        (false, true) => inner_head().chain([fused]).collect(),
        (false, false) => vec![fused],
    };
    Network::new(layers)
}

/// Block-diagonal stacking of equal-depth networks: the realization maps
/// concatenated inputs to concatenated outputs.
pub fn stack(nets: &[Network]) -> Result<Network> {
    if nets.is_empty() {
        return Err(Error::invalid("stack requires at least one network"));
    }
    let depth = nets[0].dep();
    if nets.iter().any(|n| n.dep() != depth) {
        return Err(Error::shape(
            "stack requires equal depths (use stack_padded for unequal)",
        ));
    }
    let mut layers = Vec::with_capacity(depth);
    for k in 0..depth {
        let blocks: Vec<&Matrix> = nets.iter().map(|n| n.layers()[k].weight()).collect();
        let weight = Matrix::block_diag(&blocks);
        let bias = nets
            .iter()
            .flat_map(|n| n.layers()[k].bias().iter().copied())
            .collect();
        layers.push(Layer::new(weight, bias)?);
    }
    Network::new(layers)
}

/// Depth-2 network realizing the identity on `R` under ReLU, via
/// `relu(x) - relu(-x) = x`.
fn id_one() -> Network {
    let first = Layer::new(
        Matrix::from_rows(&[&[1.0], &[-1.0]]).unwrap(),
        vec![0.0, 0.0],
    )
    .unwrap();
    let second = Layer::new(Matrix::from_rows(&[&[1.0, -1.0]]).unwrap(), vec![0.0]).unwrap();
    Network::new(vec![first, second]).unwrap()
}

/// Identity network on `R^d`: `d` copies of the 1-D identity stacked.
pub fn identity_net(d: usize) -> Result<Network> {
    if d == 0 {
        return Err(Error::invalid("identity_net requires d >= 1"));
    }
    let one = id_one();
    stack(&vec![one; d])
}

/// Tunnel of depth `n`: the affine identity for `n = 1`, otherwise `n - 1`
/// composed copies of the 1-D identity network. Realizes the identity on
/// `R` under ReLU at every depth.
pub fn tunnel(n: usize) -> Result<Network> {
    match n {
        0 => Err(Error::invalid("tunnel requires n >= 1")),
        1 => affine(Matrix::new(1, 1, vec![1.0])?, vec![0.0]),
        _ => {
            let one = id_one();
            let mut net = one.clone();
            for _ in 2..n {
                net = compose(&net, &one)?;
            }
            Ok(net)
        }
    }
}

/// Stacking of networks of unequal depth. Each component is first composed
/// with a tunnel so all reach the maximum depth, then stacked. Tunnels are
/// one-dimensional, so every component must have a single output.
pub fn stack_padded(nets: &[Network]) -> Result<Network> {
    if nets.is_empty() {
        return Err(Error::invalid("stack_padded requires at least one network"));
    }
    if let Some(bad) = nets.iter().find(|n| n.out() != 1) {
        return Err(Error::shape(format!(
            "stack_padded requires scalar outputs, found width {}",
            bad.out()
        )));
    }
    let max_dep = nets.iter().map(Network::dep).max().unwrap();
    let mut padded = Vec::with_capacity(nets.len());
    for net in nets {
        let t = tunnel(max_dep + 1 - net.dep())?;
        let p = compose(&t, net)?;
        debug_assert_eq!(p.dep(), max_dep, "padding must equalize depths");
        padded.push(p);
    }
    stack(&padded)
}

fn check_end_widths(nets: &[Network]) -> Result<(usize, usize)> {
    if nets.is_empty() {
        return Err(Error::invalid("sum requires at least one network"));
    }
    let (inn, out) = (nets[0].inn(), nets[0].out());
    if nets.iter().any(|n| n.inn() != inn || n.out() != out) {
        return Err(Error::shape("sum requires equal end widths"));
    }
    Ok((inn, out))
}

/// Pointwise sum of equal-depth networks with equal end widths:
/// `Sm . (stack of summands) . Cpy`.
pub fn net_sum(nets: &[Network]) -> Result<Network> {
    let (inn, out) = check_end_widths(nets)?;
    let depth = nets[0].dep();
    if nets.iter().any(|n| n.dep() != depth) {
        return Err(Error::shape(
            "net_sum requires equal depths (use net_sum_padded)",
        ));
    }
    let stacked = stack(nets)?;
    compose(&compose(&sm(nets.len(), out)?, &stacked)?, &cpy(nets.len(), inn)?)
}

/// Pointwise sum of networks of unequal depth, via tunnel-padded stacking.
/// Components must have scalar outputs.
pub fn net_sum_padded(nets: &[Network]) -> Result<Network> {
    let (inn, out) = check_end_widths(nets)?;
    let stacked = stack_padded(nets)?;
    compose(&compose(&sm(nets.len(), out)?, &stacked)?, &cpy(nets.len(), inn)?)
}

/// Scalar action on the output: realizes `lambda * R(net)(x)`.
pub fn scalar_left(lambda: f64, net: &Network) -> Result<Network> {
    if !lambda.is_finite() {
        return Err(Error::NonFinite("scalar factor"));
    }
    let d = net.out();
    let w = Matrix::from_fn(d, d, |r, c| if r == c { lambda } else { 0.0 });
    compose(&affine(w, vec![0.0; d])?, net)
}

/// Scalar action on the argument: realizes `R(net)(lambda * x)`.
pub fn scalar_right(net: &Network, lambda: f64) -> Result<Network> {
    if !lambda.is_finite() {
        return Err(Error::NonFinite("scalar factor"));
    }
    let d = net.inn();
    let w = Matrix::from_fn(d, d, |r, c| if r == c { lambda } else { 0.0 });
    compose(net, &affine(w, vec![0.0; d])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Activation::{Identity, ReLU};

    fn aff1(w: f64, b: f64) -> Network {
        affine(Matrix::new(1, 1, vec![w]).unwrap(), vec![b]).unwrap()
    }

    #[test]
    fn affine_identity_map() {
        let net = affine(Matrix::identity(3), vec![0.0; 3]).unwrap();
        let out = net.realize(ReLU).eval(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(out, vec![1.0, 2.0, 3.0]);
        assert_eq!(aff1(2.0, 1.0).realize(ReLU).eval1(5.0).unwrap(), 11.0);
    }

    #[test]
    fn affine_param_counts_dense_entries() {
        let net = affine(Matrix::zeros(3, 4), vec![0.0; 3]).unwrap();
        assert_eq!(net.param(), 3 * (4 + 1));
    }

    #[test]
    fn cpy_duplicates() {
        let out = cpy(2, 1).unwrap().realize(ReLU).eval(&[7.0]).unwrap();
        assert_eq!(out, vec![7.0, 7.0]);
        let out = cpy(3, 2).unwrap().realize(ReLU).eval(&[1.0, 2.0]).unwrap();
        assert_eq!(out, vec![1.0, 2.0, 1.0, 2.0, 1.0, 2.0]);
        let net = cpy(4, 3).unwrap();
        assert_eq!((net.inn(), net.out()), (3, 12));
    }

    #[test]
    fn sm_sums_blocks() {
        let out = sm(2, 1).unwrap().realize(ReLU).eval(&[3.0, 4.0]).unwrap();
        assert_eq!(out, vec![7.0]);
        let out = sm(2, 2).unwrap().realize(ReLU).eval(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(out, vec![4.0, 6.0]);
        assert_eq!(sm(5, 3).unwrap().out(), 3);
    }

    #[test]
    fn compose_single_layers_fuses() {
        let c = compose(&aff1(2.0, 1.0), &aff1(3.0, 0.0)).unwrap();
        assert_eq!(c.dep(), 1);
        assert_eq!(c.layers()[0].weight().get(0, 0), 6.0);
        assert_eq!(c.layers()[0].bias()[0], 1.0);
    }

    #[test]
    fn compose_covers_all_four_depth_cases() {
        let single = |w: f64, b: f64| aff1(w, b);
        let deep = tunnel(3).unwrap(); // depth > 1, scalar in and out
        let probe = [-1.3, 0.0, 0.4, 2.7];
        let expect = |outer: &Network, inner: &Network, x: f64| {
            let mid = inner.realize(ReLU).eval1(x).unwrap();
            outer.realize(ReLU).eval1(mid).unwrap()
        };
        let cases = [
            (deep.clone(), deep.clone(), 3 + 3 - 1),    // L>1, M>1
            (deep.clone(), single(2.0, 0.5), 3),        // L>1, M=1
            (single(-1.5, 2.0), deep.clone(), 3),       // L=1, M>1
            (single(-1.5, 2.0), single(2.0, 0.5), 1),   // L=1, M=1
        ];
        for (outer, inner, depth) in cases {
            let c = compose(&outer, &inner).unwrap();
            assert_eq!(c.dep(), depth);
            for x in probe {
                let got = c.realize(ReLU).eval1(x).unwrap();
                assert!((got - expect(&outer, &inner, x)).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn compose_depth_and_width_mismatch() {
        let t3 = tunnel(3).unwrap();
        let t5 = tunnel(5).unwrap();
        assert_eq!(compose(&t3, &t5).unwrap().dep(), 3 + 5 - 1);
        let two_out = cpy(2, 1).unwrap();
        assert!(compose(&two_out, &two_out).is_err());
    }

    #[test]
    fn compose_lay_concatenation() {
        // widths of the inner net up to its hidden part, then the outer's
        let a = tunnel(3).unwrap();
        let b = identity_net(1).unwrap();
        let c = compose(&a, &b).unwrap();
        assert_eq!(c.lay(), vec![1, 2, 2, 2, 1]);
        assert_eq!(c.hid(), a.hid() + b.hid());
    }

    #[test]
    fn stack_of_identities_is_identity() {
        let id2 = stack(&[identity_net(1).unwrap(), identity_net(1).unwrap()]).unwrap();
        assert_eq!(id2, identity_net(2).unwrap());
        let out = id2.realize(ReLU).eval(&[-1.5, 2.5]).unwrap();
        assert_eq!(out, vec![-1.5, 2.5]);
    }

    #[test]
    fn stack_lay_is_elementwise_sum() {
        let a = tunnel(2).unwrap();
        let b = identity_net(2).unwrap();
        let s = stack(&[a.clone(), b.clone()]).unwrap();
        let expect: Vec<usize> = a.lay().iter().zip(b.lay()).map(|(x, y)| x + y).collect();
        assert_eq!(s.lay(), expect);
        assert!(stack(&[tunnel(2).unwrap(), tunnel(3).unwrap()]).is_err());
    }

    #[test]
    fn tunnel_realizes_identity() {
        for n in [1usize, 2, 5] {
            let t = tunnel(n).unwrap();
            let r = t.realize(ReLU);
            for x in [-2.0, 0.0, 3.5] {
                assert_eq!(r.eval1(x).unwrap(), x);
            }
        }
    }

    #[test]
    fn tunnel_structure() {
        for n in 2..=12usize {
            let t = tunnel(n).unwrap();
            assert_eq!(t.param(), 7 + 6 * (n - 2));
            let mut expect = vec![1];
            expect.extend(std::iter::repeat_n(2, n - 1));
            expect.push(1);
            assert_eq!(t.lay(), expect);
        }
        assert_eq!(tunnel(1).unwrap().param(), 2);
    }

    #[test]
    fn stack_blockwise_decomposition_is_tight() {
        // awkward non-dyadic entries; blockwise evaluation is the oracle
        let a = Network::new(vec![
            Layer::new(Matrix::from_rows(&[&[0.3, -0.7], &[1.1, 0.9]]).unwrap(), vec![0.1, -0.2])
                .unwrap(),
            Layer::new(Matrix::from_rows(&[&[0.6, -1.3]]).unwrap(), vec![0.05]).unwrap(),
        ])
        .unwrap();
        let b = Network::new(vec![
            Layer::new(Matrix::from_rows(&[&[-0.4], &[0.8]]).unwrap(), vec![0.3, 0.7]).unwrap(),
            Layer::new(Matrix::from_rows(&[&[1.9, 0.2], &[-0.6, 1.4]]).unwrap(), vec![0.0, -1.1])
                .unwrap(),
        ])
        .unwrap();
        let s = stack(&[a.clone(), b.clone()]).unwrap();
        for act in [ReLU, Identity] {
            for x in [[0.37, -1.21, 0.83], [2.5, 0.1, -0.9]] {
                let joint = s.realize(act).eval(&x).unwrap();
                let va = a.realize(act).eval(&x[..2]).unwrap();
                let vb = b.realize(act).eval(&x[2..]).unwrap();
                let expect: Vec<f64> = va.into_iter().chain(vb).collect();
                for (u, v) in joint.iter().zip(&expect) {
                    assert!((u - v).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn scalar_identities_hold_at_large_factors() {
        let base = Network::new(vec![
            Layer::new(Matrix::from_rows(&[&[0.9], &[-0.3]]).unwrap(), vec![0.2, 0.4]).unwrap(),
            Layer::new(Matrix::from_rows(&[&[0.7, 1.3]]).unwrap(), vec![-0.6]).unwrap(),
        ])
        .unwrap();
        for lambda in [1024.0, -1024.0, 0.125, -3.5] {
            let left = scalar_left(lambda, &base).unwrap();
            let right = scalar_right(&base, lambda).unwrap();
            for x in [0.31, -1.7, 2.2] {
                let v = base.realize(ReLU).eval1(x).unwrap();
                assert!((left.realize(ReLU).eval1(x).unwrap() - lambda * v).abs() <= 1e-12);
                let at_scaled = base.realize(ReLU).eval1(lambda * x).unwrap();
                let got = right.realize(ReLU).eval1(x).unwrap();
                assert!((got - at_scaled).abs() <= 1e-12 * 1f64.max(at_scaled.abs()));
            }
        }
    }

    #[test]
    fn stack_padded_pads_to_common_depth() {
        let shallow = aff1(1.0, 0.0);
        let deep = tunnel(4).unwrap();
        let s = stack_padded(&[shallow, deep]).unwrap();
        assert_eq!(s.dep(), 4);
        let out = s.realize(ReLU).eval(&[1.25, -2.5]).unwrap();
        assert_eq!(out, vec![1.25, -2.5]);
    }

    #[test]
    fn stack_padded_equal_depths_keeps_realization() {
        let a = aff1(2.0, 0.0);
        let b = aff1(-1.0, 1.0);
        let s = stack_padded(&[a, b]).unwrap();
        let out = s.realize(ReLU).eval(&[3.0, 3.0]).unwrap();
        assert_eq!(out, vec![6.0, -2.0]);
    }

    #[test]
    fn stack_padded_rejects_vector_outputs() {
        assert!(stack_padded(&[cpy(2, 1).unwrap()]).is_err());
    }

    #[test]
    fn net_sum_doubles() {
        let s = net_sum(&[identity_net(1).unwrap(), identity_net(1).unwrap()]).unwrap();
        assert_eq!(s.realize(ReLU).eval1(3.0).unwrap(), 6.0);
        assert_eq!((s.inn(), s.out()), (1, 1));
    }

    #[test]
    fn net_sum_padded_reduces_to_net_sum_on_equal_depths() {
        let nets = [identity_net(1).unwrap(), identity_net(1).unwrap()];
        let a = net_sum(&nets).unwrap();
        let b = net_sum_padded(&nets).unwrap();
        for x in [-4.0, 0.0, 2.5] {
            let va = a.realize(ReLU).eval1(x).unwrap();
            let vb = b.realize(ReLU).eval1(x).unwrap();
            assert!((va - vb).abs() <= 1e-12);
        }
        let single = net_sum_padded(&[tunnel(3).unwrap()]).unwrap();
        assert_eq!(single.realize(ReLU).eval1(-7.5).unwrap(), -7.5);
    }

    #[test]
    fn scalar_actions() {
        let id = identity_net(1).unwrap();
        assert_eq!(scalar_left(2.0, &id).unwrap().realize(ReLU).eval1(3.0).unwrap(), 6.0);
        assert_eq!(scalar_left(0.0, &id).unwrap().realize(ReLU).eval1(9.0).unwrap(), 0.0);
        // argument scaling feeds lambda * x through the net
        let sq_like = aff1(1.0, 1.0);
        let r = scalar_right(&sq_like, 3.0).unwrap();
        assert_eq!(r.realize(Identity).eval1(2.0).unwrap(), 7.0);
    }
}
