//! Property tests for the representation invariants and the helper
//! inequalities used by the error bounds.

use proptest::prelude::*;

use nncalc::approx::p_bound;
use nncalc::{Activation, Layer, Matrix, Network};

fn arb_network() -> impl Strategy<Value = Network> {
    // width tuple first, then entries for each layer
    prop::collection::vec(1usize..=5, 2..=5).prop_flat_map(|widths| {
        let mut layer_strategies = Vec::new();
        for k in 1..widths.len() {
            let (rows, cols) = (widths[k], widths[k - 1]);
            let entries = prop::collection::vec(-1e3f64..1e3, rows * cols);
            let bias = prop::collection::vec(-1e3f64..1e3, rows);
            layer_strategies.push((Just(rows), Just(cols), entries, bias));
        }
        layer_strategies.prop_map(|layers| {
            let layers = layers
                .into_iter()
                .map(|(rows, cols, entries, bias)| {
                    Layer::new(Matrix::new(rows, cols, entries).unwrap(), bias).unwrap()
                })
                .collect();
            Network::new(layers).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn json_round_trip_preserves_networks(net in arb_network()) {
        let back = Network::from_json(&net.to_json()).unwrap();
        prop_assert_eq!(net, back);
    }

    #[test]
    fn measurements_are_consistent(net in arb_network()) {
        let lay = net.lay();
        let depth = net.dep();
        prop_assert_eq!(lay.len(), depth + 1);
        prop_assert_eq!(net.inn(), lay[0]);
        prop_assert_eq!(net.out(), lay[depth]);
        prop_assert_eq!(net.hid(), depth - 1);
        let recount: usize = (1..=depth).map(|k| lay[k] * (lay[k - 1] + 1)).sum();
        prop_assert_eq!(net.param(), recount);
        for (i, w) in lay.iter().enumerate() {
            prop_assert_eq!(net.wid(i), *w);
        }
        prop_assert_eq!(net.wid(depth + 1), 0);
        prop_assert_eq!(net.wid(depth + 17), 0);
    }

    #[test]
    fn realization_widths_match(net in arb_network(), seedling in -10f64..10.0) {
        let r = net.realize(Activation::ReLU);
        prop_assert_eq!(r.input_width(), net.inn());
        prop_assert_eq!(r.output_width(), net.out());
        let x = vec![seedling; net.inn()];
        let out = r.eval(&x).unwrap();
        prop_assert_eq!(out.len(), net.out());
        // determinism: identical inputs give bit-identical outputs
        prop_assert_eq!(out, r.eval(&x).unwrap());
    }

    /// max{1, |x|^q, |y|^q} scaled by eps never exceeds the separated sum.
    #[test]
    fn scaled_max_below_separated_sum(
        eps in 1e-9f64..10.0,
        q in 2.001f64..8.0,
        x in -50f64..50.0,
        y in -50f64..50.0,
    ) {
        let lhs = eps * 1f64.max(x.abs().powf(q)).max(y.abs().powf(q));
        let rhs = eps + eps * x.abs().powf(q) + eps * y.abs().powf(q);
        prop_assert!(lhs <= rhs);
    }

    /// The power-network majorant recursion is monotone in its order.
    #[test]
    fn majorant_is_monotone(eps in 1e-6f64..1.0, x in -5f64..5.0) {
        let mut prev = p_bound(1, x, eps);
        for i in 2..=6 {
            let next = p_bound(i, x, eps);
            prop_assert!(next >= prev);
            prev = next;
        }
    }
}
