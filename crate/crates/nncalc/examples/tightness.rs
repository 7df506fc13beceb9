//! Measures how much of each advertised error budget the squaring, product,
//! and power networks actually use on dense sweeps. Ratios close to 1 mean
//! the construction runs right at its guarantee; small ratios reflect the
//! slack the chained triangle inequalities add.
//!
//! ```sh
//! cargo run -p nncalc --example tightness --release
//! ```

use nncalc::approx::{prd, sqr, PowerFamily, QEps};
use nncalc::network::Activation;

fn main() {
    for (q, eps) in [(2.5, 1e-2), (3.0, 1e-3), (5.0, 1e-1)] {
        let qe = QEps::new(q, eps).unwrap();
        let net = sqr(&qe).unwrap();
        let r = net.realize(Activation::ReLU);
        let radius = 2.0 * (eps / 2.0f64).powf(-1.0 / (q - 2.0));
        let mut worst = 0.0f64;
        for i in 0..=20000 {
            let x = -radius + 2.0 * radius * i as f64 / 20000.0;
            let v = r.eval1(x).unwrap();
            let ratio = (x * x - v).abs() / (eps * 1f64.max(x.abs().powf(q)));
            worst = worst.max(ratio);
        }
        println!("sqr q={q} eps={eps}: sup err / bound = {worst:.4}");

        let net = prd(&qe).unwrap();
        let r = net.realize(Activation::ReLU);
        let mut worst = 0.0f64;
        for i in 0..=200 {
            for j in 0..=200 {
                let x = -3.0 + 6.0 * i as f64 / 200.0;
                let y = -3.0 + 6.0 * j as f64 / 200.0;
                let v = r.eval(&[x, y]).unwrap()[0];
                let denom = eps * 1f64.max(x.abs().powf(q)).max(y.abs().powf(q));
                worst = worst.max((x * y - v).abs() / denom);
            }
        }
        println!("prd q={q} eps={eps}: sup err / bound = {worst:.4}");

        let fam = PowerFamily::new(4, qe).unwrap();
        let mut worst = 0.0f64;
        for n in 1..=4 {
            for i in 0..=600 {
                let x = -3.0 + 6.0 * i as f64 / 600.0;
                let err = (x.powi(n as i32) - fam.realized(n, x)).abs();
                worst = worst.max(err / fam.power_error_bound(n, x));
            }
        }
        println!("pwr q={q} eps={eps}: sup err / recursive bound = {worst:.4}");
    }
}
