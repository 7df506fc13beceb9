//! Command-line front end: build catalog networks, evaluate them, sweep
//! them against reference functions, and run the verification suites.
//!
//! Exit codes: 0 on success, 1 when an asserted verification check fails,
//! 2 on usage errors (including violated construction preconditions).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use nncalc::approx::{self, QEps};
use nncalc::interp::{self, SampleSet};
use nncalc::network::{Activation, Matrix, Network};
use nncalc::ops;
use nncalc::quad::{self, MeshSpec};
use nncalc::verify;

#[derive(Parser)]
#[command(name = "nncalc", version, about = "Exact ReLU network construction and verification")]
struct Cli {
    /// Growth exponent for approximation networks (must exceed 2)
    #[arg(long, global = true, default_value_t = 2.5)]
    q: f64,

    /// Target accuracy for approximation networks
    #[arg(long, global = true, default_value_t = 0.01)]
    eps: f64,

    /// Seed for the randomized verification suites
    #[arg(long, global = true, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,

    /// Write the primary output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a network, print its structure, and optionally save it as JSON
    Build {
        kind: Kind,
        #[command(flatten)]
        params: KindArgs,
    },
    /// Evaluate a saved network on an input vector (ReLU instantiation)
    Eval {
        /// Path to a network JSON file
        net: PathBuf,
        /// Comma-separated input components
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        x: Vec<f64>,
    },
    /// Sweep a network against a reference function and emit CSV
    Sweep {
        kind: Kind,
        #[command(flatten)]
        params: KindArgs,
        /// Reference function (defaults to the natural one for the kind)
        #[arg(long)]
        reference: Option<Reference>,
        /// Sweep range start
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        lo: f64,
        /// Sweep range end
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        hi: f64,
        /// Number of sweep points (per axis for two-input networks)
        #[arg(long, default_value_t = 1001)]
        points: usize,
        /// For e_net: emit a mesh-refinement table (N, n, q, eps,
        /// measured_error, bound) for the integrand x^2 instead
        #[arg(long)]
        refine: bool,
    },
    /// Run a verification suite and print the report as JSON
    Verify {
        /// One of: core, algebra, phi, sqr, prd, pwr, poly, transcendental,
        /// quadrature, interpolation, all
        suite: String,
    },
    /// Print a network as JSON without the structure summary
    Export {
        kind: Kind,
        #[command(flatten)]
        params: KindArgs,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Kind {
    Aff,
    Cpy,
    Sm,
    Id,
    Tun,
    Act,
    #[value(name = "phi_k", alias = "phi-k")]
    PhiK,
    Phi,
    Sqr,
    Prd,
    Pwr,
    Pnm,
    Xpn,
    Csn,
    Sne,
    Trp,
    Etr,
    #[value(name = "e_net", alias = "e-net")]
    ENet,
    Nrm,
    Mxm,
    Mc,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Reference {
    Identity,
    Square,
    Product,
    Power,
    Poly,
    Exp,
    Cos,
    Sin,
    ExpIntegral,
    MaxConv,
}

#[derive(Args)]
struct KindArgs {
    /// Order / copy count / tunnel depth, by kind
    #[arg(long)]
    n: Option<usize>,

    /// Block width for cpy and sm
    #[arg(long)]
    k: Option<usize>,

    /// Dimension for id, act, nrm, mxm
    #[arg(long)]
    d: Option<usize>,

    /// Refinement level for phi_k
    #[arg(long)]
    level: Option<usize>,

    /// Rows of an explicit affine weight matrix
    #[arg(long)]
    rows: Option<usize>,

    /// Columns of an explicit affine weight matrix
    #[arg(long)]
    cols: Option<usize>,

    /// Row-major weight entries for aff
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Option<Vec<f64>>,

    /// Bias entries for aff
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    bias: Option<Vec<f64>>,

    /// Polynomial coefficients, constant term first
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    coeffs: Option<Vec<f64>>,

    /// Panel width for trp and etr
    #[arg(long, allow_hyphen_values = true)]
    h: Option<f64>,

    /// Panel count for etr and e_net meshes
    #[arg(long = "N")]
    panels: Option<usize>,

    /// Mesh start for e_net
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,

    /// Mesh end for e_net
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,

    /// Sample-set JSON file for mc
    #[arg(long)]
    samples: Option<PathBuf>,
}

impl KindArgs {
    fn need_n(&self, what: &str) -> Result<usize> {
        self.n.ok_or_else(|| anyhow!("{what} requires --n"))
    }

    fn need_k(&self, what: &str) -> Result<usize> {
        self.k.ok_or_else(|| anyhow!("{what} requires --k"))
    }

    fn need_d(&self, what: &str) -> Result<usize> {
        self.d.ok_or_else(|| anyhow!("{what} requires --d"))
    }

    fn sample_set(&self) -> Result<SampleSet> {
        let path = self
            .samples
            .as_ref()
            .ok_or_else(|| anyhow!("mc requires --samples <file.json>"))?;
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        Ok(serde_json::from_str(&text)?)
    }
}

fn build_network(kind: Kind, p: &KindArgs, q: f64, eps: f64) -> Result<(Network, String)> {
    let qe = || QEps::new(q, eps);
    Ok(match kind {
        Kind::Aff => {
            let rows = p.rows.ok_or_else(|| anyhow!("aff requires --rows"))?;
            let cols = p.cols.ok_or_else(|| anyhow!("aff requires --cols"))?;
            let weights = p.weights.clone().ok_or_else(|| anyhow!("aff requires --weights"))?;
            let bias = p.bias.clone().unwrap_or_else(|| vec![0.0; rows]);
            let net = ops::affine(Matrix::new(rows, cols, weights)?, bias)?;
            (net, format!("aff({rows}x{cols})"))
        }
        Kind::Cpy => {
            let (n, k) = (p.need_n("cpy")?, p.need_k("cpy")?);
            (ops::cpy(n, k)?, format!("cpy(n={n},k={k})"))
        }
        Kind::Sm => {
            let (n, k) = (p.need_n("sm")?, p.need_k("sm")?);
            (ops::sm(n, k)?, format!("sm(n={n},k={k})"))
        }
        Kind::Id => {
            let d = p.need_d("id")?;
            (ops::identity_net(d)?, format!("id(d={d})"))
        }
        Kind::Tun => {
            let n = p.need_n("tun")?;
            (ops::tunnel(n)?, format!("tun(n={n})"))
        }
        Kind::Act => {
            let d = p.need_d("act")?;
            (approx::act_net(d)?, format!("act(d={d})"))
        }
        Kind::PhiK => {
            let k = p.level.or(p.k).ok_or_else(|| anyhow!("phi_k requires --level (or --k)"))?;
            (approx::phi_k(k)?, format!("phi_k(k={k})"))
        }
        Kind::Phi => (approx::phi(eps)?, format!("phi(eps={eps})")),
        Kind::Sqr => (approx::sqr(&qe()?)?, format!("sqr(q={q},eps={eps})")),
        Kind::Prd => (approx::prd(&qe()?)?, format!("prd(q={q},eps={eps})")),
        Kind::Pwr => {
            let n = p.need_n("pwr")?;
            (approx::pwr(n, &qe()?)?, format!("pwr(n={n},q={q},eps={eps})"))
        }
        Kind::Pnm => {
            let coeffs = p.coeffs.clone().ok_or_else(|| anyhow!("pnm requires --coeffs"))?;
            let n = coeffs.len().saturating_sub(1);
            (approx::pnm(&coeffs, &qe()?)?, format!("pnm(n={n},q={q},eps={eps})"))
        }
        Kind::Xpn => {
            let n = p.need_n("xpn")?;
            (approx::xpn(n, &qe()?)?, format!("xpn(n={n},q={q},eps={eps})"))
        }
        Kind::Csn => {
            let n = p.need_n("csn")?;
            (approx::csn(n, &qe()?)?, format!("csn(n={n},q={q},eps={eps})"))
        }
        Kind::Sne => {
            let n = p.need_n("sne")?;
            (approx::sne(n, &qe()?)?, format!("sne(n={n},q={q},eps={eps})"))
        }
        Kind::Trp => {
            let h = p.h.ok_or_else(|| anyhow!("trp requires --h"))?;
            (quad::trp(h)?, format!("trp(h={h})"))
        }
        Kind::Etr => {
            let n = p.panels.ok_or_else(|| anyhow!("etr requires --N"))?;
            let h = p.h.ok_or_else(|| anyhow!("etr requires --h"))?;
            (quad::etr(n, h)?, format!("etr(N={n},h={h})"))
        }
        Kind::ENet => {
            let order = p.need_n("e_net")?;
            let panels = p.panels.ok_or_else(|| anyhow!("e_net requires --N"))?;
            let (a, b) = (p.a.unwrap_or(0.0), p.b.unwrap_or(1.0));
            let mesh = MeshSpec::new(a, b, panels)?;
            (
                quad::e_net(order, &mesh, &qe()?)?,
                format!("e_net(n={order},N={panels},a={a},b={b},q={q},eps={eps})"),
            )
        }
        Kind::Nrm => {
            let d = p.need_d("nrm")?;
            (interp::nrm(d)?, format!("nrm(d={d})"))
        }
        Kind::Mxm => {
            let d = p.need_d("mxm")?;
            (interp::mxm(d)?, format!("mxm(d={d})"))
        }
        Kind::Mc => {
            let s = p.sample_set()?;
            let spec = format!("mc(d={},N={},L={})", s.dim(), s.len(), s.lipschitz());
            (interp::max_conv(&s)?, spec)
        }
    })
}

fn default_reference(kind: Kind) -> Result<Reference> {
    Ok(match kind {
        Kind::Tun | Kind::Id => Reference::Identity,
        Kind::Phi | Kind::PhiK | Kind::Sqr => Reference::Square,
        Kind::Prd => Reference::Product,
        Kind::Pwr => Reference::Power,
        Kind::Pnm => Reference::Poly,
        Kind::Xpn => Reference::Exp,
        Kind::Csn => Reference::Cos,
        Kind::Sne => Reference::Sin,
        Kind::ENet => Reference::ExpIntegral,
        Kind::Mc => Reference::MaxConv,
        _ => bail!("no default reference for this kind; pass --reference"),
    })
}

fn fmt_shortest(v: f64) -> String {
    format!("{v}")
}

fn lay_string(net: &Network) -> String {
    let parts: Vec<String> = net.lay().iter().map(|w| w.to_string()).collect();
    format!("({})", parts.join(","))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_build(kind: Kind, p: &KindArgs, q: f64, eps: f64, out: &Option<PathBuf>) -> Result<()> {
    let (net, spec) = build_network(kind, p, q, eps)?;
    println!("spec: {spec}");
    println!("param: {}", net.param());
    println!("dep: {}", net.dep());
    println!("lay: {}", lay_string(&net));
    println!("hid: {}", net.hid());
    println!("inn: {}", net.inn());
    println!("out: {}", net.out());
    if let Some(path) = out {
        let mut text = net.to_json();
        text.push('\n');
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
        println!("saved: {}", path.display());
    }
    Ok(())
}

fn cmd_eval(path: &PathBuf, x: &[f64]) -> Result<()> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let net = Network::from_json(&text)?;
    let out = net.realize(Activation::ReLU).eval(x)?;
    let parts: Vec<String> = out.iter().map(|v| format!("{v:.16e}")).collect();
    println!("{}", parts.join(" "));
    Ok(())
}

type RefFn = Box<dyn Fn(&[f64]) -> f64>;

struct SweepTable {
    two_input: bool,
    rows: Vec<(Vec<f64>, f64, f64)>,
    sup: f64,
}

fn sweep_reference(
    reference: Reference,
    p: &KindArgs,
    mesh: Option<&MeshSpec>,
    samples: Option<&SampleSet>,
) -> Result<RefFn> {
    Ok(match reference {
        Reference::Identity => Box::new(|x: &[f64]| x[0]),
        Reference::Square => Box::new(|x: &[f64]| x[0] * x[0]),
        Reference::Product => Box::new(|x: &[f64]| x[0] * x[1]),
        Reference::Power => {
            let n = p.need_n("power reference")? as i32;
            Box::new(move |x: &[f64]| x[0].powi(n))
        }
        Reference::Poly => {
            let coeffs = p
                .coeffs
                .clone()
                .ok_or_else(|| anyhow!("poly reference requires --coeffs"))?;
            Box::new(move |x: &[f64]| {
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * x[0].powi(i as i32))
                    .sum()
            })
        }
        Reference::Exp => Box::new(|x: &[f64]| x[0].exp()),
        Reference::Cos => Box::new(|x: &[f64]| x[0].cos()),
        Reference::Sin => Box::new(|x: &[f64]| x[0].sin()),
        Reference::ExpIntegral => {
            let mesh = *mesh.ok_or_else(|| anyhow!("exp-integral reference needs a mesh"))?;
            Box::new(move |c: &[f64]| (c[0] * (mesh.b() - mesh.a())).exp())
        }
        Reference::MaxConv => {
            let s = samples
                .cloned()
                .ok_or_else(|| anyhow!("max-conv reference requires --samples"))?;
            Box::new(move |x: &[f64]| interp::max_conv_closed_form(&s, x))
        }
    })
}

struct SweepOpts {
    reference: Option<Reference>,
    lo: f64,
    hi: f64,
    points: usize,
}

fn run_sweep(kind: Kind, p: &KindArgs, q: f64, eps: f64, opts: &SweepOpts) -> Result<SweepTable> {
    let SweepOpts { reference, lo, hi, points } = *opts;
    if points < 2 {
        bail!("sweep requires at least 2 points");
    }
    if lo >= hi {
        bail!("sweep requires lo < hi");
    }
    let (net, _) = build_network(kind, p, q, eps)?;
    let reference = match reference {
        Some(r) => r,
        None => default_reference(kind)?,
    };
    let mesh = match kind {
        Kind::ENet => Some(MeshSpec::new(
            p.a.unwrap_or(0.0),
            p.b.unwrap_or(1.0),
            p.panels.ok_or_else(|| anyhow!("e_net requires --N"))?,
        )?),
        _ => None,
    };
    let samples = match kind {
        Kind::Mc => Some(p.sample_set()?),
        _ => None,
    };
    let reference_fn = sweep_reference(reference, p, mesh.as_ref(), samples.as_ref())?;
    let r = net.realize(Activation::ReLU);
    let axis: Vec<f64> = (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect();

    let mut rows = Vec::new();
    let mut sup: f64 = 0.0;
    if net.inn() == 2 && kind == Kind::Prd {
        for &x in &axis {
            for &y in &axis {
                let got = r.eval(&[x, y])?[0];
                let want = reference_fn(&[x, y]);
                let err = (got - want).abs();
                sup = sup.max(err);
                rows.push((vec![x, y], got, want));
            }
        }
        return Ok(SweepTable { two_input: true, rows, sup });
    }
    for &x in &axis {
        let input = match kind {
            // constant integrand sampled at every mesh node
            Kind::ENet => vec![x; net.inn()],
            _ if net.inn() == 1 => vec![x],
            _ => bail!("sweep supports scalar-input networks (or prd, e_net)"),
        };
        let got = r.eval(&input)?[0];
        let want = reference_fn(&[x]);
        let err = (got - want).abs();
        sup = sup.max(err);
        rows.push((vec![x], got, want));
    }
    Ok(SweepTable { two_input: false, rows, sup })
}

fn sweep_csv(table: &SweepTable) -> String {
    let mut text = String::new();
    if table.two_input {
        text.push_str("x1,x2,net_value,reference_value,abs_error\n");
    } else {
        text.push_str("x,net_value,reference_value,abs_error\n");
    }
    for (xs, got, want) in &table.rows {
        let coords: Vec<String> = xs.iter().map(|v| fmt_shortest(*v)).collect();
        text.push_str(&format!(
            "{},{},{},{}\n",
            coords.join(","),
            fmt_shortest(*got),
            fmt_shortest(*want),
            fmt_shortest((got - want).abs())
        ));
    }
    let blanks = if table.two_input { ",,,," } else { ",,," };
    text.push_str(&format!("sup{blanks}{}\n", fmt_shortest(table.sup)));
    text
}

/// Mesh-refinement convergence table for the exp-of-integral network on the
/// integrand x^2: doubling panel counts up to the requested N, one row of
/// (N, n, q, eps, measured_error, bound) each.
fn refine_csv(p: &KindArgs, q: f64, eps: f64) -> Result<String> {
    let order = p.need_n("e_net")?;
    let max_panels = p.panels.ok_or_else(|| anyhow!("e_net requires --N"))?;
    let (a, b) = (p.a.unwrap_or(0.0), p.b.unwrap_or(1.0));
    let qe = QEps::new(q, eps)?;
    let exact = ((b * b * b - a * a * a) / 3.0).exp();
    let mut text = String::from("N,n,q,eps,measured_error,bound\n");
    let mut panels = 2usize;
    while panels <= max_panels.max(2) {
        let mesh = MeshSpec::new(a, b, panels)?;
        let net = quad::e_net(order, &mesh, &qe)?;
        let samples = mesh.sample(|x| x * x);
        let got = net.realize(Activation::ReLU).eval(&samples)?[0];
        let measured = (exact - got).abs();
        let mut trap = 0.0;
        for w in samples.windows(2) {
            trap += mesh.h() * (w[0] + w[1]) / 2.0;
        }
        // |f''| = 2 for the x^2 integrand
        let remainder = (b - a).powi(3) / (12.0 * (panels * panels) as f64) * 2.0;
        let bound = quad::e_net_error_bound(order, &qe, trap, remainder)?;
        text.push_str(&format!(
            "{panels},{order},{},{},{},{}\n",
            fmt_shortest(q),
            fmt_shortest(eps),
            fmt_shortest(measured),
            fmt_shortest(bound)
        ));
        panels *= 2;
    }
    Ok(text)
}

fn cmd_verify(suite: &str, seed: u64, out: &Option<PathBuf>) -> Result<i32> {
    let checks = verify::run_suite(suite, seed)?;
    let mut text = serde_json::to_string_pretty(&checks)?;
    text.push('\n');
    emit(out, &text)?;
    let failed = checks.iter().filter(|c| c.failed()).count();
    let asserted = checks.iter().filter(|c| c.pass.is_some()).count();
    let reported = checks.len() - asserted;
    eprintln!(
        "suite {suite}: {} checks ({} asserted, {} reported-only), {} failed",
        checks.len(),
        asserted,
        reported,
        failed
    );
    Ok(if failed > 0 { 1 } else { 0 })
}

fn run(cli: Cli) -> Result<i32> {
    match &cli.cmd {
        Cmd::Build { kind, params } => {
            cmd_build(*kind, params, cli.q, cli.eps, &cli.out)?;
            Ok(0)
        }
        Cmd::Eval { net, x } => {
            cmd_eval(net, x)?;
            Ok(0)
        }
        Cmd::Sweep { kind, params, reference, lo, hi, points, refine } => {
            if *refine {
                if *kind != Kind::ENet {
                    bail!("--refine is only meaningful for e_net");
                }
                emit(&cli.out, &refine_csv(params, cli.q, cli.eps)?)?;
                return Ok(0);
            }
            let opts = SweepOpts { reference: *reference, lo: *lo, hi: *hi, points: *points };
            let table = run_sweep(*kind, params, cli.q, cli.eps, &opts)?;
            emit(&cli.out, &sweep_csv(&table))?;
            Ok(0)
        }
        Cmd::Verify { suite } => cmd_verify(suite, cli.seed, &cli.out),
        Cmd::Export { kind, params } => {
            let (net, _) = build_network(*kind, params, cli.q, cli.eps)?;
            let mut text = net.to_json();
            text.push('\n');
            emit(&cli.out, &text)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
