//! nullkappa: null varieties, kappa, eigenvalues, and verification suites
//! for balanced domains.
//!
//! Exit codes: 0 pass, 1 check failure, 2 usage/parse error, 3 numerical
//! failure.

use nullkappa_cli::{report, specfile, suites, sweep};

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use nullkappa_core::counterex;
use nullkappa_core::domains::RadialProfile;
use nullkappa_core::nullvariety::{self, RootResult};
use nullkappa_core::perturb;
use nullkappa_core::specialfun::bessel_zero;
use nullkappa_core::spectral;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use report::{CheckRow, Format, VerificationReport};

#[derive(Parser)]
#[command(name = "nullkappa", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute kappa and the argmin direction for a domain spec file.
    Kappa {
        #[arg(long)]
        spec: PathBuf,
        /// Direction samples on [0, pi).
        #[arg(long, default_value_t = nullvariety::DEFAULT_ANGULAR_RESOLUTION)]
        resolution: usize,
        /// Optional search bound; reports "exceeds" when no root below it.
        #[arg(long)]
        bound: Option<f64>,
        /// Also print the full null curve as CSV.
        #[arg(long)]
        curve: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute Dirichlet and Neumann eigenvalues for a domain spec file.
    Eigen {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Corpus size (per family) for randomized suites.
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (sweep-style suites only; checks stay ordered).
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Sweep a parametric domain family and emit CSV.
    Sweep {
        /// Family file (see sweep module docs for the schema).
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Run the counterexample constructions.
    Counterexample {
        /// Spike count for the Theorem 2.5 domain.
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[arg(long, default_value_t = 0.2)]
        delta_tilde: f64,
        /// Target constants for the interval-union construction.
        #[arg(long, value_delimiter = ',', default_values_t = [5.0, 10.0, 20.0])]
        c: Vec<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// First-order perturbation quantities for a radial profile.
    Perturb {
        /// Cosine coefficients of F (index m drives cos(2(m+1) theta)).
        #[arg(long, value_delimiter = ',', default_values_t = [1.0])]
        cos: Vec<f64>,
        /// Sine coefficients of F.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        sin: Vec<f64>,
        /// Also run the one-sided finite-difference check at this eps.
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Kappa { spec, resolution, bound, curve, format, out } => {
            let (file, domain) = specfile::load(&spec)?;
            let mut text = String::new();
            if let Some(b) = bound {
                // single certified question: any root at or below the bound?
                let mut min = f64::INFINITY;
                let mut any_root: Option<f64> = None;
                for k in 0..resolution {
                    let theta = std::f64::consts::PI * k as f64 / resolution as f64;
                    let e = [theta.cos(), theta.sin()];
                    match nullvariety::first_root(&domain, e, Some(b))? {
                        RootResult::Root(r) => {
                            if any_root.map_or(true, |x| r < x) {
                                any_root = Some(r);
                            }
                        }
                        RootResult::Exceeds(x) => min = min.min(x),
                    }
                }
                match any_root {
                    Some(r) => text.push_str(&format!("{}: kappa = {r:.9}\n", file.label())),
                    None => text.push_str(&format!("{}: exceeds({min:.9})\n", file.label())),
                }
            } else {
                let res = nullvariety::kappa(&domain, resolution)?;
                match res.kappa {
                    RootResult::Root(r) => text.push_str(&format!(
                        "{}: kappa = {r:.9} at direction angle {:.9}\n",
                        file.label(),
                        res.argmin_direction
                    )),
                    RootResult::Exceeds(x) => {
                        text.push_str(&format!("{}: exceeds({x:.9})\n", file.label()))
                    }
                }
                if curve || format == Format::Csv {
                    text.push_str("angle,first_root\n");
                    for (t, r) in &res.per_direction_roots {
                        text.push_str(&format!("{t:.9},{:.9}\n", r.value_or_bound()));
                    }
                }
            }
            emit(&text, out.as_ref())?;
            Ok(0)
        }
        Command::Eigen { spec, count, format, out } => {
            let (file, domain) = specfile::load(&spec)?;
            let d = spectral::dirichlet_eigs(&domain, count)?;
            let n = spectral::neumann_eigs(&domain, count)?;
            let text = match format {
                Format::Csv => {
                    let mut t = String::from("index,dirichlet,neumann,dirichlet_accuracy\n");
                    for i in 0..count {
                        t.push_str(&format!(
                            "{},{:.10},{:.10},{:.3e}\n",
                            i + 1,
                            d.dirichlet[i],
                            n.neumann[i],
                            d.accuracy[i]
                        ));
                    }
                    t
                }
                Format::Json => serde_json::json!({
                    "domain": file.label(),
                    "method": format!("{:?}", d.method),
                    "dirichlet": d.dirichlet,
                    "neumann": n.neumann,
                    "accuracy": d.accuracy,
                })
                .to_string()
                    + "\n",
                Format::Table => {
                    let mut t = format!("{} ({:?})\n", file.label(), d.method);
                    t.push_str("  k        lambda_k            mu_k    accuracy\n");
                    for i in 0..count {
                        t.push_str(&format!(
                            "{:>3} {:>15.8} {:>15.8} {:>11.3e}\n",
                            i + 1,
                            d.dirichlet[i],
                            n.neumann[i],
                            d.accuracy[i]
                        ));
                    }
                    t
                }
            };
            emit(&text, out.as_ref())?;
            Ok(0)
        }
        Command::Verify { suite, seed, count, format, out, workers: _ } => {
            let rep = suites::run_suite(&suite, seed, count)?;
            emit(&rep.render(format), out.as_ref())?;
            Ok(if rep.all_pass() { 0 } else { 1 })
        }
        Command::Sweep { spec, out, workers } => {
            let csv = sweep::run(&spec, workers)?;
            emit(&csv, out.as_ref())?;
            Ok(0)
        }
        Command::Counterexample { n, delta_tilde, c, seed, format, out } => {
            let mut rep = VerificationReport::new("counterexample", seed, 720, n);
            let j11 = bessel_zero(1.0, 1)?;
            let zeta = counterex::auto_zeta(delta_tilde)?;
            let spiky = counterex::verify_spiky(n, &zeta, j11, 720, 512)?;
            rep.push(CheckRow::positive(
                format!("spiky n={n} grid minimum (delta = {:.6})", zeta.delta),
                spiky.min_value,
            ));
            rep.push(CheckRow::flag("spiky kappa > j11 certified", spiky.certified));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for &cc in &c {
                let inst = counterex::nazarov_search(cc, &mut rng)?;
                let bound = counterex::interval_union_kappa(&inst);
                rep.push(CheckRow::positive(
                    format!("nazarov C={cc} margin (n = {})", inst.n),
                    inst.margin,
                ));
                rep.push(CheckRow::le(
                    format!("nazarov C={cc} product bound"),
                    2.0 * cc / 10.0,
                    bound.product,
                    0.0,
                ));
            }
            emit(&rep.render(format), out.as_ref())?;
            Ok(if rep.all_pass() { 0 } else { 1 })
        }
        Command::Perturb { cos, sin, eps, format, out } => {
            let f = RadialProfile::new(cos, sin);
            let p = perturb::perturbation_report(&f);
            let mut rep = VerificationReport::new("perturb", 0, 0, 0);
            rep.push(CheckRow {
                name: "d sqrt(lambda_2) / d eps".into(),
                lhs: p.d_sqrt_lambda2,
                rhs: 0.0,
                relation: "<=".into(),
                margin: -p.d_sqrt_lambda2,
                pass: true,
            });
            rep.push(CheckRow {
                name: "d kappa / d eps".into(),
                lhs: p.d_kappa,
                rhs: p.d_sqrt_lambda2,
                relation: "<=".into(),
                margin: p.d_sqrt_lambda2 - p.d_kappa,
                pass: p.d_kappa <= p.d_sqrt_lambda2 + 1e-9,
            });
            rep.push(CheckRow::le("inequality (p1)", p.lhs_p1, p.rhs_p1, 1e-9));
            rep.push(CheckRow {
                name: "canonical rotation angle".into(),
                lhs: p.rotation_angle,
                rhs: 0.0,
                relation: "(info)".into(),
                margin: 0.0,
                pass: true,
            });
            if let Some(eps) = eps {
                let fd = perturb::finite_difference_check(&f, eps)?;
                rep.push(CheckRow::eq(
                    format!("kappa quotient at eps = {eps}"),
                    fd.kappa_quotient,
                    fd.d_kappa,
                    1e-2,
                ));
                rep.push(CheckRow::eq(
                    format!("sqrt(lambda_2) quotient at eps = {eps}"),
                    fd.sqrt_lambda2_quotient,
                    fd.d_sqrt_lambda2,
                    5e-2,
                ));
            }
            emit(&rep.render(format), out.as_ref())?;
            Ok(if rep.all_pass() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse(); // clap exits with code 2 on usage errors
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            // distinguish numerical failures (core errors) from bad input
            let numerical = err.downcast_ref::<nullkappa_core::Error>().is_some();
            ExitCode::from(if numerical { 3 } else { 2 })
        }
    }
}
