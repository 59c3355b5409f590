//! Command-line front end: evaluates the gamma constants, checks the
//! trace-norm bounds on matrix files, emits the extremal families and seeded
//! random matrices, and runs the eigensolver, the nearest-diagonal solver,
//! and the simplex-torus maximization.
//!
//! Exit codes: 0 on success, 1 on usage or i/o errors, 2 when a checked
//! bound is violated (which signals an implementation bug, not bad input).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use zerodiag::bounds::{self, Verdict};
use zerodiag::extremal;
use zerodiag::gamma_max;
use zerodiag::io as matio;
use zerodiag::nearest_diag::{self, SolverOptions};
use zerodiag::rng::{random_matrix, Distribution};
use zerodiag::spectral;
use zerodiag::{Matrix64, MatrixKind};

#[derive(Parser)]
#[command(name = "zerodiag", version, about = "Trace-norm bounds and nearest-diagonal solvers for zero-diagonal symmetric and Hermitian matrices")]
struct Cli {
    /// Report format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Real,
    Hermitian,
}

impl From<KindArg> for MatrixKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Real => MatrixKind::RealSymmetric,
            KindArg::Hermitian => MatrixKind::Hermitian,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistArg {
    Gaussian,
    PmOne,
    UnitDisk,
}

impl From<DistArg> for Distribution {
    fn from(d: DistArg) -> Self {
        match d {
            DistArg::Gaussian => Distribution::Gaussian,
            DistArg::PmOne => Distribution::PmOne,
            DistArg::UnitDisk => Distribution::UnitDisk,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// J_n - I_n
    JnMinusIn,
    /// 11^T - v v^T for a balanced sign vector
    RealEquality,
    /// 11* - aa* over the n-th roots of unity
    HermExtremal,
    /// sgn(i - j) * i off the diagonal
    EMatrix,
    /// unit-modulus unitary conjugate of the e-matrix
    HermDual,
    /// complete bipartite adjacency on two half-blocks
    Bipartite,
    /// seeded random matrix (--kind, --dist, --zero-diag, --seed)
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate gamma_n by the sine-sum and closed-form routes.
    Gamma {
        #[arg(long)]
        n: usize,
    },
    /// Check the trace-norm lower bound for a matrix file.
    Verify {
        /// Which bound to check: 2/n (real) or tan(pi/2n) (hermitian).
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        file: PathBuf,
    },
    /// Emit a matrix family in the matrix JSON format.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        /// Order of the matrix (ignored when --signs is given).
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Kind for --family random.
        #[arg(long, value_enum, default_value_t = KindArg::Real)]
        kind: KindArg,
        /// Distribution for --family random.
        #[arg(long, value_enum, default_value_t = DistArg::Gaussian)]
        dist: DistArg,
        /// Zero the diagonal for --family random.
        #[arg(long, default_value_t = false)]
        zero_diag: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated sign vector for --family real-equality,
        /// e.g. "1,1,-1,-1"; defaults to +1 on the first half.
        #[arg(long)]
        signs: Option<String>,
    },
    /// Print the spectrum and the spectral/trace norms of a matrix file.
    Eig {
        #[arg(long)]
        file: PathBuf,
    },
    /// Solve min over real diagonals D of the spectral norm of A - D.
    NearestDiag {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 5000)]
        max_iters: usize,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[arg(long, default_value_t = 4)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Maximize sum d_i d_j |omega_i - omega_j| and compare with gamma_n.
    LemmaMax {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive minimum trace norm over zero-diagonal +/-1 matrices.
    SeidelMin {
        #[arg(long)]
        n: usize,
    },
}

/// A rendered report plus whether a checked bound failed.
struct Report {
    json: serde_json::Value,
    text: String,
    bound_violated: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(&cli.command) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", report.json),
                Format::Text => println!("{}", report.text),
            }
            if report.bound_violated {
                eprintln!("bound violated: this indicates an implementation bug");
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: &Command) -> Result<Report, String> {
    match command {
        Command::Gamma { n } => gamma_report(*n),
        Command::Verify { kind, file } => verify_report(*kind, file),
        Command::Construct {
            family,
            n,
            out,
            kind,
            dist,
            zero_diag,
            seed,
            signs,
        } => construct_report(*family, *n, out.as_deref(), *kind, *dist, *zero_diag, *seed, signs.as_deref()),
        Command::Eig { file } => eig_report(file),
        Command::NearestDiag {
            file,
            max_iters,
            tol,
            restarts,
            seed,
        } => nearest_diag_report(file, *max_iters, *tol, *restarts, *seed),
        Command::LemmaMax { n, restarts, seed } => lemma_max_report(*n, *restarts, *seed),
        Command::SeidelMin { n } => seidel_report(*n),
    }
}

fn gamma_report(n: usize) -> Result<Report, String> {
    if n == 0 {
        return Err("order must be positive".into());
    }
    let g = bounds::gamma::<f64>(n);
    let limit = 4.0 / std::f64::consts::PI;
    Ok(Report {
        json: json!({
            "n": n,
            "gamma": g.by_sum,
            "sum_form": g.by_sum,
            "closed_form": g.by_closed_form,
            "limit": limit,
        }),
        text: format!(
            "gamma({n}) = {:.15}\n  sum form    = {:.15}\n  closed form = {:.15}\n  limit (4/pi) = {limit:.15}",
            g.by_sum, g.by_sum, g.by_closed_form
        ),
        bound_violated: false,
    })
}

fn verify_report(kind: KindArg, file: &std::path::Path) -> Result<Report, String> {
    let a = matio::read_matrix::<f64>(file).map_err(|e| e.to_string())?;
    let report = match kind {
        KindArg::Real => bounds::check_real_bound(&a),
        KindArg::Hermitian => bounds::check_hermitian_bound(&a),
    }
    .map_err(|e| e.to_string())?;
    let verdict = report.verdict.to_string();
    Ok(Report {
        json: json!({
            "kind": kind_label(report.kind),
            "n": report.n,
            "trace_norm": report.trace_norm,
            "entrywise_l1": report.entrywise_l1,
            "ratio": report.ratio,
            "bound": report.bound,
            "slack": report.slack,
            "verdict": verdict,
            "is_equality": report.is_equality,
        }),
        text: format!(
            "n = {}, kind = {}\ntrace norm   = {:.12}\nentrywise L1 = {:.12}\nratio = {:.15}\nbound = {:.15}\nslack = {:+.3e}\nverdict: {} (equality: {})",
            report.n,
            kind_label(report.kind),
            report.trace_norm,
            report.entrywise_l1,
            report.ratio,
            report.bound,
            report.slack,
            report.verdict,
            report.is_equality
        ),
        bound_violated: report.verdict == Verdict::Fail,
    })
}

#[allow(clippy::too_many_arguments)]
fn construct_report(
    family: Family,
    n: usize,
    out: Option<&std::path::Path>,
    kind: KindArg,
    dist: DistArg,
    zero_diag: bool,
    seed: u64,
    signs: Option<&str>,
) -> Result<Report, String> {
    let a: Matrix64 = match family {
        Family::JnMinusIn => extremal::jn_minus_in(n).map_err(|e| e.to_string())?,
        Family::RealEquality => {
            let signs = match signs {
                Some(text) => parse_signs(text)?,
                None => {
                    let mut v = vec![1i8; n];
                    v[n / 2..].fill(-1);
                    v
                }
            };
            extremal::real_equality_family(&signs).map_err(|e| e.to_string())?
        }
        Family::HermExtremal => extremal::herm_extremal(n).map_err(|e| e.to_string())?,
        Family::EMatrix => extremal::e_matrix(n).map_err(|e| e.to_string())?,
        Family::HermDual => extremal::herm_dual_extremal(n).map_err(|e| e.to_string())?,
        Family::Bipartite => extremal::complete_bipartite(n).map_err(|e| e.to_string())?,
        Family::Random => random_matrix(kind.into(), n, dist.into(), zero_diag, seed)
            .map_err(|e| e.to_string())?,
    };
    let payload = matio::to_json_string(&a);
    if let Some(path) = out {
        std::fs::write(path, &payload).map_err(|e| e.to_string())?;
        let note = format!("wrote order-{} matrix to {}", a.n(), path.display());
        Ok(Report {
            json: json!({"written": path.display().to_string(), "n": a.n()}),
            text: note,
            bound_violated: false,
        })
    } else {
        Ok(Report {
            json: serde_json::from_str(&payload).map_err(|e| e.to_string())?,
            text: payload,
            bound_violated: false,
        })
    }
}

fn parse_signs(text: &str) -> Result<Vec<i8>, String> {
    text.split(',')
        .map(|tok| match tok.trim() {
            "1" | "+1" => Ok(1),
            "-1" => Ok(-1),
            other => Err(format!("invalid sign entry {other:?} (expected 1 or -1)")),
        })
        .collect()
}

fn eig_report(file: &std::path::Path) -> Result<Report, String> {
    let a = matio::read_matrix::<f64>(file).map_err(|e| e.to_string())?;
    let dec = spectral::eigh(&a).map_err(|e| e.to_string())?;
    let eigenvalues: Vec<f64> = dec.eigenvalues().to_vec();
    let text = format!(
        "n = {}, kind = {}\neigenvalues (descending): {:?}\ntrace norm = {:.12}\nspectral norm = {:.12}",
        a.n(),
        kind_label(a.kind()),
        eigenvalues,
        dec.trace_norm(),
        dec.spectral_norm()
    );
    Ok(Report {
        json: json!({
            "n": a.n(),
            "kind": kind_label(a.kind()),
            "eigenvalues": eigenvalues,
            "trace_norm": dec.trace_norm(),
            "spectral_norm": dec.spectral_norm(),
        }),
        text,
        bound_violated: false,
    })
}

fn nearest_diag_report(
    file: &std::path::Path,
    max_iters: usize,
    tol: f64,
    restarts: usize,
    seed: u64,
) -> Result<Report, String> {
    if max_iters == 0 || tol <= 0.0 {
        return Err("max-iters must be positive and tol must be > 0".into());
    }
    let a = matio::read_matrix::<f64>(file).map_err(|e| e.to_string())?;
    let opts = SolverOptions {
        max_iters,
        tol,
        restarts,
        seed,
        ..SolverOptions::default()
    };
    let result = nearest_diag::solve(&a, &opts).map_err(|e| e.to_string())?;
    let n = a.n();
    let max_off = a.entrywise_max_offdiag();
    let theorem_bound = match a.kind() {
        MatrixKind::RealSymmetric => n as f64 / 2.0 * max_off,
        MatrixKind::Hermitian => (std::f64::consts::PI / (2 * n) as f64).tan().recip() * max_off,
    };
    let within = result.value <= theorem_bound + 1e-6;
    Ok(Report {
        json: json!({
            "n": n,
            "kind": kind_label(a.kind()),
            "value": result.value,
            "lower_bound": result.lower_bound,
            "gap": result.gap,
            "d_star": result.d_star.values(),
            "iterations": result.iterations,
            "converged": result.converged,
            "theorem_bound": theorem_bound,
            "within_theorem": within,
        }),
        text: format!(
            "n = {n}, kind = {}\nvalue = {:.12}\nlower bound = {:.12} (gap {:.3e})\nd* = {:?}\ntheorem bound = {:.12} (within: {within})",
            kind_label(a.kind()),
            result.value,
            result.lower_bound,
            result.gap,
            result.d_star.values(),
            theorem_bound
        ),
        bound_violated: !within,
    })
}

fn lemma_max_report(n: usize, restarts: usize, seed: u64) -> Result<Report, String> {
    if n == 0 || restarts == 0 {
        return Err("order and restarts must be positive".into());
    }
    let result = gamma_max::alternating_maximize::<f64>(n, restarts, seed);
    let gamma_n = bounds::gamma::<f64>(n).by_closed_form;
    let gap = gamma_n - result.value;
    // The maximum over the search domain is gamma_n; exceeding it signals a bug.
    let violated = result.value > gamma_n + 1e-9;
    Ok(Report {
        json: json!({
            "n": n,
            "value": result.value,
            "gamma_n": gamma_n,
            "gap": gap,
            "structure_match": result.structure_match,
            "restarts": result.restarts_used,
            "converged": result.converged,
        }),
        text: format!(
            "n = {n}\nmax value = {:.15}\ngamma_n   = {gamma_n:.15}\ngap = {gap:.3e}\nstructure match: {}\nrestarts: {}",
            result.value, result.structure_match, result.restarts_used
        ),
        bound_violated: violated,
    })
}

fn seidel_report(n: usize) -> Result<Report, String> {
    let (min_energy, _argmin) = bounds::seidel_min_energy::<f64>(n).map_err(|e| e.to_string())?;
    let expected = (2 * n - 2) as f64;
    let matches = (min_energy - expected).abs() <= 1e-8;
    Ok(Report {
        json: json!({
            "n": n,
            "min_energy": min_energy,
            "expected": expected,
            "matches_expected": matches,
        }),
        text: format!(
            "n = {n}\nminimum energy = {min_energy:.12}\nexpected (2n - 2) = {expected}\nmatch: {matches}"
        ),
        bound_violated: !matches,
    })
}

fn kind_label(kind: MatrixKind) -> &'static str {
    match kind {
        MatrixKind::RealSymmetric => "real",
        MatrixKind::Hermitian => "hermitian",
    }
}
