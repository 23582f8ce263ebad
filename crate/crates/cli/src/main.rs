mod output;
mod sweep;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use krein_csym::checks;
use krein_csym::expr::ExprWeyl;
use krein_csym::extensions::{classify_with_tol, csym_of_extension_with_tol, k_eigenvalues_with_tol, ExtParams};
use krein_csym::model::{closed_form_eigenvalues_with_tol, PointInteraction};
use krein_csym::oracle::{scan_spectrum, OracleConfig, OuterBoundary};
use krein_csym::weyl::{find_discrete_spectrum, OpenInterval, SpectrumOptions, SpectrumReport, WeylFn};
use krein_csym::Error;
use serde_json::{json, Value};

use output::CommandResult;

const TOL_ENV: &str = "KREIN_CSYM_TOL";
const DEFAULT_EXACT_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "krein-csym", version, about = "J-self-adjoint extensions with stable C-symmetry")]
struct Cli {
    /// Angles (φ, ξ, ω and angle grids) are given in degrees.
    #[arg(long, global = true)]
    degrees: bool,
    /// Report wall-clock time in `timing_ms` (otherwise null, keeping output reproducible).
    #[arg(long, global = true)]
    timing: bool,
    /// Tolerance for ζ = 0, φ = π/2 and the stability margin [env: KREIN_CSYM_TOL, default 1e-9].
    #[arg(long, global = true)]
    exact_tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify an extension and report its C-symmetry.
    Classify(ParamArgs),
    /// Negative eigenvalues from the channel solver and the closed form.
    Spectrum(SpectrumArgs),
    /// Finite-difference shooting oracle with comparison to the closed form.
    Oracle(OracleArgs),
    /// Classification and eigenvalues over a parameter grid, written as CSV.
    Sweep(SweepArgs),
    /// Run the acceptance criteria and module invariants.
    Selftest,
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// ζ,φ,ξ,ω as one comma-separated list.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["zeta", "phi", "xi", "omega"])]
    params: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    zeta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Pointint,
    Expr,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value = "pointint")]
    model: Model,
    /// Weyl function in `mu` for `--model expr`, e.g. "2*i*sqrt(mu)".
    #[arg(long)]
    expr: Option<String>,
    /// Real interval `lo,hi` where the expression is regular (default: the scan interval).
    #[arg(long, allow_hyphen_values = true)]
    domain: Option<String>,
    /// Scan interval `lo,hi`.
    #[arg(long, allow_hyphen_values = true)]
    interval: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Outer {
    Dirichlet,
    Decaying,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long = "L", default_value_t = 20.0)]
    l: f64,
    #[arg(long = "N", default_value_t = 4000)]
    n: usize,
    /// Scan interval `r_min,r_max` with r_max < 0.
    #[arg(long, allow_hyphen_values = true, default_value = "-10,-1e-6")]
    scan: String,
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
    /// Bisection tolerance.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, value_enum, default_value = "decaying")]
    outer: Outer,
    /// Write the sampled determinant as CSV (r, re_det, im_det).
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Grid `a:b:n` or a single value.
    #[arg(long, allow_hyphen_values = true)]
    zeta: String,
    #[arg(long, allow_hyphen_values = true)]
    phi: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    xi: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    omega: String,
    #[arg(long, short)]
    out: PathBuf,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

/// Failure with its exit code: 2 for bad input, 3 for a violated
/// mathematical precondition.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotStable { .. } | Error::Infeasible { .. } => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<(Value, Value), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let name = match &cli.command {
        Command::Classify(_) => "classify",
        Command::Spectrum(_) => "spectrum",
        Command::Oracle(_) => "oracle",
        Command::Sweep(_) => "sweep",
        Command::Selftest => "selftest",
    };
    let result = exact_tol(&cli).and_then(|tol| {
        let ctx = Ctx { degrees: cli.degrees, tol };
        match &cli.command {
            Command::Classify(a) => cmd_classify(&ctx, a),
            Command::Spectrum(a) => cmd_spectrum(&ctx, a),
            Command::Oracle(a) => cmd_oracle(&ctx, a),
            Command::Sweep(a) => cmd_sweep(&ctx, a),
            Command::Selftest => cmd_selftest(),
        }
    });
    match result {
        Ok((inputs, outputs)) => {
            let failed = name == "selftest" && outputs["passed"] != Value::Bool(true);
            let res = CommandResult {
                command: name.to_string(),
                inputs,
                outputs,
                timing_ms: cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
                version: env!("CARGO_PKG_VERSION"),
            };
            let mut out = std::io::stdout().lock();
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(out, "{}", res.render());
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn exact_tol(cli: &Cli) -> Result<f64, Failure> {
    let tol = match (cli.exact_tol, std::env::var(TOL_ENV)) {
        (Some(t), _) => t,
        (None, Ok(s)) => s.trim().parse().map_err(|_| Failure::usage(format!("{TOL_ENV}='{s}' is not a number")))?,
        (None, Err(_)) => DEFAULT_EXACT_TOL,
    };
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Failure::usage(format!("tolerance {tol} must be finite and non-negative")));
    }
    Ok(tol)
}

struct Ctx {
    degrees: bool,
    tol: f64,
}

impl Ctx {
    fn angle(&self, x: f64) -> f64 {
        if self.degrees {
            x.to_radians()
        } else {
            x
        }
    }

    fn params(&self, a: &ParamArgs) -> Result<ExtParams, Failure> {
        let (z, p, x, o) = match &a.params {
            Some(s) => {
                let v = parse_list(s, 4, "--params")?;
                (v[0], v[1], v[2], v[3])
            }
            None => (
                a.zeta.unwrap_or(0.0),
                a.phi.ok_or_else(|| Failure::usage("give --params or at least --phi"))?,
                a.xi.unwrap_or(0.0),
                a.omega.unwrap_or(0.0),
            ),
        };
        let (p, x, o) = (self.angle(p), self.angle(x), self.angle(o));
        if !(0.0..=std::f64::consts::PI).contains(&p) {
            return Err(Failure::usage(format!("φ = {p} rad is outside [0, π]")));
        }
        Ok(ExtParams::new(z, p, x, o)?)
    }
}

fn parse_list(s: &str, n: usize, flag: &str) -> Result<Vec<f64>, Failure> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::usage(format!("{flag} expects {n} comma-separated numbers, got '{s}'")))?;
    if v.len() != n {
        return Err(Failure::usage(format!("{flag} expects {n} comma-separated numbers, got '{s}'")));
    }
    Ok(v)
}

fn pair(s: &str, flag: &str) -> Result<(f64, f64), Failure> {
    let v = parse_list(s, 2, flag)?;
    Ok((v[0], v[1]))
}

fn params_json(p: &ExtParams) -> Value {
    json!({"zeta": p.zeta, "phi": p.phi, "xi": p.xi, "omega": p.omega})
}

fn cmd_classify(ctx: &Ctx, a: &ParamArgs) -> Outcome {
    let p = ctx.params(a)?;
    let class = classify_with_tol(&p, ctx.tol);
    let k = k_eigenvalues_with_tol(&p, ctx.tol);
    let c = if class.is_stable { Some(csym_of_extension_with_tol(&p, ctx.tol)?) } else { None };
    let outputs = json!({
        "class": class,
        "k_plus": k.k_plus,
        "k_minus": k.k_minus,
        "abs_k_plus": k.k_plus.norm(),
        "abs_k_minus": k.k_minus.norm(),
        "chi": class.chi,
        "t": k.t,
        "csym": c,
    });
    Ok((json!({"params": params_json(&p), "exact_tol": ctx.tol}), outputs))
}

fn spectrum_json(rep: &SpectrumReport) -> Value {
    serde_json::to_value(rep).expect("serialisable")
}

fn cmd_spectrum(ctx: &Ctx, a: &SpectrumArgs) -> Outcome {
    let p = ctx.params(&a.params)?;
    let interval = a.interval.as_deref().map(|s| pair(s, "--interval")).transpose()?;
    let opts = SpectrumOptions { interval, exact_tol: ctx.tol, ..Default::default() };
    let mut inputs = json!({"params": params_json(&p), "model": "pointint", "interval": interval, "exact_tol": ctx.tol});

    let (solver, closed) = match a.model {
        Model::Pointint => {
            let solver = find_discrete_spectrum(&PointInteraction, &p, &opts)?;
            let closed = closed_form_eigenvalues_with_tol(&p, ctx.tol)?;
            (solver, Some(closed))
        }
        Model::Expr => {
            let src = a.expr.as_deref().ok_or_else(|| Failure::usage("--model expr needs --expr"))?;
            let (lo, hi) = match (&a.domain, interval) {
                (Some(d), _) => pair(d, "--domain")?,
                (None, Some(iv)) => iv,
                (None, None) => return Err(Failure::usage("--model expr needs --interval or --domain")),
            };
            let m = ExprWeyl::new(src, vec![OpenInterval { lo, hi }])?;
            let opts = SpectrumOptions { interval: opts.interval.or(Some((lo, hi))), ..opts };
            inputs["model"] = json!("expr");
            inputs["expr"] = json!(src);
            inputs["domain"] = json!([lo, hi]);
            (find_discrete_spectrum(&m as &dyn WeylFn, &p, &opts)?, None)
        }
    };

    let agreement = closed.as_ref().map(|c| {
        let lo = solver.interval.0;
        let a: Vec<f64> = c.values_with_multiplicity().into_iter().filter(|&r| r >= lo).collect();
        let b = solver.values_with_multiplicity();
        let max_abs_diff = (a.len() == b.len())
            .then(|| a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max));
        json!({"count_match": a.len() == b.len(), "max_abs_diff": max_abs_diff})
    });
    let outputs = json!({
        "eigenvalues": solver.values_with_multiplicity(),
        "solver": spectrum_json(&solver),
        "closed_form": closed.as_ref().map(spectrum_json),
        "agreement": agreement,
    });
    Ok((inputs, outputs))
}

fn cmd_oracle(ctx: &Ctx, a: &OracleArgs) -> Outcome {
    let p = ctx.params(&a.params)?;
    let cfg = OracleConfig {
        l: a.l,
        n: a.n,
        scan: pair(&a.scan, "--scan")?,
        scan_step: a.step,
        bisect_tol: a.tol,
        outer: match a.outer {
            Outer::Dirichlet => OuterBoundary::Dirichlet,
            Outer::Decaying => OuterBoundary::Decaying,
        },
        keep_trace: a.trace.is_some(),
    };
    cfg.validate()?;
    let mut report = scan_spectrum(&p, &cfg)?;
    if let (Some(path), Some(csv)) = (&a.trace, report.trace_csv()) {
        std::fs::write(path, csv).map_err(|e| Failure::usage(format!("writing {}: {e}", path.display())))?;
    }
    report.det_trace = None;

    // analytic side, only where a prediction exists
    let comparison = if classify_with_tol(&p, ctx.tol).is_stable {
        let predicted: Vec<f64> = closed_form_eigenvalues_with_tol(&p, ctx.tol)?
            .values_with_multiplicity()
            .into_iter()
            .filter(|&r| r >= cfg.scan.0 && r <= cfg.scan.1)
            .collect();
        let found = report.with_multiplicity();
        let matched = predicted.len() == found.len();
        let max_rel = matched.then(|| {
            predicted.iter().zip(&found).map(|(e, r)| ((r - e) / e).abs()).fold(0.0, f64::max)
        });
        json!({"predicted": predicted, "found": found, "count_match": matched, "max_relative_error": max_rel})
    } else {
        Value::Null
    };
    let inputs = json!({
        "params": params_json(&p),
        "config": cfg,
        "trace": a.trace.as_ref().map(|p| p.display().to_string()),
    });
    let outputs = json!({"report": report, "comparison": comparison});
    Ok((inputs, outputs))
}

fn cmd_sweep(ctx: &Ctx, a: &SweepArgs) -> Outcome {
    let axis = |s: &str, angle: bool| {
        let ax = sweep::Axis::parse(s).map_err(Failure::usage)?;
        Ok::<_, Failure>(if angle && ctx.degrees { ax.scaled(std::f64::consts::PI / 180.0) } else { ax })
    };
    let grid = sweep::Grid {
        zeta: axis(&a.zeta, false)?,
        phi: axis(&a.phi, true)?,
        xi: axis(&a.xi, true)?,
        omega: axis(&a.omega, true)?,
    };
    if grid.phi.0.iter().any(|p| !(0.0..=std::f64::consts::PI + 1e-9).contains(p)) {
        return Err(Failure::usage("φ grid must lie in [0, π]"));
    }
    if a.workers == 0 {
        return Err(Failure::usage("--workers must be at least 1"));
    }
    let summary = sweep::run(&grid, &a.out, a.workers, ctx.tol).map_err(Failure::usage)?;
    let inputs = json!({
        "zeta": a.zeta, "phi": a.phi, "xi": a.xi, "omega": a.omega,
        "out": a.out.display().to_string(), "exact_tol": ctx.tol,
    });
    let outputs = json!({"rows": summary.rows, "stable_rows": summary.stable, "columns": sweep::HEADER.split(',').collect::<Vec<_>>()});
    Ok((inputs, outputs))
}

fn cmd_selftest() -> Outcome {
    let mut all = checks::acceptance_suite();
    all.extend(checks::invariant_suite());
    for c in &all {
        eprintln!("{}", c.line());
    }
    let passed = all.iter().all(|c| c.passed);
    // elapsed times vary run to run; keep them on stderr only
    let results: Vec<Value> = all
        .iter()
        .map(|c| json!({"id": c.id, "name": c.name, "passed": c.passed, "detail": c.detail}))
        .collect();
    Ok((json!({}), json!({"passed": passed, "checks": results})))
}
