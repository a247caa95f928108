//! Command-line front end. `run` never exits the process; it returns the
//! exit status (0 success, 1 usage or internal error, 2 no factor found).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::factorization::{
    one_period_curve, probability_curve, run_factor_search, FactorError, FactorProblem,
};
use crate::grover::{
    optimal_iterations, state_after_iterations_via, success_probability, GroverAngles,
    GroverInstance, SimulationPath, MAX_KERNEL_QUBITS,
};
use crate::quantum::sample_measurement;
use crate::verification::{run_all, Fault, Tolerances, VerifyConfig, MAX_CONFIG_QUBITS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_FACTOR: i32 = 2;

const CONVENTIONS: &str = "\
Index conventions:
  simulate/curve --target take 1-based basis labels 1..=2^n, so `--target 12`
  is the ket |11>. factor reports candidate integers, which are the basis
  label minus one: for M = 143 the factor 11 is found at basis label 12.

Set GROVER_DENSE_CAP to change the largest register simulated with dense
matrices (default 6); larger registers use the O(N) amplitude kernel.";

#[derive(Debug, Parser)]
#[command(name = "grover", version, about = "Grover search simulator and theorem checker", after_help = CONVENTIONS)]
pub struct Cli {
    /// Emit machine-readable JSON instead of aligned text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate t Grover iterations and compare with the closed form.
    Simulate(SimulateArgs),
    /// Write the success-probability curve over one period as CSV.
    Curve(CurveArgs),
    /// Report the optimal iteration count for n qubits.
    Optimal(OptimalArgs),
    /// Find a factor of M by Grover search over trial divisors.
    Factor(FactorArgs),
    /// Run every theorem check and emit a JSON report.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub n: u32,
    /// 1-based basis label of the marked item.
    #[arg(long)]
    pub target: usize,
    #[arg(long)]
    pub t: u32,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Sample this many measurements and report the histogram.
    #[arg(long)]
    pub shots: Option<u64>,
    /// Histogram CSV destination (stdout when omitted).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub target: usize,
    /// Last iteration count (defaults to the end of the first period).
    #[arg(long)]
    pub t_max: Option<u32>,
    /// CSV destination (stdout when omitted).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OptimalArgs {
    #[arg(long)]
    pub n: u32,
}

#[derive(Debug, Args)]
pub struct FactorArgs {
    #[arg(long)]
    pub m: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub shots: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = MAX_CONFIG_QUBITS)]
    pub n_max: u32,
    #[arg(long)]
    pub t_max: Option<u32>,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 1000)]
    pub phase_samples: usize,
    #[arg(long)]
    pub tol_structural: Option<f64>,
    #[arg(long)]
    pub tol_unitarity: Option<f64>,
    #[arg(long)]
    pub tol_conservation: Option<f64>,
    #[arg(long)]
    pub tol_completeness: Option<f64>,
    #[arg(long)]
    pub tol_closed_form: Option<f64>,
    /// Swap in a broken operator to demonstrate failing checks.
    #[arg(long, value_enum)]
    pub inject_fault: Option<Fault>,
    /// Report destination (stdout when omitted).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

impl VerifyArgs {
    pub fn to_config(&self) -> VerifyConfig {
        let d = Tolerances::default();
        VerifyConfig {
            n_max: self.n_max,
            t_max: self.t_max,
            seed: self.seed,
            samples: self.samples,
            phase_samples: self.phase_samples,
            tolerances: Tolerances {
                structural: self.tol_structural.unwrap_or(d.structural),
                unitarity: self.tol_unitarity.unwrap_or(d.unitarity),
                conservation: self.tol_conservation.unwrap_or(d.conservation),
                completeness: self.tol_completeness.unwrap_or(d.completeness),
                closed_form: self.tol_closed_form.unwrap_or(d.closed_form),
            },
            fault: self.inject_fault,
        }
    }
}

/// Failure carrying the exit status to report.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let json = cli.json;
    let result = match &cli.command {
        Command::Simulate(a) => cmd_simulate(a, json, out),
        Command::Curve(a) => cmd_curve(a, json, out, err),
        Command::Optimal(a) => cmd_optimal(a, json, out),
        Command::Factor(a) => cmd_factor(a, json, out),
        Command::Verify(a) => cmd_verify(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: format!("cannot write {}: {e}", path.display()),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| usage(format!("cannot write output: {e}")))
}

fn instance(n: u32, target: usize) -> Result<GroverInstance, Failure> {
    if n == 0 || n > MAX_KERNEL_QUBITS {
        return Err(usage(format!(
            "--n must be in 1..={MAX_KERNEL_QUBITS}, got {n}"
        )));
    }
    GroverInstance::new(n, target).map_err(|_| {
        usage(format!(
            "--target must be in 1..={}, got {target}",
            1usize << n
        ))
    })
}

fn cmd_simulate(a: &SimulateArgs, json: bool, out: &mut dyn Write) -> CmdResult {
    let inst = instance(a.n, a.target)?;
    let path = SimulationPath::for_qubits(a.n);
    let state = state_after_iterations_via(&inst, a.t, path).map_err(|e| usage(e.to_string()))?;
    let p_sim = state.amplitude(inst.target()).norm_sqr();
    let p_closed = success_probability(&inst.angles(), a.t);
    let histogram = match a.shots {
        Some(shots) => Some(
            sample_measurement(&state, a.seed.unwrap_or(0), shots)
                .map_err(|e| usage(e.to_string()))?,
        ),
        None => None,
    };
    let text = if json {
        let mut v = json!({
            "n": a.n, "target": a.target, "t": a.t, "path": path,
            "p_simulated": p_sim, "p_closed_form": p_closed, "difference": p_sim - p_closed,
        });
        if let (Some(h), None) = (&histogram, &a.output) {
            v["histogram"] = json!(h.counts());
        }
        format!(
            "{}\n",
            serde_json::to_string_pretty(&v).expect("serializable")
        )
    } else {
        let mut s = format!(
            "n = {}, N = {}, target = {}, t = {}, path = {:?}\n",
            a.n,
            inst.n_states(),
            a.target,
            a.t,
            path
        );
        s += &format!("{:<15}{p_sim:.12}\n", "p_simulated");
        s += &format!("{:<15}{p_closed:.12}\n", "p_closed_form");
        s += &format!("{:<15}{:.3e}\n", "difference", p_sim - p_closed);
        if let (Some(h), None) = (&histogram, &a.output) {
            s += &h.to_csv();
        }
        s
    };
    emit(out, &text)?;
    if let (Some(h), Some(path)) = (&histogram, &a.output) {
        std::fs::write(path, h.to_csv()).map_err(|e| io_failure(path, e))?;
    }
    Ok(EXIT_OK)
}

fn cmd_curve(a: &CurveArgs, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let inst = instance(a.n, a.target)?;
    let curve = match a.t_max {
        Some(t_max) => probability_curve(&inst, t_max).map_err(|e| usage(e.to_string()))?,
        None => one_period_curve(&inst),
    };
    let peak = curve.peak().expect("at least one row").t;
    let summary = if json {
        format!("{}\n", json!({ "rows": curve.rows.len(), "peak_t": peak }))
    } else {
        format!("peak at t = {peak}\n")
    };
    match &a.output {
        Some(path) => {
            std::fs::write(path, curve.to_csv()).map_err(|e| io_failure(path, e))?;
            emit(out, &summary)?;
        }
        None => {
            emit(out, &curve.to_csv())?;
            let _ = err.write_all(summary.as_bytes());
        }
    }
    Ok(EXIT_OK)
}

fn cmd_optimal(a: &OptimalArgs, json: bool, out: &mut dyn Write) -> CmdResult {
    if a.n == 0 || a.n > 60 {
        return Err(usage(format!("--n must be in 1..=60, got {}", a.n)));
    }
    let opt = optimal_iterations(&GroverAngles::for_qubits(a.n));
    let text = if json {
        format!(
            "{}\n",
            serde_json::to_string_pretty(&opt).expect("serializable")
        )
    } else {
        format!(
            "{:<8}{}\n{:<8}{}\n{:<8}{}\n{:<8}{}\n{:<8}{:.12}\n",
            "t_real",
            opt.t_real,
            "t_floor",
            opt.t_floor,
            "t_ceil",
            opt.t_ceil,
            "t_best",
            opt.t_best,
            "p_best",
            opt.p_best
        )
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_factor(a: &FactorArgs, json: bool, out: &mut dyn Write) -> CmdResult {
    let problem = match FactorProblem::new(a.m) {
        Ok(p) => p,
        Err(e @ FactorError::TooSmall(_)) => return Err(usage(e.to_string())),
        Err(e) => {
            return Err(Failure {
                code: EXIT_NO_FACTOR,
                message: e.to_string(),
            })
        }
    };
    if a.shots == 0 {
        return Err(usage("--shots must be at least 1"));
    }
    let r = run_factor_search(&problem, a.seed, a.shots).map_err(|e| usage(e.to_string()))?;
    let text = if json {
        format!(
            "{}\n",
            serde_json::to_string_pretty(&r).expect("serializable")
        )
    } else {
        let head = match (r.factor_found, r.cofactor) {
            (Some(f), Some(c)) => format!("{} = {f} x {c}\n", r.m),
            _ => format!(
                "search failed: modal candidate {} does not divide {}\n",
                r.modal_candidate, r.m
            ),
        };
        format!(
            "{head}candidate {} (basis label {}), t = {}, p_predicted = {:.6}, frequency = {:.4} over {} shots (seed {})\n",
            r.modal_candidate,
            r.modal_candidate + 1,
            r.t_used,
            r.p_predicted,
            r.empirical_frequency,
            r.shots,
            r.seed
        )
    };
    emit(out, &text)?;
    Ok(if r.succeeded() {
        EXIT_OK
    } else {
        EXIT_NO_FACTOR
    })
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let report = run_all(&a.to_config()).map_err(|e| usage(e.to_string()))?;
    let json = format!("{}\n", report.to_json());
    let summary = format!(
        "{}/{} checks passed\n",
        report.summary.passed,
        report.results.len()
    );
    match &a.output {
        Some(path) => {
            std::fs::write(path, &json).map_err(|e| io_failure(path, e))?;
            emit(out, &summary)?;
        }
        None => {
            emit(out, &json)?;
            let _ = err.write_all(summary.as_bytes());
        }
    }
    if report.all_passed() {
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(err, "failed: {}", report.failed_ids().join(", "));
        Ok(EXIT_USAGE)
    }
}
