//! Runs every registered theorem check at the default grid and prints one
//! line per check, then repeats the run with a broken diffusion operator.
//!
//!     cargo run --release --example verify_theorems

use grover_core::verification::{run_all, Fault, VerifyConfig};

fn main() {
    let report = run_all(&VerifyConfig::default()).expect("default config is valid");
    for r in &report.results {
        println!(
            "{:<6} {:<4} residual {:>10.3e}  tol {:>8.1e}  {:>6} ms  {}",
            r.id,
            if r.passed { "ok" } else { "FAIL" },
            r.worst_residual,
            r.params.tolerance,
            r.elapsed.as_millis(),
            r.theorem
        );
    }
    println!("{}/{} passed", report.summary.passed, report.results.len());

    let faulty = VerifyConfig {
        fault: Some(Fault::NonUnitaryDiffusion),
        ..VerifyConfig::default()
    };
    let report = run_all(&faulty).expect("valid config");
    println!(
        "with a non-unitary diffusion operator, failing: {}",
        report.failed_ids().join(", ")
    );
}
