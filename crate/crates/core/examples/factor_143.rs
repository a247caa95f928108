//! Factors 143 = 11 × 13 by Grover search over trial divisors and prints the
//! success-probability curve behind the choice of iteration count.
//!
//!     cargo run --example factor_143

use grover_core::factorization::{one_period_curve, run_factor_search, FactorProblem};

fn main() {
    let problem = FactorProblem::new(143).unwrap();
    println!(
        "M = {}, {} qubits, marked candidate {} (basis label {})",
        problem.m,
        problem.n_qubits,
        problem.divisor,
        problem.divisor + 1
    );

    let curve = one_period_curve(&problem.instance());
    print!("{}", curve.to_csv());
    println!("peak at t = {}", curve.peak().unwrap().t);

    let result = run_factor_search(&problem, 1, 10_000).unwrap();
    match (result.factor_found, result.cofactor) {
        (Some(f), Some(c)) => println!(
            "{} = {f} x {c} after {} iterations; predicted p = {:.6}, observed {:.4}",
            result.m, result.t_used, result.p_predicted, result.empirical_frequency
        ),
        _ => println!("search failed, modal candidate {}", result.modal_candidate),
    }

    for m in [15, 35, 77, 221, 13, 30] {
        match FactorProblem::new(m) {
            Ok(p) => {
                let r = run_factor_search(&p, 7, 2000).unwrap();
                println!(
                    "{m}: factor {:?}, cofactor {:?}",
                    r.factor_found, r.cofactor
                );
            }
            Err(e) => println!("{m}: {e}"),
        }
    }
}
