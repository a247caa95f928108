//! Optimal iteration counts and the ranges on which the success probability
//! is guaranteed to rise or fall.
//!
//!     cargo run --example optimal_iterations

use grover_core::grover::{
    monotonic_decrease_range, monotonic_increase_range, optimal_iterations, GroverAngles,
};

fn describe(r: grover_core::grover::IterationRange) -> String {
    if r.is_empty() {
        "-".to_string()
    } else {
        format!("{}..={}", r.first, r.last)
    }
}

fn main() {
    println!(
        "{:>3} {:>8} {:>10} {:>5} {:>5} {:>5} {:>14} {:>10} {:>10}",
        "n", "N", "t_real", "floor", "ceil", "best", "p_best", "rising", "falling"
    );
    for n in 1..=20 {
        let angles = GroverAngles::for_qubits(n);
        let o = optimal_iterations(&angles);
        println!(
            "{n:>3} {:>8} {:>10.4} {:>5} {:>5} {:>5} {:>14.12} {:>10} {:>10}",
            angles.n_states(),
            o.t_real,
            o.t_floor,
            o.t_ceil,
            o.t_best,
            o.p_best,
            describe(monotonic_increase_range(&angles)),
            describe(monotonic_decrease_range(&angles))
        );
    }
}
