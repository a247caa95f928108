//! Simulates Grover search three ways and compares them: dense matrices,
//! the O(N) amplitude kernel, and the closed-form state.
//!
//!     cargo run --release --example simulate_search

use grover_core::grover::{
    closed_form_state, optimal_iterations, state_after_iterations_dense,
    state_after_iterations_kernel, success_probability, GroverInstance,
};

fn main() {
    let inst = GroverInstance::new(4, 12).unwrap();
    let angles = inst.angles();
    println!("n = 4, N = 16, target label 12, θ = {:.6}", angles.theta());
    println!(
        "{:>3} {:>14} {:>14} {:>14} {:>12}",
        "t", "p_dense", "p_kernel", "p_closed", "max |Δamp|"
    );
    for t in 0..=angles.one_period_t_max() {
        let dense = state_after_iterations_dense(&inst, t).unwrap();
        let kernel = state_after_iterations_kernel(&inst, t);
        let closed = closed_form_state(&inst, t);
        let diff = dense
            .max_abs_diff(&closed)
            .unwrap()
            .max(kernel.max_abs_diff(&closed).unwrap());
        println!(
            "{t:>3} {:>14.10} {:>14.10} {:>14.10} {diff:>12.2e}",
            dense.amplitude(inst.target()).norm_sqr(),
            kernel.amplitude(inst.target()).norm_sqr(),
            success_probability(&angles, t)
        );
    }

    // Past the dense limit only the kernel runs.
    let big = GroverInstance::new(20, 777_777).unwrap();
    let opt = optimal_iterations(&big.angles());
    let start = std::time::Instant::now();
    let state = state_after_iterations_kernel(&big, opt.t_best);
    println!(
        "n = 20: {} iterations in {:?}, p(target) = {:.12} (closed form {:.12})",
        opt.t_best,
        start.elapsed(),
        state.amplitude(big.target()).norm_sqr(),
        opt.p_best
    );
}
