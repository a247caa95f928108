//! Projectors, measurement probabilities and seeded sampling.
//!
//!     cargo run --example projective_measurement

use grover_core::grover::{state_after_iterations, GroverInstance};
use grover_core::quantum::{
    measurement_probability, projector, projector_completeness_residual, sample_measurement,
    self_adjoint_residual, BasisIndex, QState,
};

fn main() {
    let inst = GroverInstance::new(3, 6).unwrap();
    let state = state_after_iterations(&inst, 2);

    let p = projector(&state);
    println!("‖P − P†‖ = {:.2e}", self_adjoint_residual(&p));
    println!("‖P·P − P‖ = {:.2e}", (&p * &p).max_abs_diff(&p).unwrap());
    println!(
        "‖Σ|i⟩⟨i| − I‖ (n = 3) = {:.2e}",
        projector_completeness_residual(3).unwrap()
    );

    let shots = 20_000;
    let hist = sample_measurement(&state, 42, shots).unwrap();
    println!("{:>5} {:>10} {:>10}", "label", "p", "frequency");
    for label in 1..=8 {
        let idx = BasisIndex::new(label, 3).unwrap();
        let basis = QState::basis(3, idx).unwrap();
        println!(
            "{label:>5} {:>10.6} {:>10.6}",
            measurement_probability(&basis, &state).unwrap(),
            hist.frequency(idx)
        );
    }
    println!("mode: label {}", hist.mode());
}
