//! The two-dimensional picture: each Grover iteration rotates the state by
//! 2θ in the plane spanned by |τ⊥⟩ and |τ⟩.
//!
//!     cargo run --example rotation_2d

use grover_core::grover::{rotation_step_2d, state_after_iterations, GroverInstance, TwoDState};

fn main() {
    let inst = GroverInstance::new(5, 9).unwrap();
    let angles = inst.angles();
    let mut plane = TwoDState::initial(&angles);
    println!(
        "{:>3} {:>12} {:>12} {:>12} {:>12}",
        "t", "c_perp", "c_tau", "sim c_perp", "sim c_tau"
    );
    for t in 0..=angles.one_period_t_max() {
        let projected = TwoDState::from_state(&inst, &state_after_iterations(&inst, t));
        println!(
            "{t:>3} {:>12.8} {:>12.8} {:>12.8} {:>12.8}",
            plane.c_perp, plane.c_tau, projected.c_perp, projected.c_tau
        );
        plane = rotation_step_2d(plane, &angles);
    }
}
