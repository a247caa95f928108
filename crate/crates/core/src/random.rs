//! Seeded generators for random states and unitaries.

use std::f64::consts::PI;

use rand::Rng;

use crate::linalg::{matmul, tensor_product_list, CMatrix, CVector, Complex};
use crate::quantum::{hadamard, make_qstate, QState};

/// Random normalized state: each amplitude's real and imaginary parts are
/// drawn uniformly from `[-1, 1)`, then the vector is scaled to unit norm once.
pub fn random_state<R: Rng + ?Sized>(n_qubits: u32, rng: &mut R) -> QState {
    let dim = 1usize << n_qubits;
    loop {
        let v: Vec<Complex> = (0..dim)
            .map(|_| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-3 {
            continue;
        }
        let scaled = v.into_iter().map(|z| z / norm).collect();
        return make_qstate(CVector::new(scaled).expect("finite")).expect("normalized");
    }
}

fn phase<R: Rng + ?Sized>(rng: &mut R) -> Complex {
    Complex::from_polar(1.0, rng.random_range(0.0..2.0 * PI))
}

/// `diag(e^{iα}, e^{iβ})` with random phases.
pub fn random_phase_gate<R: Rng + ?Sized>(rng: &mut R) -> CMatrix {
    CMatrix::diagonal(&[phase(rng), phase(rng)])
}

/// Random single-qubit factor: `H`, a phase gate, or a product of the two.
pub fn random_qubit_gate<R: Rng + ?Sized>(rng: &mut R) -> CMatrix {
    match rng.random_range(0..3) {
        0 => hadamard(),
        1 => random_phase_gate(rng),
        _ => matmul(&hadamard(), &random_phase_gate(rng)).expect("2x2"),
    }
}

pub fn random_tensor_gate<R: Rng + ?Sized>(n_qubits: u32, rng: &mut R) -> CMatrix {
    let factors: Vec<CMatrix> = (0..n_qubits).map(|_| random_qubit_gate(rng)).collect();
    tensor_product_list(&factors).expect("non-empty list of 2x2 factors")
}

/// Entangling random unitary `T₁ · Φ · T₂`: two random tensor products of
/// qubit gates around a full-width diagonal of random phases.
pub fn random_unitary<R: Rng + ?Sized>(n_qubits: u32, rng: &mut R) -> CMatrix {
    let left = random_tensor_gate(n_qubits, rng);
    let phases: Vec<Complex> = (0..1usize << n_qubits).map(|_| phase(rng)).collect();
    let right = random_tensor_gate(n_qubits, rng);
    let inner = matmul(&CMatrix::diagonal(&phases), &right).expect("same dimension");
    matmul(&left, &inner).expect("same dimension")
}
