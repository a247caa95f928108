//! Builds multi-qubit gates from 2×2 factors and checks them.
//!
//!     cargo run --example tensor_products

use grover_core::linalg::{
    hermitian_conjugate, is_unitary, matrix_list_gen, tensor_product_list,
    unitary_columns_orthonormal, CMatrix,
};
use grover_core::quantum::{evolve, hadamard, n_hadamard, zero_state};

fn print_real(m: &CMatrix) {
    for i in 0..m.dim() {
        let row: Vec<String> = m.row(i).iter().map(|z| format!("{:>6.3}", z.re)).collect();
        println!("  [{}]", row.join(" "));
    }
}

fn main() {
    let h = hadamard();
    println!("H =");
    print_real(&h);
    println!("H† = H: {}", hermitian_conjugate(&h) == h);

    let hh = tensor_product_list(&[h.clone(), h.clone()]).unwrap();
    println!("H ⊗ H =");
    print_real(&hh);

    // First factor acts on the most significant bit of the basis label.
    let x = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
    let xi = tensor_product_list(
        &matrix_list_gen(
            |k| {
                if k == 0 {
                    x.clone()
                } else {
                    CMatrix::identity(2)
                }
            },
            2,
        )
        .unwrap(),
    )
    .unwrap();
    println!("X ⊗ I =");
    print_real(&xi);

    for n in 1..=6 {
        let hn = n_hadamard(n).unwrap();
        let uniform = evolve(&hn, &zero_state(n).unwrap()).unwrap();
        println!(
            "n = {n}: H^⊗n is {0}x{0}, unitary = {1}, orthonormal columns = {2}, amplitude of H^⊗n|0…0⟩ = {3:.6}",
            hn.dim(),
            is_unitary(&hn, 1e-10),
            unitary_columns_orthonormal(&hn, 1e-10),
            uniform.amplitudes()[0].re
        );
    }
}
