//! State-vector simulation of Grover search, with every property of the
//! construction available as an executable check.
//!
//! The layers build on each other:
//!
//! - [`linalg`]: dense complex matrices, unitarity, tensor products of 2×2 gates
//! - [`quantum`]: normalized states, the Hadamard gate, evolution, projectors, sampling
//! - [`grover`]: oracle, diffusion, `G = D·U_f`, dense and kernel simulation,
//!   the closed-form dynamics and the optimal iteration count
//! - [`factorization`]: trial-division factor search driven by Grover
//! - [`verification`]: named theorem checks and a JSON report
//! - [`cli`]: the `grover` command-line tool
//!
//! ```
//! use grover_core::grover::{optimal_iterations, state_after_iterations, GroverInstance};
//!
//! let inst = GroverInstance::new(4, 12).unwrap();
//! let opt = optimal_iterations(&inst.angles());
//! assert_eq!(opt.t_best, 3);
//! let state = state_after_iterations(&inst, opt.t_best);
//! assert!((state.amplitude(inst.target()).norm_sqr() - opt.p_best).abs() < 1e-9);
//! ```

pub mod cli;
pub mod factorization;
pub mod grover;
pub mod linalg;
pub mod quantum;
pub mod random;
pub mod verification;

pub use linalg::{CMatrix, CVector, Complex};
pub use quantum::{BasisIndex, QState};
