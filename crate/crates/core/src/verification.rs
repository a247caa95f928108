//! Executable theorem checks.
//!
//! Every theorem about the framework and the search dynamics is registered
//! here as a named check with a formal statement and a tolerance class. A
//! check sweeps its statement over a parameter grid and reports the worst
//! residual it saw. Fault injection swaps in a broken operator so the suite
//! can show that its checks are able to fail.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::grover::{
    self, dense_trajectory, diffusion, initial_state_dense, kernel_iteration,
    monotonic_decrease_range, monotonic_increase_range, optimal_iterations, oracle,
    success_probability, tau_perp, uniform_state, GroverAngles, GroverInstance, DEFAULT_DENSE_CAP,
};
use crate::linalg::{
    column_orthonormality_residual, matmul, matvec, unitarity_residual, CMatrix, CVector, Complex,
};
use crate::quantum::{
    self, hadamard, n_hadamard, projector, self_adjoint_residual, BasisIndex, QState,
};
use crate::random::{random_state, random_unitary};

pub const SCHEMA_VERSION: &str = "1";

/// Largest register the dense-operator checks sweep by default.
pub const DENSE_CHECK_MAX_QUBITS: u32 = DEFAULT_DENSE_CAP;
/// Largest register the projector and conservation checks sweep.
pub const PROJECTOR_CHECK_MAX_QUBITS: u32 = 8;
/// Largest `n_max` accepted by [`run_all`].
pub const MAX_CONFIG_QUBITS: u32 = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// Which tolerance a check is held to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToleranceClass {
    Structural,
    Unitarity,
    Conservation,
    Completeness,
    ClosedForm,
    /// Strict inequalities; passes only when every instance holds.
    Order,
}

/// A registered theorem check.
#[derive(Debug, Clone, Copy)]
pub struct CheckSpec {
    pub id: &'static str,
    pub theorem: &'static str,
    pub statement: &'static str,
    pub tolerance: ToleranceClass,
}

pub const REGISTRY: [CheckSpec; 13] = [
    CheckSpec {
        id: "T1.3",
        theorem: "Orthonormal columns of a unitary matrix",
        statement: "unitary U ⇒ Σ_i U_ix · conj(U_iy) = δ_xy",
        tolerance: ToleranceClass::Unitarity,
    },
    CheckSpec {
        id: "T1.4",
        theorem: "Closure of unitaries under multiplication",
        statement: "unitary A ∧ unitary B ⇒ unitary (A·B)",
        tolerance: ToleranceClass::Unitarity,
    },
    CheckSpec {
        id: "T1.9",
        theorem: "Hadamard gate is unitary",
        statement: "H†H = HH† = I",
        tolerance: ToleranceClass::Unitarity,
    },
    CheckSpec {
        id: "T1.11",
        theorem: "Conservation of probability",
        statement: "unitary A ∧ ‖q‖² = 1 ⇒ ‖A q‖² = 1",
        tolerance: ToleranceClass::Conservation,
    },
    CheckSpec {
        id: "T1.13",
        theorem: "Projectors are self-adjoint",
        statement: "P = |v⟩⟨v| ⇒ P = P†",
        tolerance: ToleranceClass::Structural,
    },
    CheckSpec {
        id: "T1.14",
        theorem: "Projectors are idempotent",
        statement: "P = |v⟩⟨v| ⇒ P·P = P",
        tolerance: ToleranceClass::Structural,
    },
    CheckSpec {
        id: "T1.15",
        theorem: "Completeness of basis projectors",
        statement: "Σ_{i=1}^{2^n} |i⟩⟨i| = I",
        tolerance: ToleranceClass::Completeness,
    },
    CheckSpec {
        id: "T2.2",
        theorem: "Oracle phase flip",
        statement: "U_f (a|τ⟩ + b|τ⊥⟩) = b|τ⊥⟩ − a|τ⟩",
        tolerance: ToleranceClass::Structural,
    },
    CheckSpec {
        id: "T2.3",
        theorem: "State after t Grover iterations",
        statement: "G^t |φ₀⟩ = cos((2t+1)θ)|τ⊥⟩ + sin((2t+1)θ)|τ⟩, θ = arcsin(1/√N)",
        tolerance: ToleranceClass::ClosedForm,
    },
    CheckSpec {
        id: "T3.1",
        theorem: "Periodicity of the success probability",
        statement: "sin²(x + π) = sin²(x)",
        tolerance: ToleranceClass::Structural,
    },
    CheckSpec {
        id: "T3.2",
        theorem: "Monotonic increase before the optimum",
        statement: "0 < t ∧ t + 1 ≤ π/(4θ) − 1/2 ⇒ p_{t+1} > p_t",
        tolerance: ToleranceClass::Order,
    },
    CheckSpec {
        id: "T3.3",
        theorem: "Monotonic decrease after the optimum",
        statement: "π/(4θ) − 1/2 ≤ t ≤ π/(2θ) − 3/2 ⇒ p_t > p_{t+1}",
        tolerance: ToleranceClass::Order,
    },
    CheckSpec {
        id: "T3.4",
        theorem: "Optimal number of iterations",
        statement: "(2t'+1)θ ≤ π ⇒ p_{t'} ≤ p_{⌊π/(4θ) − 1/2⌋} ∨ p_{t'} ≤ p_{⌊π/(4θ) − 1/2⌋ + 1}",
        tolerance: ToleranceClass::Order,
    },
];

pub fn lookup(id: &str) -> Result<&'static CheckSpec, VerifyError> {
    REGISTRY
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| VerifyError::UnknownCheck(id.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub structural: f64,
    pub unitarity: f64,
    pub conservation: f64,
    pub completeness: f64,
    pub closed_form: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            structural: 1e-12,
            unitarity: 1e-10,
            conservation: 1e-9,
            completeness: 1e-10,
            closed_form: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn for_class(&self, class: ToleranceClass) -> f64 {
        match class {
            ToleranceClass::Structural => self.structural,
            ToleranceClass::Unitarity => self.unitarity,
            ToleranceClass::Conservation => self.conservation,
            ToleranceClass::Completeness => self.completeness,
            ToleranceClass::ClosedForm => self.closed_form,
            ToleranceClass::Order => 0.0,
        }
    }
}

/// Deliberate defects used to prove the checks are not vacuous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Replace `D` with `D + 0.05·I`, which is not unitary.
    NonUnitaryDiffusion,
    /// Mark the basis state after the real target.
    MisplacedOracle,
}

impl Fault {
    /// Checks that are expected to fail under this fault.
    pub fn affected_checks(self) -> &'static [&'static str] {
        match self {
            Fault::NonUnitaryDiffusion => &["T1.4", "T2.3"],
            Fault::MisplacedOracle => &["T2.2", "T2.3"],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub n_max: u32,
    /// Iteration ceiling for the closed-form check; `None` means `2·t_ceil`.
    pub t_max: Option<u32>,
    pub seed: u64,
    /// Random states, unitaries or angles per register size.
    pub samples: usize,
    /// Random phases for the periodicity check.
    pub phase_samples: usize,
    pub tolerances: Tolerances,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            n_max: MAX_CONFIG_QUBITS,
            t_max: None,
            seed: 7,
            samples: 100,
            phase_samples: 1000,
            tolerances: Tolerances::default(),
            fault: None,
        }
    }
}

/// Parameters of a single check run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckParams {
    pub n_min: u32,
    pub n_max: u32,
    pub t_max: Option<u32>,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub fault: Option<Fault>,
}

impl CheckParams {
    /// The grid `run_all` uses for `id` under `config`.
    pub fn for_check(id: &str, config: &VerifyConfig) -> Result<Self, VerifyError> {
        let spec = lookup(id)?;
        let cap = match id {
            "T1.11" | "T1.13" | "T1.14" | "T1.15" => PROJECTOR_CHECK_MAX_QUBITS,
            "T1.3" | "T1.4" | "T2.2" | "T2.3" => DENSE_CHECK_MAX_QUBITS,
            _ => MAX_CONFIG_QUBITS,
        };
        let n_min = match id {
            "T2.3" | "T3.2" | "T3.3" | "T3.4" => 2,
            _ => 1,
        };
        Ok(Self {
            n_min,
            n_max: config.n_max.min(cap).max(n_min),
            t_max: config.t_max,
            samples: if id == "T3.1" {
                config.phase_samples
            } else {
                config.samples
            },
            seed: config.seed,
            tolerance: config.tolerances.for_class(spec.tolerance),
            fault: config.fault,
        })
    }

    /// Restricts the grid to a single register size.
    pub fn with_n(mut self, n: u32) -> Self {
        self.n_min = n;
        self.n_max = n;
        self
    }

    pub fn with_t_max(mut self, t_max: u32) -> Self {
        self.t_max = Some(t_max);
        self
    }

    pub fn with_samples(mut self, samples: usize, seed: u64) -> Self {
        self.samples = samples;
        self.seed = seed;
        self
    }

    fn qubits(&self) -> impl Iterator<Item = u32> {
        self.n_min..=self.n_max
    }
}

fn serialize_millis<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub theorem: String,
    pub quote: String,
    pub params: CheckParams,
    pub passed: bool,
    pub worst_residual: f64,
    #[serde(rename = "elapsed_ms", serialize_with = "serialize_millis")]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema_version: &'static str,
    pub config: VerifyConfig,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failed_ids(&self) -> Vec<&str> {
        self.results
            .iter()
            .filter(|r| !r.passed)
            .map(|r| r.id.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }
}

/// Worst residual over a sweep, or the largest violation for order checks.
#[derive(Debug, Default)]
struct Tally {
    worst: f64,
    violations: usize,
}

impl Tally {
    fn residual(&mut self, r: f64) {
        // NaN must count as a failure.
        if r.is_nan() {
            self.worst = f64::INFINITY;
        } else {
            self.worst = self.worst.max(r);
        }
    }

    /// Records `margin > 0` as holding.
    fn strictly_positive(&mut self, margin: f64) {
        if margin.is_nan() || margin <= 0.0 {
            self.violations += 1;
            self.residual(-margin);
        }
    }

    fn holds(&mut self, ok: bool) {
        if !ok {
            self.violations += 1;
        }
    }
}

fn rng_for(seed: u64, check: &str, n: u32) -> ChaCha8Rng {
    // Independent stream per (check, n) so grids can be resized without
    // shifting the draws of other register sizes.
    let tag = check
        .bytes()
        .fold(0u64, |h, b| h.wrapping_mul(31).wrapping_add(b as u64));
    ChaCha8Rng::seed_from_u64(
        seed ^ tag.rotate_left(17) ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
    )
}

fn targets(n: u32) -> impl Iterator<Item = GroverInstance> {
    (1..=1usize << n).map(move |t| GroverInstance::new(n, t).expect("target in range"))
}

fn faulty_diffusion(n: u32, fault: Option<Fault>) -> CMatrix {
    let d = diffusion(n).expect("dense register");
    match fault {
        Some(Fault::NonUnitaryDiffusion) => {
            &d + &CMatrix::identity(d.dim()).scale(Complex::new(0.05, 0.0))
        }
        _ => d,
    }
}

fn oracle_target(inst: &GroverInstance, fault: Option<Fault>) -> usize {
    let t = inst.target().zero_based();
    match fault {
        Some(Fault::MisplacedOracle) => (t + 1) % inst.n_states(),
        _ => t,
    }
}

fn faulty_oracle(inst: &GroverInstance, fault: Option<Fault>) -> CMatrix {
    let marked = oracle_target(inst, fault);
    let shifted = GroverInstance::new(inst.n_qubits(), marked + 1).expect("in range");
    oracle(&shifted).expect("dense register")
}

/// Runs one registered check over the grid in `params`.
pub fn run_check(id: &str, params: &CheckParams) -> Result<CheckResult, VerifyError> {
    let spec = lookup(id)?;
    let start = Instant::now();
    let tally = match id {
        "T1.3" => check_columns_orthonormal(params),
        "T1.4" => check_unitary_closure(params),
        "T1.9" => check_hadamard_unitary(),
        "T1.11" => check_probability_conservation(params),
        "T1.13" => check_projector_self_adjoint(params),
        "T1.14" => check_projector_idempotent(params),
        "T1.15" => check_projector_completeness(params),
        "T2.2" => check_phase_flip(params),
        "T2.3" => check_closed_form_evolution(params),
        "T3.1" => check_periodicity(params),
        "T3.2" => check_monotonic_increase(params),
        "T3.3" => check_monotonic_decrease(params),
        "T3.4" => check_optimal_iterations(params),
        _ => unreachable!("registry and dispatch agree"),
    };
    let passed = match spec.tolerance {
        ToleranceClass::Order => tally.violations == 0,
        _ => tally.worst < params.tolerance && tally.violations == 0,
    };
    Ok(CheckResult {
        id: spec.id.to_string(),
        theorem: spec.theorem.to_string(),
        quote: spec.statement.to_string(),
        params: params.clone(),
        passed,
        worst_residual: tally.worst,
        elapsed: start.elapsed(),
    })
}

/// Runs every registered check; individual failures are recorded, not raised.
pub fn run_all(config: &VerifyConfig) -> Result<VerificationReport, VerifyError> {
    if config.n_max == 0 || config.n_max > MAX_CONFIG_QUBITS {
        return Err(VerifyError::InvalidConfig(format!(
            "n_max must be in 1..={MAX_CONFIG_QUBITS}, got {}",
            config.n_max
        )));
    }
    let results = REGISTRY
        .iter()
        .map(|spec| run_check(spec.id, &CheckParams::for_check(spec.id, config)?))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = results.iter().filter(|r| r.passed).count();
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        summary: Summary {
            passed,
            failed: results.len() - passed,
        },
        results,
    })
}

/// Operators from the Grover construction for register size `n`.
fn grover_operators(n: u32, fault: Option<Fault>) -> Vec<CMatrix> {
    let d = faulty_diffusion(n, fault);
    let mut ops = vec![n_hadamard(n).expect("dense register"), d.clone()];
    for inst in targets(n) {
        let uf = faulty_oracle(&inst, fault);
        ops.push(matmul(&d, &uf).expect("same dimension"));
        ops.push(uf);
    }
    ops
}

fn check_columns_orthonormal(p: &CheckParams) -> Tally {
    let mut tally = Tally::default();
    for n in p.qubits() {
        let mut rng = rng_for(p.seed, "T1.3", n);
        let randoms = (0..p.samples.min(10)).map(|_| random_unitary(n, &mut rng));
        for u in grover_operators(n, None).into_iter().chain(randoms) {
            // Only matrices that pass the unitarity test are premises.
            if unitarity_residual(&u) < p.tolerance {
                tally.residual(column_orthonormality_residual(&u));
            }
        }
    }
    tally
}

fn check_unitary_closure(p: &CheckParams) -> Tally {
    let mut tally = Tally::default();
    for n in p.qubits() {
        let mut rng = rng_for(p.seed, "T1.4", n);
        for _ in 0..p.samples.min(10) {
            let a = random_unitary(n, &mut rng);
            let b = random_unitary(n, &mut rng);
            tally.residual(unitarity_residual(&matmul(&a, &b).expect("same dimension")));
        }
        // G = D·U_f: both factors and the product must be unitary.
        let d = faulty_diffusion(n, p.fault);
        tally.residual(unitarity_residual(&d));
        for inst in targets(n) {
            let uf = faulty_oracle(&inst, p.fault);
            tally.residual(unitarity_residual(&uf));
            tally.residual(unitarity_residual(
                &matmul(&d, &uf).expect("same dimension"),
            ));
        }
    }
    tally
}

fn check_hadamard_unitary() -> Tally {
    let mut tally = Tally::default();
    tally.residual(unitarity_residual(&hadamard()));
    tally
}

fn check_probability_conservation(p: &CheckParams) -> Tally {
    let mut tally = Tally::default();
    for n in p.qubits() {
        let mut rng = rng_for(p.seed, "T1.11", n);
        // A handful of operators per size, each shared by several states.
        let unitaries: Vec<CMatrix> = (0..p.samples.clamp(1, 4))
            .map(|_| random_unitary(n, &mut rng))
            .collect();
        for u in &unitaries {
            tally.holds(unitarity_residual(u) < 1e-10);
        }
        for s in 0..p.samples {
            let q = random_state(n, &mut rng);
            let evolved =
                matvec(&unitaries[s % unitaries.len()], q.amplitudes()).expect("same dimension");
            tally.residual((evolved.norm_sqr() - 1.0).abs());
        }
    }
    tally
}

/// All basis states followed by `samples` random states.
fn projector_states(n: u32, p: &CheckParams, check: &str) -> Vec<QState> {
    let mut rng = rng_for(p.seed, check, n);
    let basis = (1..=1usize << n)
        .map(|i| QState::basis(n, BasisIndex::new(i, n).expect("in range")).expect("valid"));
    let randoms: Vec<QState> = (0..p.samples).map(|_| random_state(n, &mut rng)).collect();
    basis.chain(randoms).collect()
}

fn check_projector_self_adjoint(p: &CheckParams) -> Tally {
    let mut tally = Tally::default();
    for n in p.qubits() {
        for v in projector_states(n, p, "T1.13") {
            tally.residual(self_adjoint_residual(&projector(&v)));
        }
    }
    tally
}

fn check_projector_idempotent(p: &CheckParams) -> Tally {
    let mut tally = Tally::default();
    for n in p.qubits() {
        for v in projector_states(n, p, "T1.14") {
            let proj = projector(&v);
            tally.residual((&proj * &proj).max_abs_diff(&proj).expect("same dimension"));
        }
    }
    tally
}

fn check_projector_completeness(p: &CheckParams) -> Tally {
    let mut tally = Tally::default();
    for n in p.qubits() {
        tally.residual(quantum::projector_completeness_residual(n).expect("dense register"));
    }
    tally
}

fn check_phase_flip(p: &CheckParams) -> Tally {
    let mut tally = Tally::default();
    for n in p.qubits() {
        let mut rng = rng_for(p.seed, "T2.2", n);
        let alphas: Vec<f64> = (0..p.samples)
            .map(|_| rng.random_range(0.0..2.0 * PI))
            .collect();
        for inst in targets(n) {
            let uf = faulty_oracle(&inst, p.fault);
            let perp = tau_perp(&inst);
            let tau = inst.target().zero_based();
            for &alpha in &alphas {
                let (a, b) = alpha.sin_cos();
                let build = |sign: f64| {
                    let mut v = perp.amplitudes().scale(Complex::new(b, 0.0)).into_vec();
                    v[tau] += Complex::new(sign * a, 0.0);
                    CVector::new(v).expect("finite")
                };
                let flipped = matvec(&uf, &build(1.0)).expect("same dimension");
                tally.residual(flipped.max_abs_diff(&build(-1.0)).expect("same dimension"));
            }
        }
    }
    tally
}

fn check_closed_form_evolution(p: &CheckParams) -> Tally {
    let mut tally = Tally::default();
    for n in p.qubits() {
        let t_max = p
            .t_max
            .unwrap_or_else(|| 2 * optimal_iterations(&GroverAngles::for_qubits(n)).t_ceil);
        let d = faulty_diffusion(n, p.fault);
        let start_dense = initial_state_dense(n)
            .expect("dense register")
            .into_amplitudes();
        let start_kernel = uniform_state(n)
            .expect("n >= 1")
            .into_amplitudes()
            .into_vec();
        for inst in targets(n) {
            let g = matmul(&d, &faulty_oracle(&inst, p.fault)).expect("same dimension");
            let dense = dense_trajectory(&g, &start_dense, t_max);
            let mut kernel = start_kernel.clone();
            let marked = oracle_target(&inst, p.fault);
            for (t, dense_t) in dense.iter().enumerate() {
                if t > 0 {
                    kernel_iteration(&mut kernel, marked);
                }
                let expected = grover::closed_form_state(&inst, t as u32).into_amplitudes();
                tally.residual(dense_t.max_abs_diff(&expected).expect("same dimension"));
                let kernel_v = CVector::new(kernel.clone()).expect("finite");
                tally.residual(kernel_v.max_abs_diff(&expected).expect("same dimension"));
            }
        }
    }
    tally
}

fn check_periodicity(p: &CheckParams) -> Tally {
    let mut tally = Tally::default();
    let mut rng = rng_for(p.seed, "T3.1", 0);
    for _ in 0..p.samples {
        let x: f64 = rng.random_range(0.0..10.0 * PI);
        tally.residual(((x + PI).sin().powi(2) - x.sin().powi(2)).abs());
    }
    tally
}

fn check_monotonic_increase(p: &CheckParams) -> Tally {
    let mut tally = Tally::default();
    for n in p.qubits() {
        let angles = GroverAngles::for_qubits(n);
        for t in monotonic_increase_range(&angles).iter() {
            tally.strictly_positive(
                success_probability(&angles, t + 1) - success_probability(&angles, t),
            );
        }
    }
    tally
}

fn check_monotonic_decrease(p: &CheckParams) -> Tally {
    let mut tally = Tally::default();
    for n in p.qubits() {
        let angles = GroverAngles::for_qubits(n);
        for t in monotonic_decrease_range(&angles).iter() {
            tally.strictly_positive(
                success_probability(&angles, t) - success_probability(&angles, t + 1),
            );
        }
    }
    tally
}

fn check_optimal_iterations(p: &CheckParams) -> Tally {
    let mut tally = Tally::default();
    for n in p.qubits() {
        let angles = GroverAngles::for_qubits(n);
        let opt = optimal_iterations(&angles);
        let p_floor = success_probability(&angles, opt.t_floor);
        let p_next = success_probability(&angles, opt.t_floor + 1);
        let mut argmax = 0;
        let mut best = f64::NEG_INFINITY;
        for t in 0..=angles.one_period_t_max() {
            let pt = success_probability(&angles, t);
            tally.holds(pt <= p_floor || pt <= p_next);
            if pt > best {
                best = pt;
                argmax = t;
            }
        }
        let matches = argmax == opt.t_best || (best - opt.p_best).abs() <= grover::PROBABILITY_TIE;
        tally.holds(matches);
        if !matches {
            tally.residual(best - opt.p_best);
        }
    }
    tally
}
