//! Grover search: operators, simulation and the closed-form dynamics.
//!
//! Two simulation paths evolve the same state. The dense path builds the
//! `2^n × 2^n` operator `G = D·U_f` and applies `Gᵗ` to `H^{⊗n}|0…0⟩`. The
//! kernel path never materializes a matrix: each iteration negates the target
//! amplitude and then reflects every amplitude about the mean. Both are
//! compared against `cos((2t+1)θ)|τ⊥⟩ + sin((2t+1)θ)|τ⟩` with exact signs.

use std::f64::consts::PI;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::linalg::{matmul, matrix_pow, matvec, CMatrix, CVector, Complex, ONE};
use crate::quantum::{
    self, make_qstate, n_hadamard, zero_state, BasisIndex, QState, QuantumError, Result,
    MAX_DENSE_QUBITS,
};

/// Registers larger than this are not simulated at all.
pub const MAX_KERNEL_QUBITS: u32 = 24;

/// Default largest register for which [`state_after_iterations`] uses the
/// dense matrix path.
pub const DEFAULT_DENSE_CAP: u32 = 6;

/// Environment variable overriding [`DEFAULT_DENSE_CAP`].
pub const DENSE_CAP_ENV: &str = "GROVER_DENSE_CAP";

// Bounds derived from θ that land within this distance of an integer are
// treated as that integer. For N = 4 the exact bound π/(4θ) − 1/2 = 1
// evaluates to 0.9999999999999998 in f64.
const INTEGER_SNAP: f64 = 1e-9;

/// Success probabilities closer than this are treated as tied.
pub const PROBABILITY_TIE: f64 = 1e-12;

fn snap(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() < INTEGER_SNAP {
        r
    } else {
        x
    }
}

/// Dense-path ceiling, honouring `GROVER_DENSE_CAP` when it parses.
pub fn dense_cap() -> u32 {
    std::env::var(DENSE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .map_or(DEFAULT_DENSE_CAP, |cap| cap.min(MAX_DENSE_QUBITS))
}

/// A single-solution search problem over `N = 2^n` items.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GroverInstance {
    n_qubits: u32,
    target: BasisIndex,
}

impl GroverInstance {
    /// `target` uses the 1-based labels `1 ..= 2^n`.
    pub fn new(n_qubits: u32, target: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(QuantumError::NoQubits);
        }
        if n_qubits > MAX_KERNEL_QUBITS {
            return Err(QuantumError::TooManyQubits(n_qubits));
        }
        Ok(Self {
            n_qubits,
            target: BasisIndex::new(target, n_qubits)?,
        })
    }

    pub fn n_qubits(&self) -> u32 {
        self.n_qubits
    }

    pub fn n_states(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn target(&self) -> BasisIndex {
        self.target
    }

    pub fn angles(&self) -> GroverAngles {
        GroverAngles::for_qubits(self.n_qubits)
    }

    fn require_dense(&self) -> Result<()> {
        if self.n_qubits > MAX_DENSE_QUBITS {
            return Err(QuantumError::TooManyQubits(self.n_qubits));
        }
        Ok(())
    }
}

/// `θ = arcsin(1/√N)`, half of the rotation angle of one Grover iteration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroverAngles {
    theta: f64,
    n_states: u64,
}

impl GroverAngles {
    pub fn new(n_states: u64) -> Self {
        assert!(n_states >= 1, "search space must be non-empty");
        let theta = (1.0 / (n_states as f64).sqrt()).asin();
        Self { theta, n_states }
    }

    pub fn for_qubits(n_qubits: u32) -> Self {
        Self::new(1u64 << n_qubits)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn n_states(&self) -> u64 {
        self.n_states
    }

    /// Real-valued optimum `π/(4θ) − 1/2`.
    pub fn optimal_t_real(&self) -> f64 {
        snap(PI / (4.0 * self.theta) - 0.5)
    }

    /// Largest `t` with `(2t + 1)θ ≤ π`.
    pub fn one_period_t_max(&self) -> u32 {
        snap((PI / self.theta - 1.0) / 2.0).floor().max(0.0) as u32
    }
}

/// Coordinates in the `{|τ⊥⟩, |τ⟩}` plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoDState {
    pub c_perp: f64,
    pub c_tau: f64,
}

impl TwoDState {
    /// `|φ₀⟩ = (cos θ, sin θ)`.
    pub fn initial(angles: &GroverAngles) -> Self {
        Self {
            c_perp: angles.theta.cos(),
            c_tau: angles.theta.sin(),
        }
    }

    /// `(cos((2t+1)θ), sin((2t+1)θ))`.
    pub fn after(angles: &GroverAngles, t: u32) -> Self {
        let phase = (2.0 * t as f64 + 1.0) * angles.theta;
        Self {
            c_perp: phase.cos(),
            c_tau: phase.sin(),
        }
    }

    /// Projects a full state onto the plane: `(Re⟨τ⊥|q⟩, Re⟨τ|q⟩)`.
    pub fn from_state(inst: &GroverInstance, q: &QState) -> Self {
        let perp = tau_perp(inst);
        let c_perp = perp
            .amplitudes()
            .inner(q.amplitudes())
            .expect("same dimension")
            .re;
        Self {
            c_perp,
            c_tau: q.amplitude(inst.target).re,
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c_perp * self.c_perp + self.c_tau * self.c_tau
    }
}

/// One Grover iteration in the plane: rotation by `2θ`.
pub fn rotation_step_2d(s: TwoDState, angles: &GroverAngles) -> TwoDState {
    let (sin2, cos2) = (2.0 * angles.theta).sin_cos();
    TwoDState {
        c_perp: cos2 * s.c_perp - sin2 * s.c_tau,
        c_tau: sin2 * s.c_perp + cos2 * s.c_tau,
    }
}

/// `U_f = I − 2|τ⟩⟨τ|`: diagonal, `−1` at the target.
pub fn oracle(inst: &GroverInstance) -> Result<CMatrix> {
    inst.require_dense()?;
    let mut diag = vec![ONE; inst.n_states()];
    diag[inst.target.zero_based()] = -ONE;
    Ok(CMatrix::diagonal(&diag))
}

/// Normalized superposition of every non-target basis state.
pub fn tau_perp(inst: &GroverInstance) -> QState {
    let n = inst.n_states();
    let amp = Complex::new((1.0 / (n - 1) as f64).sqrt(), 0.0);
    let mut v = vec![amp; n];
    v[inst.target.zero_based()] = Complex::new(0.0, 0.0);
    make_qstate(CVector::new(v).expect("finite")).expect("unit norm by construction")
}

/// `D = 2|φ₀⟩⟨φ₀| − I`: `1/2^{n−1} − 1` on the diagonal, `1/2^{n−1}` elsewhere.
pub fn diffusion(n_qubits: u32) -> Result<CMatrix> {
    if n_qubits == 0 {
        return Err(QuantumError::NoQubits);
    }
    if n_qubits > MAX_DENSE_QUBITS {
        return Err(QuantumError::TooManyQubits(n_qubits));
    }
    let off = 1.0 / (1u64 << (n_qubits - 1)) as f64;
    Ok(CMatrix::from_fn(1 << n_qubits, |i, j| {
        Complex::new(if i == j { off - 1.0 } else { off }, 0.0)
    }))
}

/// `G = D · U_f`.
pub fn grover_operator(inst: &GroverInstance) -> Result<CMatrix> {
    Ok(matmul(&diffusion(inst.n_qubits)?, &oracle(inst)?)?)
}

/// `H^{⊗n}|0…0⟩` computed with dense matrices.
pub fn initial_state_dense(n_qubits: u32) -> Result<QState> {
    quantum::evolve(&n_hadamard(n_qubits)?, &zero_state(n_qubits)?)
}

/// `|φ₀⟩` written down directly: every amplitude `1/√N`.
pub fn uniform_state(n_qubits: u32) -> Result<QState> {
    if n_qubits == 0 {
        return Err(QuantumError::NoQubits);
    }
    let n = 1usize << n_qubits;
    let amp = Complex::new(1.0 / (n as f64).sqrt(), 0.0);
    make_qstate(CVector::new(vec![amp; n])?)
}

/// Which simulation path produced a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SimulationPath {
    Dense,
    Kernel,
}

impl SimulationPath {
    /// Dense up to [`dense_cap`] qubits, kernel beyond.
    pub fn for_qubits(n_qubits: u32) -> Self {
        if n_qubits <= dense_cap() {
            Self::Dense
        } else {
            Self::Kernel
        }
    }
}

/// `Gᵗ H^{⊗n}|0…0⟩`, choosing the path by [`SimulationPath::for_qubits`].
pub fn state_after_iterations(inst: &GroverInstance, t: u32) -> QState {
    state_after_iterations_via(inst, t, SimulationPath::for_qubits(inst.n_qubits))
        .expect("path chosen within its qubit limit")
}

pub fn state_after_iterations_via(
    inst: &GroverInstance,
    t: u32,
    path: SimulationPath,
) -> Result<QState> {
    match path {
        SimulationPath::Dense => state_after_iterations_dense(inst, t),
        SimulationPath::Kernel => Ok(state_after_iterations_kernel(inst, t)),
    }
}

/// Matrix path: `matrix_pow(G, t)` applied to `H^{⊗n}|0…0⟩`.
pub fn state_after_iterations_dense(inst: &GroverInstance, t: u32) -> Result<QState> {
    let g = grover_operator(inst)?;
    let start = initial_state_dense(inst.n_qubits)?;
    make_qstate(matvec(&matrix_pow(&g, t), start.amplitudes())?)
}

/// Matrix path for every `t` in `0 ..= t_max`, reusing `Gᵗ⁺¹ = G · Gᵗ`.
///
/// The operator is taken as given and results are not re-normalized, so a
/// deliberately broken operator shows up as a residual instead of an error.
pub fn dense_trajectory(g: &CMatrix, start: &CVector, t_max: u32) -> Vec<CVector> {
    let mut power = CMatrix::identity(g.dim());
    let mut out = Vec::with_capacity(t_max as usize + 1);
    for t in 0..=t_max {
        if t > 0 {
            power = g * &power;
        }
        out.push(matvec(&power, start).expect("operator matches state dimension"));
    }
    out
}

/// One kernel iteration in place: phase flip at `target`, then inversion
/// about the mean (`a_i ← 2·mean − a_i`).
pub fn kernel_iteration(amplitudes: &mut [Complex], target: usize) {
    amplitudes[target] = -amplitudes[target];
    // A plain running sum over 2^20+ terms drifts the norm by ~1e-9 across a
    // few hundred iterations, so the mean is accumulated with compensation.
    let sum = compensated_sum(amplitudes);
    let twice_mean = sum * (2.0 / amplitudes.len() as f64);
    for a in amplitudes.iter_mut() {
        *a = twice_mean - *a;
    }
}

/// Neumaier summation, applied to real and imaginary parts separately.
fn compensated_sum(values: &[Complex]) -> Complex {
    fn add(acc: &mut (f64, f64), x: f64) {
        let (sum, comp) = *acc;
        let t = sum + x;
        let c = if sum.abs() >= x.abs() {
            (sum - t) + x
        } else {
            (x - t) + sum
        };
        *acc = (t, comp + c);
    }
    let (mut re, mut im) = ((0.0, 0.0), (0.0, 0.0));
    for z in values {
        add(&mut re, z.re);
        add(&mut im, z.im);
    }
    Complex::new(re.0 + re.1, im.0 + im.1)
}

/// Kernel path: `O(N)` work per iteration, no matrices.
pub fn state_after_iterations_kernel(inst: &GroverInstance, t: u32) -> QState {
    let mut amps = uniform_state(inst.n_qubits)
        .expect("n >= 1")
        .into_amplitudes()
        .into_vec();
    let target = inst.target.zero_based();
    for _ in 0..t {
        kernel_iteration(&mut amps, target);
    }
    make_qstate(CVector::new(amps).expect("finite")).expect("reflections preserve the norm")
}

/// `cos((2t+1)θ)|τ⊥⟩ + sin((2t+1)θ)|τ⟩` assembled from its two components.
pub fn closed_form_state(inst: &GroverInstance, t: u32) -> QState {
    let TwoDState { c_perp, c_tau } = TwoDState::after(&inst.angles(), t);
    let mut v = tau_perp(inst)
        .into_amplitudes()
        .scale(Complex::new(c_perp, 0.0))
        .into_vec();
    v[inst.target.zero_based()] += Complex::new(c_tau, 0.0);
    make_qstate(CVector::new(v).expect("finite")).expect("cos² + sin² = 1")
}

/// `p_t = sin²((2t+1)θ)`.
pub fn success_probability(angles: &GroverAngles, t: u32) -> f64 {
    ((2.0 * t as f64 + 1.0) * angles.theta).sin().powi(2)
}

/// The two integer candidates around the real optimum and the better one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimalIterations {
    pub t_real: f64,
    pub t_floor: u32,
    pub t_ceil: u32,
    pub t_best: u32,
    pub p_best: f64,
}

/// Picks between `⌊π/(4θ) − 1/2⌋` and `⌈π/(4θ) − 1/2⌉` by comparing success
/// probabilities; a tie (within [`PROBABILITY_TIE`]) goes to the floor.
pub fn optimal_iterations(angles: &GroverAngles) -> OptimalIterations {
    let t_real = angles.optimal_t_real();
    let t_floor = t_real.floor().max(0.0) as u32;
    let t_ceil = t_real.ceil().max(0.0) as u32;
    let p_floor = success_probability(angles, t_floor);
    let p_ceil = success_probability(angles, t_ceil);
    let (t_best, p_best) = if p_ceil - p_floor > PROBABILITY_TIE {
        (t_ceil, p_ceil)
    } else {
        (t_floor, p_floor)
    };
    OptimalIterations {
        t_real,
        t_floor,
        t_ceil,
        t_best,
        p_best,
    }
}

/// Inclusive range of iteration counts; may be empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IterationRange {
    pub first: u32,
    pub last: u32,
}

impl IterationRange {
    pub const EMPTY: IterationRange = IterationRange { first: 1, last: 0 };

    fn from_bounds(first: f64, last: f64) -> Self {
        let first = first.max(0.0);
        if last < first {
            return Self::EMPTY;
        }
        Self {
            first: first as u32,
            last: last as u32,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.first > self.last
    }

    pub fn contains(&self, t: u32) -> bool {
        self.first <= t && t <= self.last
    }

    pub fn iter(&self) -> RangeInclusive<u32> {
        self.first..=self.last
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            (self.last - self.first) as usize + 1
        }
    }
}

/// Integers `t` with `0 < t` and `t + 1 ≤ π/(4θ) − 1/2`, where
/// `p_{t+1} > p_t` is guaranteed.
pub fn monotonic_increase_range(angles: &GroverAngles) -> IterationRange {
    let upper = angles.optimal_t_real();
    IterationRange::from_bounds(1.0, (upper - 1.0).floor())
}

/// Integers `t` with `π/(4θ) − 1/2 ≤ t ≤ π/(2θ) − 3/2`, where
/// `p_t > p_{t+1}` is guaranteed.
pub fn monotonic_decrease_range(angles: &GroverAngles) -> IterationRange {
    let lower = angles.optimal_t_real();
    let upper = snap(PI / (2.0 * angles.theta) - 1.5);
    IterationRange::from_bounds(lower.ceil(), upper.floor())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::is_unitary;

    fn inst(n: u32, target: usize) -> GroverInstance {
        GroverInstance::new(n, target).unwrap()
    }

    #[test]
    fn oracle_flips_only_the_target() {
        let i = inst(2, 3);
        let uf = oracle(&i).unwrap();
        let e3 = QState::basis(2, i.target()).unwrap();
        let e1 = QState::basis(2, BasisIndex::new(1, 2).unwrap()).unwrap();
        let out3 = matvec(&uf, e3.amplitudes()).unwrap();
        assert_eq!(out3, e3.amplitudes().scale(-ONE));
        assert_eq!(&matvec(&uf, e1.amplitudes()).unwrap(), e1.amplitudes());
        assert_eq!(&uf * &uf, CMatrix::identity(4));
        assert!(is_unitary(&uf, 1e-10));
    }

    #[test]
    fn tau_perp_examples() {
        let p = tau_perp(&inst(1, 1));
        assert_eq!(p.amplitudes().as_slice(), &[Complex::new(0.0, 0.0), ONE]);
        let p = tau_perp(&inst(2, 3));
        let s = 1.0 / 3f64.sqrt();
        let expected = CVector::from_real(&[s, s, 0.0, s]).unwrap();
        assert!(p.amplitudes().max_abs_diff(&expected).unwrap() < 1e-15);
        let tau = QState::basis(2, BasisIndex::new(3, 2).unwrap()).unwrap();
        assert_eq!(p.amplitudes().inner(tau.amplitudes()).unwrap().norm(), 0.0);
    }

    #[test]
    fn diffusion_entries() {
        let d1 = diffusion(1).unwrap();
        assert_eq!(
            d1,
            CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
        );
        let d2 = diffusion(2).unwrap();
        assert_eq!(d2.get(0, 0).re, -0.5);
        assert_eq!(d2.get(2, 1).re, 0.5);
        for n in 1..=6 {
            assert!(is_unitary(&diffusion(n).unwrap(), 1e-10), "n = {n}");
        }
    }

    #[test]
    fn two_qubit_search_succeeds_in_one_step() {
        for target in 1..=4 {
            let i = inst(2, target);
            assert!(is_unitary(&grover_operator(&i).unwrap(), 1e-10));
            for q in [
                state_after_iterations_dense(&i, 1).unwrap(),
                state_after_iterations_kernel(&i, 1),
            ] {
                assert!((q.amplitude(i.target()).norm() - 1.0).abs() < 1e-12);
            }
        }
        let g = grover_operator(&inst(2, 1)).unwrap();
        assert_eq!(matrix_pow(&g, 0), CMatrix::identity(4));
    }

    #[test]
    fn zero_iterations_give_uniform_state() {
        let i = inst(3, 5);
        let uniform = uniform_state(3).unwrap();
        assert!(
            state_after_iterations_dense(&i, 0)
                .unwrap()
                .max_abs_diff(&uniform)
                .unwrap()
                < 1e-15
        );
        assert_eq!(state_after_iterations_kernel(&i, 0), uniform);
        assert!(closed_form_state(&i, 0).max_abs_diff(&uniform).unwrap() < 1e-15);
    }

    #[test]
    fn rotation_step_advances_phase_by_two_theta() {
        let a = GroverAngles::for_qubits(4);
        let s = rotation_step_2d(TwoDState::initial(&a), &a);
        let expected = TwoDState::after(&a, 1);
        assert!((s.c_perp - expected.c_perp).abs() < 1e-15);
        assert!((s.c_tau - (3.0 * a.theta()).sin()).abs() < 1e-15);
    }

    #[test]
    fn success_probability_examples() {
        let a16 = GroverAngles::new(16);
        assert!((success_probability(&a16, 0) - 0.0625).abs() < 1e-15);
        assert!((success_probability(&GroverAngles::new(4), 1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn optimal_iteration_examples() {
        let o = optimal_iterations(&GroverAngles::new(4));
        assert_eq!((o.t_real, o.t_floor, o.t_ceil, o.t_best), (1.0, 1, 1, 1));
        assert!((o.p_best - 1.0).abs() < 1e-12);

        let o = optimal_iterations(&GroverAngles::new(16));
        assert_eq!((o.t_floor, o.t_ceil, o.t_best), (2, 3, 3));

        let o = optimal_iterations(&GroverAngles::new(2));
        assert!((o.t_real - 0.5).abs() < 1e-12);
        assert_eq!((o.t_floor, o.t_ceil, o.t_best), (0, 1, 0));
        assert!((o.p_best - 0.5).abs() < 1e-12);
    }

    #[test]
    fn monotonic_ranges() {
        let a16 = GroverAngles::new(16);
        let inc = monotonic_increase_range(&a16);
        assert_eq!(inc, IterationRange { first: 1, last: 1 });
        let dec = monotonic_decrease_range(&a16);
        assert_eq!(dec, IterationRange { first: 3, last: 4 });

        let a4 = GroverAngles::new(4);
        assert!(monotonic_increase_range(&a4).is_empty());
        assert_eq!(
            monotonic_decrease_range(&a4),
            IterationRange { first: 1, last: 1 }
        );

        let a2 = GroverAngles::new(2);
        assert!(monotonic_increase_range(&a2).is_empty());
        assert!(monotonic_decrease_range(&a2).is_empty());
        assert_eq!(IterationRange::EMPTY.len(), 0);
    }

    #[test]
    fn one_period_bounds() {
        assert_eq!(GroverAngles::new(16).one_period_t_max(), 5);
        assert_eq!(GroverAngles::new(4).one_period_t_max(), 2);
        assert_eq!(GroverAngles::new(2).one_period_t_max(), 1);
    }

    #[test]
    fn kernel_keeps_the_norm_over_many_iterations() {
        let inst = inst(18, 100_000);
        let t = optimal_iterations(&inst.angles()).t_best;
        let q = state_after_iterations_kernel(&inst, t);
        let drift = (q.amplitudes().norm_sqr() - 1.0).abs();
        assert!(drift < 1e-11, "norm drift {drift:e}");
        assert!(
            (q.amplitude(inst.target()).norm_sqr() - success_probability(&inst.angles(), t)).abs()
                < 1e-10
        );
    }

    #[test]
    fn instance_validation() {
        assert!(GroverInstance::new(0, 1).is_err());
        assert!(GroverInstance::new(2, 5).is_err());
        assert!(GroverInstance::new(25, 1).is_err());
        assert!(oracle(&inst(13, 1)).is_err());
    }

    #[test]
    fn dense_cap_defaults_to_six() {
        if std::env::var_os(DENSE_CAP_ENV).is_none() {
            assert_eq!(dense_cap(), DEFAULT_DENSE_CAP);
            assert_eq!(SimulationPath::for_qubits(6), SimulationPath::Dense);
            assert_eq!(SimulationPath::for_qubits(7), SimulationPath::Kernel);
        }
    }
}
