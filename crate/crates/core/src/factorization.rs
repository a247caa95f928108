//! Grover-accelerated trial division.
//!
//! Candidates are encoded directly: the basis state `|x⟩` (1-based label
//! `x + 1`) stands for the integer `x`. The oracle marks `x` when
//! `2 ≤ x ≤ ⌊√M⌋` and `x` divides `M`. Every search formula assumes a single
//! marked item, so inputs with zero or several in-range divisors are rejected
//! before any simulation.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::grover::{
    optimal_iterations, state_after_iterations, success_probability, GroverInstance,
};
use crate::quantum::{sample_measurement, Histogram, QuantumError};

/// Smallest accepted modulus.
pub const MIN_MODULUS: u64 = 6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FactorError {
    #[error("modulus {0} is below the minimum of {MIN_MODULUS}")]
    TooSmall(u64),
    #[error("no divisor in search range [2, {limit}] for {m}")]
    NoSolution { m: u64, limit: u64 },
    #[error("{m} has {} divisors in [2, {limit}] ({divisors:?}); only single-solution search is supported", divisors.len())]
    MultipleSolutions {
        m: u64,
        limit: u64,
        divisors: Vec<u64>,
    },
    #[error("t_max = {t_max} runs past one period (largest allowed is {allowed})")]
    BeyondPeriod { t_max: u32, allowed: u32 },
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

pub type Result<T> = std::result::Result<T, FactorError>;

/// `⌊√m⌋` computed exactly.
pub fn isqrt(m: u64) -> u64 {
    if m < 2 {
        return m;
    }
    let square_le = |x: u64| x.checked_mul(x).is_some_and(|s| s <= m);
    let mut x = (m as f64).sqrt() as u64;
    while !square_le(x) {
        x -= 1;
    }
    while square_le(x + 1) {
        x += 1;
    }
    x
}

/// The oracle predicate on a candidate integer.
pub fn is_marked(m: u64, candidate: u64) -> bool {
    candidate >= 2 && candidate <= isqrt(m) && m.is_multiple_of(candidate)
}

/// A modulus paired with the register that covers `[0, ⌊√M⌋]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactorProblem {
    pub m: u64,
    pub n_qubits: u32,
    /// The unique marked candidate.
    pub divisor: u64,
}

impl FactorProblem {
    pub fn new(m: u64) -> Result<Self> {
        if m < MIN_MODULUS {
            return Err(FactorError::TooSmall(m));
        }
        let limit = isqrt(m);
        // Smallest n with 2^n > ⌊√M⌋.
        let n_qubits = 64 - limit.leading_zeros();
        let divisors: Vec<u64> = (2..=limit).filter(|&x| is_marked(m, x)).collect();
        match divisors.as_slice() {
            [] => Err(FactorError::NoSolution { m, limit }),
            [d] => Ok(Self {
                m,
                n_qubits,
                divisor: *d,
            }),
            _ => Err(FactorError::MultipleSolutions { m, limit, divisors }),
        }
    }

    pub fn instance(&self) -> GroverInstance {
        GroverInstance::new(self.n_qubits, self.divisor as usize + 1)
            .expect("divisor fits the register")
    }
}

/// The search instance for factoring `m`.
pub fn build_factor_instance(m: u64) -> Result<GroverInstance> {
    Ok(FactorProblem::new(m)?.instance())
}

/// Outcome of one sampled Grover factor search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorResult {
    pub m: u64,
    pub factor_found: Option<u64>,
    pub cofactor: Option<u64>,
    /// Candidate integer drawn most often.
    pub modal_candidate: u64,
    pub t_used: u32,
    pub p_predicted: f64,
    pub empirical_frequency: f64,
    pub shots: u64,
    pub seed: u64,
    #[serde(skip)]
    pub histogram: Histogram,
}

impl FactorResult {
    pub fn succeeded(&self) -> bool {
        self.factor_found.is_some()
    }
}

/// Runs Grover at the better of the two integer optima, samples `shots`
/// measurements and checks the modal candidate by classical division.
///
/// A modal candidate that does not divide `M` gives a result with no factor
/// rather than an error; the histogram is kept for inspection.
pub fn run_factor_search(prob: &FactorProblem, seed: u64, shots: u64) -> Result<FactorResult> {
    let inst = prob.instance();
    let angles = inst.angles();
    let t_best = optimal_iterations(&angles).t_best;
    let state = state_after_iterations(&inst, t_best);
    let histogram = sample_measurement(&state, seed, shots)?;
    let modal = histogram.mode();
    let candidate = modal.zero_based() as u64;
    let divides = candidate > 1 && candidate < prob.m && prob.m.is_multiple_of(candidate);
    Ok(FactorResult {
        m: prob.m,
        factor_found: divides.then_some(candidate),
        cofactor: divides.then(|| prob.m / candidate),
        modal_candidate: candidate,
        t_used: t_best,
        p_predicted: success_probability(&angles, t_best),
        empirical_frequency: histogram.frequency(modal),
        shots,
        seed,
        histogram,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveRow {
    pub t: u32,
    pub p_simulated: f64,
    pub p_closed_form: f64,
}

/// Success probability against iteration count, simulated and closed-form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbabilityCurve {
    pub rows: Vec<CurveRow>,
}

impl ProbabilityCurve {
    /// Row with the highest simulated probability (earliest on ties).
    pub fn peak(&self) -> Option<&CurveRow> {
        self.rows
            .iter()
            .fold(None, |best: Option<&CurveRow>, row| match best {
                Some(b) if b.p_simulated >= row.p_simulated => Some(b),
                _ => Some(row),
            })
    }

    pub fn max_disagreement(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| (r.p_simulated - r.p_closed_form).abs())
            .fold(0.0, f64::max)
    }

    /// `t,p_simulated,p_closed_form` with 12 significant digits, LF endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,p_simulated,p_closed_form\n");
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{}",
                r.t,
                format_significant(r.p_simulated, 12),
                format_significant(r.p_closed_form, 12)
            )
            .expect("writing to a String");
        }
        out
    }
}

/// `%.{digits}g`-style formatting: fixed notation for moderate exponents,
/// scientific otherwise, trailing zeros kept.
pub fn format_significant(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    // Exponent after rounding to the requested precision.
    let sci = format!("{:.*e}", digits - 1, x);
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        sci
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{:.*}", decimals, x)
    }
}

/// Rows for `t = 0 ..= t_max`, which must stay inside one period.
pub fn probability_curve(inst: &GroverInstance, t_max: u32) -> Result<ProbabilityCurve> {
    let angles = inst.angles();
    let allowed = angles.one_period_t_max();
    if t_max > allowed {
        return Err(FactorError::BeyondPeriod { t_max, allowed });
    }
    let rows = (0..=t_max)
        .map(|t| {
            let state = state_after_iterations(inst, t);
            CurveRow {
                t,
                p_simulated: state.amplitude(inst.target()).norm_sqr(),
                p_closed_form: success_probability(&angles, t),
            }
        })
        .collect();
    Ok(ProbabilityCurve { rows })
}

/// [`probability_curve`] over the full first period.
pub fn one_period_curve(inst: &GroverInstance) -> ProbabilityCurve {
    probability_curve(inst, inst.angles().one_period_t_max()).expect("within one period")
}
