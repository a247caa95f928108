//! Pure states, gates, unitary evolution and projective measurement.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{
    self, hermitian_conjugate, matvec, tensor_product_list, CMatrix, CVector, Complex, LinalgError,
};

/// Allowed deviation of `‖q‖²` from 1 for a value to count as a state.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Tolerance used by [`evolve`] when checking that an operator is unitary.
pub const EVOLUTION_UNITARITY_TOLERANCE: f64 = 1e-10;

/// Largest register handled by dense `2^n × 2^n` matrices.
pub const MAX_DENSE_QUBITS: u32 = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantumError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("vector dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("squared norm {0} is not 1 (tolerance {NORM_TOLERANCE:e})")]
    NotNormalized(f64),
    #[error("qubit count must be at least 1")]
    NoQubits,
    #[error("{0} qubits exceeds the dense-matrix limit of {MAX_DENSE_QUBITS}")]
    TooManyQubits(u32),
    #[error("basis index {index} outside 1..={max}")]
    BasisOutOfRange { index: usize, max: usize },
    #[error("operator is not unitary (residual {0:e}); evolution would not preserve probability")]
    IllegalEvolution(f64),
    #[error("states have different qubit counts ({0} vs {1})")]
    QubitMismatch(u32, u32),
    #[error("shot count must be at least 1")]
    NoShots,
}

pub type Result<T> = std::result::Result<T, QuantumError>;

/// Basis label in the 1-based convention `1 ..= 2^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct BasisIndex(usize);

impl BasisIndex {
    pub fn new(value: usize, n_qubits: u32) -> Result<Self> {
        let max = 1usize << n_qubits;
        if value == 0 || value > max {
            return Err(QuantumError::BasisOutOfRange { index: value, max });
        }
        Ok(Self(value))
    }

    pub fn from_zero_based(index: usize, n_qubits: u32) -> Result<Self> {
        Self::new(index + 1, n_qubits)
    }

    pub fn value(self) -> usize {
        self.0
    }

    /// Position of this basis vector in amplitude storage.
    pub fn zero_based(self) -> usize {
        self.0 - 1
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A normalized `2^n`-dimensional state vector.
#[derive(Clone, PartialEq)]
pub struct QState {
    n_qubits: u32,
    amplitudes: CVector,
}

impl QState {
    pub fn n_qubits(&self) -> u32 {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.dim()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: BasisIndex) -> Complex {
        self.amplitudes[index.zero_based()]
    }

    pub fn into_amplitudes(self) -> CVector {
        self.amplitudes
    }

    /// `|amplitude_i|²` for every basis index, in storage order.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes
            .as_slice()
            .iter()
            .map(|z| z.norm_sqr())
            .collect()
    }

    /// Largest entrywise amplitude difference.
    pub fn max_abs_diff(&self, other: &QState) -> Result<f64> {
        if self.n_qubits != other.n_qubits {
            return Err(QuantumError::QubitMismatch(self.n_qubits, other.n_qubits));
        }
        Ok(self.amplitudes.max_abs_diff(&other.amplitudes)?)
    }

    /// Basis state `|m⟩` for a 1-based label.
    pub fn basis(n_qubits: u32, index: BasisIndex) -> Result<Self> {
        if n_qubits == 0 {
            return Err(QuantumError::NoQubits);
        }
        BasisIndex::new(index.value(), n_qubits)?;
        Ok(Self {
            n_qubits,
            amplitudes: CVector::basis(1 << n_qubits, index.zero_based()),
        })
    }
}

impl fmt::Debug for QState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QState")
            .field("n_qubits", &self.n_qubits)
            .field("amplitudes", &self.amplitudes)
            .finish()
    }
}

fn qubits_for_dim(dim: usize) -> Result<u32> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(QuantumError::NotPowerOfTwo(dim));
    }
    Ok(dim.trailing_zeros())
}

/// Wraps a vector as a state. The vector must already be normalized; it is
/// never rescaled.
pub fn make_qstate(v: CVector) -> Result<QState> {
    let n_qubits = qubits_for_dim(v.dim())?;
    let norm = v.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(QuantumError::NotNormalized(norm));
    }
    Ok(QState {
        n_qubits,
        amplitudes: v,
    })
}

/// `|0…0⟩`.
pub fn zero_state(n_qubits: u32) -> Result<QState> {
    QState::basis(n_qubits, BasisIndex(1))
}

pub fn hadamard() -> CMatrix {
    let s = 1.0 / 2f64.sqrt();
    CMatrix::from_real_rows(&[&[s, s], &[s, -s]]).expect("finite 2x2")
}

/// `H^{⊗n}` built from the index-formula tensor product.
pub fn n_hadamard(n_qubits: u32) -> Result<CMatrix> {
    if n_qubits == 0 {
        return Err(QuantumError::NoQubits);
    }
    if n_qubits > MAX_DENSE_QUBITS {
        return Err(QuantumError::TooManyQubits(n_qubits));
    }
    let factors = linalg::matrix_list_gen(|_| hadamard(), n_qubits as usize)?;
    Ok(tensor_product_list(&factors)?)
}

/// `|φ'⟩ = U|φ⟩`, refusing operators that are not unitary.
pub fn evolve(a: &CMatrix, q: &QState) -> Result<QState> {
    if a.dim() != q.dim() {
        return Err(LinalgError::DimensionMismatch {
            left: a.dim(),
            right: q.dim(),
        }
        .into());
    }
    let residual = linalg::unitarity_residual(a);
    if residual.is_nan() || residual >= EVOLUTION_UNITARITY_TOLERANCE {
        return Err(QuantumError::IllegalEvolution(residual));
    }
    make_qstate(matvec(a, &q.amplitudes)?)
}

/// Outer product `|v⟩⟨v|`.
pub fn projector(v: &QState) -> CMatrix {
    let a = v.amplitudes.as_slice();
    CMatrix::from_fn(a.len(), |i, j| a[i] * a[j].conj())
}

/// `‖Σ_m |m⟩⟨m| − I‖_max` over all `2^n` basis projectors.
pub fn projector_completeness_residual(n_qubits: u32) -> Result<f64> {
    let all: Vec<usize> = (1..=(1usize << n_qubits)).collect();
    partial_projector_sum_residual(n_qubits, &all)
}

/// Residual of the identity against the sum of projectors onto the given
/// (1-based) basis labels. Strict subsets leave a trace deficit.
pub fn partial_projector_sum_residual(n_qubits: u32, labels: &[usize]) -> Result<f64> {
    if n_qubits == 0 {
        return Err(QuantumError::NoQubits);
    }
    if n_qubits > MAX_DENSE_QUBITS {
        return Err(QuantumError::TooManyQubits(n_qubits));
    }
    let dim = 1usize << n_qubits;
    let mut sum = CMatrix::zeros(dim);
    for &label in labels {
        let basis = QState::basis(n_qubits, BasisIndex::new(label, n_qubits)?)?;
        sum = &sum + &projector(&basis);
    }
    Ok(sum.max_abs_diff(&CMatrix::identity(dim))?)
}

pub fn projector_completeness(n_qubits: u32, tol: f64) -> Result<bool> {
    Ok(projector_completeness_residual(n_qubits)? < tol)
}

/// `‖(|x⟩⟨x|) y‖²`, the probability of observing `x` when measuring `y`.
pub fn measurement_probability(x: &QState, y: &QState) -> Result<f64> {
    if x.n_qubits != y.n_qubits {
        return Err(QuantumError::QubitMismatch(x.n_qubits, y.n_qubits));
    }
    // (|x⟩⟨x|)y = ⟨x|y⟩ |x⟩ and ‖x‖ = 1; no need to materialize the projector.
    Ok(x.amplitudes.inner(&y.amplitudes)?.norm_sqr() * x.amplitudes.norm_sqr())
}

/// Projector-matrix route to [`measurement_probability`], kept for
/// cross-checking on small registers.
pub fn measurement_probability_dense(x: &QState, y: &QState) -> Result<f64> {
    if x.n_qubits != y.n_qubits {
        return Err(QuantumError::QubitMismatch(x.n_qubits, y.n_qubits));
    }
    Ok(matvec(&projector(x), &y.amplitudes)?.norm_sqr())
}

/// Outcome counts from repeated measurement in the computational basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Histogram {
    n_qubits: u32,
    counts: Vec<u64>,
}

impl Histogram {
    pub fn n_qubits(&self) -> u32 {
        self.n_qubits
    }

    pub fn count(&self, index: BasisIndex) -> u64 {
        self.counts[index.zero_based()]
    }

    /// Counts in storage order (position `i` holds basis label `i + 1`).
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn shots(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn frequency(&self, index: BasisIndex) -> f64 {
        self.count(index) as f64 / self.shots() as f64
    }

    /// Most frequent outcome; ties resolve to the lowest label.
    pub fn mode(&self) -> BasisIndex {
        let (pos, _) =
            self.counts.iter().enumerate().fold(
                (0, 0),
                |best, (i, &c)| if c > best.1 { (i, c) } else { best },
            );
        BasisIndex(pos + 1)
    }

    /// `index,count` rows for every outcome observed at least once.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,count\n");
        for (i, &c) in self.counts.iter().enumerate().filter(|(_, &c)| c > 0) {
            out.push_str(&format!("{},{}\n", i + 1, c));
        }
        out
    }
}

/// Draws `shots` i.i.d. basis outcomes from `q`.
///
/// Each shot takes one `f64` from `ChaCha8Rng::seed_from_u64(seed)`, scales
/// it by the total probability mass and selects the first outcome whose
/// cumulative `|amplitude|²` exceeds it. The same `(state, seed, shots)`
/// always yields the same histogram.
pub fn sample_measurement(q: &QState, seed: u64, shots: u64) -> Result<Histogram> {
    if shots == 0 {
        return Err(QuantumError::NoShots);
    }
    let mut cumulative = Vec::with_capacity(q.dim());
    let mut acc = 0.0;
    for p in q.probabilities() {
        acc += p;
        cumulative.push(acc);
    }
    let total = acc;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; q.dim()];
    for _ in 0..shots {
        let u: f64 = rng.random::<f64>() * total;
        let pos = cumulative.partition_point(|&c| c <= u).min(q.dim() - 1);
        counts[pos] += 1;
    }
    Ok(Histogram {
        n_qubits: q.n_qubits,
        counts,
    })
}

/// Hermitian residual `‖P − P†‖_max`.
pub fn self_adjoint_residual(p: &CMatrix) -> f64 {
    p.max_abs_diff(&hermitian_conjugate(p))
        .expect("same dimension")
}
