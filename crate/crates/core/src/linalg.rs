//! Dense complex matrices and vectors.
//!
//! Storage is 0-based and row-major. Textbook formulas for quantum operators
//! are usually written with 1-based indices; entry `(i, j)` in that notation
//! is `get(i - 1, j - 1)` here. [`CMatrix::get_one_based`] exists for the few
//! places where keeping the 1-based form makes a test easier to read.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use thiserror::Error;

pub use num_complex::Complex64 as Complex;

pub const ZERO: Complex = Complex::new(0.0, 0.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("incompatible operands: left has dimension {left}, right has dimension {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,
    #[error("expected {expected} entries, got {actual}")]
    WrongLength { expected: usize, actual: usize },
    #[error("non-finite entry at position {0}")]
    NonFinite(usize),
    #[error("tensor product of an empty matrix list is undefined")]
    EmptyTensorList,
    #[error("tensor factor {index} is {dim}x{dim}, expected 2x2")]
    NotQubitGate { index: usize, dim: usize },
}

pub type Result<T> = std::result::Result<T, LinalgError>;

fn is_finite(z: &Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

fn check_finite(entries: &[Complex]) -> Result<()> {
    match entries.iter().position(|z| !is_finite(z)) {
        Some(pos) => Err(LinalgError::NonFinite(pos)),
        None => Ok(()),
    }
}

/// Column vector of complex amplitudes.
#[derive(Clone, PartialEq)]
pub struct CVector {
    entries: Vec<Complex>,
}

impl CVector {
    pub fn new(entries: Vec<Complex>) -> Result<Self> {
        if entries.is_empty() {
            return Err(LinalgError::EmptyMatrix);
        }
        check_finite(&entries)?;
        Ok(Self { entries })
    }

    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "vector dimension must be positive");
        Self {
            entries: vec![ZERO; dim],
        }
    }

    /// Standard basis vector with a one at 0-based position `index`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[index] = ONE;
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.entries
    }

    pub fn into_vec(self) -> Vec<Complex> {
        self.entries
    }

    /// Squared Euclidean norm, `Σ |v_i|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Inner product `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &CVector) -> Result<Complex> {
        if self.dim() != other.dim() {
            return Err(LinalgError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn scale(&self, factor: Complex) -> CVector {
        CVector {
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CVector) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(LinalgError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

impl Index<usize> for CVector {
    type Output = Complex;

    fn index(&self, i: usize) -> &Complex {
        &self.entries[i]
    }
}

impl fmt::Debug for CVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.entries).finish()
    }
}

/// Dense square complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    entries: Vec<Complex>,
}

impl CMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(dim: usize, entries: Vec<Complex>) -> Result<Self> {
        if dim == 0 {
            return Err(LinalgError::EmptyMatrix);
        }
        if entries.len() != dim * dim {
            return Err(LinalgError::WrongLength {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        check_finite(&entries)?;
        Ok(Self { dim, entries })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(LinalgError::WrongLength {
                    expected: dim,
                    actual: row.len(),
                });
            }
            entries.extend(row.iter().map(|&x| Complex::new(x, 0.0)));
        }
        Self::new(dim, entries)
    }

    /// Builds a matrix entry by entry from 0-based `(row, col)`.
    ///
    /// Panics if `f` produces a non-finite value.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        check_finite(&entries).expect("matrix entries must be finite");
        Self { dim, entries }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![ONE; dim])
    }

    pub fn diagonal(diag: &[Complex]) -> Self {
        let dim = diag.len();
        let mut m = Self::zeros(dim);
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * dim + i] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.entries[row * self.dim + col]
    }

    /// Entry at 1-based `(row, col)`.
    pub fn get_one_based(&self, row: usize, col: usize) -> Complex {
        assert!(row >= 1 && col >= 1, "1-based indices start at 1");
        self.get(row - 1, col - 1)
    }

    pub fn row(&self, row: usize) -> &[Complex] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.entries
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.dim, |i, j| self.get(j, i))
    }

    pub fn scale(&self, factor: Complex) -> CMatrix {
        CMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> Result<f64> {
        same_dim(self, other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn checked_add(&self, other: &CMatrix) -> Result<CMatrix> {
        same_dim(self, other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CMatrix {
            dim: self.dim,
            entries,
        })
    }

    pub fn checked_sub(&self, other: &CMatrix) -> Result<CMatrix> {
        same_dim(self, other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CMatrix {
            dim: self.dim,
            entries,
        })
    }
}

fn same_dim(a: &CMatrix, b: &CMatrix) -> Result<()> {
    if a.dim != b.dim {
        return Err(LinalgError::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    Ok(())
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.entries[i * self.dim + j]
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for i in 0..self.dim {
            list.entry(&self.row(i));
        }
        list.finish()
    }
}

// Operator sugar for same-dimension operands. Panics on mismatch; use the
// `checked_*` functions when dimensions are not known to agree.
impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        matmul(self, rhs).expect("matrix product dimensions")
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        self.checked_add(rhs).expect("matrix sum dimensions")
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        self.checked_sub(rhs).expect("matrix difference dimensions")
    }
}

/// Conjugate transpose `A†`.
pub fn hermitian_conjugate(a: &CMatrix) -> CMatrix {
    CMatrix::from_fn(a.dim, |i, j| a.get(j, i).conj())
}

pub fn matmul(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    same_dim(a, b)?;
    let n = a.dim;
    let mut out = vec![ZERO; n * n];
    // i-k-j order keeps the inner loop on contiguous rows of `b` and `out`.
    for i in 0..n {
        let out_row = &mut out[i * n..(i + 1) * n];
        for k in 0..n {
            let aik = a.entries[i * n + k];
            if aik == ZERO {
                continue;
            }
            let b_row = &b.entries[k * n..(k + 1) * n];
            for (o, bkj) in out_row.iter_mut().zip(b_row) {
                *o += aik * bkj;
            }
        }
    }
    Ok(CMatrix {
        dim: n,
        entries: out,
    })
}

/// `result_i = Σ_j A_ij · v_j`.
pub fn matvec(a: &CMatrix, v: &CVector) -> Result<CVector> {
    if a.dim != v.dim() {
        return Err(LinalgError::DimensionMismatch {
            left: a.dim,
            right: v.dim(),
        });
    }
    let entries = (0..a.dim)
        .map(|i| a.row(i).iter().zip(&v.entries).map(|(x, y)| x * y).sum())
        .collect();
    Ok(CVector { entries })
}

/// `max(‖A†A − I‖_max, ‖AA† − I‖_max)`.
pub fn unitarity_residual(a: &CMatrix) -> f64 {
    let adj = hermitian_conjugate(a);
    let id = CMatrix::identity(a.dim);
    let left = (&adj * a).max_abs_diff(&id).expect("same dimension");
    let right = (a * &adj).max_abs_diff(&id).expect("same dimension");
    left.max(right)
}

pub fn is_unitary(a: &CMatrix, tol: f64) -> bool {
    debug_assert!(tol > 0.0);
    unitarity_residual(a) < tol
}

/// Worst deviation of the column Gram matrix from the identity:
/// `max_{x,y} |Σ_i A_ix · conj(A_iy) − δ_xy|`.
pub fn column_orthonormality_residual(a: &CMatrix) -> f64 {
    let n = a.dim;
    let mut worst = 0.0f64;
    for x in 0..n {
        for y in x..n {
            let dot: Complex = (0..n).map(|i| a.get(i, x) * a.get(i, y).conj()).sum();
            let delta = if x == y { ONE } else { ZERO };
            worst = worst.max((dot - delta).norm());
        }
    }
    worst
}

pub fn unitary_columns_orthonormal(a: &CMatrix, tol: f64) -> bool {
    column_orthonormality_residual(a) < tol
}

/// Tensor product `A_1 ⊗ A_2 ⊗ … ⊗ A_k` of 2×2 factors, evaluated entry by
/// entry from the bit decomposition of the row and column indices.
///
/// Bit `l` of the (0-based) row index selects the row of factor `A_{k-l}`,
/// so the first factor in the list acts on the most significant bit.
pub fn tensor_product_list(ms: &[CMatrix]) -> Result<CMatrix> {
    if ms.is_empty() {
        return Err(LinalgError::EmptyTensorList);
    }
    if let Some((index, m)) = ms.iter().enumerate().find(|(_, m)| m.dim != 2) {
        return Err(LinalgError::NotQubitGate { index, dim: m.dim });
    }
    let k = ms.len();
    let dim = 1usize << k;
    Ok(CMatrix::from_fn(dim, |i, j| {
        (0..k)
            .map(|l| {
                let factor = &ms[k - 1 - l];
                factor.get((i >> l) & 1, (j >> l) & 1)
            })
            .product()
    }))
}

/// `[f(0), f(1), …, f(n − 1)]`.
pub fn matrix_list_gen(f: impl Fn(usize) -> CMatrix, n: usize) -> Result<Vec<CMatrix>> {
    if n == 0 {
        return Err(LinalgError::EmptyTensorList);
    }
    Ok((0..n).map(f).collect())
}

/// `A⁰ = I`, `Aᵗ⁺¹ = A · Aᵗ`.
pub fn matrix_pow(a: &CMatrix, t: u32) -> CMatrix {
    let mut acc = CMatrix::identity(a.dim);
    for _ in 0..t {
        acc = a * &acc;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn hadamard() -> CMatrix {
        let s = 1.0 / 2f64.sqrt();
        CMatrix::from_real_rows(&[&[s, s], &[s, -s]]).unwrap()
    }

    #[test]
    fn conjugates_pure_imaginary_scalar() {
        let m = CMatrix::new(1, vec![c(0.0, 1.0)]).unwrap();
        assert_eq!(hermitian_conjugate(&m).get(0, 0), c(0.0, -1.0));
    }

    #[test]
    fn hadamard_is_self_adjoint() {
        assert_eq!(hermitian_conjugate(&hadamard()), hadamard());
    }

    #[test]
    fn hermitian_conjugate_swaps_and_conjugates() {
        let m = CMatrix::new(2, vec![c(1.0, 2.0), c(3.0, -1.0), c(0.5, 0.0), c(0.0, 4.0)]).unwrap();
        let h = hermitian_conjugate(&m);
        assert_eq!(h.get(0, 1), c(0.5, 0.0));
        assert_eq!(h.get(1, 0), c(3.0, 1.0));
        assert_eq!(h.get(1, 1), c(0.0, -4.0));
    }

    #[test]
    fn matmul_rejects_mismatched_dims() {
        let err = matmul(&CMatrix::identity(2), &CMatrix::identity(4)).unwrap_err();
        assert_eq!(err, LinalgError::DimensionMismatch { left: 2, right: 4 });
        assert!(matvec(&CMatrix::identity(2), &CVector::zeros(3)).is_err());
    }

    #[test]
    fn diagonal_products_multiply_entrywise() {
        let a = [c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0)];
        let b = [c(2.0, 0.0), c(4.0, 1.0), c(-1.0, -1.0)];
        let prod: Vec<Complex> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        let lhs = matmul(&CMatrix::diagonal(&a), &CMatrix::diagonal(&b)).unwrap();
        assert_eq!(lhs, CMatrix::diagonal(&prod));
    }

    #[test]
    fn identity_is_neutral_and_self_adjoint() {
        let id = CMatrix::identity(4);
        let a = CMatrix::from_fn(4, |i, j| c(i as f64 - 1.5, (j * j) as f64 * 0.25));
        assert_eq!(matmul(&id, &a).unwrap(), a);
        assert_eq!(matmul(&a, &id).unwrap(), a);
        assert_eq!(hermitian_conjugate(&id), id);
        let d = CMatrix::diagonal(&[c(1.0, 1.0), c(2.0, 0.0)]);
        assert_eq!(d.transpose(), d);
    }

    #[test]
    fn hadamard_squares_to_identity() {
        let hh = matmul(&hadamard(), &hadamard()).unwrap();
        assert!(hh.max_abs_diff(&CMatrix::identity(2)).unwrap() < 1e-15);
    }

    #[test]
    fn hadamard_maps_zero_to_plus() {
        let out = matvec(&hadamard(), &CVector::basis(2, 0)).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert_eq!(out[0], c(s, 0.0));
        assert_eq!(out[1], c(s, 0.0));
    }

    #[test]
    fn unitarity_detection() {
        assert!(is_unitary(&hadamard(), 1e-10));
        assert!(is_unitary(&CMatrix::identity(8), 1e-10));
        assert!(!is_unitary(&CMatrix::identity(2).scale(c(2.0, 0.0)), 1e-10));
    }

    #[test]
    fn duplicated_columns_are_not_orthonormal() {
        let s = 1.0 / 2f64.sqrt();
        let m = CMatrix::from_real_rows(&[&[s, s], &[s, s]]).unwrap();
        assert!(!unitary_columns_orthonormal(&m, 1e-10));
        assert!(unitary_columns_orthonormal(&hadamard(), 1e-12));
        assert!(unitary_columns_orthonormal(&CMatrix::identity(3), 1e-12));
    }

    #[test]
    fn tensor_rejects_bad_lists() {
        assert_eq!(
            tensor_product_list(&[]).unwrap_err(),
            LinalgError::EmptyTensorList
        );
        let err = tensor_product_list(&[hadamard(), CMatrix::identity(4)]).unwrap_err();
        assert_eq!(err, LinalgError::NotQubitGate { index: 1, dim: 4 });
    }

    #[test]
    fn tensor_of_single_factor_is_that_factor() {
        assert_eq!(
            tensor_product_list(&[CMatrix::identity(2)]).unwrap(),
            CMatrix::identity(2)
        );
        assert_eq!(tensor_product_list(&[hadamard()]).unwrap(), hadamard());
    }

    #[test]
    fn tensor_of_two_hadamards() {
        let hh = tensor_product_list(&[hadamard(), hadamard()]).unwrap();
        assert_eq!(hh.dim(), 4);
        assert!((hh.get_one_based(4, 4) - c(0.5, 0.0)).norm() < 1e-15);
        for z in hh.as_slice() {
            assert!((z.re.abs() - 0.5).abs() < 1e-15 && z.im == 0.0);
        }
    }

    #[test]
    fn first_factor_acts_on_most_significant_bit() {
        // X ⊗ I swaps the two halves of the basis.
        let x = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let m = tensor_product_list(&[x, CMatrix::identity(2)]).unwrap();
        assert_eq!(m.get(0, 2), ONE);
        assert_eq!(m.get(1, 3), ONE);
        assert_eq!(m.get(0, 1), ZERO);
    }

    #[test]
    fn matrix_list_generation() {
        let hs = matrix_list_gen(|_| hadamard(), 3).unwrap();
        assert_eq!(hs, vec![hadamard(), hadamard(), hadamard()]);
        let mixed = matrix_list_gen(
            |k| {
                if k == 0 {
                    hadamard()
                } else {
                    CMatrix::identity(2)
                }
            },
            2,
        )
        .unwrap();
        assert_eq!(mixed, vec![hadamard(), CMatrix::identity(2)]);
        assert!(matrix_list_gen(|_| hadamard(), 0).is_err());
    }

    #[test]
    fn matrix_powers() {
        let a = CMatrix::new(
            2,
            vec![c(0.3, 0.1), c(-1.0, 0.2), c(0.7, -0.4), c(0.0, 1.1)],
        )
        .unwrap();
        assert_eq!(matrix_pow(&a, 0), CMatrix::identity(2));
        assert_eq!(matrix_pow(&a, 1), a);
        assert_eq!(matrix_pow(&a, 2), matmul(&a, &a).unwrap());
    }

    #[test]
    fn rejects_non_finite_entries() {
        assert_eq!(
            CMatrix::new(1, vec![c(f64::NAN, 0.0)]).unwrap_err(),
            LinalgError::NonFinite(0)
        );
        assert!(CVector::new(vec![ONE, c(0.0, f64::INFINITY)]).is_err());
        assert!(CMatrix::new(2, vec![ONE; 3]).is_err());
        assert!(CMatrix::new(0, vec![]).is_err());
    }

    #[test]
    fn inner_product_is_conjugate_linear_on_the_left() {
        let u = CVector::new(vec![c(0.0, 1.0), ONE]).unwrap();
        let v = CVector::new(vec![ONE, ONE]).unwrap();
        assert_eq!(u.inner(&v).unwrap(), c(1.0, -1.0));
    }
}
