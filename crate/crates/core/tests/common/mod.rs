//! Reference implementations used as test oracles. None of them call into the
//! library's algorithms; they only share the `Complex` type.

#![allow(dead_code)]

use grover_core::Complex;

/// Row-major square matrix as a plain vector of rows.
pub type Rows = Vec<Vec<Complex>>;

/// Kronecker product of two square matrices, straight from the block picture.
pub fn kron(a: &Rows, b: &Rows) -> Rows {
    let (da, db) = (a.len(), b.len());
    let mut out = vec![vec![Complex::new(0.0, 0.0); da * db]; da * db];
    for i1 in 0..da {
        for j1 in 0..da {
            for i2 in 0..db {
                for j2 in 0..db {
                    out[i1 * db + i2][j1 * db + j2] = a[i1][j1] * b[i2][j2];
                }
            }
        }
    }
    out
}

/// Left fold of [`kron`], recursing on the tail.
pub fn kron_list(ms: &[Rows]) -> Rows {
    match ms {
        [] => panic!("empty list"),
        [only] => only.clone(),
        [head, tail @ ..] => kron(head, &kron_list(tail)),
    }
}

pub fn naive_matvec(a: &Rows, v: &[Complex]) -> Vec<Complex> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Complex::new(0.0, 0.0), |acc, (x, y)| acc + x * y)
        })
        .collect()
}

pub fn max_abs_diff(a: &[Complex], b: &[Complex]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Grover state after `t` iterations, built by applying the oracle and the
/// diffusion matrix entry by entry from their definitions. `target` is 0-based.
pub fn naive_grover_state(n_states: usize, target: usize, t: u32) -> Vec<Complex> {
    let re = |x: f64| Complex::new(x, 0.0);
    let k = 2.0 / n_states as f64;
    let diffusion: Rows = (0..n_states)
        .map(|i| {
            (0..n_states)
                .map(|j| re(if i == j { k - 1.0 } else { k }))
                .collect()
        })
        .collect();
    let mut v = vec![re(1.0 / (n_states as f64).sqrt()); n_states];
    for _ in 0..t {
        v[target] = -v[target];
        v = naive_matvec(&diffusion, &v);
    }
    v
}

/// Exact `p_t` for one marked item among `n_states`, as a reduced pair
/// `(numerator, denominator)`, or `None` when the integers would overflow.
///
/// With `s² = 1/N` the ratios `r_k = sin((2k+1)θ)/s` obey
/// `r_{k+1} = 2(1 − 2/N) r_k − r_{k−1}`. Writing `r_k = R_k / N^k` turns this
/// into the integer recurrence `R_{k+1} = 2(N−2) R_k − N² R_{k−1}` with
/// `R_0 = 1`, `R_1 = 3N − 4`, and `p_t = R_t² / N^{2t+1}`.
pub fn exact_success_probability(n_states: u64, t: u32) -> Option<(i128, i128)> {
    let n = n_states as i128;
    let (mut prev, mut cur) = (1i128, 3 * n - 4);
    if t == 0 {
        cur = 1;
    }
    for _ in 1..t {
        let next = (2 * (n - 2))
            .checked_mul(cur)?
            .checked_sub(n.checked_mul(n)?.checked_mul(prev)?)?;
        prev = cur;
        cur = next;
    }
    let num = cur.checked_mul(cur)?;
    let den = n.checked_pow(2 * t + 1)?;
    let g = gcd(num, den);
    Some((num / g, den / g))
}

/// [`exact_success_probability`] as an `f64`, falling back to the same
/// recurrence in floating point when the integers overflow.
pub fn reference_success_probability(n_states: u64, t: u32) -> f64 {
    if let Some((num, den)) = exact_success_probability(n_states, t) {
        return num as f64 / den as f64;
    }
    let n = n_states as f64;
    let c = 2.0 * (1.0 - 2.0 / n);
    let (mut prev, mut cur) = (1.0, 3.0 - 4.0 / n);
    for _ in 1..t {
        let next = c * cur - prev;
        prev = cur;
        cur = next;
    }
    cur * cur / n
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

pub fn rows_of(m: &grover_core::CMatrix) -> Rows {
    (0..m.dim()).map(|i| m.row(i).to_vec()).collect()
}

pub fn max_abs_diff_rows(a: &Rows, b: &Rows) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| max_abs_diff(x, y))
        .fold(0.0, f64::max)
}
