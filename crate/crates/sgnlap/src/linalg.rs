//! Dense complex kernels: matrix-vector products and a pivoted LU
//! log-determinant.  Summation orders are fixed so results are identical
//! across runs and thread counts; parallelism only ever splits independent
//! rows.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

const PAR_THRESHOLD: usize = 128;

/// y = A·x for a row-major n×n matrix.
pub(crate) fn matvec(a: &[Complex64], n: usize, x: &[Complex64], y: &mut [Complex64]) {
    debug_assert_eq!(a.len(), n * n);
    let dot = |row: &[Complex64]| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, xi) in row.iter().zip(x) {
            acc += m * xi;
        }
        acc
    };
    if n >= PAR_THRESHOLD {
        y.par_iter_mut()
            .zip(a.par_chunks(n))
            .for_each(|(yi, row)| *yi = dot(row));
    } else {
        for (yi, row) in y.iter_mut().zip(a.chunks(n)) {
            *yi = dot(row);
        }
    }
}

/// y = Aᴴ·x.  Computed row-of-Aᴴ at a time (column of A), fixed order.
pub(crate) fn matvec_adjoint(a: &[Complex64], n: usize, x: &[Complex64], y: &mut [Complex64]) {
    debug_assert_eq!(a.len(), n * n);
    let dot_col = |j: usize| {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            acc += a[i * n + j].conj() * x[i];
        }
        acc
    };
    if n >= PAR_THRESHOLD {
        y.par_iter_mut()
            .enumerate()
            .for_each(|(j, yj)| *yj = dot_col(j));
    } else {
        for (j, yj) in y.iter_mut().enumerate() {
            *yj = dot_col(j);
        }
    }
}

/// log det of the matrix via LU with partial pivoting; the matrix is
/// destroyed.  The imaginary part is principal per factor, so the result is
/// well-defined modulo 2πi.
pub(crate) fn lu_log_det(a: &mut [Complex64], n: usize) -> Result<Complex64> {
    debug_assert_eq!(a.len(), n * n);
    let mut log = Complex64::new(0.0, 0.0);
    let mut swaps = 0usize;
    let mut pivot_row = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n {
        let mut best = k;
        let mut best_mag = a[k * n + k].norm_sqr();
        for i in (k + 1)..n {
            let mag = a[i * n + k].norm_sqr();
            if mag > best_mag {
                best_mag = mag;
                best = i;
            }
        }
        if best_mag == 0.0 {
            return Err(Error::Singular { pivot: k });
        }
        if best != k {
            for j in k..n {
                a.swap(k * n + j, best * n + j);
            }
            swaps += 1;
        }
        let diag = a[k * n + k];
        log += diag.ln();
        pivot_row[k..n].copy_from_slice(&a[k * n + k..k * n + n]);
        let tail = &mut a[(k + 1) * n..];
        let update = |row: &mut [Complex64]| {
            let f = row[k] / diag;
            row[k] = f;
            for j in (k + 1)..n {
                row[j] -= f * pivot_row[j];
            }
        };
        if n - k - 1 >= PAR_THRESHOLD {
            tail.par_chunks_mut(n).for_each(update);
        } else {
            tail.chunks_mut(n).for_each(update);
        }
    }
    if swaps % 2 == 1 {
        log += Complex64::new(0.0, std::f64::consts::PI);
    }
    Ok(log)
}
