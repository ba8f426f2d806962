//! Matrix exponential via scaling-and-squaring with a Padé(13,13) core.
//!
//! Used as the propagator fallback near exceptional points, where the
//! eigenvector matrix becomes too ill-conditioned for the spectral route.
//! Follows Higham's 2005 formulation: scale A by 2^−s until its 1-norm is
//! below θ₁₃, evaluate the diagonal Padé approximant, then square s times.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Factorize, Solve};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExpmError {
    #[error("Padé denominator is singular (matrix too ill-conditioned): {0}")]
    SingularDenominator(String),
}

// Padé(13,13) coefficients b_0..b_13.
const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

const THETA13: f64 = 5.371_920_351_148_152;

fn one_norm(a: &Array2<Complex64>) -> f64 {
    let mut max = 0.0_f64;
    for j in 0..a.ncols() {
        let s: f64 = (0..a.nrows()).map(|i| a[[i, j]].norm()).sum();
        max = max.max(s);
    }
    max
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// exp(A) for a square complex matrix.
pub fn matrix_exp(a: &Array2<Complex64>) -> Result<Array2<Complex64>, ExpmError> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "matrix_exp requires a square matrix");
    if n == 0 {
        return Ok(Array2::zeros((0, 0)));
    }

    let norm = one_norm(a);
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.mapv(|z| z / 2f64.powi(s as i32));

    let eye = Array2::from_diag_elem(n, c(1.0));
    let a2 = scaled.dot(&scaled);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);

    let u_inner = &a6 * c(PADE13[13]) + &a4 * c(PADE13[11]) + &a2 * c(PADE13[9]);
    let u_poly = u_inner.dot(&a6)
        + &a6 * c(PADE13[7])
        + &a4 * c(PADE13[5])
        + &a2 * c(PADE13[3])
        + &eye * c(PADE13[1]);
    let u = scaled.dot(&u_poly);

    let v_inner = &a6 * c(PADE13[12]) + &a4 * c(PADE13[10]) + &a2 * c(PADE13[8]);
    let v = v_inner.dot(&a6)
        + &a6 * c(PADE13[6])
        + &a4 * c(PADE13[4])
        + &a2 * c(PADE13[2])
        + &eye * c(PADE13[0]);

    // exp(scaled) ≈ (V − U)⁻¹ (V + U), solved column by column
    let num = &v + &u;
    let den = &v - &u;
    let lu = den
        .factorize()
        .map_err(|e| ExpmError::SingularDenominator(e.to_string()))?;
    let mut result = Array2::<Complex64>::zeros((n, n));
    for j in 0..n {
        let col: Array1<Complex64> = num.column(j).to_owned();
        let x = lu
            .solve(&col)
            .map_err(|e| ExpmError::SingularDenominator(e.to_string()))?;
        for i in 0..n {
            result[[i, j]] = x[i];
        }
    }

    for _ in 0..s {
        result = result.dot(&result);
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: &Array2<Complex64>, b: &Array2<Complex64>, tol: f64) {
        for ((i, j), v) in a.indexed_iter() {
            let diff = (v - b[[i, j]]).norm();
            assert!(diff < tol, "({i},{j}): {v} vs {} (diff {diff:.2e})", b[[i, j]]);
        }
    }

    #[test]
    fn exp_zero_is_identity() {
        let z = Array2::<Complex64>::zeros((4, 4));
        let e = matrix_exp(&z).unwrap();
        let eye = Array2::from_diag_elem(4, c(1.0));
        assert_close(&e, &eye, 1e-14);
    }

    #[test]
    fn exp_diagonal() {
        let mut a = Array2::<Complex64>::zeros((2, 2));
        a[[0, 0]] = Complex64::new(0.3, 1.2);
        a[[1, 1]] = Complex64::new(-2.0, 0.4);
        let e = matrix_exp(&a).unwrap();
        assert!((e[[0, 0]] - a[[0, 0]].exp()).norm() < 1e-13);
        assert!((e[[1, 1]] - a[[1, 1]].exp()).norm() < 1e-13);
        assert!(e[[0, 1]].norm() < 1e-15);
    }

    #[test]
    fn exp_antihermitian_is_unitary() {
        // A = -iH for Hermitian H gives unitary exp(A)
        let mut h = Array2::<Complex64>::zeros((3, 3));
        h[[0, 1]] = c(-1.0);
        h[[1, 0]] = c(-1.0);
        h[[1, 2]] = c(-0.5);
        h[[2, 1]] = c(-0.5);
        h[[0, 0]] = c(0.7);
        let a = h.mapv(|z| Complex64::new(0.0, -1.0) * z * 3.0);
        let u = matrix_exp(&a).unwrap();
        let udag = u.t().mapv(|z| z.conj());
        let prod = udag.dot(&u);
        let eye = Array2::from_diag_elem(3, c(1.0));
        assert_close(&prod, &eye, 1e-12);
    }

    #[test]
    fn exp_matches_taylor_series() {
        // brute-force Taylor sum on a small matrix with moderate norm
        let mut a = Array2::<Complex64>::zeros((3, 3));
        a[[0, 1]] = Complex64::new(0.2, -0.4);
        a[[1, 0]] = Complex64::new(-0.1, 0.3);
        a[[1, 2]] = Complex64::new(0.5, 0.0);
        a[[2, 0]] = Complex64::new(0.0, 0.25);
        a[[2, 2]] = Complex64::new(-0.3, 0.1);

        let mut taylor = Array2::from_diag_elem(3, c(1.0));
        let mut term = Array2::from_diag_elem(3, c(1.0));
        for k in 1..60 {
            term = term.dot(&a).mapv(|z| z / k as f64);
            taylor = taylor + &term;
        }
        let e = matrix_exp(&a).unwrap();
        assert_close(&e, &taylor, 1e-13);
    }

    #[test]
    fn large_norm_requires_scaling() {
        let mut a = Array2::<Complex64>::zeros((2, 2));
        a[[0, 0]] = c(30.0);
        a[[1, 1]] = c(-30.0);
        let e = matrix_exp(&a).unwrap();
        assert!((e[[0, 0]].re - 30f64.exp()).abs() / 30f64.exp() < 1e-10);
        assert!((e[[1, 1]].re - (-30f64).exp()).abs() < 1e-20);
    }
}
