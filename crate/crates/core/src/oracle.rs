//! Floating-point cross-check of signatures. Builds the Hermitian form at an
//! explicit complex `ω` directly from complex arithmetic, realifies it and
//! diagonalizes with cyclic Jacobi rotations. Never used to decide anything
//! the exact path computes; it only reports agreement.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::seifert::{Parity, SeifertMatrix};

pub const DEFAULT_THRESHOLD: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OracleResult {
    pub signature: i64,
    pub min_abs_eigenvalue: f64,
    /// No eigenvalue within `threshold × ‖M‖_F` of zero.
    pub gap_certified: bool,
}

/// Hermitian form at `ω` as a complex matrix.
pub fn hermitian_form(k: &SeifertMatrix, omega: Complex64) -> Vec<Vec<Complex64>> {
    let n = k.dim();
    let v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| k.matrix()[(i, j)].to_f64().unwrap_or(f64::NAN)).collect())
        .collect();
    let one = Complex64::new(1.0, 0.0);
    let a = one - omega;
    let b = one - omega.conj();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match k.parity() {
                    Parity::Classical => a * v[i][j] + b * v[j][i],
                    Parity::HighDimSym => (omega - omega.conj()) * (a * v[i][j] - b * v[j][i]),
                })
                .collect()
        })
        .collect()
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi sweeps.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let total: f64 = a.iter().flatten().map(|x| x * x).sum();
        if off <= 1e-30 * total.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (rp, rq) = (row[p], row[q]);
                    row[p] = c * rp - s * rq;
                    row[q] = s * rp + c * rq;
                }
                for j in 0..n {
                    let (pj, qj) = (a[p][j], a[q][j]);
                    a[p][j] = c * pj - s * qj;
                    a[q][j] = s * pj + c * qj;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// Signature of the Hermitian form at `ω` with a gap certificate.
/// `ω` is not restricted to the upper half-plane so that conjugation
/// symmetry can be checked.
pub fn signature_float(k: &SeifertMatrix, omega: Complex64, threshold: f64) -> OracleResult {
    let h = hermitian_form(k, omega);
    let n = h.len();
    // [[Re H, −Im H], [Im H, Re H]]
    let real = (0..2 * n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    let z = h[i % n][j % n];
                    match (i < n, j < n) {
                        (true, true) | (false, false) => z.re,
                        (true, false) => -z.im,
                        (false, true) => z.im,
                    }
                })
                .collect::<Vec<f64>>()
        })
        .collect::<Vec<_>>();
    let norm: f64 = real.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let tol = threshold * norm.max(1.0);
    let eig = jacobi_eigenvalues(real);
    let min_abs = eig.iter().fold(f64::INFINITY, |m, x| m.min(x.abs()));
    let pos = eig.iter().filter(|&&x| x > tol).count() as i64;
    let neg = eig.iter().filter(|&&x| x < -tol).count() as i64;
    OracleResult {
        signature: (pos - neg) / 2,
        min_abs_eigenvalue: min_abs,
        gap_certified: min_abs > tol,
    }
}

/// `ω = c + i√(1 − c²)`
pub fn omega_from_real_part(c: f64) -> Complex64 {
    Complex64::new(c, (1.0 - c * c).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IntMatrix;
    use crate::seifert::validate_seifert;

    #[test]
    fn trefoil_at_i() {
        let t = validate_seifert(IntMatrix::from_i64_rows(&[&[-1, 1], &[0, -1]]), Parity::Classical).unwrap();
        let r = signature_float(&t, Complex64::new(0.0, 1.0), DEFAULT_THRESHOLD);
        assert_eq!(r.signature, -2);
        assert!(r.gap_certified);
        let at_root = signature_float(&t, omega_from_real_part(0.5), DEFAULT_THRESHOLD);
        assert!(!at_root.gap_certified);
        assert_eq!(at_root.signature, -1);
    }

    #[test]
    fn hyperbolic_vanishes() {
        let h = validate_seifert(IntMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]), Parity::Classical).unwrap();
        for c in [-0.9, -0.2, 0.3, 0.95] {
            assert_eq!(signature_float(&h, omega_from_real_part(c), DEFAULT_THRESHOLD).signature, 0);
        }
    }

    #[test]
    fn jacobi_on_known_spectrum() {
        let mut eig = jacobi_eigenvalues(vec![vec![2.0, 1.0], vec![1.0, 2.0]]);
        eig.sort_by(f64::total_cmp);
        assert!((eig[0] - 1.0).abs() < 1e-12 && (eig[1] - 3.0).abs() < 1e-12);
    }
}
