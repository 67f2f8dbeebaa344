//! Hermitian eigenvalues by cyclic Jacobi rotation.
//!
//! A complex Hermitian `H = A + iB` is embedded into the real symmetric
//! matrix `[[A, -B], [B, A]]` of twice the size. Its spectrum is the spectrum
//! of `H` with every eigenvalue doubled, so after sorting the embedded
//! eigenvalues the pairs are averaged back into one value each.

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tol::{EIG_MAX_SWEEPS, EIG_TOL, HERMITICITY_TOL};

/// All eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = h.ensure_square()?;
    let defect = h.hermiticity_defect()?;
    if defect > HERMITICITY_TOL {
        return Err(Error::NotHermitian(defect));
    }

    let m = 2 * n;
    let mut a = vec![0.0; m * m];
    for r in 0..n {
        for c in 0..n {
            // Symmetrize so residual anti-Hermitian noise cannot break the embedding.
            let z = (h.get(r, c) + h.get(c, r).conj()) * 0.5;
            a[r * m + c] = z.re;
            a[(r + n) * m + (c + n)] = z.re;
            a[r * m + (c + n)] = -z.im;
            a[(r + n) * m + c] = z.im;
        }
    }

    let mut doubled = symmetric_jacobi(&mut a, m)?;
    doubled.sort_by(f64::total_cmp);
    Ok(doubled.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect())
}

/// Diagonalizes a dense real symmetric `m x m` matrix in place, returning the diagonal.
fn symmetric_jacobi(a: &mut [f64], m: usize) -> Result<Vec<f64>> {
    let scale = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    let threshold = EIG_TOL * scale;

    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for r in 0..m {
            for c in 0..m {
                if r != c {
                    s += a[r * m + c] * a[r * m + c];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off_norm(a) >= threshold {
        if sweeps == EIG_MAX_SWEEPS {
            return Err(Error::NoConvergence(sweeps));
        }
        sweeps += 1;
        for p in 0..m {
            for q in (p + 1)..m {
                let apq = a[p * m + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * m + p];
                let aqq = a[q * m + q];
                let theta = (aqq - app) / (2.0 * apq);
                // signum(0.0) == 1.0, so equal diagonals rotate by π/4.
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..m {
                    let akp = a[k * m + p];
                    let akq = a[k * m + q];
                    a[k * m + p] = c * akp - s * akq;
                    a[k * m + q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let apk = a[p * m + k];
                    let aqk = a[q * m + k];
                    a[p * m + k] = c * apk - s * aqk;
                    a[q * m + k] = s * apk + c * aqk;
                }
                a[p * m + q] = 0.0;
                a[q * m + p] = 0.0;
            }
        }
    }
    Ok((0..m).map(|i| a[i * m + i]).collect())
}
