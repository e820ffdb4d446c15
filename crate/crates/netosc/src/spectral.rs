//! Symmetric eigendecomposition and spectral matrix functions.
//!
//! The eigensolver is a cyclic Jacobi iteration: a sequence of plane
//! rotations, each annihilating one off-diagonal element, accumulated into
//! the eigenvector matrix. For the dense, modest-sized (n up to a few
//! hundred) symmetric matrices handled here it is simple, foolproof and
//! deterministic, which keeps every report byte-reproducible.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Eigenvalues below this magnitude are treated as an exact zero when
/// classifying modes and when inverting the spectrum.
pub const ZERO_EIGENVALUE_TOL: f64 = 1e-9;

/// Eigenvalues closer than this are grouped as one distinct value when
/// reporting multiplicities.
pub const DISTINCT_EIGENVALUE_TOL: f64 = 1e-6;

const JACOBI_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a real symmetric matrix.
///
/// Eigenvalues are stored in descending order; column `i` of
/// `eigenvectors` is the orthonormal eigenvector paired with
/// `eigenvalues[i]`. Each eigenvector is scaled so that its entry of
/// largest absolute value is positive (ties broken by lowest index),
/// making downstream component comparisons deterministic.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Array2<f64>,
}

/// A group of numerically coincident eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistinctMode {
    /// Representative eigenvalue (the first of the group).
    pub value: f64,
    /// Index of the first member in the descending full list (0-based).
    pub first: usize,
    pub multiplicity: usize,
}

impl SpectralDecomposition {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Eigenvector paired with the i-th (0-based, descending) eigenvalue.
    pub fn eigenvector(&self, i: usize) -> ndarray::ArrayView1<'_, f64> {
        self.eigenvectors.column(i)
    }

    /// Applies a scalar function through the spectrum: Φ diag{f(μ_i)} Φᵀ.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> Result<Array2<f64>> {
        let n = self.len();
        let mut scaled = self.eigenvectors.clone();
        for (i, &mu) in self.eigenvalues.iter().enumerate() {
            let fv = f(mu);
            if !fv.is_finite() {
                return Err(Error::DomainError(mu));
            }
            scaled.column_mut(i).mapv_inplace(|x| x * fv);
        }
        let mut out = scaled.dot(&self.eigenvectors.t());
        // symmetrize away rounding asymmetry
        for i in 0..n {
            for j in (i + 1)..n {
                let v = 0.5 * (out[[i, j]] + out[[j, i]]);
                out[[i, j]] = v;
                out[[j, i]] = v;
            }
        }
        Ok(out)
    }

    /// Moore-Penrose pseudoinverse with the nullspace (|μ| < 1e-9) excluded.
    pub fn pseudo_inverse(&self) -> Array2<f64> {
        self.apply(|mu| {
            if mu.abs() < ZERO_EIGENVALUE_TOL {
                0.0
            } else {
                1.0 / mu
            }
        })
        .expect("1/mu is finite for non-null modes")
    }

    /// Reconstructs the original matrix Φ Λ Φᵀ.
    pub fn reconstruct(&self) -> Array2<f64> {
        self.apply(|mu| mu).expect("identity is total")
    }

    /// Groups numerically coincident eigenvalues (tolerance 1e-6).
    pub fn distinct_modes(&self) -> Vec<DistinctMode> {
        let mut out: Vec<DistinctMode> = Vec::new();
        for (i, &mu) in self.eigenvalues.iter().enumerate() {
            match out.last_mut() {
                Some(m) if (m.value - mu).abs() <= DISTINCT_EIGENVALUE_TOL => {
                    m.multiplicity += 1;
                }
                _ => out.push(DistinctMode {
                    value: mu,
                    first: i,
                    multiplicity: 1,
                }),
            }
        }
        out
    }

    /// Projector onto the eigenspace of the d-th distinct eigenvalue
    /// (0-based). Basis-invariant under degeneracy.
    pub fn eigenspace_projector(&self, mode: &DistinctMode) -> Array2<f64> {
        let n = self.len();
        let mut p = Array2::zeros((n, n));
        for i in mode.first..mode.first + mode.multiplicity {
            let phi = self.eigenvectors.column(i);
            for r in 0..n {
                for c in 0..n {
                    p[[r, c]] += phi[r] * phi[c];
                }
            }
        }
        p
    }
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// The input must satisfy max|m - mᵀ| < 1e-12. Convergence is declared
/// when the off-diagonal Frobenius norm falls below 1e-14 relative to the
/// matrix scale; more than 100 sweeps is reported as `NoConvergence`.
pub fn eig_sym(m: &Array2<f64>) -> Result<SpectralDecomposition> {
    let (rows, cols) = m.dim();
    if rows != cols {
        return Err(Error::DimensionMismatch(format!("matrix is {rows}x{cols}")));
    }
    let n = rows;
    let mut asym: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            asym = asym.max((m[[i, j]] - m[[j, i]]).abs());
        }
    }
    if asym >= 1e-12 {
        return Err(Error::NotSymmetric(asym));
    }

    let mut a = m.clone();
    let mut v: Array2<f64> = Array2::eye(n);
    let scale = frobenius(m).max(1.0);

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= JACOBI_TOL * scale {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[[p, q]];
                if apq == 0.0 {
                    continue;
                }
                let tau = (a[[q, q]] - a[[p, p]]) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                let app = a[[p, p]];
                let aqq = a[[q, q]];
                a[[p, p]] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
                a[[q, q]] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
                a[[p, q]] = 0.0;
                a[[q, p]] = 0.0;
                for k in 0..n {
                    if k != p && k != q {
                        let akp = a[[k, p]];
                        let akq = a[[k, q]];
                        a[[k, p]] = c * akp - s * akq;
                        a[[p, k]] = a[[k, p]];
                        a[[k, q]] = s * akp + c * akq;
                        a[[q, k]] = a[[k, q]];
                    }
                }
                for k in 0..n {
                    let vkp = v[[k, p]];
                    let vkq = v[[k, q]];
                    v[[k, p]] = c * vkp - s * vkq;
                    v[[k, q]] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > JACOBI_TOL * scale {
        return Err(Error::NoConvergence(JACOBI_MAX_SWEEPS));
    }

    // sort descending, ties by original index
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[[j, j]].partial_cmp(&a[[i, i]]).unwrap().then(i.cmp(&j)));

    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = Array2::zeros((n, n));
    for (dst, &src) in order.iter().enumerate() {
        eigenvalues.push(a[[src, src]]);
        let col = v.column(src);
        // entry of largest absolute value made positive, ties to lowest index
        let mut pivot = 0;
        for k in 1..n {
            if col[k].abs() > col[pivot].abs() {
                pivot = k;
            }
        }
        let flip = if col[pivot] < 0.0 { -1.0 } else { 1.0 };
        for k in 0..n {
            eigenvectors[[k, dst]] = flip * col[k];
        }
    }

    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Decomposes the Laplacian of a graph.
pub fn laplacian_spectrum(g: &Graph) -> Result<SpectralDecomposition> {
    eig_sym(&g.laplacian())
}

pub(crate) fn frobenius(m: &Array2<f64>) -> f64 {
    m.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn off_diagonal_norm(a: &Array2<f64>) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[[i, j]] * a[[i, j]];
            }
        }
    }
    s.sqrt()
}

pub(crate) fn max_abs_diff(a: &Array2<f64>, b: &Array2<f64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
