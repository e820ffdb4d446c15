//! Polar decomposition G = U P of the damping-coupled state matrix and the
//! closed-form eigenstructure of both factors.
//!
//! P = (G^T G)^{1/2} is symmetric positive-definite symplectic; U = G P^{-1}
//! is orthogonal symplectic and alone carries the asymptotic synchronized
//! rotation. Both are computed numerically from the spectral square root
//! and, independently, assembled from closed forms in the Laplacian
//! eigenbasis; the test suite asserts their agreement.

use ndarray::Array2;
use num_complex::Complex64;

use crate::dynamics::{build_g, clamp_zero, CouplingConfig};
use crate::error::Result;
use crate::graph::Graph;
use crate::spectral::{eig_sym, laplacian_spectrum, SpectralDecomposition};

/// Eigenvalue pair of the stretch factor P for one Laplacian mode:
/// lambda = (sqrt(mu^2 + 4) +- mu) / 2, a reciprocal positive pair.
#[derive(Debug, Clone, Copy)]
pub struct PEigenpair {
    /// 0-based index into the descending Laplacian eigenvalues.
    pub mode: usize,
    pub mu: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
}

impl PEigenpair {
    /// Normalized eigenvector (phi, +- lambda phi) / sqrt(1 + lambda^2)
    /// for the requested branch.
    pub fn eigenvector(&self, dec: &SpectralDecomposition, plus: bool) -> Vec<f64> {
        let (lambda, sign) = if plus {
            (self.lambda_plus, 1.0)
        } else {
            (self.lambda_minus, -1.0)
        };
        let f = 1.0 / (1.0 + lambda * lambda).sqrt();
        let phi = dec.eigenvector(self.mode);
        let n = phi.len();
        let mut out = Vec::with_capacity(2 * n);
        for k in 0..n {
            out.push(f * phi[k]);
        }
        for k in 0..n {
            out.push(sign * lambda * f * phi[k]);
        }
        out
    }
}

/// Eigenvalue pair of the rotation factor U for one Laplacian mode:
/// e^{+- i theta} with theta = 2 arctan lambda^{P+}.
#[derive(Debug, Clone, Copy)]
pub struct UEigenpair {
    pub mode: usize,
    pub mu: f64,
    /// Rotation angle in radians, in (pi/2, pi) for mu > 0 and exactly
    /// pi/2 for the zero mode.
    pub theta: f64,
    pub lambda_plus: Complex64,
    pub lambda_minus: Complex64,
}

impl UEigenpair {
    pub fn theta_degrees(&self) -> f64 {
        self.theta.to_degrees()
    }

    /// Normalized eigenvector (phi, +- i phi) / sqrt(2).
    pub fn eigenvector(&self, dec: &SpectralDecomposition, plus: bool) -> Vec<Complex64> {
        let unit = if plus {
            Complex64::new(0.0, 1.0)
        } else {
            Complex64::new(0.0, -1.0)
        };
        let f = 1.0 / 2.0f64.sqrt();
        let phi = dec.eigenvector(self.mode);
        let n = phi.len();
        let mut out = Vec::with_capacity(2 * n);
        for k in 0..n {
            out.push(Complex64::new(f * phi[k], 0.0));
        }
        for k in 0..n {
            out.push(unit * (f * phi[k]));
        }
        out
    }
}

/// Numerical factors and closed-form eigendata of G = U P.
#[derive(Debug, Clone)]
pub struct PolarFactors {
    pub u: Array2<f64>,
    pub p: Array2<f64>,
    pub p_pairs: Vec<PEigenpair>,
    pub u_pairs: Vec<UEigenpair>,
    /// Laplacian decomposition the closed forms are built on.
    pub laplacian: SpectralDecomposition,
}

impl PolarFactors {
    /// Rotation angles in degrees, one per mode, descending mode order.
    pub fn angles_degrees(&self) -> Vec<f64> {
        self.u_pairs.iter().map(|p| p.theta_degrees()).collect()
    }
}

fn p_pair(mode: usize, mu: f64) -> PEigenpair {
    let root = (mu * mu + 4.0).sqrt();
    PEigenpair {
        mode,
        mu,
        lambda_plus: 0.5 * (root + mu),
        lambda_minus: 0.5 * (root - mu),
    }
}

fn u_pair(mode: usize, mu: f64) -> UEigenpair {
    let theta = 2.0 * p_pair(mode, mu).lambda_plus.atan();
    let (s, c) = theta.sin_cos();
    UEigenpair {
        mode,
        mu,
        theta,
        lambda_plus: Complex64::new(c, s),
        lambda_minus: Complex64::new(c, -s),
    }
}

/// Closed-form eigenvalue pairs of P, one per Laplacian mode.
pub fn p_eigenpairs(g: &Graph) -> Result<Vec<PEigenpair>> {
    let dec = laplacian_spectrum(g)?;
    Ok(dec
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, &mu)| p_pair(i, clamp_zero(mu)))
        .collect())
}

/// Closed-form conjugate eigenvalue pairs of U with their angles.
pub fn u_eigenpairs(g: &Graph) -> Result<Vec<UEigenpair>> {
    let dec = laplacian_spectrum(g)?;
    Ok(dec
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, &mu)| u_pair(i, clamp_zero(mu)))
        .collect())
}

/// Polar decomposition of the damping-coupled state matrix
/// [[0, I], [-I, -L]]: P as the spectral square root of G^T G, U = G P^{-1},
/// plus the closed-form eigendata of both factors.
pub fn polar_decompose(g: &Graph) -> Result<PolarFactors> {
    let gm = build_g(g, &CouplingConfig::coupled_damped(1.0));
    let gtg = gm.t().dot(&gm);
    let dec_gtg = eig_sym(&gtg)?;
    let p = dec_gtg.apply(f64::sqrt)?;
    let p_inv = dec_gtg.apply(|v| 1.0 / v.sqrt())?;
    let u = gm.dot(&p_inv);

    let laplacian = laplacian_spectrum(g)?;
    let p_pairs = laplacian
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, &mu)| p_pair(i, clamp_zero(mu)))
        .collect();
    let u_pairs = laplacian
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, &mu)| u_pair(i, clamp_zero(mu)))
        .collect();
    Ok(PolarFactors {
        u,
        p,
        p_pairs,
        u_pairs,
        laplacian,
    })
}

/// e^{Ut} assembled spectrally from the unitary diagonalization of U:
/// blocks [[A, B], [-B, A]] with
/// A = sum_j e^{t cos theta_j} cos(t sin theta_j) phi_j phi_j^T and B the
/// matching sine sum. For t -> infinity only the zero mode (theta = pi/2)
/// survives, leaving the synchronized rotation.
pub fn expm_u(g: &Graph, t: f64) -> Result<Array2<f64>> {
    let dec = laplacian_spectrum(g)?;
    let n = dec.len();
    let mut out = Array2::zeros((2 * n, 2 * n));
    for (i, &mu) in dec.eigenvalues.iter().enumerate() {
        let pair = u_pair(i, clamp_zero(mu));
        let decay = (t * pair.theta.cos()).exp();
        let (s, c) = (t * pair.theta.sin()).sin_cos();
        let (a_coef, b_coef) = (decay * c, decay * s);
        let phi = dec.eigenvector(i);
        for r in 0..n {
            for q in 0..n {
                let pp = phi[r] * phi[q];
                out[[r, q]] += a_coef * pp;
                out[[r, n + q]] += b_coef * pp;
                out[[n + r, q]] -= b_coef * pp;
                out[[n + r, n + q]] += a_coef * pp;
            }
        }
    }
    Ok(out)
}
