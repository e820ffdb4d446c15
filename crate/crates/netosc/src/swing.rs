//! Linear swing equation x'' = -gamma x' - L x + p: steady state, exact
//! transient solution and transient metrics for balanced power profiles.

use ndarray::Array1;

use crate::dynamics::{evolve_superposed, expm_via_modes, CouplingConfig, DriveSpec};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::laplacian_spectrum;
use crate::trajectory::{State, Trajectory};

/// Power imbalance above this is rejected at construction (matches the
/// file-interface validation tolerance).
pub const BALANCE_TOL: f64 = 1e-9;

/// Balanced per-node power deviations (generators positive, loads
/// negative) with a common damping coefficient.
#[derive(Debug, Clone)]
pub struct PowerProfile {
    p: Array1<f64>,
    gamma: f64,
}

impl PowerProfile {
    pub fn new(p: Array1<f64>, gamma: f64) -> Result<Self> {
        if p.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(
                "power vector has non-finite entries".into(),
            ));
        }
        if !(gamma > 0.0) {
            return Err(Error::InvalidArgument(
                "damping gamma must be positive".into(),
            ));
        }
        let sum: f64 = p.sum();
        if sum.abs() > BALANCE_TOL {
            return Err(Error::UnbalancedPower(sum));
        }
        Ok(PowerProfile { p, gamma })
    }

    /// Subtracts the mean so the profile balances exactly.
    pub fn rebalanced(p: Array1<f64>, gamma: f64) -> Result<Self> {
        let mean = p.sum() / p.len() as f64;
        Self::new(p.mapv(|v| v - mean), gamma)
    }

    pub fn power(&self) -> &Array1<f64> {
        &self.p
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// Transient characteristics of one node's response.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransientMetrics {
    /// 1-based node id.
    pub node: usize,
    pub first_peak_value: f64,
    pub first_peak_time: f64,
    pub steady_state_value: f64,
}

/// Minimum-norm solution of L x = p (the pseudoinverse representative).
/// Any other solution differs by a multiple of the all-ones vector and
/// produces the same trajectory.
pub fn steady_state(g: &Graph, prof: &PowerProfile) -> Result<Array1<f64>> {
    let n = g.node_count();
    if prof.p.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "profile length {} != {n}",
            prof.p.len()
        )));
    }
    let sum = prof.p.sum();
    if sum.abs() > BALANCE_TOL {
        return Err(Error::UnbalancedPower(sum));
    }
    let dec = laplacian_spectrum(g)?;
    let x = dec.pseudo_inverse().dot(&prof.p);
    let residual = g
        .laplacian()
        .dot(&x)
        .iter()
        .zip(prof.p.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if residual > 1e-9 {
        return Err(Error::SolveFailure(residual));
    }
    Ok(x)
}

/// Exact swing-equation trajectory from `y0` under a balanced profile.
/// Per mode this is x_i'' = -gamma x_i' - mu_i x_i + (phi_i . p); the zero
/// mode sees no forcing and relaxes under pure damping.
pub fn swing_solve(
    g: &Graph,
    prof: &PowerProfile,
    y0: &State,
    times: &[f64],
) -> Result<Trajectory> {
    let n = g.node_count();
    if prof.p.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "profile length {} != {n}",
            prof.p.len()
        )));
    }
    let cfg = CouplingConfig::swing(prof.gamma);
    let drive = DriveSpec::ConstantPower(prof.p.clone());
    evolve_superposed(g, &cfg, &drive, y0, times)
}

/// Swing trajectory assembled from an explicit steady-state representative:
/// y(t) = y~ + e^{Gt}(y0 - y~). Any representative x~ + w u gives the same
/// result; used to cross-check [`swing_solve`].
pub fn swing_solve_from_representative(
    g: &Graph,
    gamma: f64,
    x_tilde: &Array1<f64>,
    y0: &State,
    times: &[f64],
) -> Result<Trajectory> {
    let n = g.node_count();
    if x_tilde.len() != n || y0.len() != n {
        return Err(Error::DimensionMismatch(
            "representative/state length".into(),
        ));
    }
    if !(gamma > 0.0) {
        return Err(Error::InvalidArgument(
            "damping gamma must be positive".into(),
        ));
    }
    let cfg = CouplingConfig::swing(gamma);
    let mut states = Vec::with_capacity(times.len());
    let shifted = State::new(&y0.x - x_tilde, y0.v.clone())?;
    for &t in times {
        let e = expm_via_modes(g, &cfg, t)?;
        let mut y = Array1::zeros(2 * n);
        for i in 0..n {
            y[i] = shifted.x[i];
            y[n + i] = shifted.v[i];
        }
        let z = e.dot(&y);
        let mut x = Array1::zeros(n);
        let mut v = Array1::zeros(n);
        for i in 0..n {
            x[i] = x_tilde[i] + z[i];
            v[i] = z[n + i];
        }
        states.push(State { x, v });
    }
    Trajectory::new(times.to_vec(), states)
}

/// First local extremum and settled value of one node's displacement.
/// The trajectory must have settled (|x(t_end) - x(t_end/2)| < 1e-4);
/// peak detection works on the discrete grid, so the peak-time resolution
/// equals the grid step.
pub fn transient_metrics(traj: &Trajectory, node: usize) -> Result<TransientMetrics> {
    let xs = traj.position(node)?;
    let m = xs.len();
    if m < 3 {
        return Err(Error::InvalidArgument("trajectory too short".into()));
    }
    let t_end = *traj.times.last().unwrap();
    let half_idx = traj
        .times
        .iter()
        .position(|&t| t >= 0.5 * t_end)
        .unwrap_or(m / 2);
    if (xs[m - 1] - xs[half_idx]).abs() >= 1e-4 {
        return Err(Error::NotSettled);
    }

    let mut prev: Option<f64> = None;
    for j in 0..m - 1 {
        let d = xs[j + 1] - xs[j];
        if d == 0.0 {
            continue;
        }
        if let Some(p) = prev {
            if p.signum() != d.signum() {
                return Ok(TransientMetrics {
                    node,
                    first_peak_value: xs[j],
                    first_peak_time: traj.times[j],
                    steady_state_value: xs[m - 1],
                });
            }
        }
        prev = Some(d);
    }
    Err(Error::NoPeak(node))
}
