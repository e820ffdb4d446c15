//! Resonance frequencies, forced network responses, influence and
//! transparency analysis, and single-oscillator reference solutions.
//!
//! Mode indices in this module are 1-based and count *distinct* Laplacian
//! eigenvalues in descending order, the way spectrum tables list them.
//! Inside a degenerate eigenspace single eigenvector components are
//! basis-dependent, so classification and influence use the eigenspace
//! projector instead; for a simple eigenvalue the projector entry reduces
//! to the familiar product phi_i(h) phi_i(k).

use ndarray::Array2;

use crate::dynamics::{clamp_zero, evolve, mode_solve, CouplingConfig, DriveSpec, ScalarDrive};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{laplacian_spectrum, DistinctMode, SpectralDecomposition};
use crate::trajectory::{State, Trajectory};

/// Default tolerance below which an eigenvector component counts as a
/// structural zero for transparency classification.
pub const TRANSPARENCY_TOL: f64 = 1e-6;

/// How a node participates in a driven mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeClass {
    /// The source cannot inject this mode anywhere.
    Blocked,
    /// The mode cannot reach this node regardless of source.
    Transparent,
    /// The node resonates; `phase` is +1 or -1.
    Resonant { phase: i8 },
}

/// Classification of every node for one (source, mode) pair.
#[derive(Debug, Clone)]
pub struct ResonanceMap {
    /// 1-based distinct-mode index.
    pub mode: usize,
    /// Laplacian eigenvalue of the mode.
    pub mu: f64,
    /// Resonance frequency sqrt(1 + mu).
    pub frequency: f64,
    pub multiplicity: usize,
    /// 1-based driven node.
    pub source: usize,
    pub classes: Vec<NodeClass>,
}

/// Modal frequencies sqrt(c1 + c2 mu_i), one per Laplacian mode,
/// descending. The zero mode gives exactly sqrt(c1).
pub fn resonance_frequencies(g: &Graph, c1: f64, c2: f64) -> Result<Vec<f64>> {
    let dec = laplacian_spectrum(g)?;
    dec.eigenvalues
        .iter()
        .map(|&mu| {
            let w2 = c1 + c2 * clamp_zero(mu);
            if w2 < 0.0 {
                return Err(Error::DomainError(w2));
            }
            Ok(w2.sqrt())
        })
        .collect()
}

fn check_node(n: usize, h: usize) -> Result<()> {
    if h < 1 || h > n {
        return Err(Error::NodeOutOfRange(h, n));
    }
    Ok(())
}

/// Response of the elastically coupled network at rest to the force
/// F0 sin(omega t) on node `h`. Nodes whose eigenvector component
/// vanishes in a driven mode stay out of that mode's resonance.
pub fn forced_undamped(
    g: &Graph,
    h: usize,
    f0: f64,
    omega: f64,
    times: &[f64],
) -> Result<Trajectory> {
    check_node(g.node_count(), h)?;
    let drive = DriveSpec::Sinusoid {
        node: h,
        amplitude: f0,
        frequency: omega,
    };
    evolve(
        g,
        &CouplingConfig::coupled(),
        &drive,
        &State::zero(g.node_count()),
        times,
    )
}

/// Response of the damping-coupled network at rest to the force
/// F0 sin(omega t) on node `h`. Only the unit ground frequency produces
/// unbounded (and fully synchronized) growth.
pub fn forced_damped(
    g: &Graph,
    h: usize,
    f0: f64,
    omega: f64,
    times: &[f64],
) -> Result<Trajectory> {
    check_node(g.node_count(), h)?;
    let drive = DriveSpec::Sinusoid {
        node: h,
        amplitude: f0,
        frequency: omega,
    };
    evolve(
        g,
        &CouplingConfig::coupled_damped(1.0),
        &drive,
        &State::zero(g.node_count()),
        times,
    )
}

fn distinct_mode(dec: &SpectralDecomposition, mode: usize) -> Result<DistinctMode> {
    let distinct = dec.distinct_modes();
    if mode < 1 || mode > distinct.len() {
        return Err(Error::ModeOutOfRange(mode, distinct.len()));
    }
    Ok(distinct[mode - 1])
}

/// Topological weight of mode `i` (1-based distinct index) in the response
/// of node `k` to a drive at node `h`: the eigenspace projector entry,
/// i.e. phi_i(h) phi_i(k) for a simple eigenvalue.
pub fn influence(g: &Graph, h: usize, k: usize, mode: usize) -> Result<f64> {
    let n = g.node_count();
    check_node(n, h)?;
    check_node(n, k)?;
    let dec = laplacian_spectrum(g)?;
    let dm = distinct_mode(&dec, mode)?;
    let mut s = 0.0;
    for i in dm.first..dm.first + dm.multiplicity {
        s += dec.eigenvectors[[h - 1, i]] * dec.eigenvectors[[k - 1, i]];
    }
    Ok(s)
}

/// Classifies every node for a drive at `h` near the frequency of distinct
/// mode `mode`. If the source itself has no component in the mode, every
/// node is blocked; otherwise nodes with vanishing component are
/// transparent and the rest resonate with a sign.
pub fn resonance_map(g: &Graph, h: usize, mode: usize, tol: f64) -> Result<ResonanceMap> {
    let n = g.node_count();
    check_node(n, h)?;
    let dec = laplacian_spectrum(g)?;
    let dm = distinct_mode(&dec, mode)?;

    // basis-invariant participation strengths ||P e_k|| = sqrt(P_kk)
    let strength = |k: usize| -> f64 {
        let mut s = 0.0;
        for i in dm.first..dm.first + dm.multiplicity {
            s += dec.eigenvectors[[k, i]] * dec.eigenvectors[[k, i]];
        }
        s.sqrt()
    };
    let phase_of = |k: usize| -> i8 {
        let v = if dm.multiplicity == 1 {
            dec.eigenvectors[[k, dm.first]]
        } else {
            // sign of the projector row entry relative to the source
            let mut s = 0.0;
            for i in dm.first..dm.first + dm.multiplicity {
                s += dec.eigenvectors[[h - 1, i]] * dec.eigenvectors[[k, i]];
            }
            s
        };
        if v >= 0.0 {
            1
        } else {
            -1
        }
    };

    let classes = if strength(h - 1) < tol {
        vec![NodeClass::Blocked; n]
    } else {
        (0..n)
            .map(|k| {
                if strength(k) < tol {
                    NodeClass::Transparent
                } else {
                    NodeClass::Resonant { phase: phase_of(k) }
                }
            })
            .collect()
    };
    let mu = clamp_zero(dm.value);
    Ok(ResonanceMap {
        mode,
        mu,
        frequency: (1.0 + mu).sqrt(),
        multiplicity: dm.multiplicity,
        source: h,
        classes,
    })
}

/// Displacement correlation between two nodes: the (h, k) entry of the
/// Laplacian pseudoinverse, computed as the mode sum
/// sum_i phi_i(h) phi_i(k) / mu_i over non-null modes.
pub fn vibrational_communicability(g: &Graph, h: usize, k: usize) -> Result<f64> {
    let n = g.node_count();
    check_node(n, h)?;
    check_node(n, k)?;
    let dec = laplacian_spectrum(g)?;
    let mut s = 0.0;
    for (i, &mu) in dec.eigenvalues.iter().enumerate() {
        let mu = clamp_zero(mu);
        if mu != 0.0 {
            s += dec.eigenvectors[[h - 1, i]] * dec.eigenvectors[[k - 1, i]] / mu;
        }
    }
    Ok(s)
}

/// External force shape for the single reference oscillator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForceKind {
    /// F0 sin(omega t).
    Sinusoid,
    /// F0 sum_k delta(t - k 2 pi / omega): one kick per drive period.
    DeltaTrain,
}

/// Position and velocity at time `t` of a single driven oscillator with
/// natural frequency `omega0` and mass `m`, started from rest.
///
/// The sinusoid response switches to the secular (linearly growing) branch
/// when the drive is within 1e-9 of omega0. The kick train instead keeps
/// the natural frequency and scales the amplitude by
/// 1/sin(pi omega0/omega), which diverges for all t when that sine
/// vanishes; this is reported as an error.
pub fn single_oscillator(
    omega0: f64,
    m: f64,
    f0: f64,
    omega: f64,
    kind: ForceKind,
    t: f64,
) -> Result<(f64, f64)> {
    if !(m > 0.0) || !(omega0 > 0.0) || !(omega > 0.0) {
        return Err(Error::InvalidArgument(
            "need m > 0, omega0 > 0, omega > 0".into(),
        ));
    }
    match kind {
        ForceKind::Sinusoid => mode_solve(
            omega0 * omega0,
            0.0,
            0.0,
            0.0,
            ScalarDrive::Sinusoid {
                amplitude: f0 / m,
                frequency: omega,
            },
            t,
        ),
        ForceKind::DeltaTrain => {
            let s = (std::f64::consts::PI * omega0 / omega).sin();
            if s.abs() < 1e-12 {
                return Err(Error::ResonantKickSingularity);
            }
            let phase = 0.5 * omega0 * t - std::f64::consts::PI * omega0 / omega;
            let amp = f0 / (m * omega0) * (0.5 * omega0 * t).sin() / s;
            Ok((amp * phase.sin(), amp * omega0 * phase.cos()))
        }
    }
}

/// Slope of the linear amplitude envelope of `signal`, measured by picking
/// the local maxima of |signal| at times >= `t_start` and least-squares
/// fitting peak height against time. Returns None when fewer than two
/// peaks exist.
pub fn envelope_slope(times: &[f64], signal: &[f64], t_start: f64) -> Option<f64> {
    let mut pts: Vec<(f64, f64)> = Vec::new();
    for k in 1..signal.len().saturating_sub(1) {
        if times[k] >= t_start {
            let (a, b, c) = (signal[k - 1].abs(), signal[k].abs(), signal[k + 1].abs());
            if b >= a && b > c {
                pts.push((times[k], b));
            }
        }
    }
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    Some((m * sxy - sx * sy) / (m * sxx - sx * sx))
}

/// Largest |position| of a 1-based node over a trajectory.
pub fn sup_position(traj: &Trajectory, node: usize) -> Result<f64> {
    Ok(traj
        .position(node)?
        .iter()
        .map(|x| x.abs())
        .fold(0.0, f64::max))
}

#[allow(dead_code)]
pub(crate) fn projector_of_mode(dec: &SpectralDecomposition, dm: &DistinctMode) -> Array2<f64> {
    dec.eigenspace_projector(dm)
}
