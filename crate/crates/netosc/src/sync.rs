//! Synchronized asymptotic state, dominant decay rate, analytic
//! synchronization-time bounds and empirical settle-time measurement for
//! the damping-coupled regime.

use ndarray::Array1;
use num_complex::Complex64;

use crate::dynamics::damped_sync_eigenpairs_of;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::laplacian_spectrum;
use crate::trajectory::{State, Trajectory};

/// Decay rates within this tolerance of the dominant one are treated as
/// tied; their modes are summed so reports stay basis-invariant under
/// degenerate eigenvalues.
const RATE_TIE_TOL: f64 = 1e-9;

/// What to do when the initial state has no component on the dominant mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OnUnexcited {
    Fail,
    NextMode,
}

/// Description of the slowest-decaying mode group.
#[derive(Debug, Clone)]
pub struct DominantMode {
    /// 1-based indices into the descending Laplacian eigenvalues.
    pub modes: Vec<usize>,
    /// Laplacian eigenvalue of the group representative.
    pub mu: f64,
    /// True when the pair is complex (oscillatory decay at rate -alpha mu/2).
    pub oscillatory: bool,
}

/// Analytic synchronization-time bounds for one initial state.
#[derive(Debug, Clone)]
pub struct SyncReport {
    pub lambda_s: f64,
    pub dominant: DominantMode,
    pub alpha: f64,
    pub epsilon: f64,
    pub per_node_bound_times: Vec<f64>,
    pub mean_bound_time: f64,
    pub empirical: Option<SettleTimes>,
}

/// Per-node settle times with their mean and max.
#[derive(Debug, Clone)]
pub struct SettleTimes {
    pub per_node: Vec<f64>,
    pub mean: f64,
    pub max: f64,
}

impl SettleTimes {
    fn from_per_node(per_node: Vec<f64>) -> Self {
        let mean = per_node.iter().sum::<f64>() / per_node.len() as f64;
        let max = per_node.iter().cloned().fold(0.0, f64::max);
        SettleTimes {
            per_node,
            mean,
            max,
        }
    }
}

/// The node-independent synchronized oscillation reached for t -> infinity:
/// every node moves as the zero-mode average of the initial state, rotated
/// at unit frequency.
pub fn asymptotic_state(y0: &State, t: f64) -> State {
    let n = y0.len();
    let sx: f64 = y0.x.sum();
    let sv: f64 = y0.v.sum();
    let (s, c) = t.sin_cos();
    let x = (c * sx + s * sv) / n as f64;
    let v = (-s * sx + c * sv) / n as f64;
    State {
        x: Array1::from_elem(n, x),
        v: Array1::from_elem(n, v),
    }
}

/// Decay rate (real part of the slow eigenvalue branch) of each non-null
/// mode, sorted least-negative first: (mode index, mu, rate).
fn mode_rates(g: &Graph, alpha: f64) -> Result<Vec<(usize, f64, f64)>> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidArgument("alpha must be positive".into()));
    }
    let dec = laplacian_spectrum(g)?;
    let mut rates: Vec<(usize, f64, f64)> = Vec::new();
    for p in damped_sync_eigenpairs_of(&dec, alpha) {
        if p.mu > 0.0 {
            rates.push((p.mode, p.mu, p.lambda_plus.re));
        }
    }
    rates.sort_by(|a, b| b.2.partial_cmp(&a.2).unwrap().then(a.0.cmp(&b.0)));
    Ok(rates)
}

/// The slowest decay rate of the damping-coupled system, i.e. the largest
/// real part over the non-null modes of the state matrix with inter-node
/// damping `alpha`.
///
/// `order` = 1 returns the dominant rate; `order` = 2 the second
/// least-negative one (used to break ties when comparing graphs whose
/// dominant rates coincide). Rates are ranked one per Laplacian mode using
/// the slow branch of each reciprocal pair.
pub fn lambda_s(g: &Graph, alpha: f64, order: usize) -> Result<f64> {
    let rates = mode_rates(g, alpha)?;
    if order == 0 || order > rates.len() {
        return Err(Error::InvalidArgument(format!(
            "order {order} out of range 1..={}",
            rates.len()
        )));
    }
    Ok(rates[order - 1].2)
}

/// Analytic per-node and mean synchronization-time bounds.
///
/// The deviation from the synchronized state decays like
/// c_i e^{lambda_S t} with c_i the dominant-mode coefficient of node i;
/// solving c_i e^{lambda_S t} = epsilon for t gives the bound. Per-node
/// times are clamped at 0 (a node already inside the threshold contributes
/// nothing) and modes whose rates tie with the dominant one are summed,
/// which keeps the coefficients basis-invariant for degenerate eigenvalues.
pub fn sync_time_bounds(
    g: &Graph,
    y0: &State,
    epsilon: f64,
    alpha: f64,
    on_unexcited: OnUnexcited,
) -> Result<SyncReport> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    let n = g.node_count();
    if y0.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "state length {} != {n}",
            y0.len()
        )));
    }
    let dec = laplacian_spectrum(g)?;
    let pairs = damped_sync_eigenpairs_of(&dec, alpha);
    let rates = mode_rates(g, alpha)?;

    let y0_scale =
        y0.x.iter()
            .chain(y0.v.iter())
            .map(|v| v.abs())
            .fold(0.0, f64::max);

    let mut group_start = 0;
    while group_start < rates.len() {
        let rate = rates[group_start].2;
        let mut group_end = group_start + 1;
        while group_end < rates.len() && rates[group_end].2 > rate - RATE_TIE_TOL {
            group_end += 1;
        }
        let group = &rates[group_start..group_end];

        // c_i = sum over tied modes of <psi_m, y0> psi_m(i), position part
        let mut coeff = vec![Complex64::new(0.0, 0.0); n];
        let mut excitation = 0.0f64;
        for &(mode, _, _) in group {
            let p = &pairs[mode];
            let f = p.norm_factor(true);
            let phi = dec.eigenvector(mode);
            let px: f64 = phi.dot(&y0.x);
            let pv: f64 = phi.dot(&y0.v);
            let dot = Complex64::new(f * px, 0.0) + p.lambda_plus.conj() * (f * pv);
            excitation += dot.norm();
            for i in 0..n {
                coeff[i] += dot * (f * phi[i]);
            }
        }

        if excitation <= 1e-12 * y0_scale.max(1.0) {
            match on_unexcited {
                OnUnexcited::Fail => return Err(Error::DominantModeUnexcited),
                OnUnexcited::NextMode => {
                    group_start = group_end;
                    continue;
                }
            }
        }

        let per_node: Vec<f64> = coeff
            .iter()
            .map(|c| {
                let v = c.norm();
                if v <= epsilon {
                    0.0
                } else {
                    (v / epsilon).ln() / rate.abs()
                }
            })
            .collect();
        let mean = per_node.iter().sum::<f64>() / n as f64;
        let rep = group[0];
        return Ok(SyncReport {
            lambda_s: rate,
            dominant: DominantMode {
                modes: group.iter().map(|&(m, _, _)| m + 1).collect(),
                mu: rep.1,
                oscillatory: pairs[rep.0].lambda_plus.im != 0.0,
            },
            alpha,
            epsilon,
            mean_bound_time: mean,
            per_node_bound_times: per_node,
            empirical: None,
        });
    }
    Err(Error::DominantModeUnexcited)
}

/// Zero-mode averages of a trajectory's first sample rotated back to t = 0,
/// returned as a per-node-constant state usable with [`asymptotic_state`].
fn zero_mode_reference(traj: &Trajectory) -> State {
    let n = traj.node_count();
    let t0 = traj.times[0];
    let s0 = &traj.states[0];
    let sx = s0.x.sum();
    let sv = s0.v.sum();
    let (s, c) = t0.sin_cos();
    State {
        x: Array1::from_elem(n, (c * sx - s * sv) / n as f64),
        v: Array1::from_elem(n, (s * sx + c * sv) / n as f64),
    }
}

/// Position deviation of every node from the synchronized solution, one row
/// per grid point.
fn deviations(traj: &Trajectory) -> Vec<Vec<f64>> {
    let n = traj.node_count();
    let y0 = zero_mode_reference(traj);
    traj.times
        .iter()
        .zip(&traj.states)
        .map(|(&t, st)| {
            let tilde = asymptotic_state(&y0, t);
            (0..n).map(|i| (st.x[i] - tilde.x[i]).abs()).collect()
        })
        .collect()
}

/// Per-node settle times: the first grid time after which the position
/// deviation from the synchronized solution stays below `epsilon` for the
/// remainder of the grid. Oscillatory decay re-crosses any threshold, so a
/// plain first crossing would be optimistic; see [`first_return_times`]
/// for that lenient variant.
pub fn empirical_sync_time(traj: &Trajectory, epsilon: f64) -> Result<SettleTimes> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    let dev = deviations(traj);
    let n = traj.node_count();
    let last = traj.len() - 1;
    let mut per_node = vec![traj.times[0]; n];
    let mut offenders = Vec::new();
    for i in 0..n {
        let mut settle_idx = 0usize;
        for (k, row) in dev.iter().enumerate() {
            if row[i] >= epsilon {
                settle_idx = k + 1;
            }
        }
        if settle_idx > last {
            offenders.push(i + 1);
        } else {
            per_node[i] = traj.times[settle_idx];
        }
    }
    if !offenders.is_empty() {
        return Err(Error::Unsettled(offenders));
    }
    Ok(SettleTimes::from_per_node(per_node))
}

/// Per-node first-return times: the first grid time at which the position
/// deviation drops back below `epsilon` after its initial excursion (the
/// grid start for nodes that never exceed the threshold). Oscillatory
/// nodes return early at a zero crossing; monotonically decaying nodes
/// return only when their envelope does.
pub fn first_return_times(traj: &Trajectory, epsilon: f64) -> Result<SettleTimes> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    let dev = deviations(traj);
    let n = traj.node_count();
    let mut per_node = vec![traj.times[0]; n];
    let mut offenders = Vec::new();
    'node: for i in 0..n {
        let mut exceeded = false;
        for (k, row) in dev.iter().enumerate() {
            if !exceeded && row[i] >= epsilon {
                exceeded = true;
            } else if exceeded && row[i] < epsilon {
                per_node[i] = traj.times[k];
                continue 'node;
            }
        }
        if exceeded {
            offenders.push(i + 1);
        }
    }
    if !offenders.is_empty() {
        return Err(Error::Unsettled(offenders));
    }
    Ok(SettleTimes::from_per_node(per_node))
}

/// Fraction of nodes whose full-state distance from the synchronized
/// solution is within `epsilon` at grid time `t` (the boundary counts as
/// synchronized).
pub fn sync_measure(traj: &Trajectory, t: f64, epsilon: f64) -> Result<f64> {
    let idx = traj.grid_index(t)?;
    let n = traj.node_count();
    let tilde = asymptotic_state(&zero_mode_reference(traj), t);
    let st = &traj.states[idx];
    let count = (0..n)
        .filter(|&i| {
            let dx = st.x[i] - tilde.x[i];
            let dv = st.v[i] - tilde.v[i];
            (dx * dx + dv * dv).sqrt() <= epsilon
        })
        .count();
    Ok(count as f64 / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{evolve, CouplingConfig, DriveSpec};
    use crate::graph::{builtin, ones, toy4};
    use crate::trajectory::time_grid;
    use ndarray::array;

    #[test]
    fn asymptotic_all_ones() {
        let y0 = State::new(ones(5), Array1::zeros(5)).unwrap();
        for t in [0.0, 0.7, 3.1] {
            let s = asymptotic_state(&y0, t);
            for i in 0..5 {
                assert!((s.x[i] - t.cos()).abs() < 1e-15);
                assert!((s.v[i] + t.sin()).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn asymptotic_balanced_is_zero() {
        let y0 = State::new(array![1.0, -1.0, 0.5, -0.5], array![2.0, -2.0, 0.0, 0.0]).unwrap();
        let s = asymptotic_state(&y0, 1.3);
        assert!(s.x.iter().chain(s.v.iter()).all(|&v| v == 0.0));
    }

    #[test]
    fn asymptotic_toy4_at_pi() {
        let y0 = State::new(array![1.0, 0.0, 0.0, 0.0], Array1::zeros(4)).unwrap();
        let s = asymptotic_state(&y0, std::f64::consts::PI);
        for i in 0..4 {
            assert!((s.x[i] + 0.25).abs() < 1e-12);
        }
        let spread = s.x.iter().cloned().fold(f64::MIN, f64::max)
            - s.x.iter().cloned().fold(f64::MAX, f64::min);
        assert_eq!(spread, 0.0);
    }

    #[test]
    fn lambda_s_reference_values() {
        assert!((lambda_s(&builtin("path:4").unwrap(), 1.0, 1).unwrap() - -0.2928932).abs() < 1e-6);
        let b = toy4();
        assert!((lambda_s(&b, 1.0, 1).unwrap() - -0.2679492).abs() < 1e-6);
        assert!((lambda_s(&b, 1.0, 2).unwrap() - -0.3819660).abs() < 1e-6);
        // complete graph, weak coupling: all pairs complex, rate -alpha n / 2
        let k5 = builtin("complete:5").unwrap();
        assert!((lambda_s(&k5, 0.1, 1).unwrap() - -0.25).abs() < 1e-12);
    }

    #[test]
    fn bounds_zero_when_inside_threshold() {
        let g = toy4();
        let y0 = State::new(array![1e-6, 0.0, 0.0, 0.0], Array1::zeros(4)).unwrap();
        let r = sync_time_bounds(&g, &y0, 0.1, 1.0, OnUnexcited::Fail).unwrap();
        assert!(r.per_node_bound_times.iter().all(|&t| t == 0.0));
        assert_eq!(r.mean_bound_time, 0.0);
    }

    #[test]
    fn bounds_match_quoted_means() {
        // the e1 kick reproduces the published bound means for the
        // clique-pendant and complete five-node graphs at both thresholds
        let e = builtin("clique_pendant:5").unwrap();
        let f = builtin("complete:5").unwrap();
        let mut x0 = Array1::zeros(5);
        x0[0] = 1.0;
        let y0 = State::new(x0, Array1::zeros(5)).unwrap();

        let re3 = sync_time_bounds(&e, &y0, 1e-3, 1.0, OnUnexcited::Fail).unwrap();
        assert!(
            (re3.mean_bound_time - 19.868).abs() < 5e-3,
            "{}",
            re3.mean_bound_time
        );
        let rf3 = sync_time_bounds(&f, &y0, 1e-3, 1.0, OnUnexcited::Fail).unwrap();
        assert!(
            (rf3.mean_bound_time - 26.510).abs() < 5e-3,
            "{}",
            rf3.mean_bound_time
        );

        let re6 = sync_time_bounds(&e, &y0, 1e-6, 1.0, OnUnexcited::Fail).unwrap();
        assert!(
            (re6.mean_bound_time - 52.97).abs() < 1e-2,
            "{}",
            re6.mean_bound_time
        );
        let rf6 = sync_time_bounds(&f, &y0, 1e-6, 1.0, OnUnexcited::Fail).unwrap();
        assert!(
            (rf6.mean_bound_time - 59.61).abs() < 1e-2,
            "{}",
            rf6.mean_bound_time
        );
    }

    #[test]
    fn unexcited_dominant_mode() {
        let g = toy4();
        // an initial state on the zero mode excites no decaying mode at all
        let y0 = State::new(ones(4), Array1::zeros(4)).unwrap();
        assert!(matches!(
            sync_time_bounds(&g, &y0, 1e-3, 1.0, OnUnexcited::Fail),
            Err(Error::DominantModeUnexcited)
        ));
        // x0 on the mu2 eigenvector: fallback descends to the second rate
        let dec = laplacian_spectrum(&g).unwrap();
        let x0 = dec.eigenvector(1).to_owned();
        let y0 = State::new(x0, Array1::zeros(4)).unwrap();
        assert!(matches!(
            sync_time_bounds(&g, &y0, 1e-3, 1.0, OnUnexcited::Fail),
            Err(Error::DominantModeUnexcited)
        ));
        let r = sync_time_bounds(&g, &y0, 1e-3, 1.0, OnUnexcited::NextMode).unwrap();
        assert!((r.lambda_s - -0.3819660).abs() < 1e-6);
        assert_eq!(r.dominant.modes, vec![2]);
    }

    #[test]
    fn density_bound_on_mean_time() {
        // when the dominant pair is oscillatory, lambda_S = -alpha mu_{n-1}/2
        // and mu_{n-1} <= n delta bounds the mean time from below
        let g = builtin("path:5").unwrap();
        let mut x0 = Array1::zeros(5);
        x0[0] = 1.0;
        let y0 = State::new(x0, Array1::zeros(5)).unwrap();
        let r = sync_time_bounds(&g, &y0, 1e-3, 1.0, OnUnexcited::Fail).unwrap();
        assert!(r.dominant.oscillatory);
        let n = 5.0;
        let delta = g.density().unwrap();
        let sum_logs: f64 = r
            .per_node_bound_times
            .iter()
            .map(|t| t * r.lambda_s.abs())
            .sum();
        let lower = 2.0 / (n * n * delta) * sum_logs;
        assert!(r.mean_bound_time >= lower - 1e-12);
    }

    fn damped_trajectory(y0: &State, dt: f64, t_max: f64) -> Trajectory {
        let g = toy4();
        let times = time_grid(dt, t_max).unwrap();
        evolve(
            &g,
            &CouplingConfig::coupled_damped(1.0),
            &DriveSpec::None,
            y0,
            &times,
        )
        .unwrap()
    }

    #[test]
    fn already_synchronized_settles_immediately() {
        let y0 = State::new(ones(4) * 0.3, Array1::zeros(4)).unwrap();
        let traj = damped_trajectory(&y0, 0.1, 5.0);
        let s = empirical_sync_time(&traj, 1e-3).unwrap();
        assert!(s.per_node.iter().all(|&t| t == 0.0));
        assert_eq!(s.max, 0.0);
    }

    #[test]
    fn empirical_monotone_in_epsilon() {
        let y0 = State::new(array![1.0, 0.0, 0.0, 0.0], Array1::zeros(4)).unwrap();
        let traj = damped_trajectory(&y0, 0.025, 80.0);
        let loose = empirical_sync_time(&traj, 1e-2).unwrap();
        let tight = empirical_sync_time(&traj, 1e-3).unwrap();
        for (l, t) in loose.per_node.iter().zip(&tight.per_node) {
            assert!(l <= t);
        }
        assert!(loose.mean <= tight.mean);
    }

    #[test]
    fn first_return_not_later_than_settle() {
        let y0 = State::new(array![1.0, 0.0, 0.0, 0.0], array![0.0, 0.4, -0.2, 0.0]).unwrap();
        let traj = damped_trajectory(&y0, 0.025, 80.0);
        let settle = empirical_sync_time(&traj, 1e-3).unwrap();
        let ret = first_return_times(&traj, 1e-3).unwrap();
        for (r, s) in ret.per_node.iter().zip(&settle.per_node) {
            assert!(r <= s);
        }
    }

    #[test]
    fn unsettled_node_reported() {
        let y0 = State::new(array![1.0, 0.0, 0.0, 0.0], Array1::zeros(4)).unwrap();
        let traj = damped_trajectory(&y0, 0.1, 2.0);
        assert!(matches!(
            empirical_sync_time(&traj, 1e-9),
            Err(Error::Unsettled(_))
        ));
    }

    #[test]
    fn sync_measure_values() {
        let y0 = State::new(array![1.0, 0.0, 0.0, 0.0], Array1::zeros(4)).unwrap();
        let traj = damped_trajectory(&y0, 0.05, 60.0);
        // at t=0 node 1 deviates by 0.75, the rest by 0.25
        assert!((sync_measure(&traj, 0.0, 0.5).unwrap() - 0.75).abs() < 1e-12);
        assert_eq!(sync_measure(&traj, 60.0, 1e-3).unwrap(), 1.0);
        assert!(matches!(
            sync_measure(&traj, 0.33, 0.5),
            Err(Error::GridError(_))
        ));
    }

    #[test]
    fn prop2_decay_rate_visible_in_trajectory() {
        // the dominant toy4 pair is real, so the deviation decays smoothly
        // and ln(max deviation) against t is a line of slope lambda_S
        let y0 = State::new(array![1.0, 0.0, 0.0, 0.0], Array1::zeros(4)).unwrap();
        let traj = damped_trajectory(&y0, 0.05, 50.0);
        let dev = deviations(&traj);
        let lam = lambda_s(&toy4(), 1.0, 1).unwrap();
        let rows: Vec<f64> = dev
            .iter()
            .map(|r| r.iter().cloned().fold(0.0, f64::max))
            .collect();
        let mut pts = Vec::new();
        for (k, &t) in traj.times.iter().enumerate() {
            if (10.0..=45.0).contains(&t) {
                pts.push((t, rows[k].ln()));
            }
        }
        let m = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        let slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        assert!(
            (slope - lam).abs() < 0.05 * lam.abs(),
            "slope {slope} vs lambda_S {lam}"
        );
    }
}
