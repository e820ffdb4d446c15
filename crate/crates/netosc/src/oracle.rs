//! Fixed-step RK4 integration of y' = G y + b(t), used as an independent
//! check on every closed form in the crate. Deterministic and deliberately
//! simple; acceptance tolerances budget its truncation error.

use ndarray::{Array1, Array2};

use crate::dynamics::{build_g, CouplingConfig, DriveSpec};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::trajectory::{State, Trajectory};

/// One classical Runge-Kutta step of size `dt` for the right-hand side `f`.
pub fn rk4_step(f: &mut impl FnMut(f64, &[f64], &mut [f64]), t: f64, y: &mut [f64], dt: f64) {
    let dim = y.len();
    let mut k1 = vec![0.0; dim];
    let mut k2 = vec![0.0; dim];
    let mut k3 = vec![0.0; dim];
    let mut k4 = vec![0.0; dim];
    let mut tmp = vec![0.0; dim];

    f(t, y, &mut k1);
    for i in 0..dim {
        tmp[i] = y[i] + 0.5 * dt * k1[i];
    }
    f(t + 0.5 * dt, &tmp, &mut k2);
    for i in 0..dim {
        tmp[i] = y[i] + 0.5 * dt * k2[i];
    }
    f(t + 0.5 * dt, &tmp, &mut k3);
    for i in 0..dim {
        tmp[i] = y[i] + dt * k3[i];
    }
    f(t + dt, &tmp, &mut k4);
    for i in 0..dim {
        y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

/// Integrates the network system from `y0` with step `dt` up to `horizon`,
/// sampling every `sample_every` steps (endpoints always included). The
/// sinusoidal drive is evaluated analytically at the half-step times.
pub fn rk4_integrate(
    g: &Graph,
    cfg: &CouplingConfig,
    drive: &DriveSpec,
    y0: &State,
    dt: f64,
    horizon: f64,
    sample_every: usize,
) -> Result<Trajectory> {
    if !(dt > 0.0) || !(horizon > 0.0) {
        return Err(Error::InvalidArgument(
            "dt and horizon must be positive".into(),
        ));
    }
    if sample_every == 0 {
        return Err(Error::InvalidArgument("sample_every must be >= 1".into()));
    }
    let n = g.node_count();
    if y0.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "state length {} != {n}",
            y0.len()
        )));
    }
    let gm = build_g(g, cfg);
    let steps = (horizon / dt).round().max(1.0) as usize;

    let forcing: Box<dyn Fn(f64, &mut [f64])> = match drive.clone() {
        DriveSpec::None => Box::new(|_t, _out| {}),
        DriveSpec::Sinusoid {
            node,
            amplitude,
            frequency,
        } => Box::new(move |t, out| {
            out[n + node - 1] += amplitude * (frequency * t).sin();
        }),
        DriveSpec::ConstantPower(p) => Box::new(move |_t, out| {
            for i in 0..n {
                out[n + i] += p[i];
            }
        }),
    };
    let mut rhs = |t: f64, y: &[f64], out: &mut [f64]| {
        for r in 0..2 * n {
            let mut acc = 0.0;
            for c in 0..2 * n {
                acc += gm[[r, c]] * y[c];
            }
            out[r] = acc;
        }
        forcing(t, out);
    };

    let mut y = vec![0.0; 2 * n];
    for i in 0..n {
        y[i] = y0.x[i];
        y[n + i] = y0.v[i];
    }

    let mut times = Vec::new();
    let mut states = Vec::new();
    let mut push = |k: usize, y: &[f64]| {
        times.push(k as f64 * dt);
        states.push(State {
            x: Array1::from_iter(y[..n].iter().cloned()),
            v: Array1::from_iter(y[n..].iter().cloned()),
        });
    };
    push(0, &y);
    for k in 0..steps {
        let t = k as f64 * dt;
        rk4_step(&mut rhs, t, &mut y, dt);
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::NumericalBlowup((k + 1) as f64 * dt));
        }
        if (k + 1) % sample_every == 0 || k + 1 == steps {
            push(k + 1, &y);
        }
    }
    Trajectory::new(times, states)
}

/// Largest absolute difference between two trajectories on the same grid,
/// over all times, nodes, positions and velocities.
pub fn max_deviation(a: &Trajectory, b: &Trajectory) -> Result<f64> {
    if a.len() != b.len() || a.node_count() != b.node_count() {
        return Err(Error::GridMismatch);
    }
    let mut worst: f64 = 0.0;
    for ((ta, sa), (tb, sb)) in a
        .times
        .iter()
        .zip(&a.states)
        .zip(b.times.iter().zip(&b.states))
    {
        if (ta - tb).abs() > 1e-12 {
            return Err(Error::GridMismatch);
        }
        for (x, y) in sa.x.iter().zip(sb.x.iter()) {
            worst = worst.max((x - y).abs());
        }
        for (x, y) in sa.v.iter().zip(sb.v.iter()) {
            worst = worst.max((x - y).abs());
        }
    }
    Ok(worst)
}

/// Dense matrix-vector right-hand side for generic linear tests.
pub fn linear_rhs(m: Array2<f64>) -> impl FnMut(f64, &[f64], &mut [f64]) {
    move |_t, y, out| {
        for r in 0..m.nrows() {
            let mut acc = 0.0;
            for c in 0..m.ncols() {
                acc += m[[r, c]] * y[c];
            }
            out[r] = acc;
        }
    }
}
