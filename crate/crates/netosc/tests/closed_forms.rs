//! Cross-checks of the modal engine against independently transcribed
//! published closed forms and against the RK4 oracle on the remaining
//! configurations not covered by the acceptance suite.

use ndarray::Array1;
use num_complex::Complex64;

use netosc::dynamics::{
    evolve, expm_via_modes, mode_solve, CouplingConfig, DriveSpec, ScalarDrive,
};
use netosc::graph::toy4;
use netosc::oracle::{max_deviation, rk4_integrate, rk4_step};
use netosc::resonance::{forced_damped, forced_undamped};
use netosc::spectral::laplacian_spectrum;
use netosc::trajectory::{time_grid, State};

/// Forced elastic response transcribed literally:
/// x_k(t) = F0 w sum_i phi_i(h) phi_i(k) / (w^2 - w_i^2)
///          (sin(w_i t)/w_i - sin(w t)/w)
fn forced_elastic_transcription(h: usize, f0: f64, w: f64, t: f64) -> Vec<f64> {
    let dec = laplacian_spectrum(&toy4()).unwrap();
    let n = 4;
    let mut x = vec![0.0; n];
    for i in 0..n {
        let mu = dec.eigenvalues[i].max(0.0);
        let wi = (1.0 + mu).sqrt();
        for (k, xk) in x.iter_mut().enumerate() {
            let weight = dec.eigenvectors[[h - 1, i]] * dec.eigenvectors[[k, i]];
            *xk += f0 * w * weight / (w * w - wi * wi) * ((wi * t).sin() / wi - (w * t).sin() / w);
        }
    }
    x
}

/// Forced damping-coupled response transcribed literally, with the ground
/// mode made explicit:
/// x_k(t) = sum_{i<n} F0 phi_i(h) phi_i(k)
///            / ((w^2 + lm^2)(w^2 + lp^2))
///            [ (1 - w^2) sin wt - mu w cos wt
///              + (w/xi)((w^2 + lm^2) e^{lp t} - (w^2 + lp^2) e^{lm t}) ]
///          + (F0/n) (w sin t - sin wt) / (w^2 - 1)
fn forced_damped_transcription(h: usize, f0: f64, w: f64, t: f64) -> (Vec<f64>, f64) {
    let dec = laplacian_spectrum(&toy4()).unwrap();
    let n = 4;
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n - 1 {
        let mu = dec.eigenvalues[i];
        let xi = Complex64::new(mu * mu - 4.0, 0.0).sqrt();
        let lp = (xi - mu) / 2.0;
        let lm = -(xi + mu) / 2.0;
        let w2 = Complex64::new(w * w, 0.0);
        let denom = (w2 + lm * lm) * (w2 + lp * lp);
        let bracket = Complex64::new((1.0 - w * w) * (w * t).sin() - mu * w * (w * t).cos(), 0.0)
            + (w / xi) * ((w2 + lm * lm) * (lp * t).exp() - (w2 + lp * lp) * (lm * t).exp());
        for (k, xk) in x.iter_mut().enumerate() {
            let weight = dec.eigenvectors[[h - 1, i]] * dec.eigenvectors[[k, i]];
            *xk += f0 * weight * bracket / denom;
        }
    }
    let ground = f0 / n as f64 * (w * t.sin() - (w * t).sin()) / (w * w - 1.0);
    let max_imag = x.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    (x.iter().map(|z| z.re + ground).collect(), max_imag)
}

#[test]
fn forced_elastic_matches_transcription() {
    let g = toy4();
    let times = time_grid(0.05, 15.0).unwrap();
    for w in [0.8, 1.2, 1.9] {
        let traj = forced_undamped(&g, 1, 1.0, w, &times).unwrap();
        for (k, &t) in traj.times.iter().enumerate() {
            let want = forced_elastic_transcription(1, 1.0, w, t);
            for node in 0..4 {
                assert!(
                    (traj.states[k].x[node] - want[node]).abs() < 1e-8,
                    "w={w} t={t} node {node}"
                );
            }
        }
    }
}

#[test]
fn forced_damped_matches_transcription() {
    let g = toy4();
    let times = time_grid(0.05, 15.0).unwrap();
    for w in [0.8, 1.2] {
        let traj = forced_damped(&g, 1, 1.0, w, &times).unwrap();
        for (k, &t) in traj.times.iter().enumerate() {
            let (want, max_imag) = forced_damped_transcription(1, 1.0, w, t);
            assert!(max_imag < 1e-10, "modal coefficients must assemble real");
            for node in 0..4 {
                assert!(
                    (traj.states[k].x[node] - want[node]).abs() < 1e-8,
                    "w={w} t={t} node {node}"
                );
            }
        }
    }
}

#[test]
fn forced_near_resonance_matches_rk4() {
    let g = toy4();
    let numeric = rk4_integrate(
        &g,
        &CouplingConfig::coupled(),
        &DriveSpec::Sinusoid {
            node: 1,
            amplitude: 1.0,
            frequency: 0.95,
        },
        &State::zero(4),
        1e-3,
        60.0,
        50,
    )
    .unwrap();
    let closed = forced_undamped(&g, 1, 1.0, 0.95, &numeric.times).unwrap();
    assert!(max_deviation(&closed, &numeric).unwrap() < 1e-6);
}

#[test]
fn elastic_evolution_matches_rk4_tightly() {
    let g = toy4();
    let y0 = State::new(Array1::from_vec(vec![1.0, 0.0, 0.0, 0.0]), Array1::zeros(4)).unwrap();
    let numeric = rk4_integrate(
        &g,
        &CouplingConfig::coupled(),
        &DriveSpec::None,
        &y0,
        1e-3,
        2.0 * std::f64::consts::PI,
        10,
    )
    .unwrap();
    let closed = evolve(
        &g,
        &CouplingConfig::coupled(),
        &DriveSpec::None,
        &y0,
        &numeric.times,
    )
    .unwrap();
    assert!(max_deviation(&closed, &numeric).unwrap() < 1e-7);
}

#[test]
fn damped_evolution_reaches_synchronized_state() {
    let g = toy4();
    let y0 = State::new(
        Array1::from_vec(vec![1.0, -0.4, -1.0, 0.2]),
        Array1::from_vec(vec![0.0, 0.4, -0.3, 0.0]),
    )
    .unwrap();
    let traj = evolve(
        &g,
        &CouplingConfig::coupled_damped(1.0),
        &DriveSpec::None,
        &y0,
        &[0.0, 50.0],
    )
    .unwrap();
    let tilde = netosc::sync::asymptotic_state(&y0, 50.0);
    let last = traj.states.last().unwrap();
    for i in 0..4 {
        assert!((last.x[i] - tilde.x[i]).abs() < 1e-5);
        assert!((last.v[i] - tilde.v[i]).abs() < 1e-5);
    }
}

#[test]
fn propagator_columns_match_rk4() {
    let g = toy4();
    let cfg = CouplingConfig::coupled_damped(1.0);
    let t = 1.3;
    let e = expm_via_modes(&g, &cfg, t).unwrap();
    for col in 0..8 {
        let y0 = State::new(
            Array1::from_shape_fn(4, |i| if i == col { 1.0 } else { 0.0 }),
            Array1::from_shape_fn(4, |i| if 4 + i == col { 1.0 } else { 0.0 }),
        )
        .unwrap();
        let traj = rk4_integrate(&g, &cfg, &DriveSpec::None, &y0, 1e-3, t, 1300).unwrap();
        let last = traj.states.last().unwrap();
        for r in 0..4 {
            assert!((e[[r, col]] - last.x[r]).abs() < 1e-7, "col {col} row {r}");
            assert!(
                (e[[4 + r, col]] - last.v[r]).abs() < 1e-7,
                "col {col} row {r}"
            );
        }
    }
}

#[test]
fn scalar_mode_matches_rk4() {
    // mu = 3 under damping coupling: omega^2 = 1, gamma = 3
    let mut rhs = |_t: f64, y: &[f64], out: &mut [f64]| {
        out[0] = y[1];
        out[1] = -y[0] - 3.0 * y[1];
    };
    let dt = 1e-3;
    let mut y = vec![1.0, 0.0];
    let mut worst: f64 = 0.0;
    for k in 0..20000 {
        rk4_step(&mut rhs, k as f64 * dt, &mut y, dt);
        let t = (k + 1) as f64 * dt;
        let (x, v) = mode_solve(1.0, 3.0, 1.0, 0.0, ScalarDrive::Zero, t).unwrap();
        worst = worst.max((x - y[0]).abs()).max((v - y[1]).abs());
    }
    assert!(worst < 1e-8, "max error {worst}");
}

#[test]
fn secular_single_oscillator_matches_rk4() {
    let w0 = 1.0;
    let mut rhs = move |t: f64, y: &[f64], out: &mut [f64]| {
        out[0] = y[1];
        out[1] = -w0 * w0 * y[0] + (w0 * t).sin();
    };
    let dt = 1e-3;
    let mut y = vec![0.0, 0.0];
    let mut worst: f64 = 0.0;
    for k in 0..30000 {
        rk4_step(&mut rhs, k as f64 * dt, &mut y, dt);
        let t = (k + 1) as f64 * dt;
        let (x, v) = netosc::resonance::single_oscillator(
            w0,
            1.0,
            1.0,
            w0,
            netosc::resonance::ForceKind::Sinusoid,
            t,
        )
        .unwrap();
        worst = worst.max((x - y[0]).abs()).max((v - y[1]).abs());
    }
    assert!(worst < 1e-6, "max error {worst}");
}

#[test]
fn swing_matches_rk4_at_both_dampings() {
    let g = toy4();
    let p = Array1::from_vec(vec![-0.50, -0.20, 1.05, -0.35]);
    for gamma in [0.4, 1.0] {
        let cfg = CouplingConfig::swing(gamma);
        let drive = DriveSpec::ConstantPower(p.clone());
        let numeric = rk4_integrate(&g, &cfg, &drive, &State::zero(4), 1e-3, 30.0, 30).unwrap();
        let closed = evolve(&g, &cfg, &drive, &State::zero(4), &numeric.times).unwrap();
        assert!(max_deviation(&closed, &numeric).unwrap() < 1e-6, "gamma {gamma}");
    }
}
