//! Order-of-accuracy study: halving the RK4 step against the closed forms
//! must show fourth-order error decay on every coupling regime.

use ndarray::Array1;

use netosc::dynamics::{evolve, CouplingConfig, DriveSpec};
use netosc::graph::toy4;
use netosc::oracle::{max_deviation, rk4_integrate};
use netosc::trajectory::State;

fn regimes() -> Vec<(&'static str, CouplingConfig, DriveSpec, State)> {
    let x0 = Array1::from_vec(vec![1.0, 0.0, 0.0, 0.0]);
    let v0 = Array1::from_vec(vec![0.0, 0.4, -0.2, 0.0]);
    let rest = State::zero(4);
    let p = Array1::from_vec(vec![-0.50, -0.20, 1.05, -0.35]);
    vec![
        (
            "elastic",
            CouplingConfig::coupled(),
            DriveSpec::None,
            State::new(x0.clone(), v0.clone()).unwrap(),
        ),
        (
            "damping",
            CouplingConfig::coupled_damped(1.0),
            DriveSpec::None,
            State::new(x0, v0).unwrap(),
        ),
        (
            "forced elastic",
            CouplingConfig::coupled(),
            DriveSpec::Sinusoid {
                node: 1,
                amplitude: 1.0,
                frequency: 0.95,
            },
            rest.clone(),
        ),
        (
            "forced damping",
            CouplingConfig::coupled_damped(1.0),
            DriveSpec::Sinusoid {
                node: 1,
                amplitude: 1.0,
                frequency: 0.8,
            },
            rest.clone(),
        ),
        (
            "swing",
            CouplingConfig::swing(1.0),
            DriveSpec::ConstantPower(p),
            rest,
        ),
    ]
}

fn error_at(
    cfg: &CouplingConfig,
    drive: &DriveSpec,
    y0: &State,
    dt: f64,
    sample_every: usize,
) -> f64 {
    let g = toy4();
    let numeric = rk4_integrate(&g, cfg, drive, y0, dt, 10.0, sample_every).unwrap();
    let closed = evolve(&g, cfg, drive, y0, &numeric.times).unwrap();
    max_deviation(&closed, &numeric).unwrap()
}

#[test]
fn observed_order_at_least_three_point_seven() {
    for (name, cfg, drive, y0) in regimes() {
        // identical sample grids: 0.1 spacing at all three steps
        let e1 = error_at(&cfg, &drive, &y0, 0.02, 5);
        let e2 = error_at(&cfg, &drive, &y0, 0.01, 10);
        let e3 = error_at(&cfg, &drive, &y0, 0.005, 20);
        let order12 = (e1 / e2).log2();
        let order23 = (e2 / e3).log2();
        assert!(
            order12 >= 3.7 && order23 >= 3.7,
            "{name}: orders {order12:.2}, {order23:.2} (errors {e1:.2e}, {e2:.2e}, {e3:.2e})"
        );
        // halving 0.01 -> 0.005 shrinks the error about sixteenfold
        let ratio = e2 / e3;
        assert!(
            (16.0 / 1.5..=16.0 * 1.5).contains(&ratio),
            "{name}: halving ratio {ratio:.2}"
        );
    }
}
