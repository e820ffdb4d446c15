//! Compare the exact modal solutions against the fixed-step RK4 oracle on
//! all five coupling regimes.
//!
//! ```bash
//! cargo run --example exact_vs_rk4
//! ```

use ndarray::Array1;
use netosc::dynamics::{evolve, CouplingConfig, DriveSpec};
use netosc::graph::toy4;
use netosc::oracle::{max_deviation, rk4_integrate};
use netosc::trajectory::State;

fn main() -> netosc::Result<()> {
    let g = toy4();
    let x0 = Array1::from_vec(vec![1.0, 0.0, 0.0, 0.0]);
    let v0 = Array1::from_vec(vec![0.0, 0.4, -0.2, 0.0]);
    let p = Array1::from_vec(vec![-0.50, -0.20, 1.05, -0.35]);

    let regimes: Vec<(&str, CouplingConfig, DriveSpec, State)> = vec![
        (
            "elastic coupling",
            CouplingConfig::coupled(),
            DriveSpec::None,
            State::new(x0.clone(), v0.clone())?,
        ),
        (
            "damping coupling",
            CouplingConfig::coupled_damped(1.0),
            DriveSpec::None,
            State::new(x0, v0)?,
        ),
        (
            "forced elastic",
            CouplingConfig::coupled(),
            DriveSpec::Sinusoid {
                node: 1,
                amplitude: 1.0,
                frequency: 0.95,
            },
            State::zero(4),
        ),
        (
            "forced damping",
            CouplingConfig::coupled_damped(1.0),
            DriveSpec::Sinusoid {
                node: 1,
                amplitude: 1.0,
                frequency: 0.8,
            },
            State::zero(4),
        ),
        (
            "swing equation",
            CouplingConfig::swing(1.0),
            DriveSpec::ConstantPower(p),
            State::zero(4),
        ),
    ];

    println!("{:<18} {:>14}", "regime", "max |closed - RK4|");
    for (name, cfg, drive, y0) in regimes {
        let numeric = rk4_integrate(&g, &cfg, &drive, &y0, 1e-3, 20.0, 20)?;
        let closed = evolve(&g, &cfg, &drive, &y0, &numeric.times)?;
        println!("{name:<18} {:>14.3e}", max_deviation(&closed, &numeric)?);
    }
    Ok(())
}
