//! Synchronization of damping-coupled oscillators: decay rates, analytic
//! time bounds, empirical settle times, and how coupling strength flips
//! the ranking between sparse and dense topologies.
//!
//! ```bash
//! cargo run --example synchronization_times
//! ```

use ndarray::Array1;
use netosc::dynamics::{evolve, CouplingConfig, DriveSpec};
use netosc::graph::builtin;
use netosc::sync::{
    asymptotic_state, empirical_sync_time, lambda_s, sync_measure, sync_time_bounds, OnUnexcited,
};
use netosc::trajectory::{time_grid, State};

fn e1(n: usize) -> State {
    let mut x = Array1::zeros(n);
    x[0] = 1.0;
    State {
        x,
        v: Array1::zeros(n),
    }
}

fn main() -> netosc::Result<()> {
    // decay rates: the least negative real part over the state-matrix modes
    println!("{:<18} {:>12} {:>12}", "graph", "lambda_S", "second");
    for name in [
        "path:4",
        "toy4",
        "complete:4",
        "path:5",
        "clique_pendant:5",
        "complete:5",
    ] {
        let g = builtin(name)?;
        println!(
            "{name:<18} {:>12.7} {:>12.7}",
            lambda_s(&g, 1.0, 1)?,
            lambda_s(&g, 1.0, 2)?
        );
    }

    // analytic bounds; stronger inter-node damping favours sparse graphs,
    // weak damping favours dense ones
    println!("\nmean bound times from an e1 displacement (epsilon 1e-6):");
    println!("{:<18} {:>12} {:>12}", "graph", "alpha=1", "alpha=0.1");
    for name in ["path:5", "clique_pendant:5", "complete:5"] {
        let g = builtin(name)?;
        let strong = sync_time_bounds(&g, &e1(5), 1e-6, 1.0, OnUnexcited::Fail)?;
        let weak = sync_time_bounds(&g, &e1(5), 1e-6, 0.1, OnUnexcited::Fail)?;
        println!(
            "{name:<18} {:>12.2} {:>12.2}",
            strong.mean_bound_time, weak.mean_bound_time
        );
    }

    // empirical settle times measured on the exact trajectory
    let g = builtin("toy4")?;
    let y0 = e1(4);
    let times = time_grid(0.025, 80.0)?;
    let traj = evolve(
        &g,
        &CouplingConfig::coupled_damped(1.0),
        &DriveSpec::None,
        &y0,
        &times,
    )?;
    let settle = empirical_sync_time(&traj, 1e-3)?;
    println!("\ntoy4, e1 displacement, epsilon 1e-3:");
    println!(
        "  settle times {:.2?}  mean {:.3}  max {:.3}",
        settle.per_node, settle.mean, settle.max
    );

    // the synchronized state every node approaches
    let tilde = asymptotic_state(&y0, 80.0);
    println!(
        "  synchronized position at t=80: {:.6} (all nodes)",
        tilde.x[0]
    );
    for t in [0.0, 10.0, 25.0, 50.0] {
        println!(
            "  fraction synchronized at t={t:>4}: {:.2}",
            sync_measure(&traj, t, 1e-2)?
        );
    }
    Ok(())
}
