//! Driving one node at a modal frequency: which nodes resonate, which are
//! transparent, and which sources are blocked entirely.
//!
//! ```bash
//! cargo run --example resonance_transparency
//! ```

use netosc::graph::toy4;
use netosc::report::resonance_map_report;
use netosc::resonance::{
    envelope_slope, forced_damped, forced_undamped, resonance_map, sup_position, TRANSPARENCY_TOL,
};
use netosc::trajectory::time_grid;

fn main() -> netosc::Result<()> {
    let g = toy4();

    // drive node 1 at omega_2 = 2: nodes 3 and 4 have no component in that
    // mode, so they stay bounded while 1 and 2 grow linearly
    print!(
        "{}",
        resonance_map_report(&resonance_map(&g, 1, 2, TRANSPARENCY_TOL)?)
    );
    let times = time_grid(0.005, 200.0)?;
    let traj = forced_undamped(&g, 1, 1.0, 2.0, &times)?;
    for node in 1..=4 {
        let xs = traj.position(node)?;
        let slope = envelope_slope(&traj.times, &xs, 100.0).unwrap_or(0.0);
        println!(
            "  node {node}: sup |x| = {:8.3}   envelope slope = {:+.4}",
            sup_position(&traj, node)?,
            slope
        );
    }

    // the same frequency from node 3 is blocked: phi_2(3) = 0
    print!(
        "\n{}",
        resonance_map_report(&resonance_map(&g, 3, 2, TRANSPARENCY_TOL)?)
    );
    let blocked = forced_undamped(&g, 3, 1.0, 2.0, &times)?;
    let sup = (1..=4)
        .map(|k| sup_position(&blocked, k))
        .collect::<netosc::Result<Vec<_>>>()?;
    println!("  sup |x| per node: {sup:.3?} (no secular growth anywhere)");

    // with damping coupling only the ground frequency resonates, and it
    // synchronizes the whole network while growing
    let ground = forced_damped(&g, 1, 1.0, 1.0, &times)?;
    println!("\ndamping coupling driven at the ground frequency:");
    for node in 1..=4 {
        let xs = ground.position(node)?;
        println!(
            "  node {node}: envelope slope = {:+.4} (F0/2n = {:+.4})",
            envelope_slope(&ground.times, &xs, 100.0).unwrap_or(0.0),
            1.0 / 8.0
        );
    }
    let off = forced_damped(&g, 1, 1.0, 2.0f64.sqrt(), &times)?;
    let sup = (1..=4)
        .map(|k| sup_position(&off, k))
        .collect::<netosc::Result<Vec<_>>>()?;
    println!("  at omega = sqrt(2) instead: sup |x| per node {sup:.3?}");
    Ok(())
}
