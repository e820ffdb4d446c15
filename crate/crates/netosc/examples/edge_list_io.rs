//! File interfaces: read an edge-list document, simulate, and write the
//! trajectory CSV that external plotters consume.
//!
//! ```bash
//! cargo run --example edge_list_io
//! ```

use ndarray::Array1;
use netosc::dynamics::{evolve, CouplingConfig, DriveSpec};
use netosc::graph::Graph;
use netosc::trajectory::{time_grid, State, Trajectory};

const EDGES: &str = "\
# a five-node ring with one chord
1 2
2 3
3 4
4 5
5 1
2 5
";

fn main() -> netosc::Result<()> {
    let g = Graph::from_edge_list(EDGES)?;
    println!(
        "parsed {} nodes, {} edges, degrees {:?}",
        g.node_count(),
        g.edges().len(),
        g.degrees()
    );

    // round trip through the text form
    let again = Graph::from_edge_list(&g.render())?;
    assert_eq!(g, again);

    let mut x0 = Array1::zeros(5);
    x0[0] = 1.0;
    let y0 = State::new(x0, Array1::zeros(5))?;
    let times = time_grid(0.05, 10.0)?;
    let traj = evolve(
        &g,
        &CouplingConfig::coupled(),
        &DriveSpec::None,
        &y0,
        &times,
    )?;

    let dir = std::env::temp_dir();
    let path = dir.join("ring_trajectory.csv");
    std::fs::write(&path, traj.to_csv())?;
    println!("wrote {}", path.display());

    // the CSV round-trips losslessly at 12 significant digits
    let back = Trajectory::from_csv(&std::fs::read_to_string(&path)?)?;
    let worst = traj
        .states
        .iter()
        .zip(&back.states)
        .flat_map(|(a, b)| a.x.iter().zip(b.x.iter()).map(|(p, q)| (p - q).abs()))
        .fold(0.0f64, f64::max);
    println!("round-trip max error: {worst:.1e}");
    Ok(())
}
