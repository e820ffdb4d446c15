//! Build graphs, inspect Laplacian spectra and resonance frequencies.
//!
//! ```bash
//! cargo run --example spectrum_basics
//! ```

use netosc::graph::{builtin, Graph};
use netosc::report::spectrum_report;
use netosc::resonance::resonance_frequencies;
use netosc::spectral::laplacian_spectrum;

fn main() -> netosc::Result<()> {
    // a builtin dataset
    let toy = builtin("toy4")?;
    println!("toy4 spectrum:");
    println!("{}", spectrum_report(&toy, &laplacian_spectrum(&toy)?)?);

    // the same graph from edge-list text
    let parsed = Graph::from_edge_list("1 2\n1 3\n2 3\n3 4  # pendant node")?;
    assert_eq!(parsed, toy);

    // parametric families
    for name in ["path:6", "cycle:6", "complete:6"] {
        let g = builtin(name)?;
        let dec = laplacian_spectrum(&g)?;
        let n = g.node_count();
        println!(
            "{name:<12} density {:.3}  algebraic connectivity {:.4}  mu_1 {:.4}",
            g.density()?,
            dec.eigenvalues[n - 2],
            dec.eigenvalues[0],
        );
    }

    // modal frequencies sqrt(1 + mu); the ground frequency is always 1
    let freqs = resonance_frequencies(&toy, 1.0, 1.0)?;
    println!("\ntoy4 resonance frequencies: {freqs:.4?}");
    Ok(())
}
