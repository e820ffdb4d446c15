//! Vibrational communicability: the Laplacian pseudoinverse entry as a
//! displacement correlation between nodes near the ground frequency.
//!
//! ```bash
//! cargo run --example vibrational_communicability
//! ```

use netosc::graph::{builtin, toy4};
use netosc::resonance::{influence, vibrational_communicability};
use netosc::spectral::laplacian_spectrum;

fn main() -> netosc::Result<()> {
    let g = toy4();
    println!("toy4 communicability matrix:");
    for h in 1..=4 {
        let row = (1..=4)
            .map(|k| vibrational_communicability(&g, h, k))
            .collect::<netosc::Result<Vec<_>>>()?;
        println!("  {row:+.4?}");
    }
    // same numbers through the pseudoinverse route
    let pinv = laplacian_spectrum(&g)?.pseudo_inverse();
    println!("  (matches the spectral pseudoinverse to {:.1e})", {
        let mut worst: f64 = 0.0;
        for h in 0..4 {
            for k in 0..4 {
                worst = worst
                    .max((pinv[[h, k]] - vibrational_communicability(&g, h + 1, k + 1)?).abs());
            }
        }
        worst
    });

    // mode-resolved influence: per-mode topological weight of a source on
    // a receiver
    let z = builtin("zachary")?;
    println!("\nkarate club, influence of node 1 per mode (receivers 11 and 30):");
    for mode in [22usize, 30] {
        println!(
            "  mode {mode:>2}: on node 11 {:+.6}, on node 30 {:+.6}",
            influence(&z, 1, 11, mode)?,
            influence(&z, 1, 30, mode)?
        );
    }
    println!(
        "\ncommunicability 1<->11: {:+.5}   1<->30: {:+.5}   1<->34: {:+.5}",
        vibrational_communicability(&z, 1, 11)?,
        vibrational_communicability(&z, 1, 30)?,
        vibrational_communicability(&z, 1, 34)?
    );
    Ok(())
}
