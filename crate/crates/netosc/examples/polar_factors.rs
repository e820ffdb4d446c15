//! Polar decomposition G = U P of the damping-coupled state matrix: the
//! rotation factor U alone carries the asymptotic synchronized motion.
//!
//! ```bash
//! cargo run --example polar_factors
//! ```

use ndarray::Array1;
use netosc::graph::toy4;
use netosc::polar::{expm_u, polar_decompose};
use netosc::report::polar_report;
use netosc::sync::asymptotic_state;
use netosc::trajectory::State;

fn main() -> netosc::Result<()> {
    let g = toy4();
    let f = polar_decompose(&g)?;
    print!("{}", polar_report(&f));

    // e^{Ut} forgets every mode except the zero-mode rotation
    let y0 = State::new(Array1::from_vec(vec![1.0, 0.0, 0.0, 0.0]), Array1::zeros(4))?;
    let mut y = Array1::zeros(8);
    y[0] = 1.0;
    println!("\n|e^(Ut) y0 - synchronized state| over time:");
    for t in [0.0, 5.0, 15.0, 30.0, 60.0] {
        let z = expm_u(&g, t)?.dot(&y);
        let tilde = asymptotic_state(&y0, t);
        let dev = (0..4)
            .map(|i| (z[i] - tilde.x[i]).abs().max((z[4 + i] - tilde.v[i]).abs()))
            .fold(0.0f64, f64::max);
        println!("  t = {t:>5}: {dev:.3e}");
    }
    Ok(())
}
