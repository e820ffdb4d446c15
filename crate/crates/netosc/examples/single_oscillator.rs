//! The single driven oscillator that every network mode reduces to:
//! sinusoidal forcing away from and at resonance, and the periodic kick
//! train with its very different divergence.
//!
//! ```bash
//! cargo run --example single_oscillator
//! ```

use netosc::resonance::{single_oscillator, ForceKind};

fn main() -> netosc::Result<()> {
    let (w0, m, f0) = (1.0, 1.0, 1.0);

    println!("sinusoid at omega = 2 (off resonance, bounded):");
    for t in [0.0, std::f64::consts::FRAC_PI_2, 3.0, 10.0] {
        let (x, v) = single_oscillator(w0, m, f0, 2.0, ForceKind::Sinusoid, t)?;
        println!("  t = {t:>6.3}: x = {x:+.6}, v = {v:+.6}");
    }

    println!("sinusoid at omega = omega0 (secular growth ~ F0 t / 2 m w0):");
    for t in [10.0, 20.0, 40.0] {
        let (x, _) = single_oscillator(w0, m, f0, w0, ForceKind::Sinusoid, t)?;
        println!("  t = {t:>4}: x = {x:+.3} (t/2 = {:+.3})", t / 2.0);
    }

    println!("kick train at omega = 0.7 (amplitude scaled by 1/sin(pi w0/w)):");
    let period = 2.0 * std::f64::consts::PI / 0.7;
    for k in 1..=4 {
        let (x, v) = single_oscillator(w0, m, f0, 0.7, ForceKind::DeltaTrain, k as f64 * period)?;
        println!("  after kick {k}: x = {x:+.6}, v = {v:+.6}");
    }

    // an integer ratio w0/w makes every kick arrive in phase
    match single_oscillator(2.0, m, f0, 1.0, ForceKind::DeltaTrain, 5.0) {
        Err(e) => println!("kick train at w0/w = 2: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
