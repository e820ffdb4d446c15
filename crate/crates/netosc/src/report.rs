//! Plain-text report rendering shared by the command-line tool and the
//! examples. All numeric formatting is fixed-width so repeated runs are
//! byte-identical.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::Result;
use crate::graph::Graph;
use crate::polar::PolarFactors;
use crate::resonance::{NodeClass, ResonanceMap};
use crate::spectral::SpectralDecomposition;
use crate::swing::TransientMetrics;
use crate::sync::SyncReport;

fn fmt_c(z: Complex64) -> String {
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    if z.im == 0.0 {
        format!("{re:.6}")
    } else if z.im > 0.0 {
        format!("{re:.6}+{:.6}i", z.im)
    } else {
        format!("{re:.6}-{:.6}i", -z.im)
    }
}

/// Spectrum table: distinct eigenvalues, multiplicities and the matching
/// resonance frequencies, plus connectivity summary lines.
pub fn spectrum_report(g: &Graph, dec: &SpectralDecomposition) -> Result<String> {
    let mut out = String::new();
    let n = g.node_count();
    let _ = writeln!(
        out,
        "nodes: {n}  edges: {}  total degree: {}",
        g.edges().len(),
        g.total_degree()
    );
    if n >= 2 {
        let _ = writeln!(out, "density: {:.6}", g.density()?);
        let _ = writeln!(out, "algebraic connectivity: {:.6}", dec.eigenvalues[n - 2]);
    }
    let _ = writeln!(out, "{:>4} {:>12} {:>12} {:>5}", "i", "mu", "omega", "mult");
    for (i, m) in dec.distinct_modes().iter().enumerate() {
        let mu = if m.value.abs() < crate::spectral::ZERO_EIGENVALUE_TOL {
            0.0
        } else {
            m.value
        };
        let _ = writeln!(
            out,
            "{:>4} {:>12.6} {:>12.6} {:>5}",
            i + 1,
            mu,
            (1.0 + mu).sqrt(),
            m.multiplicity
        );
    }
    Ok(out)
}

/// Eigenvalue table of the damping-coupled state matrix and its polar
/// factors, one row per Laplacian mode.
pub fn polar_report(factors: &PolarFactors) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>4} {:>10} {:>24} {:>10} {:>22} {:>9}",
        "mode", "mu", "lambda_G(+/-)", "lambda_P+", "lambda_U+", "theta"
    );
    for (i, (pp, up)) in factors.p_pairs.iter().zip(&factors.u_pairs).enumerate() {
        let (gp, gm) = crate::dynamics::damped_sync_lambda(pp.mu, 1.0);
        let _ = writeln!(
            out,
            "{:>4} {:>10.6} {:>24} {:>10.6} {:>22} {:>8.2}\u{00b0}",
            i + 1,
            pp.mu,
            format!("{} / {}", fmt_c(gp), fmt_c(gm)),
            pp.lambda_plus,
            fmt_c(up.lambda_plus),
            up.theta_degrees(),
        );
    }
    let _ = writeln!(
        out,
        "reciprocal P pairs: lambda_P- = 1/lambda_P+; U pairs conjugate"
    );
    out
}

/// Synchronization report: decay rate, dominant mode, bound times and any
/// empirical settle times.
pub fn sync_report_text(r: &SyncReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "alpha: {}  epsilon: {}", r.alpha, r.epsilon);
    let _ = writeln!(out, "lambda_S: {:.7}", r.lambda_s);
    let kind = if r.dominant.oscillatory {
        "oscillatory"
    } else {
        "monotone"
    };
    let _ = writeln!(
        out,
        "dominant mode(s): {:?}  (mu = {:.6}, {kind} decay)",
        r.dominant.modes, r.dominant.mu
    );
    let _ = writeln!(out, "mean bound time: {:.3}", r.mean_bound_time);
    let _ = write!(out, "per-node bound times:");
    for t in &r.per_node_bound_times {
        let _ = write!(out, " {t:.3}");
    }
    out.push('\n');
    if let Some(e) = &r.empirical {
        let _ = writeln!(
            out,
            "empirical settle mean: {:.3}  max: {:.3}",
            e.mean, e.max
        );
        let _ = write!(out, "per-node settle times:");
        for t in &e.per_node {
            let _ = write!(out, " {t:.3}");
        }
        out.push('\n');
    }
    out
}

/// Node classification table for one driven mode.
pub fn resonance_map_report(m: &ResonanceMap) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "mode {} (mu = {:.6}, omega = {:.6}, multiplicity {}) driven from node {}",
        m.mode, m.mu, m.frequency, m.multiplicity, m.source
    );
    for (k, class) in m.classes.iter().enumerate() {
        let text = match class {
            NodeClass::Blocked => "blocked".to_string(),
            NodeClass::Transparent => "transparent".to_string(),
            NodeClass::Resonant { phase } => {
                format!("resonant ({})", if *phase >= 0 { "+" } else { "-" })
            }
        };
        let _ = writeln!(out, "  node {:>3}: {text}", k + 1);
    }
    out
}

/// Transient metrics table for the swing response.
pub fn transient_report(metrics: &[TransientMetrics]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>5} {:>16} {:>16} {:>18}",
        "node", "first peak", "first peak time", "steady state"
    );
    for m in metrics {
        let _ = writeln!(
            out,
            "{:>5} {:>16.7} {:>16.3} {:>18.7}",
            m.node, m.first_peak_value, m.first_peak_time, m.steady_state_value
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::toy4;
    use crate::spectral::laplacian_spectrum;

    #[test]
    fn spectrum_report_lists_distinct_modes() {
        let g = toy4();
        let dec = laplacian_spectrum(&g).unwrap();
        let text = spectrum_report(&g, &dec).unwrap();
        assert!(text.contains("density: 0.666667"));
        assert!(text.contains("algebraic connectivity: 1.000000"));
        // four distinct eigenvalues, ground frequency exactly one
        assert_eq!(text.lines().count(), 3 + 1 + 4);
        assert!(text.contains("0.000000     1.000000"));
    }

    #[test]
    fn reports_are_deterministic() {
        let g = toy4();
        let f1 = crate::polar::polar_decompose(&g).unwrap();
        let f2 = crate::polar::polar_decompose(&g).unwrap();
        assert_eq!(polar_report(&f1), polar_report(&f2));
    }
}
