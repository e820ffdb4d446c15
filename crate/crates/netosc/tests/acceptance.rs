//! Acceptance gate: runs the embedded verification suite and requires
//! every criterion to pass, printing one line per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion report.

#[test]
fn acceptance_suite() {
    let results = netosc::verify::run_all().expect("suite runs");
    for r in &results {
        println!(
            "{} {:>2}  {}\n      {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.detail
        );
    }
    let failed: Vec<_> = results.iter().filter(|r| !r.passed).collect();
    assert!(
        failed.is_empty(),
        "{} criteria failed: {:?}",
        failed.len(),
        failed.iter().map(|r| r.id).collect::<Vec<_>>()
    );
}

#[test]
fn verify_report_is_deterministic() {
    let a = netosc::verify::render(&netosc::verify::run_all().unwrap());
    let b = netosc::verify::render(&netosc::verify::run_all().unwrap());
    assert_eq!(a, b);
}
