//! Acceptance suite: one PASS/FAIL line per numbered check.

use std::io::Write;

use qgca_core::verify::{run_all, VerifyOptions};

#[test]
fn acceptance() {
    let results = run_all(&VerifyOptions::default());
    // bypass the harness capture so the lines show up in a plain `cargo test`
    let mut out = std::io::stdout().lock();
    writeln!(out).unwrap();
    for r in &results {
        writeln!(out, "{}", r.line()).unwrap();
    }
    drop(out);
    assert_eq!(results.len(), 8);
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failing checks: {:?}", failed);
}
