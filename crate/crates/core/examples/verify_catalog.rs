//! Runs the identity catalog and prints one line per identity.
//!
//! `cargo run --release --example verify_catalog -- [samples] [seed]`

use rrsk::verify::{verify_all, VerifyOptions};

fn main() -> rrsk::Result<()> {
    let mut args = std::env::args().skip(1);
    let samples = args.next().and_then(|s| s.parse().ok()).unwrap_or(4);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let start = std::time::Instant::now();
    let reports = verify_all(samples, seed, &VerifyOptions::default())?;
    for r in &reports {
        println!(
            "{:<5} {:<4} max {:>9.2e} mean {:>9.2e} tol {:.0e}{}",
            r.id,
            if r.passed { "ok" } else { "FAIL" },
            r.max_rel_residual,
            r.mean_rel_residual,
            r.tol,
            r.failures.first().and_then(|f| f.error.as_deref()).map(|e| format!("  [{e}]")).unwrap_or_default()
        );
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    println!("{passed}/{} passed in {:.1?}", reports.len(), start.elapsed());
    Ok(())
}
