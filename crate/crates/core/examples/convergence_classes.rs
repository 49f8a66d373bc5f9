//! How the convergence classifier sorts parameter sets and points.
//!
//! `cargo run --example convergence_classes`

use rrsk::rrsk::{classify_convergence, eval_series, EvalOptions, ParamSet};
use rrsk::Complex64;

fn main() -> rrsk::Result<()> {
    let z = |re: f64| Complex64::new(re, 0.0);
    let cases = [
        ("r = s: entire", ParamSet::scalar(1.0, 1.0, &[0.5], &[1.5], 1.0, 1.0)?, z(5.0)),
        ("r = s + 1, k = 2: radius 1/2", ParamSet::scalar(2.0, 1.0, &[1.5, 0.5], &[2.5], 2.0, 1.0)?, z(0.3)),
        ("same set outside the disc", ParamSet::scalar(2.0, 1.0, &[1.5, 0.5], &[2.5], 2.0, 1.0)?, z(0.7)),
        ("on the circle, Q heavy", ParamSet::scalar(1.0, 1.0, &[1.0, 1.0], &[9.0], 1.0, 1.0)?, z(1.0)),
        ("on the circle, Q light", ParamSet::scalar(1.0, 1.0, &[1.0, 1.0], &[1.5], 1.0, 1.0)?, z(1.0)),
        ("r > s + 1: diverges", ParamSet::scalar(1.0, 1.0, &[1.0, 1.0, 1.0], &[], 1.0, 1.0)?, z(0.1)),
    ];
    for (name, p, z) in &cases {
        let class = classify_convergence(p, *z)?;
        let value = match eval_series(p, *z, &EvalOptions::default()) {
            Ok(r) => format!("{:.12} ({} terms)", r.value[(0, 0)], r.terms_used),
            Err(e) => format!("not evaluated: {e}"),
        };
        println!("{name:<30} z = {z}: {:?}, radius {:?}\n    {value}", class.tag, class.radius);
    }
    Ok(())
}
