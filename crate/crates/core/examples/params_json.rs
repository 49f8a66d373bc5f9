//! Parameter files: build a set, write it as JSON, read it back and evaluate.
//!
//! `cargo run --example params_json`

use rrsk::rrsk::{eval_series, EvalOptions, ParamSet};
use rrsk::{Complex64, ComplexMatrix};

fn main() -> rrsk::Result<()> {
    let a = ComplexMatrix::from_real_rows(&[&[1.0, 0.2], &[0.0, 1.5]])?;
    let q = a.shift_real(1.0);
    let p = ParamSet::new(1.0, a.clone(), vec![], vec![q], ComplexMatrix::identity(2), a.shift_real(0.5))?;
    let text = serde_json::to_string(&p).expect("parameter sets serialize");
    println!("{text}");

    let back: ParamSet = serde_json::from_str(&text).expect("round trip");
    assert_eq!(back, p);
    let r = eval_series(&back, Complex64::new(0.4, -0.2), &EvalOptions::default())?;
    println!("{}", serde_json::to_string_pretty(&r).expect("results serialize"));

    // validation runs on load: Q + lkI must stay invertible
    let bad = r#"{"k": 1, "A": [[[1, 0]]], "Q": [[[[-2, 0]]]], "B": [[[1, 0]]], "C": [[[1, 0]]]}"#;
    println!("rejected: {}", serde_json::from_str::<ParamSet>(bad).unwrap_err());
    Ok(())
}
