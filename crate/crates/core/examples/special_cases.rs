//! Named reductions of the series checked against elementary functions.
//!
//! `cargo run --example special_cases`

use rrsk::rrsk::{eval_series, mittag_leffler, special_case, EvalOptions, SpecialCase};
use rrsk::{Complex64, ComplexMatrix};

fn main() -> rrsk::Result<()> {
    let opts = EvalOptions::default();
    let s = |x: f64| ComplexMatrix::from_real_diag(&[x]);

    // E^1_{2,1}(z^2) = cosh z
    let ml = mittag_leffler(&s(1.0), &s(2.0), &s(1.0), 1.0)?;
    let z = Complex64::new(0.7, 0.4);
    let v = eval_series(&ml, z * z, &opts)?.value[(0, 0)];
    println!("Mittag-Leffler E_(2,1)(z^2) = {v:.15}, cosh z = {:.15}", z.cosh());

    // 2F1(1, 1; 2; z) = -ln(1 - z) / z
    let f21 = special_case(&SpecialCase::HypergeometricF { p: vec![s(1.0), s(1.0)], q: vec![s(2.0)] })?;
    let z = Complex64::new(0.5, 0.2);
    let v = eval_series(&f21, z, &opts)?.value[(0, 0)];
    println!("2F1(1,1;2;z) = {v:.15}, -ln(1-z)/z = {:.15}", -(1.0 - z).ln() / z);

    // M-series with one P and one Q, B = C = I: 1F1(a; c; z)
    let m = special_case(&SpecialCase::MSeries { p: vec![s(0.5)], q: vec![s(1.5)], b: s(1.0), c: s(1.0) })?;
    let v = eval_series(&m, Complex64::new(-1.0, 0.0), &opts)?;
    println!("M-series 1F1(1/2; 3/2; -1) = {:.15} (sqrt(pi) erf(1) / 2 = 0.746824132812427)", v.value[(0, 0)].re);

    // the classical function needs at least one numerator parameter
    let err = special_case(&SpecialCase::RRSClassic { p: vec![], q: vec![], b: s(1.0), c: s(1.0) }).unwrap_err();
    println!("RRSClassic with r = 0: {err}");
    Ok(())
}
