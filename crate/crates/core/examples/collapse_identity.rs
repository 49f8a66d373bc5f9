//! With `A = B = C = I`, `k = 1` and no `P`, `Q`, the series is the exponential.
//!
//! `cargo run --example collapse_identity`

use rrsk::matfun::mat_exp;
use rrsk::rrsk::{eval_series, eval_series_matrix, EvalOptions, ParamSet};
use rrsk::{Complex64, ComplexMatrix};

fn main() -> rrsk::Result<()> {
    let opts = EvalOptions::default();
    let scalar = ParamSet::scalar(1.0, 1.0, &[], &[], 1.0, 1.0)?;
    for z in [Complex64::new(1.0, 0.0), Complex64::new(-2.0, 0.5), Complex64::new(0.0, std::f64::consts::PI)] {
        let r = eval_series(&scalar, z, &opts)?;
        let v = r.value[(0, 0)];
        println!("z = {z:<10}  R = {v:.15}  exp(z) = {:.15}  terms {}", z.exp(), r.terms_used);
    }

    // matrix argument: R(X) = exp(X)
    let x = ComplexMatrix::from_real_rows(&[&[0.5, 1.0], &[-0.3, 0.2]])?;
    let id = ParamSet::new(1.0, ComplexMatrix::identity(2), vec![], vec![], ComplexMatrix::identity(2), ComplexMatrix::identity(2))?;
    let via_series = eval_series_matrix(&id, &x, &opts)?.value;
    let via_eigen = mat_exp(&x)?;
    println!("R(X) vs exp(X): relative difference {:.2e}", via_series.rel_residual(&via_eigen));
    Ok(())
}
