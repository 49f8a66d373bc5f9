//! k-Gamma, k-Beta, k-Pochhammer and the k-binomial series on a matrix.
//!
//! `cargo run --example k_gamma_calculus`

use rrsk::kgamma::{k_beta, k_binomial_closed, k_binomial_series, k_gamma, k_gamma_inv, k_pochhammer};
use rrsk::{Complex64, ComplexMatrix};

fn main() -> rrsk::Result<()> {
    let k = 1.5;
    let a = ComplexMatrix::from_rows(vec![
        vec![Complex64::new(2.0, 0.2), Complex64::new(0.4, 0.0)],
        vec![Complex64::new(-0.1, 0.0), Complex64::new(1.2, -0.3)],
    ])?;
    let b = a.scale_real(0.5).shift_real(1.0); // commutes with a

    let g = k_gamma(&a, k)?;
    println!("Gamma_k(A) =\n{g:?}");
    let step = k_gamma(&a.shift_real(k), k)?;
    println!("Gamma_k(A + kI) vs A Gamma_k(A): {:.2e}", step.rel_residual(&(&a * &g)));
    println!("Gamma_k(A) Gamma_k(A)^-1 - I: {:.2e}", (&g * &k_gamma_inv(&a, k)?).rel_residual(&ComplexMatrix::identity(2)));

    let n = 4;
    let ratio = &k_gamma(&a.shift_real(n as f64 * k), k)? * &k_gamma_inv(&a, k)?;
    println!("(A)_{{{n},k}} vs Gamma ratio: {:.2e}", k_pochhammer(&a, n, k).rel_residual(&ratio));

    let beta = k_beta(&a, &b, k)?;
    println!("B_k(A, B) =\n{beta:?}");

    let zeta = Complex64::new(0.3, 0.1);
    let series = k_binomial_series(&a, k, zeta, 200)?;
    let closed = k_binomial_closed(&a, k, zeta)?;
    println!("k-binomial series vs closed form: {:.2e}", series.rel_residual(&closed));
    Ok(())
}
