//! Laplace, k-Beta and fractional Fourier transforms of matrix functions.
//!
//! `cargo run --example transforms`

use rrsk::kgamma::k_beta;
use rrsk::matfun::mat_power;
use rrsk::operators::{beta_transform, frac_fourier, laplace_transform, Domain, MatrixFunction1D, QuadratureSpec};
use rrsk::{Complex64, ComplexMatrix};

fn main() -> rrsk::Result<()> {
    let spec = QuadratureSpec::default();
    let m = ComplexMatrix::from_real_rows(&[&[-0.5, 0.3], &[0.2, 0.1]])?;

    // L{exp(tM)}(s) = (sI - M)^-1
    let f = MatrixFunction1D::new(2, Domain::RightHalfLine { a: 0.0 }, |t| mat_power(t.exp(), &m)).with_growth(0.5);
    let s = Complex64::new(1.5, 0.7);
    let lap = laplace_transform(&f, s, &spec)?;
    let exact = m.scale_real(-1.0).shift(s).inverse()?;
    println!("Laplace transform vs resolvent: {:.2e}", lap.rel_residual(&exact));

    // k-Beta transform of the identity is the k-Beta matrix
    let (a, b, k) = (m.shift_real(1.5), m.scale_real(2.0).shift_real(2.0), 0.75);
    let one = MatrixFunction1D::constant(ComplexMatrix::identity(2), Domain::Interval { a: 0.0, b: 1.0 });
    let bt = beta_transform(&one, &a, &b, k, &spec)?;
    println!("k-Beta transform of I vs B_k(A, B): {:.2e}", bt.rel_residual(&k_beta(&a, &b, k)?));

    // int_{-inf}^0 exp(i w^{1/alpha} z) exp(z) dz = 1 / (1 + i w^{1/alpha})
    let (w, alpha) = (2.0, 0.8);
    let e = MatrixFunction1D::new(1, Domain::LeftHalfLine { b: 0.0 }, |t| Ok(ComplexMatrix::from_real_diag(&[t.exp()])))
        .with_analytic(|z| Ok(ComplexMatrix::from_diag(&[z.exp()])));
    let ff = frac_fourier(&e, w, alpha, &spec)?[(0, 0)];
    let omega = w.powf(1.0 / alpha);
    println!("fractional Fourier {ff:.14}, exact {:.14}", 1.0 / Complex64::new(1.0, omega));
    Ok(())
}
