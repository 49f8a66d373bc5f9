//! k-Riemann-Liouville and k-Weyl integrals and derivatives.
//!
//! `cargo run --example fractional_operators`

use rrsk::gamma::gamma_k_real;
use rrsk::kgamma::{k_gamma, k_gamma_inv};
use rrsk::matfun::mat_power;
use rrsk::operators::{rl_derivative, rl_integral, weyl_derivative, weyl_integral, Decay, Domain, MatrixFunction1D, QuadratureSpec};
use rrsk::ComplexMatrix;

fn main() -> rrsk::Result<()> {
    let spec = QuadratureSpec::default();
    let one = MatrixFunction1D::constant(ComplexMatrix::identity(1), Domain::RightHalfLine { a: 0.0 });
    let (x, mu, k) = (1.7, 0.6, 1.5);
    let v = rl_integral(&one, 0.0, x, mu, k, &spec)?[(0, 0)].re;
    println!("I^mu_k 1 = {v:.15}, x^(mu/k) / Gamma_k(mu + k) = {:.15}", x.powf(mu / k) / gamma_k_real(mu + k, k));

    // t^{E/k - I} is carried to Gamma_k(E) Gamma_k(E + mu I)^-1 x^{(E + mu I)/k - I}
    let e = ComplexMatrix::from_real_rows(&[&[1.2, 0.3], &[0.1, 0.9]])?;
    let w = e.scale_real(1.0 / k).shift_real(-1.0);
    let f = MatrixFunction1D::new(2, Domain::RightHalfLine { a: 0.0 }, |t| {
        if t == 0.0 { Ok(ComplexMatrix::zeros(2)) } else { mat_power(t, &w) }
    })
    .with_endpoint_exponents(-0.4, 0.0);
    let lhs = rl_integral(&f, 0.0, x, mu, k, &spec)?;
    let rhs = &(&k_gamma(&e, k)? * &k_gamma_inv(&e.shift_real(mu), k)?) * &mat_power(x, &e.shift_real(mu).scale_real(1.0 / k).shift_real(-1.0))?;
    println!("matrix power under I^mu_k: {:.2e}", lhs.rel_residual(&rhs));

    // d/dx I^{1-mu} applied to t^{E/k - I}
    let d = rl_derivative(&f, 0.0, x, 0.4, k, &spec, None)?;
    let em = e.shift_real(1.0 - 0.4);
    let exact = &(&k_gamma(&e, k)? * &k_gamma_inv(&em, k)?) * &mat_power(x, &em.scale_real(1.0 / k).shift_real(-2.0))?.scale_real(1.0 / k);
    let exact = &exact * &em.shift_real(-k);
    println!("RL derivative vs closed form: {:.2e}", d.rel_residual(&exact));

    let decaying = MatrixFunction1D::new(1, Domain::RightHalfLine { a: 0.0 }, |t| Ok(ComplexMatrix::from_real_diag(&[(-t).exp()])))
        .with_decay(Decay::Exponential { rate: 1.0 });
    let (x, alpha, k) = (0.8, 1.3, 2.0);
    let v = weyl_integral(&decaying, x, alpha, k, &spec)?[(0, 0)].re;
    println!("W^alpha_k exp(-t) = {v:.15}, exp(-x) k^(-alpha/k) = {:.15}", (-x).exp() * k.powf(-alpha / k));
    let order = 0.3;
    let d = weyl_derivative(&decaying, x, order, k, &spec, None)?[(0, 0)].re;
    println!("order {order} Weyl derivative of exp(-t) = {d:.12}, exp(-x) k^(-(1-{order})/k) = {:.12}", (-x).exp() * k.powf(-(1.0 - order) / k));
    Ok(())
}
