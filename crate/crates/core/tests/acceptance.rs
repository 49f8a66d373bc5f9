//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::time::{Duration, Instant};

use rrsk::gamma::rgamma_k;
use rrsk::kgamma::{k_beta, k_gamma};
use rrsk::operators::{beta_transform, rl_integral, weyl_integral, Decay, Domain, MatrixFunction1D, QuadratureSpec};
use rrsk::rrsk::{eval_series, term_log_norms, EvalOptions, ParamSet};
use rrsk::verify::{catalog, CommutingFamilySampler, IdentityReport};
use rrsk::{Complex64, ComplexMatrix, Error};

type Outcome = Result<String, String>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn collapse() -> Outcome {
    let p = ParamSet::scalar(1.0, 1.0, &[], &[], 1.0, 1.0).map_err(|e| e.to_string())?;
    let opts = EvalOptions::default();
    let r = eval_series(&p, c(1.0), &opts).map_err(|e| e.to_string())?;
    let err = (r.value[(0, 0)] - c(std::f64::consts::E)).norm();
    let mut best = Duration::MAX;
    for _ in 0..20 {
        let t = Instant::now();
        let _ = eval_series(&p, c(1.0), &opts);
        best = best.min(t.elapsed());
    }
    check(
        err <= 1e-12 && r.terms_used <= 25 && best < Duration::from_millis(1),
        format!("|R - e| = {err:.1e}, {} terms, {best:?}", r.terms_used),
    )
}

fn functional_equation() -> Outcome {
    let mut worst = 0.0f64;
    for seed in 0..100u64 {
        let mut s = CommutingFamilySampler::new(seed, 3).map_err(|e| e.to_string())?;
        let k = [0.5, 1.0, 1.5, 2.0][seed as usize % 4];
        let eig = s.spectrum(0.2 * k, 4.0 * k, 0.6 * k);
        let m = s.matrix(&eig);
        let lhs = k_gamma(&m.shift_real(k), k).map_err(|e| e.to_string())?;
        let rhs = &m * &k_gamma(&m, k).map_err(|e| e.to_string())?;
        worst = worst.max(lhs.rel_residual(&rhs));
    }
    check(worst <= 1e-10, format!("max residual {worst:.1e} over 100 families"))
}

fn k_beta_consistency() -> Outcome {
    let spec = QuadratureSpec::default();
    let mut worst = 0.0f64;
    for seed in 0..50u64 {
        let mut s = CommutingFamilySampler::new(1000 + seed, 1 + seed as usize % 3).map_err(|e| e.to_string())?;
        let k = [0.5, 1.0, 2.0][seed as usize % 3];
        let (ea, eb) = (s.spectrum(0.6 * k, 3.0 * k, 0.4 * k), s.spectrum(0.6 * k, 3.0 * k, 0.4 * k));
        let (a, b) = (s.matrix(&ea), s.matrix(&eb));
        let one = MatrixFunction1D::constant(ComplexMatrix::identity(a.dim()), Domain::Interval { a: 0.0, b: 1.0 });
        let quad = beta_transform(&one, &a, &b, k, &spec).map_err(|e| e.to_string())?;
        let closed = k_beta(&a, &b, k).map_err(|e| e.to_string())?;
        worst = worst.max(quad.rel_residual(&closed));
    }
    let mut corner = 0.0f64;
    for k in [0.25, 0.5, 1.0, 1.5, 3.0] {
        let kk = ComplexMatrix::scalar(2, c(k));
        let v = k_beta(&kk, &kk, k).map_err(|e| e.to_string())?;
        corner = corner.max(v.rel_residual(&ComplexMatrix::scalar(2, c(1.0 / k))));
    }
    check(worst <= 1e-9 && corner <= 1e-12, format!("max residual {worst:.1e}; B_k(k, k) vs 1/k {corner:.1e}"))
}

fn radius() -> Outcome {
    let p = ParamSet::scalar(2.0, 1.0, &[1.5, 0.5], &[2.5], 2.0, 1.0).map_err(|e| e.to_string())?;
    let inside = eval_series(&p, Complex64::from_polar(0.45, 0.7), &EvalOptions::default()).map_err(|e| e.to_string())?;
    let norms = term_log_norms(&p, c(0.55), 300).map_err(|e| e.to_string())?;
    let (argmin, min) = norms.iter().enumerate().fold((0, f64::INFINITY), |b, (i, &v)| if v < b.1 { (i, v) } else { b });
    let last = *norms.last().unwrap();
    let unguarded = EvalOptions { radius_guard: false, max_terms: 300, ..EvalOptions::default() };
    let outside = eval_series(&p, c(0.55), &unguarded);
    check(
        inside.residual_estimate <= 1e-14 && argmin < 299 && last > min && matches!(outside, Err(Error::TruncationFailure { .. })),
        format!(
            "|z|=0.45: {} terms, residual {:.1e}; |z|=0.55: min at l={argmin}, ln-norm grows by {:.1} by l=299, {}",
            inside.terms_used,
            inside.residual_estimate,
            last - min,
            match outside {
                Err(e) => e.to_string(),
                Ok(_) => "no truncation failure".into(),
            }
        ),
    )
}

fn group_bound(id: &str) -> f64 {
    let major: u32 = id.split('.').nth(1).unwrap().trim_end_matches(char::is_alphabetic).parse().unwrap();
    match (id.starts_with("3."), major) {
        (false, 18) => 1e-7,
        (false, 19..=29) | (true, 1) => 1e-6,
        (false, 30..) => 1e-6,
        _ => 1e-9,
    }
}

fn catalog_run(first: &str, elapsed: Duration) -> Outcome {
    let reports: Vec<IdentityReport> = serde_json::from_str(first).map_err(|e| e.to_string())?;
    let mut bad = Vec::new();
    for r in &reports {
        if !r.passed || r.max_rel_residual > group_bound(&r.id) || r.samples != 8 {
            bad.push(format!("{} ({:.1e})", r.id, r.max_rel_residual));
        }
    }
    let worst = reports.iter().map(|r| r.max_rel_residual).fold(0.0, f64::max);
    check(
        bad.is_empty() && reports.len() == catalog().len() && elapsed < Duration::from_secs(300),
        format!("{} identities in {elapsed:.1?}, worst residual {worst:.1e}, failing: {bad:?}", reports.len()),
    )
}

/// Scalar series summed directly from the definition.
fn scalar_series(k: f64, a: Complex64, p: &[Complex64], q: &[Complex64], b: Complex64, cc: Complex64, z: Complex64) -> Complex64 {
    let mut coef = c(1.0);
    let mut zl = c(1.0);
    let mut sum = c(0.0);
    for l in 0..400 {
        let t = coef * zl * rgamma_k(b * l as f64 + cc, k);
        sum += t;
        if l > 5 && t.norm() < 1e-18 * sum.norm() {
            break;
        }
        let kl = k * l as f64;
        coef *= (a + kl) / (l + 1) as f64;
        for pi in p {
            coef *= pi + kl;
        }
        for qj in q {
            coef /= qj + kl;
        }
        zl *= z;
    }
    sum
}

fn eigen_consistency() -> Outcome {
    let mut worst = 0.0f64;
    for seed in 0..20u64 {
        let mut s = CommutingFamilySampler::new(500 + seed, 2 + seed as usize % 2).map_err(|e| e.to_string())?;
        let k = [0.5, 1.0, 2.0, 1.5][seed as usize % 4];
        // #P <= #Q keeps every family entire in z
        let sq = 1 + seed as usize % 2;
        let r = (seed as usize / 2) % (sq + 1);
        let ea = s.spectrum(0.3 * k, 2.0 * k, 0.3);
        let ep: Vec<_> = (0..r).map(|_| s.spectrum(0.3 * k, 2.0 * k, 0.3)).collect();
        let eq: Vec<_> = (0..sq).map(|_| s.spectrum(1.2 * k, 3.0 * k, 0.3)).collect();
        let (eb, ec) = (s.spectrum(0.8 * k, 2.0 * k, 0.2), s.spectrum(0.5 * k, 2.5 * k, 0.3));
        let z = Complex64::from_polar(s.uniform(0.1, 1.5), s.uniform(-3.0, 3.0));
        let params = ParamSet::new(
            k,
            s.matrix(&ea),
            ep.iter().map(|e| s.matrix(e)).collect(),
            eq.iter().map(|e| s.matrix(e)).collect(),
            s.matrix(&eb),
            s.matrix(&ec),
        )
        .map_err(|e| e.to_string())?;
        let m = eval_series(&params, z, &EvalOptions::default()).map_err(|e| e.to_string())?.value;
        let diag: Vec<Complex64> = (0..s.dim())
            .map(|i| {
                let pi: Vec<_> = ep.iter().map(|e| e[i]).collect();
                let qj: Vec<_> = eq.iter().map(|e| e[i]).collect();
                scalar_series(k, ea[i], &pi, &qj, eb[i], ec[i], z)
            })
            .collect();
        worst = worst.max(m.rel_residual(&s.matrix(&diag)));
    }
    check(worst <= 1e-10, format!("max residual {worst:.1e} over 20 families"))
}

/// `(x, mu, k, x^{mu/k} / Gamma_k(mu + k))`
const RL_ONE: [(f64, f64, f64, f64); 10] = [
    (0.5, 0.3, 1.0, 0.90504614768952917),
    (1.0, 0.5, 1.0, 1.1283791670955126),
    (2.0, 1.0, 1.0, 2.0),
    (1.5, 0.7, 0.5, 3.7479082400024102),
    (0.8, 1.2, 2.0, 0.64585344037227021),
    (3.0, 2.5, 1.5, 2.1100982494575846),
    (1.2, 0.4, 0.75, 1.4473296206459446),
    (2.5, 1.8, 2.5, 1.0957936474395996),
    (0.3, 0.9, 0.6, 0.26596152026762175),
    (4.0, 3.0, 2.0, 2.1276921621409743),
];

/// `(x, alpha, k, e^{-x} k^{-alpha/k})`
const WEYL_EXP: [(f64, f64, f64, f64); 10] = [
    (0.0, 0.5, 1.0, 1.0),
    (0.5, 1.0, 1.0, 0.60653065971263342),
    (1.0, 1.5, 1.0, 0.36787944117144232),
    (0.3, 0.7, 0.5, 1.9550310052684528),
    (2.0, 1.2, 2.0, 0.089287988418700357),
    (0.8, 2.5, 1.5, 0.22860145102965268),
    (1.5, 0.4, 0.75, 0.26013109555694668),
    (0.1, 1.8, 2.5, 0.46779302884145414),
    (3.0, 0.9, 0.6, 0.10712471480290397),
    (1.0, 3.0, 2.0, 0.13006502375572222),
];

fn operator_spot_values() -> Outcome {
    let spec = QuadratureSpec::default();
    let one = MatrixFunction1D::constant(ComplexMatrix::identity(1), Domain::RightHalfLine { a: 0.0 });
    let decaying = MatrixFunction1D::new(1, Domain::RightHalfLine { a: 0.0 }, |t| Ok(ComplexMatrix::from_real_diag(&[(-t).exp()])))
        .with_decay(Decay::Exponential { rate: 1.0 });
    let (mut rl, mut weyl) = (0.0f64, 0.0f64);
    for (x, mu, k, want) in RL_ONE {
        let v = rl_integral(&one, 0.0, x, mu, k, &spec).map_err(|e| e.to_string())?;
        rl = rl.max((v[(0, 0)] - c(want)).norm() / want);
    }
    for (x, alpha, k, want) in WEYL_EXP {
        let v = weyl_integral(&decaying, x, alpha, k, &spec).map_err(|e| e.to_string())?;
        weyl = weyl.max((v[(0, 0)] - c(want)).norm() / want);
    }
    check(rl <= 1e-9 && weyl <= 1e-9, format!("RL max rel error {rl:.1e}, Weyl max rel error {weyl:.1e}"))
}

fn main() {
    let mut failed = 0;
    let mut report = |n: u32, name: &str, r: Outcome| {
        let (tag, detail) = match r {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} criterion {n} ({name}): {detail}");
    };
    let argv = ["rrsk", "verify", "--all", "--samples", "8", "--seed", "0"];
    let start = Instant::now();
    let first = rrsk::cli::run(argv);
    let elapsed = start.elapsed();

    report(1, "collapse to e", collapse());
    report(2, "k-Gamma functional equation", functional_equation());
    report(3, "k-Beta consistency", k_beta_consistency());
    report(4, "radius of convergence", radius());
    report(
        5,
        "identity catalog",
        if first.code == 0 { catalog_run(&first.stdout, elapsed) } else { Err(format!("exit {}: {}", first.code, first.stderr)) },
    );
    report(6, "eigen-consistency", eigen_consistency());
    report(7, "fractional operator spot values", operator_spot_values());
    let second = rrsk::cli::run(argv);
    report(
        8,
        "determinism",
        check(first == second, format!("two catalog runs, {} bytes each, identical: {}", first.stdout.len(), first == second)),
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
