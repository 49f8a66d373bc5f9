//! Scalar complex Gamma via Lanczos (g = 7, n = 9) with reflection.
//!
//! The reciprocal Gamma is entire; [`rgamma`] returns an exact zero at the
//! poles of Gamma because `sin(pi z)` is reduced exactly at integers.

use std::f64::consts::PI;

use num_complex::Complex64;

const G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// `sin(pi x)` with exact zeros at the integers.
pub fn sinpi(x: f64) -> f64 {
    if x == x.trunc() {
        return 0.0_f64.copysign(x);
    }
    let r = x.rem_euclid(2.0);
    if r < 0.25 {
        (PI * r).sin()
    } else if r < 0.75 {
        (PI * (r - 0.5)).cos()
    } else if r < 1.25 {
        -(PI * (r - 1.0)).sin()
    } else if r < 1.75 {
        -(PI * (r - 1.5)).cos()
    } else {
        (PI * (r - 2.0)).sin()
    }
}

/// `cos(pi x)` with exact zeros at the half-integers.
pub fn cospi(x: f64) -> f64 {
    let r = x.abs().rem_euclid(2.0);
    if r == 0.5 || r == 1.5 {
        return 0.0;
    }
    if r < 0.25 {
        (PI * r).cos()
    } else if r < 0.75 {
        -(PI * (r - 0.5)).sin()
    } else if r < 1.25 {
        -(PI * (r - 1.0)).cos()
    } else if r < 1.75 {
        (PI * (r - 1.5)).sin()
    } else {
        (PI * (r - 2.0)).cos()
    }
}

/// Complex `sin(pi z)`.
pub fn sinpi_c(z: Complex64) -> Complex64 {
    let (sh, ch) = ((PI * z.im).sinh(), (PI * z.im).cosh());
    Complex64::new(sinpi(z.re) * ch, cospi(z.re) * sh)
}

/// True when `z` is exactly a pole of Gamma.
pub fn is_gamma_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.trunc()
}

fn lanczos_ln(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        x += p / (z + i as f64);
    }
    let t = z + G + 0.5;
    HALF_LN_2PI + (z + 0.5) * t.ln() - t + x.ln()
}

/// `ln Gamma(z)` (some branch; only its exponential is meaningful). `None` at poles.
pub fn ln_gamma(z: Complex64) -> Option<Complex64> {
    ln_rgamma(z).map(|v| -v)
}

/// `ln(1/Gamma(z))`; `None` where `1/Gamma` vanishes.
pub fn ln_rgamma(z: Complex64) -> Option<Complex64> {
    if z.re >= 0.5 {
        Some(-lanczos_ln(z))
    } else {
        let s = sinpi_c(z);
        if s.re == 0.0 && s.im == 0.0 {
            return None;
        }
        Some(s.ln() + lanczos_ln(1.0 - z) - PI.ln())
    }
}

/// Complex Gamma; non-finite at the poles.
pub fn gamma(z: Complex64) -> Complex64 {
    match ln_gamma(z) {
        Some(l) => l.exp(),
        None => Complex64::new(f64::INFINITY, 0.0),
    }
}

/// Entire reciprocal Gamma.
pub fn rgamma(z: Complex64) -> Complex64 {
    match ln_rgamma(z) {
        Some(l) => l.exp(),
        None => Complex64::new(0.0, 0.0),
    }
}

/// `ln Gamma_k(z) = (z/k - 1) ln k + ln Gamma(z/k)`.
pub fn ln_gamma_k(z: Complex64, k: f64) -> Option<Complex64> {
    ln_rgamma_k(z, k).map(|v| -v)
}

pub fn ln_rgamma_k(z: Complex64, k: f64) -> Option<Complex64> {
    let w = z / k;
    ln_rgamma(w).map(|l| l - (w - 1.0) * k.ln())
}

/// Scalar k-Gamma; non-finite at poles.
pub fn gamma_k(z: Complex64, k: f64) -> Complex64 {
    match ln_gamma_k(z, k) {
        Some(l) => l.exp(),
        None => Complex64::new(f64::INFINITY, 0.0),
    }
}

/// Scalar reciprocal k-Gamma (entire in `z`).
pub fn rgamma_k(z: Complex64, k: f64) -> Complex64 {
    match ln_rgamma_k(z, k) {
        Some(l) => l.exp(),
        None => Complex64::new(0.0, 0.0),
    }
}

pub fn gamma_real(x: f64) -> f64 {
    gamma(Complex64::new(x, 0.0)).re
}

pub fn gamma_k_real(x: f64, k: f64) -> f64 {
    gamma_k(Complex64::new(x, 0.0), k).re
}
