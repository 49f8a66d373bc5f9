use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ParamSet;
use crate::error::Result;
use crate::matfun::spectral_bounds;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConvergenceTag {
    DivergesForNonzeroZ,
    EntireInZ,
    InsideRadius,
    OnCircleAbsolute,
    OnCircleDiverges,
    OnCircleConditional,
}

/// Convergence outcome at a point; `radius` is `Some(1/k)` exactly when `r = s + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceClass {
    pub tag: ConvergenceTag,
    pub radius: Option<f64>,
}

/// Points within this relative distance of `|z| = 1/k` count as on the circle.
pub const CIRCLE_RTOL: f64 = 1e-12;

/// Classifies `z` by comparing `r` with `s + 1`, and on the circle `|z| = 1/k`
/// by comparing `sum_j m(Q_j)` with `sum_i M(P_i) + M(A)`.
pub fn classify_convergence(p: &ParamSet, z: Complex64) -> Result<ConvergenceClass> {
    let (r, s) = (p.r(), p.s());
    if r > s + 1 {
        return Ok(ConvergenceClass { tag: ConvergenceTag::DivergesForNonzeroZ, radius: None });
    }
    if r <= s {
        return Ok(ConvergenceClass { tag: ConvergenceTag::EntireInZ, radius: None });
    }
    let radius = 1.0 / p.k;
    let modulus = z.norm();
    let tag = if (modulus - radius).abs() <= CIRCLE_RTOL * radius {
        let lower: f64 = p.q.iter().map(|q| spectral_bounds(q).map(|b| b.1)).sum::<Result<f64>>()?;
        let upper: f64 = std::iter::once(&p.a)
            .chain(&p.p)
            .map(|m| spectral_bounds(m).map(|b| b.0))
            .sum::<Result<f64>>()?;
        if lower > upper {
            ConvergenceTag::OnCircleAbsolute
        } else if lower <= upper - p.k {
            ConvergenceTag::OnCircleDiverges
        } else {
            ConvergenceTag::OnCircleConditional
        }
    } else if modulus < radius {
        ConvergenceTag::InsideRadius
    } else {
        ConvergenceTag::DivergesForNonzeroZ
    };
    Ok(ConvergenceClass { tag, radius: Some(radius) })
}
