//! Randomized numerical verification of the identity catalog.
//!
//! Each sample draws a fresh commuting family from its own seed, so any failing
//! sample can be replayed alone from the seed recorded in the report.

mod catalog;
mod oracle;
mod sampler;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::operators::QuadratureSpec;
use crate::rrsk::EvalOptions;
use catalog::{Case, Ctx, CATALOG};
pub use sampler::CommutingFamilySampler;

/// Attempts per sample when a case cannot place its spectra.
const DRAW_ATTEMPTS: u64 = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub eval: EvalOptions,
    pub quad: QuadratureSpec,
    /// Families have dimension drawn from `1..=max_dim`.
    pub max_dim: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { eval: EvalOptions::default(), quad: QuadratureSpec::default(), max_dim: 3 }
    }
}

/// Catalog entry metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityInfo {
    pub id: &'static str,
    pub tol: f64,
    pub paths: &'static str,
    pub note: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleFailure {
    pub sample: usize,
    pub seed: u64,
    #[serde(deserialize_with = "null_as_inf")]
    pub residual: f64,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub paths: String,
    pub samples: usize,
    /// Infinite (serialized as `null`) when any sample errored.
    #[serde(deserialize_with = "null_as_inf")]
    pub max_rel_residual: f64,
    #[serde(deserialize_with = "null_as_inf")]
    pub mean_rel_residual: f64,
    pub tol: f64,
    pub failures: Vec<SampleFailure>,
    pub passed: bool,
    pub note: Option<String>,
}

fn null_as_inf<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
}

pub fn catalog() -> Vec<IdentityInfo> {
    CATALOG.iter().map(|c| IdentityInfo { id: c.id, tol: c.tol, paths: c.paths, note: c.note }).collect()
}

pub fn catalog_ids() -> Vec<&'static str> {
    CATALOG.iter().map(|c| c.id).collect()
}

fn find(id: &str) -> Result<&'static Case> {
    CATALOG.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// Seed of one sample: FNV-1a of the id mixed with the run seed and sample index.
pub fn sample_seed(id: &str, seed: u64, sample: usize) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    let mut x = h ^ seed.rotate_left(17) ^ (sample as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    // splitmix64 finalizer
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn run_sample(case: &Case, seed: u64, opts: &VerifyOptions) -> Result<f64> {
    let cx = Ctx { eval: opts.eval, quad: opts.quad };
    let mut last = None;
    for attempt in 0..DRAW_ATTEMPTS {
        let s = seed.wrapping_add(attempt.wrapping_mul(0x2545_f491_4f6c_dd1d));
        let mut sampler = CommutingFamilySampler::with_random_dim(s, opts.max_dim)?;
        match (case.run)(&mut sampler, &cx) {
            Err(e @ Error::SamplerExhausted(_)) => last = Some(e),
            other => return other,
        }
    }
    Err(last.unwrap_or_else(|| Error::SamplerExhausted(case.id.to_string())))
}

/// Checks one identity on `samples` random families.
pub fn verify(id: &str, samples: usize, seed: u64, opts: &VerifyOptions) -> Result<IdentityReport> {
    let case = find(id)?;
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    opts.eval.validate()?;
    opts.quad.validate()?;
    let outcomes: Vec<(u64, Result<f64>)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let s = sample_seed(id, seed, i);
            (s, run_sample(case, s, opts))
        })
        .collect();
    let mut failures = Vec::new();
    let (mut max, mut sum) = (0.0f64, 0.0f64);
    for (sample, (seed, outcome)) in outcomes.into_iter().enumerate() {
        let (residual, error) = match outcome {
            Ok(r) if r.is_finite() => (r, None),
            Ok(r) => (f64::INFINITY, Some(format!("non-finite residual {r}"))),
            Err(e) => (f64::INFINITY, Some(e.to_string())),
        };
        max = max.max(residual);
        sum += residual;
        if error.is_some() || residual > case.tol {
            failures.push(SampleFailure { sample, seed, residual, error });
        }
    }
    log::debug!("{id}: max residual {max:e} over {samples} samples");
    Ok(IdentityReport {
        id: case.id.to_string(),
        paths: case.paths.to_string(),
        samples,
        max_rel_residual: max,
        mean_rel_residual: sum / samples as f64,
        tol: case.tol,
        passed: failures.is_empty(),
        failures,
        note: case.note.map(str::to_string),
    })
}

/// [`verify`] over the whole catalog, in catalog order.
pub fn verify_all(samples: usize, seed: u64, opts: &VerifyOptions) -> Result<Vec<IdentityReport>> {
    CATALOG.par_iter().map(|c| verify(c.id, samples, seed, opts)).collect()
}

/// [`verify`] over the catalog entries named in `ids`, in catalog order.
/// Names outside the catalog are skipped.
pub fn verify_selected(ids: &[&str], samples: usize, seed: u64, opts: &VerifyOptions) -> Result<Vec<IdentityReport>> {
    CATALOG.par_iter().filter(|c| ids.contains(&c.id)).map(|c| verify(c.id, samples, seed, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_complete() {
        let ids = catalog_ids();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        assert_eq!(ids.len(), 48);
    }

    #[test]
    fn unknown_id_is_rejected() {
        assert!(matches!(verify("9.9", 1, 0, &VerifyOptions::default()), Err(Error::UnknownIdentity(_))));
    }

    #[test]
    fn selection_skips_unknown_ids() {
        let opts = VerifyOptions::default();
        assert!(verify_selected(&["9.9"], 1, 0, &opts).unwrap().is_empty());
        let r = verify_selected(&["2.4", "2.3a", "nope"], 1, 0, &opts).unwrap();
        assert_eq!(r.iter().map(|r| r.id.as_str()).collect::<Vec<_>>(), ["2.3a", "2.4"]);
        assert!(r.iter().all(|r| r.samples == 1));
    }

    #[test]
    fn seeds_differ_per_sample_and_id() {
        assert_ne!(sample_seed("2.6", 0, 0), sample_seed("2.6", 0, 1));
        assert_ne!(sample_seed("2.6", 0, 0), sample_seed("2.7", 0, 0));
        assert_eq!(sample_seed("2.6", 5, 3), sample_seed("2.6", 5, 3));
    }
}
