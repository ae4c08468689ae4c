//! Random modules, the built-in corpus, property suites and conjecture scans.

mod corpus;
mod properties;
mod scan;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::homology::DEFAULT_CUTOFF;
use crate::modrep::{random_presentation_in, Module, Presentation};

pub use corpus::{corpus, corpus_algebra, Classification, CorpusAlgebra, CORPUS_NAMES};
pub use properties::{evaluate, property_arity, two_step_resolution, PROPERTY_IDS, ROUNDTRIP_ID};
pub use scan::{scan, ScanReport, ScanVerdict, CONJECTURE_IDS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub samples: usize,
    pub cutoff: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { samples: 50, cutoff: DEFAULT_CUTOFF, seed: 0 }
    }
}

/// Result of one sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    NotApplicable,
    Pass,
    Fail(String),
    Unknown(String),
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }
}

/// Enough to rebuild the failing sample without the sampler.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub index: usize,
    pub seed: u64,
    pub presentations: Vec<Presentation>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub property_id: String,
    pub algebra: String,
    pub config: CheckConfig,
    /// Samples drawn before the hypothesis filter.
    pub drawn: usize,
    pub not_applicable: usize,
    /// Samples passing the hypothesis filter or with an undecided hypothesis.
    pub samples: usize,
    pub passed: usize,
    pub failed: Vec<FailureRecord>,
    pub unknown: usize,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.failed.is_empty()
    }
}

/// Per-sample generator: stream `index` of ChaCha8 seeded with `seed`.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Largest total dimension of the projectives drawn for one presentation.
pub const SAMPLE_BUDGET: usize = 6;

fn draw_mults(a: &Algebra, rng: &mut ChaCha8Rng, min: usize) -> Vec<usize> {
    let sizes: Vec<usize> = (0..a.num_idempotents()).map(|i| a.projective_basis(i).dim()).collect();
    for _ in 0..64 {
        let m: Vec<usize> = sizes.iter().map(|_| rng.gen_range(0..=2)).collect();
        let total: usize = m.iter().zip(&sizes).map(|(k, s)| k * s).sum();
        if total >= min && total <= SAMPLE_BUDGET {
            return m;
        }
    }
    let mut m = vec![0; sizes.len()];
    if min > 0 {
        m[0] = 1;
    }
    m
}

/// A random presentation with a nonzero target of bounded size. Three in
/// four have radical entries; uniform entries mostly give projectives.
pub fn draw_presentation(a: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> Presentation {
    let t = draw_mults(a, rng, 1);
    let s = draw_mults(a, rng, 0);
    let radical = rng.gen_ratio(3, 4);
    random_presentation_in(a, &t, &s, radical, rng)
}

pub fn draw_sample(a: &Arc<Algebra>, seed: u64, index: usize, arity: usize) -> Vec<Presentation> {
    let mut rng = sample_rng(seed, index);
    (0..arity).map(|_| draw_presentation(a, &mut rng)).collect()
}

fn modules(a: &Arc<Algebra>, pres: &[Presentation]) -> Result<Vec<Module>> {
    pres.iter().map(|p| p.module(a)).collect()
}

/// Evaluates a property on explicit presentations.
pub fn check_presentations(property_id: &str, a: &Arc<Algebra>, pres: &[Presentation], cutoff: usize) -> Result<Outcome> {
    let arity = property_arity(property_id)?;
    if pres.len() != arity {
        return Err(Error::BadModule(format!("{property_id} takes {arity} modules, got {}", pres.len())));
    }
    Ok(evaluate(property_id, a, &modules(a, pres)?, cutoff))
}

/// Re-runs a failure record in isolation.
pub fn replay(property_id: &str, a: &Arc<Algebra>, record: &FailureRecord, cutoff: usize) -> Result<Outcome> {
    check_presentations(property_id, a, &record.presentations, cutoff)
}

/// Samples `config.samples` modules, filters by the property's hypothesis and
/// verifies its conclusion.
pub fn check(property_id: &str, algebra_name: &str, a: &Arc<Algebra>, config: &CheckConfig) -> Result<CheckReport> {
    let arity = property_arity(property_id)?;
    let outcomes: Vec<(usize, Vec<Presentation>, Outcome)> = (0..config.samples)
        .into_par_iter()
        .map(|i| {
            let pres = draw_sample(a, config.seed, i, arity);
            let out = match modules(a, &pres) {
                Ok(ms) => evaluate(property_id, a, &ms, config.cutoff),
                Err(e) => Outcome::Fail(format!("sampler produced an invalid module: {e}")),
            };
            (i, pres, out)
        })
        .collect();
    let mut report = CheckReport {
        property_id: property_id.to_string(),
        algebra: algebra_name.to_string(),
        config: *config,
        drawn: config.samples,
        not_applicable: 0,
        samples: 0,
        passed: 0,
        failed: Vec::new(),
        unknown: 0,
    };
    for (index, presentations, out) in outcomes {
        match out {
            Outcome::NotApplicable => report.not_applicable += 1,
            Outcome::Pass => report.passed += 1,
            Outcome::Unknown(_) => report.unknown += 1,
            Outcome::Fail(detail) => {
                report.failed.push(FailureRecord { index, seed: config.seed, presentations, detail })
            }
        }
    }
    report.samples = report.passed + report.failed.len() + report.unknown;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic() {
        let c = corpus_algebra("A2PATH").unwrap();
        let a = draw_sample(&c.algebra, 7, 3, 2);
        assert_eq!(a, draw_sample(&c.algebra, 7, 3, 2));
        assert_ne!(a, draw_sample(&c.algebra, 7, 4, 2));
        for p in &a {
            let m = p.module(&c.algebra).unwrap();
            assert!(m.is_valid());
        }
    }

    #[test]
    fn unknown_property_is_an_error() {
        let c = corpus_algebra("DUAL2").unwrap();
        assert!(matches!(
            check("TH-9.9", "DUAL2", &c.algebra, &CheckConfig::default()),
            Err(Error::UnknownPropertyId(_))
        ));
    }

    #[test]
    fn counts_add_up() {
        let c = corpus_algebra("A2PATH").unwrap();
        let cfg = CheckConfig { samples: 12, cutoff: 40, seed: 7 };
        let r = check("TH-5.6-3", "A2PATH", &c.algebra, &cfg).unwrap();
        assert_eq!(r.passed + r.failed.len() + r.unknown, r.samples);
        assert_eq!(r.samples + r.not_applicable, r.drawn);
        assert!(r.ok());
        assert_eq!(r, check("TH-5.6-3", "A2PATH", &c.algebra, &cfg).unwrap());
    }
}
