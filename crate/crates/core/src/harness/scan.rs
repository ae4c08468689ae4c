use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::homology::{inj_dim, perp_dim, perp_test, proj_dim, torsionfree_dim_upper, DimensionReport, Resolution};
use crate::modrep::{indecomposable_projective, injective_cogenerator, Module, Presentation};
use crate::verdict::Verdict;

use super::properties::{evaluate, same_dim};
use super::{draw_sample, modules, CheckConfig, Outcome};

pub const CONJECTURE_IDS: [&str; 5] = ["CONJ-5.18-1", "CONJ-5.18-2", "Q-5.16", "Q-5.17", "SNC-5.19"];

/// Degrees of `Ext^i(D(A), A)` recorded alongside the self-injectivity scans.
pub const EXT_PROFILE_DEGREES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum ScanVerdict {
    /// Every decided case agrees.
    Consistent { checked: usize, unknown: usize },
    /// A certified disagreement. Only a candidate: cutoff-limited data.
    CandidateCounterexample { witness: serde_json::Value },
    /// Nothing could be decided.
    Undecided { reasons: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub conjecture_id: String,
    pub algebra: String,
    pub config: CheckConfig,
    pub verdict: ScanVerdict,
    /// `dim Ext^i(D(A), A)` for `i = 1..=10`, on the left-module side;
    /// `null` past the term cap.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ext_profile: Option<Vec<Option<usize>>>,
}

/// Right-hand dual `D(A_A)` viewed as a left module, with the left regular
/// module it is tested against.
fn left_dual_regular(a: &Arc<Algebra>) -> (Module, Module) {
    let d = Module::regular(a).k_dual();
    let reg = Module::regular(d.algebra());
    (d, reg)
}

/// `None` entries lie past the resolution term cap.
fn ext_profile(a: &Arc<Algebra>) -> Vec<Option<usize>> {
    let (d, reg) = left_dual_regular(a);
    let mut res = Resolution::new(&d);
    let mut out = Vec::with_capacity(EXT_PROFILE_DEGREES);
    for i in 1..=EXT_PROFILE_DEGREES {
        let e = if out.last().is_some_and(Option::is_none) { None } else { res.ext(&reg, i).ok() };
        out.push(e);
    }
    out
}

fn verdict_json(v: &Verdict) -> serde_json::Value {
    serde_json::to_value(v).unwrap_or(serde_json::Value::Null)
}

/// Hypothesis `M in perp(A)` against conclusion `M projective`.
fn perp_vs_projective(m: &Module, reg: &Module, cutoff: usize, label: &str) -> (Option<serde_json::Value>, bool, Option<String>) {
    let member = perp_test(m, std::slice::from_ref(reg), cutoff);
    let projective = match m.is_projective() {
        Ok(p) => p,
        Err(e) => return (None, false, Some(format!("{label}: {e}"))),
    };
    match (&member, projective) {
        (Verdict::CertifiedTrue { .. }, false) => {
            let w = serde_json::json!({ "module": label, "membership": verdict_json(&member), "projective": false });
            (Some(w), true, None)
        }
        (_, true) | (Verdict::CertifiedFalse { .. }, _) => (None, true, None),
        (Verdict::Unknown { cutoff, reason }, false) => {
            (None, false, Some(format!("{label}: membership unknown at {cutoff} ({reason})")))
        }
    }
}

fn from_cases(cases: Vec<(Option<serde_json::Value>, bool, Option<String>)>) -> ScanVerdict {
    let mut checked = 0;
    let mut reasons = Vec::new();
    for (cand, ok, reason) in cases {
        if let Some(w) = cand {
            return ScanVerdict::CandidateCounterexample { witness: w };
        }
        if ok {
            checked += 1;
        }
        reasons.extend(reason);
    }
    if checked == 0 && !reasons.is_empty() {
        ScanVerdict::Undecided { reasons }
    } else {
        ScanVerdict::Consistent { checked, unknown: reasons.len() }
    }
}

/// `D(A) in perp(A)` implies `A` self-injective.
fn conj_selfinjective(a: &Arc<Algebra>, cutoff: usize) -> ScanVerdict {
    let (d, reg) = left_dual_regular(a);
    let self_injective = match injective_cogenerator(a).is_projective() {
        Ok(x) => x,
        Err(e) => return ScanVerdict::Undecided { reasons: vec![format!("self-injectivity: {e}")] },
    };
    from_cases(vec![perp_vs_projective(&d, &reg, cutoff, "D(A)")]).with_truth(self_injective)
}

impl ScanVerdict {
    /// A projective `D(A)` settles the conclusion no matter the membership.
    fn with_truth(self, conclusion: bool) -> ScanVerdict {
        match self {
            ScanVerdict::Undecided { .. } if conclusion => ScanVerdict::Consistent { checked: 1, unknown: 0 },
            v => v,
        }
    }
}

/// Each indecomposable injective left module in `perp(A)` is projective.
fn conj_injectives(a: &Arc<Algebra>, cutoff: usize) -> ScanVerdict {
    let (_, reg) = left_dual_regular(a);
    let cases = (0..a.num_idempotents())
        .map(|i| {
            let inj = indecomposable_projective(a, i).k_dual();
            perp_vs_projective(&inj, &reg, cutoff, &format!("D(e_{i} A)"))
        })
        .collect();
    from_cases(cases)
}

enum Sampled {
    NotApplicable,
    Agree,
    Unknown(String),
    Disagree(String),
}

/// Finite id: does pd agree with the perpendicular dimension?
fn q516(a: &Arc<Algebra>, m: &Module, c: usize) -> Sampled {
    match inj_dim(m, c) {
        DimensionReport::Zero | DimensionReport::Exact { .. } => {}
        DimensionReport::Infinite { .. } => return Sampled::NotApplicable,
        r => return Sampled::Unknown(format!("id {}", r.summary())),
    }
    let reg = Module::regular(a);
    outcome_to_sampled(same_dim("pd = perp dim", &proj_dim(m, c), &perp_dim(m, &[reg], c)))
}

/// Finite pd: does pd agree with the torsionfree upper bound? A bound below
/// pd is a certified disagreement.
fn q517(m: &Module, c: usize) -> Sampled {
    let pd = match proj_dim(m, c) {
        DimensionReport::Zero => 0,
        DimensionReport::Exact { value, .. } => value,
        DimensionReport::Infinite { .. } => return Sampled::NotApplicable,
        r => return Sampled::Unknown(format!("pd {}", r.summary())),
    };
    match torsionfree_dim_upper(m, c) {
        DimensionReport::Zero => Sampled::Agree,
        DimensionReport::Exact { value, .. } | DimensionReport::UpperBound { value, .. } => {
            if value < pd {
                Sampled::Disagree(format!("torsionfree dimension <= {value} < pd = {pd}"))
            } else if value == pd {
                Sampled::Agree
            } else {
                Sampled::Unknown(format!("torsionfree bound {value} above pd {pd}"))
            }
        }
        r => Sampled::Unknown(format!("torsionfree dimension {}", r.summary())),
    }
}

fn outcome_to_sampled(o: Outcome) -> Sampled {
    match o {
        Outcome::NotApplicable => Sampled::NotApplicable,
        Outcome::Pass => Sampled::Agree,
        Outcome::Unknown(s) => Sampled::Unknown(s),
        Outcome::Fail(s) => Sampled::Disagree(s),
    }
}

fn sampled_scan(a: &Arc<Algebra>, config: &CheckConfig, f: impl Fn(&Module) -> Sampled + Sync) -> ScanVerdict {
    let results: Vec<(usize, Vec<Presentation>, Sampled)> = (0..config.samples)
        .into_par_iter()
        .map(|i| {
            let pres = draw_sample(a, config.seed, i, 1);
            let s = match modules(a, &pres) {
                Ok(ms) => f(&ms[0]),
                Err(e) => Sampled::Unknown(format!("sampler: {e}")),
            };
            (i, pres, s)
        })
        .collect();
    let (mut checked, mut reasons) = (0, Vec::new());
    for (index, pres, s) in results {
        match s {
            Sampled::Disagree(detail) => {
                let witness = serde_json::json!({
                    "index": index,
                    "seed": config.seed,
                    "presentations": pres,
                    "detail": detail,
                });
                return ScanVerdict::CandidateCounterexample { witness };
            }
            Sampled::Agree => checked += 1,
            Sampled::Unknown(r) => reasons.push(format!("sample {index}: {r}")),
            Sampled::NotApplicable => {}
        }
    }
    if checked == 0 && !reasons.is_empty() {
        ScanVerdict::Undecided { reasons }
    } else {
        ScanVerdict::Consistent { checked, unknown: reasons.len() }
    }
}

/// Runs one conjecture scanner. Candidates are only ever reported from
/// certified data.
pub fn scan(conjecture_id: &str, algebra_name: &str, a: &Arc<Algebra>, config: &CheckConfig) -> Result<ScanReport> {
    let c = config.cutoff;
    let (verdict, profile) = match conjecture_id {
        "CONJ-5.18-1" => (conj_injectives(a, c), None),
        "CONJ-5.18-2" => (conj_selfinjective(a, c), Some(ext_profile(a))),
        "Q-5.16" => (sampled_scan(a, config, |m| q516(a, m, c)), None),
        "Q-5.17" => (sampled_scan(a, config, |m| q517(m, c)), None),
        "SNC-5.19" => (sampled_scan(a, config, |m| outcome_to_sampled(evaluate("PROP-5.19-FWD", a, std::slice::from_ref(m), c))), None),
        _ => return Err(Error::UnknownConjectureId(conjecture_id.to_string())),
    };
    Ok(ScanReport {
        conjecture_id: conjecture_id.to_string(),
        algebra: algebra_name.to_string(),
        config: *config,
        verdict,
        ext_profile: profile,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{corpus, corpus_algebra};

    fn cfg(cutoff: usize) -> CheckConfig {
        CheckConfig { samples: 10, cutoff, seed: 0 }
    }

    #[test]
    fn selfinjective_conjecture_on_corpus() {
        for c in corpus() {
            let r = scan("CONJ-5.18-2", c.name, &c.algebra, &cfg(40)).unwrap();
            assert!(matches!(r.verdict, ScanVerdict::Consistent { .. }), "{}: {:?}", c.name, r.verdict);
            assert_eq!(r.ext_profile.as_ref().map(Vec::len), Some(EXT_PROFILE_DEGREES));
        }
    }

    #[test]
    fn loc3_profile_is_nonzero_in_degree_one() {
        let c = corpus_algebra("LOC3").unwrap();
        let r = scan("CONJ-5.18-2", "LOC3", &c.algebra, &cfg(40)).unwrap();
        let p = r.ext_profile.unwrap();
        assert_eq!(&p[..4], &[Some(4), Some(9), Some(18), Some(36)]);
        assert_eq!(p[9], Some(2304));
    }

    #[test]
    fn dual2_profile_vanishes() {
        let c = corpus_algebra("DUAL2").unwrap();
        let r = scan("CONJ-5.18-2", "DUAL2", &c.algebra, &cfg(40)).unwrap();
        assert!(r.ext_profile.unwrap().iter().all(|&x| x == Some(0)));
    }

    #[test]
    fn sampled_scans_are_consistent_on_a2() {
        let c = corpus_algebra("A2PATH").unwrap();
        for id in ["CONJ-5.18-1", "Q-5.16", "Q-5.17", "SNC-5.19"] {
            let r = scan(id, "A2PATH", &c.algebra, &cfg(40)).unwrap();
            assert!(matches!(r.verdict, ScanVerdict::Consistent { .. }), "{id}: {:?}", r.verdict);
        }
    }

    #[test]
    fn unknown_id() {
        let c = corpus_algebra("A2PATH").unwrap();
        assert!(matches!(scan("CONJ-0", "A2PATH", &c.algebra, &cfg(40)), Err(Error::UnknownConjectureId(_))));
    }
}
