use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactla::Matrix;
use crate::modrep::{Module, Projective};
use crate::verdict::{Evidence, Verdict};

use super::Resolution;

/// Syzygies above this dimension are not tested for membership.
pub const SYZYGY_TEST_CAP: usize = 64;

const GP_NOTE: &str = "the minimal syzygy was tested: Gorenstein projectives form a resolving class \
inside the left perpendicular of the projectives, so every later syzygy of a module of finite \
Gorenstein projective dimension is Gorenstein projective; for finitely generated modules this also \
equals the strongly Gorenstein flat dimension";
const TF_NOTE: &str = "upper bound only: the class of infinity-torsionfree modules is not known to be \
closed under kernels of epimorphisms, so the first torsionfree syzygy bounds the dimension from above";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimWitness {
    /// Multiplicities of the indecomposable projectives in `P_0, P_1, ...`.
    pub terms: Vec<Vec<usize>>,
    /// Matrices of `d_1, d_2, ...`.
    pub differentials: Vec<Matrix>,
    /// Isomorphism `(Omega^from)^multiplicity -> Omega^to` for infinite dimensions.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub iso: Option<Matrix>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub multiplicity: Option<usize>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum DimensionReport {
    Zero,
    Exact { value: usize, witness: DimWitness },
    Infinite { from: usize, to: usize, witness: DimWitness },
    AtLeast { value: usize, cutoff: usize },
    UpperBound { value: usize, note: String, witness: DimWitness },
}

impl DimensionReport {
    pub fn exact(&self) -> Option<usize> {
        match self {
            DimensionReport::Exact { value, .. } => Some(*value),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, DimensionReport::Infinite { .. })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            DimensionReport::Zero => "Zero",
            DimensionReport::Exact { .. } => "Exact",
            DimensionReport::Infinite { .. } => "Infinite",
            DimensionReport::AtLeast { .. } => "AtLeast",
            DimensionReport::UpperBound { .. } => "UpperBound",
        }
    }

    /// Short human-readable form.
    pub fn summary(&self) -> String {
        match self {
            DimensionReport::Zero => "zero module".into(),
            DimensionReport::Exact { value, .. } => format!("{value}"),
            DimensionReport::Infinite { from, to, .. } => format!("infinite (syzygies {from} and {to} agree)"),
            DimensionReport::AtLeast { value, cutoff } => format!(">= {value} (cutoff {cutoff})"),
            DimensionReport::UpperBound { value, .. } => format!("<= {value}"),
        }
    }
}

fn witness(res: &mut Resolution, n: usize, note: &str) -> DimWitness {
    let mut terms = Vec::new();
    let mut differentials = Vec::new();
    for k in 0..n.min(res.len()) {
        terms.push(res.terms()[k].multiplicities());
        if k >= 1 {
            if let Ok(d) = res.differential(k) {
                differentials.push(d.to_morphism().matrix().clone());
            }
        }
    }
    DimWitness { terms, differentials, iso: None, multiplicity: None, note: note.into() }
}

fn unknown_from(err: Error, cutoff: usize) -> Verdict {
    Verdict::unknown(cutoff, err.to_string())
}

/// Is `Omega^n` in the left perpendicular of `targets`?
pub(crate) fn perp_at(res: &mut Resolution, n: usize, targets: &[Module], cutoff: usize) -> Verdict {
    if let Err(e) = res.ensure(n + 1) {
        return unknown_from(e, cutoff);
    }
    if res.syzygies().get(n).is_none_or(Module::is_zero) {
        return Verdict::yes(Evidence::Structural { reason: "zero module".into() });
    }
    for i in 1..=cutoff + 1 {
        let verified = n + i - 1;
        if let Some(l) = res.finite_length() {
            if l <= verified {
                return Verdict::yes(Evidence::FiniteResolution { length: l - n });
            }
        }
        if let Some(per) = res.periodicity() {
            let end = if per.from >= n { per.to } else { n + per.to - per.from };
            if end <= verified {
                return Verdict::yes(Evidence::PeriodicClosure { from: per.from, to: per.to });
            }
        }
        if i > cutoff {
            break;
        }
        let spot = n + i;
        if let Err(e) = res.ensure(spot + 2) {
            return unknown_from(e, cutoff);
        }
        for (ti, t) in targets.iter().enumerate() {
            match res.ext(t, spot) {
                Ok(0) => {}
                Ok(dim) => return Verdict::no(Evidence::ExtNonzero { degree: i, dim, target: ti }),
                Err(e) => return unknown_from(e, cutoff),
            }
        }
    }
    Verdict::unknown(cutoff, "no finite or periodic closure within the cutoff")
}

/// Is `Omega^n` infinity-torsionfree, i.e. `Tr Omega^n` in the left
/// perpendicular of the opposite algebra?
pub(crate) fn torsionfree_at(res: &mut Resolution, n: usize, cutoff: usize) -> Verdict {
    let tr = match res.transpose_of_syzygy(n) {
        Ok(t) => t,
        Err(e) => return unknown_from(e, cutoff),
    };
    let target = Projective::basic_regular(tr.algebra()).module().clone();
    perp_at(&mut Resolution::new(&tr), 0, &[target], cutoff)
}

pub(crate) fn gp_at(res: &mut Resolution, n: usize, cutoff: usize) -> Verdict {
    let a = res.module().algebra().clone();
    let target = Projective::basic_regular(&a).module().clone();
    let left = perp_at(res, n, &[target], cutoff);
    if left.is_false() {
        return left;
    }
    left.and(torsionfree_at(res, n, cutoff))
}

pub fn perp_test(m: &Module, targets: &[Module], cutoff: usize) -> Verdict {
    perp_at(&mut Resolution::new(m), 0, targets, cutoff)
}

pub fn is_gorenstein_projective(m: &Module, cutoff: usize) -> Verdict {
    gp_at(&mut Resolution::new(m), 0, cutoff)
}

pub fn is_torsionfree_infty(m: &Module, cutoff: usize) -> Verdict {
    torsionfree_at(&mut Resolution::new(m), 0, cutoff)
}

pub fn proj_dim(m: &Module, cutoff: usize) -> DimensionReport {
    if m.is_zero() {
        return DimensionReport::Zero;
    }
    let mut res = Resolution::new(m);
    if let Err(e) = res.run(cutoff) {
        let value = match e {
            Error::CutoffExceeded(k) => k,
            _ => res.len(),
        };
        return DimensionReport::AtLeast { value, cutoff };
    }
    if let Some(l) = res.finite_length() {
        let w = witness(&mut res, l + 1, "minimal projective resolution reaches a zero syzygy");
        return DimensionReport::Exact { value: l, witness: w };
    }
    if let Some(per) = res.periodicity().cloned() {
        let mut w = witness(&mut res, per.to, "a nonzero syzygy is a sum of copies of an earlier one");
        w.iso = Some(per.iso);
        w.multiplicity = Some(per.multiplicity);
        return DimensionReport::Infinite { from: per.from, to: per.to, witness: w };
    }
    DimensionReport::AtLeast { value: cutoff + 1, cutoff }
}

pub fn inj_dim(m: &Module, cutoff: usize) -> DimensionReport {
    proj_dim(&m.k_dual(), cutoff)
}

/// Least `n` whose syzygy passes `test`, with soundness bookkeeping shared
/// by the Gorenstein and perpendicular dimensions.
fn syzygy_dimension(
    m: &Module,
    cutoff: usize,
    note: &str,
    mut test: impl FnMut(&mut Resolution, usize) -> Verdict,
) -> DimensionReport {
    if m.is_zero() {
        return DimensionReport::Zero;
    }
    let mut res = Resolution::new(m);
    let mut all_false: Option<usize> = None;
    let mut unknown = false;
    for n in 0..=cutoff {
        let omega = match res.syzygy(n) {
            Ok(o) => o,
            Err(_) => break,
        };
        if omega.is_zero() || omega.dim() > SYZYGY_TEST_CAP {
            break;
        }
        match test(&mut res, n) {
            Verdict::CertifiedTrue { .. } => {
                let w = witness(&mut res, n, note);
                return if unknown {
                    DimensionReport::UpperBound {
                        value: n,
                        note: "an earlier syzygy was undecided".into(),
                        witness: w,
                    }
                } else {
                    DimensionReport::Exact { value: n, witness: w }
                };
            }
            Verdict::CertifiedFalse { .. } => {
                if !unknown {
                    all_false = Some(n);
                    if let Some(per) = res.periodicity().cloned() {
                        if n >= per.to {
                            let mut w = witness(&mut res, per.to, "every syzygy up to the period fails");
                            w.iso = Some(per.iso);
                            w.multiplicity = Some(per.multiplicity);
        w.multiplicity = Some(per.multiplicity);
                            return DimensionReport::Infinite { from: per.from, to: per.to, witness: w };
                        }
                    }
                }
            }
            Verdict::Unknown { .. } => unknown = true,
        }
    }
    DimensionReport::AtLeast { value: all_false.map_or(0, |k| k + 1), cutoff }
}

pub fn gorenstein_pd(m: &Module, cutoff: usize) -> DimensionReport {
    syzygy_dimension(m, cutoff, GP_NOTE, |res, n| gp_at(res, n, cutoff))
}

pub fn gorenstein_id(m: &Module, cutoff: usize) -> DimensionReport {
    gorenstein_pd(&m.k_dual(), cutoff)
}

pub fn perp_dim(m: &Module, targets: &[Module], cutoff: usize) -> DimensionReport {
    let note = "left perpendicular classes are resolving, so the syzygy criterion is exact";
    syzygy_dimension(m, cutoff, note, |res, n| perp_at(res, n, targets, cutoff))
}

pub fn torsionfree_dim_upper(m: &Module, cutoff: usize) -> DimensionReport {
    if m.is_zero() {
        return DimensionReport::Zero;
    }
    let mut res = Resolution::new(m);
    let mut lower = 0;
    for n in 0..=cutoff {
        let omega = match res.syzygy(n) {
            Ok(o) => o,
            Err(_) => break,
        };
        if omega.is_zero() || omega.dim() > SYZYGY_TEST_CAP {
            break;
        }
        match torsionfree_at(&mut res, n, cutoff) {
            Verdict::CertifiedTrue { .. } => {
                let w = witness(&mut res, n, TF_NOTE);
                return if n == 0 {
                    DimensionReport::Exact { value: 0, witness: w }
                } else {
                    DimensionReport::UpperBound { value: n, note: TF_NOTE.into(), witness: w }
                };
            }
            Verdict::CertifiedFalse { .. } if n == 0 => lower = 1,
            _ => {}
        }
    }
    DimensionReport::AtLeast { value: lower, cutoff }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modrep::tests::{a2, dual2, loc3, nak3};
    use crate::modrep::{indecomposable_injective, indecomposable_projective, simple_module};

    const C: usize = 40;

    #[test]
    fn proj_dim_examples() {
        let a = a2();
        assert_eq!(proj_dim(&indecomposable_projective(&a, 0), C).exact(), Some(0));
        assert_eq!(proj_dim(&simple_module(&a, 0), C).exact(), Some(1));
        assert!(proj_dim(&simple_module(&dual2(), 0), C).is_infinite());
        assert_eq!(proj_dim(&Module::zero(&a), C), DimensionReport::Zero);
    }

    #[test]
    fn inj_dim_examples() {
        let a = a2();
        assert_eq!(inj_dim(&indecomposable_injective(&a, 1), C).exact(), Some(0));
        assert!(inj_dim(&simple_module(&dual2(), 0), C).is_infinite());
        assert_eq!(inj_dim(&simple_module(&a, 1), C).exact(), Some(1));
        assert_eq!(inj_dim(&simple_module(&a, 0), C).exact(), Some(0));
    }

    #[test]
    fn perp_examples() {
        let a = a2();
        let reg = Module::regular(&a);
        assert!(perp_test(&indecomposable_projective(&a, 0), std::slice::from_ref(&reg), C).is_true());
        let d = dual2();
        assert!(perp_test(&simple_module(&d, 0), &[Module::regular(&d)], C).is_true());
        let l = loc3();
        match perp_test(&simple_module(&l, 0), &[Module::regular(&l)], C) {
            Verdict::CertifiedFalse { evidence: Evidence::ExtNonzero { degree, .. } } => assert_eq!(degree, 1),
            v => panic!("{v:?}"),
        }
        assert_eq!(perp_dim(&simple_module(&a, 0), &[reg], C).exact(), Some(1));
    }

    #[test]
    fn gp_examples() {
        let d = dual2();
        assert!(is_gorenstein_projective(&simple_module(&d, 0), C).is_true());
        assert!(is_gorenstein_projective(&Module::regular(&d), C).is_true());
        let l = loc3();
        assert!(is_gorenstein_projective(&simple_module(&l, 0), C).is_false());
        assert_eq!(gorenstein_pd(&simple_module(&d, 0), C).exact(), Some(0));
        let a = a2();
        assert_eq!(gorenstein_pd(&simple_module(&a, 0), C).exact(), Some(1));
        assert_eq!(gorenstein_id(&simple_module(&a, 0), C).exact(), Some(0));
        assert_eq!(gorenstein_id(&simple_module(&d, 0), C).exact(), Some(0));
    }

    #[test]
    fn torsionfree_examples() {
        let a = a2();
        assert!(is_torsionfree_infty(&indecomposable_projective(&a, 0), C).is_true());
        assert!(is_torsionfree_infty(&simple_module(&dual2(), 0), C).is_true());
        assert!(matches!(
            torsionfree_dim_upper(&simple_module(&a, 0), C),
            DimensionReport::UpperBound { value: 1, .. }
        ));
        assert_eq!(torsionfree_dim_upper(&simple_module(&nak3(), 0), C).exact(), Some(0));
        let v = is_torsionfree_infty(&simple_module(&loc3(), 0), 10);
        assert!(!v.is_true(), "{v:?}");
    }

    #[test]
    fn nak3_unknown_at_low_cutoff() {
        let n = nak3();
        let s = simple_module(&n, 0);
        let sum = crate::modrep::direct_sum(&n, &[s, Module::regular(&n)]).unwrap().module;
        let v = perp_test(&sum, &[Module::regular(&n)], 2);
        assert!(matches!(v, Verdict::Unknown { cutoff: 2, .. }), "{v:?}");
        assert!(perp_test(&sum, &[Module::regular(&n)], 3).is_true());
    }
}
