use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::homology::{
    gp_coresolution_step, is_gorenstein_projective, is_torsionfree_infty, perp_test, ShortExact,
};
use crate::modrep::{kernel, projective_cover, Module, Morphism, Projective};
use crate::verdict::{Evidence, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OracleKind {
    Projectives,
    Injectives,
    GorensteinProjectives,
    GorensteinInjectives,
    PerpRegular,
    TorsionfreeInfty,
    CoresTildeProj,
}

impl OracleKind {
    pub const ALL: [OracleKind; 7] = [
        OracleKind::Projectives,
        OracleKind::Injectives,
        OracleKind::GorensteinProjectives,
        OracleKind::GorensteinInjectives,
        OracleKind::PerpRegular,
        OracleKind::TorsionfreeInfty,
        OracleKind::CoresTildeProj,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OracleKind::Projectives => "Projectives",
            OracleKind::Injectives => "Injectives",
            OracleKind::GorensteinProjectives => "GorensteinProjectives",
            OracleKind::GorensteinInjectives => "GorensteinInjectives",
            OracleKind::PerpRegular => "PerpRegular",
            OracleKind::TorsionfreeInfty => "TorsionfreeInfty",
            OracleKind::CoresTildeProj => "CoresTildeProj",
        }
    }
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OracleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OracleKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnsupportedKind(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flag {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureFlags {
    pub closed_extensions: Flag,
    pub closed_kernels_of_epis: Flag,
    pub closed_cokernels_of_monos: Flag,
    pub closed_summands: Flag,
}

/// A subcategory of `mod A` with a membership test and, where available,
/// proper generator or coproper cogenerator sequences.
#[derive(Clone, Debug)]
pub struct SubcategoryOracle {
    pub kind: OracleKind,
    pub algebra: Arc<Algebra>,
    pub cutoff: usize,
    pub flags: ClosureFlags,
}

pub fn oracle(kind: OracleKind, algebra: &Arc<Algebra>, cutoff: usize) -> SubcategoryOracle {
    use Flag::*;
    let flags = match kind {
        OracleKind::Projectives => ClosureFlags {
            closed_extensions: Yes,
            closed_kernels_of_epis: Yes,
            closed_cokernels_of_monos: No,
            closed_summands: Yes,
        },
        OracleKind::Injectives => ClosureFlags {
            closed_extensions: Yes,
            closed_kernels_of_epis: No,
            closed_cokernels_of_monos: Yes,
            closed_summands: Yes,
        },
        OracleKind::GorensteinProjectives | OracleKind::PerpRegular => ClosureFlags {
            closed_extensions: Yes,
            closed_kernels_of_epis: Yes,
            closed_cokernels_of_monos: No,
            closed_summands: Yes,
        },
        OracleKind::GorensteinInjectives => ClosureFlags {
            closed_extensions: Yes,
            closed_kernels_of_epis: No,
            closed_cokernels_of_monos: Yes,
            closed_summands: Yes,
        },
        OracleKind::TorsionfreeInfty | OracleKind::CoresTildeProj => ClosureFlags {
            closed_extensions: Unknown,
            closed_kernels_of_epis: Unknown,
            closed_cokernels_of_monos: Unknown,
            closed_summands: Yes,
        },
    };
    SubcategoryOracle { kind, algebra: algebra.clone(), cutoff, flags }
}

fn structural(ok: bool, yes: &str, no: &str) -> Verdict {
    if ok {
        Verdict::yes(Evidence::Structural { reason: yes.into() })
    } else {
        Verdict::no(Evidence::Structural { reason: no.into() })
    }
}

fn projective_membership(m: &Module) -> Verdict {
    match m.is_projective() {
        Ok(ok) => structural(ok, "projective cover is an isomorphism", "projective cover has a nonzero kernel"),
        Err(e) => Verdict::unknown(0, e.to_string()),
    }
}

/// Injective envelope `0 -> m -> I -> I/m -> 0`, dual to the projective cover.
pub fn injective_envelope(m: &Module) -> Result<ShortExact> {
    let a = m.algebra();
    let cover = projective_cover(&m.k_dual())?;
    let (k, incl) = kernel(&cover.epi);
    let middle = rebase(&cover.projective.module().k_dual(), a);
    let right = rebase(&k.k_dual(), a);
    let mono = Morphism::from_parts(m.clone(), middle.clone(), cover.epi.matrix().transpose());
    let epi = Morphism::from_parts(middle.clone(), right.clone(), incl.matrix().transpose());
    Ok(ShortExact { left: m.clone(), middle, right, mono, epi })
}

/// The same action data over an equal algebra handle.
pub(crate) fn rebase(m: &Module, a: &Arc<Algebra>) -> Module {
    Module::from_parts(a.clone(), m.dim(), m.actions().to_vec())
}

impl SubcategoryOracle {
    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    /// The class the (co)generator sequences take their middle terms from.
    pub fn generator_class(&self) -> OracleKind {
        match self.kind {
            OracleKind::Injectives | OracleKind::GorensteinInjectives => OracleKind::Injectives,
            _ => OracleKind::Projectives,
        }
    }

    pub fn membership(&self, m: &Module) -> Verdict {
        let c = self.cutoff;
        match self.kind {
            OracleKind::Projectives => projective_membership(m),
            OracleKind::Injectives => projective_membership(&m.k_dual()),
            OracleKind::GorensteinProjectives => is_gorenstein_projective(m, c),
            OracleKind::GorensteinInjectives => is_gorenstein_projective(&m.k_dual(), c),
            OracleKind::PerpRegular => {
                let reg = Projective::basic_regular(m.algebra()).module().clone();
                perp_test(m, &[reg], c)
            }
            OracleKind::TorsionfreeInfty | OracleKind::CoresTildeProj => is_torsionfree_infty(m, c),
        }
    }

    pub fn has_generator(&self) -> bool {
        !matches!(self.kind, OracleKind::TorsionfreeInfty | OracleKind::CoresTildeProj)
    }

    pub fn has_cogenerator(&self) -> bool {
        !matches!(self.kind, OracleKind::PerpRegular)
    }

    /// `0 -> T' -> C -> T -> 0` with `C` in the generator class.
    pub fn proper_generator_seq(&self, t: &Module) -> Result<ShortExact> {
        match self.kind {
            OracleKind::Projectives => {
                let z = Module::zero(t.algebra());
                Ok(ShortExact {
                    left: z.clone(),
                    middle: t.clone(),
                    right: t.clone(),
                    mono: Morphism::zero(&z, t),
                    epi: t.identity(),
                })
            }
            OracleKind::Injectives => {
                let inj = self.membership(t);
                if !inj.is_true() {
                    return Err(Error::MembershipNotCertified {
                        module: format!("dim {}", t.dim()),
                        class: self.name().into(),
                        detail: inj.label().into(),
                    });
                }
                let z = Module::zero(t.algebra());
                Ok(ShortExact {
                    left: z.clone(),
                    middle: t.clone(),
                    right: t.clone(),
                    mono: Morphism::zero(&z, t),
                    epi: t.identity(),
                })
            }
            OracleKind::GorensteinProjectives | OracleKind::PerpRegular => {
                let cover = projective_cover(t)?;
                let (k, incl) = kernel(&cover.epi);
                Ok(ShortExact { left: k, middle: cover.projective.module().clone(), right: t.clone(), mono: incl, epi: cover.epi })
            }
            OracleKind::GorensteinInjectives => {
                let a = t.algebra();
                let step = gp_coresolution_step(&t.k_dual(), self.cutoff)?;
                let left = rebase(&step.right.k_dual(), a);
                let middle = rebase(&step.middle.k_dual(), a);
                let mono = Morphism::from_parts(left.clone(), middle.clone(), step.epi.matrix().transpose());
                let epi = Morphism::from_parts(middle.clone(), t.clone(), step.mono.matrix().transpose());
                Ok(ShortExact { left, middle, right: t.clone(), mono, epi })
            }
            OracleKind::TorsionfreeInfty | OracleKind::CoresTildeProj => Err(Error::NoGeneratorData(self.name().into())),
        }
    }

    /// `0 -> T -> C -> T' -> 0` with `C` in the generator class.
    pub fn coproper_cogenerator_seq(&self, t: &Module) -> Result<ShortExact> {
        match self.kind {
            OracleKind::Projectives => {
                let z = Module::zero(t.algebra());
                Ok(ShortExact {
                    left: t.clone(),
                    middle: t.clone(),
                    right: z.clone(),
                    mono: t.identity(),
                    epi: Morphism::zero(t, &z),
                })
            }
            OracleKind::Injectives | OracleKind::GorensteinInjectives => injective_envelope(t),
            OracleKind::GorensteinProjectives => gp_coresolution_step(t, self.cutoff),
            OracleKind::TorsionfreeInfty | OracleKind::CoresTildeProj => {
                crate::homology::left_approximation_sequence(t)
            }
            OracleKind::PerpRegular => Err(Error::NoCogeneratorData(self.name().into())),
        }
    }

    /// Errors unless membership is certified.
    pub fn require(&self, m: &Module, what: &str) -> Result<()> {
        let v = self.membership(m);
        if v.is_true() {
            Ok(())
        } else {
            Err(Error::MembershipNotCertified {
                module: what.into(),
                class: self.name().into(),
                detail: format!("{v:?}"),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modrep::tests::{a2, dual2, loc3};
    use crate::modrep::{indecomposable_injective, simple_module};

    #[test]
    fn catalog_examples() {
        let a = a2();
        let proj = oracle(OracleKind::Projectives, &a, 40);
        assert!(proj.membership(&Module::regular(&a)).is_true());
        assert!(proj.membership(&simple_module(&a, 0)).is_false());
        let perp = oracle(OracleKind::PerpRegular, &a, 40);
        // S(2) is projective; S(1) has Ext^1(S(1), P(2)) = k
        assert!(perp.membership(&simple_module(&a, 1)).is_true());
        assert!(perp.membership(&simple_module(&a, 0)).is_false());
        let inj = oracle(OracleKind::Injectives, &a, 40);
        assert!(inj.membership(&indecomposable_injective(&a, 1)).is_true());
        assert!(inj.membership(&simple_module(&a, 1)).is_false());
        let gp = oracle(OracleKind::GorensteinProjectives, &loc3(), 40);
        assert!(gp.membership(&simple_module(&loc3(), 0)).is_false());
        assert!("gorensteinprojectives".parse::<OracleKind>().is_ok());
        assert!(matches!("Flat".parse::<OracleKind>(), Err(Error::UnsupportedKind(_))));
    }

    #[test]
    fn sequences_are_exact() {
        let d = dual2();
        let s = simple_module(&d, 0);
        for kind in OracleKind::ALL {
            let o = oracle(kind, &d, 40);
            if o.has_generator() {
                if let Ok(seq) = o.proper_generator_seq(&s) {
                    assert!(seq.is_exact(), "{kind} generator");
                }
            }
            if o.has_cogenerator() {
                let seq = o.coproper_cogenerator_seq(&s).unwrap();
                assert!(seq.is_exact(), "{kind} cogenerator");
            }
        }
        let a = a2();
        let env = injective_envelope(&simple_module(&a, 1)).unwrap();
        assert!(env.is_exact());
        assert_eq!(env.middle.dim(), 2);
    }
}
