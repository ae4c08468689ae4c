//! Subcategory oracles and the pullback/pushout procedures that rewrite exact
//! sequences, with witnesses that replay from scratch.

mod oracle;
mod procedures;

use serde::{Deserialize, Serialize};

use crate::modrep::{hom_induced_post, hom_induced_pre, Module, Morphism};
use crate::verdict::{Evidence, Verdict};

pub use oracle::{injective_envelope, oracle, ClosureFlags, Flag, OracleKind, SubcategoryOracle};
pub use procedures::{
    cor45_approximation, prop33_replace, prop34_ladder, prop43_replace, prop44_ladder, thm36_witness,
    Approximation, Ladder,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// `Hom(object, -)` keeps the sequence exact.
    Covariant,
    /// `Hom(-, object)` keeps the sequence exact.
    Contravariant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipClaim {
    pub node: usize,
    pub class: OracleKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperClaim {
    pub class: String,
    pub side: Side,
    pub object: Module,
    pub note: String,
}

/// `0 -> M_0 -> M_1 -> ... -> M_k -> 0` with `maps[i]: M_i -> M_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSequenceWitness {
    pub modules: Vec<Module>,
    pub maps: Vec<Morphism>,
    pub memberships: Vec<MembershipClaim>,
    pub properness: Vec<ProperClaim>,
    pub cutoff: usize,
}

impl ExactSequenceWitness {
    /// Modules read off the maps. `maps` must be non-empty.
    pub fn from_maps(maps: Vec<Morphism>, cutoff: usize) -> ExactSequenceWitness {
        let mut modules: Vec<Module> = maps.iter().map(|f| f.source().clone()).collect();
        modules.push(maps.last().expect("non-empty chain").target().clone());
        ExactSequenceWitness { modules, maps, memberships: Vec::new(), properness: Vec::new(), cutoff }
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn first(&self) -> &Module {
        &self.modules[0]
    }

    pub fn last(&self) -> &Module {
        &self.modules[self.modules.len() - 1]
    }

    /// Exactness at every node, ignoring claims.
    pub fn is_exact(&self) -> bool {
        self.structure_failure().is_none()
    }

    fn structure_failure(&self) -> Option<(usize, String)> {
        if self.modules.is_empty() {
            return Some((0, "empty sequence".into()));
        }
        if self.maps.len() + 1 != self.modules.len() {
            return Some((0, format!("{} modules but {} maps", self.modules.len(), self.maps.len())));
        }
        for (i, f) in self.maps.iter().enumerate() {
            if f.source() != &self.modules[i] || f.target() != &self.modules[i + 1] {
                return Some((i, "map endpoints do not match the modules".into()));
            }
            if !f.intertwines() {
                return Some((i, "map is not a module homomorphism".into()));
            }
        }
        for (i, f) in self.maps.iter().enumerate().skip(1) {
            if !f.matrix().mul(self.maps[i - 1].matrix()).is_zero() {
                return Some((i, "consecutive maps do not compose to zero".into()));
            }
        }
        let rank = |i: Option<usize>| i.and_then(|i| self.maps.get(i)).map_or(0, Morphism::rank);
        for (i, m) in self.modules.iter().enumerate() {
            let into = if i == 0 { 0 } else { rank(Some(i - 1)) };
            if m.dim() != into + rank(Some(i)) {
                return Some((i, "image does not equal kernel".into()));
            }
        }
        None
    }
}

fn failure(node: usize, what: String) -> Verdict {
    Verdict::no(Evidence::NodeFailure { node, what })
}

/// Exactness of the chain of induced maps `H_0 -> H_1 -> ... -> H_k`.
fn chain_exact(dims: &[usize], maps: &[crate::exactla::Matrix]) -> Option<usize> {
    for i in 0..dims.len() {
        let into = if i == 0 { 0 } else { maps[i - 1].rank() };
        let out = maps.get(i).map_or(0, |m| m.rank());
        if dims[i] != into + out {
            return Some(i);
        }
    }
    None
}

fn proper_failure(w: &ExactSequenceWitness, c: &ProperClaim) -> crate::error::Result<Option<usize>> {
    if w.maps.is_empty() {
        let h = match c.side {
            Side::Covariant => crate::modrep::hom_dim(&c.object, &w.modules[0])?,
            Side::Contravariant => crate::modrep::hom_dim(&w.modules[0], &c.object)?,
        };
        return Ok((h != 0).then_some(0));
    }
    match c.side {
        Side::Covariant => {
            let maps = w.maps.iter().map(|f| hom_induced_post(&c.object, f)).collect::<Result<Vec<_>, _>>()?;
            let dims: Vec<usize> = std::iter::once(maps[0].cols()).chain(maps.iter().map(|m| m.rows())).collect();
            for (i, m) in maps.iter().enumerate().skip(1) {
                if !m.mul(&maps[i - 1]).is_zero() {
                    return Ok(Some(i));
                }
            }
            Ok(chain_exact(&dims, &maps))
        }
        Side::Contravariant => {
            // Hom(M_k, X) -> ... -> Hom(M_0, X)
            let mut maps = w.maps.iter().map(|f| hom_induced_pre(f, &c.object)).collect::<Result<Vec<_>, _>>()?;
            maps.reverse();
            let dims: Vec<usize> = std::iter::once(maps[0].cols()).chain(maps.iter().map(|m| m.rows())).collect();
            let k = w.modules.len() - 1;
            for (i, m) in maps.iter().enumerate().skip(1) {
                if !m.mul(&maps[i - 1]).is_zero() {
                    return Ok(Some(k - i));
                }
            }
            Ok(chain_exact(&dims, &maps).map(|i| k - i))
        }
    }
}

/// Whether `Hom(x, -)` (covariant) or `Hom(-, x)` keeps `w` exact.
pub fn hom_exact(w: &ExactSequenceWitness, x: &Module, side: Side) -> bool {
    let claim = ProperClaim { class: String::new(), side, object: x.clone(), note: String::new() };
    matches!(proper_failure(w, &claim), Ok(None))
}

/// Replays composability, exactness, membership and properness claims.
pub fn validate_witness(w: &ExactSequenceWitness, oracles: &[SubcategoryOracle]) -> Verdict {
    if let Some((node, what)) = w.structure_failure() {
        return failure(node, what);
    }
    let mut verdicts = vec![Verdict::yes(Evidence::Structural { reason: "exact at every node".into() })];
    for c in &w.memberships {
        let Some(m) = w.modules.get(c.node) else {
            return failure(c.node, "membership claim on a missing node".into());
        };
        let o = oracles
            .iter()
            .find(|o| o.kind == c.class)
            .cloned()
            .unwrap_or_else(|| oracle(c.class, m.algebra(), w.cutoff));
        let v = o.membership(m);
        if v.is_false() {
            return failure(c.node, format!("not a member of {}", c.class));
        }
        verdicts.push(v);
    }
    for c in &w.properness {
        match proper_failure(w, c) {
            Ok(None) => {}
            Ok(Some(node)) => return failure(node, format!("not {} exact ({:?})", c.class, c.side)),
            Err(e) => return failure(0, e.to_string()),
        }
    }
    match Verdict::all(verdicts) {
        Verdict::Unknown { reason, .. } => Verdict::unknown(w.cutoff, reason),
        v => v,
    }
}
