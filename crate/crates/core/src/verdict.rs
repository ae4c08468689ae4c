//! Three-valued, certificate-carrying answers.

use serde::{Deserialize, Serialize};

use crate::exactla::Matrix;

/// What backs a definite answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Evidence {
    /// An invertible intertwiner.
    Isomorphism { matrix: Matrix },
    /// A computable invariant that differs.
    InvariantMismatch { invariant: String, left: Vec<usize>, right: Vec<usize> },
    /// A nonzero Ext group.
    ExtNonzero { degree: usize, dim: usize, target: usize },
    /// The resolution terminates; every Ext in the window was checked.
    FiniteResolution { length: usize },
    /// Syzygies repeat, `Omega^from = Omega^to`, and every Ext up to `to` vanishes.
    PeriodicClosure { from: usize, to: usize },
    Structural { reason: String },
    /// A replay check that failed at a particular node of a sequence.
    NodeFailure { node: usize, what: String },
    All { parts: Vec<Evidence> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    CertifiedTrue { evidence: Evidence },
    CertifiedFalse { evidence: Evidence },
    Unknown { cutoff: usize, reason: String },
}

impl Verdict {
    pub fn yes(evidence: Evidence) -> Self {
        Verdict::CertifiedTrue { evidence }
    }

    pub fn no(evidence: Evidence) -> Self {
        Verdict::CertifiedFalse { evidence }
    }

    pub fn unknown(cutoff: usize, reason: impl Into<String>) -> Self {
        Verdict::Unknown { cutoff, reason: reason.into() }
    }

    pub fn is_true(&self) -> bool {
        matches!(self, Verdict::CertifiedTrue { .. })
    }

    pub fn is_false(&self) -> bool {
        matches!(self, Verdict::CertifiedFalse { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown { .. })
    }

    /// Conjunction: false dominates, then unknown.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (f @ Verdict::CertifiedFalse { .. }, _) | (_, f @ Verdict::CertifiedFalse { .. }) => f,
            (u @ Verdict::Unknown { .. }, _) | (_, u @ Verdict::Unknown { .. }) => u,
            (Verdict::CertifiedTrue { evidence: a }, Verdict::CertifiedTrue { evidence: b }) => {
                let mut parts = match a {
                    Evidence::All { parts } => parts,
                    e => vec![e],
                };
                match b {
                    Evidence::All { parts: more } => parts.extend(more),
                    e => parts.push(e),
                }
                Verdict::yes(Evidence::All { parts })
            }
        }
    }

    pub fn all(items: impl IntoIterator<Item = Verdict>) -> Verdict {
        items
            .into_iter()
            .fold(Verdict::yes(Evidence::All { parts: vec![] }), Verdict::and)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::CertifiedTrue { .. } => "CertifiedTrue",
            Verdict::CertifiedFalse { .. } => "CertifiedFalse",
            Verdict::Unknown { .. } => "Unknown",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Verdict {
        Verdict::yes(Evidence::Structural { reason: "t".into() })
    }
    fn f() -> Verdict {
        Verdict::no(Evidence::Structural { reason: "f".into() })
    }
    fn u() -> Verdict {
        Verdict::unknown(3, "u")
    }

    #[test]
    fn conjunction_table() {
        assert!(t().and(t()).is_true());
        assert!(t().and(u()).is_unknown());
        assert!(u().and(t()).is_unknown());
        assert!(u().and(f()).is_false());
        assert!(f().and(u()).is_false());
        assert!(Verdict::all(vec![]).is_true());
    }
}
