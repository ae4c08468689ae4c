use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{algebra_from_quiver, Algebra, Arrow, QuiverPresentation, RelationTerm};

/// A built-in algebra with its known classification.
#[derive(Clone, Debug)]
pub struct CorpusAlgebra {
    pub name: &'static str,
    pub algebra: Arc<Algebra>,
    pub quiver: QuiverPresentation,
    pub class: Classification,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    SelfInjective,
    Hereditary,
    NonGorensteinLocal,
}

fn quiver(p: u64, verts: &[&str], arrows: &[(&str, &str, &str)], rels: &[&[&str]], bound: usize) -> QuiverPresentation {
    QuiverPresentation {
        field_char: p,
        vertices: verts.iter().map(|v| v.to_string()).collect(),
        arrows: arrows
            .iter()
            .map(|(l, s, t)| Arrow { label: l.to_string(), src: s.to_string(), tgt: t.to_string() })
            .collect(),
        relations: rels
            .iter()
            .map(|r| vec![RelationTerm { path: r.iter().map(|s| s.to_string()).collect(), coeff: 1 }])
            .collect(),
        nilpotency_bound: bound,
    }
}

fn entry(name: &'static str, quiver: QuiverPresentation, class: Classification) -> CorpusAlgebra {
    let algebra = algebra_from_quiver(&quiver).expect("corpus quiver is admissible");
    CorpusAlgebra { name, algebra, quiver, class }
}

pub const CORPUS_NAMES: [&str; 4] = ["DUAL2", "NAK3", "A2PATH", "LOC3"];

/// DUAL2 = F_2[x]/(x^2), NAK3 = F_3[x]/(x^3), A2PATH = F_2(1 -> 2),
/// LOC3 = F_2<x,y>/(x^2, xy, yx, y^2).
pub fn corpus() -> Vec<CorpusAlgebra> {
    CORPUS_NAMES.iter().map(|n| corpus_algebra(n).expect("listed")).collect()
}

pub fn corpus_algebra(name: &str) -> Option<CorpusAlgebra> {
    use Classification::*;
    let e = match name.to_ascii_uppercase().as_str() {
        "DUAL2" => entry("DUAL2", quiver(2, &["1"], &[("x", "1", "1")], &[&["x", "x"]], 2), SelfInjective),
        "NAK3" => entry("NAK3", quiver(3, &["1"], &[("x", "1", "1")], &[], 3), SelfInjective),
        "A2PATH" => entry("A2PATH", quiver(2, &["1", "2"], &[("a", "1", "2")], &[], 2), Hereditary),
        "LOC3" => entry(
            "LOC3",
            quiver(
                2,
                &["1"],
                &[("x", "1", "1"), ("y", "1", "1")],
                &[&["x", "x"], &["x", "y"], &["y", "x"], &["y", "y"]],
                2,
            ),
            NonGorensteinLocal,
        ),
        _ => return None,
    };
    Some(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate_algebra;

    #[test]
    fn corpus_shapes() {
        let c = corpus();
        let dims: Vec<(usize, usize)> = c.iter().map(|e| (e.algebra.dim(), e.algebra.num_idempotents())).collect();
        assert_eq!(dims, vec![(2, 1), (3, 1), (3, 2), (3, 1)]);
        let loc = &c[3].algebra;
        assert_eq!(loc.radical_basis().len(), 2);
        for x in loc.radical_basis() {
            for y in loc.radical_basis() {
                assert!(loc.mul(x, y).iter().all(|&v| v == 0));
            }
        }
        for e in &c {
            assert!(validate_algebra(&e.algebra.data()).is_ok(), "{}", e.name);
        }
        assert!(corpus_algebra("loc3").is_some());
        assert!(corpus_algebra("KRONECKER").is_none());
    }
}
