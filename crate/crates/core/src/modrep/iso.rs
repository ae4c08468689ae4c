use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactla::{Echelon, Matrix};
use crate::verdict::{Evidence, Verdict};

use super::{hom_basis, Module};

/// Random invertibility samples before giving up.
pub const ISO_SAMPLES: usize = 64;

/// Largest Hom space, counted in elements, searched exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 15;

/// Whether a Hom space of dimension `h` over `F_p` is enumerated in full,
/// making the verdict total.
pub fn exhaustive_search_applies(p: u32, h: usize) -> bool {
    u32::try_from(h).ok().and_then(|h| (p as u64).checked_pow(h)).is_some_and(|t| t <= EXHAUSTIVE_LIMIT)
}

/// Dimensions of `J^k M` for `k = 0, 1, ...` until zero.
fn radical_layers(m: &Module) -> Vec<usize> {
    let p = m.characteristic();
    let mut layers = vec![m.dim()];
    let mut cur = Matrix::identity(p, m.dim());
    while cur.cols() > 0 {
        let mut span = Echelon::new(p, m.dim());
        for r in m.algebra().radical_basis() {
            span.insert_columns(&m.action_by(r).mul(&cur));
        }
        cur = span.basis();
        layers.push(cur.cols());
    }
    layers
}

/// Invariants compared before searching for an isomorphism.
pub fn module_invariants(m: &Module) -> Vec<(&'static str, Vec<usize>)> {
    let soc = m.socle_basis();
    let (socle, _) = m.submodule(soc);
    vec![
        ("dimension", vec![m.dim()]),
        ("dimension vector", m.dimension_vector()),
        ("top multiplicities", m.top_multiplicities()),
        ("radical layers", radical_layers(m)),
        ("socle dimension vector", socle.dimension_vector()),
    ]
}

pub fn is_isomorphic(m: &Module, n: &Module) -> Verdict {
    is_isomorphic_seeded(m, n, 0)
}

/// Three-valued isomorphism test.
///
/// Invariant mismatch refutes. Small Hom spaces are searched exhaustively,
/// larger ones by seeded random sampling with rank-increasing local moves.
pub fn is_isomorphic_seeded(m: &Module, n: &Module, seed: u64) -> Verdict {
    if m.algebra() != n.algebra() {
        return Verdict::no(Evidence::Structural { reason: "modules over different algebras".into() });
    }
    let p = m.characteristic();
    if m.dim() != n.dim() {
        return Verdict::no(Evidence::InvariantMismatch { invariant: "dimension".into(), left: vec![m.dim()], right: vec![n.dim()] });
    }
    if m.actions() == n.actions() {
        return Verdict::yes(Evidence::Isomorphism { matrix: Matrix::identity(p, m.dim()) });
    }
    for ((name, a), (_, b)) in module_invariants(m).into_iter().zip(module_invariants(n)) {
        if a != b {
            return Verdict::no(Evidence::InvariantMismatch { invariant: name.into(), left: a, right: b });
        }
    }
    let basis: Vec<Matrix> = hom_basis(m, n).expect("same algebra").into_iter().map(|f| f.matrix().clone()).collect();
    let h = basis.len();
    if h == 0 {
        return Verdict::no(Evidence::InvariantMismatch { invariant: "hom dimension".into(), left: vec![m.dim()], right: vec![0] });
    }
    let combo = |c: &[u32]| {
        let mut x = Matrix::zero(p, n.dim(), m.dim());
        for (k, &ck) in c.iter().enumerate() {
            if ck != 0 {
                x.add_scaled(ck, &basis[k]);
            }
        }
        x
    };
    if exhaustive_search_applies(p, h) {
        let total = (p as u64).pow(h as u32);
        let mut c = vec![0u32; h];
        for mut idx in 0..total {
            for ck in c.iter_mut() {
                *ck = (idx % p as u64) as u32;
                idx /= p as u64;
            }
            let x = combo(&c);
            if x.is_invertible() {
                return Verdict::yes(Evidence::Isomorphism { matrix: x });
            }
        }
        return Verdict::no(Evidence::Structural {
            reason: format!("no invertible map among all {total} elements of Hom"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((m.dim() as u64) << 32) ^ h as u64);
    for _ in 0..ISO_SAMPLES {
        let c: Vec<u32> = (0..h).map(|_| rng.gen_range(0..p)).collect();
        let mut x = combo(&c);
        let mut rank = x.rank();
        // climb: accept any single-direction move that raises the rank
        let mut improved = true;
        while improved && rank < m.dim() {
            improved = false;
            for b in &basis {
                let s = if p <= 7 { 1 + rng.gen_range(0..p - 1) } else { rng.gen_range(1..p) };
                let mut y = x.clone();
                y.add_scaled(s, b);
                let r = y.rank();
                if r > rank {
                    x = y;
                    rank = r;
                    improved = true;
                    if rank == m.dim() {
                        break;
                    }
                }
            }
        }
        if rank == m.dim() {
            return Verdict::yes(Evidence::Isomorphism { matrix: x });
        }
    }
    Verdict::unknown(ISO_SAMPLES, "random search found no invertible map")
}

#[cfg(test)]
mod tests {
    use super::super::tests::{a2, dual2, loc3};
    use super::super::*;
    use super::*;

    #[test]
    fn iso_examples() {
        let a = a2();
        let s1 = simple_module(&a, 0);
        let s2 = simple_module(&a, 1);
        assert!(is_isomorphic(&s1, &s1).is_true());
        assert!(is_isomorphic(&s1, &s2).is_false());
        let p1 = indecomposable_projective(&a, 0);
        let c = projective_cover(&s1).unwrap();
        assert!(is_isomorphic(&c.projective.module().clone(), &p1).is_true());
    }

    #[test]
    fn certificate_is_an_intertwiner() {
        let d = dual2();
        let r = Module::regular(&d);
        let dr = r.k_dual();
        let rop = Module::regular(&d.opposite());
        match is_isomorphic(&dr, &rop) {
            Verdict::CertifiedTrue { evidence: Evidence::Isomorphism { matrix } } => {
                let f = Morphism::new(dr.clone(), rop.clone(), matrix).unwrap();
                assert!(f.is_iso());
            }
            v => panic!("{v:?}"),
        }
        let l = loc3();
        let s = simple_module(&l, 0);
        let sum = direct_sum(&l, &[s.clone(), s.clone()]).unwrap().module;
        assert!(is_isomorphic(&sum, &Module::regular(&l)).is_false());
    }
}
