use std::sync::Arc;

use proptest::prelude::*;

use homcalc::algebra::{validate_algebra, Algebra};
use homcalc::constructs::{oracle, prop33_replace, prop34_ladder, validate_witness, OracleKind};
use homcalc::harness::{
    check_presentations, corpus, draw_sample, evaluate, scan, two_step_resolution, CheckConfig, Outcome,
    ScanVerdict, PROPERTY_IDS, ROUNDTRIP_ID,
};
use homcalc::homology::{ext_dim, gorenstein_pd, inj_dim, proj_dim, syzygy, DimensionReport};
use homcalc::modrep::{
    cokernel, hom_basis, hom_dim, hom_induced_post, indecomposable_projective, is_isomorphic, kernel,
    projective_cover, pullback, pushout, radical_and_top, simple_module, Module, Morphism, Projective,
};
use homcalc::{Echelon, Matrix};

fn matrix() -> impl Strategy<Value = Matrix> {
    (prop_oneof![Just(2u32), Just(3u32)], 0usize..=12, 0usize..=12).prop_flat_map(|(p, r, c)| {
        proptest::collection::vec(0..p, r * c).prop_map(move |d| Matrix::from_vec(p, r, c, d))
    })
}

fn algebras() -> Vec<Arc<Algebra>> {
    corpus().into_iter().map(|c| c.algebra).collect()
}

/// A corpus algebra index and a sampler seed.
fn sample() -> impl Strategy<Value = (usize, u64)> {
    (0usize..4, any::<u64>())
}

fn module_of(a: &Arc<Algebra>, seed: u64, slot: usize) -> Module {
    draw_sample(a, seed, slot, 1)[0].module(a).unwrap()
}

/// A random element of Hom(m, n).
fn random_hom(m: &Module, n: &Module, seed: u64) -> Morphism {
    let p = m.characteristic() as u64;
    hom_basis(m, n).unwrap().iter().enumerate().fold(Morphism::zero(m, n), |acc, (i, f)| {
        let c = (seed.rotate_left(7 * i as u32) ^ (i as u64 * 0x9e37)) % p;
        acc.add(&f.scale(c as u32))
    })
}

fn contained(sub: &Matrix, space: &Matrix) -> bool {
    let mut e = Echelon::new(space.characteristic(), space.rows());
    e.insert_columns(space);
    (0..sub.cols()).all(|c| e.contains(&sub.col(c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rref_is_idempotent(m in matrix()) {
        let once = m.rref().reduced;
        prop_assert_eq!(once.rref().reduced, once);
    }

    #[test]
    fn rank_nullity(m in matrix()) {
        prop_assert_eq!(m.rank() + m.kernel_basis().cols(), m.cols());
        prop_assert!(m.mul(&m.kernel_basis()).is_zero());
    }

    #[test]
    fn solve_is_consistent(m in matrix(), seed in any::<u64>()) {
        let p = m.characteristic();
        let b: Vec<u32> = (0..m.rows()).map(|i| ((seed >> (i % 60)) % p as u64) as u32).collect();
        let aug = m.hstack(&Matrix::column(p, &b));
        match m.solve(&b).unwrap() {
            Some(x) => prop_assert_eq!(m.mul_vec(&x), b),
            None => prop_assert!(aug.rank() > m.rank()),
        }
        let x0: Vec<u32> = (0..m.cols()).map(|i| ((seed >> (i % 50)) % p as u64) as u32).collect();
        let y = m.mul_vec(&x0);
        prop_assert!(m.solve(&y).unwrap().is_some());
    }
}

#[test]
fn algebra_structure_laws() {
    for a in algebras() {
        assert_eq!(a.opposite().opposite().data(), a.data());
        assert!(validate_algebra(&a.data()).is_ok());
        let total: usize = (0..a.num_idempotents()).map(|i| indecomposable_projective(&a, i).dim()).sum();
        assert_eq!(total, a.dim());
        for i in 0..a.num_idempotents() {
            let s = simple_module(&a, i);
            assert!(s.radical_basis().cols() == 0 || s.radical_basis().is_zero());
            let (rad, top) = radical_and_top(&indecomposable_projective(&a, i));
            assert!(is_isomorphic(top.target(), &s).is_true());
            assert_eq!(rad.source().dim() + 1, indecomposable_projective(&a, i).dim());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kernel_cokernel_bookkeeping((ai, seed) in sample()) {
        let a = &algebras()[ai];
        let (m, n) = (module_of(a, seed, 0), module_of(a, seed, 1));
        let f = random_hom(&m, &n, seed);
        let (k, _) = kernel(&f);
        let (c, _) = cokernel(&f);
        prop_assert_eq!(m.dim(), k.dim() + f.rank());
        prop_assert_eq!(n.dim(), f.rank() + c.dim());
    }

    #[test]
    fn pullback_of_epi_and_pushout_of_mono((ai, seed) in sample()) {
        let a = &algebras()[ai];
        let m = module_of(a, seed, 0);
        prop_assume!(!m.is_zero());
        let cover = projective_cover(&m).unwrap();
        let (k, inc) = kernel(&cover.epi);
        let y = module_of(a, seed, 1);
        let g = random_hom(&y, &m, seed);
        let sq = pullback(&cover.epi, &g).unwrap();
        // the map from the pullback to Y is epi with kernel isomorphic to ker(cover)
        prop_assert!(sq.second.is_epi());
        prop_assert!(is_isomorphic(&kernel(&sq.second).0, &k).is_true());
        let h = random_hom(&k, &y, seed ^ 1);
        let po = pushout(&inc, &h).unwrap();
        prop_assert!(po.second.is_mono());
        prop_assert!(is_isomorphic(&cokernel(&po.second).0, &m).is_true());
    }

    #[test]
    fn projective_cover_is_minimal((ai, seed) in sample()) {
        let a = &algebras()[ai];
        let m = module_of(a, seed, 0);
        let cover = projective_cover(&m).unwrap();
        let (_, inc) = kernel(&cover.epi);
        prop_assert!(contained(inc.matrix(), &cover.projective.module().radical_basis()));
    }

    #[test]
    fn hom_dual_adjunction((ai, seed) in sample()) {
        let a = &algebras()[ai];
        let (m, n) = (module_of(a, seed, 0), module_of(a, seed, 1));
        prop_assert_eq!(hom_dim(&m, &n).unwrap(), hom_dim(&n.k_dual(), &m.k_dual()).unwrap());
    }

    #[test]
    fn short_exact_sequences_are_hom_projective_exact((ai, seed) in sample()) {
        let a = &algebras()[ai];
        let m = module_of(a, seed, 0);
        prop_assume!(!m.is_zero());
        let cover = projective_cover(&m).unwrap();
        let (_, inc) = kernel(&cover.epi);
        let p = Projective::basic_regular(a).module().clone();
        let left = hom_induced_post(&p, &inc).unwrap();
        let right = hom_induced_post(&p, &cover.epi).unwrap();
        prop_assert!(right.mul(&left).is_zero());
        prop_assert_eq!(left.rank(), left.cols());
        prop_assert_eq!(right.rank(), right.rows());
        prop_assert_eq!(left.rank() + right.rank(), left.rows());
    }

    #[test]
    fn projective_dimension_is_minimal((ai, seed) in sample()) {
        let a = &algebras()[ai];
        let m = module_of(a, seed, 0);
        let n = match proj_dim(&m, 40) {
            DimensionReport::Exact { value, .. } => value,
            _ => return Ok(()),
        };
        let simples: Vec<Module> = (0..a.num_idempotents()).map(|i| simple_module(a, i)).collect();
        prop_assert!(simples.iter().all(|s| ext_dim(&m, s, n + 1).unwrap() == 0));
        let at_n = |s: &Module| if n == 0 { hom_dim(&m, s).unwrap() } else { ext_dim(&m, s, n).unwrap() };
        prop_assert!(simples.iter().any(|s| at_n(s) > 0));
    }

    #[test]
    fn gorenstein_dimension_below_projective((ai, seed) in sample()) {
        let a = &algebras()[ai];
        let m = module_of(a, seed, 0);
        let (g, p) = (gorenstein_pd(&m, 40), proj_dim(&m, 40));
        match (&g, &p) {
            (_, DimensionReport::Infinite { .. }) => {}
            (DimensionReport::Exact { value: x, .. }, DimensionReport::Exact { value: y, .. }) => prop_assert!(x <= y),
            (DimensionReport::Zero, DimensionReport::Zero) => {}
            (g, p) => prop_assert!(!p.exact().is_some() || !g.is_infinite(), "{:?} vs {:?}", g.kind(), p.kind()),
        }
    }

    #[test]
    fn injective_dimension_is_dual_projective_dimension((ai, seed) in sample()) {
        let a = &algebras()[ai];
        let m = module_of(a, seed, 0);
        prop_assert_eq!(inj_dim(&m, 40), proj_dim(&m.k_dual(), 40));
    }

    #[test]
    fn ext_balance_and_shift((ai, seed) in sample()) {
        let a = &algebras()[ai];
        let (m, n) = (module_of(a, seed, 0), module_of(a, seed, 1));
        prop_assume!(m.dim() <= 5 && n.dim() <= 5);
        let om = syzygy(&m, 1).unwrap();
        for i in 1..=4 {
            prop_assert_eq!(ext_dim(&m, &n, i).unwrap(), ext_dim(&n.k_dual(), &m.k_dual(), i).unwrap());
            prop_assert_eq!(ext_dim(&m, &n, i + 1).unwrap(), ext_dim(&om, &n, i).unwrap());
        }
    }

    #[test]
    fn replacement_keeps_end_terms_and_ladder_dims((ai, seed) in sample()) {
        let a = &algebras()[ai];
        let m = module_of(a, seed, 0);
        prop_assume!(!m.is_zero());
        let seq = two_step_resolution(&m, 40).unwrap();
        let o = oracle(OracleKind::GorensteinProjectives, a, 40);
        let regular = Projective::basic_regular(a).module().clone();
        if let Ok(w) = prop33_replace(&seq, &o, &[regular]) {
            prop_assert_eq!(w.first(), seq.first());
            prop_assert_eq!(w.last(), seq.last());
            prop_assert!(!validate_witness(&w, &[]).is_false());
        }
        if let Ok(l) = prop34_ladder(&seq, &o) {
            let d: Vec<usize> = l.side.modules.iter().map(Module::dim).collect();
            prop_assert_eq!(d.len(), 3);
            prop_assert_eq!(d[1], d[0] + d[2]);
        }
    }

    #[test]
    fn constructions_always_validate((ai, seed) in sample()) {
        let a = &algebras()[ai];
        let m = module_of(a, seed, 0);
        prop_assert!(!evaluate(ROUNDTRIP_ID, a, &[m], 40).is_fail());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Re-running a sample from its presentations reproduces the outcome.
    #[test]
    fn samples_replay_bit_for_bit((ai, seed) in sample(), pi in 0usize..PROPERTY_IDS.len(), index in 0usize..1000) {
        let a = &algebras()[ai];
        let id = PROPERTY_IDS[pi];
        let arity = homcalc::harness::property_arity(id).unwrap();
        let pres = draw_sample(a, seed, index, arity);
        let ms: Vec<Module> = pres.iter().map(|p| p.module(a).unwrap()).collect();
        let first = evaluate(id, a, &ms, 40);
        prop_assert_eq!(check_presentations(id, a, &pres, 40).unwrap(), first);
    }

    /// A low cutoff never produces a verdict contradicted at a higher one.
    #[test]
    fn low_cutoff_passes_are_sound((ai, seed) in sample(), pi in 0usize..PROPERTY_IDS.len()) {
        let a = &algebras()[ai];
        let id = PROPERTY_IDS[pi];
        let arity = homcalc::harness::property_arity(id).unwrap();
        let ms: Vec<Module> = draw_sample(a, seed, 0, arity).iter().map(|p| p.module(a).unwrap()).collect();
        let low = evaluate(id, a, &ms, 1);
        let high = evaluate(id, a, &ms, 40);
        prop_assert!(!high.is_fail());
        if low == Outcome::Pass {
            prop_assert!(!matches!(high, Outcome::Fail(_)));
        }
    }

    /// Candidates need certified membership, so no cutoff produces one on the corpus.
    #[test]
    fn selfinjectivity_scan_has_no_false_candidates(ai in 0usize..4, cutoff in 0usize..6) {
        let c = &corpus()[ai];
        let r = scan("CONJ-5.18-2", c.name, &c.algebra, &CheckConfig { samples: 1, cutoff, seed: 0 }).unwrap();
        let is_candidate = matches!(r.verdict, ScanVerdict::CandidateCounterexample { .. });
        prop_assert!(!is_candidate);
    }
}
