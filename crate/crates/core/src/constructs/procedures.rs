use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::homology::{
    gorenstein_pd, perp_dim, proj_dim, torsionfree_dim_upper, DimensionReport, Resolution, ShortExact,
};
use crate::modrep::{
    cokernel, epi_mono, factor_through_epi, factor_through_mono, kernel, pullback, pushout, Module, Morphism,
    Projective, Square,
};

use super::oracle::{oracle, Flag, OracleKind, SubcategoryOracle};
use super::{hom_exact, ExactSequenceWitness, MembershipClaim, ProperClaim, Side};

/// Main sequence plus the side sequence produced by a ladder.
#[derive(Clone, Debug)]
pub struct Ladder {
    pub main: ExactSequenceWitness,
    pub side: ExactSequenceWitness,
}

/// `0 -> A -> B -> T -> 0` together with the resolution of `B` it came from.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub sequence: ExactSequenceWitness,
    pub resolution: ExactSequenceWitness,
    pub n: usize,
    pub pd_b: DimensionReport,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::BadSequence(msg.into())
}

fn compose(second: &Morphism, first: &Morphism) -> Result<Morphism> {
    second.compose(first)
}

fn corestrict(mono: &Morphism, g: &Morphism) -> Result<Morphism> {
    factor_through_mono(mono, g).ok_or_else(|| bad("map does not land in the expected submodule"))
}

fn factor(epi: &Morphism, g: &Morphism) -> Result<Morphism> {
    factor_through_epi(epi, g).ok_or_else(|| bad("map does not vanish on the expected kernel"))
}

/// The map `X -> object` of a pullback square with components `a` and `b`.
fn into_pullback(sq: &Square, a: &Matrix, b: &Matrix, source: &Module) -> Result<Morphism> {
    let incl = sq.first.matrix().vstack(sq.second.matrix());
    let x = incl.solve_matrix(&a.vstack(b)).ok_or_else(|| bad("map does not factor through the pullback"))?;
    Ok(Morphism::from_parts(source.clone(), sq.object.clone(), x))
}

/// The map `object -> Y` of a pushout square with components `a` and `b`.
fn out_of_pushout(sq: &Square, a: &Matrix, b: &Matrix, target: &Module) -> Result<Morphism> {
    let proj = sq.first.matrix().hstack(sq.second.matrix());
    let xt = proj
        .transpose()
        .solve_matrix(&a.hstack(b).transpose())
        .ok_or_else(|| bad("map does not factor through the pushout"))?;
    Ok(Morphism::from_parts(sq.object.clone(), target.clone(), xt.transpose()))
}

fn check_oracle(o: &SubcategoryOracle) -> Result<()> {
    if o.flags.closed_extensions == Flag::No {
        return Err(Error::UnsupportedKind(format!("{} is not closed under extensions", o.name())));
    }
    Ok(())
}

fn check_input(seq: &ExactSequenceWitness, o: &SubcategoryOracle, members: std::ops::Range<usize>) -> Result<()> {
    if !seq.is_exact() {
        return Err(bad("input sequence is not exact"));
    }
    for i in members {
        o.require(&seq.modules[i], &format!("input node {i}"))?;
    }
    Ok(())
}

/// Replays every claim of a freshly built witness and refuses to emit it
/// unless all of them are certified.
fn certify(w: &ExactSequenceWitness, o: &SubcategoryOracle) -> Result<()> {
    if !w.is_exact() {
        return Err(bad("constructed sequence is not exact"));
    }
    for c in &w.memberships {
        let oc = if c.class == o.kind { o.clone() } else { oracle(c.class, &o.algebra, o.cutoff) };
        oc.require(&w.modules[c.node], &format!("output node {}", c.node))?;
    }
    for c in &w.properness {
        if !hom_exact(w, &c.object, c.side) {
            return Err(bad(format!("output is not {} exact ({:?})", c.class, c.side)));
        }
    }
    Ok(())
}

fn claims(nodes: impl IntoIterator<Item = usize>, class: OracleKind) -> Vec<MembershipClaim> {
    nodes.into_iter().map(|node| MembershipClaim { node, class }).collect()
}

fn test_claims(
    input: &ExactSequenceWitness,
    tests: &[Module],
    side: Side,
) -> Vec<ProperClaim> {
    tests
        .iter()
        .filter(|x| hom_exact(input, x, side))
        .map(|x| ProperClaim {
            class: "test object".into(),
            side,
            object: x.clone(),
            note: "input sequence is exact under this functor".into(),
        })
        .collect()
}

fn regular_claim(o: &SubcategoryOracle, side: Side, note: &str) -> ProperClaim {
    ProperClaim {
        class: "Projectives".into(),
        side,
        object: Projective::basic_regular(&o.algebra).module().clone(),
        note: note.into(),
    }
}

struct Replaced {
    into_t: Morphism,
    t_to_c: Morphism,
    c_to_a: Morphism,
}

/// Two pullbacks turning `M -> T1 -> T0 -> A` into `M -> T -> C -> A`.
fn replace33(m_t1: &Morphism, t1_t0: &Morphism, t0_a: &Morphism, o: &SubcategoryOracle) -> Result<Replaced> {
    let gen = o.proper_generator_seq(t1_t0.target())?;
    let (_, iota) = kernel(t0_a);
    let e = corestrict(&iota, t1_t0)?;
    let w = pullback(&gen.epi, &iota)?;
    let t = pullback(&w.second, &e)?;
    let p = m_t1.source().characteristic();
    let zero = Matrix::zero(p, w.object.dim(), m_t1.source().dim());
    let into_t = into_pullback(&t, &zero, m_t1.matrix(), m_t1.source())?;
    let t_to_c = compose(&w.first, &t.first)?;
    let c_to_a = compose(t0_a, &gen.epi)?;
    Ok(Replaced { into_t, t_to_c, c_to_a })
}

/// `0 -> M -> T1 -> T0 -> A -> 0` to `0 -> M -> T -> C -> A -> 0` with
/// `T` in `o` and `C` in its generator class. Test objects `X` for which
/// the input is `Hom(X, -)`-exact are recorded and rechecked on the output.
pub fn prop33_replace(
    seq: &ExactSequenceWitness,
    o: &SubcategoryOracle,
    tests: &[Module],
) -> Result<ExactSequenceWitness> {
    check_oracle(o)?;
    if seq.len() != 4 {
        return Err(bad(format!("expected 0->M->T1->T0->A->0, got {} terms", seq.len())));
    }
    if !o.has_generator() {
        return Err(Error::NoGeneratorData(o.name().into()));
    }
    check_input(seq, o, 1..3)?;
    let r = replace33(&seq.maps[0], &seq.maps[1], &seq.maps[2], o)?;
    let mut w = ExactSequenceWitness::from_maps(vec![r.into_t, r.t_to_c, r.c_to_a], o.cutoff);
    w.memberships = claims([1], o.kind);
    w.memberships.extend(claims([2], o.generator_class()));
    w.properness = test_claims(seq, tests, Side::Covariant);
    certify(&w, o)?;
    Ok(w)
}

fn ladder34(maps: &[Morphism], o: &SubcategoryOracle) -> Result<(Vec<Morphism>, Vec<Morphism>)> {
    let n = maps.len() - 1;
    if n == 1 {
        let gen = o.proper_generator_seq(maps[0].target())?;
        let sq = pullback(&gen.epi, &maps[0])?;
        let p = gen.left.characteristic();
        let zero = Matrix::zero(p, maps[0].source().dim(), gen.left.dim());
        let t_to_n = into_pullback(&sq, gen.mono.matrix(), &zero, &gen.left)?;
        let c_to_a = compose(&maps[1], &gen.epi)?;
        return Ok((vec![sq.first.clone(), c_to_a], vec![t_to_n, sq.second.clone()]));
    }
    let x_t1 = &maps[n - 2];
    let t1_t0 = &maps[n - 1];
    let t0_a = &maps[n];
    let (_, kincl) = kernel(t1_t0);
    let x_k = corestrict(&kincl, x_t1)?;
    let r = replace33(&kincl, t1_t0, t0_a, o)?;
    let (e, i) = epi_mono(&r.t_to_c);
    let mut rest: Vec<Morphism> = maps[..n - 2].to_vec();
    rest.push(compose(&r.into_t, &x_k)?);
    rest.push(e);
    let (mut main, side) = ladder34(&rest, o)?;
    let last = main.pop().expect("non-empty");
    main.push(compose(&i, &last)?);
    main.push(r.c_to_a);
    Ok((main, side))
}

/// `0 -> M -> T_{n-1} -> ... -> T_0 -> A -> 0` to the main sequence
/// `0 -> N -> C_{n-1} -> ... -> C_0 -> A -> 0` and the side sequence
/// `0 -> T -> N -> M -> 0`.
pub fn prop34_ladder(seq: &ExactSequenceWitness, o: &SubcategoryOracle) -> Result<Ladder> {
    check_oracle(o)?;
    if seq.len() < 3 {
        return Err(bad("need at least one middle term"));
    }
    if !o.has_generator() {
        return Err(Error::NoGeneratorData(o.name().into()));
    }
    let n = seq.len() - 2;
    check_input(seq, o, 1..n + 1)?;
    let (main, side) = ladder34(&seq.maps, o)?;
    let mut main = ExactSequenceWitness::from_maps(main, o.cutoff);
    main.memberships = claims(1..n + 1, o.generator_class());
    let mut side = ExactSequenceWitness::from_maps(side, o.cutoff);
    side.memberships = claims([0], o.kind);
    side.properness =
        vec![regular_claim(o, Side::Covariant, "Hom(P, -) is exact for projective P; recorded as vacuous")];
    certify(&main, o)?;
    certify(&side, o)?;
    Ok(Ladder { main, side })
}

fn oracle_dimension(a: &Module, o: &SubcategoryOracle, cutoff: usize) -> Result<usize> {
    let report = match o.kind {
        OracleKind::Projectives => proj_dim(a, cutoff),
        OracleKind::GorensteinProjectives => gorenstein_pd(a, cutoff),
        OracleKind::PerpRegular => {
            let reg = Projective::basic_regular(a.algebra()).module().clone();
            perp_dim(a, &[reg], cutoff)
        }
        OracleKind::TorsionfreeInfty | OracleKind::CoresTildeProj => torsionfree_dim_upper(a, cutoff),
        OracleKind::Injectives | OracleKind::GorensteinInjectives => {
            return Err(Error::UnsupportedKind(format!("{} has no projective resolution witness", o.name())))
        }
    };
    match report {
        DimensionReport::Zero => Ok(0),
        DimensionReport::Exact { value, .. } => Ok(value),
        DimensionReport::UpperBound { value, .. }
            if matches!(o.kind, OracleKind::TorsionfreeInfty | OracleKind::CoresTildeProj) =>
        {
            Ok(value)
        }
        r => Err(Error::DimensionNotExact(r.summary())),
    }
}

/// `0 -> K_n -> P_{n-1} -> ... -> P_0 -> A -> 0`, the minimal resolution cut
/// at the `o`-dimension `n`, with `K_n` certified in `o`.
pub fn thm36_witness(a: &Module, o: &SubcategoryOracle, cutoff: usize) -> Result<ExactSequenceWitness> {
    let n = oracle_dimension(a, o, cutoff)?;
    let maps = if n == 0 {
        vec![a.identity()]
    } else {
        let mut res = Resolution::new(a);
        res.ensure(n)?;
        if res.terms().len() < n {
            return Err(Error::DimensionNotExact(format!("resolution stops before {n}")));
        }
        let mut maps = vec![res.inclusion(n - 1).clone()];
        for k in (1..n).rev() {
            maps.push(compose(res.inclusion(k - 1), res.cover(k))?);
        }
        maps.push(res.cover(0).clone());
        maps
    };
    let mut w = ExactSequenceWitness::from_maps(maps, cutoff);
    w.memberships = claims([0], o.kind);
    w.memberships.extend(claims(1..n + 1, OracleKind::Projectives));
    let o = SubcategoryOracle { cutoff, ..o.clone() };
    certify(&w, &o)?;
    Ok(w)
}

/// Two pushouts turning `M -> T0 -> T1 -> A` into `M -> C -> T -> A`.
fn replace43(m_t0: &Morphism, t0_t1: &Morphism, t1_a: &Morphism, o: &SubcategoryOracle) -> Result<Replaced> {
    let cog: ShortExact = o.coproper_cogenerator_seq(t0_t1.source())?;
    let (e, iota) = epi_mono(t0_t1);
    let w = pushout(&cog.mono, &e)?;
    let t = pushout(&w.second, &iota)?;
    let p = t1_a.target().characteristic();
    let zero = Matrix::zero(p, t1_a.target().dim(), w.object.dim());
    let t_to_a = out_of_pushout(&t, &zero, t1_a.matrix(), t1_a.target())?;
    Ok(Replaced {
        into_t: compose(&cog.mono, m_t0)?,
        t_to_c: compose(&t.first, &w.first)?,
        c_to_a: t_to_a,
    })
}

/// `0 -> M -> T^0 -> T^1 -> A -> 0` to `0 -> M -> C -> T -> A -> 0` with
/// `C` in the generator class and `T` in `o`. Test objects `X` for which the
/// input is `Hom(-, X)`-exact are rechecked on the output.
pub fn prop43_replace(
    seq: &ExactSequenceWitness,
    o: &SubcategoryOracle,
    tests: &[Module],
) -> Result<ExactSequenceWitness> {
    check_oracle(o)?;
    if seq.len() != 4 {
        return Err(bad(format!("expected 0->M->T0->T1->A->0, got {} terms", seq.len())));
    }
    if !o.has_cogenerator() {
        return Err(Error::NoCogeneratorData(o.name().into()));
    }
    check_input(seq, o, 1..3)?;
    let r = replace43(&seq.maps[0], &seq.maps[1], &seq.maps[2], o)?;
    let mut w = ExactSequenceWitness::from_maps(vec![r.into_t, r.t_to_c, r.c_to_a], o.cutoff);
    w.memberships = claims([1], o.generator_class());
    w.memberships.extend(claims([2], o.kind));
    w.properness = test_claims(seq, tests, Side::Contravariant);
    certify(&w, o)?;
    Ok(w)
}

fn ladder44(maps: &[Morphism], o: &SubcategoryOracle) -> Result<(Vec<Morphism>, Vec<Morphism>)> {
    let n = maps.len() - 1;
    if n == 1 {
        let cog = o.coproper_cogenerator_seq(maps[0].target())?;
        let sq = pushout(&cog.mono, &maps[1])?;
        let p = cog.right.characteristic();
        let zero = Matrix::zero(p, cog.right.dim(), maps[1].target().dim());
        let b_to_t = out_of_pushout(&sq, cog.epi.matrix(), &zero, &cog.right)?;
        let m_c = compose(&cog.mono, &maps[0])?;
        return Ok((vec![m_c, sq.first.clone()], vec![sq.second.clone(), b_to_t]));
    }
    let (_, kproj) = cokernel(&maps[1]);
    let k_x = factor(&kproj, &maps[2])?;
    let r = replace43(&maps[0], &maps[1], &kproj, o)?;
    let (e, i) = epi_mono(&r.t_to_c);
    let mut rest = vec![i, compose(&k_x, &r.c_to_a)?];
    rest.extend_from_slice(&maps[3..]);
    let (tail, side) = ladder44(&rest, o)?;
    let mut main = vec![r.into_t, compose(&tail[0], &e)?];
    main.extend_from_slice(&tail[1..]);
    Ok((main, side))
}

/// `0 -> M -> T^0 -> ... -> T^{n-1} -> A -> 0` to the main sequence
/// `0 -> M -> C^0 -> ... -> C^{n-1} -> B -> 0` and the side sequence
/// `0 -> A -> B -> T -> 0`.
pub fn prop44_ladder(seq: &ExactSequenceWitness, o: &SubcategoryOracle) -> Result<Ladder> {
    check_oracle(o)?;
    if seq.len() < 3 {
        return Err(bad("need at least one middle term"));
    }
    if !o.has_cogenerator() {
        return Err(Error::NoCogeneratorData(o.name().into()));
    }
    let n = seq.len() - 2;
    check_input(seq, o, 1..n + 1)?;
    build44(&seq.maps, o)
}

fn build44(maps: &[Morphism], o: &SubcategoryOracle) -> Result<Ladder> {
    let n = maps.len() - 1;
    let (main, side) = ladder44(maps, o)?;
    let mut main = ExactSequenceWitness::from_maps(main, o.cutoff);
    main.memberships = claims(1..n + 1, o.generator_class());
    let mut side = ExactSequenceWitness::from_maps(side, o.cutoff);
    side.memberships = claims([2], o.kind);
    if matches!(o.kind, OracleKind::Projectives | OracleKind::GorensteinProjectives) {
        side.properness = vec![regular_claim(o, Side::Contravariant, "Ext^1(T, P) = 0 for T in the class")];
    }
    certify(&main, o)?;
    certify(&side, o)?;
    Ok(Ladder { main, side })
}

/// `0 -> A -> B -> T -> 0` with `T` in `o` and `B` resolved by `n + 1`
/// generator-class terms, `n` the `o`-dimension of `A`.
pub fn cor45_approximation(a: &Module, o: &SubcategoryOracle, cutoff: usize) -> Result<Approximation> {
    check_oracle(o)?;
    if !o.has_cogenerator() {
        return Err(Error::NoCogeneratorData(o.name().into()));
    }
    let o = SubcategoryOracle { cutoff, ..o.clone() };
    let res = thm36_witness(a, &o, cutoff)?;
    let n = res.len() - 2;
    let (sequence, resolution) = if n == 0 {
        let cog = o.coproper_cogenerator_seq(a)?;
        let mut seq = ExactSequenceWitness::from_maps(vec![cog.mono.clone(), cog.epi.clone()], cutoff);
        seq.memberships = claims([2], o.kind);
        certify(&seq, &o)?;
        let mut main = ExactSequenceWitness::from_maps(vec![cog.middle.identity()], cutoff);
        main.memberships = claims([0], o.generator_class());
        certify(&main, &o)?;
        (seq, main)
    } else {
        let first = &res.modules[0];
        let z = Module::zero(a.algebra());
        let mut maps = vec![Morphism::zero(&z, first)];
        maps.extend(res.maps.iter().cloned());
        let l = build44(&maps, &o)?;
        (l.side, l.main)
    };
    let pd_b = proj_dim(&sequence.modules[1], cutoff);
    Ok(Approximation { sequence, resolution, n, pd_b })
}
