use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{Echelon, Matrix};

use super::{direct_sum, indecomposable_projective, kernel, Module, Morphism};

/// A projective module `A e_{j_1} + ... + A e_{j_r}` with its decomposition.
///
/// The underlying basis is the concatenation of the bases of the summands;
/// the `s`-th generator is the idempotent `e_{j_s}` of the `s`-th summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projective {
    summands: Vec<usize>,
    module: Module,
    offsets: Vec<usize>,
}

impl Projective {
    pub fn new(a: &Arc<Algebra>, summands: Vec<usize>) -> Projective {
        let parts: Vec<Module> = summands.iter().map(|&j| indecomposable_projective(a, j)).collect();
        let mut offsets = Vec::with_capacity(parts.len());
        let mut off = 0;
        for m in &parts {
            offsets.push(off);
            off += m.dim();
        }
        let module = direct_sum(a, &parts).expect("same algebra").module;
        Projective { summands, module, offsets }
    }

    /// `P(0)^{m_0} + P(1)^{m_1} + ...`
    pub fn from_multiplicities(a: &Arc<Algebra>, mults: &[usize]) -> Projective {
        let summands = mults.iter().enumerate().flat_map(|(j, &m)| std::iter::repeat_n(j, m)).collect();
        Projective::new(a, summands)
    }

    /// Every indecomposable projective once.
    pub fn basic_regular(a: &Arc<Algebra>) -> Projective {
        Projective::new(a, (0..a.num_idempotents()).collect())
    }

    pub fn zero(a: &Arc<Algebra>) -> Projective {
        Projective::new(a, Vec::new())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.module.algebra()
    }

    pub fn summands(&self) -> &[usize] {
        &self.summands
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.algebra().num_idempotents()];
        for &j in &self.summands {
            m[j] += 1;
        }
        m
    }

    /// Coordinates of the `s`-th generator.
    pub fn generator(&self, s: usize) -> Vec<u32> {
        let a = self.algebra();
        let j = self.summands[s];
        let local = a.projective_basis(j).of_vec(a.idempotent(j));
        let mut v = vec![0; self.module.dim()];
        v[self.offsets[s]..self.offsets[s] + local.len()].copy_from_slice(&local);
        v
    }

    /// The `t`-th component of `v`, as an element of the algebra.
    pub fn component(&self, v: &[u32], t: usize) -> Vec<u32> {
        let b = self.algebra().projective_basis(self.summands[t]).basis();
        let off = self.offsets[t];
        b.mul_vec(&v[off..off + b.cols()])
    }

    /// Inverse of [`Projective::component`] summed over summands.
    pub fn assemble(&self, parts: &[Vec<u32>]) -> Vec<u32> {
        let mut v = vec![0; self.module.dim()];
        for (t, x) in parts.iter().enumerate() {
            let local = self.algebra().projective_basis(self.summands[t]).of_vec(x);
            v[self.offsets[t]..self.offsets[t] + local.len()].copy_from_slice(&local);
        }
        v
    }
}

/// A map between decomposed projectives, `g_s -> sum_t c[s][t] g'_t` with
/// `c[s][t]` in `e_{j_s} A e_{j'_t}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjMap {
    pub source: Projective,
    pub target: Projective,
    pub coeffs: Vec<Vec<Vec<u32>>>,
}

impl ProjMap {
    pub fn from_morphism(source: &Projective, target: &Projective, f: &Morphism) -> ProjMap {
        let coeffs = (0..source.rank())
            .map(|s| {
                let v = f.matrix().mul_vec(&source.generator(s));
                (0..target.rank()).map(|t| target.component(&v, t)).collect()
            })
            .collect();
        ProjMap { source: source.clone(), target: target.clone(), coeffs }
    }

    pub fn to_morphism(&self) -> Morphism {
        let a = self.source.algebra();
        let p = a.characteristic();
        let mut m = Matrix::zero(p, self.target.module.dim(), self.source.module.dim());
        for s in 0..self.source.rank() {
            let b = a.projective_basis(self.source.summands[s]).basis();
            for c in 0..b.cols() {
                let x = b.col(c);
                let parts: Vec<Vec<u32>> = self.coeffs[s].iter().map(|k| a.mul(&x, k)).collect();
                let col = self.target.assemble(&parts);
                for (r, v) in col.into_iter().enumerate() {
                    m.set(r, self.source.offsets[s] + c, v);
                }
            }
        }
        Morphism::from_parts(self.source.module.clone(), self.target.module.clone(), m)
    }

    /// `Hom(-, A)` applied to the map: a map between the dual projectives
    /// over the opposite algebra, with the coefficient array transposed.
    pub fn star(&self) -> ProjMap {
        let op = self.source.algebra().opposite();
        let src = Projective::new(&op, self.target.summands.clone());
        let tgt = Projective::new(&op, self.source.summands.clone());
        let coeffs = (0..src.rank())
            .map(|t| (0..tgt.rank()).map(|s| self.coeffs[s][t].clone()).collect())
            .collect();
        ProjMap { source: src, target: tgt, coeffs }
    }
}

/// `f*` for a morphism between recorded projectives.
pub fn star_dual_projective_map(f: &Morphism, source: &Projective, target: &Projective) -> Result<Morphism> {
    if f.source() != source.module() || f.target() != target.module() {
        return Err(Error::SourceNotProjective);
    }
    Ok(ProjMap::from_morphism(source, target, f).star().to_morphism())
}

pub struct Cover {
    pub projective: Projective,
    pub epi: Morphism,
}

/// Minimal projective cover.
pub fn projective_cover(m: &Module) -> Result<Cover> {
    let a = m.algebra().clone();
    let mut span = Echelon::new(m.characteristic(), m.dim());
    span.insert_columns(&m.radical_basis());
    let mut gens: Vec<(usize, Vec<u32>)> = Vec::new();
    for i in 0..a.num_idempotents() {
        if span.dim() == m.dim() {
            break;
        }
        let ei = m.idempotent_action(i);
        let local = ei.column_space();
        for c in 0..local.cols() {
            let v = local.col(c);
            if span.contains(&v) {
                continue;
            }
            let b = a.projective_basis(i).basis();
            for k in 0..b.cols() {
                span.insert(&m.action_by(&b.col(k)).mul_vec(&v));
            }
            gens.push((i, v));
        }
    }
    if span.dim() != m.dim() {
        return Err(Error::TopDecompositionFailed("generators do not span the module".into()));
    }
    let proj = Projective::new(&a, gens.iter().map(|g| g.0).collect());
    let p = a.characteristic();
    let mut mat = Matrix::zero(p, m.dim(), proj.module.dim());
    for (s, (j, v)) in gens.iter().enumerate() {
        let b = a.projective_basis(*j).basis();
        for k in 0..b.cols() {
            let col = m.action_by(&b.col(k)).mul_vec(v);
            for (r, x) in col.into_iter().enumerate() {
                mat.set(r, proj.offsets[s] + k, x);
            }
        }
    }
    let epi = Morphism::from_parts(proj.module.clone(), m.clone(), mat);
    if !epi.is_epi() {
        return Err(Error::TopDecompositionFailed("cover is not surjective".into()));
    }
    let (_, incl) = kernel(&epi);
    let mut rad = Echelon::new(p, proj.module.dim());
    rad.insert_columns(&proj.module.radical_basis());
    let kb = incl.matrix();
    if (0..kb.cols()).any(|c| !rad.contains(&kb.col(c))) {
        return Err(Error::TopDecompositionFailed("kernel of the cover leaves the radical".into()));
    }
    Ok(Cover { projective: proj, epi })
}

impl Module {
    pub fn is_projective(&self) -> Result<bool> {
        Ok(projective_cover(self)?.projective.module.dim() == self.dim())
    }

    /// Multiplicity of each simple in the top.
    pub fn top_multiplicities(&self) -> Vec<usize> {
        let rad = self.radical_basis();
        let (top, _) = self.quotient(rad);
        top.dimension_vector()
    }
}
