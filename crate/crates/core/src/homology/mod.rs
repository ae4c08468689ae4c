//! Minimal projective resolutions, Ext, the transpose and the homological
//! dimensions built on them.

mod dims;
mod gp;

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::modrep::{direct_sum, is_isomorphic, kernel, projective_cover, Module, Morphism, ProjMap, Projective};
use crate::verdict::{Evidence, Verdict};

pub use dims::{
    gorenstein_id, gorenstein_pd, inj_dim, is_gorenstein_projective, is_torsionfree_infty, perp_dim, perp_test,
    proj_dim, torsionfree_dim_upper, DimWitness, DimensionReport,
};
pub use gp::{gp_coresolution_step, hom_to_regular, ShortExact};
pub(crate) use gp::left_approximation_sequence;

/// Default cutoff for resolutions and Ext windows.
pub const DEFAULT_CUTOFF: usize = 40;
/// Syzygies above this dimension are not resolved further.
pub const TERM_CAP: usize = 1024;
/// Syzygies above this dimension are not compared for periodicity.
pub const PERIODICITY_CAP: usize = 64;

/// `(Omega^from)^multiplicity = Omega^to` with an explicit isomorphism from
/// the direct sum. Ext against any module, membership in additive classes
/// closed under summands, and finiteness of pd all repeat along it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Periodicity {
    pub from: usize,
    pub to: usize,
    pub multiplicity: usize,
    pub iso: Matrix,
}

/// A minimal projective resolution, grown on demand.
///
/// `syzygies[k]` is `Omega^k`, `terms[k]` is `P_k` with `covers[k]: P_k -> Omega^k`
/// and `inclusions[k]: Omega^{k+1} -> P_k`.
#[derive(Clone, Debug)]
pub struct Resolution {
    syzygies: Vec<Module>,
    terms: Vec<Projective>,
    covers: Vec<Morphism>,
    inclusions: Vec<Morphism>,
    differentials: Vec<ProjMap>,
    periodicity: Option<Periodicity>,
    ext_ranks: Vec<(Module, Vec<Option<usize>>)>,
    cap: usize,
}

impl Resolution {
    pub fn new(m: &Module) -> Resolution {
        Resolution {
            syzygies: vec![m.clone()],
            terms: Vec::new(),
            covers: Vec::new(),
            inclusions: Vec::new(),
            differentials: Vec::new(),
            periodicity: None,
            ext_ranks: Vec::new(),
            cap: TERM_CAP,
        }
    }

    pub fn module(&self) -> &Module {
        &self.syzygies[0]
    }

    /// Number of computed terms `P_0..P_{len-1}`.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Projective dimension, once a zero syzygy has been reached.
    pub fn finite_length(&self) -> Option<usize> {
        let k = self.syzygies.iter().position(Module::is_zero)?;
        Some(k.saturating_sub(1))
    }

    pub fn periodicity(&self) -> Option<&Periodicity> {
        self.periodicity.as_ref()
    }

    pub fn is_minimal(&self) -> bool {
        true
    }

    /// Computes one more term. Returns `false` when the resolution is
    /// already finite.
    pub fn extend(&mut self) -> Result<bool> {
        let k = self.terms.len();
        let omega = self.syzygies[k].clone();
        if omega.is_zero() && k > 0 {
            return Ok(false);
        }
        if omega.dim() > self.cap {
            return Err(Error::CutoffExceeded(k));
        }
        let cover = projective_cover(&omega)?;
        let (next, incl) = kernel(&cover.epi);
        if k > 0 {
            let d = self.inclusions[k - 1].compose(&cover.epi)?;
            self.differentials.push(ProjMap::from_morphism(&cover.projective, &self.terms[k - 1], &d));
        }
        self.terms.push(cover.projective);
        self.covers.push(cover.epi);
        self.inclusions.push(incl);
        self.syzygies.push(next);
        self.detect_periodicity();
        Ok(true)
    }

    fn detect_periodicity(&mut self) {
        if self.periodicity.is_some() {
            return;
        }
        let b = self.syzygies.len() - 1;
        let mb = &self.syzygies[b];
        if mb.is_zero() || mb.dim() > PERIODICITY_CAP {
            return;
        }
        let dv = mb.dimension_vector();
        for a in 0..b {
            let ma = &self.syzygies[a];
            if ma.is_zero() || !mb.dim().is_multiple_of(ma.dim()) {
                continue;
            }
            let k = mb.dim() / ma.dim();
            if ma.dimension_vector().iter().map(|d| d * k).ne(dv.iter().copied()) {
                continue;
            }
            let copies = if k == 1 {
                ma.clone()
            } else {
                match direct_sum(ma.algebra(), &vec![ma.clone(); k]) {
                    Ok(s) => s.module,
                    Err(_) => continue,
                }
            };
            if let Verdict::CertifiedTrue { evidence: Evidence::Isomorphism { matrix } } = is_isomorphic(&copies, mb) {
                self.periodicity = Some(Periodicity { from: a, to: b, multiplicity: k, iso: matrix });
                return;
            }
        }
    }

    /// Grows until `P_0..P_{n-1}` exist or the resolution is finite.
    pub fn ensure(&mut self, n: usize) -> Result<()> {
        while self.terms.len() < n {
            if !self.extend()? {
                break;
            }
        }
        Ok(())
    }

    /// Grows until finite, periodic, or `P_cutoff` exists.
    pub fn run(&mut self, cutoff: usize) -> Result<()> {
        while self.terms.len() <= cutoff && self.periodicity.is_none() {
            if !self.extend()? {
                break;
            }
        }
        Ok(())
    }

    /// `P_k`, zero past the end of a finite resolution.
    pub fn term(&mut self, k: usize) -> Result<Projective> {
        self.ensure(k + 1)?;
        Ok(self.terms.get(k).cloned().unwrap_or_else(|| Projective::zero(self.module().algebra())))
    }

    pub fn terms(&self) -> &[Projective] {
        &self.terms
    }

    pub fn syzygies(&self) -> &[Module] {
        &self.syzygies
    }

    pub fn augmentation(&self) -> Option<&Morphism> {
        self.covers.first()
    }

    /// Cover `P_k -> Omega^k`.
    pub fn cover(&self, k: usize) -> &Morphism {
        &self.covers[k]
    }

    /// Inclusion `Omega^{k+1} -> P_k`.
    pub fn inclusion(&self, k: usize) -> &Morphism {
        &self.inclusions[k]
    }

    /// `Omega^n`.
    pub fn syzygy(&mut self, n: usize) -> Result<Module> {
        self.ensure(n)?;
        Ok(self.syzygies.get(n).cloned().unwrap_or_else(|| Module::zero(self.module().algebra())))
    }

    /// `d_k: P_k -> P_{k-1}` for `k >= 1`, as a map of projectives.
    pub fn differential(&mut self, k: usize) -> Result<ProjMap> {
        assert!(k >= 1);
        self.ensure(k + 1)?;
        if let Some(d) = self.differentials.get(k - 1) {
            return Ok(d.clone());
        }
        let src = self.term(k)?;
        let tgt = self.term(k - 1)?;
        let coeffs = vec![vec![Vec::new(); tgt.rank()]; src.rank()];
        Ok(ProjMap { source: src, target: tgt, coeffs })
    }

    fn rank_cache(&mut self, n: &Module) -> usize {
        if let Some(i) = self.ext_ranks.iter().position(|(m, _)| m == n) {
            return i;
        }
        self.ext_ranks.push((n.clone(), Vec::new()));
        self.ext_ranks.len() - 1
    }

    /// Rank of `Hom(d_k, N): Hom(P_{k-1}, N) -> Hom(P_k, N)`.
    fn coboundary_rank(&mut self, n: &Module, k: usize) -> Result<usize> {
        if k == 0 {
            return Ok(0);
        }
        let slot = self.rank_cache(n);
        if let Some(Some(r)) = self.ext_ranks[slot].1.get(k) {
            return Ok(*r);
        }
        let d = self.differential(k)?;
        let r = if d.source.rank() == 0 || d.target.rank() == 0 || n.is_zero() {
            0
        } else {
            coboundary_matrix(&d, n).rank()
        };
        let cache = &mut self.ext_ranks[slot].1;
        if cache.len() <= k {
            cache.resize(k + 1, None);
        }
        cache[k] = Some(r);
        Ok(r)
    }

    /// `dim Ext^i(M, N)` from this resolution.
    pub fn ext(&mut self, n: &Module, i: usize) -> Result<usize> {
        n.same_algebra(self.module())?;
        while self.periodicity.is_none() && self.terms.len() < i + 2 {
            if !self.extend()? {
                break;
            }
        }
        // Ext^i(M, N) = Ext^{i-to}((Omega^from)^k, N) = k Ext^{i-to+from}(M, N)
        if let Some(per) = &self.periodicity {
            if i > per.to {
                let (shift, k) = (per.to - per.from, per.multiplicity);
                return Ok(k * self.ext(n, i - shift)?);
            }
        }
        let pi = self.term(i)?;
        let ranks = n.dimension_vector();
        let hom: usize = pi.summands().iter().map(|&j| ranks[j]).sum();
        let r_next = self.coboundary_rank(n, i + 1)?;
        let r_prev = self.coboundary_rank(n, i)?;
        Ok(hom - r_next - r_prev)
    }

    /// Minimal presentation `P_{n+1} -> P_n` of `Omega^n`, dualized; its
    /// cokernel is the transpose of `Omega^n`.
    pub fn transpose_of_syzygy(&mut self, n: usize) -> Result<Module> {
        let op = self.module().algebra().opposite();
        let d = self.differential(n + 1)?;
        if d.target.rank() == 0 {
            return Ok(Module::zero(&op));
        }
        let star = d.star().to_morphism();
        Ok(crate::modrep::cokernel(&star).0)
    }
}

/// Block matrix of `Hom(d, N)` with blocks `N(c[s][t]) E_{j_t}`, where the
/// columns of `E_j` span `e_j N`.
fn coboundary_matrix(d: &ProjMap, n: &Module) -> Matrix {
    let p = n.characteristic();
    let bases: Vec<Matrix> = (0..n.algebra().num_idempotents()).map(|j| n.idempotent_action(j).column_space()).collect();
    let widths: Vec<usize> = d.target.summands().iter().map(|&j| bases[j].cols()).collect();
    let total: usize = widths.iter().sum();
    let mut m = Matrix::zero(p, d.source.rank() * n.dim(), total);
    for s in 0..d.source.rank() {
        let mut col = 0;
        for (t, &j) in d.target.summands().iter().enumerate() {
            let c = &d.coeffs[s][t];
            if c.iter().any(|&x| x != 0) {
                let block = n.action_by(c).mul(&bases[j]);
                m.set_block(s * n.dim(), col, &block);
            }
            col += widths[t];
        }
    }
    m
}

pub fn minimal_resolution(m: &Module, cutoff: usize) -> Result<Resolution> {
    let mut r = Resolution::new(m);
    r.run(cutoff)?;
    Ok(r)
}

pub fn syzygy(m: &Module, n: usize) -> Result<Module> {
    Resolution::new(m).syzygy(n)
}

pub fn ext_dim(m: &Module, n: &Module, i: usize) -> Result<usize> {
    Resolution::new(m).ext(n, i)
}

/// Transpose over the opposite algebra, from the minimal presentation.
pub fn transpose(m: &Module) -> Result<Module> {
    Resolution::new(m).transpose_of_syzygy(0)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::modrep::tests::{a2, dual2, loc3, nak3};
    use crate::modrep::{hom_dim, indecomposable_projective, simple_module};

    #[test]
    fn resolution_examples() {
        let a = a2();
        let p1 = indecomposable_projective(&a, 0);
        let r = minimal_resolution(&p1, 5).unwrap();
        assert_eq!(r.finite_length(), Some(0));
        let s1 = simple_module(&a, 0);
        let r = minimal_resolution(&s1, 5).unwrap();
        assert_eq!(r.finite_length(), Some(1));
        assert_eq!(r.terms()[1].summands(), &[1]);

        let s = simple_module(&dual2(), 0);
        let r = minimal_resolution(&s, 5).unwrap();
        let per = r.periodicity().unwrap();
        assert_eq!((per.from, per.to), (0, 1));
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn syzygy_examples() {
        let s = simple_module(&dual2(), 0);
        assert!(is_isomorphic(&syzygy(&s, 1).unwrap(), &s).is_true());
        let t = simple_module(&nak3(), 0);
        assert_eq!(syzygy(&t, 1).unwrap().dim(), 2);
        assert!(is_isomorphic(&syzygy(&t, 2).unwrap(), &t).is_true());
        assert_eq!(syzygy(&t, 0).unwrap(), t);
    }

    #[test]
    fn ext_examples() {
        let s = simple_module(&dual2(), 0);
        for i in 0..=10 {
            assert_eq!(ext_dim(&s, &s, i).unwrap(), 1, "i = {i}");
        }
        let a = a2();
        let s1 = simple_module(&a, 0);
        let s2 = simple_module(&a, 1);
        assert_eq!(ext_dim(&s1, &s2, 1).unwrap(), 1);
        assert_eq!(ext_dim(&s1, &s1, 1).unwrap(), 0);
        assert_eq!(ext_dim(&s1, &s1, 0).unwrap(), 1);
        let l = loc3();
        let sl = simple_module(&l, 0);
        let reg = Module::regular(&l);
        assert_eq!(ext_dim(&sl, &reg, 0).unwrap(), hom_dim(&sl, &reg).unwrap());
        assert!(ext_dim(&sl, &reg, 1).unwrap() > 0);
    }

    #[test]
    fn transpose_examples() {
        let a = a2();
        assert!(transpose(&indecomposable_projective(&a, 1)).unwrap().is_zero());
        let d = dual2();
        let s = simple_module(&d, 0);
        let t = transpose(&s).unwrap();
        assert!(is_isomorphic(&t, &simple_module(&d.opposite(), 0)).is_true());
        let s1 = simple_module(&a, 0);
        let tt = transpose(&transpose(&s1).unwrap()).unwrap();
        assert_eq!(**tt.algebra(), *a);
        assert!(is_isomorphic(&tt, &s1).is_true());
    }

    /// `Ext^1(X, N)` from `0 -> Hom(X,N) -> Hom(P_0,N) -> Hom(Omega X,N) -> Ext^1 -> 0`.
    fn ext1_by_hom(x: &Module, n: &Module) -> (usize, Module) {
        let cover = projective_cover(x).unwrap();
        let (omega, _) = kernel(&cover.epi);
        let h = hom_dim(&omega, n).unwrap() + hom_dim(x, n).unwrap() - hom_dim(cover.projective.module(), n).unwrap();
        (h, omega)
    }

    #[test]
    fn multiplicative_period_extrapolates_ext() {
        let a = loc3();
        let d = Module::regular(&a).k_dual();
        let reg = Module::regular(d.algebra());
        let mut res = Resolution::new(&d);
        res.run(10).unwrap();
        let per = res.periodicity().unwrap().clone();
        assert!(per.multiplicity > 1);
        let mut x = d.clone();
        for i in 1..=6 {
            let (e, next) = ext1_by_hom(&x, &reg);
            assert_eq!(res.ext(&reg, i).unwrap(), e, "degree {i}");
            x = next;
        }
        let s = simple_module(&a, 0);
        assert!(proj_dim_is_infinite(&s));
    }

    fn proj_dim_is_infinite(m: &Module) -> bool {
        let mut res = Resolution::new(m);
        res.run(5).unwrap();
        res.periodicity().is_some_and(|p| p.from == 0 && p.to == 1 && p.multiplicity == 2)
    }
}
