use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{Coordinates, Matrix};
use crate::modrep::{cokernel, hom_basis, hom_dim, projective_cover, Module, Morphism, Projective};

use super::dims::is_gorenstein_projective;

/// `0 -> left -> middle -> right -> 0`.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub left: Module,
    pub middle: Module,
    pub right: Module,
    pub mono: Morphism,
    pub epi: Morphism,
}

impl ShortExact {
    pub fn is_exact(&self) -> bool {
        self.mono.is_mono()
            && self.epi.is_epi()
            && self.epi.matrix().mul(self.mono.matrix()).is_zero()
            && self.middle.dim() == self.left.dim() + self.right.dim()
    }
}

/// `Hom(m, A)` as a module over the opposite algebra, with the hom basis
/// matrices (`dim A x dim m`) its coordinates refer to.
pub fn hom_to_regular(m: &Module) -> (Module, Vec<Matrix>) {
    let a = m.algebra();
    let reg = Module::regular(a);
    let basis: Vec<Matrix> = hom_basis(m, &reg).expect("same algebra").into_iter().map(|f| f.matrix().clone()).collect();
    let op = a.opposite();
    let p = a.characteristic();
    let h = basis.len();
    if h == 0 {
        return (Module::zero(&op), basis);
    }
    let vecs: Vec<Vec<u32>> = basis.iter().map(|x| x.data().to_vec()).collect();
    let coords = Coordinates::new(Matrix::from_columns(p, a.dim() * m.dim(), &vecs));
    let action = (0..a.dim())
        .map(|b| {
            let r = a.right_mult(b);
            let cols: Vec<Vec<u32>> = basis.iter().map(|x| r.mul(x).data().to_vec()).collect();
            coords.of(&Matrix::from_columns(p, a.dim() * m.dim(), &cols))
        })
        .collect();
    (Module::from_parts(op, h, action), basis)
}

fn left_approximation(g: &Module) -> Result<(Projective, Morphism)> {
    let a: &Arc<Algebra> = g.algebra();
    let p = a.characteristic();
    let (dual, basis) = hom_to_regular(g);
    let cover = projective_cover(&dual)?;
    let summands = cover.projective.summands().to_vec();
    let proj = Projective::new(a, summands.clone());
    let mut rows = Matrix::zero(p, 0, g.dim());
    for (s, &j) in summands.iter().enumerate() {
        let coeff = cover.epi.matrix().mul_vec(&cover.projective.generator(s));
        let mut phi = Matrix::zero(p, a.dim(), g.dim());
        for (k, &c) in coeff.iter().enumerate() {
            if c != 0 {
                phi.add_scaled(c, &basis[k]);
            }
        }
        rows = rows.vstack(&a.projective_basis(j).of(&phi));
    }
    let iota = Morphism::from_parts(g.clone(), proj.module().clone(), rows);
    Ok((proj, iota))
}

/// `0 -> g -> P -> g' -> 0` with `P` projective, `g'` Gorenstein projective
/// and the sequence exact under `Hom(-, A)`.
pub fn gp_coresolution_step(g: &Module, cutoff: usize) -> Result<ShortExact> {
    let v = is_gorenstein_projective(g, cutoff);
    if !v.is_true() {
        return Err(Error::NotCertifiedGP(format!("membership test returned {}", v.label())));
    }
    let (proj, iota) = left_approximation(g)?;
    if !iota.is_mono() {
        return Err(Error::NotCertifiedGP("left approximation is not injective".into()));
    }
    let (right, epi) = cokernel(&iota);
    let w = is_gorenstein_projective(&right, cutoff);
    if !w.is_true() {
        return Err(Error::NotCertifiedGP(format!("cokernel membership returned {}", w.label())));
    }
    let reg = Module::regular(g.algebra());
    if hom_dim(proj.module(), &reg)? != hom_dim(g, &reg)? + hom_dim(&right, &reg)? {
        return Err(Error::NotCertifiedGP("sequence is not exact under Hom(-, A)".into()));
    }
    Ok(ShortExact { left: g.clone(), middle: proj.module().clone(), right, mono: iota, epi })
}

/// The same left approximation without membership requirements; used as a
/// cogenerator sequence for the torsionfree class.
pub(crate) fn left_approximation_sequence(g: &Module) -> Result<ShortExact> {
    let (proj, iota) = left_approximation(g)?;
    let (right, epi) = cokernel(&iota);
    Ok(ShortExact { left: g.clone(), middle: proj.module().clone(), right, mono: iota, epi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modrep::tests::{a2, dual2, loc3};
    use crate::modrep::{indecomposable_projective, is_isomorphic, simple_module};

    #[test]
    fn coresolution_examples() {
        let d = dual2();
        let s = simple_module(&d, 0);
        let seq = gp_coresolution_step(&s, 40).unwrap();
        assert!(seq.is_exact());
        assert!(is_isomorphic(&seq.middle, &Module::regular(&d)).is_true());
        assert!(is_isomorphic(&seq.right, &s).is_true());
        let a = a2();
        let p = indecomposable_projective(&a, 0);
        let seq = gp_coresolution_step(&p, 40).unwrap();
        assert!(seq.mono.is_iso() && seq.right.is_zero());
        let z = gp_coresolution_step(&Module::zero(&a), 40).unwrap();
        assert!(z.middle.is_zero());
        let l = loc3();
        assert!(matches!(gp_coresolution_step(&simple_module(&l, 0), 40), Err(Error::NotCertifiedGP(_))));
    }

    #[test]
    fn dual_module_is_valid() {
        let a = a2();
        for m in [simple_module(&a, 0), indecomposable_projective(&a, 0), Module::regular(&a)] {
            let (d, _) = hom_to_regular(&m);
            assert!(d.is_valid());
        }
    }
}
