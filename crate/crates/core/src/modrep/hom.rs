use crate::error::Result;
use crate::exactla::{Coordinates, Matrix};

use super::{Module, Morphism};

fn vectorize(m: &Matrix) -> Vec<u32> {
    m.data().to_vec()
}

/// Basis of `Hom(m, n)`.
///
/// Starts from maps compatible with the idempotents, then cuts down by the
/// intertwining equations for each algebra generator.
pub fn hom_basis(m: &Module, n: &Module) -> Result<Vec<Morphism>> {
    m.same_algebra(n)?;
    let p = m.characteristic();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Ok(Vec::new());
    }
    let a = m.algebra();
    let mut basis: Vec<Matrix> = Vec::new();
    for i in 0..a.num_idempotents() {
        let left = n.idempotent_action(i).column_space();
        let right = m.idempotent_action(i).transpose().column_space();
        for c in 0..left.cols() {
            let u = Matrix::column(p, &left.col(c));
            for r in 0..right.cols() {
                let w = Matrix::column(p, &right.col(r)).transpose();
                basis.push(u.mul(&w));
            }
        }
    }
    for g in a.generators() {
        if basis.is_empty() {
            break;
        }
        let am = m.action_by(g);
        let an = n.action_by(g);
        let cols: Vec<Vec<u32>> = basis.iter().map(|x| vectorize(&x.mul(&am).sub(&an.mul(x)))).collect();
        let k = Matrix::from_columns(p, dm * dn, &cols).kernel_basis();
        basis = (0..k.cols())
            .map(|l| {
                let mut x = Matrix::zero(p, dn, dm);
                for (j, b) in basis.iter().enumerate() {
                    let c = k.get(j, l);
                    if c != 0 {
                        x.add_scaled(c, b);
                    }
                }
                x
            })
            .collect();
    }
    Ok(basis.into_iter().map(|x| Morphism::from_parts(m.clone(), n.clone(), x)).collect())
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize> {
    Ok(hom_basis(m, n)?.len())
}

fn coords_of(basis: &[Morphism], p: u32, len: usize) -> Coordinates {
    let cols: Vec<Vec<u32>> = basis.iter().map(|f| vectorize(f.matrix())).collect();
    Coordinates::new(Matrix::from_columns(p, len, &cols))
}

/// Matrix of `Hom(w, f): Hom(w, X) -> Hom(w, Y)` in hom-basis coordinates.
pub fn hom_induced_post(w: &Module, f: &Morphism) -> Result<Matrix> {
    let src = hom_basis(w, f.source())?;
    let tgt = hom_basis(w, f.target())?;
    let p = w.characteristic();
    let coords = coords_of(&tgt, p, w.dim() * f.target().dim());
    let cols: Vec<Vec<u32>> = src.iter().map(|h| vectorize(&f.matrix().mul(h.matrix()))).collect();
    Ok(induced(p, &coords, tgt.len(), &cols))
}

/// Matrix of `Hom(f, w): Hom(Y, w) -> Hom(X, w)` in hom-basis coordinates.
pub fn hom_induced_pre(f: &Morphism, w: &Module) -> Result<Matrix> {
    let src = hom_basis(f.target(), w)?;
    let tgt = hom_basis(f.source(), w)?;
    let p = w.characteristic();
    let coords = coords_of(&tgt, p, w.dim() * f.source().dim());
    let cols: Vec<Vec<u32>> = src.iter().map(|h| vectorize(&h.matrix().mul(f.matrix()))).collect();
    Ok(induced(p, &coords, tgt.len(), &cols))
}

fn induced(p: u32, coords: &Coordinates, rows: usize, cols: &[Vec<u32>]) -> Matrix {
    if cols.is_empty() || rows == 0 {
        return Matrix::zero(p, rows, cols.len());
    }
    coords.of(&Matrix::from_columns(p, coords.basis().rows(), cols))
}

#[cfg(test)]
mod tests {
    use super::super::tests::{a2, dual2, loc3};
    use super::super::*;
    use super::*;

    #[test]
    fn hom_examples() {
        let a = a2();
        let s1 = simple_module(&a, 0);
        let s2 = simple_module(&a, 1);
        assert_eq!(hom_dim(&s1, &s1).unwrap(), 1);
        let p1 = indecomposable_projective(&a, 0);
        let p2 = indecomposable_projective(&a, 1);
        assert_eq!(hom_dim(&p1, &p2).unwrap(), 0);
        assert_eq!(hom_dim(&p2, &p1).unwrap(), 1);
        assert_eq!(hom_dim(&s1, &Module::zero(&a)).unwrap(), 0);
        assert_eq!(hom_dim(&s2, &s1).unwrap(), 0);
        let r = Module::regular(&dual2());
        assert_eq!(hom_dim(&r, &r).unwrap(), 2);
        let l = Module::regular(&loc3());
        assert_eq!(hom_dim(&l, &l).unwrap(), 3);
        let s = simple_module(&loc3(), 0);
        assert_eq!(hom_dim(&s, &l).unwrap(), 2);
        for f in hom_basis(&s, &l).unwrap() {
            assert!(f.intertwines());
        }
    }

    #[test]
    fn induced_maps_have_right_shape() {
        let a = a2();
        let p1 = indecomposable_projective(&a, 0);
        let (_, top) = radical_and_top(&p1);
        let m = hom_induced_post(&p1, &top).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert_eq!(m.rank(), 1);
        let s2 = simple_module(&a, 1);
        let m = hom_induced_pre(&top, &s2).unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 0));
    }
}
