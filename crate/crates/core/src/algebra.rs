//! Finite-dimensional algebras over prime fields.
//!
//! An algebra is given by structure constants `b_i * b_j = sum_k c[i][j][k] b_k`
//! together with a complete family of orthogonal idempotents and a basis of
//! the Jacobson radical. The radical is supplied, never computed: validation
//! only checks that it is a nilpotent two-sided ideal.
//!
//! Bound quiver presentations are converted with [`algebra_from_quiver`].
//! Paths compose like functions: an arrow `a: u -> v` satisfies
//! `a = e_v * a * e_u`, so `A e_u` is spanned by the paths starting at `u`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{is_prime, Coordinates, Echelon, Matrix};

/// Default cap on the number of surviving paths in a quiver presentation.
pub const DEFAULT_BASIS_CAP: usize = 512;

/// Raw algebra data exactly as it appears in algebra JSON files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraData {
    pub field_char: u64,
    pub dim: usize,
    pub basis_labels: Vec<String>,
    pub structure_constants: Vec<Vec<Vec<u64>>>,
    pub unit: Vec<u64>,
    pub idempotents: Vec<Vec<u64>>,
    pub radical_basis: Vec<Vec<u64>>,
}

/// A validated algebra. Cheap to share behind an `Arc`.
pub struct Algebra {
    p: u32,
    dim: usize,
    labels: Vec<String>,
    mult: Vec<u32>,
    unit: Vec<u32>,
    idempotents: Vec<Vec<u32>>,
    radical: Vec<Vec<u32>>,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
    projectives: Vec<Coordinates>,
    generators: Vec<Vec<u32>>,
    opposite: OnceLock<Arc<Algebra>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("p", &self.p)
            .field("dim", &self.dim)
            .field("labels", &self.labels)
            .field("idempotents", &self.idempotents.len())
            .field("radical_dim", &self.radical.len())
            .finish()
    }
}

impl PartialEq for Algebra {
    fn eq(&self, o: &Self) -> bool {
        std::ptr::eq(self, o)
            || (self.p == o.p
                && self.dim == o.dim
                && self.labels == o.labels
                && self.mult == o.mult
                && self.unit == o.unit
                && self.idempotents == o.idempotents
                && self.radical == o.radical)
    }
}

impl Eq for Algebra {}

impl Algebra {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn num_idempotents(&self) -> usize {
        self.idempotents.len()
    }

    pub fn idempotent(&self, i: usize) -> &[u32] {
        &self.idempotents[i]
    }

    pub fn idempotents(&self) -> &[Vec<u32>] {
        &self.idempotents
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    pub fn radical_basis(&self) -> &[Vec<u32>] {
        &self.radical
    }

    /// Structure constant `c[i][j][k]`.
    #[inline]
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> u32 {
        self.mult[(i * self.dim + j) * self.dim + k]
    }

    /// Matrix of `y -> b_i y` on the basis.
    pub fn left_mult(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    /// Matrix of `y -> y b_j` on the basis.
    pub fn right_mult(&self, j: usize) -> &Matrix {
        &self.right[j]
    }

    /// Left multiplication by an arbitrary element.
    pub fn left_mult_by(&self, x: &[u32]) -> Matrix {
        combine(self.p, self.dim, &self.left, x)
    }

    pub fn right_mult_by(&self, x: &[u32]) -> Matrix {
        combine(self.p, self.dim, &self.right, x)
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        self.left_mult_by(x).mul_vec(y)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    /// Basis of `A e_i` as algebra elements, with coordinate extraction.
    pub fn projective_basis(&self, i: usize) -> &Coordinates {
        &self.projectives[i]
    }

    /// Elements that, together with the idempotents, generate the algebra.
    /// Arrows for a quiver algebra; every basis vector when the algebra is
    /// not split over the idempotents.
    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    /// Basis of the corner `e_i A e_j` as algebra elements (columns).
    pub fn corner_basis(&self, i: usize, j: usize) -> Matrix {
        let ei = self.left_mult_by(&self.idempotents[i]);
        let ej = self.right_mult_by(&self.idempotents[j]);
        ei.mul(&ej).column_space()
    }

    /// Basis of `e_i J e_j`, the radical part of the corner.
    pub fn radical_corner_basis(&self, i: usize, j: usize) -> Matrix {
        let ei = self.left_mult_by(&self.idempotents[i]);
        let ej = self.right_mult_by(&self.idempotents[j]);
        let rad = Matrix::from_columns(self.p, self.dim, &self.radical);
        ei.mul(&ej).mul(&rad).column_space()
    }

    /// The raw data this algebra was validated from.
    pub fn data(&self) -> AlgebraData {
        let d = self.dim;
        let to64 = |v: &[u32]| v.iter().map(|&x| x as u64).collect::<Vec<_>>();
        AlgebraData {
            field_char: self.p as u64,
            dim: d,
            basis_labels: self.labels.clone(),
            structure_constants: (0..d)
                .map(|i| (0..d).map(|j| to64(&self.mult[(i * d + j) * d..(i * d + j + 1) * d])).collect())
                .collect(),
            unit: to64(&self.unit),
            idempotents: self.idempotents.iter().map(|v| to64(v)).collect(),
            radical_basis: self.radical.iter().map(|v| to64(v)).collect(),
        }
    }

    /// The opposite algebra, `b_i *op b_j = b_j b_i`. Cached.
    pub fn opposite(&self) -> Arc<Algebra> {
        self.opposite
            .get_or_init(|| {
                let d = self.dim;
                let mut mult = vec![0; d * d * d];
                for i in 0..d {
                    for j in 0..d {
                        for k in 0..d {
                            mult[(i * d + j) * d + k] = self.mult[(j * d + i) * d + k];
                        }
                    }
                }
                Arc::new(Algebra::assemble(
                    self.p,
                    self.labels.clone(),
                    mult,
                    self.unit.clone(),
                    self.idempotents.clone(),
                    self.radical.clone(),
                ))
            })
            .clone()
    }

    fn assemble(
        p: u32,
        labels: Vec<String>,
        mult: Vec<u32>,
        unit: Vec<u32>,
        idempotents: Vec<Vec<u32>>,
        radical: Vec<Vec<u32>>,
    ) -> Algebra {
        let d = labels.len();
        let mut left = vec![Matrix::zero(p, d, d); d];
        let mut right = vec![Matrix::zero(p, d, d); d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let c = mult[(i * d + j) * d + k];
                    if c != 0 {
                        left[i].set(k, j, c);
                        right[j].set(k, i, c);
                    }
                }
            }
        }
        let projectives = idempotents
            .iter()
            .map(|e| Coordinates::new(combine(p, d, &right, e).column_space()))
            .collect();
        let generators = find_generators(p, d, &left, &idempotents, &radical);
        Algebra {
            p,
            dim: d,
            labels,
            mult,
            unit,
            idempotents,
            radical,
            left,
            right,
            projectives,
            generators,
            opposite: OnceLock::new(),
        }
    }
}

fn find_generators(p: u32, d: usize, left: &[Matrix], idem: &[Vec<u32>], rad: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let all = || (0..d).map(|i| {
        let mut v = vec![0; d];
        v[i] = 1;
        v
    }).collect();
    let mut span = Echelon::new(p, d);
    for v in idem.iter().chain(rad) {
        span.insert(v);
    }
    if span.dim() != d {
        return all();
    }
    // radical vectors independent modulo J^2
    let mut sq = Echelon::new(p, d);
    for a in rad {
        let la = combine(p, d, left, a);
        for b in rad {
            sq.insert(&la.mul_vec(b));
        }
    }
    rad.iter().filter(|r| sq.insert(r)).cloned().collect()
}

pub(crate) fn combine(p: u32, d: usize, mats: &[Matrix], x: &[u32]) -> Matrix {
    let n = mats.first().map_or(0, |m| m.rows());
    let mut out = Matrix::zero(p, n, n);
    for (i, &c) in x.iter().enumerate().take(d) {
        if c != 0 {
            out.add_scaled(c, &mats[i]);
        }
    }
    out
}

fn reduce_vec(p: u32, v: &[u64]) -> Vec<u32> {
    v.iter().map(|&x| (x % p as u64) as u32).collect()
}

/// Checks every algebra invariant and returns the validated algebra.
pub fn validate_algebra(raw: &AlgebraData) -> Result<Arc<Algebra>> {
    if raw.field_char > u32::MAX as u64 || !is_prime(raw.field_char) {
        return Err(Error::BadCharacteristic(raw.field_char));
    }
    let p = raw.field_char as u32;
    let d = raw.dim;
    let shape = |what: &str, got: usize| -> Result<()> {
        if got != d {
            Err(Error::DimensionMismatch(format!("{what} has length {got}, expected {d}")))
        } else {
            Ok(())
        }
    };
    shape("basis_labels", raw.basis_labels.len())?;
    shape("structure_constants", raw.structure_constants.len())?;
    let mut mult = vec![0u32; d * d * d];
    for (i, row) in raw.structure_constants.iter().enumerate() {
        shape(&format!("structure_constants[{i}]"), row.len())?;
        for (j, v) in row.iter().enumerate() {
            shape(&format!("structure_constants[{i}][{j}]"), v.len())?;
            for (k, &c) in v.iter().enumerate() {
                mult[(i * d + j) * d + k] = (c % p as u64) as u32;
            }
        }
    }
    shape("unit", raw.unit.len())?;
    for (i, e) in raw.idempotents.iter().enumerate() {
        shape(&format!("idempotents[{i}]"), e.len())?;
    }
    for (i, r) in raw.radical_basis.iter().enumerate() {
        shape(&format!("radical_basis[{i}]"), r.len())?;
    }
    let alg = Algebra::assemble(
        p,
        raw.basis_labels.clone(),
        mult,
        reduce_vec(p, &raw.unit),
        raw.idempotents.iter().map(|e| reduce_vec(p, e)).collect(),
        raw.radical_basis.iter().map(|r| reduce_vec(p, r)).collect(),
    );
    check_invariants(&alg)?;
    Ok(Arc::new(alg))
}

fn check_invariants(a: &Algebra) -> Result<()> {
    let d = a.dim;
    let p = a.p;
    // associativity: L(b_i b_j) == L(b_i) L(b_j), column k is the triple (i, j, k)
    for i in 0..d {
        for j in 0..d {
            let ij: Vec<u32> = (0..d).map(|k| a.structure_constant(i, j, k)).collect();
            let lhs = a.left_mult_by(&ij);
            let rhs = a.left[i].mul(&a.left[j]);
            if lhs != rhs {
                let k = (0..d).find(|&k| lhs.col(k) != rhs.col(k)).unwrap_or(0);
                return Err(Error::NonAssociative(i, j, k));
            }
        }
    }
    let lu = a.left_mult_by(&a.unit);
    let ru = a.right_mult_by(&a.unit);
    for i in 0..d {
        let bi = a.basis_vector(i);
        if lu.mul_vec(&bi) != bi || ru.mul_vec(&bi) != bi {
            return Err(Error::BadUnit(i));
        }
    }
    let n = a.idempotents.len();
    if n == 0 && d > 0 {
        return Err(Error::BadIdempotents("no idempotents given".into()));
    }
    let mut sum = vec![0u32; d];
    for (i, ei) in a.idempotents.iter().enumerate() {
        for (j, ej) in a.idempotents.iter().enumerate() {
            let prod = a.mul(ei, ej);
            let expect = if i == j { ei.clone() } else { vec![0; d] };
            if prod != expect {
                return Err(Error::BadIdempotents(format!("e_{i} e_{j} has the wrong value")));
            }
        }
        if ei.iter().all(|&x| x == 0) {
            return Err(Error::BadIdempotents(format!("e_{i} is zero")));
        }
        for (s, &x) in sum.iter_mut().zip(ei) {
            *s = crate::exactla::add_mod(*s, x, p);
        }
    }
    if sum != a.unit {
        return Err(Error::BadIdempotents("idempotents do not sum to the unit".into()));
    }
    if a.radical.is_empty() {
        return Ok(());
    }
    let rad = Matrix::from_columns(p, d, &a.radical);
    if rad.rank() != a.radical.len() {
        return Err(Error::RadicalNotIdeal("radical basis vectors are dependent".into()));
    }
    let coords = Coordinates::new(rad.clone());
    for i in 0..d {
        if coords.try_of(&a.left[i].mul(&rad)).is_none() {
            return Err(Error::RadicalNotIdeal(format!("b_{i} J is not contained in J")));
        }
        if coords.try_of(&a.right[i].mul(&rad)).is_none() {
            return Err(Error::RadicalNotIdeal(format!("J b_{i} is not contained in J")));
        }
    }
    // powers J^k until zero
    let mut power = rad.clone();
    let mut k = 1;
    while power.cols() > 0 {
        let mut cols: Vec<Vec<u32>> = Vec::new();
        for c in 0..power.cols() {
            let x = power.col(c);
            for r in &a.radical {
                cols.push(a.mul(&x, r));
            }
        }
        let next = Matrix::from_columns(p, d, &cols).column_space();
        k += 1;
        if next.cols() == power.cols() && next.cols() > 0 {
            return Err(Error::RadicalNotNilpotent(k));
        }
        power = next;
    }
    Ok(())
}

/// One arrow of a quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub label: String,
    pub src: String,
    pub tgt: String,
}

/// One term of a relation: a path (arrow labels in traversal order) and a
/// coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTerm {
    pub path: Vec<String>,
    pub coeff: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverPresentation {
    #[serde(default = "default_char")]
    pub field_char: u64,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    #[serde(default)]
    pub relations: Vec<Vec<RelationTerm>>,
    pub nilpotency_bound: usize,
}

fn default_char() -> u64 {
    2
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Path {
    src: usize,
    tgt: usize,
    arrows: Vec<usize>,
}

pub fn algebra_from_quiver(q: &QuiverPresentation) -> Result<Arc<Algebra>> {
    algebra_from_quiver_with_cap(q, DEFAULT_BASIS_CAP)
}

/// Path algebra modulo length-homogeneous relations and all paths of length
/// at least the nilpotency bound.
pub fn algebra_from_quiver_with_cap(q: &QuiverPresentation, cap: usize) -> Result<Arc<Algebra>> {
    if q.field_char > u32::MAX as u64 || !is_prime(q.field_char) {
        return Err(Error::BadCharacteristic(q.field_char));
    }
    let p = q.field_char as u32;
    if q.nilpotency_bound < 2 {
        return Err(Error::BadQuiver("nilpotency_bound must be at least 2".into()));
    }
    if q.vertices.is_empty() {
        return Err(Error::BadQuiver("no vertices".into()));
    }
    let vidx: HashMap<&str, usize> = q.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    if vidx.len() != q.vertices.len() {
        return Err(Error::BadQuiver("duplicate vertex names".into()));
    }
    let mut arrows = Vec::new();
    let mut aidx = HashMap::new();
    for (i, a) in q.arrows.iter().enumerate() {
        let (Some(&s), Some(&t)) = (vidx.get(a.src.as_str()), vidx.get(a.tgt.as_str())) else {
            return Err(Error::BadQuiver(format!("arrow {} has an unknown endpoint", a.label)));
        };
        if aidx.insert(a.label.as_str(), i).is_some() {
            return Err(Error::BadQuiver(format!("duplicate arrow label {}", a.label)));
        }
        arrows.push((s, t));
    }
    let lmax = q.nilpotency_bound;

    // paths by length
    let mut by_len: Vec<Vec<Path>> = vec![(0..q.vertices.len()).map(|v| Path { src: v, tgt: v, arrows: vec![] }).collect()];
    let mut total = by_len[0].len();
    for _ in 1..lmax {
        let mut next = Vec::new();
        for path in by_len.last().unwrap() {
            for (ai, &(s, t)) in arrows.iter().enumerate() {
                if s == path.tgt {
                    let mut ar = path.arrows.clone();
                    ar.push(ai);
                    next.push(Path { src: path.src, tgt: t, arrows: ar });
                }
            }
        }
        total += next.len();
        if total > cap {
            return Err(Error::PathExplosion(cap));
        }
        by_len.push(next);
    }
    let index: Vec<HashMap<Vec<usize>, usize>> = by_len
        .iter()
        .map(|ps| ps.iter().enumerate().map(|(i, path)| (path.arrows.clone(), i)).collect())
        .collect();

    // relations as (length, src, tgt, terms)
    struct Rel {
        len: usize,
        src: usize,
        tgt: usize,
        terms: Vec<(Vec<usize>, u32)>,
    }
    let mut rels = Vec::new();
    for (ri, rel) in q.relations.iter().enumerate() {
        let mut terms = Vec::new();
        let mut shape: Option<(usize, usize, usize)> = None;
        for term in rel {
            let mut ar = Vec::new();
            for l in &term.path {
                let Some(&a) = aidx.get(l.as_str()) else {
                    return Err(Error::BadQuiver(format!("relation {ri} uses unknown arrow {l}")));
                };
                ar.push(a);
            }
            if ar.len() < 2 || ar.windows(2).any(|w| arrows[w[0]].1 != arrows[w[1]].0) {
                return Err(Error::RelationNotLengthHomogeneous(ri));
            }
            let s = (ar.len(), arrows[ar[0]].0, arrows[*ar.last().unwrap()].1);
            if shape.is_some_and(|x| x != s) {
                return Err(Error::RelationNotLengthHomogeneous(ri));
            }
            shape = Some(s);
            terms.push((ar, crate::exactla::Fp::from_i64(p, term.coeff).value()));
        }
        if let Some((len, src, tgt)) = shape {
            if len < lmax {
                rels.push(Rel { len, src, tgt, terms });
            }
        }
    }

    // per length: span of u r v, reduced; basis = non-pivot paths
    struct Level {
        basis: Vec<usize>,
        reduced: Matrix,
        pivots: Vec<usize>,
    }
    let mut levels = Vec::new();
    for (len, paths) in by_len.iter().enumerate() {
        let mut gens: Vec<Vec<u32>> = Vec::new();
        for r in rels.iter().filter(|r| r.len <= len) {
            let rest = len - r.len;
            for a in 0..=rest {
                let b = rest - a;
                for u in by_len[a].iter().filter(|u| u.tgt == r.src) {
                    for v in by_len[b].iter().filter(|v| v.src == r.tgt) {
                        let mut row = vec![0u32; paths.len()];
                        for (ar, c) in &r.terms {
                            let mut full = u.arrows.clone();
                            full.extend(ar);
                            full.extend(&v.arrows);
                            let idx = index[len][&full];
                            row[idx] = crate::exactla::add_mod(row[idx], *c, p);
                        }
                        gens.push(row);
                    }
                }
            }
        }
        let m = if gens.is_empty() {
            Matrix::zero(p, 0, paths.len())
        } else {
            Matrix::from_rows(p, &gens.iter().map(|r| r.iter().map(|&x| x as u64).collect()).collect::<Vec<_>>())
        };
        let rr = m.rref();
        let basis = (0..paths.len()).filter(|c| !rr.pivot_cols.contains(c)).collect();
        levels.push(Level { basis, reduced: rr.reduced, pivots: rr.pivot_cols });
    }

    // global basis
    let mut global: Vec<(usize, usize)> = Vec::new();
    let mut pos: HashMap<(usize, usize), usize> = HashMap::new();
    for (len, lv) in levels.iter().enumerate() {
        for &i in &lv.basis {
            pos.insert((len, i), global.len());
            global.push((len, i));
        }
    }
    let d = global.len();
    let reduce = |len: usize, idx: usize| -> Vec<u32> {
        let mut out = vec![0u32; d];
        if len >= lmax {
            return out;
        }
        let lv = &levels[len];
        if let Some(&g) = pos.get(&(len, idx)) {
            out[g] = 1 % p;
            return out;
        }
        let r = lv.pivots.iter().position(|&c| c == idx).expect("pivot path");
        for &b in &lv.basis {
            let v = lv.reduced.get(r, b);
            if v != 0 {
                out[pos[&(len, b)]] = crate::exactla::neg_mod(v, p);
            }
        }
        out
    };
    let mut mult = vec![0u32; d * d * d];
    for (i, &(li, pi)) in global.iter().enumerate() {
        let x = &by_len[li][pi];
        for (j, &(lj, pj)) in global.iter().enumerate() {
            let y = &by_len[lj][pj];
            // x * y: first y, then x
            if x.src != y.tgt {
                continue;
            }
            let len = li + lj;
            if len >= lmax {
                continue;
            }
            let mut ar = y.arrows.clone();
            ar.extend(&x.arrows);
            let idx = if len == 0 { x.src } else { index[len][&ar] };
            let v = reduce(len, idx);
            mult[(i * d + j) * d..(i * d + j + 1) * d].copy_from_slice(&v);
        }
    }
    let labels = global
        .iter()
        .map(|&(l, i)| {
            let path = &by_len[l][i];
            if l == 0 {
                format!("e{}", q.vertices[path.src])
            } else {
                path.arrows.iter().map(|&a| q.arrows[a].label.as_str()).collect::<Vec<_>>().join(".")
            }
        })
        .collect();
    let idempotents: Vec<Vec<u32>> = (0..q.vertices.len()).map(|v| {
        let mut e = vec![0; d];
        e[pos[&(0, v)]] = 1;
        e
    }).collect();
    let mut unit = vec![0; d];
    for e in &idempotents {
        for (u, &x) in unit.iter_mut().zip(e) {
            *u += x;
        }
    }
    let radical = global
        .iter()
        .enumerate()
        .filter(|(_, &(l, _))| l > 0)
        .map(|(g, _)| {
            let mut v = vec![0; d];
            v[g] = 1;
            v
        })
        .collect();
    let alg = Algebra::assemble(p, labels, mult, unit, idempotents, radical);
    debug_assert!(check_invariants(&alg).is_ok());
    Ok(Arc::new(alg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual_numbers(square_is_x: bool) -> AlgebraData {
        // basis {1, x}
        let xx = if square_is_x { vec![0, 1] } else { vec![0, 0] };
        AlgebraData {
            field_char: 2,
            dim: 2,
            basis_labels: vec!["1".into(), "x".into()],
            structure_constants: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], xx]],
            unit: vec![1, 0],
            idempotents: vec![vec![1, 0]],
            radical_basis: vec![vec![0, 1]],
        }
    }

    pub(crate) fn quiver(p: u64, verts: &[&str], arrows: &[(&str, &str, &str)], rels: Vec<Vec<(Vec<&str>, i64)>>, l: usize) -> QuiverPresentation {
        QuiverPresentation {
            field_char: p,
            vertices: verts.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(l, s, t)| Arrow { label: l.to_string(), src: s.to_string(), tgt: t.to_string() })
                .collect(),
            relations: rels
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|(path, coeff)| RelationTerm { path: path.iter().map(|s| s.to_string()).collect(), coeff })
                        .collect()
                })
                .collect(),
            nilpotency_bound: l,
        }
    }

    #[test]
    fn dual_numbers_valid() {
        let a = validate_algebra(&dual_numbers(false)).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.data(), dual_numbers(false));
    }

    #[test]
    fn idempotent_radical_rejected() {
        let err = validate_algebra(&dual_numbers(true)).unwrap_err();
        assert!(matches!(err, Error::RadicalNotNilpotent(_) | Error::NonAssociative(..)), "{err:?}");
    }

    #[test]
    fn field_is_valid() {
        let raw = AlgebraData {
            field_char: 3,
            dim: 1,
            basis_labels: vec!["1".into()],
            structure_constants: vec![vec![vec![1]]],
            unit: vec![1],
            idempotents: vec![vec![1]],
            radical_basis: vec![],
        };
        assert!(validate_algebra(&raw).is_ok());
    }

    #[test]
    fn non_associative_reports_triple() {
        // 3-dim: a*a = b, a*b = 0, b*a = a (nonsense), unit e
        let mut raw = AlgebraData {
            field_char: 2,
            dim: 3,
            basis_labels: vec!["e".into(), "a".into(), "b".into()],
            structure_constants: vec![vec![vec![0; 3]; 3]; 3],
            unit: vec![1, 0, 0],
            idempotents: vec![vec![1, 0, 0]],
            radical_basis: vec![vec![0, 1, 0], vec![0, 0, 1]],
        };
        for i in 0..3 {
            raw.structure_constants[0][i][i] = 1;
            raw.structure_constants[i][0][i] = 1;
        }
        raw.structure_constants[1][1] = vec![0, 0, 1];
        raw.structure_constants[2][1] = vec![0, 1, 0];
        assert!(matches!(validate_algebra(&raw), Err(Error::NonAssociative(..))));
    }

    #[test]
    fn bad_idempotents() {
        let mut raw = dual_numbers(false);
        raw.idempotents = vec![vec![1, 0], vec![1, 0]];
        assert!(matches!(validate_algebra(&raw), Err(Error::BadIdempotents(_))));
    }

    #[test]
    fn radical_not_ideal() {
        let mut raw = dual_numbers(false);
        raw.radical_basis = vec![vec![1, 1]];
        assert!(matches!(validate_algebra(&raw), Err(Error::RadicalNotIdeal(_))));
    }

    #[test]
    fn path_algebra_a2() {
        let q = quiver(2, &["1", "2"], &[("a", "1", "2")], vec![], 2);
        let a = algebra_from_quiver(&q).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.labels(), &["e1", "e2", "a"]);
        assert_eq!(a.projective_basis(0).dim(), 2);
        assert_eq!(a.projective_basis(1).dim(), 1);
        assert!(validate_algebra(&a.data()).is_ok());
    }

    #[test]
    fn loop_with_square_relation() {
        let q = quiver(3, &["1"], &[("x", "1", "1")], vec![vec![(vec!["x", "x"], 1)]], 2);
        let a = algebra_from_quiver(&q).unwrap();
        assert_eq!(a.dim(), 2);
        // x*x = 0
        assert!((0..2).all(|k| a.structure_constant(1, 1, k) == 0));
    }

    #[test]
    fn two_loops_radical_square_zero() {
        let q = quiver(
            2,
            &["1"],
            &[("x", "1", "1"), ("y", "1", "1")],
            vec![
                vec![(vec!["x", "x"], 1)],
                vec![(vec!["x", "y"], 1)],
                vec![(vec!["y", "x"], 1)],
                vec![(vec!["y", "y"], 1)],
            ],
            2,
        );
        let a = algebra_from_quiver(&q).unwrap();
        assert_eq!(a.labels(), &["e1", "x", "y"]);
        assert_eq!(a.generators().len(), 2);
    }

    #[test]
    fn truncated_polynomial_with_relations() {
        // k<x,y>/(xy - yx, x^2, y^2), L = 4: basis e, x, y, xy
        let q = quiver(
            3,
            &["1"],
            &[("x", "1", "1"), ("y", "1", "1")],
            vec![
                vec![(vec!["x", "y"], 1), (vec!["y", "x"], -1)],
                vec![(vec!["x", "x"], 1)],
                vec![(vec!["y", "y"], 1)],
            ],
            4,
        );
        let a = algebra_from_quiver(&q).unwrap();
        assert_eq!(a.dim(), 4);
        assert!(validate_algebra(&a.data()).is_ok());
    }

    #[test]
    fn inhomogeneous_relation_rejected() {
        let q = quiver(2, &["1"], &[("x", "1", "1")], vec![vec![(vec!["x", "x"], 1), (vec!["x", "x", "x"], 1)]], 4);
        assert!(matches!(algebra_from_quiver(&q), Err(Error::RelationNotLengthHomogeneous(0))));
    }

    #[test]
    fn path_explosion() {
        let q = quiver(2, &["1"], &[("x", "1", "1"), ("y", "1", "1")], vec![], 12);
        assert!(matches!(algebra_from_quiver(&q), Err(Error::PathExplosion(512))));
    }

    #[test]
    fn opposite_is_involution() {
        let q = quiver(2, &["1", "2"], &[("a", "1", "2")], vec![], 2);
        let a = algebra_from_quiver(&q).unwrap();
        let op = a.opposite();
        assert_ne!(*op, *a);
        assert_eq!(*op.opposite(), *a);
        // in the opposite, A^op e_1 = e_1 A is one-dimensional
        assert_eq!(op.projective_basis(0).dim(), 1);
        assert_eq!(op.projective_basis(1).dim(), 2);
        let comm = validate_algebra(&dual_numbers(false)).unwrap();
        assert_eq!(*comm.opposite(), *comm);
    }
}
