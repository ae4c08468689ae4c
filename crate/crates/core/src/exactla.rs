//! Dense exact linear algebra over prime fields.
//!
//! Matrices store canonical residues in `[0, p)` row-major. Pivoting always
//! takes the first nonzero entry so every downstream basis choice is
//! reproducible.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported characteristic.
pub const MAX_CHAR: u32 = 2_147_483_647;

/// An element of the prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
    v: u32,
}

impl Fp {
    pub fn new(p: u32, v: u64) -> Self {
        Fp { p, v: (v % p as u64) as u32 }
    }

    pub fn from_i64(p: u32, v: i64) -> Self {
        Fp { p, v: v.rem_euclid(p as i64) as u32 }
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }

    pub fn value(self) -> u32 {
        self.v
    }

    pub fn is_zero(self) -> bool {
        self.v == 0
    }

    pub fn inv(self) -> Option<Fp> {
        if self.v == 0 {
            None
        } else {
            Some(Fp { p: self.p, v: inv_mod(self.v, self.p) })
        }
    }
}

impl std::ops::Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp { p: self.p, v: add_mod(self.v, o.v, self.p) }
    }
}

impl std::ops::Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp { p: self.p, v: sub_mod(self.v, o.v, self.p) }
    }
}

impl std::ops::Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp { p: self.p, v: mul_mod(self.v, o.v, self.p) }
    }
}

impl std::ops::Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { p: self.p, v: neg_mod(self.v, self.p) }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    if s >= p as u64 {
        (s - p as u64) as u32
    } else {
        s as u32
    }
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + p as u64 - b as u64) as u32
    }
}

#[inline]
pub(crate) fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    // extended Euclid on i64
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "{a} not invertible mod {p}");
    t0.rem_euclid(p as i64) as u32
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over F_{}", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivot_cols: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }
}

impl Matrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        Matrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Matrix::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds a matrix from residues, reducing each entry mod `p`.
    pub fn from_rows(p: u32, rows: &[Vec<u64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Matrix::zero(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = (v % p as u64) as u32;
            }
        }
        m
    }

    pub fn from_vec(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&v| v < p));
        Matrix { p, rows, cols, data }
    }

    pub fn column(p: u32, v: &[u32]) -> Self {
        Matrix::from_vec(p, v.len(), 1, v.to_vec())
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(p: u32, rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Matrix::zero(p, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = x;
            }
        }
        m
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(v < self.p);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in add");
        let p = self.p;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| add_mod(a, b, p)).collect();
        Matrix { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sub");
        let p = self.p;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| sub_mod(a, b, p)).collect();
        Matrix { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        let p = self.p;
        Matrix { p, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| neg_mod(a, p)).collect() }
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let p = self.p;
        let s = s % p;
        Matrix { p, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| mul_mod(a, s, p)).collect() }
    }

    /// `self += s * o`
    pub fn add_scaled(&mut self, s: u32, o: &Matrix) {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let p = self.p;
        if s.is_multiple_of(p) {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&o.data) {
            if b != 0 {
                *a = add_mod(*a, mul_mod(s, b, p), p);
            }
        }
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in mul: {}x{} * {}x{}", self.rows, self.cols, o.rows, o.cols);
        assert_eq!(self.p, o.p);
        let p = self.p as u64;
        let n = o.cols;
        let mut out = Matrix::zero(self.p, self.rows, n);
        if n == 0 || self.rows == 0 {
            return out;
        }
        // Delay reductions while the accumulator cannot overflow.
        let lazy = (p - 1) * (p - 1) <= u64::MAX / (self.cols.max(1) as u64 + 1);
        let mut acc = vec![0u64; n];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &o.data[k * n..(k + 1) * n];
                if lazy {
                    for (x, &b) in acc.iter_mut().zip(orow) {
                        *x += a * b as u64;
                    }
                } else {
                    for (x, &b) in acc.iter_mut().zip(orow) {
                        *x = (*x + a * b as u64) % p;
                    }
                }
            }
            for (j, &x) in acc.iter().enumerate() {
                out.data[i * n + j] = (x % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let mut s = 0u64;
                for (k, &x) in v.iter().enumerate() {
                    let a = self.data[i * self.cols + k];
                    if a != 0 && x != 0 {
                        s = (s + a as u64 * x as u64) % p;
                    }
                }
                s as u32
            })
            .collect()
    }

    /// Horizontal concatenation `[self | o]`.
    pub fn hstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows);
        let mut m = Matrix::zero(self.p, self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            m.data[i * m.cols..i * m.cols + self.cols].copy_from_slice(self.row(i));
            m.data[i * m.cols + self.cols..(i + 1) * m.cols].copy_from_slice(o.row(i));
        }
        m
    }

    /// Vertical concatenation.
    pub fn vstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        Matrix { p: self.p, rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn block_diag(p: u32, blocks: &[&Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zero(p, r, c);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            m.set_block(ro, co, b);
            ro += b.rows;
            co += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + b.cols].copy_from_slice(b.row(i));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zero(self.p, rows, cols);
        for i in 0..rows {
            let src = (r0 + i) * self.cols + c0;
            m.data[i * cols..(i + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zero(self.p, self.rows, idx.len());
        for i in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                m.data[i * idx.len() + j] = self.get(i, c);
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Matrix { p: self.p, rows: idx.len(), cols: self.cols, data }
    }

    /// Reduced row-echelon form together with its pivot columns.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        Rref { reduced: m, pivot_cols: pivots }
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    self.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = inv_mod(self.data[r * cols + c], p);
            if inv != 1 {
                for j in c..cols {
                    let x = &mut self.data[r * cols + j];
                    *x = mul_mod(*x, inv, p);
                }
            }
            let (head, tail) = self.data.split_at_mut(r * cols);
            let (prow, rest) = tail.split_at_mut(cols);
            let eliminate = |row: &mut [u32]| {
                let f = row[c];
                if f == 0 {
                    return;
                }
                let nf = neg_mod(f, p) as u64;
                for j in c..cols {
                    let b = prow[j];
                    if b != 0 {
                        row[j] = ((row[j] as u64 + nf * b as u64) % p as u64) as u32;
                    }
                }
            };
            for row in head.chunks_mut(cols) {
                eliminate(row);
            }
            for row in rest.chunks_mut(cols) {
                eliminate(row);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // eliminate on the smaller orientation
        if self.rows > self.cols {
            self.transpose().rref().rank()
        } else {
            self.rref().rank()
        }
    }

    /// Columns form a basis of the right null space.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { reduced, pivot_cols } = self.rref();
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
        let mut k = Matrix::zero(self.p, n, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.data[f * free.len() + j] = 1 % self.p;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                let v = reduced.get(r, f);
                k.data[pc * free.len() + j] = neg_mod(v, self.p);
            }
        }
        k
    }

    /// Some `x` with `self * x = b`, or `None` when inconsistent. Free
    /// variables are set to zero.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: matrix has {} rows, right-hand side has {}",
                self.rows,
                b.len()
            )));
        }
        let aug = self.hstack(&Matrix::column(self.p, b));
        let Rref { reduced, pivot_cols } = aug.rref();
        if pivot_cols.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (r, &pc) in pivot_cols.iter().enumerate() {
            x[pc] = reduced.get(r, self.cols);
        }
        Ok(Some(x))
    }

    /// Solves `self * X = B` column by column; `None` if any column is
    /// inconsistent.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows);
        let aug = self.hstack(b);
        let Rref { reduced, pivot_cols } = aug.rref();
        if pivot_cols.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zero(self.p, self.cols, b.cols);
        for (r, &pc) in pivot_cols.iter().enumerate() {
            for j in 0..b.cols {
                x.data[pc * b.cols + j] = reduced.get(r, self.cols + j);
            }
        }
        Some(x)
    }

    /// Independent columns spanning the column space (pivot columns).
    pub fn column_space(&self) -> Matrix {
        let piv = self.rref().pivot_cols;
        self.select_columns(&piv)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Matrix::identity(self.p, n));
        let Rref { reduced, pivot_cols } = aug.rref();
        if pivot_cols.len() < n || pivot_cols[n - 1] != n - 1 {
            return None;
        }
        Some(reduced.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// Coordinates with respect to a set of independent columns.
///
/// Picks rows on which the basis restricts to an invertible square block,
/// so coordinates of vectors known to lie in the span cost one small
/// multiplication.
#[derive(Clone, Debug)]
pub struct Coordinates {
    basis: Matrix,
    rows: Vec<usize>,
    inv: Matrix,
}

impl Coordinates {
    /// `basis` must have linearly independent columns.
    pub fn new(basis: Matrix) -> Self {
        let k = basis.cols();
        let rows = basis.transpose().rref().pivot_cols;
        assert_eq!(rows.len(), k, "basis columns are not independent");
        let inv = basis.select_rows(&rows).inverse().expect("pivot block invertible");
        Coordinates { basis, rows, inv }
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of the columns of `m`, assumed to lie in the span.
    pub fn of(&self, m: &Matrix) -> Matrix {
        self.inv.mul(&m.select_rows(&self.rows))
    }

    pub fn of_vec(&self, v: &[u32]) -> Vec<u32> {
        let sel: Vec<u32> = self.rows.iter().map(|&r| v[r]).collect();
        self.inv.mul_vec(&sel)
    }

    /// Checked version: `None` when some column is outside the span.
    pub fn try_of(&self, m: &Matrix) -> Option<Matrix> {
        let c = self.of(m);
        (self.basis.mul(&c) == *m).then_some(c)
    }

    /// Complement of the span spanned by unit vectors, and the projection
    /// onto complement coordinates that kills the span.
    pub fn complement(&self) -> (Matrix, Matrix) {
        let n = self.basis.rows();
        let p = self.basis.characteristic();
        let comp: Vec<usize> = (0..n).filter(|r| !self.rows.contains(r)).collect();
        let mut e = Matrix::zero(p, n, comp.len());
        for (j, &r) in comp.iter().enumerate() {
            e.set(r, j, 1 % p);
        }
        let full = self.basis.hstack(&e);
        let inv = full.inverse().expect("basis plus unit complement is invertible");
        let k = self.basis.cols();
        let proj = inv.block(k, 0, n - k, n);
        (e, proj)
    }
}

/// A subspace grown one vector at a time, kept in echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    n: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(p: u32, n: usize) -> Self {
        Echelon { p, n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                let f = neg_mod(c, self.p);
                for (x, &r) in v.iter_mut().zip(row) {
                    if r != 0 {
                        *x = add_mod(*x, mul_mod(f, r, self.p), self.p);
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut r = self.reduce(v);
        let Some(pc) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(r[pc], self.p);
        for x in r.iter_mut() {
            *x = mul_mod(*x, inv, self.p);
        }
        self.rows.push(r);
        self.pivots.push(pc);
        true
    }

    pub fn insert_columns(&mut self, m: &Matrix) {
        for c in 0..m.cols() {
            self.insert(&m.col(c));
        }
    }

    /// Basis of the span as matrix columns.
    pub fn basis(&self) -> Matrix {
        Matrix::from_columns(self.p, self.n, &self.rows)
    }
}
