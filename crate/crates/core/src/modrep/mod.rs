//! Finite-dimensional left modules and their morphisms.
//!
//! A module stores one action matrix per algebra basis element. Morphisms
//! are matrices `target.dim x source.dim`.

mod hom;
mod iso;
mod presentation;
mod projective;

use std::fmt;
use std::sync::Arc;

use crate::algebra::{combine, Algebra};
use crate::error::{Error, Result};
use crate::exactla::{Coordinates, Echelon, Matrix};

pub use hom::{hom_basis, hom_dim, hom_induced_post, hom_induced_pre};
pub use iso::{exhaustive_search_applies, is_isomorphic, is_isomorphic_seeded, module_invariants, EXHAUSTIVE_LIMIT};
pub use presentation::{random_module, random_presentation, random_presentation_in, Presentation};
pub use projective::{projective_cover, star_dual_projective_map, Cover, ProjMap, Projective};

pub struct ModuleData {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<Matrix>,
}

/// A left module. Cloning is cheap.
#[derive(Clone)]
pub struct Module(Arc<ModuleData>);

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module(dim {})", self.0.dim)
    }
}

impl PartialEq for Module {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0)
            || (self.0.algebra == o.0.algebra && self.0.dim == o.0.dim && self.0.action == o.0.action)
    }
}

impl Eq for Module {}

impl Module {
    /// Validated constructor.
    pub fn new(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Result<Module> {
        let d = algebra.dim();
        if action.len() != d {
            return Err(Error::Validation {
                invariant: "action arity".into(),
                detail: format!("{} action matrices for an algebra of dimension {d}", action.len()),
            });
        }
        for (i, m) in action.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Validation {
                    invariant: "action shape".into(),
                    detail: format!("action[{i}] is {}x{}, expected {dim}x{dim}", m.rows(), m.cols()),
                });
            }
            if m.characteristic() != algebra.characteristic() {
                return Err(Error::BadModule(format!("action[{i}] has the wrong characteristic")));
            }
        }
        let m = Module::from_parts(algebra, dim, action);
        m.check_laws()?;
        Ok(m)
    }

    pub(crate) fn from_parts(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Module {
        Module(Arc::new(ModuleData { algebra, dim, action }))
    }

    fn check_laws(&self) -> Result<()> {
        let a = self.algebra();
        if !self.action_by(a.unit()).is_identity() && self.dim() > 0 {
            return Err(Error::Validation { invariant: "unit acts as identity".into(), detail: String::new() });
        }
        let d = a.dim();
        for i in 0..d {
            for j in 0..d {
                let lhs = self.action(i).mul(self.action(j));
                let c: Vec<u32> = (0..d).map(|k| a.structure_constant(i, j, k)).collect();
                if lhs != self.action_by(&c) {
                    return Err(Error::Validation {
                        invariant: "action is multiplicative".into(),
                        detail: format!("basis pair ({i}, {j})"),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Module {
        let p = algebra.characteristic();
        Module::from_parts(algebra.clone(), 0, vec![Matrix::zero(p, 0, 0); algebra.dim()])
    }

    /// The algebra acting on itself from the left.
    pub fn regular(algebra: &Arc<Algebra>) -> Module {
        let action = (0..algebra.dim()).map(|i| algebra.left_mult(i).clone()).collect();
        Module::from_parts(algebra.clone(), algebra.dim(), action)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.0.algebra
    }

    pub fn characteristic(&self) -> u32 {
        self.0.algebra.characteristic()
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn is_zero(&self) -> bool {
        self.0.dim == 0
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.0.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.0.action
    }

    pub fn action_by(&self, x: &[u32]) -> Matrix {
        if self.dim() == 0 {
            return Matrix::zero(self.characteristic(), 0, 0);
        }
        combine(self.characteristic(), self.algebra().dim(), &self.0.action, x)
    }

    /// Action of the `i`-th idempotent.
    pub fn idempotent_action(&self, i: usize) -> Matrix {
        self.action_by(self.algebra().idempotent(i))
    }

    /// `dim e_i M` for every idempotent.
    pub fn dimension_vector(&self) -> Vec<usize> {
        (0..self.algebra().num_idempotents()).map(|i| self.idempotent_action(i).rank()).collect()
    }

    pub fn same_algebra(&self, o: &Module) -> Result<()> {
        if self.algebra() == o.algebra() {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Submodule spanned by the (independent, invariant) columns of `basis`.
    pub fn submodule(&self, basis: Matrix) -> (Module, Morphism) {
        let coords = Coordinates::new(basis.clone());
        let k = basis.cols();
        let action = self.0.action.iter().map(|a| coords.of(&a.mul(&basis))).collect();
        let sub = Module::from_parts(self.algebra().clone(), k, action);
        let incl = Morphism::from_parts(sub.clone(), self.clone(), basis);
        (sub, incl)
    }

    /// Quotient by the invariant subspace spanned by the independent columns
    /// of `basis`.
    pub fn quotient(&self, basis: Matrix) -> (Module, Morphism) {
        let coords = Coordinates::new(basis);
        let (e, proj) = coords.complement();
        let action = self.0.action.iter().map(|a| proj.mul(&a.mul(&e))).collect();
        let q = Module::from_parts(self.algebra().clone(), e.cols(), action);
        let map = Morphism::from_parts(self.clone(), q.clone(), proj);
        (q, map)
    }

    /// Smallest submodule containing the given columns.
    pub fn generated_by(&self, vectors: &Matrix) -> Matrix {
        let mut span = Echelon::new(self.characteristic(), self.dim());
        let mut queue: Vec<Vec<u32>> = (0..vectors.cols()).map(|c| vectors.col(c)).collect();
        while let Some(v) = queue.pop() {
            if span.insert(&v) {
                for g in self.algebra().generators() {
                    queue.push(self.action_by(g).mul_vec(&v));
                }
                for i in 0..self.algebra().num_idempotents() {
                    queue.push(self.idempotent_action(i).mul_vec(&v));
                }
            }
        }
        span.basis()
    }

    /// `rad M = J M`, as a basis matrix.
    pub fn radical_basis(&self) -> Matrix {
        let mut span = Echelon::new(self.characteristic(), self.dim());
        for r in self.algebra().radical_basis() {
            span.insert_columns(&self.action_by(r));
        }
        span.basis()
    }

    /// `soc M = {v : J v = 0}`, as a basis matrix.
    pub fn socle_basis(&self) -> Matrix {
        let p = self.characteristic();
        let mut stacked = Matrix::zero(p, 0, self.dim());
        for r in self.algebra().radical_basis() {
            stacked = stacked.vstack(&self.action_by(r));
        }
        stacked.kernel_basis()
    }

    /// Linear dual, a module over the opposite algebra.
    pub fn k_dual(&self) -> Module {
        let action = self.0.action.iter().map(Matrix::transpose).collect();
        Module::from_parts(self.algebra().opposite(), self.dim(), action)
    }

    pub fn identity(&self) -> Morphism {
        Morphism::from_parts(self.clone(), self.clone(), Matrix::identity(self.characteristic(), self.dim()))
    }

    pub fn is_valid(&self) -> bool {
        self.check_laws().is_ok()
    }
}

/// A module homomorphism.
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Module,
    target: Module,
    matrix: Matrix,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism({} -> {}) {:?}", self.source.dim(), self.target.dim(), self.matrix)
    }
}

impl Morphism {
    /// Validated constructor.
    pub fn new(source: Module, target: Module, matrix: Matrix) -> Result<Morphism> {
        source.same_algebra(&target)?;
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::BadMorphism(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let f = Morphism::from_parts(source, target, matrix);
        if !f.intertwines() {
            return Err(Error::BadMorphism("matrix does not commute with the action".into()));
        }
        Ok(f)
    }

    pub(crate) fn from_parts(source: Module, target: Module, matrix: Matrix) -> Morphism {
        Morphism { source, target, matrix }
    }

    pub fn zero(source: &Module, target: &Module) -> Morphism {
        let p = source.characteristic();
        Morphism::from_parts(source.clone(), target.clone(), Matrix::zero(p, target.dim(), source.dim()))
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_mono(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_epi(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    /// Checks `f a_src(b) = a_tgt(b) f` on a generating set.
    pub fn intertwines(&self) -> bool {
        let a = self.source.algebra();
        let check = |x: &[u32]| self.matrix.mul(&self.source.action_by(x)) == self.target.action_by(x).mul(&self.matrix);
        a.idempotents().iter().all(|e| check(e)) && a.generators().iter().all(|g| check(g))
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Morphism) -> Result<Morphism> {
        if first.target != self.source {
            return Err(Error::BadMorphism("composition of non-composable maps".into()));
        }
        Ok(Morphism::from_parts(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix)))
    }

    pub fn add(&self, o: &Morphism) -> Morphism {
        Morphism::from_parts(self.source.clone(), self.target.clone(), self.matrix.add(&o.matrix))
    }

    pub fn scale(&self, c: u32) -> Morphism {
        Morphism::from_parts(self.source.clone(), self.target.clone(), self.matrix.scale(c))
    }

    pub fn neg(&self) -> Morphism {
        Morphism::from_parts(self.source.clone(), self.target.clone(), self.matrix.neg())
    }

    /// The transposed map `D(target) -> D(source)` over the opposite algebra.
    pub fn k_dual(&self) -> Morphism {
        Morphism::from_parts(self.target.k_dual(), self.source.k_dual(), self.matrix.transpose())
    }
}

pub fn kernel(f: &Morphism) -> (Module, Morphism) {
    f.source.submodule(f.matrix.kernel_basis())
}

pub fn cokernel(f: &Morphism) -> (Module, Morphism) {
    f.target.quotient(f.matrix.column_space())
}

/// Image as a submodule of the target.
pub fn image(f: &Morphism) -> (Module, Morphism) {
    f.target.submodule(f.matrix.column_space())
}

/// Factor `f` as `incl . e` with `e` onto the image.
pub fn epi_mono(f: &Morphism) -> (Morphism, Morphism) {
    let (im, incl) = image(f);
    let coords = Coordinates::new(incl.matrix.clone());
    let e = Morphism::from_parts(f.source.clone(), im, coords.of(&f.matrix));
    (e, incl)
}

/// `h` with `mono . h = g`, when `g` lands in the image of `mono`.
pub fn factor_through_mono(mono: &Morphism, g: &Morphism) -> Option<Morphism> {
    let h = mono.matrix.solve_matrix(&g.matrix)?;
    Some(Morphism::from_parts(g.source.clone(), mono.source.clone(), h))
}

/// `h` with `h . epi = g`, when `g` kills the kernel of `epi`.
pub fn factor_through_epi(epi: &Morphism, g: &Morphism) -> Option<Morphism> {
    let ht = epi.matrix.transpose().solve_matrix(&g.matrix.transpose())?;
    Some(Morphism::from_parts(epi.target.clone(), g.target.clone(), ht.transpose()))
}

pub struct DirectSum {
    pub module: Module,
    pub injections: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

pub fn direct_sum(algebra: &Arc<Algebra>, parts: &[Module]) -> Result<DirectSum> {
    for m in parts {
        if m.algebra() != algebra {
            return Err(Error::AlgebraMismatch);
        }
    }
    let p = algebra.characteristic();
    let n: usize = parts.iter().map(Module::dim).sum();
    let action = (0..algebra.dim())
        .map(|b| {
            let blocks: Vec<&Matrix> = parts.iter().map(|m| m.action(b)).collect();
            Matrix::block_diag(p, &blocks)
        })
        .collect();
    let module = Module::from_parts(algebra.clone(), n, action);
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut off = 0;
    for m in parts {
        let mut inj = Matrix::zero(p, n, m.dim());
        inj.set_block(off, 0, &Matrix::identity(p, m.dim()));
        injections.push(Morphism::from_parts(m.clone(), module.clone(), inj.clone()));
        projections.push(Morphism::from_parts(module.clone(), m.clone(), inj.transpose()));
        off += m.dim();
    }
    Ok(DirectSum { module, injections, projections })
}

pub struct Square {
    pub object: Module,
    pub first: Morphism,
    pub second: Morphism,
}

/// Pullback of `f: X -> Z` and `g: Y -> Z`: the kernel of `(f, -g)`.
pub fn pullback(f: &Morphism, g: &Morphism) -> Result<Square> {
    if f.target != g.target {
        return Err(Error::BadMorphism("pullback of maps with different targets".into()));
    }
    let x = f.source.dim();
    let sum = direct_sum(f.source.algebra(), &[f.source.clone(), g.source.clone()])?;
    let m = f.matrix.hstack(&g.matrix.neg());
    let diff = Morphism::from_parts(sum.module.clone(), f.target.clone(), m);
    let (k, incl) = kernel(&diff);
    let b = incl.matrix;
    let p1 = Morphism::from_parts(k.clone(), f.source.clone(), b.block(0, 0, x, k.dim()));
    let p2 = Morphism::from_parts(k.clone(), g.source.clone(), b.block(x, 0, g.source.dim(), k.dim()));
    Ok(Square { object: k, first: p1, second: p2 })
}

/// Pushout of `f: Z -> X` and `g: Z -> Y`: the cokernel of `(f, -g)^T`.
pub fn pushout(f: &Morphism, g: &Morphism) -> Result<Square> {
    if f.source != g.source {
        return Err(Error::BadMorphism("pushout of maps with different sources".into()));
    }
    let x = f.target.dim();
    let sum = direct_sum(f.source.algebra(), &[f.target.clone(), g.target.clone()])?;
    let m = f.matrix.vstack(&g.matrix.neg());
    let diff = Morphism::from_parts(f.source.clone(), sum.module.clone(), m);
    let (q, proj) = cokernel(&diff);
    let b = proj.matrix;
    let q1 = Morphism::from_parts(f.target.clone(), q.clone(), b.block(0, 0, q.dim(), x));
    let q2 = Morphism::from_parts(g.target.clone(), q.clone(), b.block(0, x, q.dim(), g.target.dim()));
    Ok(Square { object: q, first: q1, second: q2 })
}

/// Inclusion of the radical and projection onto the top.
pub fn radical_and_top(m: &Module) -> (Morphism, Morphism) {
    let rad = m.radical_basis();
    let (_, incl) = m.submodule(rad.clone());
    let (_, top) = m.quotient(rad);
    (incl, top)
}

/// The indecomposable projective `A e_i` (0-based `i`).
pub fn indecomposable_projective(a: &Arc<Algebra>, i: usize) -> Module {
    let coords = a.projective_basis(i);
    let b = coords.basis();
    let action = (0..a.dim()).map(|k| coords.of(&a.left_mult(k).mul(b))).collect();
    Module::from_parts(a.clone(), b.cols(), action)
}

/// The simple top of `A e_i` (0-based `i`).
pub fn simple_module(a: &Arc<Algebra>, i: usize) -> Module {
    let p = indecomposable_projective(a, i);
    let (_, top) = radical_and_top(&p);
    top.target().clone()
}

/// Linear dual of `A_A`, i.e. the injective cogenerator.
pub fn injective_cogenerator(a: &Arc<Algebra>) -> Module {
    Module::regular(&a.opposite()).k_dual()
}

/// `D(A^op e_i)`, the injective envelope of the `i`-th simple.
pub fn indecomposable_injective(a: &Arc<Algebra>, i: usize) -> Module {
    indecomposable_projective(&a.opposite(), i).k_dual()
}
