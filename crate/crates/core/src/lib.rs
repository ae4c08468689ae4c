//! Exact homological algebra over finite-dimensional algebras over prime fields.

pub mod algebra;
pub mod constructs;
pub mod error;
pub mod exactla;
pub mod harness;
pub mod homology;
pub mod io;
pub mod modrep;
pub mod verdict;

pub use algebra::{algebra_from_quiver, validate_algebra, Algebra, AlgebraData, QuiverPresentation};
pub use error::{Error, Result};
pub use exactla::{Coordinates, Echelon, Fp, Matrix};
pub use verdict::{Evidence, Verdict};
