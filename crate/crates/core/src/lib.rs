//! Exact computations with linear Lie superalgebras: supermatrices over Q(i, √2),
//! Grassmann calculus, the classical series and their irreducible non-simple
//! subalgebras, module socles, and a maximality checker.

pub mod algebras;
pub mod constructions;
pub mod error;
pub mod grassmann;
pub mod maxcheck;
pub mod modtools;
pub mod scalar;
pub mod superlinalg;

pub use algebras::{AbstractAlgebra, GramForm, LieSuperAlgebra};
pub use error::{Error, Result};
pub use scalar::{Rat, Scalar};
pub use superlinalg::{kron, pi_shift, qtr, str, super_bracket, Parity, SuperDim, SuperMatrix, Subspace};
