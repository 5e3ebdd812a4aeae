//! Exact computations with affine `sl2` modules at positive integral level,
//! their parafermion commutant and its `sigma`-twisted representations.

pub mod algebra;
pub mod cases;
pub mod classify;
pub mod error;
pub mod expr;
pub mod fock;
pub mod linalg;
pub mod literal;
pub mod modes;
pub mod quotient;
pub mod scalar;
pub mod twist;

pub use algebra::{Basis, GenElem, Role, Symbol};
pub use cases::{check_twisted_lowest, CaseResult, CaseSpec, Group, Registry, Status};
pub use classify::{check_parafermion_hw, classify, ClassRow, ClassificationTable, Origin};
pub use error::{Error, Result};
pub use fock::{Factor, FockSpace, FockVector, ModuleId, Monomial};
pub use literal::{parse_vector_literal, render};
pub use modes::{NamedState, StateName};
pub use quotient::{GramBlock, SimpleQuotient};
pub use scalar::{HalfInt, Scalar};
pub use twist::{LaurentVector, TwistedModule};
