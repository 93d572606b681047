//! Finite n-exangulated categories over prime fields: presentations,
//! axiom checkers, ideal quotients and proper classes of extensions.

pub mod complexes;
pub mod error;
pub mod exstruct;
pub mod fincat;
pub mod format;
pub mod linalg;
pub mod proper;
pub mod quotient;
pub mod report;

pub use complexes::{ChainMap, Complex, Homotopy, HomotopyEquivalence};
pub use error::{Error, Result};
pub use exstruct::{Bounds, Checker, ExtStructure, Extension};
pub use fincat::{Category, CategoryBuilder, Ind, Morphism, Obj, Subcategory};
pub use linalg::{Fp, Mat, Scalar, Subspace, Vector};
pub use report::{Finding, Report, Verdict};
