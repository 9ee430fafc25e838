//! Exact commutative algebra over the rationals for computing obstructions
//! to algebraic connections on finitely presented modules.

pub mod error;
pub mod fixtures;
pub mod groebner;
pub mod input;
pub mod modules;
pub mod monomial;
pub mod obstructions;
pub mod parse;
pub mod poly;
pub mod rational;

pub use error::{AlgebraError, Result};
pub use groebner::{
    free_resolution, module_kernel, preimage, FreeModuleElem, FreeResolution, PolyMatrix, QuotientRing, Ring,
    Submodule,
};
pub use monomial::{ModuleOrder, Monomial, MonomialOrder};
pub use poly::Polynomial;
pub use rational::Rational;
