//! Gröbner bases for submodules of free modules over quotient rings.

pub mod audit;
pub(crate) mod engine;
mod matrix;
mod resolution;
mod ring;
mod submodule;
pub(crate) mod svec;

pub use audit::{audited, AuditLog};
pub use engine::EngineStats;
pub use matrix::{ElemDisplay, FreeModuleElem, PolyMatrix};
pub use resolution::{free_resolution, FreeResolution};
pub use ring::{QuotientRing, Ring};
pub(crate) use ring::same_ring;
pub use submodule::{
    buchberger, lift_with_witness, module_kernel, normal_form, preimage, prune_modulo, submodule_equal,
    syzygy_matrix, syzygy_module, Submodule,
};
