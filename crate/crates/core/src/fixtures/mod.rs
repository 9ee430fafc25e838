//! Simple singularities, matrix factorizations and the built-in catalog.

mod ade;
mod catalog;
mod mf;

pub use ade::{ade_mf_catalog, ade_potential, ade_ring, ade_vars, curve_mf_catalog, AdeType};
pub use catalog::{
    ade_entry, builtin_catalog, cubic_cone, cubic_cone_mf, glob_match, monomial_curve, select, threefold_e6,
    CatalogEntry, CatalogModule, Expected, ADE_FAMILIES,
};
pub use mf::{knoerrer_double, mf_to_module, MatrixFactorization};
