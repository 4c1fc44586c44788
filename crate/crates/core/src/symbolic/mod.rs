//! Symbolic verification: polynomial exponents and the identity catalog.

pub mod catalog;
pub mod elem;
pub mod poly;

pub use catalog::{
    catalog, verify_all, verify_all_in, verify_identity, verify_identity_in, CatalogError, Identity,
    IdentityReport,
};
pub use elem::{sym_left_divide8, sym_mul8, Shape, SymElem8, SymbolicLoop};
pub use poly::{Monomial, PolyError, Polynomial, VarTable};
