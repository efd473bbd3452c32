//! Exact symbolic workbench for pointed Hopf algebras and polynomial identities.
//!
//! The crate is organised bottom-up:
//!
//! - [`scalars`]: exact coefficient fields (rationals, cyclotomic fields `Q(ζ_N)`,
//!   rational functions `Q(q)`).
//! - [`linalg`]: dense exact matrices, nullspaces and integer Smith normal form.
//! - [`groups`]: finitely generated abelian groups with characters, and small
//!   finite groups given by a multiplication table.
//! - [`freealg`]: the free associative algebra and multilinear identity templates.
//! - [`presented`]: presented pointed Hopf algebras with PBW normal forms,
//!   completion, adjoint actions and the PI / `H_fin` decisions for Cartan data.
//! - [`rep`]: exact matrix representations (the modules `V_n`, the regular
//!   representation of `F_(q)` over `K = F[a^{±1}, x^n]`).
//! - [`pilab`]: identity verification and discovery, delta-set dimensions and the
//!   bilinear image bound.
//! - [`colorlie`]: color Lie superalgebras and the smash-product PI criterion.

pub mod colorlie;
pub mod error;
pub mod freealg;
pub mod groups;
pub mod linalg;
pub mod pilab;
pub mod presented;
pub mod rep;
pub mod scalars;

pub use error::{Error, Result};
pub use scalars::{FieldCtx, FieldKind, Scalar};
