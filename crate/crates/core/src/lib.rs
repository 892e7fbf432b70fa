//! Nominal sets, finitely supported relations, and the maps they induce.
//!
//! Everything is computed symbolically on orbit representatives. The
//! [`oracle`] module enumerates bounded slices by brute force and serves as
//! an independent check.

pub mod atoms;
pub mod binding;
pub mod catalog;
pub mod error;
pub mod laws;
pub mod oracle;
pub mod orbitset;
pub mod presheaf;
pub mod relation;
pub mod sigma;
pub mod value;

pub use atoms::{first_atoms, fresh_atoms, Atom, AtomSet, FinPerm};
pub use error::{NomError, Result};
pub use orbitset::{OrbitSet, SetOp};
pub use relation::{FsRel, Property};
pub use value::{Label, Value};
