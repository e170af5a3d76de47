//! Finite group cohomology, gerbes on action groupoids, Clifford theory and
//! pointed fusion-category data, with independent oracles for each
//! counting identity.

pub mod abelian;
pub mod cohomology;
pub mod config;
pub mod cyclotomic;
pub mod error;
pub mod extension;
pub mod group;
pub mod groupoid;
pub mod fusion;
pub mod rep;
pub mod symmetry;

pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupAction, GroupHom, SubgroupDatum};
