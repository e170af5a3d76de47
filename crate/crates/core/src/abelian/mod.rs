//! Finitely generated abelian groups and linear algebra over `Z` and `Z/N`.

pub mod zmod;
pub mod finab;
pub mod smith;

pub use finab::{hom_structure, AbHom, FinAbGroup, HomStructure};
pub use smith::{smith_diagonal, smith_normal_form, smith_normal_form_i64, SmithDecomposition};
pub mod dual;
pub mod module;
pub mod subquotient;

pub use dual::{dual_group, DualGroup};
pub use module::{AbelianCoordinates, CoeffModule};
pub use subquotient::Subquotient;
