//! Group cohomology through the normalized bar complex, with finite and
//! `C^×` coefficients, induced maps and relative (mapping cone) cohomology.

pub mod bar;
pub mod complex;
pub mod induced;
pub mod integral;
pub mod relative;

pub use bar::{BarComplex, Coefficients};
pub use complex::{apply_differential, check_witness, is_cocycle, is_cohomologous, CochainComplex, Cochain, Cohomology, Coord};
pub use induced::{induced_map, InducedKind};
pub use integral::{cohomology_cx, cohomology_cx_at, integral_cohomology, CxCohomology};
pub use relative::{relative_der_complex, ConeComplex, RelativeReport};

use crate::abelian::CoeffModule;
use crate::group::FiniteGroup;
use crate::Result;

/// `H^n(G, M)` for a finite coefficient module.
pub fn cohomology(g: &FiniteGroup, module: &CoeffModule, n: usize) -> Result<Cohomology> {
    Cohomology::compute(&BarComplex::new(g.clone(), Coefficients::finite(module))?, n, 1)
}

/// The bar differential of a cochain over `g` with coefficients `module`.
pub fn differential(bar: &BarComplex, c: &Cochain) -> Result<Cochain> {
    apply_differential(bar, c)
}

#[cfg(test)]
mod tests;
