//! Character tables, unitary irrep matrices and Clifford theory for `K ⊲ G`.

mod clifford;
mod dixon;
mod matrices;

pub use clifford::{
    clifford_gerbe_extract, extract_with, frules_check, frules_from, projective_dims, q_action_on_irreps, CliffordContext,
    CliffordDatum, FrulesOrbit, FrulesReport, OrbitPhase, PHASE_TOL,
};
pub use dixon::{character_table, dixon_prime, CharacterTable};
pub use matrices::{irrep_matrices, CMatrix, Defects, IrrepMatrices, MATRIX_TOL};

#[cfg(test)]
mod tests;
