//! Criterion benchmarks for the core engine; see `benches/engine.rs`.

use gerbeforge::group::catalog::{dihedral, quaternion8, sym};
use gerbeforge::FiniteGroup;

/// Groups the benchmarks sweep over, small to large.
pub fn bench_groups() -> Vec<FiniteGroup> {
    vec![sym(3).unwrap(), dihedral(4).unwrap(), quaternion8(), sym(4).unwrap()]
}
