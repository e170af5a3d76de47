use serde::Serialize;

use super::bar::{BarComplex, Coefficients};
use super::complex::{Cochain, Cohomology, Coord};
use crate::abelian::zmod::lcm;
use crate::abelian::AbHom;
use crate::group::{FiniteGroup, GroupHom, SubgroupDatum};
use crate::{Error, Result};

/// Which functoriality a map on cohomology comes from.
pub enum InducedKind<'a> {
    /// Along the inclusion of a subgroup of the source group.
    Restriction { subgroup: &'a SubgroupDatum },
    /// Along a surjection `G → Q` onto the source group.
    Inflation { projection: &'a GroupHom },
    /// Along an equivariant coefficient map (matrix `target rank × source rank`).
    Coefficient { target: &'a Coefficients, matrix: &'a [Vec<i64>] },
}

/// A map between computed cohomology groups, in their canonical coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct InducedMap {
    #[serde(skip)]
    pub source: Cohomology,
    #[serde(skip)]
    pub target: Cohomology,
    #[serde(skip)]
    pub target_complex: BarComplex,
    pub hom: AbHom,
}

/// Matrix of the map induced by a cochain map `f` (columns = images of the
/// source generators).
pub fn induced_hom(src: &Cohomology, tgt: &Cohomology, f: impl Fn(&Cochain) -> Result<Cochain>) -> Result<AbHom> {
    let cols: Vec<Vec<u64>> =
        src.generators().iter().map(|g| tgt.classify(&f(g)?)).collect::<Result<_>>()?;
    let rows = tgt.structure().rank();
    let m = (0..rows).map(|i| cols.iter().map(|c| c[i] as i64).collect()).collect();
    AbHom::new(src.structure().clone(), tgt.structure().clone(), m)
}

fn pulled_back(src: &BarComplex, group: &FiniteGroup, image: &[usize]) -> BarComplex {
    let action = image.iter().map(|&g| src.coeffs.action[g].clone()).collect();
    let coeffs = Coefficients { kinds: src.coeffs.kinds.clone(), action, label: src.coeffs.label.clone() };
    BarComplex { group: group.clone(), coeffs }
}

/// The map `H^n(src) → H^n(target)` of the requested kind. `hint` sets the
/// representative level of the source computation.
pub fn induced_map(src: &BarComplex, kind: InducedKind<'_>, n: usize, hint: u64) -> Result<InducedMap> {
    let source = Cohomology::compute(src, n, hint)?;
    match kind {
        InducedKind::Restriction { subgroup } => {
            subgroup.check_parent(&src.group)?;
            let k = subgroup.as_group(&src.group);
            let tc = pulled_back(src, &k, subgroup.members());
            let target = Cohomology::compute(&tc, n, source.modulus())?;
            let hom = induced_hom(&source, &target, |c| Ok(tc.pullback(src, subgroup.members(), c)))?;
            Ok(InducedMap { source, target, target_complex: tc, hom })
        }
        InducedKind::Inflation { projection } => {
            if projection.target != src.group {
                return Err(Error::Mismatch("projection does not land in the source group".into()));
            }
            let tc = pulled_back(src, &projection.source, &projection.image);
            let target = Cohomology::compute(&tc, n, source.modulus())?;
            let hom = induced_hom(&source, &target, |c| Ok(tc.pullback(src, &projection.image, c)))?;
            Ok(InducedMap { source, target, target_complex: tc, hom })
        }
        InducedKind::Coefficient { target: coeffs, matrix } => {
            check_equivariant(&src.coeffs, coeffs, matrix)?;
            let tc = BarComplex::new(src.group.clone(), coeffs.clone())?;
            let level_hint = lcm(source.modulus(), super::complex::finite_lcm(&src.coeffs.kinds));
            let target = Cohomology::compute(&tc, n, level_hint)?;
            let level = target.modulus();
            let hom = induced_hom(&source, &target, |c| Ok(src.map_coefficients(coeffs, matrix, c, level)))?;
            Ok(InducedMap { source, target, target_complex: tc, hom })
        }
    }
}

/// `m · g_src = g_tgt · m` on coordinates, for every group element.
fn check_equivariant(src: &Coefficients, tgt: &Coefficients, m: &[Vec<i64>]) -> Result<()> {
    if m.len() != tgt.rank() || m.iter().any(|r| r.len() != src.rank()) {
        return Err(Error::Mismatch("coefficient matrix has the wrong shape".into()));
    }
    for (a, b) in src.action.iter().zip(&tgt.action) {
        for i in 0..tgt.rank() {
            for j in 0..src.rank() {
                let lhs: i64 = (0..src.rank()).map(|k| m[i][k] * a[k][j]).sum();
                let rhs: i64 = (0..tgt.rank()).map(|k| b[i][k] * m[k][j]).sum();
                let ok = match tgt.kinds[i] {
                    Coord::Finite(d) => (lhs - rhs).rem_euclid(d as i64) == 0,
                    Coord::Divisible => lhs == rhs,
                };
                if !ok {
                    return Err(Error::InvalidAction("coefficient map is not equivariant".into()));
                }
            }
        }
    }
    Ok(())
}
