use serde::{Deserialize, Serialize};

use super::{FiniteGroup, GroupAction, GroupHom, SubgroupDatum};
use crate::error::{Error, Result};

/// `Q = G/K` with a normalized section and its factor set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quotient {
    pub quotient: FiniteGroup,
    pub proj: GroupHom,
    /// `section[q]` is the least member of coset `q`; `section[0] = 0`.
    pub section: Vec<usize>,
    /// `f(q, q') = s(q) s(q') s(qq')⁻¹ ∈ K`, flattened row-major.
    pub factor_set: Vec<usize>,
}

impl Quotient {
    pub fn f(&self, q: usize, r: usize) -> usize {
        self.factor_set[q * self.quotient.order() + r]
    }

    pub fn s(&self, q: usize) -> usize {
        self.section[q]
    }
}

/// Cosets are ordered by their least member.
pub fn quotient_with_section(g: &FiniteGroup, k: &SubgroupDatum) -> Result<Quotient> {
    k.check_parent(g)?;
    if !k.is_normal() {
        return Err(Error::NotNormal);
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut section = Vec::new();
    for x in g.elements() {
        if coset_of[x] == usize::MAX {
            for &m in k.members() {
                coset_of[g.mul(x, m)] = section.len();
            }
            section.push(x);
        }
    }
    let nq = section.len();
    let mut mult = Vec::with_capacity(nq * nq);
    for a in 0..nq {
        for b in 0..nq {
            mult.push(coset_of[g.mul(section[a], section[b])] as u32);
        }
    }
    let name = format!("{}/{}", g.name(), k.order());
    let mut q = FiniteGroup::from_flat(name, nq, mult)?;
    if let Some(labels) = g.labels() {
        q = q.with_labels(section.iter().map(|&s| format!("[{}]", labels[s])).collect());
    }
    let mut factor_set = Vec::with_capacity(nq * nq);
    for a in 0..nq {
        for b in 0..nq {
            let ab = q.mul(a, b);
            let v = g.mul(g.mul(section[a], section[b]), g.inv(section[ab]));
            debug_assert!(k.contains(v));
            factor_set.push(v);
        }
    }
    let proj = GroupHom { source: g.clone(), target: q.clone(), image: coset_of };
    Ok(Quotient { quotient: q, proj, section, factor_set })
}

/// The action of `G/K` on the conjugacy classes of `K` (classes ordered as
/// in `K.as_group().conjugacy_classes()`), induced by conjugation through
/// the section.
pub fn conj_band(g: &FiniteGroup, k: &SubgroupDatum) -> Result<GroupAction> {
    let quo = quotient_with_section(g, k)?;
    let kg = k.as_group(g);
    let classes = kg.conjugacy_classes();
    let class_of = kg.class_map();
    let perms: Vec<Vec<usize>> = quo
        .quotient
        .elements()
        .map(|q| {
            let s = quo.section[q];
            classes
                .iter()
                .map(|c| {
                    let x = k.members()[c[0]];
                    let y = g.conj(s, x);
                    class_of[k.index_of(y).expect("normal subgroup")]
                })
                .collect()
        })
        .collect();
    GroupAction::new(quo.quotient, classes.len(), &perms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::{abelian, cyclic, dihedral, sym};

    #[test]
    fn z4_mod_z2_has_nontrivial_factor_set() {
        let g = cyclic(4).unwrap();
        let k = SubgroupDatum::new(&g, &[0, 2]).unwrap();
        let q = quotient_with_section(&g, &k).unwrap();
        assert_eq!(q.quotient.order(), 2);
        assert_eq!(q.section, vec![0, 1]);
        assert_eq!(q.f(1, 1), 2);
        assert_eq!(q.f(0, 1), 0);
    }

    #[test]
    fn split_product_has_zero_factor_set() {
        let g = abelian(&[2, 2]).unwrap();
        let k = SubgroupDatum::new(&g, &[0, 1]).unwrap();
        let q = quotient_with_section(&g, &k).unwrap();
        assert!(q.factor_set.iter().all(|&x| x == 0));
    }

    #[test]
    fn section_identity_holds() {
        let g = dihedral(4).unwrap();
        let k = SubgroupDatum::center(&g);
        let q = quotient_with_section(&g, &k).unwrap();
        for a in q.quotient.elements() {
            assert_eq!(q.proj.apply(q.s(a)), a);
            for b in q.quotient.elements() {
                let lhs = g.mul(q.s(a), q.s(b));
                let rhs = g.mul(q.f(a, b), q.s(q.quotient.mul(a, b)));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn s3_band_swaps_three_cycles() {
        let g = sym(3).unwrap();
        let k = SubgroupDatum::derived(&g);
        assert_eq!(k.order(), 3);
        let band = conj_band(&g, &k).unwrap();
        assert_eq!(band.permutation(1), vec![0, 2, 1]);
    }

    #[test]
    fn central_band_is_trivial() {
        let g = dihedral(4).unwrap();
        let band = conj_band(&g, &SubgroupDatum::center(&g)).unwrap();
        assert!(band.is_trivial());
    }

    #[test]
    fn non_normal_rejected() {
        let g = sym(3).unwrap();
        let k = SubgroupDatum::generated(&g, &[1]).unwrap();
        assert_eq!(quotient_with_section(&g, &k).unwrap_err(), Error::NotNormal);
    }
}
