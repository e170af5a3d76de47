use serde::Serialize;

use super::finab::FinAbGroup;
use super::module::CoeffModule;
use crate::{Error, Result};

/// The character group `A* = Hom(A, Q/Z)`, coordinatized like `A`: the
/// character `χ` with coordinates `(χ_i)` pairs as
/// `⟨χ, a⟩ = Σ χ_i a_i (N / d_i) mod N` with `N = exp(A)`.
#[derive(Clone, Debug, Serialize)]
pub struct DualGroup {
    pub group: FinAbGroup,
    pub modulus: u64,
    /// Contragredient left action `(q·χ)(a) = χ(q⁻¹·a)`, if a band was given.
    pub action: Option<CoeffModule>,
}

impl DualGroup {
    pub fn pairing(&self, chi: &[u64], a: &[u64]) -> u64 {
        pairing(&self.group, chi, a)
    }

    /// Right action `(χ·q)(a) = χ(q·a)`.
    pub fn act_right(&self, module: &CoeffModule, chi: &[u64], q: usize) -> Vec<u64> {
        let t = pullback_matrix(&self.group, &module.action[q]);
        apply(&self.group, &t, chi)
    }
}

pub fn pairing(a: &FinAbGroup, chi: &[u64], x: &[u64]) -> u64 {
    let n = a.exponent();
    a.factors()
        .iter()
        .zip(chi.iter().zip(x))
        .fold(0u64, |acc, (&d, (&c, &v))| (acc + (c % d) * (v % d) % d * (n / d)) % n)
}

/// Matrix of `χ ↦ χ ∘ M` on character coordinates: `T_ji = M_ij d_j / d_i`.
pub fn pullback_matrix(a: &FinAbGroup, m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = a.factors();
    let k = d.len();
    let mut t = vec![vec![0i64; k]; k];
    for j in 0..k {
        for i in 0..k {
            let num = m[i][j] as i128 * d[j] as i128;
            debug_assert_eq!(num % d[i] as i128, 0);
            t[j][i] = ((num / d[i] as i128).rem_euclid(d[j] as i128)) as i64;
        }
    }
    t
}

fn apply(a: &FinAbGroup, m: &[Vec<i64>], v: &[u64]) -> Vec<u64> {
    m.iter()
        .zip(a.factors())
        .map(|(row, &d)| row.iter().zip(v).fold(0i128, |acc, (&x, &y)| (acc + x as i128 * y as i128) % d as i128) as u64)
        .collect()
}

/// Dual group of `a`, with the contragredient of `band` when given.
pub fn dual_group(a: &FinAbGroup, band: Option<&CoeffModule>) -> Result<DualGroup> {
    let action = match band {
        None => None,
        Some(m) => {
            if &m.coeffs != a {
                return Err(Error::Mismatch("band acts on a different group".into()));
            }
            let g = &m.group;
            let mats = g.elements().map(|q| pullback_matrix(a, &m.action[g.inv(q)])).collect();
            Some(CoeffModule::new(g.clone(), a.clone(), mats)?)
        }
    };
    Ok(DualGroup { group: a.clone(), modulus: a.exponent(), action })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::cyclic;

    #[test]
    fn z4_pairing() {
        let z4 = FinAbGroup::cyclic(4);
        let d = dual_group(&z4, None).unwrap();
        assert_eq!(d.group.factors(), &[4]);
        assert_eq!(d.pairing(&[1], &[1]), 1);
        assert_eq!(d.pairing(&[2], &[3]), 2);
    }

    #[test]
    fn contragredients_of_swap_and_inversion() {
        let z2 = cyclic(2).unwrap();
        let v4 = FinAbGroup::new(vec![2, 2]).unwrap();
        let swap = CoeffModule::new(z2.clone(), v4.clone(), vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]]).unwrap();
        let d = dual_group(&v4, Some(&swap)).unwrap();
        assert_eq!(d.action.as_ref().unwrap().action, swap.action);

        let z3 = FinAbGroup::cyclic(3);
        let inv = CoeffModule::new(z2, z3.clone(), vec![vec![vec![1]], vec![vec![2]]]).unwrap();
        let d = dual_group(&z3, Some(&inv)).unwrap();
        assert_eq!(d.action.as_ref().unwrap().action, inv.action);
    }

    #[test]
    fn contragredient_identity_and_double_dual() {
        // Z/2 acting on Z/2 x Z/4 by (a, b) ↦ (a, b + 2a)
        let z2 = cyclic(2).unwrap();
        let a = FinAbGroup::new(vec![2, 4]).unwrap();
        let m = CoeffModule::new(z2, a.clone(), vec![vec![vec![1, 0], vec![0, 1]], vec![vec![1, 0], vec![2, 1]]]).unwrap();
        let d = dual_group(&a, Some(&m)).unwrap();
        let dm = d.action.as_ref().unwrap();
        for q in 0..2 {
            for chi in a.elements() {
                for x in a.elements() {
                    let lhs = d.pairing(&dm.act(q, &chi), &x);
                    let rhs = d.pairing(&chi, &m.act(m.group.inv(q), &x));
                    assert_eq!(lhs, rhs);
                }
            }
        }
        let dd = dual_group(&d.group, Some(dm)).unwrap();
        assert_eq!(dd.group, a);
        assert_eq!(dd.action.unwrap().action, m.action);
    }
}
