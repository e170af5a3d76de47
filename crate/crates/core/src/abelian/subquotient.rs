//! Structure of `L1 / L2` for submodules `L2 ⊆ L1 ⊆ (Z/M)^m`.
//!
//! The quotient is enumerated through a polycyclic series of generators
//! (cheap because cohomology groups are small even when `m` is not), then
//! put in invariant-factor form by a Smith decomposition of the relations.

use std::collections::HashMap;

use num_traits::ToPrimitive;

use super::finab::FinAbGroup;
use super::smith::smith_normal_form_i64;
use super::zmod::Howell;
use crate::config::caps;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Subquotient {
    denominator: Howell,
    structure: FinAbGroup,
    /// canonical vectors of the invariant-factor generators
    generators: Vec<Vec<u64>>,
    /// each generator as an integer combination of the input candidates
    generator_words: Vec<Vec<(usize, i64)>>,
    table: HashMap<Vec<u64>, Vec<u64>>,
}

impl Subquotient {
    /// `candidates` generate `L1` modulo `denominator` (`L2`).
    pub fn new(candidates: &[Vec<u64>], denominator: Howell) -> Result<Self> {
        let n = denominator.modulus();
        let m = denominator.ncols();
        let cap = caps().max_classes;
        let canon = |v: &[u64]| {
            let mut w: Vec<u64> = v.iter().map(|x| x % n).collect();
            denominator.reduce_vec(&mut w);
            w
        };
        let add = |a: &[u64], b: &[u64]| -> Vec<u64> {
            let s: Vec<u64> = a.iter().zip(b).map(|(x, y)| (x + y) % n).collect();
            canon(&s)
        };
        let zero = vec![0u64; m];
        // element list with normal forms over the used generators
        let mut elems: Vec<Vec<u64>> = vec![zero.clone()];
        let mut forms: Vec<Vec<u32>> = vec![Vec::new()];
        let mut index: HashMap<Vec<u64>, usize> = HashMap::from([(zero.clone(), 0)]);
        let mut used: Vec<usize> = Vec::new();
        let mut rel_orders: Vec<u64> = Vec::new();
        let mut relations: Vec<Vec<u32>> = Vec::new();
        for (ci, cand) in candidates.iter().enumerate() {
            let g = canon(cand);
            if index.contains_key(&g) {
                continue;
            }
            let mut multiples = vec![zero.clone(), g.clone()];
            loop {
                let last = multiples.last().unwrap();
                if index.contains_key(last) {
                    break;
                }
                let next = add(last, &g);
                multiples.push(next);
                if multiples.len() as u64 > n + 1 {
                    return Err(Error::Other("relative order exceeds modulus".into()));
                }
            }
            let r = (multiples.len() - 1) as u64;
            let hit = index[multiples.last().unwrap()];
            let new_size = elems.len() * r as usize;
            if new_size > cap || new_size.saturating_mul(m) > 50_000_000 {
                return Err(Error::cap("quotient size", new_size, cap));
            }
            relations.push(forms[hit].clone());
            let base = elems.len();
            for k in 1..r as usize {
                for i in 0..base {
                    let v = add(&elems[i], &multiples[k]);
                    let mut f = forms[i].clone();
                    f.resize(used.len(), 0);
                    f.push(k as u32);
                    index.insert(v.clone(), elems.len());
                    elems.push(v);
                    forms.push(f);
                }
            }
            used.push(ci);
            rel_orders.push(r);
        }
        let t = used.len();
        // relation rows r_i e_i - (normal form of r_i g_i)
        let mut rel: Vec<Vec<i64>> = vec![vec![0; t]; t];
        for i in 0..t {
            rel[i][i] = rel_orders[i] as i64;
            for (j, &c) in relations[i].iter().enumerate() {
                rel[i][j] -= c as i64;
            }
        }
        let snf = smith_normal_form_i64(&rel, t)?;
        let diag: Vec<u64> = (0..t).map(|i| snf.d[i][i].to_u64().expect("positive factor")).collect();
        let keep: Vec<usize> = (0..t).filter(|&i| diag[i] != 1).collect();
        let structure = FinAbGroup::new(keep.iter().map(|&i| diag[i]).collect())?;
        let v: Vec<Vec<i64>> = snf.v.iter().map(|r| r.iter().map(|x| x.to_i64().expect("small")).collect()).collect();
        let v_inv: Vec<Vec<i64>> =
            snf.v_inv.iter().map(|r| r.iter().map(|x| x.to_i64().expect("small")).collect()).collect();
        let mut table = HashMap::with_capacity(elems.len());
        for (e, f) in elems.iter().zip(&forms) {
            let coords: Vec<u64> = keep
                .iter()
                .map(|&i| {
                    let s: i64 = f.iter().enumerate().map(|(j, &a)| a as i64 * v[j][i]).sum();
                    s.rem_euclid(diag[i] as i64) as u64
                })
                .collect();
            table.insert(e.clone(), coords);
        }
        let mut generators = Vec::new();
        let mut generator_words = Vec::new();
        for &i in &keep {
            let word: Vec<(usize, i64)> =
                (0..t).filter(|&j| v_inv[i][j] != 0).map(|j| (used[j], v_inv[i][j])).collect();
            let mut acc = zero.clone();
            for &(ci, c) in &word {
                let g = canon(&candidates[ci]);
                let c = c.rem_euclid(n as i64) as u64;
                for (a, x) in acc.iter_mut().zip(&g) {
                    *a = (*a + c * x) % n;
                }
            }
            generators.push(canon(&acc));
            generator_words.push(word);
        }
        Ok(Subquotient { denominator, structure, generators, generator_words, table })
    }

    pub fn structure(&self) -> &FinAbGroup {
        &self.structure
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    pub fn generator_words(&self) -> &[Vec<(usize, i64)>] {
        &self.generator_words
    }

    pub fn denominator(&self) -> &Howell {
        &self.denominator
    }

    pub fn canonical(&self, v: &[u64]) -> Vec<u64> {
        let n = self.denominator.modulus();
        let mut w: Vec<u64> = v.iter().map(|x| x % n).collect();
        self.denominator.reduce_vec(&mut w);
        w
    }

    /// Coordinates of `v + L2`, or `None` when `v ∉ L1`.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        self.table.get(&self.canonical(v)).cloned()
    }

    /// Canonical vector of the element with the given coordinates.
    pub fn element(&self, coords: &[u64]) -> Vec<u64> {
        let n = self.denominator.modulus();
        let mut acc = vec![0u64; self.denominator.ncols()];
        for (g, &c) in self.generators.iter().zip(coords) {
            for (a, x) in acc.iter_mut().zip(g) {
                *a = (*a + (c % n) * x) % n;
            }
        }
        self.canonical(&acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_of_z8_by_2z8() {
        let l2 = Howell::new(8, 1, vec![vec![4]]);
        let sq = Subquotient::new(&[vec![2]], l2).unwrap();
        assert_eq!(sq.structure().factors(), &[2]);
        assert_eq!(sq.coordinates(&[6]), Some(vec![1]));
        assert_eq!(sq.coordinates(&[1]), None);
    }

    #[test]
    fn mixed_structure() {
        // (Z/4)^2 modulo ⟨(2, 2)⟩ has structure Z/2 x Z/4
        let l2 = Howell::new(4, 2, vec![vec![2, 2]]);
        let sq = Subquotient::new(&[vec![1, 0], vec![0, 1]], l2).unwrap();
        assert_eq!(sq.structure().factors(), &[2, 4]);
        for c1 in 0..2 {
            for c2 in 0..4 {
                let e = sq.element(&[c1, c2]);
                assert_eq!(sq.coordinates(&e), Some(vec![c1, c2]));
            }
        }
    }
}
