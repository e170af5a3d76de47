//! Finite groups given by multiplication tables.
//!
//! Elements are dense indices `0..order` with `0` the identity. Every
//! table is precomputed, so multiplication is a lookup.

mod action;
mod aut;
pub mod catalog;
mod quotient;
mod spec;
mod subgroup;

pub use action::{act_orbits, GroupAction, GroupHom, Orbit};
pub use aut::{automorphism_group, AutomorphismGroup};
pub use catalog::{catalog_names, direct_product};
pub use quotient::{conj_band, quotient_with_section, Quotient};
pub use spec::{load_group, parse_subgroup_selector};
pub use subgroup::SubgroupDatum;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a full multiplication table. Checks the Latin-square
    /// property first, then that `0` is the identity, then associativity.
    pub fn from_table(name: impl Into<String>, table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if n > crate::config::caps().max_order {
            return Err(Error::cap("group order", n, crate::config::caps().max_order));
        }
        let mut mult = Vec::with_capacity(n * n);
        for row in table {
            if row.len() != n {
                return Err(Error::InvalidGroup("table is not square".into()));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidGroup(format!("entry {v} out of range")));
                }
                mult.push(v as u32);
            }
        }
        Self::from_flat(name.into(), n, mult)
    }

    pub(crate) fn from_flat(name: String, n: usize, mult: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let v = mult[i * n + j] as usize;
                if seen[v] {
                    return Err(Error::NotLatinSquare(i));
                }
                seen[v] = true;
            }
        }
        for j in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for i in 0..n {
                let v = mult[i * n + j] as usize;
                if seen[v] {
                    return Err(Error::NotLatinSquare(j));
                }
                seen[v] = true;
            }
        }
        for i in 0..n {
            if mult[i] as usize != i || mult[i * n] as usize != i {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mult[a * n + b] as usize;
                for c in 0..n {
                    let bc = mult[b * n + c] as usize;
                    if mult[ab * n + c] != mult[a * n + bc] {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let mut inv = vec![0u32; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| mult[a * n + b] == 0).expect("latin square") as u32;
        }
        Ok(FiniteGroup { name, order: n, mult, inv, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        if labels.len() == self.order {
            self.labels = Some(labels);
        }
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => g.to_string(),
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g h g⁻¹`
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn pow(&self, g: usize, e: usize) -> usize {
        let mut r = 0;
        for _ in 0..e {
            r = self.mul(r, g);
        }
        r
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|g| self.element_order(g))
            .fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, each sorted, ordered by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes = Vec::new();
        for x in self.elements() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = self.elements().map(|g| self.conj(g, x)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members);
        }
        classes
    }

    /// Index of the conjugacy class of each element, matching `conjugacy_classes`.
    pub fn class_map(&self) -> Vec<usize> {
        let mut map = vec![0; self.order];
        for (i, c) in self.conjugacy_classes().iter().enumerate() {
            for &x in c {
                map[x] = i;
            }
        }
        map
    }

    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        self.elements().filter(|&h| self.mul(g, h) == self.mul(h, g)).collect()
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Checks the full group axioms with a triple loop.
    pub fn validate(&self) -> Result<()> {
        Self::from_flat(self.name.clone(), self.order, self.mult.clone()).map(|_| ())
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for g in 1..self.order {
            if span.binary_search(&g).is_ok() {
                continue;
            }
            gens.push(g);
            span = subgroup::closure(self, &gens);
            if span.len() == self.order {
                break;
            }
        }
        gens
    }

    /// Whether `image` defines a homomorphism from `self` to `target`.
    pub fn is_hom_to(&self, target: &FiniteGroup, image: &[usize]) -> bool {
        image.len() == self.order
            && image[0] == 0
            && self.elements().all(|a| {
                self.elements()
                    .all(|b| image[self.mul(a, b)] == target.mul(image[a], image[b]))
            })
    }

    /// Brute-force isomorphism test for small groups.
    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        self.find_isomorphism(other).is_some()
    }

    pub fn find_isomorphism(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        if self.order != other.order {
            return None;
        }
        let mut a_orders: Vec<usize> = self.elements().map(|g| self.element_order(g)).collect();
        let mut b_orders: Vec<usize> = other.elements().map(|g| other.element_order(g)).collect();
        a_orders.sort_unstable();
        b_orders.sort_unstable();
        if a_orders != b_orders {
            return None;
        }
        let gens = self.generators();
        let words = aut::word_table(self, &gens);
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let o = self.element_order(g);
                other.elements().filter(|&h| other.element_order(h) == o).collect()
            })
            .collect();
        let mut choice = vec![0usize; gens.len()];
        aut::search_images(self, other, &gens, &words, &candidates, &mut choice, 0, &mut |img| {
            Some(img.to_vec())
        })
    }
}
