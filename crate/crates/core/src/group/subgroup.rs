use serde::{Deserialize, Serialize};

use super::FiniteGroup;
use crate::error::{Error, Result};

/// A subgroup recorded by its sorted member list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupDatum {
    parent: String,
    parent_order: usize,
    members: Vec<usize>,
    is_normal: bool,
}

/// Sorted closure of `gens` under multiplication.
pub(crate) fn closure(g: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; g.order()];
    inside[0] = true;
    let mut members = vec![0usize];
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for &s in gens {
            let y = g.mul(x, s);
            if !inside[y] {
                inside[y] = true;
                members.push(y);
            }
        }
        i += 1;
    }
    members.sort_unstable();
    members
}

impl SubgroupDatum {
    /// Validates that `members` is a subgroup of `g`.
    pub fn new(g: &FiniteGroup, members: &[usize]) -> Result<Self> {
        let mut m = members.to_vec();
        m.sort_unstable();
        m.dedup();
        if m.first() != Some(&0) {
            return Err(Error::NotSubgroup("missing identity".into()));
        }
        if m.iter().any(|&x| x >= g.order()) {
            return Err(Error::NotSubgroup("element out of range".into()));
        }
        let mut inside = vec![false; g.order()];
        for &x in &m {
            inside[x] = true;
        }
        for &a in &m {
            if !inside[g.inv(a)] {
                return Err(Error::NotSubgroup(format!("not closed under inverse at {a}")));
            }
            for &b in &m {
                if !inside[g.mul(a, b)] {
                    return Err(Error::NotSubgroup(format!("not closed at ({a}, {b})")));
                }
            }
        }
        let is_normal = g.elements().all(|x| m.iter().all(|&h| inside[g.conj(x, h)]));
        Ok(SubgroupDatum {
            parent: g.name().to_string(),
            parent_order: g.order(),
            members: m,
            is_normal,
        })
    }

    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Result<Self> {
        if let Some(&bad) = gens.iter().find(|&&x| x >= g.order()) {
            return Err(Error::NotSubgroup(format!("generator {bad} out of range")));
        }
        Self::new(g, &closure(g, gens))
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Self::new(g, &(0..g.order()).collect::<Vec<_>>()).expect("whole group")
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::new(g, &[0]).expect("trivial subgroup")
    }

    pub fn center(g: &FiniteGroup) -> Self {
        let z: Vec<usize> = g
            .elements()
            .filter(|&a| g.elements().all(|b| g.commute(a, b)))
            .collect();
        Self::new(g, &z).expect("center")
    }

    pub fn derived(g: &FiniteGroup) -> Self {
        let mut comms: Vec<usize> = Vec::new();
        for a in g.elements() {
            for b in g.elements() {
                comms.push(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
            }
        }
        comms.sort_unstable();
        comms.dedup();
        Self::generated(g, &comms).expect("derived subgroup")
    }

    /// Every subgroup, as joins of cyclic subgroups. Sorted by (order, members).
    pub fn all(g: &FiniteGroup) -> Vec<Self> {
        let mut cyclic: Vec<Vec<usize>> = g.elements().map(|x| closure(g, &[x])).collect();
        cyclic.sort();
        cyclic.dedup();
        let mut found: std::collections::BTreeSet<Vec<usize>> = cyclic.iter().cloned().collect();
        let mut frontier: Vec<Vec<usize>> = found.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    if c.iter().all(|x| h.binary_search(x).is_ok()) {
                        continue;
                    }
                    let mut gens = h.clone();
                    gens.extend_from_slice(c);
                    let j = closure(g, &gens);
                    if found.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        let mut subs: Vec<Self> = found
            .into_iter()
            .map(|m| Self::new(g, &m).expect("closure is a subgroup"))
            .collect();
        subs.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
        subs
    }

    pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Self> {
        Self::all(g).into_iter().filter(|s| s.is_normal).collect()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Position of `x` in the sorted member list.
    pub fn index_of(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    pub fn belongs_to(&self, g: &FiniteGroup) -> bool {
        self.parent_order == g.order() && self.parent == g.name()
    }

    pub fn check_parent(&self, g: &FiniteGroup) -> Result<()> {
        if self.belongs_to(g) {
            Ok(())
        } else {
            Err(Error::Mismatch(format!(
                "subgroup of {} used with {}",
                self.parent,
                g.name()
            )))
        }
    }

    /// The subgroup as a group in its own right; element `i` is `members[i]`.
    pub fn as_group(&self, g: &FiniteGroup) -> FiniteGroup {
        let n = self.members.len();
        let mut mult = Vec::with_capacity(n * n);
        for &a in &self.members {
            for &b in &self.members {
                mult.push(self.index_of(g.mul(a, b)).expect("closed") as u32);
            }
        }
        let name = format!("{}<{}>", g.name(), n);
        let grp = FiniteGroup::from_flat(name, n, mult).expect("subgroup table is a group");
        match g.labels() {
            Some(l) => grp.with_labels(self.members.iter().map(|&m| l[m].clone()).collect()),
            None => grp,
        }
    }
}
