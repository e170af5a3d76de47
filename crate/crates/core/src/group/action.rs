use serde::{Deserialize, Serialize};

use super::{FiniteGroup, SubgroupDatum};
use crate::error::{Error, Result};

/// A homomorphism stored as its image table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupHom {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    pub image: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: FiniteGroup, target: FiniteGroup, image: Vec<usize>) -> Result<Self> {
        if !source.is_hom_to(&target, &image) {
            return Err(Error::InvalidGroup("map is not a homomorphism".into()));
        }
        Ok(GroupHom { source, target, image })
    }

    pub fn apply(&self, g: usize) -> usize {
        self.image[g]
    }

    pub fn kernel(&self) -> SubgroupDatum {
        let k: Vec<usize> = self.source.elements().filter(|&g| self.image[g] == 0).collect();
        SubgroupDatum::new(&self.source, &k).expect("kernel is a subgroup")
    }

    pub fn compose(&self, after: &GroupHom) -> Result<GroupHom> {
        if after.source != self.target {
            return Err(Error::Mismatch("composition of incompatible homomorphisms".into()));
        }
        let image = self.image.iter().map(|&x| after.image[x]).collect();
        Ok(GroupHom { source: self.source.clone(), target: after.target.clone(), image })
    }
}

/// A left action on `0..set_size`; `act(g, act(h, x)) = act(gh, x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupAction {
    group: FiniteGroup,
    set_size: usize,
    table: Vec<u32>,
}

impl GroupAction {
    /// `perms[g][x]` is the image of point `x` under `g`.
    pub fn new(group: FiniteGroup, set_size: usize, perms: &[Vec<usize>]) -> Result<Self> {
        if perms.len() != group.order() {
            return Err(Error::InvalidAction("one permutation per element required".into()));
        }
        let mut table = Vec::with_capacity(group.order() * set_size);
        for (g, p) in perms.iter().enumerate() {
            if p.len() != set_size {
                return Err(Error::InvalidAction(format!("permutation {g} has wrong length")));
            }
            let mut seen = vec![false; set_size];
            for &x in p {
                if x >= set_size || seen[x] {
                    return Err(Error::InvalidAction(format!("element {g} is not a bijection")));
                }
                seen[x] = true;
            }
            table.extend(p.iter().map(|&x| x as u32));
        }
        let a = GroupAction { group, set_size, table };
        for x in 0..set_size {
            if a.act(0, x) != x {
                return Err(Error::InvalidAction("identity does not act trivially".into()));
            }
        }
        for g in a.group.elements() {
            for h in a.group.elements() {
                for x in 0..set_size {
                    if a.act(g, a.act(h, x)) != a.act(a.group.mul(g, h), x) {
                        return Err(Error::InvalidAction(format!(
                            "act({g}, act({h}, {x})) != act({g}{h}, {x})"
                        )));
                    }
                }
            }
        }
        Ok(a)
    }

    /// Builds an action from images of a generating set, checking it extends.
    pub fn from_fn(group: FiniteGroup, set_size: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let perms: Vec<Vec<usize>> = group
            .elements()
            .map(|g| (0..set_size).map(|x| f(g, x)).collect())
            .collect();
        Self::new(group, set_size, &perms)
    }

    pub fn trivial(group: FiniteGroup, set_size: usize) -> Self {
        Self::from_fn(group, set_size, |_, x| x).expect("trivial action")
    }

    /// Left multiplication on the group itself.
    pub fn regular(group: FiniteGroup) -> Self {
        let n = group.order();
        let g2 = group.clone();
        Self::from_fn(group, n, move |g, x| g2.mul(g, x)).expect("regular action")
    }

    /// Action on left cosets `G/H` ordered by least member.
    pub fn on_cosets(group: FiniteGroup, h: &SubgroupDatum) -> Result<Self> {
        h.check_parent(&group)?;
        let mut coset_of = vec![usize::MAX; group.order()];
        let mut reps = Vec::new();
        for x in group.elements() {
            if coset_of[x] == usize::MAX {
                for &m in h.members() {
                    coset_of[group.mul(x, m)] = reps.len();
                }
                reps.push(x);
            }
        }
        let g2 = group.clone();
        Self::from_fn(group, reps.len(), move |g, c| coset_of[g2.mul(g, reps[c])])
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.table[g * self.set_size + x] as usize
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn set_size(&self) -> usize {
        self.set_size
    }

    pub fn permutation(&self, g: usize) -> Vec<usize> {
        (0..self.set_size).map(|x| self.act(g, x)).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.group.elements().all(|g| (0..self.set_size).all(|x| self.act(g, x) == x))
    }
}

/// One orbit with its least point and that point's stabilizer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub points: Vec<usize>,
    pub representative: usize,
    pub stabilizer: SubgroupDatum,
}

pub fn act_orbits(a: &GroupAction) -> Vec<Orbit> {
    let mut seen = vec![false; a.set_size()];
    let mut orbits = Vec::new();
    for x in 0..a.set_size() {
        if seen[x] {
            continue;
        }
        let mut points: Vec<usize> = a.group().elements().map(|g| a.act(g, x)).collect();
        points.sort_unstable();
        points.dedup();
        for &p in &points {
            seen[p] = true;
        }
        let stab: Vec<usize> = a.group().elements().filter(|&g| a.act(g, x) == x).collect();
        orbits.push(Orbit {
            points,
            representative: x,
            stabilizer: SubgroupDatum::new(a.group(), &stab).expect("stabilizer is a subgroup"),
        });
    }
    orbits
}
