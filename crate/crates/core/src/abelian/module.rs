use serde::Serialize;

use super::finab::{AbHom, FinAbGroup};
use crate::group::{FiniteGroup, SubgroupDatum};
use crate::{Error, Result};

/// A finite abelian group with a left action of a finite group by automorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoeffModule {
    pub coeffs: FinAbGroup,
    #[serde(skip)]
    pub group: FiniteGroup,
    /// `action[g]` is the matrix of `a ↦ g·a`.
    pub action: Vec<Vec<Vec<i64>>>,
}

impl CoeffModule {
    pub fn new(group: FiniteGroup, coeffs: FinAbGroup, action: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::InvalidAction("one matrix per group element required".into()));
        }
        let homs: Vec<AbHom> = action
            .into_iter()
            .map(|m| AbHom::new(coeffs.clone(), coeffs.clone(), m))
            .collect::<Result<_>>()
            .map_err(|e| Error::InvalidAction(format!("action matrix: {e}")))?;
        let elems = coeffs.elements();
        let idx = |v: &[u64]| coeffs.index(v);
        for (g, h) in homs.iter().enumerate() {
            let image: std::collections::HashSet<usize> = elems.iter().map(|a| idx(&h.apply(a))).collect();
            if image.len() != elems.len() {
                return Err(Error::InvalidAction(format!("element {g} does not act bijectively")));
            }
        }
        for a in &elems {
            if homs[0].apply(a) != *a {
                return Err(Error::InvalidAction("identity acts nontrivially".into()));
            }
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                for a in &elems {
                    if homs[g].apply(&homs[h].apply(a)) != homs[gh].apply(a) {
                        return Err(Error::InvalidAction(format!("not an action at ({g}, {h})")));
                    }
                }
            }
        }
        let action = homs.into_iter().map(|h| h.matrix).collect();
        Ok(CoeffModule { coeffs, group, action })
    }

    pub fn trivial(group: FiniteGroup, coeffs: FinAbGroup) -> Self {
        let k = coeffs.rank();
        let id: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
        let action = vec![id; group.order()];
        CoeffModule { coeffs, group, action }
    }

    /// `Z/n` with trivial action.
    pub fn mu(group: FiniteGroup, n: u64) -> Self {
        Self::trivial(group, FinAbGroup::cyclic(n))
    }

    /// An abelian normal subgroup `A` of `G` as a module over `Q = G/A`
    /// via conjugation through the section; `A` is re-coordinatized by
    /// brute force into invariant-factor form.
    pub fn from_normal_abelian(
        g: &FiniteGroup,
        a: &SubgroupDatum,
        q: &crate::group::Quotient,
    ) -> Result<(Self, AbelianCoordinates)> {
        let coords = AbelianCoordinates::new(&a.as_group(g), a.members().to_vec())?;
        let k = coords.group.rank();
        let nq = q.quotient.order();
        let mut action = Vec::with_capacity(nq);
        for qi in 0..nq {
            let s = q.s(qi);
            let mut m = vec![vec![0i64; k]; k];
            for j in 0..k {
                let x = coords.element_of(&coords.unit(j));
                let y = g.conj(s, x);
                let v = coords.coords_of(y);
                for i in 0..k {
                    m[i][j] = v[i] as i64;
                }
            }
            action.push(m);
        }
        let module = CoeffModule::new(q.quotient.clone(), coords.group.clone(), action)?;
        Ok((module, coords))
    }

    pub fn act(&self, g: usize, a: &[u64]) -> Vec<u64> {
        let d = self.coeffs.factors();
        self.action[g]
            .iter()
            .zip(d)
            .map(|(row, &di)| row.iter().zip(a).fold(0i128, |acc, (&m, &x)| (acc + m as i128 * x as i128) % di as i128) as u64)
            .collect()
    }

    pub fn is_trivial_action(&self) -> bool {
        let k = self.coeffs.rank();
        self.action.iter().all(|m| (0..k).all(|i| (0..k).all(|j| m[i][j] == i64::from(i == j))))
    }

    /// Restriction of the action along a homomorphism `h → group`.
    pub fn pullback(&self, source: &FiniteGroup, image: &[usize]) -> Self {
        let action = image.iter().map(|&g| self.action[g].clone()).collect();
        CoeffModule { coeffs: self.coeffs.clone(), group: source.clone(), action }
    }
}

/// Identification of an abelian group given by a table with a
/// [`FinAbGroup`]: element indices in the ambient group on one side,
/// coordinate vectors on the other.
#[derive(Clone, Debug)]
pub struct AbelianCoordinates {
    pub group: FinAbGroup,
    /// ambient element index for each local element of the table group
    pub members: Vec<usize>,
    to_coords: std::collections::HashMap<usize, Vec<u64>>,
    from_coords: std::collections::HashMap<Vec<u64>, usize>,
}

impl AbelianCoordinates {
    /// `a` is abelian; `members[i]` is the ambient name of local element `i`.
    pub fn new(a: &FiniteGroup, members: Vec<usize>) -> Result<Self> {
        if !a.is_abelian() {
            return Err(Error::NonAbelian);
        }
        // greedy basis: repeatedly take an element of maximal order not in
        // the span, then normalize the resulting orders
        let n = a.order();
        let mut gens: Vec<usize> = Vec::new();
        let mut span: Vec<usize> = vec![0];
        while span.len() < n {
            let mut in_span = vec![false; n];
            span.iter().for_each(|&x| in_span[x] = true);
            // largest order element whose powers meet the span only trivially
            let mut best: Option<(u64, usize)> = None;
            for x in a.elements() {
                if in_span[x] {
                    continue;
                }
                let o = a.element_order(x) as u64;
                let mut y = x;
                let mut meets = false;
                for _ in 1..o {
                    if in_span[y] {
                        meets = true;
                        break;
                    }
                    y = a.mul(y, x);
                }
                if !meets && best.is_none_or(|(bo, _)| o > bo) {
                    best = Some((o, x));
                }
            }
            let Some((o, x)) = best else {
                return Err(Error::Other("abelian basis search failed".into()));
            };
            let mut new_span = Vec::with_capacity(span.len() * o as usize);
            let mut p = 0usize;
            for _ in 0..o {
                for &s in &span {
                    new_span.push(a.mul(s, p));
                }
                p = a.mul(p, x);
            }
            span = new_span;
            gens.push(x);
        }
        let orders: Vec<u64> = gens.iter().map(|&x| a.element_order(x) as u64).collect();
        let (group, iso) = FinAbGroup::from_orders_with_iso(&orders);
        let mut to_coords = std::collections::HashMap::new();
        let mut from_coords = std::collections::HashMap::new();
        // enumerate mixed-radix words in the greedy basis
        let total: usize = orders.iter().product::<u64>() as usize;
        for w in 0..total {
            let mut rem = w;
            let mut elt = 0usize;
            let mut word = Vec::with_capacity(orders.len());
            for (i, &o) in orders.iter().enumerate() {
                let e = rem % o as usize;
                rem /= o as usize;
                word.push(e as i64);
                elt = a.mul(elt, a.pow(gens[i], e));
            }
            let v: Vec<i64> = iso.iter().map(|row| row.iter().zip(&word).map(|(m, x)| m * x).sum()).collect();
            let v = group.reduce(&v);
            to_coords.insert(members[elt], v.clone());
            from_coords.insert(v, members[elt]);
        }
        Ok(AbelianCoordinates { group, members, to_coords, from_coords })
    }

    pub fn coords_of(&self, ambient: usize) -> Vec<u64> {
        self.to_coords[&ambient].clone()
    }

    pub fn element_of(&self, v: &[u64]) -> usize {
        self.from_coords[&self.group.reduce(&v.iter().map(|&x| x as i64).collect::<Vec<_>>())]
    }

    pub fn unit(&self, j: usize) -> Vec<u64> {
        let mut v = vec![0; self.group.rank()];
        v[j] = 1;
        v
    }
}
