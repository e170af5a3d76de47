use serde::Serialize;

use crate::abelian::dual::pairing;
use crate::abelian::FinAbGroup;
use crate::config::caps;
use crate::group::FiniteGroup;
use crate::{Error, Result};

/// `O(A ⊕ A*, q)` for the hyperbolic form `q(a, χ) = χ(a)`.
///
/// Elements of `A ⊕ A*` are indexed `index(a) + |A|·index(χ)`; each
/// orthogonal automorphism is stored as a permutation of those indices.
#[derive(Clone, Debug, Serialize)]
pub struct OrthogonalGroup {
    pub base: FinAbGroup,
    pub order: usize,
    pub elements: Vec<Vec<usize>>,
    /// stabilizer of `0 ⊕ A*`
    pub block_lower_order: usize,
    /// stabilizer of both `A ⊕ 0` and `0 ⊕ A*`
    pub block_diagonal_order: usize,
    #[serde(skip)]
    pub group: Option<FiniteGroup>,
}

struct Form {
    a: FinAbGroup,
    na: usize,
    elems: Vec<Vec<u64>>,
}

impl Form {
    fn size(&self) -> usize {
        self.na * self.na
    }

    fn split(&self, x: usize) -> (&[u64], &[u64]) {
        (&self.elems[x % self.na], &self.elems[x / self.na])
    }

    fn add(&self, x: usize, y: usize) -> usize {
        let ((a, c), (b, d)) = (self.split(x), self.split(y));
        self.a.index(&self.a.add(a, b)) + self.na * self.a.index(&self.a.add(c, d))
    }

    fn q(&self, x: usize) -> u64 {
        let (a, chi) = self.split(x);
        pairing(&self.a, chi, a)
    }

    fn b(&self, x: usize, y: usize) -> u64 {
        let ((a, c), (b, d)) = (self.split(x), self.split(y));
        (pairing(&self.a, c, b) + pairing(&self.a, d, a)) % self.a.exponent()
    }

    fn order_of(&self, x: usize) -> u64 {
        let (a, c) = self.split(x);
        crate::abelian::zmod::lcm(self.a.element_order(a), self.a.element_order(c))
    }
}

/// Brute-force `O(A ⊕ A*)`: generator images are chosen to preserve orders,
/// `q` and the polar form `b`, which fixes `q` on all sums; bijectivity is
/// checked on the extended map.
pub fn orthogonal_form_group(a: &FinAbGroup) -> Result<OrthogonalGroup> {
    let na = a.order() as usize;
    let form = Form { a: a.clone(), na, elems: a.elements() };
    let n = form.size();
    let limit = caps().max_classes;
    if n > limit {
        return Err(Error::cap("orthogonal group carrier", n, limit));
    }
    // generators: unit vectors of A, then of A*
    let r = a.rank();
    let gens: Vec<usize> = (0..r)
        .map(|j| a.index(&unit(r, j)))
        .chain((0..r).map(|j| na * a.index(&unit(r, j))))
        .collect();
    let orders: Vec<u64> = a.factors().iter().chain(a.factors()).copied().collect();
    let mut found = Vec::new();
    let mut img = Vec::with_capacity(gens.len());
    search(&form, &gens, &orders, &mut img, &mut found, limit)?;
    let zero_plus_dual: Vec<usize> = (0..na).map(|c| c * na).collect();
    let a_plus_zero: Vec<usize> = (0..na).collect();
    let keeps = |p: &Vec<usize>, set: &[usize]| set.iter().all(|&x| set.contains(&p[x]));
    let lower = found.iter().filter(|p| keeps(p, &zero_plus_dual)).count();
    let diagonal = found.iter().filter(|p| keeps(p, &zero_plus_dual) && keeps(p, &a_plus_zero)).count();
    let group = if found.len() <= caps().max_order { Some(perm_group(a, &found)?) } else { None };
    Ok(OrthogonalGroup {
        base: a.clone(),
        order: found.len(),
        elements: found,
        block_lower_order: lower,
        block_diagonal_order: diagonal,
        group,
    })
}

fn unit(r: usize, j: usize) -> Vec<u64> {
    (0..r).map(|i| u64::from(i == j)).collect()
}

fn search(
    f: &Form,
    gens: &[usize],
    orders: &[u64],
    img: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) -> Result<()> {
    let k = img.len();
    if k == gens.len() {
        if let Some(p) = extend(f, gens, img) {
            if out.len() >= limit {
                return Err(Error::cap("orthogonal group order", out.len() + 1, limit));
            }
            out.push(p);
        }
        return Ok(());
    }
    for y in 0..f.size() {
        if !orders[k].is_multiple_of(f.order_of(y)) || f.q(y) != f.q(gens[k]) {
            continue;
        }
        if (0..k).any(|i| f.b(img[i], y) != f.b(gens[i], gens[k])) {
            continue;
        }
        img.push(y);
        search(f, gens, orders, img, out, limit)?;
        img.pop();
    }
    Ok(())
}

/// The additive map with the chosen generator images, if bijective.
fn extend(f: &Form, gens: &[usize], img: &[usize]) -> Option<Vec<usize>> {
    let mut p = vec![usize::MAX; f.size()];
    p[0] = 0;
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        for (g, &y) in gens.iter().zip(img) {
            let (s, t) = (f.add(x, *g), f.add(p[x], y));
            if p[s] == usize::MAX {
                p[s] = t;
                stack.push(s);
            } else if p[s] != t {
                return None;
            }
        }
    }
    let mut seen = vec![false; f.size()];
    for &v in &p {
        if v == usize::MAX || std::mem::replace(&mut seen[v], true) {
            return None;
        }
    }
    Some(p)
}

fn perm_group(a: &FinAbGroup, perms: &[Vec<usize>]) -> Result<FiniteGroup> {
    let id: Vec<usize> = (0..perms[0].len()).collect();
    let mut sorted = perms.to_vec();
    sorted.sort();
    let pos = sorted.iter().position(|p| *p == id).expect("identity is orthogonal");
    sorted.swap(0, pos);
    sorted[1..].sort();
    let index: std::collections::HashMap<&Vec<usize>, usize> = sorted.iter().enumerate().map(|(i, p)| (p, i)).collect();
    // (p·p')(x) = p(p'(x))
    let table: Vec<Vec<usize>> = sorted
        .iter()
        .map(|p| sorted.iter().map(|p2| index[&p2.iter().map(|&x| p[x]).collect::<Vec<_>>()]).collect())
        .collect();
    FiniteGroup::from_table(format!("O({}+dual)", a.describe()), &table)
}
