use serde::{Deserialize, Serialize};

use super::FiniteGroup;
use crate::error::{Error, Result};

/// BFS spanning tree over generators: `(parent, generator index)` per element,
/// plus the visiting order. The identity has no parent.
pub(crate) struct WordTable {
    order: Vec<usize>,
    parent: Vec<(usize, usize)>,
}

pub(crate) fn word_table(g: &FiniteGroup, gens: &[usize]) -> WordTable {
    let mut parent = vec![(usize::MAX, usize::MAX); g.order()];
    let mut order = vec![0usize];
    parent[0] = (0, usize::MAX);
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for (gi, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            if parent[y].0 == usize::MAX {
                parent[y] = (x, gi);
                order.push(y);
            }
        }
        i += 1;
    }
    WordTable { order, parent }
}

/// Extends generator images along the word table and checks that the
/// result is an injective homomorphism.
fn extend(
    source: &FiniteGroup,
    target: &FiniteGroup,
    gens: &[usize],
    words: &WordTable,
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; source.order()];
    map[0] = 0;
    for &x in &words.order[1..] {
        let (p, gi) = words.parent[x];
        map[x] = target.mul(map[p], images[gi]);
    }
    let mut hit = vec![false; target.order()];
    for &y in &map {
        if hit[y] {
            return None;
        }
        hit[y] = true;
    }
    for x in source.elements() {
        for &s in gens {
            if map[source.mul(x, s)] != target.mul(map[x], map[s]) {
                return None;
            }
        }
    }
    Some(map)
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn search_images<T>(
    source: &FiniteGroup,
    target: &FiniteGroup,
    gens: &[usize],
    words: &WordTable,
    candidates: &[Vec<usize>],
    choice: &mut Vec<usize>,
    depth: usize,
    found: &mut impl FnMut(&[usize]) -> Option<T>,
) -> Option<T> {
    if depth == gens.len() {
        let map = extend(source, target, gens, words, choice)?;
        return found(&map);
    }
    for &c in &candidates[depth] {
        choice[depth] = c;
        if let Some(t) = search_images(source, target, gens, words, candidates, choice, depth + 1, found) {
            return Some(t);
        }
    }
    None
}

/// `Aut(G)` as an abstract group plus each automorphism as a permutation of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismGroup {
    pub group: FiniteGroup,
    /// `perms[a][g]` is the image of `g` under automorphism `a`;
    /// sorted lexicographically so the identity is element 0.
    pub perms: Vec<Vec<usize>>,
}

/// Brute force over generator images; composition `(a·b)(g) = a(b(g))`.
pub fn automorphism_group(g: &FiniteGroup) -> Result<AutomorphismGroup> {
    let cap = crate::config::caps().max_aut_order;
    if g.order() > cap {
        return Err(Error::cap("automorphism search order", g.order(), cap));
    }
    let gens = g.generators();
    let words = word_table(g, &gens);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            g.elements().filter(|&h| g.element_order(h) == o).collect()
        })
        .collect();
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut choice = vec![0; gens.len()];
    search_images::<()>(g, g, &gens, &words, &candidates, &mut choice, 0, &mut |m| {
        perms.push(m.to_vec());
        None
    });
    perms.sort();
    let index: std::collections::HashMap<Vec<usize>, usize> =
        perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let n = perms.len();
    let mut mult = Vec::with_capacity(n * n);
    for a in &perms {
        for b in &perms {
            let c: Vec<usize> = b.iter().map(|&x| a[x]).collect();
            mult.push(index[&c] as u32);
        }
    }
    let group = FiniteGroup::from_flat(format!("Aut({})", g.name()), n, mult)?;
    Ok(AutomorphismGroup { group, perms })
}
