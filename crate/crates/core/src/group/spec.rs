//! Group-spec documents: `catalog:<name> <params>`, a JSON multiplication
//! table, or a JSON list of permutation generators.

use serde::Deserialize;

use super::{catalog, FiniteGroup, SubgroupDatum};
use crate::error::{Error, Result};

#[derive(Deserialize)]
#[serde(untagged)]
enum SpecDoc {
    Table { order: usize, mult: Vec<Vec<usize>> },
    Perms { degree: usize, generators: Vec<Vec<usize>> },
}

pub fn load_group(doc: &str) -> Result<FiniteGroup> {
    let doc = doc.trim();
    if let Some(rest) = doc.strip_prefix("catalog:") {
        let mut parts = rest.split_whitespace();
        let name = parts.next().ok_or_else(|| Error::Parse("empty catalog name".into()))?;
        let params: Vec<&str> = parts.collect();
        return catalog::by_name(name, &params);
    }
    let spec: SpecDoc =
        serde_json::from_str(doc).map_err(|e| Error::Parse(format!("group spec: {e}")))?;
    match spec {
        SpecDoc::Table { order, mult } => {
            if mult.len() != order {
                return Err(Error::InvalidGroup(format!(
                    "declared order {order} but table has {} rows",
                    mult.len()
                )));
            }
            FiniteGroup::from_table("table", &mult)
        }
        SpecDoc::Perms { degree, generators } => from_generators(degree, &generators),
    }
}

/// Closes permutation generators into a group (BFS order, identity first).
pub(crate) fn from_generators(degree: usize, generators: &[Vec<usize>]) -> Result<FiniteGroup> {
    for p in generators {
        let mut seen = vec![false; degree];
        if p.len() != degree || p.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
            return Err(Error::InvalidGroup("generator is not a permutation of the degree".into()));
        }
    }
    let cap = crate::config::caps().max_order;
    let identity: Vec<usize> = (0..degree).collect();
    let mut elems = vec![identity.clone()];
    let mut index = std::collections::HashMap::new();
    index.insert(identity, 0usize);
    let mut i = 0;
    while i < elems.len() {
        for s in generators {
            let c: Vec<usize> = s.iter().map(|&x| elems[i][x]).collect();
            if !index.contains_key(&c) {
                if elems.len() >= cap {
                    return Err(Error::cap("generator closure order", elems.len() + 1, cap));
                }
                index.insert(c.clone(), elems.len());
                elems.push(c);
            }
        }
        i += 1;
    }
    catalog::from_permutation_list(format!("perm group of order {}", elems.len()), &elems)
}

/// Subgroup selectors: `center`, `derived`, `whole`, `trivial`,
/// `gens:a,b,...`, `members:a,b,...`, `normal-order:k[:i]`.
pub fn parse_subgroup_selector(g: &FiniteGroup, sel: &str) -> Result<SubgroupDatum> {
    let list = |s: &str| -> Result<Vec<usize>> {
        s.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
            .collect()
    };
    let sel = sel.trim();
    match sel {
        "center" => Ok(SubgroupDatum::center(g)),
        "derived" => Ok(SubgroupDatum::derived(g)),
        "whole" => Ok(SubgroupDatum::whole(g)),
        "trivial" => Ok(SubgroupDatum::trivial(g)),
        _ => {
            if let Some(r) = sel.strip_prefix("gens:") {
                SubgroupDatum::generated(g, &list(r)?)
            } else if let Some(r) = sel.strip_prefix("members:") {
                SubgroupDatum::new(g, &list(r)?)
            } else if let Some(r) = sel.strip_prefix("normal-order:") {
                let (k, i) = match r.split_once(':') {
                    Some((k, i)) => (k, i.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?),
                    None => (r, 0),
                };
                let k: usize = k.parse().map_err(|e: std::num::ParseIntError| Error::Parse(e.to_string()))?;
                SubgroupDatum::normal_subgroups(g)
                    .into_iter()
                    .filter(|s| s.order() == k)
                    .nth(i)
                    .ok_or_else(|| Error::NotSubgroup(format!("no normal subgroup of order {k} (#{i})")))
            } else {
                Err(Error::Parse(format!("unknown subgroup selector '{sel}'")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_specs() {
        let g = load_group("catalog:cyclic 4").unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.mul(3, 2), 1);
        assert_eq!(load_group("catalog:sym 3").unwrap().conjugacy_classes().len(), 3);
        assert_eq!(load_group("catalog:elementary-abelian 2^2").unwrap().order(), 4);
        assert!(load_group("catalog:nonsense 3").is_err());
    }

    #[test]
    fn idempotent_table_is_not_latin() {
        let doc = r#"{"order": 2, "mult": [[0,1],[1,1]]}"#;
        assert!(matches!(load_group(doc), Err(Error::NotLatinSquare(_))));
    }

    #[test]
    fn non_associative_latin_square() {
        // a loop of order 5 that is not a group
        let t = r#"{"order": 5, "mult": [[0,1,2,3,4],[1,0,3,4,2],[2,4,0,1,3],[3,2,4,0,1],[4,3,1,2,0]]}"#;
        assert!(matches!(load_group(t), Err(Error::NotAssociative(..))));
    }

    #[test]
    fn permutation_generators() {
        let g = load_group(r#"{"degree": 4, "generators": [[1,2,3,0],[3,2,1,0]]}"#).unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.is_isomorphic(&load_group("catalog:dihedral 4").unwrap()));
    }

    #[test]
    fn selectors() {
        let g = load_group("catalog:dihedral 4").unwrap();
        assert_eq!(parse_subgroup_selector(&g, "center").unwrap().members(), &[0, 2]);
        assert_eq!(parse_subgroup_selector(&g, "normal-order:4").unwrap().members(), &[0, 1, 2, 3]);
        let s4 = load_group("catalog:sym 4").unwrap();
        let v4 = parse_subgroup_selector(&s4, "normal-order:4").unwrap();
        assert_eq!(v4.order(), 4);
        assert!(v4.is_normal());
    }
}
