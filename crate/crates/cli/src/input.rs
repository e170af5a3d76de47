//! Argument parsing for groups, coefficients, actions and class coordinates.

use std::path::Path;

use gerbeforge::abelian::{CoeffModule, FinAbGroup};
use gerbeforge::group::{load_group, parse_subgroup_selector};
use gerbeforge::{Error, FiniteGroup, GroupAction, Result, SubgroupDatum};
use serde::Deserialize;

/// `@path` reads a UTF-8 JSON document from disk; anything else is taken
/// literally.
pub fn document(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(p) => std::fs::read_to_string(Path::new(p)).map_err(|e| Error::Parse(format!("{p}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

pub fn group(arg: &str) -> Result<FiniteGroup> {
    load_group(&document(arg)?)
}

pub fn subgroup(g: &FiniteGroup, sel: &str) -> Result<SubgroupDatum> {
    parse_subgroup_selector(g, sel)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coeff {
    Cx,
    /// trivial action on a finite abelian group
    Trivial(Vec<u64>),
}

/// `cx`, `mu:N`, or `ab:d1,d2,...`.
pub fn coeff(arg: &str) -> Result<Coeff> {
    let arg = arg.trim();
    if arg == "cx" {
        return Ok(Coeff::Cx);
    }
    let factors = if let Some(n) = arg.strip_prefix("mu:") {
        vec![parse_u64(n)?]
    } else if let Some(ds) = arg.strip_prefix("ab:") {
        ds.split(',').map(parse_u64).collect::<Result<Vec<_>>>()?
    } else {
        return Err(Error::Parse(format!("unknown coefficients '{arg}' (expected cx, mu:N or ab:d1,d2)")));
    };
    FinAbGroup::new(factors.clone())?;
    Ok(Coeff::Trivial(factors))
}

impl Coeff {
    pub fn module(&self, g: &FiniteGroup) -> Result<Option<CoeffModule>> {
        match self {
            Coeff::Cx => Ok(None),
            Coeff::Trivial(f) => Ok(Some(CoeffModule::trivial(g.clone(), FinAbGroup::new(f.clone())?))),
        }
    }
}

/// Band on finite coefficients: `trivial`, or `invert[:<selector>]` where
/// elements outside the selected index-2 subgroup act by `-1` (without a
/// selector the index-2 subgroup must be unique).
pub fn band(g: &FiniteGroup, factors: &[u64], kind: &str) -> Result<CoeffModule> {
    let a = FinAbGroup::new(factors.to_vec())?;
    if kind == "trivial" {
        return Ok(CoeffModule::trivial(g.clone(), a));
    }
    let h = match kind.strip_prefix("invert") {
        Some("") => {
            let halves: Vec<SubgroupDatum> =
                SubgroupDatum::normal_subgroups(g).into_iter().filter(|s| 2 * s.order() == g.order()).collect();
            match halves.as_slice() {
                [h] => h.clone(),
                _ => return Err(Error::InvalidAction(format!("{} index-2 subgroups; pass invert:<selector>", halves.len()))),
            }
        }
        Some(sel) if sel.starts_with(':') => subgroup(g, &sel[1..])?,
        _ => return Err(Error::Parse(format!("unknown band '{kind}' (expected trivial or invert[:selector])"))),
    };
    if 2 * h.order() != g.order() {
        return Err(Error::InvalidAction(format!("subgroup of order {} has index other than 2", h.order())));
    }
    let r = factors.len();
    let action = g
        .elements()
        .map(|x| {
            let s = if h.contains(x) { 1 } else { -1 };
            (0..r).map(|i| (0..r).map(|j| if i == j { s } else { 0 }).collect()).collect()
        })
        .collect();
    CoeffModule::new(g.clone(), a, action)
}

#[derive(Deserialize)]
struct ActionDoc {
    points: usize,
    /// one permutation per group element, in element order
    perms: Vec<Vec<usize>>,
}

/// `trivial:n`, `regular`, `cosets:<subgroup selector>`, or a JSON
/// document `{"points": n, "perms": [[...], ...]}`.
pub fn action(g: &FiniteGroup, arg: &str) -> Result<GroupAction> {
    let arg = arg.trim();
    if arg == "regular" {
        return Ok(GroupAction::regular(g.clone()));
    }
    if let Some(n) = arg.strip_prefix("trivial:") {
        return Ok(GroupAction::trivial(g.clone(), parse_u64(n)? as usize));
    }
    if let Some(sel) = arg.strip_prefix("cosets:") {
        return GroupAction::on_cosets(g.clone(), &subgroup(g, sel)?);
    }
    let doc: ActionDoc = serde_json::from_str(&document(arg)?).map_err(|e| Error::Parse(format!("action: {e}")))?;
    GroupAction::new(g.clone(), doc.points, &doc.perms)
}

/// Comma-separated class coordinates.
pub fn coords(arg: &str) -> Result<Vec<u64>> {
    if arg.trim().is_empty() {
        return Ok(vec![]);
    }
    arg.split(',').map(parse_u64).collect()
}

fn parse_u64(s: &str) -> Result<u64> {
    s.trim().parse::<u64>().map_err(|e| Error::Parse(format!("'{s}': {e}")))
}
