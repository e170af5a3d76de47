use std::collections::HashSet;

use serde::Serialize;

use super::{groupoid_cohomology, ActionGroupoid, NerveComplex};
use crate::abelian::zmod::lcm;
use crate::abelian::FinAbGroup;
use crate::cohomology::{BarComplex, Cochain, Cohomology};
use crate::group::{act_orbits, FiniteGroup};
use crate::{Error, Result};

/// The part of a gerbe living over one orbit: the class of the restricted
/// cocycle on the stabilizer of the representative.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitClass {
    pub representative: usize,
    pub points: Vec<usize>,
    /// stabilizer members, as elements of `Q`
    pub stabilizer: Vec<usize>,
    /// `H^2(Q_x, C^×)`
    pub structure: FinAbGroup,
    pub class: Vec<u64>,
    /// restricted cocycle on `Q_x` (indices into `stabilizer`)
    #[serde(skip)]
    pub cocycle: Cochain,
    #[serde(skip)]
    pub stabilizer_group: FiniteGroup,
}

/// A gerbe on `Q⋉X`: a groupoid 2-cocycle with its class and its orbit
/// decomposition.
#[derive(Clone, Debug, Serialize)]
pub struct GerbeDatum {
    pub groupoid: ActionGroupoid,
    pub structure: FinAbGroup,
    pub class: Vec<u64>,
    #[serde(skip)]
    pub cocycle: Cochain,
    pub orbits: Vec<OrbitClass>,
}

fn stabilizer_cohomology(q: &FiniteGroup, hint: u64) -> Result<Cohomology> {
    Cohomology::compute(&BarComplex::cx(q), 2, hint)
}

/// Restricts a groupoid 2-cocycle to the automorphism group of each orbit
/// representative and classifies the results.
pub fn gerbe_decompose(gd: &ActionGroupoid, h: &Cohomology, c: &Cochain) -> Result<GerbeDatum> {
    if c.degree != 2 {
        return Err(Error::Mismatch("gerbes are degree-2 classes".into()));
    }
    let class = h.classify(c)?;
    let nerve = NerveComplex::new(gd.clone());
    let mut orbits = Vec::new();
    for o in act_orbits(&gd.action) {
        let qx = o.stabilizer.as_group(gd.group());
        let mem = o.stabilizer.members().to_vec();
        let bar = BarComplex::cx(&qx);
        let x = o.representative;
        let phi = bar.cochain_from_fn(2, c.modulus, |t| vec![nerve.value(c, x, &[mem[t[0]], mem[t[1]]]) as i64]);
        let hx = stabilizer_cohomology(&qx, c.modulus)?;
        let cls = hx.classify(&phi)?;
        orbits.push(OrbitClass {
            representative: x,
            points: o.points,
            stabilizer: mem,
            structure: hx.structure().clone(),
            class: cls,
            cocycle: phi,
            stabilizer_group: qx,
        });
    }
    Ok(GerbeDatum { groupoid: gd.clone(), structure: h.structure().clone(), class, cocycle: c.clone(), orbits })
}

/// Pulls per-orbit cocycles (one per orbit, in `act_orbits` order, on the
/// stabilizer as a group) back along the retraction of `Q⋉X` onto its
/// automorphism groups; the result is a groupoid cocycle whose restrictions
/// are the given ones.
pub fn assemble_gerbe(gd: &ActionGroupoid, parts: &[Cochain]) -> Result<Cochain> {
    let orbits = act_orbits(&gd.action);
    if parts.len() != orbits.len() {
        return Err(Error::Mismatch(format!("{} orbit classes for {} orbits", parts.len(), orbits.len())));
    }
    let n = parts.first().map_or(2, |p| p.degree);
    if parts.iter().any(|p| p.degree != n) {
        return Err(Error::Mismatch("orbit cocycles of different degree".into()));
    }
    let modulus = parts.iter().fold(1, |m, p| lcm(m, p.modulus));
    let q = gd.group();
    // orbit index, transversal element t_y with t_y·x = y, per point
    let mut which = vec![0usize; gd.objects()];
    let mut t = vec![0usize; gd.objects()];
    let mut local: Vec<Vec<Option<usize>>> = Vec::new();
    let mut bars = Vec::new();
    for (j, o) in orbits.iter().enumerate() {
        for &y in &o.points {
            which[y] = j;
            t[y] = q.elements().find(|&g| gd.target(g, o.representative) == y).expect("orbit point");
        }
        let mut l = vec![None; q.order()];
        for (i, &m) in o.stabilizer.members().iter().enumerate() {
            l[m] = Some(i);
        }
        local.push(l);
        bars.push(BarComplex::cx(&o.stabilizer.as_group(q)));
    }
    let retract = |g: usize, y: usize| {
        let h = q.mul(q.mul(q.inv(t[gd.target(g, y)]), g), t[y]);
        local[which[y]][h].expect("retraction lands in the stabilizer")
    };
    let nerve = NerveComplex::new(gd.clone());
    Ok(nerve.cochain_from_fn(n, modulus, |src, labels| {
        // a_n starts at src; walk outward collecting retracted labels
        let mut hs = vec![0usize; n];
        let mut y = src;
        for i in (0..n).rev() {
            hs[i] = retract(labels[i], y);
            y = gd.target(labels[i], y);
        }
        let j = which[src];
        let p = &parts[j];
        let v = bars[j].value(p, &hs)[0];
        (v * (modulus / p.modulus)) as i64
    }))
}

/// Outcome of checking that decomposition and assembly are inverse
/// bijections between `H^2(Q⋉X)` and `∏_j H^2(Q_j)`.
#[derive(Clone, Debug, Serialize)]
pub struct BijectionReport {
    pub groupoid_order: u128,
    pub function_complex_order: u128,
    pub product_order: u128,
    pub decompose_injective: bool,
    pub round_trip_groupoid: bool,
    pub round_trip_orbits: bool,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.groupoid_order == self.product_order
            && self.groupoid_order == self.function_complex_order
            && self.decompose_injective
            && self.round_trip_groupoid
            && self.round_trip_orbits
    }
}

pub fn gerbe_bijection_check(gd: &ActionGroupoid) -> Result<BijectionReport> {
    let h = groupoid_cohomology(gd, 2)?;
    let hf = Cohomology::compute(&super::function_complex(&gd.action), 2, 1)?;
    let orbits = act_orbits(&gd.action);
    let hs: Vec<Cohomology> = orbits
        .iter()
        .map(|o| stabilizer_cohomology(&o.stabilizer.as_group(gd.group()), h.modulus()))
        .collect::<Result<_>>()?;
    let product_order: u128 = hs.iter().map(|x| x.order()).product();
    let mut seen = HashSet::new();
    let mut round_trip_groupoid = true;
    for coords in h.classes() {
        let c = h.representative(&coords);
        let datum = gerbe_decompose(gd, &h, &c)?;
        let key: Vec<Vec<u64>> = datum.orbits.iter().map(|o| o.class.clone()).collect();
        seen.insert(key);
        let parts: Vec<Cochain> = datum.orbits.iter().map(|o| o.cocycle.clone()).collect();
        let back = assemble_gerbe(gd, &parts)?;
        round_trip_groupoid &= h.classify(&back)? == coords;
    }
    let mut round_trip_orbits = true;
    let mut combos: Vec<Vec<Vec<u64>>> = vec![vec![]];
    for hx in &hs {
        combos = combos
            .into_iter()
            .flat_map(|p| hx.classes().into_iter().map(move |c| [p.clone(), vec![c]].concat()))
            .collect();
    }
    for combo in combos {
        let parts: Vec<Cochain> = hs.iter().zip(&combo).map(|(hx, c)| hx.representative(c)).collect();
        let c = assemble_gerbe(gd, &parts)?;
        let datum = gerbe_decompose(gd, &h, &c)?;
        round_trip_orbits &= datum.orbits.iter().zip(&combo).all(|(o, c)| &o.class == c);
    }
    Ok(BijectionReport {
        groupoid_order: h.order(),
        function_complex_order: hf.order(),
        product_order,
        decompose_injective: seen.len() as u128 == h.order(),
        round_trip_groupoid,
        round_trip_orbits,
    })
}

/// Conjugacy classes of `q` (as element lists) whose elements `g` satisfy
/// `φ(g,h) = φ(h,g)` for every `h` commuting with `g`.
pub fn regular_classes(q: &FiniteGroup, phi: &Cochain) -> Vec<Vec<usize>> {
    let bar = BarComplex::cx(q);
    let m = phi.modulus;
    let regular = |g: usize| {
        q.centralizer(g).into_iter().all(|h| {
            let a = bar.value(phi, &[g, h])[0];
            let b = bar.value(phi, &[h, g])[0];
            (a + m - b).is_multiple_of(m)
        })
    };
    q.conjugacy_classes().into_iter().filter(|cl| regular(cl[0])).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistedCount {
    /// `(representative, #φ_x-regular classes, #classes of Q_x)` per orbit
    pub per_orbit: Vec<(usize, usize, usize)>,
    pub total: usize,
}

/// Number of simple twisted representations: per orbit, the number of
/// `φ_x`-regular classes of the stabilizer.
pub fn twisted_rep_count(g: &GerbeDatum) -> TwistedCount {
    let per_orbit: Vec<(usize, usize, usize)> = g
        .orbits
        .iter()
        .map(|o| {
            let reg = regular_classes(&o.stabilizer_group, &o.cocycle).len();
            (o.representative, reg, o.stabilizer_group.conjugacy_classes().len())
        })
        .collect();
    let total = per_orbit.iter().map(|x| x.1).sum();
    TwistedCount { per_orbit, total }
}
