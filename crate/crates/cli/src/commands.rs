//! One runner per subcommand; each returns results and checks.

use std::collections::BTreeMap;

use gerbeforge::abelian::CoeffModule;
use gerbeforge::cohomology::{
    apply_differential, cohomology, cohomology_cx, is_cocycle, BarComplex, Cochain, Cohomology,
};
use gerbeforge::extension::{
    build_extension, center_dimension, extension_to_gerbe, gerbe_to_extension, ExtensionDatum, MonomialAlgebra,
};
use gerbeforge::fusion::{
    count_rep_extensions, exact_diagram, pentagon_check, phi_f_with, sequence_count, PointedFusionDatum,
};
use gerbeforge::groupoid::{
    build_action_groupoid, gerbe_bijection_check, gerbe_decompose, groupoid_cohomology, twisted_rep_count,
};
use gerbeforge::rep::frules_check;
use gerbeforge::symmetry::{fixed_point_count, solve_mixed_cocycles, transpose_classes, transpose_pair};
use gerbeforge::{Error, FiniteGroup, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::input::{self, Coeff};
use crate::report::{Check, Outcome};

/// Most classes listed one by one in a report.
pub const MAX_LISTED: u128 = 64;

pub fn group_summary(g: &FiniteGroup) -> Value {
    let mut orders = BTreeMap::new();
    for x in g.elements() {
        *orders.entry(g.element_order(x)).or_insert(0usize) += 1;
    }
    json!({
        "name": g.name(),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "conjugacy_classes": g.conjugacy_classes().len(),
        "element_orders": orders,
    })
}

fn listable(h: &Cohomology) -> Result<()> {
    if h.order() > MAX_LISTED {
        return Err(Error::cap("listed classes", h.order() as usize, MAX_LISTED as usize));
    }
    Ok(())
}

pub fn cohomology_cmd(group: &str, coeff: &Coeff, degree: usize) -> Result<Outcome> {
    let g = input::group(group)?;
    let mut checks = Vec::new();
    let (structure, label, gens_ok) = match coeff.module(&g)? {
        None => {
            let h = cohomology_cx(&g, degree)?;
            let bar = BarComplex::cx(&g);
            checks.push(Check::eq(
                "integral and root-of-unity routes agree",
                h.integral.factors(),
                h.classes.structure().factors(),
            ));
            let ok = h.classes.generators().iter().map(|c| is_cocycle(&bar, c)).collect::<Result<Vec<_>>>()?;
            (h.integral.clone(), "cx".to_string(), ok.into_iter().all(|x| x))
        }
        Some(m) => {
            let h = cohomology(&g, &m, degree)?;
            let bar = BarComplex::finite(&m);
            let ok = h.generators().iter().map(|c| is_cocycle(&bar, c)).collect::<Result<Vec<_>>>()?;
            (h.structure().clone(), m.coeffs.describe(), ok.into_iter().all(|x| x))
        }
    };
    checks.push(Check::holds("generators are cocycles", gens_ok));
    let results = json!({
        "group": group_summary(&g),
        "coefficients": label,
        "degree": degree,
        "structure": structure.factors(),
        "order": structure.order() as u64,
        format!("H^{degree}"): structure.describe(),
    });
    Ok(Outcome::new(results, checks))
}

pub fn gerbes_cmd(group: &str, action: &str, mode: &str, class: Option<&str>) -> Result<Outcome> {
    let g = input::group(group)?;
    let a = input::action(&g, action)?;
    let gd = build_action_groupoid(&a);
    let mut checks = Vec::new();
    let base = json!({ "group": group_summary(&g), "points": a.set_size(), "components": gd.components() });
    match mode {
        "count" => {
            let r = gerbe_bijection_check(&gd)?;
            checks.push(Check::eq("bar complex = groupoid nerve", r.function_complex_order as u64, r.groupoid_order as u64));
            checks.push(Check::eq("groupoid nerve = product over orbits", r.product_order as u64, r.groupoid_order as u64));
            checks.push(Check::holds("decomposition injective", r.decompose_injective));
            checks.push(Check::holds("assemble after decompose is the identity", r.round_trip_groupoid));
            checks.push(Check::holds("decompose after assemble is the identity", r.round_trip_orbits));
            Ok(Outcome::new(json!({ "groupoid": base, "counts": r }), checks))
        }
        "decompose" => {
            let h = groupoid_cohomology(&gd, 2)?;
            let wanted = match class {
                Some(c) => vec![input::coords(c)?],
                None => {
                    listable(&h)?;
                    h.classes()
                }
            };
            let mut rows = Vec::new();
            for coords in wanted {
                let c = h.representative(&coords);
                let datum = gerbe_decompose(&gd, &h, &c)?;
                let count = twisted_rep_count(&datum);
                let r = gerbe_to_extension(&datum, None)?;
                let z = center_dimension(&r)?;
                checks.push(Check::eq(format!("center of R = twisted count at {coords:?}"), count.total, z));
                rows.push(json!({ "class": coords, "orbits": datum.orbits, "twisted_count": count }));
            }
            Ok(Outcome::new(json!({ "groupoid": base, "H2": h.structure().describe(), "gerbes": rows }), checks))
        }
        other => Err(Error::Parse(format!("gerbes mode '{other}' (expected count or decompose)"))),
    }
}

fn finite_band(g: &FiniteGroup, coeff: &Coeff, band: &str) -> Result<CoeffModule> {
    match coeff {
        Coeff::Cx => Err(Error::Parse("extensions need finite coefficients (mu:N or ab:...)".into())),
        Coeff::Trivial(f) => input::band(g, f, band),
    }
}

fn extension_for(band: &CoeffModule, class: &[u64]) -> Result<(Cohomology, ExtensionDatum)> {
    let h = Cohomology::compute(&BarComplex::finite(band), 2, 1)?;
    if class.len() != h.structure().rank() {
        return Err(Error::Mismatch(format!("class needs {} coordinates for {}", h.structure().rank(), h.structure())));
    }
    let e = build_extension(band, &h.representative(class))?;
    Ok((h, e))
}

fn default_class(band: &CoeffModule, class: Option<&str>) -> Result<Vec<u64>> {
    match class {
        Some(c) => input::coords(c),
        None => {
            let h = Cohomology::compute(&BarComplex::finite(band), 2, 1)?;
            Ok(vec![0; h.structure().rank()])
        }
    }
}

pub fn extension_cmd(group: &str, coeff: &Coeff, band: &str, mode: &str, class: Option<&str>) -> Result<Outcome> {
    let q = input::group(group)?;
    let b = finite_band(&q, coeff, band)?;
    let mut checks = Vec::new();
    match mode {
        "classify" => {
            let h = Cohomology::compute(&BarComplex::finite(&b), 2, 1)?;
            listable(&h)?;
            let mut rows = Vec::new();
            for coords in h.classes() {
                let e = build_extension(&b, &h.representative(&coords))?;
                let back = h.classify(&e.recover_cocycle()?)?;
                checks.push(Check::eq(format!("factor set of {coords:?} recovers the class"), &coords, back));
                rows.push(json!({ "class": coords, "total": group_summary(&e.total) }));
            }
            Ok(Outcome::new(json!({ "quotient": group_summary(&q), "band": b.coeffs.describe(), "H2": h.structure().describe(), "extensions": rows }), checks))
        }
        "build" => {
            let coords = default_class(&b, class)?;
            let (h, e) = extension_for(&b, &coords)?;
            checks.push(Check::eq("factor set recovers the class", &coords, h.classify(&e.recover_cocycle()?)?));
            checks.push(Check::holds("kernel is normal", e.kernel_subgroup().is_normal()));
            checks.push(Check::eq("|G| = |A|·|Q|", b.coeffs.order() as usize * q.order(), e.total.order()));
            Ok(Outcome::new(json!({ "class": coords, "total": group_summary(&e.total), "extension": e }), checks))
        }
        "center" => {
            let coords = default_class(&b, class)?;
            let (_, e) = extension_for(&b, &coords)?;
            let r = e.group_algebra()?;
            let gerbe = extension_to_gerbe(&r)?;
            let count = twisted_rep_count(&gerbe);
            let z = center_dimension(&r)?;
            checks.push(Check::eq("center dimension = twisted count", count.total, z));
            checks.push(Check::eq("center dimension = conjugacy classes of G", e.total.conjugacy_classes().len(), z));
            let trivial = gerbe.class.iter().all(|&x| x == 0);
            Ok(Outcome::new(
                json!({ "class": coords, "total": group_summary(&e.total), "dim": r.dim(), "center_dimension": z, "gerbe_class": gerbe.class, "gerbe_trivial": trivial, "twisted_count": count }),
                checks,
            ))
        }
        other => Err(Error::Parse(format!("extension mode '{other}' (expected build, classify or center)"))),
    }
}

pub fn clifford_cmd(group: &str, kernel: &str, seed: u64) -> Result<Outcome> {
    let g = input::group(group)?;
    let k = input::subgroup(&g, kernel)?;
    let r = frules_check(&g, &k, seed)?;
    let checks = vec![
        Check::eq("irreps = sum of regular classes", r.irreps, r.total),
        Check::eq("gerbe count = sum of regular classes", r.gerbe_total, r.total),
        Check::holds("dimensions over each orbit", r.dims_hold),
    ];
    Ok(Outcome::new(json!({ "group": group_summary(&g), "kernel_order": k.order(), "count_line": r.line, "report": r }), checks))
}

pub struct FusionArgs<'a> {
    pub group: &'a str,
    pub mode: &'a str,
    pub coeff: &'a Coeff,
    pub band: &'a str,
    pub class: Option<&'a str>,
    pub kernel: Option<&'a str>,
    pub seed: u64,
}

pub fn fusion_cmd(a: &FusionArgs) -> Result<Outcome> {
    let g = input::group(a.group)?;
    let mut checks = Vec::new();
    match a.mode {
        "pentagon" => {
            let bar = BarComplex::cx(&g);
            let h = Cohomology::compute(&bar, 3, 1)?;
            let wanted = match a.class {
                Some(c) => vec![input::coords(c)?],
                None => {
                    listable(&h)?;
                    h.classes()
                }
            };
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let mut rows = Vec::new();
            for coords in wanted {
                let w = h.representative(&coords);
                let r = pentagon_check(&PointedFusionDatum::new(g.clone(), w.clone())?);
                checks.push(Check::holds(format!("pentagon for class {coords:?}"), r.holds));
                // a random gauge change keeps the pentagon
                let b = bar.random_cochain(2, w.modulus, &mut rng);
                let shifted = add(&w, &apply_differential(&bar, &b)?);
                let r2 = pentagon_check(&PointedFusionDatum::new(g.clone(), shifted)?);
                checks.push(Check::holds(format!("pentagon after gauge change {coords:?}"), r2.holds));
                rows.push(json!({ "class": coords, "pentagon": r.holds }));
            }
            Ok(Outcome::new(json!({ "group": group_summary(&g), "H3": h.structure().describe(), "associators": rows }), checks))
        }
        "phi-f" => {
            let b = finite_band(&g, a.coeff, a.band)?;
            let coords = default_class(&b, a.class)?;
            let (h, e) = extension_for(&b, &coords)?;
            let base = build_extension(&b, &Cochain::zero(2, e.cocycle.values.len(), 1))?;
            let p = phi_f_with(&base, &e.cocycle)?;
            checks.push(Check::holds("phi_f is a 3-cocycle", p.is_cocycle));
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let fbar = BarComplex::finite(&b);
            let beta = fbar.random_cochain(1, 1, &mut rng);
            let f2 = shift_finite(&b, &e.cocycle, &apply_differential(&fbar, &beta)?);
            let p2 = phi_f_with(&base, &f2)?;
            checks.push(Check::eq("class of phi_f depends only on [f]", &p.class, &p2.class));
            checks.push(Check::eq("shifted f has the same class", &coords, h.classify(&f2)?));
            Ok(Outcome::new(
                json!({ "class": coords, "semidirect": group_summary(&p.semidirect), "H3": p.structure.describe(), "phi_class": p.class, "phi_trivial": p.is_trivial_class() }),
                checks,
            ))
        }
        "alpha" => {
            let k = input::subgroup(&g, a.kernel.unwrap_or("center"))?;
            let r = exact_diagram(&g, &k)?;
            for (name, ok) in r.relative.checks.iter().chain(&r.checks) {
                checks.push(Check::holds(name.clone(), *ok));
            }
            Ok(Outcome::new(json!({ "group": group_summary(&g), "diagram": r }), checks))
        }
        "rep-ext" => {
            let b = finite_band(&g, a.coeff, a.band)?;
            let coords = default_class(&b, a.class)?;
            let (_, e) = extension_for(&b, &coords)?;
            let n = count_rep_extensions(&e)?;
            let (ker, coker) = sequence_count(&e)?;
            checks.push(Check::eq("classes = |ker|·|coker| of the sequence", (ker * coker) as u64, n.classes as u64));
            Ok(Outcome::new(json!({ "class": coords, "total": group_summary(&e.total), "count": n, "kernel": ker as u64, "cokernel": coker as u64 }), checks))
        }
        other => Err(Error::Parse(format!("fusion mode '{other}' (expected pentagon, phi-f, alpha or rep-ext)"))),
    }
}

fn add(a: &Cochain, b: &Cochain) -> Cochain {
    gerbeforge::fusion::add_cx(a, b)
}

/// `f + g` for cochains in finite coordinates.
fn shift_finite(b: &CoeffModule, f: &Cochain, g: &Cochain) -> Cochain {
    let factors = b.coeffs.factors();
    let r = factors.len();
    let values = f.values.iter().zip(&g.values).enumerate().map(|(i, (x, y))| (x + y) % factors[i % r]).collect();
    Cochain { values, ..f.clone() }
}

pub fn symmetry_cmd(q: &str, k: &str) -> Result<Outcome> {
    let (q, k) = (input::group(q)?, input::group(k)?);
    let fwd = solve_mixed_cocycles(&q, &k)?;
    let bwd = solve_mixed_cocycles(&k, &q)?;
    let mut checks = vec![Check::eq("solution classes match after exchanging Q and K", fwd.count(), bwd.count())];
    let map = transpose_classes(&fwd, &bwd)?;
    let back = transpose_classes(&bwd, &fwd)?;
    checks.push(Check::holds("transpose is an involution on classes", map.iter().enumerate().all(|(i, &j)| back[j] == i)));
    let mut fixed = Vec::new();
    for p in &fwd.representatives {
        checks.push(Check::holds("representative satisfies the conditions", fwd.satisfies(p)?));
        checks.push(Check::eq("transpose twice is the identity", p, transpose_pair(&transpose_pair(p))));
        let c = fixed_point_count(&q, &k, p)?;
        checks.push(Check::eq("fixed-point count through the groupoid", c.total, c.groupoid_total));
        fixed.push(c);
    }
    let reps: Vec<Value> = fwd.representatives.iter().map(|p| p.to_json()).collect();
    Ok(Outcome::new(
        json!({ "q": group_summary(&q), "k": group_summary(&k), "structure": fwd.structure.describe(), "count": fwd.count(), "transpose": map, "representatives": reps, "fixed_points": fixed }),
        checks,
    ))
}
