use serde::Serialize;

use super::{add_cx, neg_cx, pentagon_check, PointedFusionDatum};
use crate::abelian::dual::pairing;
use crate::abelian::{dual_group, CoeffModule, FinAbGroup};
use crate::cohomology::{
    apply_differential, is_cocycle, is_cohomologous, BarComplex, Cochain, Cohomology,
};
use crate::extension::{build_extension, ExtensionDatum};
use crate::group::FiniteGroup;
use crate::{Error, Result};

/// The pointed category of simples `(χ, q)`, `χ ∈ A*`, with
/// `(χ,q)⋆(χ',q') = (χ + q·χ' + ℓ(q,q'), qq')` and associator
/// `Ω = ⟨χ, q·f(q',q'')⟩ + c(q,q',q'')`.
#[derive(Clone, Debug)]
pub struct RepExtensionDatum {
    pub base: ExtensionDatum,
    /// contragredient module `A*`
    pub dual_band: CoeffModule,
    pub ell: Cochain,
    pub c: Cochain,
    /// `G_{η*}`: the extension of `Q` by `A*` with cocycle `ℓ`
    pub dual_base: ExtensionDatum,
    /// `Vec^{ω*}_{G_{η*}}`
    pub dual: PointedFusionDatum,
}

impl RepExtensionDatum {
    pub fn dual_total(&self) -> &FiniteGroup {
        &self.dual_base.total
    }
}

#[derive(Clone, Debug)]
pub enum RepExtension {
    Built(Box<RepExtensionDatum>),
    /// the fusion product of simples is not associative (`dℓ ≠ 0`)
    ObjectViolation { triple: [usize; 3] },
    /// the scalar pentagon fails at a 4-tuple of simples
    ScalarViolation { quadruple: [usize; 4] },
}

impl RepExtension {
    pub fn datum(&self) -> Option<&RepExtensionDatum> {
        match self {
            RepExtension::Built(d) => Some(d),
            _ => None,
        }
    }
}

fn contragredient(ext: &ExtensionDatum) -> Result<CoeffModule> {
    Ok(dual_group(&ext.band.coeffs, Some(&ext.band))?.action.expect("band given"))
}

/// `Ω_0 = ⟨χ_x, q_x·f(q_y,q_z)⟩` on a group of simples indexed `χ + |A|·q`.
fn pattern(ext: &ExtensionDatum, total: &FiniteGroup) -> Cochain {
    let a = &ext.band.coeffs;
    let na = a.order() as usize;
    let elems = a.elements();
    let fbar = BarComplex::finite(&ext.band);
    BarComplex::cx(total).cochain_from_fn(3, a.exponent(), |t| {
        let (chi, qx) = (&elems[t[0] % na], t[0] / na);
        let fv = fbar.value(&ext.cocycle, &[t[1] / na, t[2] / na]);
        vec![pairing(a, chi, &ext.band.act(qx, &fv)) as i64]
    })
}

/// The 4-cochain `R` on `Q` with: the associator `Ω_0 + c` satisfies the
/// pentagon iff `dc = R`. Requires `dℓ = 0`.
pub fn required_c_coboundary(ext: &ExtensionDatum, ell: &Cochain) -> Result<Cochain> {
    let dm = contragredient(ext)?;
    let dual_base = build_extension(&dm, ell)?;
    let total = &dual_base.total;
    let na = ext.kernel_order();
    let omega0 = pattern(ext, total);
    let tb = BarComplex::cx(total);
    let d = apply_differential(&tb, &omega0)?;
    // dΩ_0 only sees the Q-labels
    for i in 0..tb.num_tuples(4) {
        let t = tb.tuple_at(4, i);
        let s: Vec<usize> = t.iter().map(|&x| (x / na) * na).collect();
        if tb.value(&d, &t) != tb.value(&d, &s) {
            return Err(Error::Convention("pentagon defect depends on the characters".into()));
        }
    }
    let q = ext.quotient();
    let qb = BarComplex::cx(q);
    let r = qb.cochain_from_fn(4, d.modulus, |t| {
        let s: Vec<usize> = t.iter().map(|&x| x * na).collect();
        vec![-(tb.value(&d, &s)[0] as i64)]
    });
    Ok(r)
}

/// Builds the explicit product of Eq. `(V,q)⋆(W,q')` for abelian `A` and
/// checks associativity on objects and scalars.
pub fn build_rep_extension(ext: &ExtensionDatum, ell: &Cochain, c: &Cochain) -> Result<RepExtension> {
    let dm = contragredient(ext)?;
    let q = ext.quotient();
    let qbar = BarComplex::cx(q);
    if ell.degree != 2 || c.degree != 3 || c.values.len() != qbar.num_tuples(3) {
        return Err(Error::Mismatch("ℓ must be a 2-cochain and c a 3-cochain on Q".into()));
    }
    let lbar = BarComplex::finite(&dm);
    if !is_cocycle(&lbar, ell)? {
        return Ok(RepExtension::ObjectViolation { triple: object_witness(&dm, &lbar, ell) });
    }
    let dual_base = build_extension(&dm, ell)?;
    let total = dual_base.total.clone();
    let omega0 = pattern(ext, &total);
    let tb = BarComplex::cx(&total);
    let na = ext.kernel_order();
    let cinf = tb.cochain_from_fn(3, c.modulus, |t| vec![qbar.value(c, &[t[0] / na, t[1] / na, t[2] / na])[0] as i64]);
    let omega = add_cx(&omega0, &cinf);
    let dual = PointedFusionDatum::new(total, omega)?;
    let p = pentagon_check(&dual);
    if let Some(w) = p.witness {
        return Ok(RepExtension::ScalarViolation { quadruple: w });
    }
    Ok(RepExtension::Built(Box::new(RepExtensionDatum {
        base: ext.clone(),
        dual_band: dm,
        ell: ell.clone(),
        c: c.clone(),
        dual_base,
        dual,
    })))
}

/// A triple of simples whose two bracketings differ.
fn object_witness(dm: &CoeffModule, lbar: &BarComplex, ell: &Cochain) -> [usize; 3] {
    let q = &dm.group;
    let a = &dm.coeffs;
    let na = a.order() as usize;
    let elems = a.elements();
    let mul = |x: usize, y: usize| {
        let (cx, qx) = (&elems[x % na], x / na);
        let (cy, qy) = (&elems[y % na], y / na);
        let s = a.add(&a.add(cx, &dm.act(qx, cy)), &lbar.value(ell, &[qx, qy]));
        a.index(&s) + na * q.mul(qx, qy)
    };
    let n = na * q.order();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if mul(mul(x, y), z) != mul(x, mul(y, z)) {
                    return [x, y, z];
                }
            }
        }
    }
    unreachable!("a non-cocycle ℓ breaks associativity somewhere")
}

/// A `c` solving `dc = R(ℓ)`, if one exists.
pub fn solve_c(ext: &ExtensionDatum, ell: &Cochain) -> Result<Option<Cochain>> {
    let r = required_c_coboundary(ext, ell)?;
    let qb = BarComplex::cx(ext.quotient());
    let zero = Cochain::zero(4, r.values.len(), r.modulus);
    is_cohomologous(&qb, &r, &zero)
}

/// The dual datum: the extension `G_{η*}` of `Q` by `A*`, with `ℓ* = f`
/// (through `A** = A`) and `c* = c + h` where `dh` absorbs the change of
/// the pentagon requirement.
pub fn dual_datum(r: &RepExtensionDatum) -> Result<(ExtensionDatum, Cochain, Cochain)> {
    let base = r.dual_base.clone();
    let ell_star = r.base.cocycle.clone();
    let dd = contragredient(&base)?;
    if dd.action != r.base.band.action || dd.coeffs != r.base.band.coeffs {
        return Err(Error::Convention("double dual does not return the band".into()));
    }
    let req = required_c_coboundary(&r.base, &r.ell)?;
    let req_star = required_c_coboundary(&base, &ell_star)?;
    let qb = BarComplex::cx(base.quotient());
    // solve in a fixed orientation so that the correction of the dual datum
    // is exactly the negative of this one
    let forward = (&r.base.cocycle.values, &r.ell.values) <= (&r.ell.values, &r.base.cocycle.values);
    let h = if r.base.cocycle.values == r.ell.values {
        Cochain::zero(3, req.values.len(), 1)
    } else if forward {
        witness(&qb, &req_star, &req)?
    } else {
        neg_cx(&witness(&qb, &req, &req_star)?)
    };
    Ok((base, ell_star, add_cx(&r.c, &h)))
}

fn witness(qb: &BarComplex, a: &Cochain, b: &Cochain) -> Result<Cochain> {
    is_cohomologous(qb, a, b)?
        .ok_or_else(|| Error::Other("pentagon requirements of a datum and its dual differ in class".into()))
}

/// Enumeration of the concrete model: associative `(ℓ, c)` up to gauge.
#[derive(Clone, Debug, Serialize)]
pub struct RepExtensionCount {
    /// normalized 2-cochains `ℓ` tried
    pub candidates: usize,
    /// `ℓ` with associative products of simples
    pub associative: usize,
    /// of those, `ℓ` admitting a scalar solution `c`
    pub solvable: usize,
    /// classes of `(ℓ, c)` up to `ℓ ~ ℓ + db`, `c ~ c + κ_b + dγ`
    pub classes: u128,
}

/// `κ_b(q1,q2,q3) = ⟨b(q1), q1·f(q2,q3)⟩`, the change of `c` under the
/// relabeling `(χ, q) ↦ (χ + b(q), q)`.
fn kappa(ext: &ExtensionDatum, dm: &CoeffModule, b: &Cochain) -> Cochain {
    let a = &ext.band.coeffs;
    let fbar = BarComplex::finite(&ext.band);
    let bbar = BarComplex::finite(dm);
    BarComplex::cx(ext.quotient()).cochain_from_fn(3, a.exponent(), |t| {
        let bv = bbar.value(b, &[t[0]]);
        let fv = fbar.value(&ext.cocycle, &[t[1], t[2]]);
        vec![pairing(a, &bv, &ext.band.act(t[0], &fv)) as i64]
    })
}

/// Every cochain of degree `n` with finite coordinates (divisible
/// coordinates are held at zero), refusing beyond `cap` of them.
pub fn all_cochains(bar: &BarComplex, n: usize, cap: usize) -> Result<Vec<Cochain>> {
    let kinds = &bar.coeffs.kinds;
    let radices: Vec<u64> = (0..bar.num_tuples(n))
        .flat_map(|_| kinds.iter().map(|k| match k {
            crate::cohomology::Coord::Finite(d) => *d,
            crate::cohomology::Coord::Divisible => 1,
        }))
        .collect();
    let total = radices.iter().try_fold(1usize, |acc, &r| acc.checked_mul(r as usize)).unwrap_or(usize::MAX);
    if total > cap {
        return Err(Error::cap("cochain enumeration", total, cap));
    }
    let mut out = Vec::with_capacity(total);
    let mut v = vec![0u64; radices.len()];
    loop {
        out.push(Cochain { degree: n, modulus: 1, values: v.clone() });
        let mut i = 0;
        while i < v.len() {
            v[i] += 1;
            if v[i] < radices[i] {
                break;
            }
            v[i] = 0;
            i += 1;
        }
        if i == v.len() {
            return Ok(out);
        }
    }
}

/// Brute-force count of the concrete model of `H^2(Q, Rep^×(A))`.
pub fn count_rep_extensions(ext: &ExtensionDatum) -> Result<RepExtensionCount> {
    let dm = contragredient(ext)?;
    let lbar = BarComplex::finite(&dm);
    let qb = BarComplex::cx(ext.quotient());
    let cap = crate::config::caps().max_classes;
    let ells = all_cochains(&lbar, 2, cap)?;
    let h2 = Cohomology::compute(&lbar, 2, 1)?;
    let mut associative = 0;
    let mut solvable_classes = std::collections::BTreeSet::new();
    let mut solvable = 0;
    for ell in &ells {
        if !is_cocycle(&lbar, ell)? {
            continue;
        }
        associative += 1;
        if solve_c(ext, ell)?.is_some() {
            solvable += 1;
            solvable_classes.insert(h2.classify(ell)?);
        }
    }
    // gauge by 1-cocycles b moves c by κ_b
    let h3 = Cohomology::compute(&qb, 3, ext.band.coeffs.exponent())?;
    let mut image = std::collections::BTreeSet::new();
    for b in all_cochains(&lbar, 1, cap)? {
        if is_cocycle(&lbar, &b)? {
            image.insert(h3.classify(&kappa(ext, &dm, &b))?);
        }
    }
    let span = subgroup_size(h3.structure(), &image);
    let classes = solvable_classes.len() as u128 * (h3.order() / span);
    Ok(RepExtensionCount { candidates: ells.len(), associative, solvable, classes })
}

fn subgroup_size(st: &FinAbGroup, gens: &std::collections::BTreeSet<Vec<u64>>) -> u128 {
    let mut span: std::collections::BTreeSet<Vec<u64>> = [st.zero()].into();
    loop {
        let mut next = span.clone();
        for x in &span {
            for g in gens {
                next.insert(st.add(x, g));
            }
        }
        if next.len() == span.len() {
            return span.len() as u128;
        }
        span = next;
    }
}

/// `|ker(H^2(Q,A*) → H^4(Q))| · |coker(H^1(Q,A*) → H^3(Q))|`, from class
/// representatives.
pub fn sequence_count(ext: &ExtensionDatum) -> Result<(u128, u128)> {
    let dm = contragredient(ext)?;
    let lbar = BarComplex::finite(&dm);
    let qb = BarComplex::cx(ext.quotient());
    let h1 = Cohomology::compute(&lbar, 1, 1)?;
    let h2 = Cohomology::compute(&lbar, 2, 1)?;
    let h3 = Cohomology::compute(&qb, 3, ext.band.coeffs.exponent())?;
    let mut ker = 0u128;
    for cls in h2.classes() {
        if solve_c(ext, &h2.representative(&cls))?.is_some() {
            ker += 1;
        }
    }
    let mut image = std::collections::BTreeSet::new();
    for cls in h1.classes() {
        image.insert(h3.classify(&kappa(ext, &dm, &h1.representative(&cls)))?);
    }
    let span = subgroup_size(h3.structure(), &image);
    Ok((ker, h3.order() / span))
}

