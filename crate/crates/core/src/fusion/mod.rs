//! Pointed fusion data `Vec_G^ω`: pentagon checks, embeddings of `Vec_K`,
//! the `φ_f` construction for abelian kernels, the conjugation derivation
//! `α`, explicit rep-category extensions and orthogonal groups of `A ⊕ A*`.

mod alpha;
mod diagram;
mod orthogonal;
mod rep_ext;

use serde::Serialize;
use serde_json::{json, Value};

pub use alpha::{alpha_of, conjugation_cocycle_alpha, derivations, AlphaReport, DerivationData};
pub use diagram::{exact_diagram, DiagramReport};
pub use orthogonal::{orthogonal_form_group, OrthogonalGroup};
pub use rep_ext::{
    all_cochains, build_rep_extension, count_rep_extensions, dual_datum, required_c_coboundary, sequence_count, solve_c, RepExtension,
    RepExtensionCount, RepExtensionDatum,
};

use crate::abelian::zmod::lcm;
use crate::abelian::FinAbGroup;
use crate::cohomology::{is_cocycle, is_cohomologous, BarComplex, Cochain, Cohomology};
use crate::extension::ExtensionDatum;
use crate::group::{FiniteGroup, SubgroupDatum};
use crate::{Error, Result};

/// `Vec_G^ω` with `ω` a normalized `C^×`-valued 3-cochain (exponents of
/// `modulus`-th roots of unity), optionally graded by `G/K`.
#[derive(Clone, Debug)]
pub struct PointedFusionDatum {
    pub group: FiniteGroup,
    pub omega: Cochain,
    pub grading: Option<Grading>,
}

#[derive(Clone, Debug)]
pub struct Grading {
    pub kernel: SubgroupDatum,
    /// `η ∈ C^2(K)` with `dη = ω|_K`
    pub eta: Option<Cochain>,
}

impl PointedFusionDatum {
    pub fn new(group: FiniteGroup, omega: Cochain) -> Result<Self> {
        let bar = BarComplex::cx(&group);
        if omega.degree != 3 || omega.values.len() != bar.num_tuples(3) {
            return Err(Error::Mismatch("associator must be a 3-cochain on the group".into()));
        }
        Ok(PointedFusionDatum { group, omega, grading: None })
    }

    pub fn trivial(group: FiniteGroup) -> Self {
        let n = BarComplex::cx(&group).num_tuples(3);
        PointedFusionDatum { omega: Cochain::zero(3, n, 1), group, grading: None }
    }

    pub fn graded(mut self, kernel: SubgroupDatum, eta: Option<Cochain>) -> Result<Self> {
        kernel.check_parent(&self.group)?;
        if !kernel.is_normal() {
            return Err(Error::NotNormal);
        }
        self.grading = Some(Grading { kernel, eta });
        Ok(self)
    }

    pub fn bar(&self) -> BarComplex {
        BarComplex::cx(&self.group)
    }

    /// `ω(a, b, c)` as an exponent mod `omega.modulus`.
    pub fn value(&self, a: usize, b: usize, c: usize) -> u64 {
        self.bar().value(&self.omega, &[a, b, c])[0]
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group.name(),
            "order": self.group.order(),
            "omega": self.bar().cochain_to_json(&self.omega),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PentagonReport {
    pub holds: bool,
    /// first 4-tuple where `dω ≠ 0`
    pub witness: Option<[usize; 4]>,
}

/// `dω` at one 4-tuple, straight from the bar formula.
fn d_omega_at(g: &FiniteGroup, bar: &BarComplex, w: &Cochain, t: [usize; 4]) -> u64 {
    let m = w.modulus;
    let v = |x: &[usize]| bar.value(w, x)[0];
    let [a, b, c, d] = t;
    (v(&[b, c, d]) + m - v(&[g.mul(a, b), c, d]) + v(&[a, g.mul(b, c), d]) + m - v(&[a, b, g.mul(c, d)]) + v(&[a, b, c])) % m
}

/// Evaluates the pentagon (`dω = 0`) on every 4-tuple of group elements.
pub fn pentagon_check(d: &PointedFusionDatum) -> PentagonReport {
    let g = &d.group;
    let bar = d.bar();
    for a in g.elements() {
        for b in g.elements() {
            for c in g.elements() {
                for e in g.elements() {
                    if d_omega_at(g, &bar, &d.omega, [a, b, c, e]) != 0 {
                        return PentagonReport { holds: false, witness: Some([a, b, c, e]) };
                    }
                }
            }
        }
    }
    PentagonReport { holds: true, witness: None }
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingDatum {
    pub subgroup: Vec<usize>,
    /// `η` on `K` (indices into `subgroup`) with `dη = ω|_K`
    pub eta: Cochain,
}

#[derive(Clone, Debug, Serialize)]
pub enum Embedding {
    Embedded(EmbeddingDatum),
    /// `[ω|_K] ≠ 0` in `H^3(K, C^×)`
    Obstructed { structure: FinAbGroup, class: Vec<u64> },
}

impl Embedding {
    pub fn eta(&self) -> Option<&Cochain> {
        match self {
            Embedding::Embedded(e) => Some(&e.eta),
            Embedding::Obstructed { .. } => None,
        }
    }
}

/// `ω|_K` as a cochain on `K` (local indices).
pub fn restrict_to(d: &PointedFusionDatum, k: &SubgroupDatum) -> (BarComplex, Cochain) {
    let kb = BarComplex::cx(&k.as_group(&d.group));
    let c = kb.pullback(&d.bar(), k.members(), &d.omega);
    (kb, c)
}

/// Solves `dη = ω|_K`, or certifies that the restricted class is nonzero.
pub fn embed_vec_k(d: &PointedFusionDatum, k: &SubgroupDatum) -> Result<Embedding> {
    k.check_parent(&d.group)?;
    let (kb, res) = restrict_to(d, k);
    let zero = Cochain::zero(3, res.values.len(), res.modulus);
    if !is_cocycle(&kb, &res)? {
        return Err(Error::NotCocycle { witness: None });
    }
    match is_cohomologous(&kb, &res, &zero)? {
        Some(eta) => Ok(Embedding::Embedded(EmbeddingDatum { subgroup: k.members().to_vec(), eta })),
        None => {
            let h = Cohomology::compute(&kb, 3, res.modulus)?;
            Ok(Embedding::Obstructed { structure: h.structure().clone(), class: h.classify(&res)? })
        }
    }
}

/// `Vec^{φ_f}` on `Q⋉A*` for an extension of `Q` by an abelian `A`.
#[derive(Clone, Debug)]
pub struct PhiFDatum {
    /// element `(q, χ)` sits at index `index(χ) + |A*|·q`, with
    /// `(q,χ)(q',χ') = (qq', χ' + q'⁻¹·χ)`
    pub semidirect: FiniteGroup,
    pub dual: FinAbGroup,
    pub datum: PointedFusionDatum,
    pub is_cocycle: bool,
    pub structure: FinAbGroup,
    pub class: Vec<u64>,
}

impl PhiFDatum {
    pub fn is_trivial_class(&self) -> bool {
        self.class.iter().all(|&c| c == 0)
    }
}

/// The semidirect product `Q⋉A*` for the contragredient action.
pub fn dual_semidirect(ext: &ExtensionDatum) -> Result<(FiniteGroup, FinAbGroup)> {
    let band = &ext.band;
    let a = &band.coeffs;
    let dual = crate::abelian::dual_group(a, Some(band))?;
    let dm = dual.action.expect("band given");
    let q = &band.group;
    let na = a.order() as usize;
    let elems = a.elements();
    let n = na * q.order();
    let table: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let (chi, qx) = (&elems[x % na], x / na);
            (0..n)
                .map(|y| {
                    let (chi2, qy) = (&elems[y % na], y / na);
                    let moved = dm.act(q.inv(qy), chi);
                    a.index(&a.add(chi2, &moved)) + na * q.mul(qx, qy)
                })
                .collect()
        })
        .collect();
    let labels = (0..n).map(|x| format!("({};{})", q.label(x / na), x % na)).collect();
    let g = FiniteGroup::from_table(format!("{}x{}*", q.name(), a.describe()), &table)?.with_labels(labels);
    Ok((g, a.clone()))
}

/// `φ_f((q,χ),(q',χ'),(q'',χ'')) = χ(f(q',q''))` on `Q⋉A*`, checked to be a
/// 3-cocycle and classified.
pub fn phi_f_construct(ext: &ExtensionDatum) -> Result<PhiFDatum> {
    phi_f_with(ext, &ext.cocycle)
}

/// As [`phi_f_construct`] for another cocycle `f` with the same band.
pub fn phi_f_with(ext: &ExtensionDatum, f: &Cochain) -> Result<PhiFDatum> {
    let band = &ext.band;
    let a = &band.coeffs;
    let na = a.order() as usize;
    let (semi, dual) = dual_semidirect(ext)?;
    let fbar = BarComplex::finite(band);
    let elems = a.elements();
    let n = a.exponent();
    let bar = BarComplex::cx(&semi);
    let omega = bar.cochain_from_fn(3, n, |t| {
        let chi = &elems[t[0] % na];
        let fv = fbar.value(f, &[t[1] / na, t[2] / na]);
        vec![crate::abelian::dual::pairing(a, chi, &fv) as i64]
    });
    let ok = is_cocycle(&bar, &omega)?;
    let (structure, class) = if ok {
        let h = Cohomology::compute(&bar, 3, n)?;
        (h.structure().clone(), h.classify(&omega)?)
    } else {
        (FinAbGroup::trivial(), Vec::new())
    };
    let datum = PointedFusionDatum::new(semi.clone(), omega)?;
    Ok(PhiFDatum { semidirect: semi, dual, datum, is_cocycle: ok, structure, class })
}

/// Sum of two `C^×` cochains at their common level.
pub fn add_cx(a: &Cochain, b: &Cochain) -> Cochain {
    let level = lcm(a.modulus, b.modulus);
    let (fa, fb) = (level / a.modulus, level / b.modulus);
    let values = a.values.iter().zip(&b.values).map(|(x, y)| (x * fa + y * fb) % level).collect();
    Cochain { degree: a.degree, modulus: level, values }
}

pub fn neg_cx(a: &Cochain) -> Cochain {
    let m = a.modulus;
    Cochain { degree: a.degree, modulus: m, values: a.values.iter().map(|x| (m - x % m) % m).collect() }
}

#[cfg(test)]
mod tests;
