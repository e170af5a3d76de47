use serde::Serialize;

use super::bar::BarComplex;
use super::complex::{CochainComplex, Cochain, Cohomology, Coord};
use super::induced::{induced_hom, induced_map, InducedKind};
use crate::abelian::zmod::SparseMat;
use crate::abelian::{hom_structure, AbHom, FinAbGroup};
use crate::group::{FiniteGroup, SubgroupDatum};
use crate::{Error, Result};

/// Mapping cone of restriction `C^•(G, C^×) → C^•(K, C^×)`:
/// `C^n(G;K) = C^n(G) ⊕ C^{n-1}(K)`, `d(α, β) = (dα, α|_K - dβ)`.
#[derive(Clone, Debug)]
pub struct ConeComplex {
    pub g: BarComplex,
    pub k: BarComplex,
    /// ambient index of each element of `K`
    pub incl: Vec<usize>,
}

impl ConeComplex {
    pub fn new(g: &FiniteGroup, k: &SubgroupDatum) -> Result<Self> {
        k.check_parent(g)?;
        Ok(ConeComplex { g: BarComplex::cx(g), k: BarComplex::cx(&k.as_group(g)), incl: k.members().to_vec() })
    }

    fn dims(&self, n: usize) -> (usize, usize) {
        let a = self.g.num_tuples(n);
        let b = if n == 0 { 0 } else { self.k.num_tuples(n - 1) };
        (a, b)
    }

    pub fn pair(&self, alpha: &Cochain, beta: &Cochain) -> Result<Cochain> {
        if alpha.modulus != beta.modulus || beta.degree + 1 != alpha.degree {
            return Err(Error::Mismatch("cone components disagree".into()));
        }
        let mut values = alpha.values.clone();
        values.extend_from_slice(&beta.values);
        Ok(Cochain { degree: alpha.degree, modulus: alpha.modulus, values })
    }

    pub fn parts(&self, c: &Cochain) -> (Cochain, Cochain) {
        let (a, _) = self.dims(c.degree);
        let alpha = Cochain { degree: c.degree, modulus: c.modulus, values: c.values[..a].to_vec() };
        let beta = Cochain { degree: c.degree.saturating_sub(1), modulus: c.modulus, values: c.values[a..].to_vec() };
        (alpha, beta)
    }
}

impl CochainComplex for ConeComplex {
    fn kinds(&self, n: usize) -> Vec<Coord> {
        let (a, b) = self.dims(n);
        vec![Coord::Divisible; a + b]
    }

    fn differential(&self, n: usize) -> SparseMat {
        let (a0, b0) = self.dims(n);
        let (a1, b1) = self.dims(n + 1);
        let mut d = SparseMat::zeros(a1 + b1, a0 + b0);
        let dg = self.g.differential(n);
        for (j, col) in dg.cols.iter().enumerate() {
            for &(r, v) in col {
                d.push(r, j, v);
            }
        }
        // restriction block: C^n(G) → C^n(K)
        for i in 0..self.k.num_tuples(n) {
            let t: Vec<usize> = self.k.tuple_at(n, i).iter().map(|&x| self.incl[x]).collect();
            let j = self.g.tuple_index(&t).expect("non-identity elements");
            d.push(a1 + i, j, 1);
        }
        if n >= 1 {
            let dk = self.k.differential(n - 1);
            for (j, col) in dk.cols.iter().enumerate() {
                for &(r, v) in col {
                    d.push(a1 + r, a0 + j, -v);
                }
            }
        }
        d
    }

    fn torsion_bound(&self) -> u64 {
        (self.g.group.order() * self.k.group.order()) as u64
    }
}

/// The middle row `0 → H^{n-1}(K)/im H^{n-1}(G) → H^n(G;K) → H^n_K(G) → 0`.
#[derive(Clone, Debug, Serialize)]
pub struct RelativeReport {
    pub degree: usize,
    pub relative: FinAbGroup,
    pub coker_restriction: FinAbGroup,
    pub ker_restriction: FinAbGroup,
    /// `H^{n-1}(K) → H^n(G;K)`
    pub connecting: AbHom,
    /// `H^n(G;K) → H^n(G)`
    pub forget: AbHom,
    pub restriction_low: AbHom,
    pub restriction_high: AbHom,
    pub checks: Vec<(String, bool)>,
    #[serde(skip)]
    pub cone: Option<ConeComplex>,
    #[serde(skip)]
    pub classes: Option<Cohomology>,
}

impl RelativeReport {
    pub fn exact(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Relative cohomology `H^n(G;K)` as mapping-cone cohomology, with the maps
/// of the middle row and their exactness checks.
pub fn relative_der_complex(g: &FiniteGroup, k: &SubgroupDatum, degree: usize) -> Result<RelativeReport> {
    if !k.is_normal() {
        return Err(Error::NotNormal);
    }
    if !(1..=3).contains(&degree) {
        return Err(Error::Mismatch("relative degree must be 1, 2 or 3".into()));
    }
    let cone = ConeComplex::new(g, k)?;
    let level = cone.torsion_bound();
    let rel = Cohomology::compute(&cone, degree, level)?;
    let res_low = induced_map(&cone.g, InducedKind::Restriction { subgroup: k }, degree - 1, level)?;
    let res_high = induced_map(&cone.g, InducedKind::Restriction { subgroup: k }, degree, level)?;
    let h_k_low = &res_low.target;
    let h_g_high = &res_high.source;
    let connecting = induced_hom(h_k_low, &rel, |beta| {
        let alpha = Cochain::zero(degree, cone.g.num_tuples(degree), beta.modulus);
        cone.pair(&alpha, beta)
    })?;
    let forget = induced_hom(&rel, h_g_high, |c| Ok(cone.parts(c).0))?;
    let coker = hom_structure(&res_low.hom);
    let ker = hom_structure(&res_high.hom);
    let conn_s = hom_structure(&connecting);
    let forget_s = hom_structure(&forget);
    let im_res_low = res_low.hom.image_order();
    let im_conn = connecting.image_order();
    let im_forget = forget.image_order();
    let checks = vec![
        (
            "orders multiply".to_string(),
            coker.cokernel.order() * ker.kernel.order() == rel.order(),
        ),
        ("connecting after restriction vanishes".into(), connecting.compose(&res_low.hom)?.is_zero()),
        ("ker connecting = im restriction".into(), conn_s.kernel.order() == im_res_low),
        ("forget after connecting vanishes".into(), forget.compose(&connecting)?.is_zero()),
        ("ker forget = im connecting".into(), forget_s.kernel.order() == im_conn),
        ("restriction after forget vanishes".into(), res_high.hom.compose(&forget)?.is_zero()),
        ("im forget = ker restriction".into(), im_forget == ker.kernel.order()),
    ];
    Ok(RelativeReport {
        degree,
        relative: rel.structure().clone(),
        coker_restriction: coker.cokernel,
        ker_restriction: ker.kernel,
        connecting,
        forget,
        restriction_low: res_low.hom.clone(),
        restriction_high: res_high.hom.clone(),
        checks,
        cone: Some(cone),
        classes: Some(rel),
    })
}
