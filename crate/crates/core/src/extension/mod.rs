//! Group extensions from 2-cocycles, twisted group algebras, the strongly
//! graded algebra attached to a band and a cocycle, and exact center
//! dimensions.

mod algebra;
mod graded;

pub use algebra::{
    associativity_violation, center_dimension, structure_constants_json, twisted_group_algebra, MonomialAlgebra,
    TwistedGroupAlgebra,
};
pub use graded::{build_graded_algebra, extension_to_gerbe, gerbe_to_extension, GradedAlgebraR};

use serde::Serialize;

use crate::abelian::{dual_group, CoeffModule};
use crate::cohomology::{is_cocycle, BarComplex, Cochain};
use crate::group::{quotient_with_section, FiniteGroup, GroupAction, GroupHom, SubgroupDatum};
use crate::{Error, Result};

/// `A → G → Q` presented by a band, a cocycle and the normalized section
/// `q ↦ (0, q)`. Elements of `G` are pairs `(a, q)` with index `a + |A|·q`.
#[derive(Clone, Debug, Serialize)]
pub struct ExtensionDatum {
    #[serde(skip)]
    pub band: CoeffModule,
    pub cocycle: Cochain,
    #[serde(skip)]
    pub total: FiniteGroup,
    pub embed: Vec<usize>,
    #[serde(skip)]
    pub proj: GroupHom,
    pub section: Vec<usize>,
}

impl ExtensionDatum {
    pub fn quotient(&self) -> &FiniteGroup {
        &self.band.group
    }

    pub fn kernel_order(&self) -> usize {
        self.band.coeffs.order() as usize
    }

    pub fn kernel_subgroup(&self) -> SubgroupDatum {
        SubgroupDatum::new(&self.total, &self.embed).expect("embedded kernel is a subgroup")
    }

    fn kernel_coords(&self, g: usize) -> Option<Vec<u64>> {
        self.embed.iter().position(|&x| x == g).map(|i| self.band.coeffs.element(i))
    }

    /// `f(q, q') = s(q)s(q')s(qq')⁻¹` for an arbitrary normalized section.
    pub fn factor_set(&self, section: &[usize]) -> Result<Cochain> {
        let g = &self.total;
        let q = self.quotient();
        if section.len() != q.order() || section[0] != 0 || section.iter().enumerate().any(|(i, &s)| self.proj.apply(s) != i) {
            return Err(Error::Mismatch("not a normalized section".into()));
        }
        let bar = BarComplex::finite(&self.band);
        let err = std::cell::Cell::new(None);
        let c = bar.cochain_from_fn(2, 1, |t| {
            let v = g.mul(g.mul(section[t[0]], section[t[1]]), g.inv(section[q.mul(t[0], t[1])]));
            match self.kernel_coords(v) {
                Some(c) => c.into_iter().map(|x| x as i64).collect(),
                None => {
                    err.set(Some(Error::Other("factor set leaves the kernel".into())));
                    vec![0; self.band.coeffs.rank()]
                }
            }
        });
        err.into_inner().map_or(Ok(c), Err)
    }

    /// The factor set read back through [`quotient_with_section`].
    pub fn recover_cocycle(&self) -> Result<Cochain> {
        let quo = quotient_with_section(&self.total, &self.kernel_subgroup())?;
        let mut section = vec![0; self.quotient().order()];
        for &s in &quo.section {
            section[self.proj.apply(s)] = s;
        }
        self.factor_set(&section)
    }

    /// The group algebra `C[G]` as a graded algebra over the characters of
    /// `A` (abelian kernel): band = contragredient action, all dimensions 1,
    /// cocycle `c(q', q)(ψ) = ψ(f(q', q))`.
    pub fn group_algebra(&self) -> Result<GradedAlgebraR> {
        let a = &self.band.coeffs;
        let dual = dual_group(a, Some(&self.band))?;
        let act = dual.action.as_ref().expect("band given");
        let q = self.quotient().clone();
        let band = GroupAction::from_fn(q.clone(), a.order() as usize, |g, x| a.index(&act.act(g, &a.element(x))))?;
        let n = a.exponent();
        let fb = crate::groupoid::function_complex(&band);
        let rank = a.order() as usize;
        let f = &self.cocycle;
        let fbar = BarComplex::finite(&self.band);
        let c = fb.cochain_from_fn(2, n, |t| {
            let val = fbar.value(f, t);
            (0..rank).map(|psi| dual.pairing(&a.element(psi), &val) as i64).collect()
        });
        build_graded_algebra(&band, &vec![1; rank], &c)
    }
}

/// `G_η` on pairs `(a, q)` with `(a,q)(a',q') = (a + q·a' + η(q,q'), qq')`.
pub fn build_extension(band: &CoeffModule, eta: &Cochain) -> Result<ExtensionDatum> {
    let bar = BarComplex::finite(band);
    if eta.degree != 2 || !is_cocycle(&bar, eta)? {
        return Err(Error::NotCocycle { witness: None });
    }
    let q = &band.group;
    let a = &band.coeffs;
    let na = a.order() as usize;
    let n = na * q.order();
    let elems = a.elements();
    let mut table = vec![vec![0usize; n]; n];
    for (x, row) in table.iter_mut().enumerate() {
        let (ai, qi) = (x % na, x / na);
        for (y, cell) in row.iter_mut().enumerate() {
            let (aj, qj) = (y % na, y / na);
            let twisted = band.act(qi, &elems[aj]);
            let eta_v = bar.value(eta, &[qi, qj]);
            let s = a.add(&a.add(&elems[ai], &twisted), &eta_v);
            *cell = a.index(&s) + na * q.mul(qi, qj);
        }
    }
    let labels = (0..n).map(|x| format!("({};{})", a.index(&elems[x % na]), q.label(x / na))).collect();
    let name = format!("ext({} by {})", q.name(), a.describe());
    let total = FiniteGroup::from_table(name, &table)?.with_labels(labels);
    let proj = GroupHom::new(total.clone(), q.clone(), (0..n).map(|x| x / na).collect())?;
    Ok(ExtensionDatum {
        band: band.clone(),
        cocycle: eta.clone(),
        total,
        embed: (0..na).collect(),
        proj,
        section: (0..q.order()).map(|x| x * na).collect(),
    })
}

/// `K → G → G/K` for an abelian normal `K`, rebuilt on pairs through the
/// least-member section; the band and factor set are read off `G`.
/// Returns the datum and the map `G → total` that it induces.
pub fn extension_from_normal(g: &FiniteGroup, k: &SubgroupDatum) -> Result<(ExtensionDatum, Vec<usize>)> {
    if !k.is_normal() {
        return Err(Error::NotNormal);
    }
    if !k.as_group(g).is_abelian() {
        return Err(Error::NonAbelian);
    }
    let quo = quotient_with_section(g, k)?;
    let (band, coords) = CoeffModule::from_normal_abelian(g, k, &quo)?;
    let f = BarComplex::finite(&band)
        .cochain_from_fn(2, 1, |t| coords.coords_of(quo.f(t[0], t[1])).iter().map(|&x| x as i64).collect());
    let ext = build_extension(&band, &f)?;
    // x = a·s(q) ↦ (a, q)
    let na = band.coeffs.order() as usize;
    let iso: Vec<usize> = g
        .elements()
        .map(|x| {
            let q = quo.proj.apply(x);
            let a = g.mul(x, g.inv(quo.s(q)));
            band.coeffs.index(&coords.coords_of(a)) + na * q
        })
        .collect();
    if !g.is_hom_to(&ext.total, &iso) {
        return Err(Error::Convention("rebuilt extension is not isomorphic through the section".into()));
    }
    Ok((ext, iso))
}

/// An isomorphism `G_1 → G_2` restricting to the identity on `A` and
/// inducing the identity on `Q`, found by search over images of the
/// section (pruned on every closed product); `None` if there is none.
pub fn extension_equivalence(e1: &ExtensionDatum, e2: &ExtensionDatum) -> Result<Option<Vec<usize>>> {
    if e1.band.action != e2.band.action || e1.band.coeffs != e2.band.coeffs || e1.quotient() != e2.quotient() {
        return Err(Error::Mismatch("extensions have different bands".into()));
    }
    let q = e1.quotient();
    let na = e1.kernel_order();
    let (g1, g2) = (&e1.total, &e2.total);
    let mut images = vec![None::<usize>; q.order()];
    images[0] = Some(0);
    // φ(embed1(a)·s1(q)) = embed2(a)·φ(s1(q))
    let extend = |images: &[Option<usize>]| -> Vec<Option<usize>> {
        let mut phi = vec![None; g1.order()];
        for (qi, img) in images.iter().enumerate() {
            if let Some(t) = img {
                for a in 0..na {
                    phi[g1.mul(e1.embed[a], e1.section[qi])] = Some(g2.mul(e2.embed[a], *t));
                }
            }
        }
        phi
    };
    let consistent = |phi: &[Option<usize>]| {
        for x in g1.elements() {
            for y in g1.elements() {
                if let (Some(a), Some(b), Some(c)) = (phi[x], phi[y], phi[g1.mul(x, y)]) {
                    if g2.mul(a, b) != c {
                        return false;
                    }
                }
            }
        }
        true
    };
    fn search(
        i: usize,
        images: &mut Vec<Option<usize>>,
        cands: &dyn Fn(usize) -> Vec<usize>,
        ok: &dyn Fn(&[Option<usize>]) -> bool,
    ) -> bool {
        if i == images.len() {
            return true;
        }
        for t in cands(i) {
            images[i] = Some(t);
            if ok(images) && search(i + 1, images, cands, ok) {
                return true;
            }
        }
        images[i] = None;
        false
    }
    let cands = |qi: usize| (0..na).map(|a| g2.mul(e2.embed[a], e2.section[qi])).collect::<Vec<_>>();
    let ok = |imgs: &[Option<usize>]| consistent(&extend(imgs));
    if search(1, &mut images, &cands, &ok) {
        let phi: Vec<usize> = extend(&images).into_iter().map(|x| x.expect("total map")).collect();
        Ok(Some(phi))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests;
