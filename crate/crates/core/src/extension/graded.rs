use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::algebra::MonomialAlgebra;
use crate::cohomology::{is_cocycle, BarComplex, Cochain};
use crate::config::caps;
use crate::group::GroupAction;
use crate::groupoid::{
    build_action_groupoid, from_groupoid_cochain, function_complex, gerbe_decompose, to_groupoid_cochain, GerbeDatum,
    NerveComplex,
};
use crate::cohomology::Cohomology;
use crate::{Error, Result};

/// `R = ⊕_q R_q` with `R_q = ⊕_x Hom(V_x, V_{q·x})`, `dim V_x = dims[x]`.
/// Basis: matrix units `(q, x, a, b)` sending basis vector `b` of `V_x`
/// to basis vector `a` of `V_{q·x}`. Products compose matrix units and
/// pick up `ζ_N^{c(q', q)(target)}`.
#[derive(Clone, Debug, Serialize)]
pub struct GradedAlgebraR {
    #[serde(skip)]
    pub band: GroupAction,
    pub dims: Vec<usize>,
    pub cocycle: Cochain,
    basis: Vec<(usize, usize, usize, usize)>,
    #[serde(skip)]
    index: HashMap<(usize, usize, usize, usize), usize>,
}

pub fn build_graded_algebra(band: &GroupAction, dims: &[usize], c: &Cochain) -> Result<GradedAlgebraR> {
    let nx = band.set_size();
    if dims.len() != nx || dims.contains(&0) {
        return Err(Error::Mismatch("one positive dimension per point required".into()));
    }
    let bar = function_complex(band);
    if c.degree != 2 || !is_cocycle(&bar, c)? {
        return Err(Error::NotCocycle { witness: None });
    }
    let q = band.group();
    let total: usize = q.elements().map(|g| (0..nx).map(|x| dims[x] * dims[band.act(g, x)]).sum::<usize>()).sum();
    let cap = caps().max_algebra_dim;
    if total > cap {
        return Err(Error::cap("algebra dimension", total, cap));
    }
    let mut basis = Vec::with_capacity(total);
    for g in q.elements() {
        for x in 0..nx {
            for a in 0..dims[band.act(g, x)] {
                for b in 0..dims[x] {
                    basis.push((g, x, a, b));
                }
            }
        }
    }
    let index = basis.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    Ok(GradedAlgebraR { band: band.clone(), dims: dims.to_vec(), cocycle: c.clone(), basis, index })
}

impl GradedAlgebraR {
    pub fn basis_element(&self, i: usize) -> (usize, usize, usize, usize) {
        self.basis[i]
    }

    pub fn grade_dim(&self, g: usize) -> usize {
        (0..self.dims.len()).map(|x| self.dims[x] * self.dims[self.band.act(g, x)]).sum()
    }

    fn twist(&self, g2: usize, g1: usize, target: usize) -> u64 {
        let n = self.band.group().order();
        if g1 == 0 || g2 == 0 {
            return 0;
        }
        let t = (g2 - 1) * (n - 1) + (g1 - 1);
        self.cocycle.values[t * self.dims.len() + target]
    }

    /// `dim span(R_{g'} · R_g) = dim R_{g'g}` for every pair.
    pub fn strong_grading_defects(&self) -> Vec<(usize, usize)> {
        let q = self.band.group();
        let mut bad = Vec::new();
        let by_grade: Vec<Vec<usize>> =
            q.elements().map(|g| (0..self.basis.len()).filter(|&i| self.basis[i].0 == g).collect()).collect();
        for g2 in q.elements() {
            for g1 in q.elements() {
                let mut reached = BTreeSet::new();
                for &i in &by_grade[g2] {
                    for &j in &by_grade[g1] {
                        if let Some((k, _)) = self.product(i, j) {
                            reached.insert(k);
                        }
                    }
                }
                if reached.len() != self.grade_dim(q.mul(g2, g1)) {
                    bad.push((g2, g1));
                }
            }
        }
        bad
    }
}

impl MonomialAlgebra for GradedAlgebraR {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn root_order(&self) -> u64 {
        self.cocycle.modulus
    }

    fn product(&self, i: usize, j: usize) -> Option<(usize, u64)> {
        let (g2, y, a2, b2) = self.basis[i];
        let (g1, x, a1, b1) = self.basis[j];
        if y != self.band.act(g1, x) || b2 != a1 {
            return None;
        }
        let g = self.band.group().mul(g2, g1);
        let k = self.index[&(g, x, a2, b1)];
        Some((k, self.twist(g2, g1, self.band.act(g, x))))
    }

    fn generators(&self) -> Vec<usize> {
        let gens = self.band.group().generators();
        (0..self.basis.len()).filter(|&i| self.basis[i].0 == 0 || gens.contains(&self.basis[i].0)).collect()
    }

    fn basis_label(&self, i: usize) -> String {
        let (g, x, a, b) = self.basis[i];
        format!("{}:{}[{},{}]", self.band.group().label(g), x, a, b)
    }
}

/// The gerbe of `R`: its cocycle transported to `Q⋉X`, classified and
/// decomposed over orbits.
pub fn extension_to_gerbe(r: &GradedAlgebraR) -> Result<GerbeDatum> {
    let gd = build_action_groupoid(&r.band);
    let bar = function_complex(&r.band);
    let c = to_groupoid_cochain(&gd, &bar, &r.cocycle)?;
    let h = Cohomology::compute(&NerveComplex::new(gd.clone()), 2, c.modulus)?;
    gerbe_decompose(&gd, &h, &c)
}

/// The algebra with band `Q⋉X` and the gerbe's cocycle transported back.
pub fn gerbe_to_extension(g: &GerbeDatum, dims: Option<&[usize]>) -> Result<GradedAlgebraR> {
    let band = &g.groupoid.action;
    let ones = vec![1; band.set_size()];
    let bar: BarComplex = function_complex(band);
    let c = from_groupoid_cochain(&g.groupoid, &bar, &g.cocycle)?;
    build_graded_algebra(band, dims.unwrap_or(&ones), &c)
}
