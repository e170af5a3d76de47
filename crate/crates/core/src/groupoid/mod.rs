//! Action groupoids `Q⋉X`, their `C^×` nerve cohomology, the transport
//! from `Q`-cochains with coefficients in functions on `X`, and gerbes as
//! collections of central extensions of stabilizers.

mod gerbe;

pub use gerbe::{
    assemble_gerbe, gerbe_bijection_check, gerbe_decompose, regular_classes, twisted_rep_count, GerbeDatum,
    BijectionReport, OrbitClass, TwistedCount,
};

use serde::Serialize;

use crate::abelian::zmod::SparseMat;
use crate::cohomology::{BarComplex, CochainComplex, Cochain, Cohomology, Coefficients, Coord};
use crate::group::{FiniteGroup, GroupAction};
use crate::{Error, Result};

/// `Q⋉X`: arrows `(q, x): x → q·x`, composed by `(q', q·x)∘(q, x) = (q'q, x)`.
#[derive(Clone, Debug, Serialize)]
pub struct ActionGroupoid {
    #[serde(skip)]
    pub action: GroupAction,
}

impl ActionGroupoid {
    pub fn new(action: GroupAction) -> Self {
        ActionGroupoid { action }
    }

    pub fn group(&self) -> &FiniteGroup {
        self.action.group()
    }

    pub fn objects(&self) -> usize {
        self.action.set_size()
    }

    pub fn num_arrows(&self) -> usize {
        self.group().order() * self.objects()
    }

    pub fn target(&self, q: usize, x: usize) -> usize {
        self.action.act(q, x)
    }

    /// Connected components (orbits).
    pub fn components(&self) -> usize {
        crate::group::act_orbits(&self.action).len()
    }

    /// Number of normalized composable `n`-strings.
    pub fn num_strings(&self, n: usize) -> usize {
        (self.group().order() - 1).pow(n as u32) * self.objects()
    }

    fn base(&self) -> usize {
        self.group().order() - 1
    }

    /// Index of the string `a_1∘…∘a_n` with labels `q_1..q_n` whose first
    /// arrow `a_n` starts at `source`; `None` if some label is the identity.
    pub fn string_index(&self, source: usize, labels: &[usize]) -> Option<usize> {
        let b = self.base();
        let mut idx = source;
        for &q in labels {
            if q == 0 {
                return None;
            }
            idx = idx * b + (q - 1);
        }
        Some(idx)
    }

    pub fn string_at(&self, n: usize, mut idx: usize) -> (usize, Vec<usize>) {
        let b = self.base();
        let mut labels = vec![0; n];
        for i in (0..n).rev() {
            labels[i] = idx % b + 1;
            idx /= b;
        }
        (idx, labels)
    }

    /// Final target of a string.
    pub fn string_target(&self, source: usize, labels: &[usize]) -> usize {
        labels.iter().rev().fold(source, |x, &q| self.target(q, x))
    }
}

/// Normalized nerve complex of `Q⋉X` with trivial `C^×` coefficients.
/// `(dc)(a_1..a_{n+1}) = c(a_2..) + Σ_i (-1)^i c(..a_i∘a_{i+1}..) + (-1)^{n+1} c(a_1..a_n)`.
#[derive(Clone, Debug)]
pub struct NerveComplex {
    pub groupoid: ActionGroupoid,
}

impl CochainComplex for NerveComplex {
    fn kinds(&self, n: usize) -> Vec<Coord> {
        vec![Coord::Divisible; self.groupoid.num_strings(n)]
    }

    fn differential(&self, n: usize) -> SparseMat {
        let gd = &self.groupoid;
        let g = gd.group();
        let rows = gd.num_strings(n + 1);
        let mut d = SparseMat::zeros(rows, gd.num_strings(n));
        for row in 0..rows {
            let (src, labels) = gd.string_at(n + 1, row);
            if let Some(c) = gd.string_index(src, &labels[1..]) {
                d.push(row, c, 1);
            }
            for i in 0..n {
                let mut l = labels.clone();
                let p = g.mul(l[i], l[i + 1]);
                l.splice(i..i + 2, [p]);
                if let Some(c) = gd.string_index(src, &l) {
                    d.push(row, c, if i % 2 == 0 { -1 } else { 1 });
                }
            }
            let first = labels[n];
            if let Some(c) = gd.string_index(gd.target(first, src), &labels[..n]) {
                d.push(row, c, if n.is_multiple_of(2) { -1 } else { 1 });
            }
        }
        d
    }

    fn torsion_bound(&self) -> u64 {
        self.groupoid.group().order() as u64
    }
}

impl NerveComplex {
    pub fn new(groupoid: ActionGroupoid) -> Self {
        NerveComplex { groupoid }
    }

    /// Value of a cochain on a string (zero on degenerate strings).
    pub fn value(&self, c: &Cochain, source: usize, labels: &[usize]) -> u64 {
        self.groupoid.string_index(source, labels).map_or(0, |i| c.values[i])
    }

    pub fn cochain_from_fn(&self, n: usize, modulus: u64, f: impl Fn(usize, &[usize]) -> i64) -> Cochain {
        let values = (0..self.groupoid.num_strings(n))
            .map(|i| {
                let (s, l) = self.groupoid.string_at(n, i);
                f(s, &l).rem_euclid(modulus as i64) as u64
            })
            .collect();
        Cochain { degree: n, modulus, values }
    }
}

/// `Q⋉X` and its nerve complex.
pub fn build_action_groupoid(a: &GroupAction) -> ActionGroupoid {
    ActionGroupoid::new(a.clone())
}

/// `H^n(Q⋉X, C^×)` from the nerve.
pub fn groupoid_cohomology(gd: &ActionGroupoid, n: usize) -> Result<Cohomology> {
    Cohomology::compute(&NerveComplex::new(gd.clone()), n, 1)
}

/// The bar complex of `Q` with coefficients in `C^×`-valued functions on `X`.
pub fn function_complex(a: &GroupAction) -> BarComplex {
    BarComplex { group: a.group().clone(), coeffs: Coefficients::cx_functions(a) }
}

fn check_function_coeffs(bar: &BarComplex, gd: &ActionGroupoid) -> Result<()> {
    let expected = Coefficients::cx_functions(&gd.action);
    if bar.group != *gd.group() || bar.coeffs.kinds != expected.kinds || bar.coeffs.action != expected.action {
        return Err(Error::Mismatch("coefficients are not functions on the groupoid's objects".into()));
    }
    Ok(())
}

/// `T(α)(a_1..a_n) = α(q_1..q_n)(target of a_1)`.
pub fn to_groupoid_cochain(gd: &ActionGroupoid, bar: &BarComplex, c: &Cochain) -> Result<Cochain> {
    check_function_coeffs(bar, gd)?;
    let n = c.degree;
    let nx = gd.objects();
    let values = (0..gd.num_strings(n))
        .map(|i| {
            let (s, l) = gd.string_at(n, i);
            let t = bar.tuple_index(&l).expect("labels are non-identity");
            c.values[t * nx + gd.string_target(s, &l)]
        })
        .collect();
    Ok(Cochain { degree: n, modulus: c.modulus, values })
}

/// Inverse of [`to_groupoid_cochain`].
pub fn from_groupoid_cochain(gd: &ActionGroupoid, bar: &BarComplex, c: &Cochain) -> Result<Cochain> {
    check_function_coeffs(bar, gd)?;
    let n = c.degree;
    let nx = gd.objects();
    let mut values = vec![0u64; bar.num_tuples(n) * nx];
    for i in 0..gd.num_strings(n) {
        let (s, l) = gd.string_at(n, i);
        let t = bar.tuple_index(&l).expect("labels are non-identity");
        values[t * nx + gd.string_target(s, &l)] = c.values[i];
    }
    Ok(Cochain { degree: n, modulus: c.modulus, values })
}

#[cfg(test)]
mod tests;
