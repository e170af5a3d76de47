//! Actions of `Q` on `Vec_K` fixing every simple, and the transposed
//! actions of `K` on `Vec_Q`, as pairs of mixed cochains with values in
//! `C^×`.
//!
//! A pair is `ω(q; k, k')` and `η(k; q, q')`, normalized in every slot,
//! subject to `∂_k ω = 0`, `∂_q η = 0` and `∂_q ω = ∂_k η`. Gauge is a
//! normalized `b(q; k)` acting by `(ω, η) ↦ (ω + ∂_k b, η + ∂_q b)`.

use serde::Serialize;
use serde_json::{json, Value};

use crate::abelian::zmod::{lcm, SparseMat};
use crate::abelian::FinAbGroup;
use crate::cohomology::{apply_differential, BarComplex, Cochain, CochainComplex, Cohomology, Coord};
use crate::config::caps;
use crate::group::{FiniteGroup, GroupAction};
use crate::groupoid::{build_action_groupoid, gerbe_decompose, twisted_rep_count, NerveComplex};
use crate::{Error, Result};

/// Cochain complex `C^1 → C^2 → C^3` of the mixed conditions.
///
/// Coordinates (non-identity entries only, first slot slowest):
/// degree 1 is `b(q; k)`; degree 2 is `ω(q; k1, k2)` followed by
/// `η(k; q1, q2)`; degree 3 is `∂_k ω`, then `∂_q ω − ∂_k η` on
/// `(q1, q2; k1, k2)`, then `∂_q η`.
#[derive(Clone, Debug)]
pub struct MixedComplex {
    pub q: FiniteGroup,
    pub k: FiniteGroup,
}

impl MixedComplex {
    pub fn new(q: &FiniteGroup, k: &FiniteGroup) -> Self {
        MixedComplex { q: q.clone(), k: k.clone() }
    }

    fn a(&self) -> usize {
        self.q.order() - 1
    }

    fn b(&self) -> usize {
        self.k.order() - 1
    }

    fn omega_len(&self) -> usize {
        self.a() * self.b() * self.b()
    }

    fn eta_len(&self) -> usize {
        self.b() * self.a() * self.a()
    }

    /// Index of a tuple of non-identity elements of groups with the given
    /// non-identity counts; `None` if an entry is the identity.
    fn idx(parts: &[(usize, usize)]) -> Option<usize> {
        let mut i = 0;
        for &(x, base) in parts {
            if x == 0 {
                return None;
            }
            i = i * base + (x - 1);
        }
        Some(i)
    }

    fn b_at(&self, q: usize, k: usize) -> Option<usize> {
        Self::idx(&[(q, self.a()), (k, self.b())])
    }

    fn omega_at(&self, q: usize, k1: usize, k2: usize) -> Option<usize> {
        Self::idx(&[(q, self.a()), (k1, self.b()), (k2, self.b())])
    }

    fn eta_at(&self, k: usize, q1: usize, q2: usize) -> Option<usize> {
        Self::idx(&[(k, self.b()), (q1, self.a()), (q2, self.a())]).map(|i| i + self.omega_len())
    }

    fn dim_of(&self, n: usize) -> usize {
        let (a, b) = (self.a(), self.b());
        match n {
            1 => a * b,
            2 => self.omega_len() + self.eta_len(),
            3 => a * b * b * b + a * a * b * b + b * a * a * a,
            _ => 0,
        }
    }

    fn unit(n: usize) -> impl Iterator<Item = usize> {
        1..n
    }
}

impl CochainComplex for MixedComplex {
    fn kinds(&self, n: usize) -> Vec<Coord> {
        vec![Coord::Divisible; self.dim_of(n)]
    }

    fn differential(&self, n: usize) -> SparseMat {
        let mut d = SparseMat::zeros(self.dim_of(n + 1), self.dim_of(n));
        let (q, k) = (&self.q, &self.k);
        let (nq, nk) = (q.order(), k.order());
        let mut put = |row: usize, col: Option<usize>, v: i64| {
            if let Some(c) = col {
                d.push(row, c, v);
            }
        };
        match n {
            1 => {
                let mut row = 0;
                for x in Self::unit(nq) {
                    for k1 in Self::unit(nk) {
                        for k2 in Self::unit(nk) {
                            put(row, self.b_at(x, k2), 1);
                            put(row, self.b_at(x, k.mul(k1, k2)), -1);
                            put(row, self.b_at(x, k1), 1);
                            row += 1;
                        }
                    }
                }
                for y in Self::unit(nk) {
                    for q1 in Self::unit(nq) {
                        for q2 in Self::unit(nq) {
                            put(row, self.b_at(q2, y), 1);
                            put(row, self.b_at(q.mul(q1, q2), y), -1);
                            put(row, self.b_at(q1, y), 1);
                            row += 1;
                        }
                    }
                }
            }
            2 => {
                let mut row = 0;
                for x in Self::unit(nq) {
                    for k1 in Self::unit(nk) {
                        for k2 in Self::unit(nk) {
                            for k3 in Self::unit(nk) {
                                put(row, self.omega_at(x, k2, k3), 1);
                                put(row, self.omega_at(x, k.mul(k1, k2), k3), -1);
                                put(row, self.omega_at(x, k1, k.mul(k2, k3)), 1);
                                put(row, self.omega_at(x, k1, k2), -1);
                                row += 1;
                            }
                        }
                    }
                }
                for q1 in Self::unit(nq) {
                    for q2 in Self::unit(nq) {
                        for k1 in Self::unit(nk) {
                            for k2 in Self::unit(nk) {
                                put(row, self.omega_at(q2, k1, k2), 1);
                                put(row, self.omega_at(q.mul(q1, q2), k1, k2), -1);
                                put(row, self.omega_at(q1, k1, k2), 1);
                                put(row, self.eta_at(k2, q1, q2), -1);
                                put(row, self.eta_at(k.mul(k1, k2), q1, q2), 1);
                                put(row, self.eta_at(k1, q1, q2), -1);
                                row += 1;
                            }
                        }
                    }
                }
                for y in Self::unit(nk) {
                    for q1 in Self::unit(nq) {
                        for q2 in Self::unit(nq) {
                            for q3 in Self::unit(nq) {
                                put(row, self.eta_at(y, q2, q3), 1);
                                put(row, self.eta_at(y, q.mul(q1, q2), q3), -1);
                                put(row, self.eta_at(y, q1, q.mul(q2, q3)), 1);
                                put(row, self.eta_at(y, q1, q2), -1);
                                row += 1;
                            }
                        }
                    }
                }
            }
            _ => {}
        }
        d
    }

    fn torsion_bound(&self) -> u64 {
        (self.q.order() * self.k.order()) as u64
    }
}

/// `(ω, η)` as exponents of `modulus`-th roots of unity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixedCocyclePair {
    pub q_order: usize,
    pub k_order: usize,
    pub modulus: u64,
    /// `ω(q; k1, k2)` on non-identity triples
    pub omega: Vec<u64>,
    /// `η(k; q1, q2)` on non-identity triples
    pub eta: Vec<u64>,
}

impl MixedCocyclePair {
    fn from_cochain(cx: &MixedComplex, c: &Cochain) -> Self {
        let (omega, eta) = c.values.split_at(cx.omega_len());
        MixedCocyclePair {
            q_order: cx.q.order(),
            k_order: cx.k.order(),
            modulus: c.modulus,
            omega: omega.to_vec(),
            eta: eta.to_vec(),
        }
    }

    pub fn to_cochain(&self) -> Cochain {
        Cochain { degree: 2, modulus: self.modulus, values: [self.omega.clone(), self.eta.clone()].concat() }
    }

    /// `η(k; ·, ·)` as a 2-cochain on `Q`.
    pub fn eta_slice(&self, q: &FiniteGroup, k: usize) -> Cochain {
        let a = self.q_order - 1;
        let vals = if k == 0 { vec![0; a * a] } else { self.eta[(k - 1) * a * a..k * a * a].to_vec() };
        debug_assert_eq!(BarComplex::cx(q).num_tuples(2), vals.len());
        Cochain { degree: 2, modulus: self.modulus, values: vals }
    }

    /// `ω(q; ·, ·)` as a 2-cochain on `K`.
    pub fn omega_slice(&self, q: usize) -> Cochain {
        let b = self.k_order - 1;
        let vals = if q == 0 { vec![0; b * b] } else { self.omega[(q - 1) * b * b..q * b * b].to_vec() };
        Cochain { degree: 2, modulus: self.modulus, values: vals }
    }

    pub fn to_json(&self) -> Value {
        json!({ "q_order": self.q_order, "k_order": self.k_order, "modulus": self.modulus, "omega": self.omega, "eta": self.eta })
    }
}

/// `(ω, η) ↦ (η, ω)`: a pair for `(Q, K)` read as a pair for `(K, Q)`.
pub fn transpose_pair(p: &MixedCocyclePair) -> MixedCocyclePair {
    MixedCocyclePair {
        q_order: p.k_order,
        k_order: p.q_order,
        modulus: p.modulus,
        omega: p.eta.clone(),
        eta: p.omega.clone(),
    }
}

/// Classes of mixed pairs for `(Q, K)` with canonical representatives.
#[derive(Clone, Debug, Serialize)]
pub struct MixedSolutions {
    pub q: String,
    pub k: String,
    pub structure: FinAbGroup,
    pub classes: Vec<Vec<u64>>,
    pub representatives: Vec<MixedCocyclePair>,
    #[serde(skip)]
    pub complex: MixedComplex,
    #[serde(skip)]
    cohomology: Cohomology,
}

impl MixedSolutions {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn satisfies(&self, p: &MixedCocyclePair) -> Result<bool> {
        satisfies(&self.complex, p)
    }

    pub fn classify(&self, p: &MixedCocyclePair) -> Result<Vec<u64>> {
        if (p.q_order, p.k_order) != (self.complex.q.order(), self.complex.k.order()) {
            return Err(Error::Mismatch("pair belongs to other groups".into()));
        }
        self.cohomology.classify(&p.to_cochain())
    }

    /// Shifts a pair by the gauge `b(q; k)` (values at `modulus`).
    pub fn gauge(&self, p: &MixedCocyclePair, b: &Cochain) -> Result<MixedCocyclePair> {
        let db = apply_differential(&self.complex, b)?;
        let level = lcm(db.modulus, p.modulus);
        let (fa, fb) = (level / p.modulus, level / db.modulus);
        let values: Vec<u64> = p.to_cochain().values.iter().zip(&db.values).map(|(x, y)| (x * fa + y * fb) % level).collect();
        Ok(MixedCocyclePair::from_cochain(&self.complex, &Cochain { degree: 2, modulus: level, values }))
    }
}

/// All three conditions, evaluated exactly.
pub fn satisfies(cx: &MixedComplex, p: &MixedCocyclePair) -> Result<bool> {
    Ok(apply_differential(cx, &p.to_cochain())?.is_zero())
}

/// Solves the mixed conditions over roots of unity and lists one canonical
/// pair per class.
pub fn solve_mixed_cocycles(q: &FiniteGroup, k: &FiniteGroup) -> Result<MixedSolutions> {
    let size = q.order() * k.order();
    let cap = 64.min(caps().max_order);
    if size > cap {
        return Err(Error::cap("|Q|·|K|", size, cap));
    }
    let cx = MixedComplex::new(q, k);
    let n = lcm(q.order() as u64, k.order() as u64);
    let h = Cohomology::compute(&cx, 2, n)?;
    let classes = h.classes();
    if classes.len() > caps().max_classes {
        return Err(Error::cap("mixed classes", classes.len(), caps().max_classes));
    }
    let representatives = classes.iter().map(|c| MixedCocyclePair::from_cochain(&cx, &h.representative(c))).collect();
    Ok(MixedSolutions {
        q: q.name().to_string(),
        k: k.name().to_string(),
        structure: h.structure().clone(),
        classes,
        representatives,
        complex: cx,
        cohomology: h,
    })
}

/// Transposes every representative for `(Q, K)` into `(K, Q)` and returns
/// the induced map on class indices, or an error if it is not a bijection.
pub fn transpose_classes(forward: &MixedSolutions, backward: &MixedSolutions) -> Result<Vec<usize>> {
    let mut map = Vec::with_capacity(forward.count());
    let mut hit = vec![false; backward.count()];
    for p in &forward.representatives {
        let t = transpose_pair(p);
        if !backward.satisfies(&t)? {
            return Err(Error::Other("transposed pair violates the conditions".into()));
        }
        let j = backward.structure.index(&backward.classify(&t)?);
        if std::mem::replace(&mut hit[j], true) {
            return Err(Error::Other("transposition is not injective on classes".into()));
        }
        map.push(j);
    }
    if hit.iter().any(|h| !h) {
        return Err(Error::Other("transposition misses a class".into()));
    }
    Ok(map)
}

/// Simples of `(Vec_K)^Q` for a pair, counted twice: per `k` as the number
/// of `η(k)`-regular classes of `Q`, and through the gerbe on `K//Q`
/// defined by `η`.
#[derive(Clone, Debug, Serialize)]
pub struct FixedPointCount {
    pub per_k: Vec<usize>,
    pub total: usize,
    pub groupoid_total: usize,
}

impl FixedPointCount {
    pub fn holds(&self) -> bool {
        self.total == self.groupoid_total
    }
}

pub fn fixed_point_count(q: &FiniteGroup, k: &FiniteGroup, p: &MixedCocyclePair) -> Result<FixedPointCount> {
    let per_k: Vec<usize> = k
        .elements()
        .map(|x| crate::groupoid::regular_classes(q, &p.eta_slice(q, x)).len())
        .collect();
    let gd = build_action_groupoid(&GroupAction::trivial(q.clone(), k.order()));
    let nerve = NerveComplex::new(gd.clone());
    let a = q.order() - 1;
    let c = nerve.cochain_from_fn(2, p.modulus, |x, l| {
        if x == 0 || l[0] == 0 || l[1] == 0 {
            0
        } else {
            p.eta[(x - 1) * a * a + (l[0] - 1) * a + (l[1] - 1)] as i64
        }
    });
    let h = Cohomology::compute(&nerve, 2, p.modulus)?;
    let gerbe = gerbe_decompose(&gd, &h, &c)?;
    let groupoid_total = twisted_rep_count(&gerbe).total;
    Ok(FixedPointCount { total: per_k.iter().sum(), per_k, groupoid_total })
}
