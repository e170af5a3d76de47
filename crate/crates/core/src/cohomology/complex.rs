//! Cohomology of finite cochain complexes whose coordinates are either
//! finite cyclic (`Z/d`) or divisible (`C^×`, modeled by roots of unity).
//!
//! Finite coordinates are handled in the quotient model `Z/d = (Z/N)/(d)`.
//! Divisible coordinates are exponents of `N`-th roots of unity. When a
//! complex has torsion bound `T` (every relevant cohomology group of the
//! divisible complex is killed by `T`), classes are computed at the
//! representative level `N` (a multiple of `T`) and compared after pushing
//! forward along `μ_N → μ_{NT}`; the image of that map is the `C^×`
//! cohomology.

use serde::Serialize;

use crate::abelian::zmod::{image_plus, lcm, preimage, solve, Howell, SparseMat};
use crate::abelian::{FinAbGroup, Subquotient};
use crate::config::caps;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Coord {
    Finite(u64),
    Divisible,
}

/// A cochain complex `C^0 → C^1 → …` with typed coordinates.
///
/// In `differential(n)`, an entry `k` from a `Finite(d)` coordinate into a
/// `Divisible` one stands for `a ↦ a·k/d`; all other entries are plain integers.
pub trait CochainComplex: Sync {
    fn kinds(&self, n: usize) -> Vec<Coord>;
    fn dim(&self, n: usize) -> usize {
        self.kinds(n).len()
    }
    fn differential(&self, n: usize) -> SparseMat;
    /// Multiple of the exponent of every cohomology group of the divisible part.
    fn torsion_bound(&self) -> u64;
}

/// Values of an `n`-cochain: finite coordinates reduced mod their order,
/// divisible coordinates as exponents of `modulus`-th roots of unity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cochain {
    pub degree: usize,
    pub modulus: u64,
    pub values: Vec<u64>,
}

impl Cochain {
    pub fn zero(degree: usize, dim: usize, modulus: u64) -> Self {
        Cochain { degree, modulus, values: vec![0; dim] }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

pub(crate) fn finite_lcm(kinds: &[Coord]) -> u64 {
    kinds.iter().fold(1, |acc, k| match k {
        Coord::Finite(d) => lcm(acc, *d),
        Coord::Divisible => acc,
    })
}

fn has_divisible(kinds: &[Coord]) -> bool {
    kinds.iter().any(|k| matches!(k, Coord::Divisible))
}

/// Differential entries reduced at level `level`.
pub(crate) fn materialize(d: &SparseMat, src: &[Coord], tgt: &[Coord], level: u64) -> SparseMat {
    let mut out = SparseMat::zeros(d.nrows, d.ncols);
    for (j, col) in d.cols.iter().enumerate() {
        for &(r, v) in col {
            let x = match (src[j], tgt[r]) {
                (Coord::Finite(dj), Coord::Divisible) => {
                    debug_assert_eq!(level % dj, 0);
                    (v as i128 * (level / dj) as i128).rem_euclid(level as i128) as i64
                }
                _ => v.rem_euclid(level as i64),
            };
            out.push(r, j, x);
        }
    }
    out
}

pub(crate) fn relations(kinds: &[Coord], level: u64) -> Vec<Vec<u64>> {
    let m = kinds.len();
    kinds
        .iter()
        .enumerate()
        .filter_map(|(i, k)| match k {
            Coord::Finite(d) if *d % level != 0 => {
                let mut r = vec![0u64; m];
                r[i] = *d % level;
                Some(r)
            }
            _ => None,
        })
        .collect()
}

/// Values of `c` at level `level` (finite coordinates kept, divisible scaled).
pub(crate) fn lift(kinds: &[Coord], c: &Cochain, level: u64) -> Result<Vec<u64>> {
    if c.values.len() != kinds.len() {
        return Err(Error::Mismatch(format!("cochain has {} values, complex expects {}", c.values.len(), kinds.len())));
    }
    let mut out = Vec::with_capacity(kinds.len());
    for (k, &v) in kinds.iter().zip(&c.values) {
        out.push(match k {
            Coord::Finite(d) => v % d,
            Coord::Divisible => {
                if !level.is_multiple_of(c.modulus) {
                    return Err(Error::Mismatch(format!(
                        "cochain modulus {} does not divide working level {level}",
                        c.modulus
                    )));
                }
                (v % c.modulus) * (level / c.modulus) % level
            }
        });
    }
    Ok(out)
}

fn canonical(kinds: &[Coord], values: Vec<u64>, level: u64, degree: usize) -> Cochain {
    let values = kinds
        .iter()
        .zip(values)
        .map(|(k, v)| match k {
            Coord::Finite(d) => v % d,
            Coord::Divisible => v % level,
        })
        .collect();
    Cochain { degree, modulus: level, values }
}

/// `dc`, computed at the level of `c`.
pub fn apply_differential(cx: &dyn CochainComplex, c: &Cochain) -> Result<Cochain> {
    let n = c.degree;
    let (src, tgt) = (cx.kinds(n), cx.kinds(n + 1));
    let level = lcm(c.modulus, finite_lcm(&src)).max(1);
    let level = lcm(level, finite_lcm(&tgt));
    let x = lift(&src, c, level)?;
    let d = materialize(&cx.differential(n), &src, &tgt, level);
    let y = d.apply_mod(&x, level);
    let out = canonical(&tgt, y, level, n + 1);
    Ok(rescale_down(&tgt, out, c.modulus))
}

/// Expresses a cochain at a smaller level when its divisible values allow it.
fn rescale_down(kinds: &[Coord], c: Cochain, want: u64) -> Cochain {
    if c.modulus == want || want == 0 || !c.modulus.is_multiple_of(want) {
        return c;
    }
    let f = c.modulus / want;
    let ok = kinds.iter().zip(&c.values).all(|(k, v)| matches!(k, Coord::Finite(_)) || v % f == 0);
    if !ok {
        return c;
    }
    let values = kinds
        .iter()
        .zip(&c.values)
        .map(|(k, &v)| match k {
            Coord::Finite(_) => v,
            Coord::Divisible => v / f,
        })
        .collect();
    Cochain { degree: c.degree, modulus: want, values }
}

pub fn is_cocycle(cx: &dyn CochainComplex, c: &Cochain) -> Result<bool> {
    Ok(apply_differential(cx, c)?.is_zero())
}

/// Working levels for degree `n`: `(rep, scale)`; classes are compared at `rep·scale`.
fn levels(cx: &dyn CochainComplex, n: usize, hint: u64) -> (u64, u64) {
    let mut kinds = cx.kinds(n);
    kinds.extend(cx.kinds(n + 1));
    if n > 0 {
        kinds.extend(cx.kinds(n - 1));
    }
    let fin = finite_lcm(&kinds);
    if has_divisible(&kinds) {
        let t = cx.torsion_bound().max(1);
        (lcm(fin * t, hint.max(1)), t)
    } else {
        (lcm(fin, hint.max(1)), 1)
    }
}

/// `ι`: level `rep` → level `rep·scale` (divisible coordinates times `scale`).
fn push(kinds: &[Coord], v: &[u64], scale: u64, target: u64) -> Vec<u64> {
    kinds
        .iter()
        .zip(v)
        .map(|(k, &x)| match k {
            Coord::Finite(_) => x % target,
            Coord::Divisible => x * scale % target,
        })
        .collect()
}

fn check_size(cx: &dyn CochainComplex, n: usize) -> Result<()> {
    let (a, b) = (cx.dim(n), cx.dim(n + 1));
    let cap = caps().max_matrix_side;
    if b > cap {
        return Err(Error::cap(format!("cochain dimension in degree {}", n + 1), b, cap));
    }
    let work = a.saturating_mul(a + b);
    let limit = 40_000_000;
    if work > limit {
        return Err(Error::cap(format!("elimination size in degree {n}"), work, limit));
    }
    Ok(())
}

/// `H^n` of a complex with explicit generators and canonical class coordinates.
#[derive(Clone, Debug)]
pub struct Cohomology {
    degree: usize,
    kinds: Vec<Coord>,
    next_kinds: Vec<Coord>,
    rep: u64,
    scale: u64,
    next_d: SparseMat,
    prev_d: SparseMat,
    sq: Subquotient,
    generators: Vec<Cochain>,
}

impl Cohomology {
    /// Computes `H^n`; `hint` forces the representative level to be a
    /// multiple of it (use it to classify cochains given at other levels).
    pub fn compute(cx: &dyn CochainComplex, n: usize, hint: u64) -> Result<Self> {
        check_size(cx, n)?;
        let (rep, scale) = levels(cx, n, hint);
        let work = rep.checked_mul(scale).filter(|w| *w < (1u64 << 31)).ok_or_else(|| {
            Error::cap("coefficient level", (rep as usize).saturating_mul(scale as usize), 1 << 31)
        })?;
        let kinds = cx.kinds(n);
        let next_kinds = cx.kinds(n + 1);
        let prev_kinds = if n > 0 { cx.kinds(n - 1) } else { Vec::new() };
        let dn = cx.differential(n);
        let next_d = materialize(&dn, &kinds, &next_kinds, rep);
        let z = preimage(&next_d, &relations(&next_kinds, rep), rep);
        let prev_raw = if n > 0 { cx.differential(n - 1) } else { SparseMat::zeros(kinds.len(), 0) };
        let prev_d = materialize(&prev_raw, &prev_kinds, &kinds, work);
        let b = image_plus(&prev_d, &relations(&kinds, work), work);
        let candidates: Vec<Vec<u64>> = z.rows().iter().map(|r| push(&kinds, r, scale, work)).collect();
        let sq = Subquotient::new(&candidates, b)?;
        let generators = sq
            .generator_words()
            .iter()
            .map(|word| {
                let mut acc = vec![0u64; kinds.len()];
                for &(ci, c) in word {
                    let c = c.rem_euclid(rep as i64) as u64;
                    for (a, x) in acc.iter_mut().zip(&z.rows()[ci]) {
                        *a = (*a + c * x) % rep;
                    }
                }
                canonical(&kinds, acc, rep, n)
            })
            .collect();
        Ok(Cohomology { degree: n, kinds, next_kinds, rep, scale, next_d, prev_d, sq, generators })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn structure(&self) -> &FinAbGroup {
        self.sq.structure()
    }

    pub fn order(&self) -> u128 {
        self.structure().order()
    }

    /// Level of the representative cocycles' divisible values.
    pub fn modulus(&self) -> u64 {
        self.rep
    }

    pub fn generators(&self) -> &[Cochain] {
        &self.generators
    }

    pub fn kinds(&self) -> &[Coord] {
        &self.kinds
    }

    fn check_cocycle(&self, c: &Cochain) -> Result<Vec<u64>> {
        if c.degree != self.degree {
            return Err(Error::Mismatch(format!("degree {} cochain, expected {}", c.degree, self.degree)));
        }
        let x = lift(&self.kinds, c, self.rep)?;
        let y = self.next_d.apply_mod(&x, self.rep);
        let bad = y.iter().zip(&self.next_kinds).position(|(v, k)| match k {
            Coord::Finite(d) => v % d != 0,
            Coord::Divisible => *v != 0,
        });
        if let Some(p) = bad {
            return Err(Error::NotCocycle { witness: Some(vec![p]) });
        }
        Ok(x)
    }

    /// Canonical coordinates of the class of a cocycle.
    pub fn classify(&self, c: &Cochain) -> Result<Vec<u64>> {
        let x = self.check_cocycle(c)?;
        let w = push(&self.kinds, &x, self.scale, self.rep * self.scale);
        self.sq
            .coordinates(&w)
            .ok_or_else(|| Error::Other("cocycle outside the computed cocycle module".into()))
    }

    /// A cochain `b` of degree `n-1` with `db = c` (at level `modulus·scale`), if any.
    pub fn coboundary_witness(&self, c: &Cochain) -> Result<Option<Cochain>> {
        let x = self.check_cocycle(c)?;
        let work = self.rep * self.scale;
        let w = push(&self.kinds, &x, self.scale, work);
        let rel = relations(&self.kinds, work);
        Ok(solve(&self.prev_d, &rel, &w, work).map(|b| Cochain {
            degree: self.degree.saturating_sub(1),
            modulus: work,
            values: b,
        }))
    }

    /// Representative cocycle of the class with the given coordinates.
    pub fn representative(&self, coords: &[u64]) -> Cochain {
        let mut acc = vec![0u64; self.kinds.len()];
        for (g, &c) in self.generators.iter().zip(coords) {
            for (a, x) in acc.iter_mut().zip(&g.values) {
                *a = (*a + c * x) % self.rep;
            }
        }
        canonical(&self.kinds, acc, self.rep, self.degree)
    }

    /// All class coordinate vectors, in mixed radix order.
    pub fn classes(&self) -> Vec<Vec<u64>> {
        self.structure().elements()
    }

    pub fn is_trivial_class(&self, c: &Cochain) -> Result<bool> {
        Ok(self.classify(c)?.iter().all(|&x| x == 0))
    }

    pub fn cohomologous(&self, a: &Cochain, b: &Cochain) -> Result<bool> {
        Ok(self.classify(a)? == self.classify(b)?)
    }
}

/// `c1 - c2` at a common level.
pub fn difference(kinds: &[Coord], a: &Cochain, b: &Cochain) -> Result<Cochain> {
    let level = lcm(a.modulus, b.modulus);
    let x = lift(kinds, a, level)?;
    let y = lift(kinds, b, level)?;
    let v = kinds
        .iter()
        .zip(x.iter().zip(&y))
        .map(|(k, (&p, &q))| {
            let m = match k {
                Coord::Finite(d) => *d,
                Coord::Divisible => level,
            };
            (p + m - q % m) % m
        })
        .collect();
    Ok(Cochain { degree: a.degree, modulus: level, values: v })
}

/// Decides whether `c1 - c2` is a coboundary; on success returns a witness
/// `b` with `db = c1 - c2` (for divisible coordinates, at a finer level).
pub fn is_cohomologous(cx: &dyn CochainComplex, c1: &Cochain, c2: &Cochain) -> Result<Option<Cochain>> {
    if c1.degree != c2.degree {
        return Err(Error::Mismatch("cochains of different degree".into()));
    }
    let n = c1.degree;
    let kinds = cx.kinds(n);
    for c in [c1, c2] {
        if !is_cocycle(cx, c)? {
            return Err(Error::NotCocycle { witness: None });
        }
    }
    let diff = difference(&kinds, c1, c2)?;
    let (rep, scale) = levels(cx, n, diff.modulus);
    let work = rep * scale;
    let x = lift(&kinds, &diff, rep)?;
    let w = push(&kinds, &x, scale, work);
    let prev_kinds = if n > 0 { cx.kinds(n - 1) } else { Vec::new() };
    let prev_raw = if n > 0 { cx.differential(n - 1) } else { SparseMat::zeros(kinds.len(), 0) };
    let prev_d = materialize(&prev_raw, &prev_kinds, &kinds, work);
    Ok(solve(&prev_d, &relations(&kinds, work), &w, work).map(|b| {
        let b = canonical(&prev_kinds, b, work, n.saturating_sub(1));
        rescale_down(&prev_kinds, b, diff.modulus)
    }))
}

/// Whether `d` applied to `witness` reproduces `c1 - c2`.
pub fn check_witness(cx: &dyn CochainComplex, c1: &Cochain, c2: &Cochain, witness: &Cochain) -> Result<bool> {
    let kinds = cx.kinds(c1.degree);
    let diff = difference(&kinds, c1, c2)?;
    let db = apply_differential(cx, witness)?;
    let z = difference(&kinds, &db, &diff)?;
    Ok(z.is_zero())
}

/// The Howell module of cocycles at level `rep` (used by enumeration oracles).
pub fn cocycle_module(cx: &dyn CochainComplex, n: usize, rep: u64) -> Howell {
    let kinds = cx.kinds(n);
    let next_kinds = cx.kinds(n + 1);
    let d = materialize(&cx.differential(n), &kinds, &next_kinds, rep);
    preimage(&d, &relations(&next_kinds, rep), rep)
}
