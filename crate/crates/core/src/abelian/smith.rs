//! Smith normal form over the integers.
//!
//! The same elimination runs over checked `i64` (fast path, bails out on
//! overflow) and over `BigInt`. Pivots are chosen by smallest absolute value,
//! ties broken by the fewest nonzeros in the pivot's row and column.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::config::caps;
use crate::{Error, Result};

pub(crate) trait SnfScalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    /// Nearest-integer quotient `round(self / b)`.
    fn round_div(&self, b: &Self) -> Self;
    /// `self - q * b`, `None` on overflow.
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn neg(&self) -> Self;
    fn is_negative(&self) -> bool;
    fn divides(&self, b: &Self) -> bool;
}

impl SnfScalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn round_div(&self, b: &Self) -> Self {
        let (q, r) = (self.div_euclid(*b), self.rem_euclid(*b));
        if 2 * (r as i128) > (b.unsigned_abs() as i128) {
            if *b > 0 {
                q + 1
            } else {
                q - 1
            }
        } else {
            q
        }
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        q.checked_mul(*b).and_then(|p| self.checked_sub(p))
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn divides(&self, b: &Self) -> bool {
        if *self == 0 {
            *b == 0
        } else {
            b % self == 0
        }
    }
}

impl SnfScalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn round_div(&self, b: &Self) -> Self {
        let (q, r) = self.div_mod_floor(b);
        // the floor remainder shares the sign of b, so stepping up shrinks it
        let twice: BigInt = &r * 2;
        if twice.magnitude() > b.magnitude() {
            q + 1
        } else {
            q
        }
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn divides(&self, b: &Self) -> bool {
        if Zero::is_zero(self) {
            Zero::is_zero(b)
        } else {
            Zero::is_zero(&(b % self))
        }
    }
}

/// Optional transforms tracked during elimination: `U·M·V = D` and inverses.
struct Track<T> {
    u: Vec<Vec<T>>,
    u_inv: Vec<Vec<T>>,
    v: Vec<Vec<T>>,
    v_inv: Vec<Vec<T>>,
}

fn identity<T: SnfScalar>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

struct Elim<'a, T: SnfScalar> {
    a: &'a mut Vec<Vec<T>>,
    track: Option<Track<T>>,
    m: usize,
    n: usize,
}

impl<T: SnfScalar> Elim<'_, T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(t) = &mut self.track {
            t.u.swap(i, j);
            for row in t.u_inv.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(t) = &mut self.track {
            for row in t.v.iter_mut() {
                row.swap(i, j);
            }
            t.v_inv.swap(i, j);
        }
    }

    /// row_i -= q · row_t
    fn row_op(&mut self, i: usize, t: usize, q: &T, from: usize) -> Option<()> {
        for c in from..self.n {
            if !self.a[t][c].is_zero() {
                self.a[i][c] = self.a[i][c].sub_mul(q, &self.a[t][c])?;
            }
        }
        if let Some(tr) = &mut self.track {
            for c in 0..self.m {
                if !tr.u[t][c].is_zero() {
                    tr.u[i][c] = tr.u[i][c].sub_mul(q, &tr.u[t][c])?;
                }
            }
            // inverse: col_t += q · col_i
            let nq = q.neg();
            for r in 0..self.m {
                if !tr.u_inv[r][i].is_zero() {
                    tr.u_inv[r][t] = tr.u_inv[r][t].sub_mul(&nq, &tr.u_inv[r][i])?;
                }
            }
        }
        Some(())
    }

    /// col_j -= q · col_t
    fn col_op(&mut self, j: usize, t: usize, q: &T, from: usize) -> Option<()> {
        for r in from..self.m {
            if !self.a[r][t].is_zero() {
                self.a[r][j] = self.a[r][j].sub_mul(q, &self.a[r][t])?;
            }
        }
        if let Some(tr) = &mut self.track {
            for r in 0..self.n {
                if !tr.v[r][t].is_zero() {
                    tr.v[r][j] = tr.v[r][j].sub_mul(q, &tr.v[r][t])?;
                }
            }
            // inverse: row_t += q · row_j
            let nq = q.neg();
            for c in 0..self.n {
                if !tr.v_inv[j][c].is_zero() {
                    tr.v_inv[t][c] = tr.v_inv[t][c].sub_mul(&nq, &tr.v_inv[j][c])?;
                }
            }
        }
        Some(())
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = x.neg();
        }
        if let Some(t) = &mut self.track {
            for x in t.u[i].iter_mut() {
                *x = x.neg();
            }
            for row in t.u_inv.iter_mut() {
                row[i] = row[i].neg();
            }
        }
    }

    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut cands: Vec<(usize, usize)> = Vec::new();
        for i in t..self.m {
            for j in t..self.n {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                match best {
                    None => {
                        best = Some((i, j));
                        cands.clear();
                        cands.push((i, j));
                    }
                    Some((bi, bj)) => {
                        let b = &self.a[bi][bj];
                        if x.abs_lt(b) {
                            best = Some((i, j));
                            cands.clear();
                            cands.push((i, j));
                        } else if !b.abs_lt(x) {
                            cands.push((i, j));
                        }
                    }
                }
            }
        }
        best?;
        if cands.len() == 1 {
            return Some(cands[0]);
        }
        let rows: std::collections::BTreeSet<usize> = cands.iter().map(|c| c.0).collect();
        let cols: std::collections::BTreeSet<usize> = cands.iter().map(|c| c.1).collect();
        let row_nnz: std::collections::HashMap<usize, usize> = rows
            .iter()
            .map(|&i| (i, (t..self.n).filter(|&j| !self.a[i][j].is_zero()).count()))
            .collect();
        let col_nnz: std::collections::HashMap<usize, usize> = cols
            .iter()
            .map(|&j| (j, (t..self.m).filter(|&i| !self.a[i][j].is_zero()).count()))
            .collect();
        cands
            .into_iter()
            .min_by_key(|&(i, j)| ((row_nnz[&i] - 1) * (col_nnz[&j] - 1), i, j))
    }

    fn run(&mut self) -> Option<()> {
        let k = self.m.min(self.n);
        for t in 0..k {
            let Some((pi, pj)) = self.find_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                let p = self.a[t][t].clone();
                for i in t + 1..self.m {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].round_div(&p);
                        self.row_op(i, t, &q, t)?;
                        if !self.a[i][t].is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..self.n {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].round_div(&p);
                        self.col_op(j, t, &q, t)?;
                        if !self.a[t][j].is_zero() {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    // move the smallest entry of row/column t onto the diagonal
                    let mut bi = t;
                    let mut bj = t;
                    for i in t + 1..self.m {
                        let x = &self.a[i][t];
                        if !x.is_zero() && x.abs_lt(&self.a[bi][bj]) {
                            (bi, bj) = (i, t);
                        }
                    }
                    for j in t + 1..self.n {
                        let x = &self.a[t][j];
                        if !x.is_zero() && x.abs_lt(&self.a[bi][bj]) {
                            (bi, bj) = (t, j);
                        }
                    }
                    self.swap_rows(t, bi);
                    self.swap_cols(t, bj);
                    continue;
                }
                // divisibility of the remaining block
                let mut bad = None;
                'scan: for i in t + 1..self.m {
                    for j in t + 1..self.n {
                        if !p.divides(&self.a[i][j]) {
                            bad = Some(i);
                            break 'scan;
                        }
                    }
                }
                match bad {
                    None => break,
                    Some(i) => {
                        // row_t += row_i
                        let mone = T::one().neg();
                        self.row_op(t, i, &mone, t)?;
                    }
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
        Some(())
    }
}

/// Diagonal of the Smith form (length `min(rows, cols)`), over checked `i64`.
fn diagonal_i64(m: &[Vec<i64>], ncols: usize) -> Option<Vec<i64>> {
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let rows = a.len();
    let mut e = Elim { a: &mut a, track: None, m: rows, n: ncols };
    e.run()?;
    Some((0..rows.min(ncols)).map(|i| a[i][i]).collect())
}

fn diagonal_big(m: &[Vec<i64>], ncols: usize) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> =
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = a.len();
    let mut e = Elim { a: &mut a, track: None, m: rows, n: ncols };
    e.run().expect("bigint arithmetic cannot overflow");
    (0..rows.min(ncols)).map(|i| a[i][i].clone()).collect()
}

/// Nonzero diagonal entries of the Smith form of an integer matrix given
/// row-wise with `ncols` columns. Runs in `i64` and falls back to bigints.
pub fn smith_diagonal(m: &[Vec<i64>], ncols: usize) -> Result<Vec<BigInt>> {
    let side = m.len().max(ncols);
    if side > caps().max_matrix_side {
        return Err(Error::cap("matrix side", side, caps().max_matrix_side));
    }
    let diag = match diagonal_i64(m, ncols) {
        Some(d) => d.into_iter().map(BigInt::from).collect(),
        None => diagonal_big(m, ncols),
    };
    Ok(diag.into_iter().filter(|d| !Zero::is_zero(d)).collect())
}

/// `U · original · V = D` with unimodular `U`, `V`.
#[derive(Clone, Debug, Serialize)]
pub struct SmithDecomposition {
    #[serde(serialize_with = "ser_mat")]
    pub original: Vec<Vec<BigInt>>,
    #[serde(serialize_with = "ser_mat")]
    pub u: Vec<Vec<BigInt>>,
    #[serde(serialize_with = "ser_mat")]
    pub v: Vec<Vec<BigInt>>,
    #[serde(serialize_with = "ser_mat")]
    pub d: Vec<Vec<BigInt>>,
    #[serde(skip)]
    pub u_inv: Vec<Vec<BigInt>>,
    #[serde(skip)]
    pub v_inv: Vec<Vec<BigInt>>,
}

fn ser_mat<S: serde::Serializer>(m: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for row in m {
        let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        seq.serialize_element(&r)?;
    }
    seq.end()
}

impl SmithDecomposition {
    pub fn rows(&self) -> usize {
        self.original.len()
    }

    pub fn cols(&self) -> usize {
        self.v.len()
    }

    /// Diagonal entries `d_1 | d_2 | …`, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows().min(self.cols())).map(|i| self.d[i][i].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !Zero::is_zero(*d)).count()
    }

    /// Checks `U·M·V = D`, the divisibility chain and unimodularity (`U·U⁻¹ = I`).
    pub fn verify(&self) -> bool {
        let umv = mat_mul(&mat_mul(&self.u, &self.original), &self.v);
        if umv != self.d {
            return false;
        }
        let diag = self.diagonal();
        for w in diag.windows(2) {
            if !SnfScalar::divides(&w[0], &w[1]) || Signed::is_negative(&w[0]) {
                return false;
            }
        }
        for (i, row) in self.d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j && !Zero::is_zero(x) {
                    return false;
                }
            }
        }
        let (m, n) = (self.rows(), self.cols());
        mat_mul(&self.u, &self.u_inv) == identity::<BigInt>(m)
            && mat_mul(&self.v, &self.v_inv) == identity::<BigInt>(n)
    }
}

pub(crate) fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s: BigInt = Zero::zero();
                    for k in 0..inner {
                        if !Zero::is_zero(&row[k]) && !Zero::is_zero(&b[k][j]) {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Full Smith decomposition with transforms, in arbitrary precision.
pub fn smith_normal_form(m: &[Vec<BigInt>], ncols: usize) -> Result<SmithDecomposition> {
    let rows = m.len();
    let side = rows.max(ncols);
    if side > caps().max_matrix_side {
        return Err(Error::cap("matrix side", side, caps().max_matrix_side));
    }
    if m.iter().any(|r| r.len() != ncols) {
        return Err(Error::Mismatch("ragged matrix".into()));
    }
    let mut a = m.to_vec();
    let track = Track { u: identity(rows), u_inv: identity(rows), v: identity(ncols), v_inv: identity(ncols) };
    let mut e = Elim { a: &mut a, track: Some(track), m: rows, n: ncols };
    e.run().expect("bigint arithmetic cannot overflow");
    let t = e.track.take().unwrap();
    Ok(SmithDecomposition { original: m.to_vec(), u: t.u, v: t.v, d: a, u_inv: t.u_inv, v_inv: t.v_inv })
}

/// Convenience wrapper for small integer matrices.
pub fn smith_normal_form_i64(m: &[Vec<i64>], ncols: usize) -> Result<SmithDecomposition> {
    let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    smith_normal_form(&big, ncols)
}
