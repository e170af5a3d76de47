//! Submodules of `(Z/N)^m` in Howell form.
//!
//! Over `Z/N` an echelon form alone does not expose every element of a row
//! span with a leading zero block; the Howell form adds annihilator multiples
//! of each pivot row so that it does. Kernels and membership tests below rely
//! on that property.

/// Extended gcd on non-negative integers: `(g, s, t)` with `s·a + t·b = g`.
pub fn xgcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

#[inline]
pub fn reduce(x: i64, n: u64) -> u64 {
    x.rem_euclid(n as i64) as u64
}

/// A unit `u` with `u·a ≡ gcd(a, n) (mod n)`.
pub fn normalizing_unit(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let d = gcd(a, n);
    let (a1, n1) = (a / d, n / d);
    let base = if n1 == 1 {
        1
    } else {
        let (_, s, _) = xgcd(a1 as i64, n1 as i64);
        reduce(s, n1)
    };
    let mut u = base;
    while gcd(u, n) != 1 {
        u += n1;
    }
    u % n
}

/// Row span of a matrix over `Z/N`, kept in Howell form.
#[derive(Clone, Debug)]
pub struct Howell {
    modulus: u64,
    ncols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Howell {
    /// Howell form of the span of `gens` (each of length `ncols`, any residues).
    pub fn new(modulus: u64, ncols: usize, gens: Vec<Vec<u64>>) -> Self {
        assert!(modulus >= 1);
        let n = modulus;
        let mut work: Vec<Vec<u64>> = gens
            .into_iter()
            .map(|mut r| {
                debug_assert_eq!(r.len(), ncols);
                r.iter_mut().for_each(|x| *x %= n);
                r
            })
            .filter(|r| r.iter().any(|&x| x != 0))
            .collect();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let mut pivots = Vec::new();
        if n == 1 {
            return Howell { modulus, ncols, rows, pivots };
        }
        for col in 0..ncols {
            let mut idx: Vec<usize> = (0..work.len()).filter(|&i| work[i][col] != 0).collect();
            if idx.is_empty() {
                continue;
            }
            // pivot on the entry with the smallest gcd against N first; fewer combinations
            idx.sort_by_key(|&i| gcd(work[i][col], n));
            let p = idx[0];
            for &i in &idx[1..] {
                let a = work[p][col] as i64;
                let b = work[i][col] as i64;
                let (g, s, t) = xgcd(a, b);
                let (u, v) = (a / g, b / g);
                let (s, t) = (reduce(s, n), reduce(t, n));
                let (u, v) = (reduce(u, n), reduce(v, n));
                let nv = (n - v) % n;
                for c in col..ncols {
                    let x = work[p][c];
                    let y = work[i][c];
                    work[p][c] = (s * x + t * y) % n;
                    work[i][c] = (nv * x + u * y) % n;
                }
                debug_assert_eq!(work[i][col], 0);
            }
            let mut prow = work.swap_remove(p);
            let unit = normalizing_unit(prow[col], n);
            for c in col..ncols {
                prow[c] = prow[c] * unit % n;
            }
            let pv = prow[col];
            debug_assert_eq!(n % pv, 0);
            for r in rows.iter_mut() {
                let q = r[col] / pv;
                if q != 0 {
                    for c in col..ncols {
                        r[c] = (r[c] + (n - q) * prow[c] % n) % n;
                    }
                }
            }
            let ann = n / pv;
            if ann != n {
                let arow: Vec<u64> = prow.iter().map(|&x| x * ann % n).collect();
                if arow.iter().any(|&x| x != 0) {
                    work.push(arow);
                }
            }
            work.retain(|r| r.iter().any(|&x| x != 0));
            rows.push(prow);
            pivots.push(col);
        }
        Howell { modulus, ncols, rows, pivots }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `|span| = ∏ N / pivot`.
    pub fn order_log(&self) -> Vec<u64> {
        self.rows
            .iter()
            .zip(&self.pivots)
            .map(|(r, &c)| self.modulus / r[c])
            .collect()
    }

    /// Number of elements in the span, if it fits in `u128`.
    pub fn size(&self) -> Option<u128> {
        self.order_log()
            .iter()
            .try_fold(1u128, |acc, &x| acc.checked_mul(x as u128))
    }

    /// Reduces `v` in place to its canonical representative modulo the span;
    /// returns the multipliers used per row (`v_in = v_out + Σ k_i row_i`).
    pub fn reduce_vec(&self, v: &mut [u64]) -> Vec<u64> {
        let n = self.modulus;
        let mut ks = Vec::with_capacity(self.rows.len());
        for (r, &c) in self.rows.iter().zip(&self.pivots) {
            let q = (v[c] % n) / r[c];
            ks.push(q);
            if q != 0 {
                for j in c..self.ncols {
                    v[j] = (v[j] + (n - q) * r[j] % n) % n;
                }
            }
        }
        ks
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w: Vec<u64> = v.iter().map(|x| x % self.modulus).collect();
        self.reduce_vec(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Rows whose first `split` entries vanish, truncated to the tail.
    /// With Howell form these span `{tail : (0, tail) ∈ span}`.
    pub fn tail_span(&self, split: usize) -> Vec<Vec<u64>> {
        self.rows
            .iter()
            .zip(&self.pivots)
            .filter(|(_, &c)| c >= split)
            .map(|(r, _)| r[split..].to_vec())
            .collect()
    }
}

/// A sparse integer matrix stored by columns.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMat {
    pub nrows: usize,
    pub ncols: usize,
    /// `cols[j]` lists `(row, value)` pairs; duplicates are summed.
    pub cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMat { nrows, ncols, cols: vec![Vec::new(); ncols] }
    }

    pub fn push(&mut self, row: usize, col: usize, v: i64) {
        if v != 0 {
            self.cols[col].push((row, v));
        }
    }

    pub fn column_mod(&self, j: usize, n: u64) -> Vec<u64> {
        let mut out = vec![0u64; self.nrows];
        for &(r, v) in &self.cols[j] {
            out[r] = (out[r] + reduce(v, n)) % n;
        }
        out
    }

    /// `self · x` over `Z/N`.
    pub fn apply_mod(&self, x: &[u64], n: u64) -> Vec<u64> {
        let mut out = vec![0u64; self.nrows];
        for (j, &xj) in x.iter().enumerate() {
            if xj % n == 0 {
                continue;
            }
            for &(r, v) in &self.cols[j] {
                out[r] = (out[r] + reduce(v, n) * (xj % n)) % n;
            }
        }
        out
    }

    pub fn apply_int(&self, x: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.nrows];
        for (j, &xj) in x.iter().enumerate() {
            if xj == 0 {
                continue;
            }
            for &(r, v) in &self.cols[j] {
                out[r] += v * xj;
            }
        }
        out
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.ncols, other.nrows);
        let mut out = SparseMat::zeros(self.nrows, other.ncols);
        for j in 0..other.ncols {
            let mut acc: std::collections::BTreeMap<usize, i64> = Default::default();
            for &(k, v) in &other.cols[j] {
                for &(r, w) in &self.cols[k] {
                    *acc.entry(r).or_default() += v * w;
                }
            }
            for (r, v) in acc {
                out.push(r, j, v);
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0i64; self.ncols]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                d[r][j] += v;
            }
        }
        d
    }
}

/// `{x ∈ (Z/N)^m : A x ∈ S}` where `A` has `k` rows and `S` is spanned by
/// `target_rels`. Returns a Howell basis of the solution module.
pub fn preimage(a: &SparseMat, target_rels: &[Vec<u64>], n: u64) -> Howell {
    let (k, m) = (a.nrows, a.ncols);
    let mut gens = Vec::with_capacity(m + target_rels.len());
    for j in 0..m {
        let mut row = a.column_mod(j, n);
        row.resize(k + m, 0);
        row[k + j] = 1 % n;
        gens.push(row);
    }
    for r in target_rels {
        let mut row = r.clone();
        row.resize(k + m, 0);
        gens.push(row);
    }
    let h = Howell::new(n, k + m, gens);
    Howell::new(n, m, h.tail_span(k))
}

/// Image `A·(Z/N)^m + S` as a Howell form.
pub fn image_plus(a: &SparseMat, extra: &[Vec<u64>], n: u64) -> Howell {
    let mut gens: Vec<Vec<u64>> = (0..a.ncols).map(|j| a.column_mod(j, n)).collect();
    gens.extend(extra.iter().cloned());
    Howell::new(n, a.nrows, gens)
}

/// Solves `A x ≡ b (mod S)`; returns some `x` if one exists.
pub fn solve(a: &SparseMat, target_rels: &[Vec<u64>], b: &[u64], n: u64) -> Option<Vec<u64>> {
    let (k, m) = (a.nrows, a.ncols);
    let mut gens = Vec::with_capacity(m + target_rels.len());
    for j in 0..m {
        let mut row = a.column_mod(j, n);
        row.resize(k + m, 0);
        row[k + j] = 1 % n;
        gens.push(row);
    }
    for r in target_rels {
        let mut row = r.clone();
        row.resize(k + m, 0);
        gens.push(row);
    }
    let h = Howell::new(n, k + m, gens);
    let mut v: Vec<u64> = b.iter().map(|x| x % n).collect();
    v.resize(k + m, 0);
    h.reduce_vec(&mut v);
    if v[..k].iter().any(|&x| x != 0) {
        return None;
    }
    // b = Σ k_i head_i and x = Σ k_i tail_i = -(remaining tail)
    Some(v[k..].iter().map(|&x| (n - x) % n).collect())
}
