//! Normalized bar complex `C^n(G, M)` with left action on the coefficients:
//! `(dc)(g_1..g_{n+1}) = g_1·c(g_2..) + Σ (-1)^i c(..g_i g_{i+1}..) + (-1)^{n+1} c(g_1..g_n)`.
//!
//! Cochains are stored on tuples of non-identity elements in lexicographic
//! order (first entry slowest), `rank` values per tuple.

use serde_json::{json, Map, Value};

use super::complex::{CochainComplex, Coord, Cochain};
use crate::abelian::zmod::SparseMat;
use crate::abelian::CoeffModule;
use crate::group::{FiniteGroup, GroupAction};
use crate::{Error, Result};

/// Coefficient module: typed coordinates plus one action matrix per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficients {
    pub kinds: Vec<Coord>,
    pub action: Vec<Vec<Vec<i64>>>,
    pub label: String,
}

impl Coefficients {
    pub fn finite(m: &CoeffModule) -> Self {
        Coefficients {
            kinds: m.coeffs.factors().iter().map(|&d| Coord::Finite(d)).collect(),
            action: m.action.clone(),
            label: m.coeffs.describe(),
        }
    }

    /// `C^×` with trivial action.
    pub fn cx(g: &FiniteGroup) -> Self {
        Coefficients { kinds: vec![Coord::Divisible], action: vec![vec![vec![1]]; g.order()], label: "C^x".into() }
    }

    /// `Z/n` with trivial action (the roots of unity `μ_n`).
    pub fn mu(g: &FiniteGroup, n: u64) -> Self {
        Self::finite(&CoeffModule::mu(g.clone(), n))
    }

    /// Functions `X → C^×` with `(q·f)(x) = f(q⁻¹x)`.
    pub fn cx_functions(a: &GroupAction) -> Self {
        let g = a.group();
        let n = a.set_size();
        let action = g
            .elements()
            .map(|q| {
                let qi = g.inv(q);
                (0..n).map(|x| (0..n).map(|y| i64::from(a.act(qi, x) == y)).collect()).collect()
            })
            .collect();
        Coefficients { kinds: vec![Coord::Divisible; n], action, label: format!("C^x[{n} points]") }
    }

    pub fn rank(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_divisible(&self) -> bool {
        self.kinds.iter().any(|k| matches!(k, Coord::Divisible))
    }
}

#[derive(Clone, Debug)]
pub struct BarComplex {
    pub group: FiniteGroup,
    pub coeffs: Coefficients,
}

impl BarComplex {
    pub fn new(group: FiniteGroup, coeffs: Coefficients) -> Result<Self> {
        if coeffs.action.len() != group.order() {
            return Err(Error::Mismatch("coefficient action has wrong length".into()));
        }
        Ok(BarComplex { group, coeffs })
    }

    pub fn cx(group: &FiniteGroup) -> Self {
        BarComplex { group: group.clone(), coeffs: Coefficients::cx(group) }
    }

    pub fn mu(group: &FiniteGroup, n: u64) -> Self {
        BarComplex { group: group.clone(), coeffs: Coefficients::mu(group, n) }
    }

    pub fn finite(module: &CoeffModule) -> Self {
        BarComplex { group: module.group.clone(), coeffs: Coefficients::finite(module) }
    }

    fn base(&self) -> usize {
        self.group.order() - 1
    }

    pub fn num_tuples(&self, n: usize) -> usize {
        self.base().pow(n as u32)
    }

    /// Index of a tuple, `None` if it contains the identity.
    pub fn tuple_index(&self, t: &[usize]) -> Option<usize> {
        let b = self.base();
        let mut idx = 0usize;
        for &g in t {
            if g == 0 {
                return None;
            }
            idx = idx * b + (g - 1);
        }
        Some(idx)
    }

    pub fn tuple_at(&self, n: usize, mut idx: usize) -> Vec<usize> {
        let b = self.base();
        let mut t = vec![0; n];
        for i in (0..n).rev() {
            t[i] = idx % b + 1;
            idx /= b;
        }
        t
    }

    /// Value vector of `c` at a tuple (zero on degenerate tuples).
    pub fn value(&self, c: &Cochain, t: &[usize]) -> Vec<u64> {
        let r = self.coeffs.rank();
        match self.tuple_index(t) {
            None => vec![0; r],
            Some(i) => c.values[i * r..(i + 1) * r].to_vec(),
        }
    }

    /// Builds a cochain from a function on tuples (only non-degenerate tuples
    /// are queried).
    pub fn cochain_from_fn(&self, n: usize, modulus: u64, f: impl Fn(&[usize]) -> Vec<i64>) -> Cochain {
        let r = self.coeffs.rank();
        let mut values = Vec::with_capacity(self.num_tuples(n) * r);
        for i in 0..self.num_tuples(n) {
            let t = self.tuple_at(n, i);
            let v = f(&t);
            for (k, &x) in self.coeffs.kinds.iter().zip(&v) {
                let m = match k {
                    Coord::Finite(d) => *d,
                    Coord::Divisible => modulus,
                };
                values.push(x.rem_euclid(m as i64) as u64);
            }
        }
        Cochain { degree: n, modulus, values }
    }

    /// Uniformly random cochain with divisible values at `modulus`.
    pub fn random_cochain(&self, n: usize, modulus: u64, rng: &mut impl rand::Rng) -> Cochain {
        let r = self.coeffs.rank();
        let mut values = Vec::with_capacity(self.num_tuples(n) * r);
        for _ in 0..self.num_tuples(n) {
            for k in &self.coeffs.kinds {
                let m = match k {
                    Coord::Finite(d) => *d,
                    Coord::Divisible => modulus,
                };
                values.push(rng.gen_range(0..m));
            }
        }
        Cochain { degree: n, modulus, values }
    }

    /// `(φ^*c)(h_1..h_n) = c(φ(h_1)..φ(h_n))` for `φ: H → G` given by `image`,
    /// where `self` is the complex over `H` (coefficients pulled back).
    pub fn pullback(&self, src: &BarComplex, image: &[usize], c: &Cochain) -> Cochain {
        let n = c.degree;
        let r = self.coeffs.rank();
        let mut values = Vec::with_capacity(self.num_tuples(n) * r);
        for i in 0..self.num_tuples(n) {
            let t: Vec<usize> = self.tuple_at(n, i).iter().map(|&h| image[h]).collect();
            values.extend(src.value(c, &t));
        }
        Cochain { degree: n, modulus: c.modulus, values }
    }

    /// Applies a coefficient homomorphism (matrix `target_rank × rank`) valuewise.
    pub fn map_coefficients(&self, target: &Coefficients, m: &[Vec<i64>], c: &Cochain, level: u64) -> Cochain {
        let r = self.coeffs.rank();
        let mut values = Vec::new();
        for i in 0..self.num_tuples(c.degree) {
            let v = &c.values[i * r..(i + 1) * r];
            for (row, k) in m.iter().zip(&target.kinds) {
                let mut s: i128 = 0;
                for (j, (&x, &a)) in row.iter().zip(v).enumerate() {
                    let term = match (self.coeffs.kinds[j], k) {
                        (Coord::Finite(d), Coord::Divisible) => x as i128 * a as i128 * (level / d) as i128,
                        (Coord::Divisible, Coord::Divisible) => x as i128 * a as i128 * (level / c.modulus) as i128,
                        _ => x as i128 * a as i128,
                    };
                    s += term;
                }
                let md = match k {
                    Coord::Finite(d) => *d,
                    Coord::Divisible => level,
                };
                values.push(s.rem_euclid(md as i128) as u64);
            }
        }
        Cochain { degree: c.degree, modulus: level, values }
    }

    /// JSON form `{"degree", "modulus" | "coeff", "values": {"g1,g2": [..]}}`;
    /// zero values are omitted.
    pub fn cochain_to_json(&self, c: &Cochain) -> Value {
        let r = self.coeffs.rank();
        let mut vals = Map::new();
        for i in 0..self.num_tuples(c.degree) {
            let v = &c.values[i * r..(i + 1) * r];
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            let key = self.tuple_at(c.degree, i).iter().map(|g| g.to_string()).collect::<Vec<_>>().join(",");
            vals.insert(key, json!(v));
        }
        let mut obj = Map::new();
        obj.insert("degree".into(), json!(c.degree));
        if self.coeffs.is_divisible() {
            obj.insert("modulus".into(), json!(c.modulus));
        } else {
            let f: Vec<u64> = self.coeffs.kinds.iter().map(|k| if let Coord::Finite(d) = k { *d } else { 0 }).collect();
            obj.insert("coeff".into(), json!(f));
        }
        obj.insert("values".into(), Value::Object(vals));
        Value::Object(obj)
    }

    pub fn cochain_from_json(&self, v: &Value) -> Result<Cochain> {
        let bad = |m: &str| Error::Parse(format!("cochain JSON: {m}"));
        let n = v.get("degree").and_then(Value::as_u64).ok_or_else(|| bad("missing degree"))? as usize;
        let modulus = match v.get("modulus").and_then(Value::as_u64) {
            Some(m) => m,
            None => super::complex::finite_lcm(&self.coeffs.kinds),
        };
        let r = self.coeffs.rank();
        let mut values = vec![0u64; self.num_tuples(n) * r];
        let obj = v.get("values").and_then(Value::as_object).ok_or_else(|| bad("missing values"))?;
        for (key, val) in obj {
            let t: Vec<usize> = if key.is_empty() {
                Vec::new()
            } else {
                key.split(',').map(|s| s.trim().parse::<usize>().map_err(|_| bad("bad tuple"))).collect::<Result<_>>()?
            };
            if t.len() != n || t.iter().any(|&g| g >= self.group.order()) {
                return Err(bad("tuple out of range"));
            }
            let Some(i) = self.tuple_index(&t) else { continue };
            let arr = val.as_array().ok_or_else(|| bad("values must be arrays"))?;
            if arr.len() != r {
                return Err(bad("wrong value length"));
            }
            for (j, x) in arr.iter().enumerate() {
                let x = x.as_i64().ok_or_else(|| bad("non-integer value"))?;
                let m = match self.coeffs.kinds[j] {
                    Coord::Finite(d) => d,
                    Coord::Divisible => modulus,
                };
                values[i * r + j] = x.rem_euclid(m as i64) as u64;
            }
        }
        Ok(Cochain { degree: n, modulus, values })
    }
}

impl CochainComplex for BarComplex {
    fn kinds(&self, n: usize) -> Vec<Coord> {
        let t = self.num_tuples(n);
        let mut out = Vec::with_capacity(t * self.coeffs.rank());
        for _ in 0..t {
            out.extend_from_slice(&self.coeffs.kinds);
        }
        out
    }

    fn differential(&self, n: usize) -> SparseMat {
        let g = &self.group;
        let r = self.coeffs.rank();
        let rows = self.num_tuples(n + 1);
        let mut triplets: Vec<(usize, usize, i64)> = Vec::new();
        let mut t = vec![0usize; n];
        for row in 0..rows {
            let full = self.tuple_at(n + 1, row);
            // g_1 · c(g_2..g_{n+1})
            if let Some(col) = self.tuple_index(&full[1..]) {
                let m = &self.coeffs.action[full[0]];
                for a in 0..r {
                    for b in 0..r {
                        if m[a][b] != 0 {
                            triplets.push((row * r + a, col * r + b, m[a][b]));
                        }
                    }
                }
            }
            for i in 0..n {
                // merge positions i, i+1
                let prod = g.mul(full[i], full[i + 1]);
                if prod == 0 {
                    continue;
                }
                t.clear();
                t.extend_from_slice(&full[..i]);
                t.push(prod);
                t.extend_from_slice(&full[i + 2..]);
                let col = self.tuple_index(&t).expect("non-degenerate");
                let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
                for a in 0..r {
                    triplets.push((row * r + a, col * r + a, sign));
                }
            }
            let col = self.tuple_index(&full[..n]).expect("non-degenerate");
            let sign = if (n + 1).is_multiple_of(2) { 1 } else { -1 };
            for a in 0..r {
                triplets.push((row * r + a, col * r + a, sign));
            }
        }
        let mut d = SparseMat::zeros(rows * r, self.num_tuples(n) * r);
        for (row, col, v) in triplets {
            d.push(row, col, v);
        }
        d
    }

    fn torsion_bound(&self) -> u64 {
        self.group.order() as u64
    }
}
