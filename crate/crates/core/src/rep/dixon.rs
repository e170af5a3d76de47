use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::config::caps;
use crate::cyclotomic::{Cyclo, CycloField};
use crate::group::FiniteGroup;
use crate::{Error, Result};

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2√order`.
pub fn dixon_prime(exponent: u64, order: u64) -> u64 {
    let mut p = exponent + 1;
    while !(is_prime(p) && p * p > 4 * order) {
        p += exponent;
    }
    p
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p).find(|&g| factors.iter().all(|&f| pow_mod(g, (p - 1) / f, p) != 1)).expect("prime has a primitive root")
}

/// Basis of the kernel of `m` (rows × cols) over `F_p`, as column vectors.
fn kernel_mod(m: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, pr);
        let inv = inv_mod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + p - f * a[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[i][f]) % p;
            }
            v
        })
        .collect()
}

/// Exact character table. Values are stored as eigenvalue multiplicities:
/// `χ(g) = Σ_j m_j ζ_e^j` with `e = exp(G)`.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterTable {
    pub group_name: String,
    pub order: usize,
    pub exponent: u64,
    pub classes: Vec<Vec<usize>>,
    pub class_sizes: Vec<usize>,
    pub dims: Vec<usize>,
    /// `multiplicities[χ][class][j]`
    pub multiplicities: Vec<Vec<Vec<u32>>>,
    #[serde(skip)]
    field: Option<Arc<CycloField>>,
    #[serde(skip)]
    class_of: Vec<usize>,
}

impl CharacterTable {
    pub fn num_irreps(&self) -> usize {
        self.dims.len()
    }

    pub fn field(&self) -> &Arc<CycloField> {
        self.field.as_ref().expect("field is set on construction")
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    /// Exact value `χ_i` on class `k`.
    pub fn value(&self, i: usize, k: usize) -> Cyclo {
        let counts: Vec<i64> = self.multiplicities[i][k].iter().map(|&m| m as i64).collect();
        Cyclo::from_exponent_counts(self.field(), &counts)
    }

    pub fn value_at(&self, i: usize, g: usize) -> Cyclo {
        self.value(i, self.class_of[g])
    }

    pub fn complex_value_at(&self, i: usize, g: usize) -> num_complex::Complex64 {
        let e = self.exponent as f64;
        self.multiplicities[i][self.class_of[g]].iter().enumerate().fold(num_complex::Complex64::new(0.0, 0.0), |acc, (j, &m)| {
            acc + num_complex::Complex64::from_polar(m as f64, 2.0 * std::f64::consts::PI * j as f64 / e)
        })
    }

    /// `⟨χ_i, χ_j⟩·|G|` computed exactly.
    pub fn inner_product_scaled(&self, i: usize, j: usize) -> Cyclo {
        let f = self.field();
        (0..self.classes.len()).fold(Cyclo::zero(f), |acc, k| {
            let t = self.value(i, k).mul(&self.value(j, k).conj());
            acc.add(&t.scale(&num_rational::BigRational::from_integer(BigInt::from(self.class_sizes[k]))))
        })
    }

    /// Whether `⟨χ_i, χ_j⟩ = δ_ij` holds exactly for all pairs.
    pub fn orthogonality_holds(&self) -> bool {
        let n = self.order as i64;
        (0..self.num_irreps()).all(|i| {
            (0..self.num_irreps()).all(|j| self.inner_product_scaled(i, j).as_integer() == Some(BigInt::from(if i == j { n } else { 0 })))
        })
    }

    /// Index of the character equal to the class function `values`, if any.
    pub fn find(&self, values: &[Vec<u32>]) -> Option<usize> {
        self.multiplicities.iter().position(|m| m.as_slice() == values)
    }
}

/// Character table by Dixon's method: common eigenvectors of the class
/// multiplication matrices over `F_p`, lifted to exact cyclotomic values.
pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable> {
    let cap = caps().max_character_order;
    if g.order() > cap {
        return Err(Error::cap("character table group order", g.order(), cap));
    }
    let n = g.order();
    let classes = g.conjugacy_classes();
    let class_of = g.class_map();
    let r = classes.len();
    let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    let e = g.exponent() as u64;
    let p = dixon_prime(e, n as u64);
    // a[i][j][k] = #{(x, y) ∈ C_i × C_j : xy = z_k}
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (k, cl) in classes.iter().enumerate() {
        let z = cl[0];
        for x in g.elements() {
            let y = g.mul(g.inv(x), z);
            a[class_of[x]][class_of[y]][k] += 1;
        }
    }
    // split F_p^r into common eigenspaces of the A_i, (A_i)_{jk} = a_ijk
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect()];
    for ai in a.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            // eigenvectors of A_i inside span(space): solve (A_i - λ)Σ c_t w_t = 0
            let images: Vec<Vec<u64>> = space
                .iter()
                .map(|w| (0..r).map(|j| (0..r).fold(0, |acc, k| (acc + ai[j][k] % p * w[k]) % p)).collect())
                .collect();
            let mut found = 0;
            for lambda in 0..p {
                let m: Vec<Vec<u64>> = (0..r)
                    .map(|j| {
                        space.iter().zip(&images).map(|(w, aw)| (aw[j] + p - lambda * w[j] % p) % p).collect()
                    })
                    .collect();
                let ker = kernel_mod(&m, space.len(), p);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let sub: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|c| (0..r).map(|j| space.iter().zip(c).fold(0, |acc, (w, &ct)| (acc + w[j] * ct) % p)).collect())
                    .collect();
                next.push(sub);
                if found == space.len() {
                    break;
                }
            }
            if found != space.len() {
                return Err(Error::Other(format!("class matrices not diagonalizable over F_{p}")));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::Other("common eigenspaces did not split".into()));
    }
    let inv_class: Vec<usize> = classes.iter().map(|cl| class_of[g.inv(cl[0])]).collect();
    let zeta = pow_mod(primitive_root(p), (p - 1) / e, p);
    let mut chars: Vec<(usize, Vec<Vec<u32>>)> = Vec::new();
    for space in spaces {
        let v = &space[0];
        let inv0 = inv_mod(v[0], p);
        let w: Vec<u64> = v.iter().map(|x| x * inv0 % p).collect();
        let s = (0..r).fold(0u64, |acc, k| (acc + w[k] * w[inv_class[k]] % p * inv_mod(sizes[k] as u64 % p, p)) % p);
        let d2 = n as u64 % p * inv_mod(s, p) % p;
        let d = (1..=n).find(|&d| (d * d) as u64 % p == d2 && d * d <= n).ok_or_else(|| Error::Other("degree lift failed".into()))?;
        let chi: Vec<u64> = (0..r).map(|k| d as u64 % p * w[k] % p * inv_mod(sizes[k] as u64, p) % p).collect();
        // eigenvalue multiplicities from values on powers
        let einv = inv_mod(e % p, p);
        let mut mult = Vec::with_capacity(r);
        for cl in &classes {
            let x = cl[0];
            let mut m = Vec::with_capacity(e as usize);
            for j in 0..e {
                let mut acc = 0u64;
                let mut pw = 0usize;
                for l in 0..e {
                    let val = chi[class_of[pw]];
                    acc = (acc + val * pow_mod(zeta, (e - (j * l) % e) % e, p)) % p;
                    pw = g.mul(pw, x);
                }
                let mj = acc * einv % p;
                if mj > d as u64 {
                    return Err(Error::Other("eigenvalue multiplicity lift failed".into()));
                }
                m.push(mj as u32);
            }
            mult.push(m);
        }
        chars.push((d, mult));
    }
    chars.sort_by_key(|(d, m)| (!(*d == 1 && m.iter().all(|v| v[0] == 1)), *d, m.clone()));
    let field = CycloField::new(e);
    let table = CharacterTable {
        group_name: g.name().to_string(),
        order: n,
        exponent: e,
        classes,
        class_sizes: sizes,
        dims: chars.iter().map(|c| c.0).collect(),
        multiplicities: chars.into_iter().map(|c| c.1).collect(),
        field: Some(field),
        class_of,
    };
    // trivial character first: all multiplicity at exponent 0
    if table.multiplicities.first().is_none_or(|m| m.iter().any(|v| v[0] != 1)) {
        return Err(Error::Convention("trivial character is not first".into()));
    }
    if !table.orthogonality_holds() {
        return Err(Error::Other("character table fails orthogonality".into()));
    }
    Ok(table)
}
