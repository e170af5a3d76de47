//! Exact arithmetic in `Q(ζ_n)`: rational vectors modulo the cyclotomic
//! polynomial `Φ_n`, and sparse linear algebra over that field.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    // x^n - 1 = Π_{d | n} Φ_d
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

fn poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = *b.last().expect("nonzero divisor");
    let mut q = vec![0i64; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] / lead;
        q[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Field context for `Q(ζ_n)`.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    n: u64,
    phi: Vec<BigRational>,
    /// reduction of `ζ^e` for `e < n`
    powers: Vec<Vec<BigRational>>,
}

impl CycloField {
    pub fn new(n: u64) -> Arc<Self> {
        assert!(n >= 1);
        let phi: Vec<BigRational> = cyclotomic_poly(n).into_iter().map(|c| BigRational::from_integer(c.into())).collect();
        let deg = phi.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![BigRational::zero(); deg];
        if deg > 0 {
            cur[0] = BigRational::one();
        }
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x and reduce
            let mut next = vec![BigRational::zero(); deg];
            for i in 0..deg.saturating_sub(1) {
                next[i + 1] = cur[i].clone();
            }
            let top = cur[deg - 1].clone();
            if !top.is_zero() {
                for i in 0..deg {
                    next[i] -= &top * &phi[i];
                }
            }
            cur = next;
        }
        Arc::new(CycloField { n, phi, powers })
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }
}

/// An element of `Q(ζ_n)` in the power basis `1, ζ, …, ζ^{φ(n)-1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Cyclo {
    field: Arc<CycloField>,
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if i == 0 { c.to_string() } else { format!("{c}*z^{i}") })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Cyclo {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        Cyclo { field: field.clone(), coeffs: vec![BigRational::zero(); field.degree()] }
    }

    pub fn from_int(field: &Arc<CycloField>, v: i64) -> Self {
        let mut c = Self::zero(field);
        c.coeffs[0] = BigRational::from_integer(v.into());
        c
    }

    pub fn from_rational(field: &Arc<CycloField>, v: BigRational) -> Self {
        let mut c = Self::zero(field);
        c.coeffs[0] = v;
        c
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_int(field, 1)
    }

    /// `ζ_n^e`.
    pub fn zeta(field: &Arc<CycloField>, e: i64) -> Self {
        let n = field.n as i64;
        Cyclo { field: field.clone(), coeffs: field.powers[e.rem_euclid(n) as usize].clone() }
    }

    /// `Σ_e c_e ζ^e` from integer multiplicities of exponents.
    pub fn from_exponent_counts(field: &Arc<CycloField>, counts: &[i64]) -> Self {
        let mut out = Self::zero(field);
        for (e, &c) in counts.iter().enumerate() {
            if c != 0 {
                let z = &field.powers[e % field.n as usize];
                let c = BigRational::from_integer(c.into());
                for (o, x) in out.coeffs.iter_mut().zip(z) {
                    *o += &c * x;
                }
            }
        }
        out
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    /// The integer value, if the element lies in `Z`.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn add(&self, o: &Cyclo) -> Cyclo {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        Cyclo { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, o: &Cyclo) -> Cyclo {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        Cyclo { field: self.field.clone(), coeffs }
    }

    pub fn neg(&self) -> Cyclo {
        Cyclo { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, r: &BigRational) -> Cyclo {
        Cyclo { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| a * r).collect() }
    }

    pub fn mul(&self, o: &Cyclo) -> Cyclo {
        let deg = self.field.degree();
        let mut prod = vec![BigRational::zero(); 2 * deg];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Cyclo { field: self.field.clone(), coeffs: reduce(&self.field, prod) }
    }

    /// Multiplication by `ζ^e`.
    pub fn mul_zeta(&self, e: i64) -> Cyclo {
        self.mul(&Cyclo::zeta(&self.field, e))
    }

    /// Complex conjugate (`ζ ↦ ζ⁻¹`).
    pub fn conj(&self) -> Cyclo {
        let mut out = Cyclo::zero(&self.field);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let z = &self.field.powers[(self.field.n as usize - i) % self.field.n as usize];
            for (o, x) in out.coeffs.iter_mut().zip(z) {
                *o += a * x;
            }
        }
        out
    }

    /// Galois action `ζ ↦ ζ^k` for `k` coprime to `n`.
    pub fn galois(&self, k: u64) -> Cyclo {
        let n = self.field.n as usize;
        let mut out = Cyclo::zero(&self.field);
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                let z = &self.field.powers[(i * k as usize) % n];
                for (o, x) in out.coeffs.iter_mut().zip(z) {
                    *o += a * x;
                }
            }
        }
        out
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`.
    pub fn inv(&self) -> Option<Cyclo> {
        if self.is_zero() {
            return None;
        }
        let (g, s) = poly_xgcd(trim(self.coeffs.clone()), trim(self.field.phi.clone()));
        // g is a nonzero constant since Φ_n is irreducible
        if g.len() != 1 {
            return None;
        }
        let ginv = g[0].recip();
        let mut s: Vec<BigRational> = s.into_iter().map(|c| c * &ginv).collect();
        s.resize(self.field.degree().max(s.len()), BigRational::zero());
        Some(Cyclo { field: self.field.clone(), coeffs: reduce(&self.field, s) })
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.field.n as f64;
        self.coeffs.iter().enumerate().fold(Complex64::new(0.0, 0.0), |acc, (i, c)| {
            let v = c.to_f64().unwrap_or(f64::NAN);
            acc + Complex64::from_polar(v, 2.0 * std::f64::consts::PI * i as f64 / n)
        })
    }

    /// Integer power-basis coefficients, if all are integral.
    pub fn integer_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None }).collect()
    }
}

fn reduce(field: &CycloField, mut p: Vec<BigRational>) -> Vec<BigRational> {
    let deg = field.degree();
    while p.len() > deg {
        let top = p.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let k = p.len() - deg;
        for i in 0..deg {
            p[k + i] -= &top * &field.phi[i];
        }
    }
    p.resize(deg, BigRational::zero());
    p
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() <= db {
        return (vec![BigRational::zero()], r);
    }
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    r.truncate(db.max(1));
    (q, trim(r))
}

fn poly_sub_mul(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(q.len() + b.len() - 1)];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in q.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] -= x * y;
        }
    }
    trim(out)
}

/// `(g, s)` with `s·a ≡ g (mod b)`, `g = gcd(a, b)`.
fn poly_xgcd(a: Vec<BigRational>, b: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (vec![BigRational::one()], vec![BigRational::zero()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

/// Dimension of the solution space of a sparse homogeneous system over
/// `Q(ζ_n)` (rows are `(column, coefficient)` lists).
pub fn nullity(rows: Vec<Vec<(usize, Cyclo)>>, ncols: usize) -> usize {
    ncols - rank(rows)
}

/// Rank of a sparse system over `Q(ζ_n)` by Gaussian elimination with
/// sparsest-row pivoting.
pub fn rank(rows: Vec<Vec<(usize, Cyclo)>>) -> usize {
    let mut pending: Vec<BTreeMap<usize, Cyclo>> = rows
        .into_iter()
        .map(|r| {
            let mut m: BTreeMap<usize, Cyclo> = BTreeMap::new();
            for (c, v) in r {
                match m.get_mut(&c) {
                    Some(x) => *x = x.add(&v),
                    None => {
                        m.insert(c, v);
                    }
                }
            }
            m.retain(|_, v| !v.is_zero());
            m
        })
        .filter(|m| !m.is_empty())
        .collect();
    // pivots: column -> normalized row (leading coefficient 1 at that column)
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Cyclo>> = BTreeMap::new();
    pending.sort_by_key(|r| r.len());
    for mut row in pending {
        // reduce by existing pivots until the row has no pivot column
        loop {
            let hit = row.keys().find(|c| pivots.contains_key(c)).copied();
            let Some(c) = hit else { break };
            let coef = row[&c].clone();
            let prow = &pivots[&c];
            for (k, v) in prow {
                let delta = v.mul(&coef);
                let e = row.entry(*k).or_insert_with(|| Cyclo::zero(delta.field()));
                *e = e.sub(&delta);
                if e.is_zero() {
                    row.remove(k);
                }
            }
        }
        if row.is_empty() {
            continue;
        }
        let (&c, lead) = row.iter().next().expect("nonempty");
        let inv = lead.inv().expect("nonzero lead");
        let normalized: BTreeMap<usize, Cyclo> = row.iter().map(|(k, v)| (*k, v.mul(&inv))).collect();
        pivots.insert(c, normalized);
    }
    pivots.len()
}

/// Smallest `n` with every value of the given exponent moduli embedded.
pub fn common_order(moduli: &[u64]) -> u64 {
    moduli.iter().fold(1, |a, &b| num_integer::lcm(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in [2u64, 3, 5, 6, 8, 12] {
            let f = CycloField::new(n);
            let s = (0..n as i64).fold(Cyclo::zero(&f), |acc, e| acc.add(&Cyclo::zeta(&f, e)));
            assert!(s.is_zero());
            assert_eq!(Cyclo::zeta(&f, 1).mul(&Cyclo::zeta(&f, n as i64 - 1)), Cyclo::one(&f));
        }
    }

    #[test]
    fn inverse_and_conjugate() {
        let f = CycloField::new(12);
        let a = Cyclo::from_int(&f, 2).add(&Cyclo::zeta(&f, 1)).add(&Cyclo::zeta(&f, 5));
        let b = a.inv().unwrap();
        assert_eq!(a.mul(&b), Cyclo::one(&f));
        let z = Cyclo::zeta(&f, 3);
        assert_eq!(z.conj(), Cyclo::zeta(&f, 9));
        let norm = a.mul(&a.conj());
        assert!((norm.to_complex() - a.to_complex() * a.to_complex().conj()).norm() < 1e-12);
    }

    #[test]
    fn rank_over_field() {
        let f = CycloField::new(4);
        let i = Cyclo::zeta(&f, 1);
        let one = Cyclo::one(&f);
        // x0 - i x1 = 0, i x0 + x1 = 0 are dependent
        let rows = vec![vec![(0, one.clone()), (1, i.neg())], vec![(0, i.clone()), (1, one.clone())]];
        assert_eq!(nullity(rows, 2), 1);
        let rows = vec![vec![(0, one.clone()), (1, i.clone())], vec![(0, i.clone()), (1, one.clone())]];
        assert_eq!(nullity(rows, 2), 0);
    }
}
