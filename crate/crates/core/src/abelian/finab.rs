use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::smith::{smith_normal_form, SmithDecomposition};
use crate::{Error, Result};

/// A finite abelian group `Z/d_1 ⊕ … ⊕ Z/d_k` with `d_1 | d_2 | … | d_k`, all `d_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    factors: Vec<u64>,
}

impl FinAbGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&d| d < 2) {
            return Err(Error::Mismatch(format!("invariant factors must be >= 2: {factors:?}")));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::Mismatch(format!("factors {factors:?} do not form a divisibility chain")));
        }
        Ok(FinAbGroup { factors })
    }

    pub fn trivial() -> Self {
        FinAbGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            FinAbGroup { factors: vec![n] }
        }
    }

    /// Normal form of `⊕ Z/n_i` for arbitrary positive `n_i` (ones allowed).
    pub fn from_orders(orders: &[u64]) -> Self {
        Self::from_orders_with_iso(orders).0
    }

    /// Like [`from_orders`](Self::from_orders), also returning the coordinate
    /// change: row `i` of the matrix sends the `j`-th old generator to new coordinates.
    pub fn from_orders_with_iso(orders: &[u64]) -> (Self, Vec<Vec<i64>>) {
        let k = orders.len();
        let q = lattice_quotient(&identity_cols(k), &diag_cols(orders), k);
        (q.group, q.projection.expect("full lattice"))
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&d| d as u128).product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn reduce(&self, v: &[i64]) -> Vec<u64> {
        v.iter().zip(&self.factors).map(|(&x, &d)| x.rem_euclid(d as i64) as u64).collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.factors).map(|((x, y), d)| (x + y) % d).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.factors).map(|(x, d)| (d - x % d) % d).collect()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.rank()]
    }

    /// Elements in mixed radix order, first coordinate fastest.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let n = self.order() as usize;
        (0..n).map(|i| self.element(i)).collect()
    }

    pub fn element(&self, mut i: usize) -> Vec<u64> {
        self.factors
            .iter()
            .map(|&d| {
                let x = (i as u64) % d;
                i /= d as usize;
                x
            })
            .collect()
    }

    pub fn index(&self, v: &[u64]) -> usize {
        let mut idx = 0usize;
        for (x, &d) in v.iter().zip(&self.factors).rev() {
            idx = idx * d as usize + (*x % d) as usize;
        }
        idx
    }

    pub fn element_order(&self, v: &[u64]) -> u64 {
        v.iter().zip(&self.factors).fold(1, |acc, (&x, &d)| acc.lcm(&(d / d.gcd(&x))))
    }

    /// Human label such as `Z/2 x Z/4` or `0`.
    pub fn describe(&self) -> String {
        if self.factors.is_empty() {
            "0".into()
        } else {
            self.factors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
        }
    }
}

impl std::fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.describe())
    }
}

/// A homomorphism given by an integer matrix on coordinate vectors
/// (`target.rank()` rows, `source.rank()` columns).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbHom {
    pub source: FinAbGroup,
    pub target: FinAbGroup,
    pub matrix: Vec<Vec<i64>>,
}

impl AbHom {
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: Vec<Vec<i64>>) -> Result<Self> {
        if matrix.len() != target.rank() || matrix.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::Mismatch("matrix shape does not match groups".into()));
        }
        for (i, row) in matrix.iter().enumerate() {
            let ti = target.factors[i] as i128;
            for (j, &m) in row.iter().enumerate() {
                if (m as i128 * source.factors[j] as i128) % ti != 0 {
                    return Err(Error::Mismatch(format!("entry ({i},{j}) does not respect the moduli")));
                }
            }
        }
        let matrix = matrix
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.into_iter().map(|x| x.rem_euclid(target.factors[i] as i64)).collect())
            .collect();
        Ok(AbHom { source, target, matrix })
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        let k = g.rank();
        let m = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
        AbHom { source: g.clone(), target: g.clone(), matrix: m }
    }

    pub fn zero(source: &FinAbGroup, target: &FinAbGroup) -> Self {
        AbHom { source: source.clone(), target: target.clone(), matrix: vec![vec![0; source.rank()]; target.rank()] }
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        self.matrix
            .iter()
            .zip(self.target.factors())
            .map(|(row, &d)| {
                row.iter().zip(v).fold(0i128, |acc, (&m, &x)| (acc + m as i128 * x as i128) % d as i128) as u64
            })
            .collect()
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &AbHom) -> Result<AbHom> {
        if other.target != self.source {
            return Err(Error::Mismatch("composition of incompatible homomorphisms".into()));
        }
        let cols: Vec<Vec<u64>> = (0..other.source.rank())
            .map(|j| {
                let e: Vec<u64> = other.matrix.iter().map(|r| r[j] as u64).collect();
                self.apply(&e)
            })
            .collect();
        let m = (0..self.target.rank()).map(|i| cols.iter().map(|c| c[i] as i64).collect()).collect();
        AbHom::new(other.source.clone(), self.target.clone(), m)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&x| x == 0)
    }

    pub fn is_injective(&self) -> bool {
        hom_structure(self).kernel.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        hom_structure(self).cokernel.is_trivial()
    }

    pub fn image_order(&self) -> u128 {
        self.source.order() / hom_structure(self).kernel.order()
    }
}

/// Kernel and cokernel of an [`AbHom`].
#[derive(Clone, Debug, Serialize)]
pub struct HomStructure {
    pub kernel: FinAbGroup,
    /// Generators of the kernel (source coordinates), one per invariant factor.
    pub kernel_generators: Vec<Vec<u64>>,
    pub cokernel: FinAbGroup,
    /// Projection of target coordinates onto canonical cokernel coordinates.
    pub cokernel_projection: AbHom,
}

impl HomStructure {
    pub fn project(&self, v: &[u64]) -> Vec<u64> {
        self.cokernel_projection.apply(v)
    }
}

pub fn hom_structure(h: &AbHom) -> HomStructure {
    let (m, k) = (h.source.rank(), h.target.rank());
    // lattice of (x, y) with M x + diag(t) y = 0
    let mut big: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); m + k]; k];
    for i in 0..k {
        for j in 0..m {
            big[i][j] = BigInt::from(h.matrix[i][j]);
        }
        big[i][m + i] = BigInt::from(h.target.factors[i]);
    }
    let snf = smith_normal_form(&big, m + k).expect("small matrix");
    let rank = snf.rank();
    // kernel lattice of the integer matrix: trailing columns of V
    let kernel_cols: Vec<Vec<BigInt>> = (rank..m + k).map(|c| (0..m).map(|r| snf.v[r][c].clone()).collect()).collect();
    let kq = lattice_quotient(&kernel_cols_plus(&kernel_cols, h.source.factors()), &diag_cols(h.source.factors()), m);
    let kernel_generators = kq.generators.iter().map(|g| h.source.reduce(g)).collect();

    let mut im_cols: Vec<Vec<BigInt>> =
        (0..m).map(|j| (0..k).map(|i| BigInt::from(h.matrix[i][j])).collect()).collect();
    im_cols.extend(diag_cols(h.target.factors()));
    let cq = lattice_quotient(&identity_cols(k), &im_cols, k);
    let cokernel_projection = AbHom::new(h.target.clone(), cq.group.clone(), cq.projection.clone().expect("full lattice"))
        .expect("projection respects moduli");
    HomStructure { kernel: kq.group, kernel_generators, cokernel: cq.group, cokernel_projection }
}

fn kernel_cols_plus(kernel: &[Vec<BigInt>], factors: &[u64]) -> Vec<Vec<BigInt>> {
    let mut out = kernel.to_vec();
    out.extend(diag_cols(factors));
    out
}

pub(crate) fn identity_cols(k: usize) -> Vec<Vec<BigInt>> {
    (0..k).map(|j| (0..k).map(|i| BigInt::from(u8::from(i == j))).collect()).collect()
}

pub(crate) fn diag_cols(factors: &[u64]) -> Vec<Vec<BigInt>> {
    let k = factors.len();
    (0..k)
        .map(|j| (0..k).map(|i| if i == j { BigInt::from(factors[i]) } else { BigInt::zero() }).collect())
        .collect()
}

/// Result of [`lattice_quotient`].
pub(crate) struct LatticeQuotient {
    pub group: FinAbGroup,
    /// Generators of the cyclic factors, as ambient integer vectors.
    pub generators: Vec<Vec<i64>>,
    /// Integer matrix sending ambient vectors of L to quotient coordinates,
    /// available when L is saturated.
    pub projection: Option<Vec<Vec<i64>>>,
}

/// `L / S` for lattices in `Z^dim` spanned by the columns `big` (L) and
/// `small` (S ⊆ L, with L/S finite).
pub(crate) fn lattice_quotient(big: &[Vec<BigInt>], small: &[Vec<BigInt>], dim: usize) -> LatticeQuotient {
    // basis of L: SNF of the generator matrix G (dim × a)
    let a = big.len();
    let gmat: Vec<Vec<BigInt>> = (0..dim).map(|i| (0..a).map(|j| big[j][i].clone()).collect()).collect();
    let g = smith_normal_form(&gmat, a).expect("lattice generator matrix");
    let r = g.rank();
    // L has basis B = U⁻¹ D[:, :r] ... expressed via b_j = d_j · (column j of U⁻¹)
    let basis: Vec<Vec<BigInt>> =
        (0..r).map(|j| (0..dim).map(|i| &g.u_inv[i][j] * &g.d[j][j]).collect()).collect();
    // coordinates of x ∈ L in basis: (U x)_j / d_j
    let coords_in_basis = |x: &[BigInt]| -> Vec<BigInt> {
        (0..r)
            .map(|j| {
                let s: BigInt = (0..dim).map(|i| &g.u[j][i] * &x[i]).sum();
                let (q, rem) = s.div_rem(&g.d[j][j]);
                debug_assert!(rem.is_zero(), "vector outside lattice");
                q
            })
            .collect()
    };
    // S in basis coordinates: r × |small|
    let smat_cols: Vec<Vec<BigInt>> = small.iter().map(|c| coords_in_basis(c)).collect();
    let smat: Vec<Vec<BigInt>> =
        (0..r).map(|i| (0..smat_cols.len()).map(|j| smat_cols[j][i].clone()).collect()).collect();
    let s = smith_normal_form(&smat, smat_cols.len()).expect("relation matrix");
    let diag: Vec<BigInt> = (0..r).map(|i| if i < smat_cols.len() { s.d[i][i].clone() } else { BigInt::zero() }).collect();
    assert!(diag.iter().all(|d| !d.is_zero()), "quotient lattice is not finite");
    let keep: Vec<usize> = (0..r).filter(|&i| diag[i] != BigInt::from(1)).collect();
    let group = FinAbGroup::new(keep.iter().map(|&i| diag[i].to_u64().expect("factor fits")).collect()).unwrap();
    // generator i: basis combination given by column i of U_s⁻¹
    let generators = keep
        .iter()
        .map(|&i| {
            (0..dim)
                .map(|row| {
                    let v: BigInt = (0..r).map(|j| &s.u_inv[j][i] * &basis[j][row]).sum();
                    v.to_i64().expect("generator entry fits")
                })
                .collect()
        })
        .collect();
    let projection = project_matrix(&g, &s, &keep, &diag, dim, r);
    LatticeQuotient { group, generators, projection }
}

/// Rows of the projection `x ↦ (U_s · U_g x)_i mod d_i`; exact when L is
/// saturated (all Smith diagonal entries of its generator matrix are 1).
fn project_matrix(
    g: &SmithDecomposition,
    s: &SmithDecomposition,
    keep: &[usize],
    diag: &[BigInt],
    dim: usize,
    r: usize,
) -> Option<Vec<Vec<i64>>> {
    if (0..r).any(|j| g.d[j][j] != BigInt::from(1)) {
        return None;
    }
    let rows = keep
        .iter()
        .map(|&i| {
            (0..dim)
                .map(|c| {
                    let v: BigInt = (0..r).map(|j| &s.u[i][j] * &g.u[j][c]).sum();
                    v.mod_floor(&diag[i]).to_i64().unwrap()
                })
                .collect()
        })
        .collect();
    Some(rows)
}
