use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::CharacterTable;
use crate::config::caps;
use crate::group::FiniteGroup;
use crate::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Construction tolerance for homomorphism, unitarity and trace defects.
pub const MATRIX_TOL: f64 = 1e-9;
const RETRIES: u64 = 8;

#[derive(Clone, Copy, Debug, Default, Serialize, PartialEq)]
pub struct Defects {
    pub homomorphism: f64,
    pub unitarity: f64,
    pub character: f64,
}

impl Defects {
    pub fn max(&self) -> f64 {
        self.homomorphism.max(self.unitarity).max(self.character)
    }
}

/// Unitary matrices for every irreducible character, one per group element.
#[derive(Clone, Debug)]
pub struct IrrepMatrices {
    pub seed: u64,
    pub tolerance: f64,
    /// `reps[i][g]`
    pub reps: Vec<Vec<CMatrix>>,
    pub defects: Vec<Defects>,
}

impl IrrepMatrices {
    pub fn dim(&self, i: usize) -> usize {
        self.reps[i][0].nrows()
    }

    pub fn get(&self, i: usize, g: usize) -> &CMatrix {
        &self.reps[i][g]
    }
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.norm()))
}

fn regular(g: &FiniteGroup, x: usize) -> CMatrix {
    let n = g.order();
    let mut m = CMatrix::zeros(n, n);
    for y in g.elements() {
        m[(g.mul(x, y), y)] = Complex64::new(1.0, 0.0);
    }
    m
}

/// Orthonormal basis of the range of a Hermitian projector.
fn range_basis(p: &CMatrix, rank: usize) -> Result<CMatrix> {
    let eig = p.clone().symmetric_eigen();
    let mut idx: Vec<usize> = (0..p.nrows()).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let ok = idx.iter().enumerate().all(|(j, &i)| {
        let target = if j < rank { 1.0 } else { 0.0 };
        (eig.eigenvalues[i] - target).abs() < 1e-8
    });
    if !ok {
        return Err(Error::Tolerance { what: "isotypic projector spectrum".into(), value: 1.0, tol: 1e-8 });
    }
    Ok(CMatrix::from_columns(&idx[..rank].iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect::<Vec<_>>()))
}

fn measure(g: &FiniteGroup, table: &CharacterTable, i: usize, reps: &[CMatrix]) -> Defects {
    let mut d = Defects::default();
    for x in g.elements() {
        let id = CMatrix::identity(reps[x].nrows(), reps[x].ncols());
        d.unitarity = d.unitarity.max(max_abs(&(reps[x].adjoint() * &reps[x] - id)));
        d.character = d.character.max((reps[x].trace() - table.complex_value_at(i, x)).norm());
        for y in g.elements() {
            d.homomorphism = d.homomorphism.max(max_abs(&(&reps[x] * &reps[y] - &reps[g.mul(x, y)])));
        }
    }
    d
}

fn split_copy(g: &FiniteGroup, iso: &[CMatrix], dim: usize, rng: &mut ChaCha8Rng) -> Option<Vec<CMatrix>> {
    let m = iso[0].nrows();
    let mut h = CMatrix::from_fn(m, m, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    h = &h + h.adjoint();
    let mut avg = CMatrix::zeros(m, m);
    for x in g.elements() {
        avg += &iso[x] * &h * iso[x].adjoint();
    }
    avg /= Complex64::new(g.order() as f64, 0.0);
    let eig = avg.symmetric_eigen();
    let mut idx: Vec<usize> = (0..m).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let ev = |j: usize| eig.eigenvalues[idx[j]];
    // the lowest eigenvalue has multiplicity `dim`; demand a clear gap above it
    let spread = ev(dim - 1) - ev(0);
    let gap = if dim < m { ev(dim) - ev(dim - 1) } else { f64::INFINITY };
    if spread > 1e-7 || gap < 1e-3 {
        return None;
    }
    let b = CMatrix::from_columns(&idx[..dim].iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect::<Vec<_>>());
    Some(iso.iter().map(|r| b.adjoint() * r * &b).collect())
}

/// Unitary irreps from the regular representation: isotypic projectors cut
/// out `d` copies of each irrep, and the eigenspaces of a random averaged
/// Hermitian operator pick one copy. Deterministic in `seed`.
pub fn irrep_matrices(g: &FiniteGroup, table: &CharacterTable, seed: u64) -> Result<IrrepMatrices> {
    let cap = caps().max_character_order;
    if g.order() > cap {
        return Err(Error::cap("irrep matrices group order", g.order(), cap));
    }
    if table.order != g.order() {
        return Err(Error::Mismatch("character table belongs to another group".into()));
    }
    let n = g.order();
    let regs: Vec<CMatrix> = g.elements().map(|x| regular(g, x)).collect();
    let mut reps = Vec::with_capacity(table.num_irreps());
    let mut defects = Vec::with_capacity(table.num_irreps());
    for i in 0..table.num_irreps() {
        let d = table.dims[i];
        let found = if d == 1 {
            let r: Vec<CMatrix> = g.elements().map(|x| CMatrix::from_element(1, 1, table.complex_value_at(i, x))).collect();
            Some(r)
        } else {
            let mut p = CMatrix::zeros(n, n);
            for x in g.elements() {
                p += &regs[x] * table.complex_value_at(i, x).conj();
            }
            p *= Complex64::new(d as f64 / n as f64, 0.0);
            let u = range_basis(&p, d * d)?;
            let iso: Vec<CMatrix> = regs.iter().map(|r| u.adjoint() * r * &u).collect();
            (0..RETRIES).find_map(|attempt| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((i as u64) << 32) ^ attempt.wrapping_mul(0x9e37_79b9));
                split_copy(g, &iso, d, &mut rng).filter(|r| measure(g, table, i, r).max() <= MATRIX_TOL)
            })
        };
        let r = found.ok_or_else(|| Error::Tolerance { what: format!("irrep {i} construction"), value: f64::NAN, tol: MATRIX_TOL })?;
        let def = measure(g, table, i, &r);
        if def.max() > MATRIX_TOL {
            return Err(Error::Tolerance { what: format!("irrep {i} defect"), value: def.max(), tol: MATRIX_TOL });
        }
        defects.push(def);
        reps.push(r);
    }
    Ok(IrrepMatrices { seed, tolerance: MATRIX_TOL, reps, defects })
}
