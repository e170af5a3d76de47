use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::matrices::{irrep_matrices, CMatrix, IrrepMatrices};
use super::{character_table, CharacterTable};
use crate::abelian::{CoeffModule, FinAbGroup};
use crate::cohomology::{is_cocycle, BarComplex, Cochain, Cohomology};
use crate::extension::build_extension;
use crate::group::{act_orbits, conj_band, quotient_with_section, FiniteGroup, GroupAction, Quotient, SubgroupDatum};
use crate::groupoid::{assemble_gerbe, build_action_groupoid, gerbe_decompose, groupoid_cohomology, regular_classes, twisted_rep_count};
use crate::{Error, Result};

/// Tolerance for snapping phases to roots of unity.
pub const PHASE_TOL: f64 = 1e-6;

/// `K ⊲ G` with everything Clifford theory needs: the quotient with its
/// section, `K` as a group, its character table and unitary irreps.
#[derive(Clone, Debug)]
pub struct CliffordContext {
    pub group: FiniteGroup,
    pub kernel: SubgroupDatum,
    pub quotient: Quotient,
    pub kernel_group: FiniteGroup,
    pub table: CharacterTable,
    pub matrices: IrrepMatrices,
}

impl CliffordContext {
    pub fn new(g: &FiniteGroup, k: &SubgroupDatum, seed: u64) -> Result<Self> {
        let quotient = quotient_with_section(g, k)?;
        let kernel_group = k.as_group(g);
        let table = character_table(&kernel_group)?;
        let matrices = irrep_matrices(&kernel_group, &table, seed)?;
        Ok(CliffordContext { group: g.clone(), kernel: k.clone(), quotient, kernel_group, table, matrices })
    }

    fn q(&self) -> &FiniteGroup {
        &self.quotient.quotient
    }

    /// Index in `K` of the ambient element `x ∈ K`.
    fn kidx(&self, x: usize) -> usize {
        self.kernel.index_of(x).expect("element of the kernel")
    }

    /// `ρ_i(t⁻¹ k t)` for `k` the `K`-index `ki` and `t ∈ G`.
    fn twisted(&self, i: usize, t: usize, ki: usize) -> &CMatrix {
        let g = &self.group;
        let k = self.kernel.members()[ki];
        self.matrices.get(i, self.kidx(g.mul(g.mul(g.inv(t), k), t)))
    }
}

fn irrep_permutations(g: &FiniteGroup, k: &SubgroupDatum, quo: &Quotient, table: &CharacterTable) -> Result<Vec<Vec<usize>>> {
    let band = conj_band(g, k)?;
    let q = &quo.quotient;
    let kg = k.as_group(g);
    let mut perms = Vec::with_capacity(q.order());
    for qe in q.elements() {
        let qi = q.inv(qe);
        let mut perm = Vec::with_capacity(table.num_irreps());
        for i in 0..table.num_irreps() {
            let twisted: Vec<Vec<u32>> =
                (0..table.classes.len()).map(|c| table.multiplicities[i][band.act(qi, c)].clone()).collect();
            let j = table.find(&twisted).ok_or_else(|| Error::Other("twisted character is not irreducible".into()))?;
            // any coset member gives the same twist
            for t in g.elements().filter(|&t| quo.proj.apply(t) == qe) {
                let same = kg.elements().all(|x| {
                    let y = k.index_of(g.mul(g.mul(g.inv(t), k.members()[x]), t)).expect("normal");
                    table.multiplicities[i][table.class_of(y)] == table.multiplicities[j][table.class_of(x)]
                });
                if !same {
                    return Err(Error::Convention("irrep twist depends on the section".into()));
                }
            }
            perm.push(j);
        }
        perms.push(perm);
    }
    Ok(perms)
}

/// The action `q·[V] = [V ∘ conj_{s(q)⁻¹}]` of `Q = G/K` on the irreducible
/// characters of `K`, read off the class action through the character table.
pub fn q_action_on_irreps(g: &FiniteGroup, k: &SubgroupDatum) -> Result<GroupAction> {
    let quo = quotient_with_section(g, k)?;
    let table = character_table(&k.as_group(g))?;
    let perms = irrep_permutations(g, k, &quo, &table)?;
    GroupAction::new(quo.quotient, table.num_irreps(), &perms)
}

/// Per-orbit output of the extraction.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitPhase {
    pub representative: usize,
    pub points: Vec<usize>,
    /// stabilizer members as elements of `Q`
    pub stabilizer: Vec<usize>,
    pub dim: usize,
    /// phases live in `μ_n`, `n = |Q_x|`
    pub modulus: u64,
    /// worst cocycle defect of the raw phases
    pub phase_error: f64,
    /// worst distance of a gauge-fixed phase from its root of unity
    pub rounding_error: f64,
    /// `(a, b, φ(a,b) − φ(b,a))` over commuting pairs `a < b` (local indices)
    pub commutator_pairing: Vec<(usize, usize, u64)>,
    /// `H^2(Q_x, C^×)`
    pub structure: FinAbGroup,
    pub class: Vec<u64>,
    #[serde(skip)]
    pub cocycle: Cochain,
    #[serde(skip)]
    pub stabilizer_group: FiniteGroup,
}

#[derive(Clone, Debug, Serialize)]
pub struct CliffordDatum {
    pub group: String,
    pub kernel_order: usize,
    pub quotient_order: usize,
    pub seed: u64,
    pub band: GroupAction,
    pub orbits: Vec<OrbitPhase>,
    /// unit intertwiners `T[q][i]: V_{q·i} → G_q ×_K V_i`
    #[serde(skip)]
    pub lines: Vec<Vec<CMatrix>>,
}

fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

/// Unit intertwiner from `V_j` to `V_i` twisted by `t`, `j = q·i`.
fn intertwiner(ctx: &CliffordContext, i: usize, j: usize, t: usize, rng: &mut ChaCha8Rng) -> Result<CMatrix> {
    let nk = ctx.kernel_group.order();
    let d = ctx.matrices.dim(i);
    // dim Hom_K(V_j, W) from traces
    let hom_dim = (0..nk)
        .map(|x| ctx.twisted(i, t, x).trace() * ctx.matrices.get(j, x).trace().conj())
        .sum::<Complex64>()
        / nk as f64;
    if (hom_dim - Complex64::new(1.0, 0.0)).norm() > PHASE_TOL {
        return Err(Error::Other(format!("intertwiner space has dimension {:.3} (expected 1)", hom_dim.re)));
    }
    for _ in 0..8 {
        let x = random_matrix(d, d, rng);
        let mut t_avg = CMatrix::zeros(d, d);
        for k in 0..nk {
            t_avg += ctx.twisted(i, t, k) * &x * ctx.matrices.get(j, k).adjoint();
        }
        let c = (t_avg.adjoint() * &t_avg).trace().re / d as f64;
        if c > 1e-6 {
            return Ok(t_avg / Complex64::new(c.sqrt(), 0.0));
        }
    }
    Err(Error::Other("intertwiner averaging kept vanishing".into()))
}

/// Extracts the Clifford gerbe of `K ⊲ G`: unit intertwiners
/// `T_{q,i} ∈ Hom_K(V_{q·i}, G_q ×_K V_i)` (with `G_q ×_K V` realized as `V`
/// with `k ↦ ρ(s(q)⁻¹ k s(q))`), the phases `λ` defined by
/// `ρ(u) T_{q,i} T_{q',q·i} = λ(q',q) T_{q'q,i}` on each stabilizer, gauge
/// fixed into roots of unity and classified exactly in `H^2(Q_x, C^×)`.
pub fn clifford_gerbe_extract(g: &FiniteGroup, k: &SubgroupDatum, seed: u64) -> Result<CliffordDatum> {
    let ctx = CliffordContext::new(g, k, seed)?;
    extract_with(&ctx, seed)
}

pub fn extract_with(ctx: &CliffordContext, seed: u64) -> Result<CliffordDatum> {
    let g = &ctx.group;
    let q = ctx.q();
    let perms = irrep_permutations(g, &ctx.kernel, &ctx.quotient, &ctx.table)?;
    let band = GroupAction::new(q.clone(), ctx.table.num_irreps(), &perms)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x5eed));
    let mut lines = Vec::with_capacity(q.order());
    for qe in q.elements() {
        let mut row = Vec::with_capacity(ctx.table.num_irreps());
        for i in 0..ctx.table.num_irreps() {
            if qe == 0 {
                row.push(CMatrix::identity(ctx.matrices.dim(i), ctx.matrices.dim(i)));
            } else {
                row.push(intertwiner(ctx, i, band.act(qe, i), ctx.quotient.s(qe), &mut rng)?);
            }
        }
        lines.push(row);
    }
    let mut orbits = Vec::new();
    for o in act_orbits(&band) {
        let x = o.representative;
        let mem = o.stabilizer.members().to_vec();
        let qx = o.stabilizer.as_group(q);
        let n = mem.len();
        let d = ctx.matrices.dim(x);
        // lam[a][b] = λ(mem[a], mem[b])
        let mut lam = vec![vec![Complex64::new(1.0, 0.0); n]; n];
        for a in 0..n {
            for b in 0..n {
                let (qa, qb) = (mem[a], mem[b]);
                let qab = q.mul(qa, qb);
                let u = g.mul(g.inv(ctx.quotient.s(qab)), g.mul(ctx.quotient.s(qa), ctx.quotient.s(qb)));
                let m = ctx.matrices.get(x, ctx.kidx(u)) * &lines[qb][x] * &lines[qa][x];
                let t = &lines[qab][x];
                let l = (t.adjoint() * &m).trace() / d as f64;
                let resid = (&m - t * l).iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
                if resid > PHASE_TOL {
                    return Err(Error::Tolerance { what: "composite intertwiner proportionality".into(), value: resid, tol: PHASE_TOL });
                }
                lam[a][b] = l;
            }
        }
        let mut phase_error = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab = qx.mul(a, b);
                    let bc = qx.mul(b, c);
                    let lhs = lam[a][bc] * lam[b][c];
                    let rhs = lam[ab][c] * lam[a][b];
                    phase_error = phase_error.max((lhs - rhs).norm());
                }
            }
        }
        if phase_error > PHASE_TOL {
            return Err(Error::Tolerance { what: "stabilizer phase cocycle".into(), value: phase_error, tol: PHASE_TOL });
        }
        // λ^n = dβ with β(a) = Π_c λ(a,c); dividing by β^{1/n} lands in μ_n
        let nu: Vec<Complex64> = (0..n)
            .map(|a| {
                let arg: f64 = (0..n).map(|c| lam[a][c].arg()).sum();
                Complex64::from_polar(1.0, arg / n as f64)
            })
            .collect();
        let mut rounding_error = 0.0f64;
        let mut expo = vec![vec![0u64; n]; n];
        for a in 0..n {
            for b in 0..n {
                let v = lam[a][b] * nu[qx.mul(a, b)] / (nu[a] * nu[b]);
                let e = (v.arg() * n as f64 / (2.0 * PI)).round().rem_euclid(n as f64) as u64;
                rounding_error = rounding_error.max((v - Complex64::from_polar(1.0, 2.0 * PI * e as f64 / n as f64)).norm());
                expo[a][b] = e;
            }
        }
        if rounding_error > PHASE_TOL {
            return Err(Error::Tolerance { what: "phase rounding".into(), value: rounding_error, tol: PHASE_TOL });
        }
        let modulus = n as u64;
        let bar = BarComplex::cx(&qx);
        let phi = bar.cochain_from_fn(2, modulus, |t| vec![expo[t[0]][t[1]] as i64]);
        if !is_cocycle(&bar, &phi)? {
            return Err(Error::NotCocycle { witness: None });
        }
        let h = Cohomology::compute(&bar, 2, modulus)?;
        let class = h.classify(&phi)?;
        let mut commutator_pairing = Vec::new();
        for a in 1..n {
            for b in a + 1..n {
                if qx.commute(a, b) {
                    commutator_pairing.push((a, b, (expo[a][b] + modulus - expo[b][a]) % modulus));
                }
            }
        }
        orbits.push(OrbitPhase {
            representative: x,
            points: o.points,
            stabilizer: mem,
            dim: d,
            modulus,
            phase_error,
            rounding_error,
            commutator_pairing,
            structure: h.structure().clone(),
            class,
            cocycle: phi,
            stabilizer_group: qx,
        });
    }
    Ok(CliffordDatum {
        group: g.name().to_string(),
        kernel_order: ctx.kernel.order(),
        quotient_order: q.order(),
        seed,
        band,
        orbits,
        lines,
    })
}

/// Dimensions of the irreducible projective representations of `q` with
/// cocycle `phi ∈ Z^2(q, μ_n)`: irreps of the central extension by `Z/n`
/// on which the generator of `Z/n` acts by `e^{2πi/n}`.
pub fn projective_dims(q: &FiniteGroup, phi: &Cochain) -> Result<Vec<usize>> {
    let n = phi.modulus;
    if n == 1 || q.order() == 1 {
        return Ok(character_table(q)?.dims);
    }
    let band = CoeffModule::mu(q.clone(), n);
    let src = BarComplex::cx(q);
    let eta = BarComplex::finite(&band).cochain_from_fn(2, n, |t| vec![src.value(phi, t)[0] as i64]);
    let ext = build_extension(&band, &eta)?;
    let t = character_table(&ext.total)?;
    let z = t.class_of(ext.embed[1]);
    let mut dims: Vec<usize> = (0..t.num_irreps())
        .filter(|&i| t.multiplicities[i][z].get(t.exponent as usize / n as usize).copied() == Some(t.dims[i] as u32))
        .map(|i| t.dims[i])
        .collect();
    dims.sort_unstable();
    Ok(dims)
}

#[derive(Clone, Debug, Serialize)]
pub struct FrulesOrbit {
    pub representative: usize,
    pub orbit_size: usize,
    pub dim: usize,
    pub class: Vec<u64>,
    pub regular_classes: usize,
    pub projective_dims: Vec<usize>,
    /// dims of the irreps of `G` lying over this orbit
    pub dims_over: Vec<usize>,
    /// `|orbit| · dim V_x · d` over the projective dims
    pub expected_dims: Vec<usize>,
}

/// The count identity `#Irr(G) = Σ_x #φ_x-regular classes of Q_x` and its
/// refinement by dimensions.
#[derive(Clone, Debug, Serialize)]
pub struct FrulesReport {
    pub irreps: usize,
    pub orbits: Vec<FrulesOrbit>,
    pub total: usize,
    /// the same count through the assembled gerbe on `Q⋉I_K`
    pub gerbe_total: usize,
    pub count_holds: bool,
    pub dims_hold: bool,
    pub line: String,
}

impl FrulesReport {
    pub fn holds(&self) -> bool {
        self.count_holds && self.dims_hold
    }
}

pub fn frules_check(g: &FiniteGroup, k: &SubgroupDatum, seed: u64) -> Result<FrulesReport> {
    let datum = clifford_gerbe_extract(g, k, seed)?;
    frules_from(g, k, &datum)
}

pub fn frules_from(g: &FiniteGroup, k: &SubgroupDatum, datum: &CliffordDatum) -> Result<FrulesReport> {
    let gt = character_table(g)?;
    let kg = k.as_group(g);
    let kt = character_table(&kg)?;
    let mut orbits = Vec::new();
    for o in &datum.orbits {
        let reg = regular_classes(&o.stabilizer_group, &o.cocycle).len();
        let pd = projective_dims(&o.stabilizer_group, &o.cocycle)?;
        let mut dims_over: Vec<usize> = (0..gt.num_irreps())
            .filter(|&i| {
                let ip: Complex64 = kg
                    .elements()
                    .map(|x| gt.complex_value_at(i, k.members()[x]) * kt.complex_value_at(o.representative, x).conj())
                    .sum();
                ip.norm() / kg.order() as f64 > 0.5
            })
            .map(|i| gt.dims[i])
            .collect();
        dims_over.sort_unstable();
        let mut expected: Vec<usize> = pd.iter().map(|d| o.points.len() * o.dim * d).collect();
        expected.sort_unstable();
        orbits.push(FrulesOrbit {
            representative: o.representative,
            orbit_size: o.points.len(),
            dim: o.dim,
            class: o.class.clone(),
            regular_classes: reg,
            projective_dims: pd,
            dims_over,
            expected_dims: expected,
        });
    }
    let total: usize = orbits.iter().map(|o| o.regular_classes).sum();
    let gd = build_action_groupoid(&datum.band);
    let parts: Vec<Cochain> = datum.orbits.iter().map(|o| o.cocycle.clone()).collect();
    let c = assemble_gerbe(&gd, &parts)?;
    let h = groupoid_cohomology(&gd, 2)?;
    let gerbe = gerbe_decompose(&gd, &h, &c)?;
    let gerbe_total = twisted_rep_count(&gerbe).total;
    let irreps = gt.num_irreps();
    let count_holds = irreps == total && gerbe_total == total;
    let dims_hold = orbits.iter().all(|o| o.dims_over == o.expected_dims && o.projective_dims.len() == o.regular_classes);
    let terms: Vec<String> = orbits.iter().map(|o| o.regular_classes.to_string()).collect();
    let line = format!("{irreps} = {}", terms.join(" + "));
    Ok(FrulesReport { irreps, orbits, total, gerbe_total, count_holds, dims_hold, line })
}
