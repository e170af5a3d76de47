use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::{add_cx, embed_vec_k, neg_cx, Embedding, PointedFusionDatum};
use crate::abelian::zmod::lcm;
use crate::abelian::FinAbGroup;
use crate::cohomology::{is_cocycle, BarComplex, Cochain, Cohomology};
use crate::group::{quotient_with_section, FiniteGroup, Quotient, SubgroupDatum};
use crate::{Error, Result};

/// `H^2(K, C^×)` with the conjugation action of `G` on it.
pub struct DerivationData {
    pub group: FiniteGroup,
    pub kernel: SubgroupDatum,
    pub quotient: Quotient,
    pub kernel_bar: BarComplex,
    pub h2: Cohomology,
    /// `inv_conj[g][h] = g⁻¹ h g` in local indices of `K`
    inv_conj: Vec<Vec<usize>>,
}

impl DerivationData {
    pub fn new(g: &FiniteGroup, k: &SubgroupDatum, level: u64) -> Result<Self> {
        let quotient = quotient_with_section(g, k)?;
        let kernel_bar = BarComplex::cx(&k.as_group(g));
        let h2 = Cohomology::compute(&kernel_bar, 2, level)?;
        let inv_conj = g
            .elements()
            .map(|x| {
                k.members()
                    .iter()
                    .map(|&h| k.index_of(g.mul(g.mul(g.inv(x), h), x)).expect("normal subgroup"))
                    .collect()
            })
            .collect();
        Ok(DerivationData { group: g.clone(), kernel: k.clone(), quotient, kernel_bar, h2, inv_conj })
    }

    pub fn structure(&self) -> &FinAbGroup {
        self.h2.structure()
    }

    /// `(g·c)(h, h') = c(g⁻¹hg, g⁻¹h'g)` on cochains of `K`.
    pub fn act_cochain(&self, g: usize, c: &Cochain) -> Cochain {
        self.kernel_bar.pullback(&self.kernel_bar, &self.inv_conj[g], c)
    }

    /// The induced action of `q ∈ Q` on class coordinates.
    pub fn act(&self, q: usize, coords: &[u64]) -> Result<Vec<u64>> {
        let rep = self.h2.representative(coords);
        self.h2.classify(&self.act_cochain(self.quotient.s(q), &rep))
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.structure().add(a, b)
    }

    /// All derivations `δ(qq') = δ(q) + q·δ(q')`, as lists of classes indexed by `Q`.
    pub fn derivations(&self) -> Result<Vec<Vec<Vec<u64>>>> {
        let q = &self.quotient.quotient;
        let gens = q.generators();
        let classes = self.h2.classes();
        let total = (classes.len() as u128).checked_pow(gens.len() as u32).unwrap_or(u128::MAX);
        let cap = crate::config::caps().max_classes as u128;
        if total > cap {
            return Err(Error::cap("derivation candidates", total as usize, cap as usize));
        }
        // act_table[q][class index] = class index of q·class
        let act_table: Vec<Vec<usize>> = q
            .elements()
            .map(|qe| {
                classes
                    .iter()
                    .map(|c| self.act(qe, c).map(|v| self.structure().index(&v)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let mut out = Vec::new();
        let mut choice = vec![0usize; gens.len()];
        loop {
            if let Some(d) = self.extend(&gens, &choice, &classes, &act_table) {
                out.push(d);
            }
            let mut i = 0;
            while i < choice.len() {
                choice[i] += 1;
                if choice[i] < classes.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
        }
        Ok(out)
    }

    fn extend(&self, gens: &[usize], choice: &[usize], classes: &[Vec<u64>], act: &[Vec<usize>]) -> Option<Vec<Vec<u64>>> {
        let q = &self.quotient.quotient;
        let st = self.structure();
        let mut val: Vec<Option<usize>> = vec![None; q.order()];
        val[0] = Some(0);
        let mut queue = VecDeque::from([0usize]);
        // δ(x·g) = δ(x) + x·δ(g)
        while let Some(x) = queue.pop_front() {
            for (gi, &g) in gens.iter().enumerate() {
                let y = q.mul(x, g);
                let v = st.index(&self.add(&classes[val[x]?], &classes[act[x][choice[gi]]]));
                match val[y] {
                    None => {
                        val[y] = Some(v);
                        queue.push_back(y);
                    }
                    Some(w) if w != v => return None,
                    _ => {}
                }
            }
        }
        let d: Vec<Vec<u64>> = val.iter().map(|v| classes[v.expect("generated")].clone()).collect();
        let ok = q.elements().all(|a| {
            q.elements().all(|b| {
                let rhs = self.add(&d[a], &classes[act[a][st.index(&d[b])]]);
                d[q.mul(a, b)] == rhs
            })
        });
        ok.then_some(d)
    }

    /// The principal derivation `q ↦ q·x − x`.
    pub fn principal(&self, x: &[u64]) -> Result<Vec<Vec<u64>>> {
        let st = self.structure();
        self.quotient.quotient.elements().map(|q| Ok(st.add(&self.act(q, x)?, &st.neg(x)))).collect()
    }

    /// `H^2(K)^Q`.
    pub fn invariants(&self) -> Result<Vec<Vec<u64>>> {
        let mut out = Vec::new();
        for c in self.h2.classes() {
            if self.quotient.quotient.elements().map(|q| self.act(q, &c)).collect::<Result<Vec<_>>>()?.iter().all(|v| v == &c) {
                out.push(c);
            }
        }
        Ok(out)
    }

    /// Conjugation 2-cochain of `g` on `K`, corrected by `η`:
    /// `θ_g(h,h') = ω(g,h,h') + ω(ghg⁻¹,gh'g⁻¹,g) − ω(ghg⁻¹,g,h')` minus
    /// `η(ghg⁻¹, gh'g⁻¹) − η(h,h')`.
    pub fn conjugation_cochain(&self, omega: &Cochain, eta: &Cochain, g: usize) -> Cochain {
        let grp = &self.group;
        let gb = BarComplex::cx(grp);
        let mem = self.kernel.members();
        let level = lcm(omega.modulus, eta.modulus);
        let (fo, fe) = (level / omega.modulus, level / eta.modulus);
        let w = |a: usize, b: usize, c: usize| gb.value(omega, &[a, b, c])[0] * fo;
        let e = |a: usize, b: usize| self.kernel_bar.value(eta, &[a, b])[0] * fe;
        let local = |x: usize| self.kernel.index_of(x).expect("normal subgroup");
        self.kernel_bar.cochain_from_fn(2, level, |t| {
            let (h, h2) = (mem[t[0]], mem[t[1]]);
            let (ch, ch2) = (grp.conj(g, h), grp.conj(g, h2));
            let theta = w(g, h, h2) as i64 + w(ch, ch2, g) as i64 - w(ch, g, h2) as i64;
            vec![theta + e(local(ch), local(ch2)) as i64 - e(t[0], t[1]) as i64]
        })
    }

    /// `φ(g) = g·[θ_g]`, a derivation `G → H^2(K)` that factors through `Q`.
    pub fn phi(&self, omega: &Cochain, eta: &Cochain, g: usize) -> Result<(Cochain, bool)> {
        let c = self.act_cochain(g, &self.conjugation_cochain(omega, eta, g));
        let ok = is_cocycle(&self.kernel_bar, &c)?;
        Ok((c, ok))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaReport {
    /// `H^2(K, C^×)`
    pub structure: FinAbGroup,
    /// `φ_ω(q)` per element of `Q`
    pub values: Vec<Vec<u64>>,
    pub cocycles: bool,
    pub derivation: bool,
    /// `φ_ω` is constant on cosets of `K`
    pub descends: bool,
    /// grades `q` whose component is a twisted `Rep^{φ(q)}(K)`
    pub twisted: Vec<usize>,
}

impl AlphaReport {
    pub fn is_zero(&self) -> bool {
        self.twisted.is_empty()
    }

    pub fn verified(&self) -> bool {
        self.cocycles && self.derivation && self.descends
    }
}

/// `α(ω, η)`: the derivation `Q → H^2(K)` of the relative class `(ω, η)`.
pub fn alpha_of(data: &DerivationData, omega: &Cochain, eta: &Cochain) -> Result<AlphaReport> {
    let g = &data.group;
    let q = &data.quotient.quotient;
    let mut per_g = Vec::with_capacity(g.order());
    let mut cocycles = true;
    for x in g.elements() {
        let (c, ok) = data.phi(omega, eta, x)?;
        cocycles &= ok;
        if !ok {
            return Err(Error::Convention(format!("conjugation cochain of element {x} is not a 2-cocycle")));
        }
        per_g.push(data.h2.classify(&c)?);
    }
    let st = data.structure();
    let proj = &data.quotient.proj;
    let descends = g.elements().all(|x| per_g[x] == per_g[data.quotient.s(proj.apply(x))]);
    let mut derivation = true;
    for a in g.elements() {
        for b in g.elements() {
            let rhs = st.add(&per_g[a], &data.act(proj.apply(a), &per_g[b])?);
            derivation &= per_g[g.mul(a, b)] == rhs;
        }
    }
    let values: Vec<Vec<u64>> = q.elements().map(|qe| per_g[data.quotient.s(qe)].clone()).collect();
    let twisted = q.elements().filter(|&qe| values[qe].iter().any(|&v| v != 0)).collect();
    Ok(AlphaReport { structure: st.clone(), values, cocycles, derivation, descends, twisted })
}

/// `α` for a graded pointed datum; `ω|_K` is trivialized by the recorded `η`
/// or, failing that, by solving `dη = ω|_K`.
pub fn conjugation_cocycle_alpha(d: &PointedFusionDatum) -> Result<AlphaReport> {
    let grading = d.grading.as_ref().ok_or_else(|| Error::Mismatch("datum carries no grading".into()))?;
    let k = &grading.kernel;
    let eta = match &grading.eta {
        Some(e) => e.clone(),
        None => match embed_vec_k(d, k)? {
            Embedding::Embedded(e) => e.eta,
            Embedding::Obstructed { .. } => {
                return Err(Error::Mismatch("ω does not restrict trivially to the kernel".into()));
            }
        },
    };
    let data = DerivationData::new(&d.group, k, lcm(d.omega.modulus, eta.modulus))?;
    // the recorded η must trivialize ω|_K
    let (kb, res) = super::restrict_to(d, k);
    let deta = crate::cohomology::apply_differential(&kb, &eta)?;
    if !add_cx(&deta, &neg_cx(&res)).is_zero() {
        return Err(Error::Mismatch("η does not satisfy dη = ω|_K".into()));
    }
    alpha_of(&data, &d.omega, &eta)
}

/// All derivations `Q → H^2(K)` together with the principal ones.
pub fn derivations(g: &FiniteGroup, k: &SubgroupDatum) -> Result<(Vec<Vec<Vec<u64>>>, BTreeSet<Vec<Vec<u64>>>)> {
    let data = DerivationData::new(g, k, 1)?;
    let all = data.derivations()?;
    let principal = data.h2.classes().iter().map(|x| data.principal(x)).collect::<Result<BTreeSet<_>>>()?;
    Ok((all, principal))
}
