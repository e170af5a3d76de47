use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::{is_cocycle, BarComplex, Cochain};
use crate::config::caps;
use crate::cyclotomic::{nullity, Cyclo, CycloField};
use crate::group::FiniteGroup;
use crate::{Error, Result};

/// An algebra with a basis closed under multiplication up to roots of
/// unity: `e_i e_j = ζ_N^e e_k` or `0`.
pub trait MonomialAlgebra {
    fn dim(&self) -> usize;
    /// `N`, the order of the roots of unity in the structure constants.
    fn root_order(&self) -> u64;
    fn product(&self, i: usize, j: usize) -> Option<(usize, u64)>;
    /// Basis elements generating the algebra.
    fn generators(&self) -> Vec<usize>;
    fn basis_label(&self, i: usize) -> String;
}

/// Dimension of the center, solving `zx = xz` for the algebra generators
/// `x` over `Q(ζ_N)`.
pub fn center_dimension(a: &dyn MonomialAlgebra) -> Result<usize> {
    let dim = a.dim();
    let cap = caps().max_algebra_dim;
    if dim > cap {
        return Err(Error::cap("algebra dimension", dim, cap));
    }
    let field = CycloField::new(a.root_order());
    let mut rows = Vec::new();
    for x in a.generators() {
        let mut by_target: Vec<Vec<(usize, Cyclo)>> = vec![Vec::new(); dim];
        for i in 0..dim {
            if let Some((k, e)) = a.product(i, x) {
                by_target[k].push((i, Cyclo::zeta(&field, e as i64)));
            }
            if let Some((k, e)) = a.product(x, i) {
                by_target[k].push((i, Cyclo::zeta(&field, e as i64).neg()));
            }
        }
        rows.extend(by_target.into_iter().filter(|r| !r.is_empty()));
    }
    Ok(nullity(rows, dim))
}

/// First basis triple with `(e_i e_j) e_k ≠ e_i (e_j e_k)`, if any.
pub fn associativity_violation(a: &dyn MonomialAlgebra) -> Option<[usize; 3]> {
    let n = a.root_order();
    let dim = a.dim();
    for i in 0..dim {
        for j in 0..dim {
            let ij = a.product(i, j);
            for k in 0..dim {
                let left = ij.and_then(|(m, e)| a.product(m, k).map(|(r, f)| (r, (e + f) % n)));
                let right = a.product(j, k).and_then(|(m, e)| a.product(i, m).map(|(r, f)| (r, (e + f) % n)));
                if left != right {
                    return Some([i, j, k]);
                }
            }
        }
    }
    None
}

/// `{"root_order", "basis": [labels], "products": [[i, j, k, exponent]]}`.
pub fn structure_constants_json(a: &dyn MonomialAlgebra) -> Value {
    let mut products = Vec::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            if let Some((k, e)) = a.product(i, j) {
                products.push(json!([i, j, k, e]));
            }
        }
    }
    json!({
        "root_order": a.root_order(),
        "basis": (0..a.dim()).map(|i| a.basis_label(i)).collect::<Vec<_>>(),
        "products": products,
    })
}

/// `C_φK`: basis `u_k`, `u_k u_{k'} = ζ_N^{φ(k,k')} u_{kk'}`.
#[derive(Clone, Debug, Serialize)]
pub struct TwistedGroupAlgebra {
    #[serde(skip)]
    pub group: FiniteGroup,
    pub twist: Cochain,
}

pub fn twisted_group_algebra(k: &FiniteGroup, phi: &Cochain) -> Result<TwistedGroupAlgebra> {
    let bar = BarComplex::cx(k);
    if phi.degree != 2 || !is_cocycle(&bar, phi)? {
        return Err(Error::NotCocycle { witness: None });
    }
    Ok(TwistedGroupAlgebra { group: k.clone(), twist: phi.clone() })
}

impl MonomialAlgebra for TwistedGroupAlgebra {
    fn dim(&self) -> usize {
        self.group.order()
    }

    fn root_order(&self) -> u64 {
        self.twist.modulus
    }

    fn product(&self, i: usize, j: usize) -> Option<(usize, u64)> {
        let n = self.group.order();
        let e = if i == 0 || j == 0 { 0 } else { self.twist.values[(i - 1) * (n - 1) + (j - 1)] };
        Some((self.group.mul(i, j), e))
    }

    fn generators(&self) -> Vec<usize> {
        self.group.generators()
    }

    fn basis_label(&self, i: usize) -> String {
        format!("u[{}]", self.group.label(i))
    }
}
