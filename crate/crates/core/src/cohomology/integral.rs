use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::bar::BarComplex;
use super::complex::{CochainComplex, Cohomology};
use crate::abelian::{smith_diagonal, FinAbGroup};
use crate::group::FiniteGroup;
use crate::{Error, Result};

/// `H^n(G, Z)` for `n ≥ 1`: the torsion of the cokernel of the integral
/// differential `C^{n-1} → C^n` (normalized, trivial coefficients).
pub fn integral_cohomology(g: &FiniteGroup, n: usize) -> Result<FinAbGroup> {
    if n == 0 {
        return Err(Error::Mismatch("H^0(G, Z) = Z is not finite".into()));
    }
    let bar = BarComplex::cx(g);
    let d = bar.differential(n - 1);
    let dense = d.to_dense();
    let diag = smith_diagonal(&dense, d.ncols)?;
    let factors: Vec<u64> = diag
        .iter()
        .filter(|x| !x.is_one())
        .map(|x| x.magnitude().to_u64().ok_or_else(|| Error::Other("invariant factor overflow".into())))
        .collect::<Result<_>>()?;
    FinAbGroup::new(factors)
}

/// `H^n(G) := H^n(G, C^×)`, computed twice: as `H^{n+1}(G, Z)` and through
/// `μ_N` cocycles (`N` a multiple of `|G|`). The structures must coincide.
#[derive(Clone, Debug)]
pub struct CxCohomology {
    pub integral: FinAbGroup,
    pub classes: Cohomology,
}

impl CxCohomology {
    pub fn structure(&self) -> &FinAbGroup {
        &self.integral
    }

    pub fn order(&self) -> u128 {
        self.integral.order()
    }
}

impl Serialize for CxCohomology {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CxCohomology", 3)?;
        st.serialize_field("structure", &self.integral.factors())?;
        st.serialize_field("order", &(self.integral.order() as u64))?;
        st.serialize_field("modulus", &self.classes.modulus())?;
        st.end()
    }
}

pub fn cohomology_cx(g: &FiniteGroup, n: usize) -> Result<CxCohomology> {
    cohomology_cx_at(g, n, 1)
}

/// As [`cohomology_cx`], with representatives at a multiple of `hint`.
pub fn cohomology_cx_at(g: &FiniteGroup, n: usize, hint: u64) -> Result<CxCohomology> {
    let integral = integral_cohomology(g, n + 1)?;
    let classes = Cohomology::compute(&BarComplex::cx(g), n, hint)?;
    if classes.structure() != &integral {
        return Err(Error::Convention(format!(
            "H^{n}({}, C^x): integral route gives {}, root-of-unity route gives {}",
            g.name(),
            integral,
            classes.structure()
        )));
    }
    Ok(CxCohomology { integral, classes })
}
