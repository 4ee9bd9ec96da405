use super::datum::ADHMDatum;
use crate::error::{Error, Result};
use crate::jordan::{module_type, NilpotentRep};
use crate::rootdata::{nu_map, Family};

/// On `A_{N-1}` with `D` concentrated at the first vertex, the operator
/// `T = q_1 p_1` on `D_1`; asserts `T^N = 0` and that its type is `nu` of the datum's type.
pub fn a_type_bridge(datum: &ADHMDatum) -> Result<NilpotentRep> {
    if datum.graph.family() != Family::A {
        return Err(Error::NotTypeA);
    }
    if datum.d[1..].iter().any(|&x| x != 0) {
        return Err(Error::NotConcentrated);
    }
    let t = datum.q[0].mul(&datum.p[0]);
    let n = datum.rank() + 1;
    assert!(t.pow(n).is_zero(), "T^N is not zero");
    let rep = NilpotentRep::new(t)?;
    let expected = nu_map(&datum.type_of()?)?;
    assert_eq!(module_type(&rep), expected, "bridge type disagrees with nu");
    Ok(rep)
}
