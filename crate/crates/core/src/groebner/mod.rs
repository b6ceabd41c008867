//! Gröbner bases for ideals and submodules of free modules.

mod engine;
mod ideal;
mod module;
mod order;

pub use ideal::GroebnerBasis;
pub use module::{module_membership, ModuleGroebnerBasis, ModuleVector};
pub use order::MonomialOrder;

use crate::error::Result;
use crate::fp_poly::Poly;

pub fn buchberger(gens: &[Poly], order: MonomialOrder) -> Result<GroebnerBasis> {
    GroebnerBasis::new(gens, order)
}

pub fn normal_form(f: &Poly, basis: &GroebnerBasis) -> Result<Poly> {
    basis.normal_form(f)
}

/// Whether `f ∈ (gens)`, with verified cofactors when `certificate` is set.
pub fn ideal_membership(
    f: &Poly,
    gens: &[Poly],
    order: MonomialOrder,
    certificate: bool,
) -> Result<(bool, Option<Vec<Poly>>)> {
    if certificate {
        let cof = GroebnerBasis::with_cofactors(gens, order)?.membership_certificate(f)?;
        Ok((cof.is_some(), cof))
    } else {
        Ok((GroebnerBasis::new(gens, order)?.contains(f)?, None))
    }
}
