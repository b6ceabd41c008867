//! Closed forms for the residual and Δ₁ in characteristic 2, recomputed
//! against the general machinery.

use super::{make_cusp_hypersurface, make_rdp};
use crate::criteria::residual_polynomial;
use crate::error::Result;
use crate::fp_poly::{parse_poly, Poly};
use crate::frobsplit::delta1;
use crate::groebner::{GroebnerBasis, MonomialOrder};

#[derive(Debug, Clone)]
pub struct Identity {
    pub name: String,
    /// Computed side.
    pub lhs: Poly,
    /// Closed form.
    pub rhs: Poly,
    /// Equality is asserted modulo this polynomial when present.
    pub modulo: Option<Poly>,
}

impl Identity {
    pub fn holds(&self) -> Result<bool> {
        let diff = self.lhs.sub(&self.rhs)?;
        match &self.modulo {
            None => Ok(diff.is_zero()),
            Some(m) => GroebnerBasis::new(std::slice::from_ref(m), MonomialOrder::Degrevlex)?
                .contains(&diff),
        }
    }
}

fn square(f: &Poly) -> Result<Poly> {
    f.mul(f)
}

/// `D_{2n}^{n-1}`: residual `= z²f + (x²+xy^{n-1}+xz+y^{2n-2}+y^{n-1}z)·f_z²`.
pub fn d_even_identity(n: u32) -> Result<Identity> {
    let f = make_rdp("D_2n^{n-1}", 2, &[n])?;
    let r = f.ring();
    let c0 = parse_poly("z^2", r)?;
    let cz = parse_poly(
        &format!("x^2+x*y^{}+x*z+y^{}+y^{}*z", n - 1, 2 * n - 2, n - 1),
        r,
    )?;
    let rhs = c0
        .mul(&f)?
        .add(&cz.mul(&square(&f.partial_derivative(2)?)?)?)?;
    Ok(Identity {
        name: format!("D_2n^(n-1) residual, n = {n}"),
        lhs: residual_polynomial(&f)?,
        rhs,
        modulo: None,
    })
}

/// `D_{2n+1}^{n-1}`: residual `= (z²+y^{2n-1})f + (x²+xy^{n-1}+y^{2n-3})·f_x²
/// + (x²+z²+xz+y^{n-1}z)·f_z²`.
pub fn d_odd_identity(n: u32) -> Result<Identity> {
    let f = make_rdp("D_2n+1^{n-1}", 2, &[n])?;
    let r = f.ring();
    let c0 = parse_poly(&format!("z^2+y^{}", 2 * n - 1), r)?;
    let cx = parse_poly(&format!("x^2+x*y^{}+y^{}", n - 1, 2 * n - 3), r)?;
    let cz = parse_poly(&format!("x^2+z^2+x*z+y^{}*z", n - 1), r)?;
    let rhs = c0
        .mul(&f)?
        .add(&cx.mul(&square(&f.partial_derivative(0)?)?)?)?
        .add(&cz.mul(&square(&f.partial_derivative(2)?)?)?)?;
    Ok(Identity {
        name: format!("D_2n+1^(n-1) residual, n = {n}"),
        lhs: residual_polynomial(&f)?,
        rhs,
        modulo: None,
    })
}

/// `Δ₁(x^a+y^b+z^c+xyz) = x^a y^b + x^a z^c + y^b z^c + xyz(x^a+y^b+z^c)` at `p = 2`.
pub fn cusp_delta1_identity(a: u32, b: u32, c: u32) -> Result<Identity> {
    let f = make_cusp_hypersurface(2, a, b, c)?;
    let rhs = parse_poly(
        &format!("x^{a}*y^{b}+x^{a}*z^{c}+y^{b}*z^{c}+x*y*z*(x^{a}+y^{b}+z^{c})"),
        f.ring(),
    )?;
    Ok(Identity {
        name: format!("cusp Delta_1, (a,b,c) = ({a},{b},{c})"),
        lhs: delta1(&f)?,
        rhs,
        modulo: None,
    })
}

/// At `p = 2`, the cusp residual is `x^a y^b + x^a z^c + y^b z^c`, plus
/// `x^{a-1} y^{b-1} z^{c-1}` when `a, b, c` are all odd, modulo `f`.
pub fn cusp_residual_identity(a: u32, b: u32, c: u32) -> Result<Identity> {
    let f = make_cusp_hypersurface(2, a, b, c)?;
    let mut text = format!("x^{a}*y^{b}+x^{a}*z^{c}+y^{b}*z^{c}");
    if a % 2 == 1 && b % 2 == 1 && c % 2 == 1 {
        text.push_str(&format!("+x^{}*y^{}*z^{}", a - 1, b - 1, c - 1));
    }
    Ok(Identity {
        name: format!("cusp residual mod f, (a,b,c) = ({a},{b},{c})"),
        lhs: residual_polynomial(&f)?,
        rhs: parse_poly(&text, f.ring())?,
        modulo: Some(f),
    })
}

pub const CUSP_IDENTITY_TUPLES: [(u32, u32, u32); 3] = [(3, 4, 5), (2, 3, 7), (3, 3, 4)];

/// Every identity, D families for `n = 2..=n_max`.
pub fn all_identities(n_max: u32) -> Result<Vec<Identity>> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        out.push(d_even_identity(n)?);
    }
    for n in 2..=n_max {
        out.push(d_odd_identity(n)?);
    }
    for (a, b, c) in CUSP_IDENTITY_TUPLES {
        out.push(cusp_delta1_identity(a, b, c)?);
    }
    for (a, b, c) in CUSP_IDENTITY_TUPLES {
        out.push(cusp_residual_identity(a, b, c)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold() {
        for id in all_identities(6).unwrap() {
            assert!(id.holds().unwrap(), "{}: {} vs {}", id.name, id.lhs, id.rhs);
        }
    }

    #[test]
    fn a_wrong_closed_form_is_caught() {
        let mut id = d_even_identity(3).unwrap();
        id.rhs = id.rhs.add(&Poly::var(id.rhs.ring(), 0)).unwrap();
        assert!(!id.holds().unwrap());
    }
}
