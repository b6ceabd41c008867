use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp_poly::Poly;
use crate::groebner::{GroebnerBasis, MonomialOrder};

/// Shape of the singular locus near the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularityType {
    /// The origin is not a singular point of the zero set.
    Smooth,
    IsolatedAtOriginOnly,
    /// Positive-dimensional singular locus through the origin, or one that
    /// cannot be certified finite.
    NotIsolated,
    /// Finitely many singular points, the origin among them.
    SingularElsewhere,
}

impl SingularityType {
    pub fn name(&self) -> &'static str {
        match self {
            SingularityType::Smooth => "smooth",
            SingularityType::IsolatedAtOriginOnly => "isolated_at_origin_only",
            SingularityType::NotIsolated => "not_isolated",
            SingularityType::SingularElsewhere => "singular_elsewhere",
        }
    }
}

fn determinant(mut rows: Vec<Vec<Poly>>) -> Result<Poly> {
    if rows.len() == 1 {
        return Ok(rows.pop().unwrap().pop().unwrap());
    }
    let first = rows.remove(0);
    let mut acc = Poly::zero(first[0].ring());
    for (j, entry) in first.iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = entry.mul(&determinant(minor)?)?;
        acc = if j % 2 == 0 {
            acc.add(&term)?
        } else {
            acc.sub(&term)?
        };
    }
    Ok(acc)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The maximal (`m × m`) minors of the Jacobian matrix of `gens`.
pub fn jacobian_minors(gens: &[Poly]) -> Result<Vec<Poly>> {
    let m = gens.len();
    let n = gens.first().map_or(0, Poly::nvars);
    if m == 0 || m > n {
        return Err(Error::InvalidInput(format!(
            "{m} equations in {n} variables cannot define a complete intersection"
        )));
    }
    let jac: Vec<Vec<Poly>> = gens.iter().map(Poly::gradient).collect();
    let mut out = Vec::new();
    for cols in subsets(n, m) {
        let rows = jac
            .iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        let d = determinant(rows)?;
        if !d.is_zero() {
            out.push(d);
        }
    }
    Ok(out)
}

/// `(gens) + (maximal minors of the Jacobian)`; for one equation this is
/// `(f, f_{x_1}, ..., f_{x_n})`.
pub fn singular_locus_ideal(gens: &[Poly]) -> Result<Vec<Poly>> {
    let mut j = gens.to_vec();
    j.extend(jacobian_minors(gens)?);
    Ok(j)
}

pub fn isolated_singularity_check(gens: &[Poly], order: MonomialOrder) -> Result<SingularityType> {
    let basis = GroebnerBasis::new(&singular_locus_ideal(gens)?, order)?;
    if basis.is_unit_ideal() || !basis.vanishes_at_origin() {
        return Ok(SingularityType::Smooth);
    }
    if !basis.is_zero_dimensional() {
        return Ok(SingularityType::NotIsolated);
    }
    Ok(if basis.supported_only_at_origin()? {
        SingularityType::IsolatedAtOriginOnly
    } else {
        SingularityType::SingularElsewhere
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp_poly::{parse_poly, Ring};

    fn check(src: &[&str], vars: &[&str], p: u64) -> SingularityType {
        let r = Ring::new(vars, p).unwrap();
        let gens: Vec<_> = src.iter().map(|s| parse_poly(s, &r).unwrap()).collect();
        isolated_singularity_check(&gens, MonomialOrder::Degrevlex).unwrap()
    }

    #[test]
    fn hypersurfaces() {
        let xyz = ["x", "y", "z"];
        assert_eq!(
            check(&["z^2+x^2*y+x*y^2+x*y*z"], &xyz, 2),
            SingularityType::IsolatedAtOriginOnly
        );
        assert_eq!(check(&["x"], &xyz, 3), SingularityType::Smooth);
        assert_eq!(check(&["x^2"], &xyz, 3), SingularityType::NotIsolated);
        assert_eq!(check(&["x+1"], &xyz, 3), SingularityType::Smooth);
        // A_1 is singular at the origin and at no other point
        assert_eq!(
            check(&["z^2+x*y"], &xyz, 3),
            SingularityType::IsolatedAtOriginOnly
        );
        // the cusp with odd exponents picks up extra singular points over F_2-bar
        assert_eq!(
            check(&["x^3+y^3+z^5+x*y*z"], &xyz, 2),
            SingularityType::SingularElsewhere
        );
    }

    #[test]
    fn complete_intersections() {
        let v = ["x", "y", "z", "w"];
        assert_eq!(check(&["x", "y"], &v, 2), SingularityType::Smooth);
        assert_eq!(
            check(&["x*y+z^3+w^2", "z*w+x^2+y^2"], &v, 2),
            SingularityType::IsolatedAtOriginOnly
        );
        // (x, y^2): singular along the whole (z, w)-plane
        assert_eq!(check(&["x", "y^2"], &v, 3), SingularityType::NotIsolated);
    }

    #[test]
    fn minors() {
        let r = Ring::new(&["x", "y", "z"], 7).unwrap();
        let gens = [parse_poly("x*y", &r).unwrap(), parse_poly("z", &r).unwrap()];
        let mut got = jacobian_minors(&gens).unwrap();
        got.sort_by_key(|p| p.to_string());
        assert_eq!(
            got,
            vec![parse_poly("x", &r).unwrap(), parse_poly("y", &r).unwrap()]
        );
        let too_many = [
            gens[0].clone(),
            gens[1].clone(),
            gens[1].clone(),
            gens[1].clone(),
        ];
        assert!(jacobian_minors(&too_many).is_err());
    }
}
