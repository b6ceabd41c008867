use super::{Characteristic, Family, FamilyRegistry};
use crate::error::Result;
use crate::fp_poly::Poly;

/// `x^a + y^b + z^c + xyz` with `1/a + 1/b + 1/c < 1`.
pub struct CuspHypersurface;

impl Family for CuspHypersurface {
    fn id(&self) -> &'static str {
        "cusp_hyp"
    }

    fn param_names(&self) -> &'static [&'static str] {
        &["a", "b", "c"]
    }

    fn characteristic(&self) -> Characteristic {
        Characteristic::Any
    }

    fn check_params(&self, v: &[u32]) -> Result<(), String> {
        let (a, b, c) = (v[0] as u64, v[1] as u64, v[2] as u64);
        if a < 2 || b < 2 || c < 2 {
            return Err(format!("a, b, c >= 2 required, got ({a}, {b}, {c})"));
        }
        // 1/a + 1/b + 1/c < 1, cleared of denominators
        if b * c + a * c + a * b >= a * b * c {
            return Err(format!("1/{a} + 1/{b} + 1/{c} >= 1"));
        }
        Ok(())
    }

    fn equation_text(&self, _p: u32, v: &[u32]) -> Vec<String> {
        vec![format!("x^{}+y^{}+z^{}+x*y*z", v[0], v[1], v[2])]
    }
}

/// `(xy + z^a + w^b, zw + x^c + y^d)` with some exponent at least 3.
pub struct CuspCi;

impl Family for CuspCi {
    fn id(&self) -> &'static str {
        "cusp_ci"
    }

    fn param_names(&self) -> &'static [&'static str] {
        &["a", "b", "c", "d"]
    }

    fn variables(&self) -> &'static [&'static str] {
        &["x", "y", "z", "w"]
    }

    fn characteristic(&self) -> Characteristic {
        Characteristic::Any
    }

    fn check_params(&self, v: &[u32]) -> Result<(), String> {
        if v.iter().any(|&e| e < 2) {
            return Err(format!("all exponents >= 2 required, got {v:?}"));
        }
        if v.iter().all(|&e| e < 3) {
            return Err("at least one exponent >= 3 required".into());
        }
        Ok(())
    }

    fn equation_text(&self, _p: u32, v: &[u32]) -> Vec<String> {
        vec![
            format!("x*y+z^{}+w^{}", v[0], v[1]),
            format!("z*w+x^{}+y^{}", v[2], v[3]),
        ]
    }
}

pub fn make_cusp_hypersurface(p: u32, a: u32, b: u32, c: u32) -> crate::Result<Poly> {
    Ok(CuspHypersurface.instantiate(p, &[a, b, c])?.remove(0))
}

pub fn make_cusp_ci(p: u32, a: u32, b: u32, c: u32, d: u32) -> crate::Result<Vec<Poly>> {
    CuspCi.instantiate(p, &[a, b, c, d])
}

/// All admissible exponent tuples with entries in `2..=max`, lexicographically.
pub fn cusp_tuples(family: &str, max: u32) -> crate::Result<Vec<Vec<u32>>> {
    let reg = FamilyRegistry::default();
    let fam = reg.get(family)?;
    let k = fam.param_names().len();
    let mut out = Vec::new();
    let mut cur = vec![2u32; k];
    if max < 2 {
        return Ok(out);
    }
    loop {
        if fam.check_params(&cur).is_ok() {
            out.push(cur.clone());
        }
        // odometer increment, last entry fastest
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if cur[i] < max {
                cur[i] += 1;
                break;
            }
            cur[i] = 2;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp_poly::{parse_poly, Ring};
    use crate::Error;

    #[test]
    fn constructors() {
        let r = Ring::new(&["x", "y", "z"], 2).unwrap();
        assert_eq!(
            make_cusp_hypersurface(2, 3, 4, 5).unwrap(),
            parse_poly("x^3+y^4+z^5+x*y*z", &r).unwrap()
        );
        let err = make_cusp_hypersurface(2, 2, 2, 2).unwrap_err();
        assert!(
            matches!(&err, Error::Inadmissible { reason, .. } if reason.contains("1/2 + 1/2 + 1/2 >= 1"))
        );
        assert!(make_cusp_hypersurface(2, 2, 3, 6).is_err());
        assert!(make_cusp_hypersurface(2, 2, 3, 7).is_ok());
        let r4 = Ring::new(&["x", "y", "z", "w"], 2).unwrap();
        let ci = make_cusp_ci(2, 3, 2, 2, 2).unwrap();
        assert_eq!(ci[0], parse_poly("x*y+z^3+w^2", &r4).unwrap());
        assert_eq!(ci[1], parse_poly("z*w+x^2+y^2", &r4).unwrap());
        assert!(make_cusp_ci(2, 2, 2, 2, 2).is_err());
        assert!(make_cusp_hypersurface(4, 3, 4, 5).is_err());
    }

    #[test]
    fn tuple_enumeration() {
        let brute = |max: u32| {
            let mut n = 0;
            for a in 2..=max {
                for b in 2..=max {
                    for c in 2..=max {
                        // exact rational comparison
                        if (b * c + a * c + a * b) < a * b * c {
                            n += 1;
                        }
                    }
                }
            }
            n
        };
        for max in [1, 2, 3, 6, 10] {
            assert_eq!(cusp_tuples("cusp_hyp", max).unwrap().len(), brute(max));
        }
        let t = cusp_tuples("cusp_hyp", 7).unwrap();
        assert_eq!(t[0], vec![2, 3, 7]);
        assert!(t.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(cusp_tuples("cusp_ci", 6).unwrap().len(), 5usize.pow(4) - 1);
    }
}
