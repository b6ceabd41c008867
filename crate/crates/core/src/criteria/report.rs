use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::SingularityType;
use crate::error::{Error, Result};
use crate::fp_poly::{format_monomial, parse_poly, Monomial, Poly, Ring, RingRef, Style};
use crate::groebner::MonomialOrder;

pub const REPORT_VERSION: &str = "fliftlab/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Smooth,
    NotIsolated,
    Classified,
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Smooth => "smooth",
            Status::NotIsolated => "not_isolated",
            Status::Classified => "classified",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub fedder_survivor: Option<Monomial>,
    /// Constant term of `s = σ(F_* 1)`.
    pub sigma_trace_constant: u32,
    /// `g_i = −σ(F_* Δ₁(f_i))`, one per equation.
    pub g: Vec<Poly>,
    /// Normal form of the residual, one entry per equation; all zero iff membership holds.
    pub remainder: Vec<Poly>,
    /// Coefficients over the membership generators, in the order
    /// `f, f_{x_1}^p, ..., f_{x_n}^p` (hypersurface) or the module generators
    /// `w_1..w_n, f_j e_i` (complete intersection).
    pub cofactors: Option<Vec<Poly>>,
    /// Membership was decided only at the origin, after localizing away
    /// other singular points.
    pub localized: bool,
}

/// Per-stage wall time in milliseconds.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Timings {
    pub isolated: f64,
    pub fedder: f64,
    pub delta1: f64,
    pub groebner: f64,
    pub total: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LiftabilityReport {
    pub ring: RingRef,
    pub generators: Vec<Poly>,
    pub status: Status,
    pub singularity: SingularityType,
    pub order: MonomialOrder,
    f_pure: bool,
    f_liftable: bool,
    conclusive: bool,
    pub certificate: Certificate,
    pub timings: Timings,
}

impl LiftabilityReport {
    pub(crate) fn skeleton(gens: &[Poly], order: MonomialOrder) -> Self {
        LiftabilityReport {
            ring: gens[0].ring().clone(),
            generators: gens.to_vec(),
            status: Status::Classified,
            singularity: SingularityType::IsolatedAtOriginOnly,
            order,
            f_pure: false,
            f_liftable: false,
            conclusive: false,
            certificate: Certificate {
                fedder_survivor: None,
                sigma_trace_constant: 0,
                g: Vec::new(),
                remainder: Vec::new(),
                cofactors: None,
                localized: false,
            },
            timings: Timings::default(),
        }
    }

    /// Rejects `f_liftable` without `f_pure`: an F-liftable singularity is F-pure.
    pub(crate) fn set_verdict(
        &mut self,
        f_pure: bool,
        f_liftable: bool,
        conclusive: bool,
    ) -> Result<()> {
        if f_liftable && !f_pure {
            return Err(Error::Precondition(
                "F-liftable verdict without F-purity".into(),
            ));
        }
        self.f_pure = f_pure;
        self.f_liftable = f_liftable;
        self.conclusive = conclusive;
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.ring.p()
    }

    pub fn variables(&self) -> &[String] {
        self.ring.vars()
    }

    pub fn f_pure(&self) -> bool {
        self.f_pure
    }

    pub fn f_liftable(&self) -> bool {
        self.f_liftable
    }

    pub fn conclusive(&self) -> bool {
        self.conclusive
    }

    /// Serializable form. Timings are zeroed unless `timings` is set so that
    /// repeated runs print identical bytes.
    pub fn to_json(&self, timings: bool) -> ReportJson {
        let show = |fs: &[Poly]| fs.iter().map(Poly::to_string).collect::<Vec<_>>();
        let c = &self.certificate;
        ReportJson {
            version: REPORT_VERSION.to_string(),
            label: None,
            p: self.p(),
            variables: self.variables().to_vec(),
            generators: show(&self.generators),
            status: self.status,
            singularity: self.singularity,
            f_pure: self.f_pure,
            f_liftable: self.f_liftable,
            conclusive: self.conclusive,
            order: self.order,
            certificate: CertificateJson {
                fedder_survivor: c
                    .fedder_survivor
                    .as_ref()
                    .map(|m| format_monomial(&self.generators[0], m, Style::Canonical)),
                sigma_trace_constant: c.sigma_trace_constant,
                g: show(&c.g),
                remainder: show(&c.remainder),
                cofactors: c.cofactors.as_deref().map(show),
                localized: c.localized,
            },
            timings_ms: if timings {
                self.timings
            } else {
                Timings::default()
            },
        }
    }
}

/// Identifies a catalog instance inside a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Label {
    pub family: String,
    pub params: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub fedder_survivor: Option<String>,
    pub sigma_trace_constant: u32,
    pub g: Vec<String>,
    pub remainder: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cofactors: Option<Vec<String>>,
    #[serde(default)]
    pub localized: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Label>,
    pub p: u32,
    pub variables: Vec<String>,
    pub generators: Vec<String>,
    pub status: Status,
    pub singularity: SingularityType,
    pub f_pure: bool,
    pub f_liftable: bool,
    pub conclusive: bool,
    pub order: MonomialOrder,
    pub certificate: CertificateJson,
    pub timings_ms: Timings,
}

impl ReportJson {
    pub fn with_label(mut self, label: Label) -> Self {
        self.label = Some(label);
        self
    }

    /// Independent re-check of a positive hypersurface verdict from the
    /// printed data alone: rebuilds the residual from `g` and verifies
    /// `residual = c_0 f + Σ c_k (∂f/∂x_k)^p`. Needs cofactors.
    pub fn recheck_hypersurface(&self) -> Result<bool> {
        let ring = Ring::new(&self.variables, self.p as u64)?;
        let parse_all = |v: &[String]| {
            v.iter()
                .map(|s| parse_poly(s, &ring))
                .collect::<Result<Vec<_>>>()
        };
        let gens = parse_all(&self.generators)?;
        let [f] = gens.as_slice() else {
            return Err(Error::Precondition("not a hypersurface report".into()));
        };
        let Some(cof) = &self.certificate.cofactors else {
            return Err(Error::Precondition("report carries no cofactors".into()));
        };
        let cof = parse_all(cof)?;
        let g = parse_all(&self.certificate.g)?;
        let split = crate::frobsplit::build_splitting(std::slice::from_ref(f))?;
        let d = crate::frobsplit::delta1(f)?;
        let residual = split.s.frobenius()?.mul(&d)?.add(&g[0].frobenius()?)?;
        let mut gens = vec![f.clone()];
        gens.extend(crate::frobsplit::bracket_power(&f.gradient())?);
        if cof.len() != gens.len() {
            return Ok(false);
        }
        let mut acc = Poly::zero(&ring);
        for (c, h) in cof.iter().zip(&gens) {
            acc = acc.add(&c.mul(h)?)?;
        }
        Ok(acc == residual)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::{classify, ClassifyOptions};

    #[test]
    fn verdict_invariant() {
        let r = Ring::new(&["x", "y"], 3).unwrap();
        let mut rep = LiftabilityReport::skeleton(&[Poly::var(&r, 0)], MonomialOrder::Degrevlex);
        assert!(rep.set_verdict(false, true, true).is_err());
        assert!(rep.set_verdict(true, true, true).is_ok());
        assert!(rep.f_liftable());
    }

    #[test]
    fn json_roundtrip_and_recheck() {
        let r = Ring::new(&["x", "y", "z"], 3).unwrap();
        let f = parse_poly("z^2+x^3+y^4+x^2*y^2", &r).unwrap();
        let opts = ClassifyOptions {
            certificates: true,
            ..Default::default()
        };
        let json = classify(&[f], &opts).unwrap().to_json(false);
        let text = serde_json::to_string_pretty(&json).unwrap();
        let back: ReportJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, json);
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), text);
        assert!(text.contains("\"version\": \"fliftlab/1\""));
        assert!(back.recheck_hypersurface().unwrap());

        let mut forged = back.clone();
        forged.certificate.g = vec!["x".into()];
        assert!(!forged.recheck_hypersurface().unwrap());
    }
}
