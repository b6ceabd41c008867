//! The classification pipeline: singular-locus screening, Fedder's F-purity
//! test, and the Δ₁ membership criterion for F-liftability of hypersurfaces
//! and complete intersections.

mod locus;
mod registry;
mod report;

use std::time::Instant;

pub use locus::{
    isolated_singularity_check, jacobian_minors, singular_locus_ideal, SingularityType,
};
pub use registry::{
    CompleteIntersectionCriterion, Criterion, CriterionRegistry, HypersurfaceCriterion,
};
pub use report::{
    Certificate, CertificateJson, Label, LiftabilityReport, ReportJson, Status, Timings,
    REPORT_VERSION,
};

use crate::error::{Error, Result};
use crate::fp_poly::{Monomial, Poly};
use crate::frobsplit::{apply_sigma, bracket_power, build_splitting, delta1, SplittingData};
use crate::groebner::{GroebnerBasis, ModuleGroebnerBasis, ModuleVector, MonomialOrder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassifyOptions {
    pub order: MonomialOrder,
    /// Track and emit membership cofactors.
    pub certificates: bool,
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn check_input(gens: &[Poly]) -> Result<()> {
    let first = gens
        .first()
        .ok_or_else(|| Error::InvalidInput("no polynomials given".into()))?;
    for g in gens {
        first.check_ambient(g)?;
        if g.is_zero() {
            return Err(Error::InvalidInput("zero polynomial".into()));
        }
        if g.is_constant() {
            return Err(Error::InvalidInput(format!("constant polynomial {g}")));
        }
    }
    if gens.len() > first.nvars() {
        return Err(Error::InvalidInput(format!(
            "{} equations in {} variables cannot define a complete intersection",
            gens.len(),
            first.nvars()
        )));
    }
    Ok(())
}

/// `s^p · Δ₁(f) + (−σ(F_* Δ₁(f)))^p` together with `g = −σ(F_* Δ₁(f))`.
fn residual_parts(f: &Poly, split: &SplittingData) -> Result<(Poly, Poly)> {
    let d = delta1(f)?;
    let g = apply_sigma(split, &d)?.neg();
    let residual = split.s.frobenius()?.mul(&d)?.add(&g.frobenius()?)?;
    Ok((residual, g))
}

/// The residual `s^p·Δ₁(f) + (−σ(F_*Δ₁(f)))^p` before reduction.
pub fn residual_polynomial(f: &Poly) -> Result<Poly> {
    let split = build_splitting(std::slice::from_ref(f))?;
    if !split.fpure_at_origin {
        return Err(Error::Precondition(format!("{f} fails Fedder's criterion")));
    }
    Ok(residual_parts(f, &split)?.0)
}

/// `(x_1^k, ..., x_n^k)`.
fn power_generators(f: &Poly, k: u32) -> Vec<Poly> {
    let n = f.nvars();
    (0..n)
        .map(|i| Poly::term(f.ring(), Monomial::variable(n, i, k), 1))
        .collect()
}

/// Smallest `k` (searched by doubling) with `dim R/(I + P_k) = dim R/(I + P_{k+1})`,
/// `P_k = (x_i^k)`; then `I + P_k` is the origin-primary component of a
/// zero-dimensional `I`.
fn localize_ideal(basis: &GroebnerBasis, order: MonomialOrder) -> Result<GroebnerBasis> {
    let gens = basis.generators();
    let dim_with = |k: u32| -> Result<(GroebnerBasis, u64)> {
        let mut g = gens.clone();
        g.extend(power_generators(&gens[0], k));
        let b = GroebnerBasis::new(&g, order)?;
        let d = b.quotient_dimension()?;
        Ok((b, d))
    };
    let mut k = 2u32;
    loop {
        let (b, d) = dim_with(k)?;
        let (_, d_next) = dim_with(k + 1)?;
        if d == d_next {
            return Ok(b);
        }
        k = k.checked_mul(2).ok_or(Error::Overflow)?;
    }
}

fn localize_module(
    basis: &ModuleGroebnerBasis,
    order: MonomialOrder,
) -> Result<ModuleGroebnerBasis> {
    let gens = basis.generators();
    let rank = basis.rank();
    let seed = gens[0].coords()[0].clone();
    let dim_with = |k: u32| -> Result<(ModuleGroebnerBasis, u64)> {
        let mut g = gens.clone();
        for pw in power_generators(&seed, k) {
            for j in 0..rank {
                g.push(ModuleVector::unit(pw.clone(), j, rank));
            }
        }
        let b = ModuleGroebnerBasis::new(&g, order)?;
        let d = b.quotient_dimension()?;
        Ok((b, d))
    };
    let mut k = 2u32;
    loop {
        let (b, d) = dim_with(k)?;
        let (_, d_next) = dim_with(k + 1)?;
        if d == d_next {
            return Ok(b);
        }
        k = k.checked_mul(2).ok_or(Error::Overflow)?;
    }
}

struct Prelude {
    report: LiftabilityReport,
    split: Option<SplittingData>,
}

/// Shared first stages: locus screening and Fedder. Returns a finished report
/// unless the Δ₁ criterion still has to run.
fn prelude(gens: &[Poly], opts: &ClassifyOptions, start: Instant) -> Result<Prelude> {
    check_input(gens)?;
    let mut report = LiftabilityReport::skeleton(gens, opts.order);
    let t = Instant::now();
    let kind = isolated_singularity_check(gens, opts.order)?;
    report.timings.isolated = elapsed_ms(t);
    report.singularity = kind;
    match kind {
        SingularityType::Smooth => {
            report.status = Status::Smooth;
            report.set_verdict(true, true, true)?;
            report.timings.total = elapsed_ms(start);
            return Ok(Prelude {
                report,
                split: None,
            });
        }
        SingularityType::NotIsolated => {
            report.status = Status::NotIsolated;
            report.set_verdict(false, false, false)?;
            report.timings.total = elapsed_ms(start);
            return Ok(Prelude {
                report,
                split: None,
            });
        }
        SingularityType::IsolatedAtOriginOnly | SingularityType::SingularElsewhere => {}
    }
    report.status = Status::Classified;
    let t = Instant::now();
    let split = build_splitting(gens)?;
    report.timings.fedder = elapsed_ms(t);
    report.certificate.fedder_survivor = split.survivor.clone();
    report.certificate.sigma_trace_constant = split.sigma_trace_constant();
    if !split.fpure_at_origin {
        // F-liftable implies F-pure, so a Fedder failure settles both.
        report.set_verdict(false, false, true)?;
        report.timings.total = elapsed_ms(start);
        return Ok(Prelude {
            report,
            split: None,
        });
    }
    Ok(Prelude {
        report,
        split: Some(split),
    })
}

/// Classifies `Spec R/(f)` at the origin.
pub fn classify_hypersurface(f: &Poly, opts: &ClassifyOptions) -> Result<LiftabilityReport> {
    let start = Instant::now();
    let gens = std::slice::from_ref(f);
    let Prelude { mut report, split } = prelude(gens, opts, start)?;
    let Some(split) = split else {
        return Ok(report);
    };

    let t = Instant::now();
    let (residual, g) = residual_parts(f, &split)?;
    report.timings.delta1 = elapsed_ms(t);
    report.certificate.g = vec![g];

    let t = Instant::now();
    let mut ideal = vec![f.clone()];
    ideal.extend(bracket_power(&f.gradient())?);
    let basis = if opts.certificates {
        GroebnerBasis::with_cofactors(&ideal, opts.order)?
    } else {
        GroebnerBasis::new(&ideal, opts.order)?
    };
    let (mut remainder, cofactors) = if opts.certificates {
        let (nf, cof) = basis.reduce_with_cofactors(&residual)?;
        let cof = if nf.is_zero() {
            basis.membership_certificate(&residual)?.map(|_| cof)
        } else {
            None
        };
        (nf, cof)
    } else {
        (basis.normal_form(&residual)?, None)
    };
    if !remainder.is_zero() && report.singularity == SingularityType::SingularElsewhere {
        let local = localize_ideal(&basis, opts.order)?;
        remainder = local.normal_form(&residual)?;
        report.certificate.localized = true;
    }
    report.timings.groebner = elapsed_ms(t);
    report.certificate.cofactors = cofactors;
    let liftable = remainder.is_zero();
    report.certificate.remainder = vec![remainder];
    report.set_verdict(true, liftable, true)?;
    report.timings.total = elapsed_ms(start);
    Ok(report)
}

/// Classifies `Spec R/(f_1, ..., f_m)` at the origin. The residual vector
/// must lie in the submodule of `R^m` spanned by the columns
/// `((∂f_i/∂x_k)^p)_i` and the vectors `f_j e_i`.
pub fn classify_complete_intersection(
    gens: &[Poly],
    opts: &ClassifyOptions,
) -> Result<LiftabilityReport> {
    let start = Instant::now();
    let Prelude { mut report, split } = prelude(gens, opts, start)?;
    let Some(split) = split else {
        return Ok(report);
    };
    let m = gens.len();
    let ring = gens[0].ring().clone();

    let t = Instant::now();
    let mut residuals = Vec::with_capacity(m);
    let mut gs = Vec::with_capacity(m);
    for f in gens {
        let (r, g) = residual_parts(f, &split)?;
        residuals.push(r);
        gs.push(g);
    }
    report.timings.delta1 = elapsed_ms(t);
    report.certificate.g = gs;

    let t = Instant::now();
    let gradients: Vec<Vec<Poly>> = gens.iter().map(Poly::gradient).collect();
    let mut module = Vec::new();
    for k in 0..ring.nvars() {
        let column = gradients
            .iter()
            .map(|grad| grad[k].frobenius())
            .collect::<Result<Vec<_>>>()?;
        module.push(ModuleVector::new(column)?);
    }
    for i in 0..m {
        for f in gens {
            module.push(ModuleVector::unit(f.clone(), i, m));
        }
    }
    let target = ModuleVector::new(residuals)?;
    let basis = if opts.certificates {
        ModuleGroebnerBasis::with_cofactors(&module, opts.order)?
    } else {
        ModuleGroebnerBasis::new(&module, opts.order)?
    };
    let mut remainder = basis.normal_form(&target)?;
    if remainder.is_zero() && opts.certificates {
        report.certificate.cofactors = basis.membership_certificate(&target)?;
    }
    if !remainder.is_zero() && report.singularity == SingularityType::SingularElsewhere {
        let local = localize_module(&basis, opts.order)?;
        remainder = local.normal_form(&target)?;
        report.certificate.localized = true;
    }
    report.timings.groebner = elapsed_ms(t);
    let liftable = remainder.is_zero();
    report.certificate.remainder = remainder.coords().to_vec();
    // A negative answer from a σ with σ(1) ≠ 1 is not backed by a proven equivalence.
    let conclusive = liftable || split.s == Poly::one(&ring);
    report.set_verdict(true, liftable, conclusive)?;
    report.timings.total = elapsed_ms(start);
    Ok(report)
}

/// Dispatches on the number of equations.
pub fn classify(gens: &[Poly], opts: &ClassifyOptions) -> Result<LiftabilityReport> {
    match gens {
        [f] => classify_hypersurface(f, opts),
        _ => classify_complete_intersection(gens, opts),
    }
}
