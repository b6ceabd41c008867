use super::{
    classify_complete_intersection, classify_hypersurface, ClassifyOptions, LiftabilityReport,
};
use crate::error::{Error, Result};
use crate::fp_poly::Poly;

/// A liftability test that can be selected by name.
pub trait Criterion: Send + Sync {
    fn name(&self) -> &'static str;
    fn accepts(&self, gens: &[Poly]) -> bool;
    fn classify(&self, gens: &[Poly], opts: &ClassifyOptions) -> Result<LiftabilityReport>;
}

pub struct HypersurfaceCriterion;

impl Criterion for HypersurfaceCriterion {
    fn name(&self) -> &'static str {
        "hypersurface"
    }

    fn accepts(&self, gens: &[Poly]) -> bool {
        gens.len() == 1
    }

    fn classify(&self, gens: &[Poly], opts: &ClassifyOptions) -> Result<LiftabilityReport> {
        match gens {
            [f] => classify_hypersurface(f, opts),
            _ => Err(Error::InvalidInput(format!(
                "hypersurface criterion needs one equation, got {}",
                gens.len()
            ))),
        }
    }
}

pub struct CompleteIntersectionCriterion;

impl Criterion for CompleteIntersectionCriterion {
    fn name(&self) -> &'static str {
        "complete_intersection"
    }

    fn accepts(&self, gens: &[Poly]) -> bool {
        !gens.is_empty()
    }

    fn classify(&self, gens: &[Poly], opts: &ClassifyOptions) -> Result<LiftabilityReport> {
        classify_complete_intersection(gens, opts)
    }
}

pub struct CriterionRegistry {
    entries: Vec<Box<dyn Criterion>>,
}

impl Default for CriterionRegistry {
    fn default() -> Self {
        let mut r = CriterionRegistry {
            entries: Vec::new(),
        };
        r.register(Box::new(HypersurfaceCriterion));
        r.register(Box::new(CompleteIntersectionCriterion));
        r
    }
}

impl CriterionRegistry {
    /// Later registrations shadow earlier ones with the same name.
    pub fn register(&mut self, c: Box<dyn Criterion>) {
        self.entries.retain(|e| e.name() != c.name());
        self.entries.push(c);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn Criterion> {
        self.entries
            .iter()
            .find(|e| e.name() == name)
            .map(|e| e.as_ref())
    }

    /// First registered criterion that accepts `gens`.
    pub fn select(&self, gens: &[Poly]) -> Result<&dyn Criterion> {
        self.entries
            .iter()
            .find(|e| e.accepts(gens))
            .map(|e| e.as_ref())
            .ok_or_else(|| Error::InvalidInput("no criterion accepts this input".into()))
    }
}
