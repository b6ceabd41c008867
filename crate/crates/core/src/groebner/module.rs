use super::engine::{Element, Engine};
use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::fp_poly::{Poly, RingRef};

/// An element of the free module `R^s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleVector {
    coords: Vec<Poly>,
}

impl ModuleVector {
    pub fn new(coords: Vec<Poly>) -> Result<Self> {
        let first = coords.first().ok_or_else(|| {
            Error::InvalidInput("module vector needs at least one coordinate".into())
        })?;
        for c in &coords[1..] {
            first.check_ambient(c)?;
        }
        Ok(ModuleVector { coords })
    }

    /// `f * e_index` in `R^rank`.
    pub fn unit(f: Poly, index: usize, rank: usize) -> Self {
        let mut coords = vec![Poly::zero(f.ring()); rank];
        coords[index] = f;
        ModuleVector { coords }
    }

    pub fn coords(&self) -> &[Poly] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn ring(&self) -> &RingRef {
        self.coords[0].ring()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Poly::is_zero)
    }

    pub fn scale_by(&self, f: &Poly) -> Result<Self> {
        Ok(ModuleVector {
            coords: self
                .coords
                .iter()
                .map(|c| c.mul(f))
                .collect::<Result<_>>()?,
        })
    }

    pub fn add(&self, other: &ModuleVector) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::InvalidInput("coordinate count mismatch".into()));
        }
        Ok(ModuleVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.add(b))
                .collect::<Result<_>>()?,
        })
    }
}

/// Reduced Gröbner basis of a submodule of `R^s`, term-over-position order.
pub struct ModuleGroebnerBasis {
    engine: Engine,
    elements: Vec<Element>,
    original: Vec<ModuleVector>,
    tracked: bool,
}

impl ModuleGroebnerBasis {
    pub fn new(gens: &[ModuleVector], order: MonomialOrder) -> Result<Self> {
        Self::build(gens, order, false)
    }

    pub fn with_cofactors(gens: &[ModuleVector], order: MonomialOrder) -> Result<Self> {
        Self::build(gens, order, true)
    }

    fn build(gens: &[ModuleVector], order: MonomialOrder, track: bool) -> Result<Self> {
        let first = gens
            .first()
            .ok_or_else(|| Error::InvalidInput("empty generator list".into()))?;
        let rank = first.rank();
        for g in gens {
            if g.rank() != rank {
                return Err(Error::InvalidInput(format!(
                    "coordinate count mismatch: {} vs {rank}",
                    g.rank()
                )));
            }
            first.coords[0].check_ambient(&g.coords[0])?;
        }
        let engine = Engine::new(first.ring(), order, rank);
        let terms: Vec<_> = gens.iter().map(|g| engine.terms_of(&g.coords)).collect();
        let elements = engine.buchberger(&terms, track)?;
        Ok(ModuleGroebnerBasis {
            engine,
            elements,
            original: gens.to_vec(),
            tracked: track,
        })
    }

    pub fn rank(&self) -> usize {
        self.engine.rank
    }

    pub fn generators(&self) -> Vec<ModuleVector> {
        self.elements
            .iter()
            .map(|e| ModuleVector {
                coords: self.engine.coords_of(&e.terms),
            })
            .collect()
    }

    pub fn original_generators(&self) -> &[ModuleVector] {
        &self.original
    }

    fn check(&self, v: &ModuleVector) -> Result<()> {
        if v.rank() != self.rank() {
            return Err(Error::InvalidInput(format!(
                "coordinate count mismatch: {} vs {}",
                v.rank(),
                self.rank()
            )));
        }
        if !self.engine.ring.same_ambient(v.ring()) {
            return Err(Error::AmbientMismatch("vector and module basis".into()));
        }
        Ok(())
    }

    pub fn normal_form(&self, v: &ModuleVector) -> Result<ModuleVector> {
        self.check(v)?;
        let red = self
            .engine
            .reduce(self.engine.terms_of(&v.coords), &self.elements, false)?;
        Ok(ModuleVector {
            coords: self.engine.coords_of(&red.remainder),
        })
    }

    pub fn contains(&self, v: &ModuleVector) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    /// Cofactors `c` with `v = Σ c_i * original_i` (verified), or `None`.
    pub fn membership_certificate(&self, v: &ModuleVector) -> Result<Option<Vec<Poly>>> {
        self.check(v)?;
        if !self.tracked {
            return Err(Error::Precondition(
                "basis was built without cofactor tracking".into(),
            ));
        }
        let red = self
            .engine
            .reduce(self.engine.terms_of(&v.coords), &self.elements, true)?;
        if !red.remainder.is_empty() {
            return Ok(None);
        }
        let cof = self.engine.combine_quotients(
            red.quotients.as_ref().unwrap(),
            &self.elements,
            self.original.len(),
        )?;
        let mut expanded = ModuleVector {
            coords: vec![Poly::zero(v.ring()); self.rank()],
        };
        for (c, g) in cof.iter().zip(&self.original) {
            expanded = expanded.add(&g.scale_by(c)?)?;
        }
        if &expanded != v {
            return Err(Error::Precondition(
                "cofactor re-expansion does not reproduce the vector".into(),
            ));
        }
        Ok(Some(cof))
    }

    /// `dim_k R^s / M` when finite.
    pub fn quotient_dimension(&self) -> Result<u64> {
        self.engine
            .count_standard(&self.elements)
            .ok_or_else(|| Error::Precondition("quotient module is not finite-dimensional".into()))
    }
}

/// Whether `v` lies in the submodule generated by `gens`.
pub fn module_membership(
    v: &ModuleVector,
    gens: &[ModuleVector],
    order: MonomialOrder,
) -> Result<bool> {
    ModuleGroebnerBasis::new(gens, order)?.contains(v)
}
