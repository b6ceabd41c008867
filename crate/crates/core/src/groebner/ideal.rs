use super::engine::{Element, Engine};
use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::fp_poly::{Monomial, Poly, RingRef};

/// Reduced Gröbner basis of an ideal of `F_p[x_1..x_n]`.
pub struct GroebnerBasis {
    engine: Engine,
    elements: Vec<Element>,
    original: Vec<Poly>,
    tracked: bool,
}

impl std::fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroebnerBasis")
            .field("order", &self.engine.order)
            .field("generators", &self.generators())
            .finish()
    }
}

fn shared_ring(gens: &[Poly]) -> Result<RingRef> {
    let first = gens
        .first()
        .ok_or_else(|| Error::InvalidInput("empty generator list".into()))?;
    for g in &gens[1..] {
        first.check_ambient(g)?;
    }
    Ok(first.ring().clone())
}

impl GroebnerBasis {
    pub fn new(gens: &[Poly], order: MonomialOrder) -> Result<Self> {
        Self::build(gens, order, false)
    }

    /// Like [`GroebnerBasis::new`], but keeps each basis element's expression
    /// in the original generators so membership can return cofactors.
    pub fn with_cofactors(gens: &[Poly], order: MonomialOrder) -> Result<Self> {
        Self::build(gens, order, true)
    }

    fn build(gens: &[Poly], order: MonomialOrder, track: bool) -> Result<Self> {
        let ring = shared_ring(gens)?;
        let engine = Engine::new(&ring, order, 1);
        let terms: Vec<_> = gens
            .iter()
            .map(|g| engine.terms_of(std::slice::from_ref(g)))
            .collect();
        let elements = engine.buchberger(&terms, track)?;
        Ok(GroebnerBasis {
            engine,
            elements,
            original: gens.to_vec(),
            tracked: track,
        })
    }

    pub fn ring(&self) -> &RingRef {
        &self.engine.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.engine.order
    }

    /// Reduced, monic generators in descending order of leading monomial.
    pub fn generators(&self) -> Vec<Poly> {
        self.elements
            .iter()
            .map(|e| self.engine.coords_of(&e.terms).pop().unwrap())
            .collect()
    }

    pub fn original_generators(&self) -> &[Poly] {
        &self.original
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|e| e.lead().mono.clone())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn check(&self, f: &Poly) -> Result<()> {
        if self.engine.ring.same_ambient(f.ring()) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch("polynomial and basis".into()))
        }
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        self.check(f)?;
        let red = self.engine.reduce(
            self.engine.terms_of(std::slice::from_ref(f)),
            &self.elements,
            false,
        )?;
        Ok(self.engine.coords_of(&red.remainder).pop().unwrap())
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Normal form plus, when built with cofactors, `c` with
    /// `f - NF(f) = Σ c_i * original_i`.
    pub fn reduce_with_cofactors(&self, f: &Poly) -> Result<(Poly, Vec<Poly>)> {
        self.check(f)?;
        if !self.tracked {
            return Err(Error::Precondition(
                "basis was built without cofactor tracking".into(),
            ));
        }
        let red = self.engine.reduce(
            self.engine.terms_of(std::slice::from_ref(f)),
            &self.elements,
            true,
        )?;
        let cof = self.engine.combine_quotients(
            red.quotients.as_ref().unwrap(),
            &self.elements,
            self.original.len(),
        )?;
        Ok((self.engine.coords_of(&red.remainder).pop().unwrap(), cof))
    }

    /// Cofactors `c` with `f = Σ c_i * original_i`, verified by re-expansion,
    /// or `None` when `f` is not in the ideal.
    pub fn membership_certificate(&self, f: &Poly) -> Result<Option<Vec<Poly>>> {
        let (nf, cof) = self.reduce_with_cofactors(f)?;
        if !nf.is_zero() {
            return Ok(None);
        }
        let mut expanded = Poly::zero(self.ring());
        for (c, g) in cof.iter().zip(&self.original) {
            expanded = expanded.add(&c.mul(g)?)?;
        }
        if &expanded != f {
            return Err(Error::Precondition(
                "cofactor re-expansion does not reproduce the element".into(),
            ));
        }
        Ok(Some(cof))
    }

    /// The ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.elements.iter().any(|e| e.lead().mono.is_one())
    }

    /// Every generator vanishes at the origin.
    pub fn vanishes_at_origin(&self) -> bool {
        self.elements
            .iter()
            .all(|e| e.terms.iter().all(|t| !t.mono.is_one()))
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.quotient_dimension_opt().is_some()
    }

    fn quotient_dimension_opt(&self) -> Option<u64> {
        self.engine.count_standard(&self.elements)
    }

    /// `dim_k R/I`, the number of standard monomials.
    pub fn quotient_dimension(&self) -> Result<u64> {
        self.quotient_dimension_opt()
            .ok_or_else(|| Error::Precondition("ideal is not zero-dimensional".into()))
    }

    /// Whether the zero set is the origin alone: `x_i^D ∈ I` for all `i`,
    /// with `D = dim_k R/I`.
    pub fn supported_only_at_origin(&self) -> Result<bool> {
        let d = self.quotient_dimension()?;
        if d == 0 {
            // unit ideal: empty zero set
            return Ok(false);
        }
        let n = self.ring().nvars();
        for i in 0..n {
            let power = Poly::term(self.ring(), Monomial::variable(n, i, d as u32), 1);
            if !self.contains(&power)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
