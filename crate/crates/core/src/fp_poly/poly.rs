use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::field::{PrimeField, PrimeFieldElement};
use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Default bound on the total degree of any polynomial the library will build.
pub const DEFAULT_MAX_DEGREE: u32 = 10_000;

/// The ambient polynomial ring `F_p[x_1, ..., x_n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    vars: Vec<String>,
    field: PrimeField,
    max_degree: u32,
}

pub type RingRef = Arc<Ring>;

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S], p: u64) -> Result<RingRef> {
        Self::with_max_degree(vars, p, DEFAULT_MAX_DEGREE)
    }

    pub fn with_max_degree<S: AsRef<str>>(vars: &[S], p: u64, max_degree: u32) -> Result<RingRef> {
        let field = PrimeField::new(p)?;
        if vars.is_empty() {
            return Err(Error::InvalidVariables("variable list is empty".into()));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().trim().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidVariables(format!(
                    "`{v}` is not an identifier"
                )));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidVariables(format!("`{v}` is repeated")));
            }
        }
        Ok(Arc::new(Ring {
            vars,
            field,
            max_degree,
        }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.modulus()
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and modulus; the degree guard is not part of the ambient.
    pub fn same_ambient(&self, other: &Ring) -> bool {
        std::ptr::eq(self, other) || (self.field == other.field && self.vars == other.vars)
    }

    pub(crate) fn check_degree(&self, degree: u64, context: &str) -> Result<()> {
        if degree > self.max_degree as u64 {
            Err(Error::degree_guard(degree, self.max_degree, context))
        } else {
            Ok(())
        }
    }
}

/// Sparse polynomial: a map from monomials to nonzero residues.
#[derive(Clone)]
pub struct Poly {
    ring: RingRef,
    terms: BTreeMap<Monomial, u32>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ambient(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl Poly {
    pub fn zero(ring: &RingRef) -> Self {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &RingRef, c: u64) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: &RingRef, index: usize) -> Self {
        Self::term(ring, Monomial::variable(ring.nvars(), index, 1), 1)
    }

    pub fn term(ring: &RingRef, mono: Monomial, c: u64) -> Self {
        assert_eq!(mono.nvars(), ring.nvars(), "monomial arity");
        let c = ring.field().reduce_u64(c);
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(mono, c);
        }
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, combining
    /// repeated monomials and dropping zero coefficients.
    pub fn from_terms<I>(ring: &RingRef, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, u32)>,
    {
        let k = ring.field();
        let mut map: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity");
            accumulate(&mut map, k, m, k.reduce_u64(c as u64));
        }
        Poly {
            ring: ring.clone(),
            terms: map,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn field(&self) -> PrimeField {
        self.ring.field()
    }

    pub fn p(&self) -> u32 {
        self.ring.p()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn coefficient(&self, m: &Monomial) -> PrimeFieldElement {
        self.field().element(self.coeff(m) as u64)
    }

    pub fn constant_term(&self) -> u32 {
        self.coeff(&Monomial::one(self.nvars()))
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub(crate) fn check_ambient(&self, other: &Poly) -> Result<()> {
        if self.ring.same_ambient(&other.ring) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch(format!(
                "F_{}[{}] vs F_{}[{}]",
                self.p(),
                self.ring.vars().join(","),
                other.p(),
                other.ring.vars().join(",")
            )))
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        out.add_assign_scaled(other, 1);
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        out.add_assign_scaled(other, self.field().neg(1));
        Ok(out)
    }

    fn add_assign_scaled(&mut self, other: &Poly, c: u32) {
        let k = self.field();
        for (m, &d) in &other.terms {
            accumulate(&mut self.terms, k, m.clone(), k.mul(c, d));
        }
    }

    pub fn neg(&self) -> Poly {
        self.scale(self.field().neg(1))
    }

    pub fn scale(&self, c: u32) -> Poly {
        let k = self.field();
        let c = c % k.modulus();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, &d)| (m.clone(), k.mul(c, d)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.ring));
        }
        let degree = self.total_degree().unwrap() + other.total_degree().unwrap();
        self.ring.check_degree(degree, "product")?;
        let k = self.field();
        let mut terms = BTreeMap::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                accumulate(&mut terms, k, a.mul(b), k.mul(ca, cb));
            }
        }
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn mul_term(&self, mono: &Monomial, c: u32) -> Result<Poly> {
        if self.is_zero() || c.is_multiple_of(self.p()) {
            return Ok(Poly::zero(&self.ring));
        }
        self.ring.check_degree(
            self.total_degree().unwrap() + mono.degree(),
            "monomial multiple",
        )?;
        let k = self.field();
        Ok(Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, &d)| (m.mul(mono), k.mul(c, d)))
                .collect(),
        })
    }

    /// Raises every exponent to its `p`-fold; equals `self^p` in characteristic `p`.
    pub fn frobenius(&self) -> Result<Poly> {
        let p = self.p();
        if let Some(d) = self.total_degree() {
            self.ring.check_degree(d * p as u64, "p-th power")?;
        }
        Ok(Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, &c)| (m.scale(p), c)).collect(),
        })
    }

    /// `self^e` by binary exponentiation, peeling off factors of `p` as Frobenius twists.
    pub fn pow(&self, e: u64) -> Result<Poly> {
        if e == 0 {
            return Ok(Poly::one(&self.ring));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let degree = self.total_degree().unwrap().saturating_mul(e);
        self.ring.check_degree(degree, "power")?;
        let p = self.p() as u64;
        let mut rest = e;
        let mut twists = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            twists += 1;
        }
        let mut acc = Poly::one(&self.ring);
        let mut base = self.clone();
        loop {
            if rest & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            rest >>= 1;
            if rest == 0 {
                break;
            }
            base = base.mul(&base)?;
        }
        for _ in 0..twists {
            acc = acc.frobenius()?;
        }
        Ok(acc)
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Poly> {
        if var >= self.nvars() {
            return Err(Error::InvalidInput(format!(
                "variable index {var} out of range for {} variables",
                self.nvars()
            )));
        }
        let k = self.field();
        let mut terms = BTreeMap::new();
        for (m, &c) in &self.terms {
            let e = m.exponents()[var];
            let c = k.mul(c, k.reduce_u64(e as u64));
            if c != 0 {
                let mut d = m.clone();
                d.exponents_mut()[var] -= 1;
                terms.insert(d, c);
            }
        }
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.nvars())
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    /// Exact quotient `self / divisor`, or `None` when `divisor` does not divide.
    pub fn divide_exact(&self, divisor: &Poly) -> Result<Option<Poly>> {
        self.check_ambient(divisor)?;
        let Some((lead_m, &lead_c)) = divisor.terms.last_key_value() else {
            return Err(Error::InvalidInput("division by zero polynomial".into()));
        };
        let k = self.field();
        let lead_inv = k.inv(lead_c).unwrap();
        let mut rem = self.clone();
        let mut quotient = Poly::zero(&self.ring);
        while let Some((m, &c)) = rem.terms.last_key_value() {
            if !lead_m.divides(m) {
                return Ok(None);
            }
            let q = lead_m.quotient_of(m);
            let qc = k.mul(c, lead_inv);
            for (dm, &dc) in &divisor.terms {
                accumulate(&mut rem.terms, k, dm.mul(&q), k.neg(k.mul(qc, dc)));
            }
            quotient.terms.insert(q, qc);
        }
        Ok(Some(quotient))
    }

    /// Rewrites `x_i -> x_{perm[i]}` into `target`, which must share the modulus.
    pub fn permute_variables(&self, perm: &[usize], target: &RingRef) -> Result<Poly> {
        if target.p() != self.p() || perm.len() != self.nvars() || target.nvars() != self.nvars() {
            return Err(Error::AmbientMismatch("permutation target".into()));
        }
        let terms = self.terms.iter().map(|(m, &c)| {
            let mut out = Monomial::one(self.nvars());
            for (i, &e) in m.exponents().iter().enumerate() {
                out.exponents_mut()[perm[i]] = e;
            }
            (out, c)
        });
        Ok(Poly::from_terms(target, terms))
    }

    /// Substitutes `x_var -> c * x_var`.
    pub fn rescale_variable(&self, var: usize, c: u32) -> Poly {
        let k = self.field();
        Poly::from_terms(
            &self.ring,
            self.terms
                .iter()
                .map(|(m, &d)| (m.clone(), k.mul(d, k.pow(c, m.exponents()[var] as u64)))),
        )
    }

    /// Moves the polynomial into another ring with the same variables and modulus.
    pub fn with_ring(&self, ring: &RingRef) -> Result<Poly> {
        if !self.ring.same_ambient(ring) {
            return Err(Error::AmbientMismatch("with_ring".into()));
        }
        Ok(Poly {
            ring: ring.clone(),
            terms: self.terms.clone(),
        })
    }

    pub(crate) fn from_map(ring: &RingRef, terms: BTreeMap<Monomial, u32>) -> Poly {
        debug_assert!(terms.values().all(|&c| c != 0 && c < ring.p()));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }
}

#[inline]
pub(crate) fn accumulate(map: &mut BTreeMap<Monomial, u32>, k: PrimeField, m: Monomial, c: u32) {
    if c == 0 {
        return;
    }
    match map.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = k.add(*o.get(), c);
            if s == 0 {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}
