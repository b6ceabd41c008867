//! Equation families of rational double points and cusp singularities, with
//! the reference classification table.

mod cusp;
pub mod identities;
mod rdp;

use serde::{Deserialize, Serialize};

pub use cusp::{cusp_tuples, make_cusp_ci, make_cusp_hypersurface, CuspCi, CuspHypersurface};
pub use rdp::{table_rows, RdpFamily, TableRow};

use crate::criteria::Label;
use crate::error::{Error, Result};
use crate::fp_poly::{parse_poly, Poly, Ring, DEFAULT_MAX_DEGREE};

/// Which characteristics a family or table row applies to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Characteristic {
    Any,
    Above(u32),
    OneOf(&'static [u32]),
}

impl Characteristic {
    pub fn admits(&self, p: u32) -> bool {
        match self {
            Characteristic::Any => true,
            Characteristic::Above(k) => p > *k,
            Characteristic::OneOf(ps) => ps.contains(&p),
        }
    }

    /// The table's `p` column text.
    pub fn describe(&self) -> String {
        match self {
            Characteristic::Any => ">0".into(),
            Characteristic::Above(k) => format!(">{k}"),
            Characteristic::OneOf(ps) => {
                ps.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
            }
        }
    }
}

/// A parametric equation family, selectable by id.
pub trait Family: Send + Sync {
    fn id(&self) -> &'static str;
    fn param_names(&self) -> &'static [&'static str];
    fn variables(&self) -> &'static [&'static str] {
        &["x", "y", "z"]
    }
    fn characteristic(&self) -> Characteristic;
    /// Side conditions on the parameters, independent of `p`.
    fn check_params(&self, params: &[u32]) -> std::result::Result<(), String>;
    /// Equation texts; only called on admissible input.
    fn equation_text(&self, p: u32, params: &[u32]) -> Vec<String>;

    fn validate(&self, p: u32, params: &[u32]) -> Result<()> {
        let inadmissible = |reason: String| Error::Inadmissible {
            family: self.id().to_string(),
            reason,
        };
        if !self.characteristic().admits(p) {
            return Err(inadmissible(format!(
                "characteristic {p} outside p {}",
                self.characteristic().describe()
            )));
        }
        if params.len() != self.param_names().len() {
            return Err(inadmissible(format!(
                "expected parameters ({}), got {} values",
                self.param_names().join(", "),
                params.len()
            )));
        }
        self.check_params(params).map_err(inadmissible)
    }

    fn instantiate(&self, p: u32, params: &[u32]) -> Result<Vec<Poly>> {
        self.instantiate_with_limit(p, params, DEFAULT_MAX_DEGREE)
    }

    /// Like [`Family::instantiate`] with a custom degree guard on the ring.
    fn instantiate_with_limit(&self, p: u32, params: &[u32], max_degree: u32) -> Result<Vec<Poly>> {
        self.validate(p, params)?;
        let ring = Ring::with_max_degree(self.variables(), p as u64, max_degree)?;
        self.equation_text(p, params)
            .iter()
            .map(|s| parse_poly(s, &ring))
            .collect()
    }
}

/// Normalizes ids so that `D_2n^{n-1}` and `D_2n^n-1` name the same family.
fn canonical_id(id: &str) -> String {
    id.chars()
        .filter(|c| !matches!(c, '{' | '}' | ' '))
        .collect()
}

pub struct FamilyRegistry {
    entries: Vec<Box<dyn Family>>,
}

impl Default for FamilyRegistry {
    fn default() -> Self {
        let mut r = FamilyRegistry {
            entries: Vec::new(),
        };
        for f in rdp::families() {
            r.register(Box::new(f));
        }
        r.register(Box::new(CuspHypersurface));
        r.register(Box::new(CuspCi));
        r
    }
}

impl FamilyRegistry {
    pub fn register(&mut self, family: Box<dyn Family>) {
        let id = canonical_id(family.id());
        self.entries.retain(|e| canonical_id(e.id()) != id);
        self.entries.push(family);
    }

    pub fn get(&self, id: &str) -> Result<&dyn Family> {
        let id = canonical_id(id);
        self.entries
            .iter()
            .find(|e| canonical_id(e.id()) == id)
            .map(|e| e.as_ref())
            .ok_or(Error::UnknownFamily(id))
    }

    pub fn ids(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.id()).collect()
    }
}

/// A reference table row's values. Only `f_pure` and `f_liftable` are ever computed;
/// the other three are quoted from the literature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedRecord {
    pub f_pure: bool,
    pub f_regular_ref: bool,
    pub f_liftable: bool,
    pub ret_ref: bool,
    pub let_ref: bool,
}

/// `make_rdp("E_7^3", 2, &[])`, `make_rdp("A_n", 3, &[2])`, ...
pub fn make_rdp(family: &str, p: u32, params: &[u32]) -> Result<Poly> {
    let reg = FamilyRegistry::default();
    let fam = reg.get(family)?;
    if fam.variables().len() != 3 || fam.id().starts_with("cusp") {
        return Err(Error::UnknownFamily(format!(
            "{family} is not a rational double point family"
        )));
    }
    Ok(fam.instantiate(p, params)?.remove(0))
}

/// Reference values of the table row that `(family, p, params)` falls in.
pub fn expected_classification(family: &str, p: u32, params: &[u32]) -> Result<ExpectedRecord> {
    let id = canonical_id(family);
    table_rows()
        .into_iter()
        .find(|row| canonical_id(row.family) == id && row.applies(p, params))
        .map(|row| row.expected)
        .ok_or_else(|| Error::Inadmissible {
            family: family.to_string(),
            reason: format!("no table row for p = {p}, parameters {params:?}"),
        })
}

/// Bounds for [`enumerate_table_rows`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableBounds {
    pub n_max: u32,
    /// Characteristics used for rows valid in infinitely many characteristics.
    pub primes: Vec<u32>,
}

impl Default for TableBounds {
    fn default() -> Self {
        TableBounds {
            n_max: 8,
            primes: vec![2, 3, 5, 7],
        }
    }
}

/// One instantiated equation with its place in the table.
#[derive(Debug, Clone)]
pub struct TableInstance {
    pub row: usize,
    pub family: &'static str,
    pub p: u32,
    pub params: Vec<(&'static str, u32)>,
    pub equations: Vec<Poly>,
    pub expected: ExpectedRecord,
}

impl TableInstance {
    pub fn param_values(&self) -> Vec<u32> {
        self.params.iter().map(|&(_, v)| v).collect()
    }
}

/// Every table row instantiated over the bounds, in table order; within a row
/// by `p`, then parameters.
pub fn enumerate_table_rows(bounds: &TableBounds) -> Result<Vec<TableInstance>> {
    let reg = FamilyRegistry::default();
    let mut out = Vec::new();
    for (index, row) in table_rows().into_iter().enumerate() {
        let fam = reg.get(row.family)?;
        let primes: Vec<u32> = match &row.characteristic {
            Characteristic::OneOf(ps) => ps.to_vec(),
            _ => bounds.primes.clone(),
        };
        for p in primes.into_iter().filter(|&p| row.characteristic.admits(p)) {
            for params in row.parameter_grid(bounds.n_max) {
                if !row.applies(p, &params) {
                    continue;
                }
                out.push(TableInstance {
                    row: index,
                    family: row.family,
                    p,
                    params: fam
                        .param_names()
                        .iter()
                        .copied()
                        .zip(params.iter().copied())
                        .collect(),
                    equations: fam.instantiate(p, &params)?,
                    expected: row.expected,
                });
            }
        }
    }
    Ok(out)
}

/// A catalog entry in the report vocabulary, plus reference values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub label: Label,
    pub p: u32,
    pub variables: Vec<String>,
    pub generators: Vec<String>,
    /// Table equation column as printed, TeX.
    pub table_equation: String,
    pub expected: ExpectedRecord,
    /// The F-regular, RET and LET values are quoted, not computed.
    pub reference_note: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn manifest(bounds: &TableBounds) -> Result<Vec<ManifestEntry>> {
    let rows = table_rows();
    Ok(enumerate_table_rows(bounds)?
        .into_iter()
        .map(|inst| {
            let row = &rows[inst.row];
            ManifestEntry {
                label: Label {
                    family: inst.family.to_string(),
                    params: inst.params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
                },
                p: inst.p,
                variables: inst.equations[0].ring().vars().to_vec(),
                generators: inst.equations.iter().map(Poly::to_string).collect(),
                table_equation: row.equation_tex.to_string(),
                expected: inst.expected,
                reference_note: "f_regular_ref, ret_ref, let_ref: literature, not computed".into(),
                note: (inst.family == "D_2n+1^{n-1}").then(|| {
                    "the table prints z^2+x^2y+y^nz+xy^{n-r}z for this row; the equation used is z^2+x^2y+y^nz+xyz".into()
                }),
            }
        })
        .collect())
}
