//! Parallel classification of every admissible tuple of a parametric family.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::catalog::{cusp_tuples, Family, FamilyRegistry};
use crate::criteria::{classify, ClassifyOptions};
use crate::error::{Error, Result};
use crate::fp_poly::DEFAULT_MAX_DEGREE;

/// One point of a sweep. Ordered by `p`, then parameters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SweepItem {
    pub p: u32,
    pub params: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub item: SweepItem,
    pub f_pure: bool,
    pub f_liftable: bool,
    pub conclusive: bool,
    pub localized: bool,
    pub ms: f64,
    /// Set when the classification itself failed (e.g. degree guard).
    pub error: Option<String>,
}

/// Position after the last completed item: `family p a b c [d]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cursor {
    pub family: String,
    pub item: SweepItem,
}

impl fmt::Display for Cursor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.family, self.item.p)?;
        for v in &self.item.params {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

impl FromStr for Cursor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("malformed cursor line {s:?}"));
        let mut fields = s.split_whitespace();
        let family = fields.next().ok_or_else(bad)?.to_string();
        let nums = fields
            .map(|t| t.parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let (&p, params) = nums.split_first().ok_or_else(bad)?;
        Ok(Cursor {
            family,
            item: SweepItem {
                p,
                params: params.to_vec(),
            },
        })
    }
}

/// All admissible tuples with exponents in `2..=max` for each prime, sorted.
pub fn sweep_items(family: &str, primes: &[u32], max: u32) -> Result<Vec<SweepItem>> {
    let tuples = cusp_tuples(family, max)?;
    let mut items: Vec<SweepItem> = primes
        .iter()
        .flat_map(|&p| {
            tuples.iter().map(move |t| SweepItem {
                p,
                params: t.clone(),
            })
        })
        .collect();
    items.sort();
    items.dedup();
    Ok(items)
}

/// Items strictly after the cursor.
pub fn resume_after(items: Vec<SweepItem>, cursor: &Cursor) -> Vec<SweepItem> {
    items.into_iter().filter(|i| *i > cursor.item).collect()
}

fn classify_item(family: &dyn Family, item: &SweepItem, config: &SweepConfig) -> SweepOutcome {
    let start = Instant::now();
    let result = family
        .instantiate_with_limit(item.p, &item.params, config.max_degree)
        .and_then(|gens| classify(&gens, &config.options));
    let ms = start.elapsed().as_secs_f64() * 1e3;
    match result {
        Ok(rep) => SweepOutcome {
            item: item.clone(),
            f_pure: rep.f_pure(),
            f_liftable: rep.f_liftable(),
            conclusive: rep.conclusive(),
            localized: rep.certificate.localized,
            ms,
            error: None,
        },
        Err(e) => SweepOutcome {
            item: item.clone(),
            f_pure: false,
            f_liftable: false,
            conclusive: false,
            localized: false,
            ms,
            error: Some(e.to_string()),
        },
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub family: String,
    /// Worker threads; 0 means one per available core.
    pub jobs: usize,
    /// Items per batch between progress callbacks and stop checks.
    pub chunk: usize,
    pub options: ClassifyOptions,
    pub max_degree: u32,
}

impl SweepConfig {
    pub fn new(family: &str) -> Self {
        SweepConfig {
            family: family.to_string(),
            jobs: 0,
            chunk: 64,
            options: ClassifyOptions::default(),
            max_degree: DEFAULT_MAX_DEGREE,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRun {
    /// In item order.
    pub outcomes: Vec<SweepOutcome>,
    pub interrupted: bool,
}

impl SweepRun {
    pub fn failures(&self) -> impl Iterator<Item = &SweepOutcome> {
        self.outcomes.iter().filter(|o| !o.f_liftable)
    }

    pub fn cursor(&self, family: &str) -> Option<Cursor> {
        self.outcomes.last().map(|o| Cursor {
            family: family.to_string(),
            item: o.item.clone(),
        })
    }
}

/// Classifies `items` in parallel batches. After each batch `on_batch` sees
/// the batch's outcomes in order; `stop` is polled between batches.
pub fn run_sweep<F>(
    items: &[SweepItem],
    config: &SweepConfig,
    stop: &AtomicBool,
    mut on_batch: F,
) -> Result<SweepRun>
where
    F: FnMut(&[SweepOutcome]) -> Result<()>,
{
    let registry = FamilyRegistry::default();
    let family = registry.get(&config.family)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    let mut outcomes = Vec::with_capacity(items.len());
    for batch in items.chunks(config.chunk.max(1)) {
        if stop.load(Ordering::SeqCst) {
            return Ok(SweepRun {
                outcomes,
                interrupted: true,
            });
        }
        let done: Vec<SweepOutcome> = pool.install(|| {
            batch
                .par_iter()
                .map(|item| classify_item(family, item, config))
                .collect()
        });
        on_batch(&done)?;
        outcomes.extend(done);
    }
    Ok(SweepRun {
        outcomes,
        interrupted: false,
    })
}
