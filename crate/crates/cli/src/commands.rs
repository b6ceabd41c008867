use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::atomic::{AtomicBool, Ordering};

use anyhow::{anyhow, bail, Context, Result};
use fliftlab::catalog::identities::all_identities;
use fliftlab::catalog::{enumerate_table_rows, manifest, table_rows, TableBounds};
use fliftlab::criteria::{classify, ClassifyOptions, CriterionRegistry, Label, Status};
use fliftlab::fp_poly::{is_prime, parse_poly, Ring, DEFAULT_MAX_DEGREE};
use fliftlab::groebner::MonomialOrder;
use fliftlab::sweep::{resume_after, run_sweep, sweep_items, Cursor, SweepConfig, SweepItem};
use fliftlab::Error;

use crate::args::{CatalogArgs, ClassifyArgs, Engine, IdentityArgs, Output, SweepArgs, TableArgs};
use crate::output::{FormatRegistry, IdentityLine, OutputFormat, SweepSummary, TableLine};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_ISOLATED: i32 = 3;
pub const EXIT_CHECK_FAILED: i32 = 4;
pub const EXIT_INTERRUPTED: i32 = 130;

pub const MAX_DEGREE_ENV: &str = "FLIFTLAB_MAX_DEGREE";

static STOP: AtomicBool = AtomicBool::new(false);

fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        // reader went away, as with `| head`
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(EXIT_OK),
        r => Ok(r?),
    }
}

fn format<'a>(
    registry: &'a FormatRegistry,
    output: &Output,
    default: &str,
) -> Result<&'a dyn OutputFormat> {
    registry.get(output.format.as_deref().unwrap_or(default))
}

/// `--max-degree`, else `FLIFTLAB_MAX_DEGREE`, else the library default.
fn max_degree(engine: &Engine) -> Result<u32> {
    if let Some(d) = engine.max_degree {
        return Ok(d);
    }
    match std::env::var(MAX_DEGREE_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            anyhow!(Error::InvalidInput(format!(
                "{MAX_DEGREE_ENV}={v:?} is not a degree"
            )))
        }),
        Err(_) => Ok(DEFAULT_MAX_DEGREE),
    }
}

fn options(engine: &Engine) -> Result<ClassifyOptions> {
    let order: MonomialOrder = engine.order.parse()?;
    Ok(ClassifyOptions {
        order,
        certificates: engine.certificates,
    })
}

fn prime(p: u64) -> Result<u32> {
    if p < fliftlab::fp_poly::MAX_MODULUS && is_prime(p) {
        Ok(p as u32)
    } else {
        Err(Error::NotPrime(p).into())
    }
}

pub fn classify_cmd(a: &ClassifyArgs) -> Result<i32> {
    let formats = FormatRegistry::default();
    let fmt = format(&formats, &a.output, "json")?;
    let opts = options(&a.engine)?;
    let vars: Vec<&str> = a.vars.split(',').map(str::trim).collect();
    let ring = Ring::with_max_degree(&vars, a.p, max_degree(&a.engine)?)?;
    let gens = a
        .polys
        .iter()
        .map(|s| parse_poly(s, &ring).with_context(|| format!("in {s:?}")))
        .collect::<Result<Vec<_>>>()?;
    let criteria = CriterionRegistry::default();
    let criterion = if a.criterion == "auto" {
        criteria.select(&gens)?
    } else {
        criteria.get(&a.criterion).ok_or_else(|| {
            anyhow!(Error::InvalidInput(format!(
                "unknown criterion {:?}; expected auto or one of {}",
                a.criterion,
                criteria.names().join(", ")
            )))
        })?
    };
    let report = criterion.classify(&gens, &opts)?;
    emit(&fmt.reports(&[report.to_json(a.output.timings)])?)?;
    Ok(if report.status == Status::NotIsolated {
        EXIT_NOT_ISOLATED
    } else {
        EXIT_OK
    })
}

pub fn table_cmd(a: &TableArgs) -> Result<i32> {
    let formats = FormatRegistry::default();
    let fmt = format(&formats, &a.output, "text")?;
    let opts = options(&a.engine)?;
    let limit = max_degree(&a.engine)?;
    let primes = a
        .p_set
        .iter()
        .map(|&p| prime(p))
        .collect::<Result<Vec<_>>>()?;
    let bounds = TableBounds {
        n_max: a.n_max,
        primes,
    };
    let rows = table_rows();
    let mut lines = Vec::new();
    for inst in enumerate_table_rows(&bounds)? {
        let ring = Ring::with_max_degree(inst.equations[0].ring().vars(), inst.p as u64, limit)?;
        let gens = inst
            .equations
            .iter()
            .map(|g| g.with_ring(&ring))
            .collect::<fliftlab::Result<Vec<_>>>()?;
        let report = classify(&gens, &opts)?;
        let matches = (report.f_pure(), report.f_liftable())
            == (inst.expected.f_pure, inst.expected.f_liftable);
        let row = &rows[inst.row];
        lines.push(TableLine {
            row: inst.row,
            p_column: row.characteristic.describe(),
            type_tex: row.type_tex.to_string(),
            equation_tex: row.equation_tex.to_string(),
            report: report.to_json(a.output.timings).with_label(Label {
                family: inst.family.to_string(),
                params: inst
                    .params
                    .iter()
                    .map(|&(k, v)| (k.to_string(), v))
                    .collect(),
            }),
            expected: inst.expected,
            matches,
        });
    }
    emit(&fmt.table(&lines)?)?;
    let mismatches = lines.iter().filter(|l| !l.matches).count();
    if a.check && mismatches > 0 {
        eprintln!("{mismatches} mismatches against the reference table");
        return Ok(EXIT_CHECK_FAILED);
    }
    Ok(EXIT_OK)
}

const FULL_RANGE_PRIMES: [u32; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
const FULL_RANGE_MAX: u32 = 30;

fn read_cursor(path: &Path, family: &str) -> Result<Option<Cursor>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e).with_context(|| format!("reading {}", path.display())),
    };
    let cursor: Cursor = text.trim().parse()?;
    if cursor.family != family {
        bail!(Error::InvalidInput(format!(
            "cursor file {} belongs to a {} sweep",
            path.display(),
            cursor.family
        )));
    }
    Ok(Some(cursor))
}

fn write_cursor(path: &Path, cursor: &Cursor) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, format!("{cursor}\n")).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn tuple_label(item: &SweepItem) -> String {
    let t: Vec<String> = item.params.iter().map(u32::to_string).collect();
    format!("p={} ({})", item.p, t.join(","))
}

pub fn sweep_cmd(a: &SweepArgs) -> Result<i32> {
    let formats = FormatRegistry::default();
    let fmt = format(&formats, &a.output, "text")?;
    let family = a.family.as_str();
    if !matches!(family, "cusp_hyp" | "cusp_ci") {
        bail!(Error::UnknownFamily(format!(
            "{family} (sweeps support cusp_hyp and cusp_ci)"
        )));
    }
    let (primes, max) = if a.full_range {
        (FULL_RANGE_PRIMES.to_vec(), FULL_RANGE_MAX)
    } else {
        let ps = match (&a.p, &a.p_set) {
            (Some(p), _) => vec![*p],
            (None, Some(ps)) => ps.clone(),
            (None, None) => vec![2],
        };
        (
            ps.into_iter().map(prime).collect::<Result<Vec<_>>>()?,
            a.max,
        )
    };
    let mut items = sweep_items(family, &primes, max)?;
    if a.resume {
        if let Some(cursor) = read_cursor(&a.cursor, family)? {
            items = resume_after(items, &cursor);
        }
    }
    let mut config = SweepConfig::new(family);
    config.jobs = a.jobs;
    config.options = options(&a.engine)?;
    config.max_degree = max_degree(&a.engine)?;

    STOP.store(false, Ordering::SeqCst);
    // a second handler registration fails harmlessly
    let _ = ctrlc::set_handler(|| STOP.store(true, Ordering::SeqCst));

    emit(&fmt.sweep_header()?)?;
    let run = run_sweep(&items, &config, &STOP, |batch| {
        emit(
            &fmt.sweep_rows(family, batch, a.output.timings)
                .map_err(|e| Error::InvalidInput(e.to_string()))?,
        )
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
        if let Some(last) = batch.last() {
            let cursor = Cursor {
                family: family.to_string(),
                item: last.item.clone(),
            };
            write_cursor(&a.cursor, &cursor).map_err(|e| Error::InvalidInput(e.to_string()))?;
        }
        Ok(())
    })?;
    if !run.interrupted {
        match fs::remove_file(&a.cursor) {
            Ok(()) => {}
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(e).with_context(|| format!("removing {}", a.cursor.display())),
        }
    }
    let summary = SweepSummary {
        family: family.to_string(),
        total: run.outcomes.len(),
        f_liftable: run.outcomes.iter().filter(|o| o.f_liftable).count(),
        not_liftable: run
            .outcomes
            .iter()
            .filter(|o| !o.f_liftable && o.error.is_none())
            .map(|o| tuple_label(&o.item))
            .collect(),
        errors: run
            .outcomes
            .iter()
            .filter_map(|o| {
                o.error
                    .as_ref()
                    .map(|e| format!("{}: {e}", tuple_label(&o.item)))
            })
            .collect(),
        interrupted: run.interrupted,
    };
    emit(&fmt.sweep_summary(&summary)?)?;
    if run.interrupted {
        eprintln!(
            "interrupted; resume with --resume --cursor {}",
            a.cursor.display()
        );
        return Ok(EXIT_INTERRUPTED);
    }
    if a.check && run.failures().next().is_some() {
        return Ok(EXIT_CHECK_FAILED);
    }
    Ok(EXIT_OK)
}

pub fn identity_cmd(a: &IdentityArgs) -> Result<i32> {
    let formats = FormatRegistry::default();
    let fmt = format(&formats, &a.output, "text")?;
    if a.n_max < 2 {
        bail!(Error::InvalidInput("--n-max must be at least 2".into()));
    }
    let mut lines = Vec::new();
    for id in all_identities(a.n_max)? {
        lines.push(IdentityLine {
            holds: id.holds()?,
            name: id.name,
            lhs: id.lhs.to_string(),
            rhs: id.rhs.to_string(),
            modulo: id.modulo.map(|m| m.to_string()),
        });
    }
    emit(&fmt.identities(&lines)?)?;
    if let Some(first) = lines.iter().find(|l| !l.holds) {
        eprintln!("first failing identity: {}", first.name);
        return Ok(EXIT_CHECK_FAILED);
    }
    Ok(EXIT_OK)
}

pub fn catalog_cmd(a: &CatalogArgs) -> Result<i32> {
    let primes = a
        .p_set
        .iter()
        .map(|&p| prime(p))
        .collect::<Result<Vec<_>>>()?;
    let entries = manifest(&TableBounds {
        n_max: a.n_max,
        primes,
    })?;
    emit(&(serde_json::to_string_pretty(&entries)? + "\n"))?;
    Ok(EXIT_OK)
}
