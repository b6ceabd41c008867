use std::collections::BTreeMap;

use anyhow::{anyhow, Result};
use fliftlab::catalog::ExpectedRecord;
use fliftlab::criteria::ReportJson;
use fliftlab::sweep::SweepOutcome;
use serde::Serialize;

pub fn yn(b: bool) -> &'static str {
    if b {
        "Y"
    } else {
        "N"
    }
}

/// One instance of the RDP table together with its row metadata.
#[derive(Debug, Clone, Serialize)]
pub struct TableLine {
    pub row: usize,
    pub p_column: String,
    pub type_tex: String,
    pub equation_tex: String,
    #[serde(flatten)]
    pub report: ReportJson,
    pub expected: ExpectedRecord,
    pub matches: bool,
}

impl TableLine {
    fn params_text(&self) -> String {
        self.report
            .label
            .as_ref()
            .map(|l| params_text(&l.params))
            .unwrap_or_default()
    }
}

fn params_text(params: &BTreeMap<String, u32>) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn tuple_text(o: &SweepOutcome) -> String {
    o.item
        .params
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub family: String,
    pub total: usize,
    pub f_liftable: usize,
    pub not_liftable: Vec<String>,
    pub errors: Vec<String>,
    pub interrupted: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityLine {
    pub name: String,
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
    pub modulo: Option<String>,
}

/// Renders every command's results in one output format.
pub trait OutputFormat: Send + Sync {
    fn name(&self) -> &'static str;
    fn reports(&self, reports: &[ReportJson]) -> Result<String>;
    fn table(&self, lines: &[TableLine]) -> Result<String>;
    /// Printed once before any sweep rows.
    fn sweep_header(&self) -> Result<String> {
        Ok(String::new())
    }
    fn sweep_rows(&self, family: &str, rows: &[SweepOutcome], timings: bool) -> Result<String>;
    fn sweep_summary(&self, summary: &SweepSummary) -> Result<String>;
    fn identities(&self, lines: &[IdentityLine]) -> Result<String>;
}

pub struct FormatRegistry {
    entries: Vec<Box<dyn OutputFormat>>,
}

impl Default for FormatRegistry {
    fn default() -> Self {
        FormatRegistry {
            entries: vec![
                Box::new(Text),
                Box::new(Json),
                Box::new(Csv),
                Box::new(Markdown),
            ],
        }
    }
}

impl FormatRegistry {
    pub fn get(&self, name: &str) -> Result<&dyn OutputFormat> {
        self.entries
            .iter()
            .find(|f| f.name() == name)
            .map(|f| f.as_ref())
            .ok_or_else(|| {
                let names: Vec<_> = self.entries.iter().map(|f| f.name()).collect();
                anyhow!(
                    "unknown format {name:?}; expected one of {}",
                    names.join(", ")
                )
            })
    }
}

fn ms(o: &SweepOutcome, timings: bool) -> f64 {
    if timings {
        (o.ms * 1000.0).round() / 1000.0
    } else {
        0.0
    }
}

struct Text;

impl OutputFormat for Text {
    fn name(&self) -> &'static str {
        "text"
    }

    fn reports(&self, reports: &[ReportJson]) -> Result<String> {
        let mut out = String::new();
        for r in reports {
            out += &format!("p = {}, variables {}\n", r.p, r.variables.join(","));
            for g in &r.generators {
                out += &format!("  {g}\n");
            }
            out += &format!("status: {} ({})\n", r.status.name(), r.singularity.name());
            out += &format!(
                "F-pure: {}  F-liftable: {}  conclusive: {}\n",
                yn(r.f_pure),
                yn(r.f_liftable),
                yn(r.conclusive)
            );
            let c = &r.certificate;
            if let Some(m) = &c.fedder_survivor {
                out += &format!(
                    "Fedder witness: {m}, sigma(1) at origin: {}\n",
                    c.sigma_trace_constant
                );
            }
            for (i, g) in c.g.iter().enumerate() {
                out += &format!("g[{i}] = {g}\n");
            }
            for (i, rem) in c.remainder.iter().enumerate() {
                out += &format!("remainder[{i}] = {rem}\n");
            }
            if c.localized {
                out += "membership decided after localizing at the origin\n";
            }
            if let Some(cof) = &c.cofactors {
                for (i, h) in cof.iter().enumerate() {
                    out += &format!("cofactor[{i}] = {h}\n");
                }
            }
        }
        Ok(out)
    }

    fn table(&self, lines: &[TableLine]) -> Result<String> {
        let mut out = format!(
            "{:>3}  {:<4} {:<14} {:<8} {:<28} {:>6} {:>10} {:>16} {:>10} {:>10}  {}\n",
            "row",
            "p",
            "type",
            "params",
            "equation",
            "F-pure",
            "F-liftable",
            "F-regular(lit.)",
            "RET(lit.)",
            "LET(lit.)",
            "check"
        );
        for l in lines {
            let family = l.report.label.as_ref().map_or("", |x| x.family.as_str());
            out += &format!(
                "{:>3}  {:<4} {:<14} {:<8} {:<28} {:>6} {:>10} {:>16} {:>10} {:>10}  {}\n",
                l.row + 1,
                l.report.p,
                family,
                l.params_text(),
                l.report.generators.join(", "),
                yn(l.report.f_pure),
                yn(l.report.f_liftable),
                yn(l.expected.f_regular_ref),
                yn(l.expected.ret_ref),
                yn(l.expected.let_ref),
                if l.matches { "ok" } else { "MISMATCH" }
            );
        }
        let bad = lines.iter().filter(|l| !l.matches).count();
        out += &format!("{} instances, {} mismatches\n", lines.len(), bad);
        Ok(out)
    }

    fn sweep_rows(&self, family: &str, rows: &[SweepOutcome], timings: bool) -> Result<String> {
        let mut out = String::new();
        for o in rows {
            out += &format!(
                "{family} p={} ({}) F-pure {} F-liftable {}",
                o.item.p,
                tuple_text(o),
                yn(o.f_pure),
                yn(o.f_liftable)
            );
            if !o.conclusive {
                out += " (inconclusive)";
            }
            if let Some(e) = &o.error {
                out += &format!(" error: {e}");
            }
            if timings {
                out += &format!(" {:.3} ms", o.ms);
            }
            out.push('\n');
        }
        Ok(out)
    }

    fn sweep_summary(&self, s: &SweepSummary) -> Result<String> {
        let mut out = format!(
            "{}: {} tuples, {} F-liftable, {} not F-liftable, {} errors{}\n",
            s.family,
            s.total,
            s.f_liftable,
            s.not_liftable.len(),
            s.errors.len(),
            if s.interrupted { ", interrupted" } else { "" }
        );
        for t in &s.not_liftable {
            out += &format!("not F-liftable: {t}\n");
        }
        for e in &s.errors {
            out += &format!("error: {e}\n");
        }
        Ok(out)
    }

    fn identities(&self, lines: &[IdentityLine]) -> Result<String> {
        let mut out = String::new();
        for l in lines {
            if l.holds {
                out += &format!("verified  {}\n", l.name);
            } else {
                out += &format!(
                    "FAILED    {}\n  computed: {}\n  expected: {}\n",
                    l.name, l.lhs, l.rhs
                );
                if let Some(m) = &l.modulo {
                    out += &format!("  modulo:   {m}\n");
                }
            }
        }
        Ok(out)
    }
}

struct Json;

impl OutputFormat for Json {
    fn name(&self) -> &'static str {
        "json"
    }

    fn reports(&self, reports: &[ReportJson]) -> Result<String> {
        let text = match reports {
            [one] => serde_json::to_string_pretty(one)?,
            many => serde_json::to_string_pretty(many)?,
        };
        Ok(text + "\n")
    }

    fn table(&self, lines: &[TableLine]) -> Result<String> {
        Ok(serde_json::to_string_pretty(lines)? + "\n")
    }

    /// One JSON object per line.
    fn sweep_rows(&self, family: &str, rows: &[SweepOutcome], timings: bool) -> Result<String> {
        let mut out = String::new();
        for o in rows {
            let v = serde_json::json!({
                "family": family,
                "p": o.item.p,
                "params": o.item.params,
                "f_pure": o.f_pure,
                "f_liftable": o.f_liftable,
                "conclusive": o.conclusive,
                "localized": o.localized,
                "error": o.error,
                "ms": ms(o, timings),
            });
            out += &serde_json::to_string(&v)?;
            out.push('\n');
        }
        Ok(out)
    }

    fn sweep_summary(&self, s: &SweepSummary) -> Result<String> {
        Ok(serde_json::to_string(&serde_json::json!({ "summary": s }))? + "\n")
    }

    fn identities(&self, lines: &[IdentityLine]) -> Result<String> {
        Ok(serde_json::to_string_pretty(lines)? + "\n")
    }
}

const CSV_HEADER: [&str; 7] = [
    "p",
    "family",
    "params",
    "f_pure",
    "f_liftable",
    "conclusive",
    "ms",
];

fn csv_text(rows: Vec<[String; 7]>, header: bool) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if header {
        w.write_record(CSV_HEADER)?;
    }
    for r in rows {
        w.write_record(&r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn csv_report_row(r: &ReportJson, family: &str, params: String) -> [String; 7] {
    [
        r.p.to_string(),
        family.to_string(),
        params,
        yn(r.f_pure).into(),
        yn(r.f_liftable).into(),
        yn(r.conclusive).into(),
        r.timings_ms.total.to_string(),
    ]
}

struct Csv;

impl OutputFormat for Csv {
    fn name(&self) -> &'static str {
        "csv"
    }

    fn reports(&self, reports: &[ReportJson]) -> Result<String> {
        let rows = reports
            .iter()
            .map(|r| csv_report_row(r, "input", r.generators.join(";")))
            .collect();
        csv_text(rows, true)
    }

    fn table(&self, lines: &[TableLine]) -> Result<String> {
        let rows = lines
            .iter()
            .map(|l| {
                let family = l.report.label.as_ref().map_or("", |x| x.family.as_str());
                csv_report_row(&l.report, family, l.params_text())
            })
            .collect();
        csv_text(rows, true)
    }

    fn sweep_header(&self) -> Result<String> {
        csv_text(Vec::new(), true)
    }

    fn sweep_rows(&self, family: &str, rows: &[SweepOutcome], timings: bool) -> Result<String> {
        let rows = rows
            .iter()
            .map(|o| {
                [
                    o.item.p.to_string(),
                    family.to_string(),
                    tuple_text(o).replace(',', ";"),
                    yn(o.f_pure).into(),
                    yn(o.f_liftable).into(),
                    yn(o.conclusive).into(),
                    ms(o, timings).to_string(),
                ]
            })
            .collect();
        csv_text(rows, false)
    }

    fn sweep_summary(&self, _summary: &SweepSummary) -> Result<String> {
        Ok(String::new())
    }

    fn identities(&self, lines: &[IdentityLine]) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["identity", "holds"])?;
        for l in lines {
            w.write_record([l.name.as_str(), yn(l.holds)])?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

struct Markdown;

/// `Y` when every instance agrees on `Y`, `N` when all `N`, otherwise both.
fn aggregate(values: impl Iterator<Item = bool>) -> &'static str {
    let v: Vec<bool> = values.collect();
    match (v.iter().all(|&b| b), v.iter().all(|&b| !b)) {
        (true, _) => "Y",
        (_, true) => "N",
        _ => "Y/N",
    }
}

impl OutputFormat for Markdown {
    fn name(&self) -> &'static str {
        "md"
    }

    fn reports(&self, reports: &[ReportJson]) -> Result<String> {
        let mut out = String::from("| p | equations | status | F-pure? | F-liftable? | conclusive |\n|---|---|---|---|---|---|\n");
        for r in reports {
            out += &format!(
                "| {} | `{}` | {} | {} | {} | {} |\n",
                r.p,
                r.generators.join("`, `"),
                r.status.name(),
                yn(r.f_pure),
                yn(r.f_liftable),
                yn(r.conclusive)
            );
        }
        Ok(out)
    }

    /// One line per table row, in the table's column order.
    fn table(&self, lines: &[TableLine]) -> Result<String> {
        let mut out = String::from(
            "| $p$ | type | equation | $F$-pure? | $F$-regular? (lit.) | $F$-liftable? | RET? (lit.) | LET? (lit.) | instances |\n\
             |---|---|---|---|---|---|---|---|---|\n",
        );
        let mut rows: BTreeMap<usize, Vec<&TableLine>> = BTreeMap::new();
        for l in lines {
            rows.entry(l.row).or_default().push(l);
        }
        for group in rows.values() {
            let first = group[0];
            let e = first.expected;
            out += &format!(
                "| ${}$ | ${}$ | ${}$ | {} | {} | {} | {} | {} | {} |\n",
                first.p_column,
                first.type_tex.replace('|', r"\|"),
                first.equation_tex,
                aggregate(group.iter().map(|l| l.report.f_pure)),
                yn(e.f_regular_ref),
                aggregate(group.iter().map(|l| l.report.f_liftable)),
                yn(e.ret_ref),
                yn(e.let_ref),
                group.len()
            );
        }
        Ok(out)
    }

    fn sweep_header(&self) -> Result<String> {
        Ok("| family | p | exponents | F-pure? | F-liftable? | conclusive |\n|---|---|---|---|---|---|\n".into())
    }

    fn sweep_rows(&self, family: &str, rows: &[SweepOutcome], _timings: bool) -> Result<String> {
        Ok(rows
            .iter()
            .map(|o| {
                format!(
                    "| {family} | {} | {} | {} | {} | {} |\n",
                    o.item.p,
                    tuple_text(o),
                    yn(o.f_pure),
                    yn(o.f_liftable),
                    yn(o.conclusive)
                )
            })
            .collect())
    }

    fn sweep_summary(&self, s: &SweepSummary) -> Result<String> {
        Ok(format!(
            "\n{} tuples, {} F-liftable, {} not F-liftable, {} errors\n",
            s.total,
            s.f_liftable,
            s.not_liftable.len(),
            s.errors.len()
        ))
    }

    fn identities(&self, lines: &[IdentityLine]) -> Result<String> {
        let mut out = String::from("| identity | holds |\n|---|---|\n");
        for l in lines {
            out += &format!("| {} | {} |\n", l.name, yn(l.holds));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookup() {
        let reg = FormatRegistry::default();
        for name in ["text", "json", "csv", "md"] {
            assert_eq!(reg.get(name).unwrap().name(), name);
        }
        assert!(reg.get("xml").is_err());
    }

    #[test]
    fn aggregation() {
        assert_eq!(aggregate([true, true].into_iter()), "Y");
        assert_eq!(aggregate([false].into_iter()), "N");
        assert_eq!(aggregate([true, false].into_iter()), "Y/N");
    }
}
