use std::cmp::Ordering;
use std::fmt;

use super::monomial::Monomial;
use super::poly::Poly;

/// Output style for [`format_poly`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    /// Reparses to the same polynomial.
    Canonical,
    Latex,
}

/// Graded reverse lexicographic comparison, variables prioritised in ambient order.
pub fn degrevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
            match x.cmp(y) {
                Ordering::Equal => continue,
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    })
}

/// Terms in display order: degrevlex descending.
pub fn display_terms(f: &Poly) -> Vec<(&Monomial, u32)> {
    let mut terms: Vec<_> = f.terms().collect();
    terms.sort_by(|a, b| degrevlex_cmp(b.0, a.0));
    terms
}

pub fn format_monomial(f: &Poly, m: &Monomial, style: Style) -> String {
    let vars = f.ring().vars();
    let single = vars.iter().all(|v| v.len() == 1);
    let mut parts = Vec::new();
    for (v, &e) in vars.iter().zip(m.exponents()) {
        match (e, style) {
            (0, _) => {}
            (1, _) => parts.push(v.clone()),
            (e, Style::Canonical) => parts.push(format!("{v}^{e}")),
            (e, Style::Latex) => parts.push(format!("{v}^{{{e}}}")),
        }
    }
    if parts.is_empty() {
        return "1".into();
    }
    match style {
        Style::Canonical => parts.join("*"),
        Style::Latex if single => parts.concat(),
        Style::Latex => parts.join(" "),
    }
}

pub fn format_poly(f: &Poly, style: Style) -> String {
    if f.is_zero() {
        return "0".into();
    }
    display_terms(f)
        .into_iter()
        .map(|(m, c)| {
            if m.is_one() {
                c.to_string()
            } else {
                let mono = format_monomial(f, m, style);
                match (c, style) {
                    (1, _) => mono,
                    (c, Style::Canonical) => format!("{c}*{mono}"),
                    (c, Style::Latex) => format!("{c}{mono}"),
                }
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(self, Style::Canonical))
    }
}
