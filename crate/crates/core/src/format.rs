//! Line-oriented machine records and the diagram-combination input format.
//!
//! Records are tab-separated with the record kind first, e.g. the fields
//! `term`, `(1,1)`, `A` on one line after a `surface`, `torus` line.

use std::fmt::Write as _;

use num_rational::BigRational;
use thiserror::Error;

use crate::diagram::{parse_diagram, Diagram, DiagramError, Multicurve, SurfaceKind};
use crate::invariants::CoefficientTable;
use crate::rings::text::{parse_laurent, parse_rational_text, parse_series, ExprError};
use crate::rings::{LaurentPolynomial, TruncatedSeries, Valuation};
use crate::skein::{Coefficient, SkeinElement};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Record { line: usize, message: String },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

fn record_error(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Record {
        line,
        message: message.into(),
    }
}

/// Coefficients that can be read back from their `Display` text.
pub trait ParseCoefficient: Coefficient + Sized {
    fn parse_text(text: &str) -> Result<Self, ExprError>;
}

impl ParseCoefficient for LaurentPolynomial {
    fn parse_text(text: &str) -> Result<Self, ExprError> {
        parse_laurent(text)
    }
}

impl ParseCoefficient for TruncatedSeries {
    fn parse_text(text: &str) -> Result<Self, ExprError> {
        parse_series(text, 0)
    }
}

impl ParseCoefficient for BigRational {
    fn parse_text(text: &str) -> Result<Self, ExprError> {
        parse_rational_text(text)
    }
}

pub fn write_element<C: Coefficient>(x: &SkeinElement<C>) -> String {
    let mut out = format!("surface\t{}\n", x.surface());
    for (m, c) in x.terms() {
        writeln!(out, "term\t{m}\t{c}").unwrap();
    }
    out
}

pub fn read_element<C: ParseCoefficient>(text: &str) -> Result<SkeinElement<C>, FormatError> {
    let mut surface = None;
    let mut terms = Vec::new();
    for (n, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let fields: Vec<&str> = line.split('\t').collect();
        match fields.as_slice() {
            ["surface", s] => surface = Some(s.parse::<SurfaceKind>()?),
            ["term", m, c] => {
                let m: Multicurve = m.parse()?;
                let c = C::parse_text(c).map_err(|e| record_error(n + 1, e.to_string()))?;
                terms.push((n + 1, m, c));
            }
            _ => return Err(record_error(n + 1, format!("unexpected record `{line}`"))),
        }
    }
    let surface = surface.ok_or(DiagramError::MissingSurface)?;
    let mut x = SkeinElement::zero(surface);
    for (line, m, c) in terms {
        if m.surface().is_some_and(|s| s != surface) {
            return Err(record_error(line, format!("{m} is not on the {surface}")));
        }
        x.add_term(m, c);
    }
    Ok(x)
}

pub fn write_table(t: &CoefficientTable) -> String {
    let mut out = format!("table\t{}\n", t.order());
    for (i, m, c) in t.rows() {
        writeln!(out, "coef\t{i}\t{m}\t{c}").unwrap();
    }
    out
}

/// Reads a table back as `(order, rows)`.
/// Table rows `(i, alpha, coefficient)`.
pub type TableRows = Vec<(usize, Multicurve, BigRational)>;

pub fn read_table(text: &str) -> Result<(usize, TableRows), FormatError> {
    let mut order = None;
    let mut rows = Vec::new();
    for (n, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let fields: Vec<&str> = line.split('\t').collect();
        let bad = |what: &str| record_error(n + 1, format!("bad {what} in `{line}`"));
        match fields.as_slice() {
            ["table", o] => order = Some(o.parse::<usize>().map_err(|_| bad("order"))?),
            ["coef", i, m, c] => rows.push((
                i.parse::<usize>().map_err(|_| bad("order"))?,
                m.parse::<Multicurve>()?,
                parse_rational_text(c).map_err(|_| bad("rational"))?,
            )),
            _ => return Err(bad("record")),
        }
    }
    Ok((order.ok_or_else(|| record_error(1, "missing table header"))?, rows))
}

pub fn write_valuation(v: Valuation) -> String {
    match v {
        Valuation::Exact(i) => format!("valuation\texact\t{i}\n"),
        Valuation::AtLeast(i) => format!("valuation\tatleast\t{i}\n"),
    }
}

pub fn read_valuation(text: &str) -> Result<Valuation, FormatError> {
    let line = text.trim();
    let fields: Vec<&str> = line.split('\t').collect();
    let bad = || record_error(1, format!("bad valuation record `{line}`"));
    match fields.as_slice() {
        ["valuation", kind, v] => {
            let v = v.parse::<usize>().map_err(|_| bad())?;
            match *kind {
                "exact" => Ok(Valuation::Exact(v)),
                "atleast" => Ok(Valuation::AtLeast(v)),
                _ => Err(bad()),
            }
        }
        _ => Err(bad()),
    }
}

/// Parses a combination of diagrams. A `term <series>` line starts a new
/// diagram with that coefficient; the surface is declared once, before the
/// first term. A file without `term` lines is one diagram with coefficient 1.
/// Line numbers in errors refer to the whole file.
pub fn parse_combination(text: &str, order: usize) -> Result<Vec<(TruncatedSeries, Diagram)>, FormatError> {
    let lines: Vec<&str> = text.lines().collect();
    let starts: Vec<usize> = lines
        .iter()
        .enumerate()
        .filter(|(_, l)| l.trim_start().starts_with("term ") || l.trim() == "term")
        .map(|(i, _)| i)
        .collect();
    if starts.is_empty() {
        return Ok(vec![(TruncatedSeries::one(order), parse_diagram(text)?)]);
    }
    let header = &lines[..starts[0]];
    let mut out = Vec::new();
    for (k, &s) in starts.iter().enumerate() {
        let end = starts.get(k + 1).copied().unwrap_or(lines.len());
        let coeff_text = lines[s].trim_start().strip_prefix("term").unwrap_or("").trim();
        let coeff_text = coeff_text.split('#').next().unwrap_or("").trim();
        if coeff_text.is_empty() {
            return Err(record_error(s + 1, "`term` needs a coefficient"));
        }
        let coeff = parse_series(coeff_text, order)
            .map_err(|e| record_error(s + 1, e.to_string()))?
            .truncate(order);
        let mut block = String::new();
        for (i, l) in lines.iter().enumerate() {
            if i < header.len() || (i > s && i < end) {
                block.push_str(l);
            }
            block.push('\n');
        }
        out.push((coeff, parse_diagram(&block)?));
    }
    Ok(out)
}
