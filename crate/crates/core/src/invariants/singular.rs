use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::index::sample;
use rand::Rng;

use super::InvariantError;
use crate::diagram::{parse_diagram_with, Diagram, DiagramError, Multicurve};
use crate::rings::{TruncatedSeries, Valuation};
use crate::skein::{normal_form_bounded, SkeinElement, DEFAULT_MAX_CROSSINGS};

pub const DEFAULT_MAX_DOUBLE_POINTS: usize = 12;

/// A diagram some of whose crossings are double points. Each double point
/// resolves to the crossing as drawn minus the switched crossing, times its
/// decoration sign.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularLink {
    base: Diagram,
    doubles: Vec<(usize, i8)>,
}

impl SingularLink {
    pub fn new(base: Diagram, doubles: Vec<(usize, i8)>) -> Result<Self, InvariantError> {
        let mut seen = vec![false; base.num_crossings()];
        for &(c, sign) in &doubles {
            if c >= base.num_crossings() {
                return Err(DiagramError::NoSuchCrossing(c).into());
            }
            if std::mem::replace(&mut seen[c], true) {
                return Err(InvariantError::RepeatedDoublePoint(base.crossings()[c].name.clone()));
            }
            if sign != 1 && sign != -1 {
                return Err(InvariantError::BadDecoration(sign));
            }
        }
        Ok(Self { base, doubles })
    }

    pub fn base(&self) -> &Diagram {
        &self.base
    }

    pub fn doubles(&self) -> &[(usize, i8)] {
        &self.doubles
    }

    pub fn order(&self) -> usize {
        self.doubles.len()
    }

    pub fn flip_decoration(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.doubles[i].1 = -s.doubles[i].1;
        s
    }
}

/// The `2^n` signed resolutions of the double points.
pub fn resolve_singular(s: &SingularLink, max_double_points: usize) -> Result<Vec<(i64, Diagram)>, InvariantError> {
    let n = s.order();
    if n > max_double_points {
        return Err(InvariantError::DoublePointBound {
            count: n,
            bound: max_double_points,
        });
    }
    let decoration: i64 = s.doubles.iter().map(|&(_, d)| d as i64).product();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0..1u32 << n {
        let switched: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| s.doubles[i].0).collect();
        let sign = if switched.len().is_multiple_of(2) { decoration } else { -decoration };
        out.push((sign, s.base.switch_crossings(&switched)));
    }
    Ok(out)
}

/// Normal form of the resolved combination at order `order`.
pub fn singular_normal_form(s: &SingularLink, order: usize) -> Result<SkeinElement<TruncatedSeries>, InvariantError> {
    let combo: Vec<(TruncatedSeries, Diagram)> = resolve_singular(s, DEFAULT_MAX_DOUBLE_POINTS)?
        .into_iter()
        .map(|(sign, d)| (TruncatedSeries::constant(BigRational::from_integer(sign.into()), order), d))
        .collect();
    Ok(normal_form_bounded(&combo, order, DEFAULT_MAX_CROSSINGS)?)
}

/// Least h-valuation of the resolved normal form.
pub fn fti_valuation(s: &SingularLink, order: usize) -> Result<Valuation, InvariantError> {
    if order < s.order() {
        return Err(InvariantError::OrderTooSmall {
            order,
            needed: s.order(),
        });
    }
    Ok(singular_normal_form(s, order)?.valuation(order))
}

/// Marks `n` distinct random crossings of `d` as double points with random
/// decorations.
pub fn random_singular(d: &Diagram, n: usize, rng: &mut impl Rng) -> Result<SingularLink, InvariantError> {
    if n > d.num_crossings() {
        return Err(InvariantError::DoublePointBound {
            count: n,
            bound: d.num_crossings(),
        });
    }
    let mut picks: Vec<usize> = sample(rng, d.num_crossings(), n).into_vec();
    picks.sort_unstable();
    let doubles = picks
        .into_iter()
        .map(|c| (c, if rng.gen_bool(0.5) { 1 } else { -1 }))
        .collect();
    SingularLink::new(d.clone(), doubles)
}

/// Parses a diagram with extra `double <crossing> [+|-]` statements.
pub fn parse_singular(text: &str) -> Result<SingularLink, InvariantError> {
    let mut marks: Vec<(usize, String, i8)> = Vec::new();
    let mut bad = None;
    let d = parse_diagram_with(text, |line, stmt| {
        let mut words = stmt.split_whitespace();
        if words.next() != Some("double") {
            return Ok(false);
        }
        let name = words.next();
        let sign = match words.next() {
            None | Some("+") => 1,
            Some("-") => -1,
            Some(other) => {
                bad.get_or_insert((line, format!("decoration must be + or -, found `{other}`")));
                1
            }
        };
        match (name, words.next()) {
            (Some(name), None) => marks.push((line, name.to_string(), sign)),
            _ => {
                bad.get_or_insert((line, "expected `double <crossing> [+|-]`".to_string()));
            }
        }
        Ok(true)
    })?;
    if let Some((line, message)) = bad {
        return Err(DiagramError::Syntax { line, message }.into());
    }
    let mut doubles = Vec::new();
    for (line, name, sign) in marks {
        let c = d.crossing_index(&name).ok_or_else(|| DiagramError::Syntax {
            line,
            message: format!("no crossing named `{name}`"),
        })?;
        doubles.push((c, sign));
    }
    SingularLink::new(d, doubles)
}

/// Coefficients of `h^i * alpha` in a normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTable {
    order: usize,
    entries: BTreeMap<(usize, Multicurve), BigRational>,
}

impl CoefficientTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, alpha: &Multicurve) -> BigRational {
        self.entries.get(&(i, *alpha)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero entries ordered by `(i, alpha)`.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &Multicurve, &BigRational)> + '_ {
        self.entries.iter().map(|((i, m), c)| (*i, m, c))
    }

    /// Whether every entry of order `<= i` vanishes.
    pub fn vanishes_through(&self, i: usize) -> bool {
        self.entries.keys().all(|(k, _)| *k > i)
    }
}

impl fmt::Display for CoefficientTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m, c) in self.rows() {
            writeln!(f, "{i}, {m}, {c}")?;
        }
        Ok(())
    }
}

pub fn fti_coefficients(x: &SkeinElement<TruncatedSeries>, order: usize) -> CoefficientTable {
    let mut entries = BTreeMap::new();
    for (m, c) in x.terms() {
        for (i, v) in c.coeffs().iter().enumerate() {
            if i <= order && !v.is_zero() {
                entries.insert((i, *m), v.clone());
            }
        }
    }
    CoefficientTable { order, entries }
}
