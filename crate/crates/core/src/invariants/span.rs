use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::InvariantError;
use crate::diagram::{Multicurve, SurfaceKind};
use crate::rings::{LaurentPolynomial, TruncatedSeries};
use crate::skein::{skein_mul_bounded, SkeinElement, DEFAULT_MAX_CROSSINGS};

pub const DEFAULT_MAX_SPAN_DEGREE: u32 = 6;

/// A framed knot for cabling: a one-component multicurve with blackboard
/// framing, or a zero-framed trivial circle on any surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FramedKnot {
    Curve(Multicurve),
    Unknot,
}

impl FramedKnot {
    pub fn curve(m: Multicurve) -> Result<Self, InvariantError> {
        if m.components() != 1 {
            return Err(InvariantError::NotAKnot(m));
        }
        Ok(FramedKnot::Curve(m))
    }
}

/// `n` parallel copies of `k` as a skein element.
fn power(surface: SurfaceKind, k: &FramedKnot, n: u32) -> Result<SkeinElement<LaurentPolynomial>, InvariantError> {
    match k {
        FramedKnot::Unknot => Ok(SkeinElement::basis(surface, Multicurve::Empty, LaurentPolynomial::delta().pow(n))),
        FramedKnot::Curve(m) => {
            if let Some(s) = m.surface() {
                if s != surface {
                    return Err(InvariantError::Skein(crate::skein::SkeinError::SurfaceMismatch(surface, s)));
                }
            }
            Ok(SkeinElement::basis(surface, m.with_multiplicity(n), LaurentPolynomial::one()))
        }
    }
}

/// The `(n_1, ..., n_m)`-cable: `n_i` parallel copies of the `i`-th
/// component, components stacked in order. Zero counts drop the component.
pub fn cable(
    surface: SurfaceKind,
    components: &[FramedKnot],
    counts: &[u32],
) -> Result<SkeinElement<LaurentPolynomial>, InvariantError> {
    if components.len() != counts.len() {
        return Err(InvariantError::CableArity {
            components: components.len(),
            counts: counts.len(),
        });
    }
    let mut acc = SkeinElement::basis(surface, Multicurve::Empty, LaurentPolynomial::one());
    for (k, &n) in components.iter().zip(counts) {
        if n == 0 {
            continue;
        }
        acc = skein_mul_bounded(&acc, &power(surface, k, n)?, DEFAULT_MAX_CROSSINGS)?;
    }
    Ok(acc)
}

/// A combination of generator monomials that equals the target.
#[derive(Clone, Debug, PartialEq)]
pub struct SpanWitness {
    pub generators: Vec<Multicurve>,
    /// Series coefficient and exponent vector of each monomial used.
    pub terms: Vec<(TruncatedSeries, Vec<u32>)>,
}

impl SpanWitness {
    pub fn coefficient(&self, exponents: &[u32]) -> Option<&TruncatedSeries> {
        self.terms.iter().find(|(_, e)| e == exponents).map(|(c, _)| c)
    }

    /// Prefix expression text, e.g. `(+ (* c (* (1,0) (1,1))) (* c (0,1)))`.
    pub fn to_prefix(&self) -> String {
        let monomial = |e: &[u32]| {
            let factors: Vec<String> = e
                .iter()
                .zip(&self.generators)
                .filter(|(n, _)| **n > 0)
                .map(|(n, g)| if *n == 1 { g.to_string() } else { format!("(cable {g} {n})") })
                .collect();
            match factors.len() {
                0 => "empty".to_string(),
                1 => factors[0].clone(),
                _ => format!("(* {})", factors.join(" ")),
            }
        };
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(c, e)| format!("(* [{c}] {})", monomial(e)))
            .collect();
        match terms.len() {
            0 => "0".to_string(),
            1 => terms[0].clone(),
            _ => format!("(+ {})", terms.join(" ")),
        }
    }
}

impl fmt::Display for SpanWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_prefix())
    }
}

fn exponent_vectors(n: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, degree, &mut Vec::new(), &mut out);
    out.sort_by_key(|e| (e.iter().sum::<u32>(), std::cmp::Reverse(e.clone())));
    out
}

/// Tries to write `target` as a series-coefficient combination of ordered
/// products `g_1^e_1 ... g_k^e_k` of total degree at most `degree`, modulo
/// `h^(order+1)`. The linear system over the rationals is solved exactly;
/// `Ok(None)` means no such combination exists.
pub fn span_check(
    generators: &[Multicurve],
    target: &Multicurve,
    degree: u32,
    order: usize,
) -> Result<Option<SpanWitness>, InvariantError> {
    span_check_bounded(generators, target, degree, order, DEFAULT_MAX_SPAN_DEGREE)
}

pub fn span_check_bounded(
    generators: &[Multicurve],
    target: &Multicurve,
    degree: u32,
    order: usize,
    max_degree: u32,
) -> Result<Option<SpanWitness>, InvariantError> {
    if degree > max_degree {
        return Err(InvariantError::DegreeBound {
            degree,
            bound: max_degree,
        });
    }
    let surface = SurfaceKind::Torus;
    let knots = generators
        .iter()
        .map(|g| FramedKnot::curve(*g))
        .collect::<Result<Vec<_>, _>>()?;
    if target.surface().is_some_and(|s| s != surface) {
        return Err(InvariantError::Skein(crate::skein::SkeinError::SurfaceMismatch(
            surface,
            target.surface().unwrap(),
        )));
    }

    let monomials = exponent_vectors(generators.len(), degree);
    let mut columns: Vec<SkeinElement<TruncatedSeries>> = Vec::with_capacity(monomials.len());
    for e in &monomials {
        columns.push(cable(surface, &knots, e)?.expand(order));
    }

    let mut rows: BTreeMap<(Multicurve, usize), usize> = BTreeMap::new();
    for col in &columns {
        for (m, _) in col.terms() {
            for k in 0..=order {
                let next = rows.len();
                rows.entry((*m, k)).or_insert(next);
            }
        }
    }
    for k in 0..=order {
        let next = rows.len();
        rows.entry((*target, k)).or_insert(next);
    }

    // unknown (j, i) is the h^i coefficient of monomial j
    let n_unknowns = monomials.len() * (order + 1);
    let mut system: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n_unknowns + 1]; rows.len()];
    for (j, col) in columns.iter().enumerate() {
        for (m, c) in col.terms() {
            for (l, v) in c.coeffs().iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                for i in 0..=order - l {
                    system[rows[&(*m, i + l)]][j * (order + 1) + i] += v;
                }
            }
        }
    }
    system[rows[&(*target, 0)]][n_unknowns] = BigRational::one();

    let Some(solution) = solve(system, n_unknowns) else {
        return Ok(None);
    };
    let mut terms = Vec::new();
    for (j, e) in monomials.iter().enumerate() {
        let c = TruncatedSeries::from_coeffs(solution[j * (order + 1)..(j + 1) * (order + 1)].to_vec());
        if !c.is_zero() {
            terms.push((c, e.clone()));
        }
    }
    Ok(Some(SpanWitness {
        generators: generators.to_vec(),
        terms,
    }))
}

/// Gauss-Jordan elimination on an augmented matrix; free variables are zero.
fn solve(mut m: Vec<Vec<BigRational>>, n: usize) -> Option<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = m[i][n].clone();
    }
    Some(x)
}

/// Recomputes the combination a witness describes.
pub fn evaluate_witness(w: &SpanWitness, order: usize) -> Result<SkeinElement<TruncatedSeries>, InvariantError> {
    let knots = w
        .generators
        .iter()
        .map(|g| FramedKnot::curve(*g))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = SkeinElement::zero(SurfaceKind::Torus);
    for (c, e) in &w.terms {
        out = out + cable(SurfaceKind::Torus, &knots, e)?.expand(order).scale(c);
    }
    Ok(out)
}
