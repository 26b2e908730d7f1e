//! The skein module of `F x I`: state sums into the multicurve basis, the
//! h-adic normal form, stacking products and commutators.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use thiserror::Error;

use crate::diagram::{build_product_diagram, Diagram, DiagramError, Multicurve, PreparedDiagram, SurfaceKind};
use crate::rings::{expand_laurent, LaurentPolynomial, TruncatedSeries};

mod element;

pub use element::{Coefficient, SkeinElement, UnitCoefficient};

pub const DEFAULT_MAX_CROSSINGS: usize = 24;

/// Below this many crossings the state sum runs on one thread.
const PARALLEL_THRESHOLD: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkeinError {
    #[error("{crossings} crossings exceed the bound of {bound} (2^{crossings} states)")]
    CrossingBound { crossings: usize, bound: usize },
    #[error("surface mismatch: {0} vs {1}")]
    SurfaceMismatch(SurfaceKind, SurfaceKind),
    #[error("commutator has a nonzero h^0 term at {0}")]
    NotDivisible(Multicurve),
    #[error("truncation order must be at least 1")]
    OrderTooSmall,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

type StateCounts = HashMap<(Multicurve, u32, u32), u64>;

fn count_states(pd: &PreparedDiagram, range: std::ops::Range<u64>) -> Result<StateCounts, DiagramError> {
    let mut counts = StateCounts::new();
    let mut visited = Vec::new();
    for mask in range {
        let (trivial, m) = pd.resolve(mask, &mut visited)?;
        *counts.entry((m, mask.count_ones(), trivial)).or_insert(0) += 1;
    }
    Ok(counts)
}

fn merge(mut a: StateCounts, b: StateCounts) -> StateCounts {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Kauffman bracket state sum with the default crossing bound.
pub fn bracket_resolve(d: &Diagram) -> Result<SkeinElement<LaurentPolynomial>, SkeinError> {
    bracket_resolve_bounded(d, DEFAULT_MAX_CROSSINGS)
}

/// `sum over states of A^(#A - #B) delta^(trivial circles) * multicurve`.
pub fn bracket_resolve_bounded(d: &Diagram, max_crossings: usize) -> Result<SkeinElement<LaurentPolynomial>, SkeinError> {
    let k = d.num_crossings();
    if k > max_crossings || k >= 64 {
        return Err(SkeinError::CrossingBound {
            crossings: k,
            bound: max_crossings.min(63),
        });
    }
    let pd = PreparedDiagram::new(d);
    let total = 1u64 << k;
    let counts = if k < PARALLEL_THRESHOLD {
        count_states(&pd, 0..total)?
    } else {
        let chunk = 1u64 << (k - 6);
        (0..64u64)
            .into_par_iter()
            .map(|i| count_states(&pd, i * chunk..(i + 1) * chunk))
            .try_reduce(StateCounts::new, |a, b| Ok(merge(a, b)))?
    };

    let max_trivial = counts.keys().map(|k| k.2).max().unwrap_or(0);
    let delta_pows: Vec<LaurentPolynomial> = (0..=max_trivial).map(|i| LaurentPolynomial::delta().pow(i)).collect();
    let mut grouped: HashMap<Multicurve, HashMap<u32, LaurentPolynomial>> = HashMap::new();
    for ((m, b_count, trivial), n) in counts {
        let exp = k as i32 - 2 * b_count as i32;
        let poly = grouped.entry(m).or_default().entry(trivial).or_insert_with(LaurentPolynomial::zero);
        poly.add_term(exp, n.into());
    }
    let mut out = SkeinElement::zero(d.surface());
    for (m, by_trivial) in grouped {
        for (trivial, poly) in by_trivial {
            out.add_term(m, &poly * &delta_pows[trivial as usize]);
        }
    }
    Ok(out)
}

/// A formal combination of diagrams with series coefficients.
pub type DiagramCombination = Vec<(TruncatedSeries, Diagram)>;

/// The h-adic normal form: every diagram is resolved completely and its
/// bracket expanded at order `order`.
pub fn normal_form(x: &[(TruncatedSeries, Diagram)], order: usize) -> Result<SkeinElement<TruncatedSeries>, SkeinError> {
    normal_form_bounded(x, order, DEFAULT_MAX_CROSSINGS)
}

pub fn normal_form_bounded(
    x: &[(TruncatedSeries, Diagram)],
    order: usize,
    max_crossings: usize,
) -> Result<SkeinElement<TruncatedSeries>, SkeinError> {
    let surface = x.first().map_or(SurfaceKind::Disk, |(_, d)| d.surface());
    let mut out = SkeinElement::zero(surface);
    for (c, d) in x {
        if d.surface() != surface {
            return Err(SkeinError::SurfaceMismatch(surface, d.surface()));
        }
        let c = c.truncate(order);
        let b = bracket_resolve_bounded(d, max_crossings)?;
        out = out + b.expand(order).scale(&c);
    }
    Ok(out)
}

type ProductCache = HashMap<(SurfaceKind, Multicurve, Multicurve), SkeinElement<LaurentPolynomial>>;

fn product_cache() -> &'static Mutex<ProductCache> {
    static CACHE: OnceLock<Mutex<ProductCache>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `x` stacked over `y` for basis multicurves, resolved.
pub fn basis_product(
    surface: SurfaceKind,
    x: &Multicurve,
    y: &Multicurve,
    max_crossings: usize,
) -> Result<SkeinElement<LaurentPolynomial>, SkeinError> {
    for m in [x, y] {
        if let Some(s) = m.surface() {
            if s != surface {
                return Err(SkeinError::SurfaceMismatch(surface, s));
            }
        }
    }
    if surface == SurfaceKind::Disk {
        return Ok(SkeinElement::basis(surface, Multicurve::Empty, LaurentPolynomial::one()));
    }
    let key = (surface, *x, *y);
    if let Some(hit) = product_cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let d = build_product_diagram(surface, x, y)?;
    let r = bracket_resolve_bounded(&d, max_crossings)?;
    product_cache().lock().unwrap().insert(key, r.clone());
    Ok(r)
}

/// Stacking product, `x` over `y`.
pub fn skein_mul<C: Coefficient>(x: &SkeinElement<C>, y: &SkeinElement<C>) -> Result<SkeinElement<C>, SkeinError> {
    skein_mul_bounded(x, y, DEFAULT_MAX_CROSSINGS)
}

pub fn skein_mul_bounded<C: Coefficient>(
    x: &SkeinElement<C>,
    y: &SkeinElement<C>,
    max_crossings: usize,
) -> Result<SkeinElement<C>, SkeinError> {
    if x.surface() != y.surface() {
        return Err(SkeinError::SurfaceMismatch(x.surface(), y.surface()));
    }
    let mut out = SkeinElement::zero(x.surface());
    for (m1, c1) in x.terms() {
        for (m2, c2) in y.terms() {
            let c = c1.mul(c2);
            for (m, p) in basis_product(x.surface(), m1, m2, max_crossings)?.terms() {
                out.add_term(*m, c.scale_laurent(p));
            }
        }
    }
    Ok(out)
}

/// `(xy - yx) / h`, computed at order `order` and returned at `order - 1`.
pub fn skein_commutator(
    x: &SkeinElement<TruncatedSeries>,
    y: &SkeinElement<TruncatedSeries>,
    order: usize,
) -> Result<SkeinElement<TruncatedSeries>, SkeinError> {
    skein_commutator_bounded(x, y, order, DEFAULT_MAX_CROSSINGS)
}

pub fn skein_commutator_bounded(
    x: &SkeinElement<TruncatedSeries>,
    y: &SkeinElement<TruncatedSeries>,
    order: usize,
    max_crossings: usize,
) -> Result<SkeinElement<TruncatedSeries>, SkeinError> {
    if order == 0 {
        return Err(SkeinError::OrderTooSmall);
    }
    let (x, y) = (x.truncate(order), y.truncate(order));
    let diff = skein_mul_bounded(&x, &y, max_crossings)? - skein_mul_bounded(&y, &x, max_crossings)?;
    let mut out = SkeinElement::zero(diff.surface());
    for (m, c) in diff.terms() {
        out.add_term(*m, c.div_h().ok_or(SkeinError::NotDivisible(*m))?);
    }
    Ok(out)
}

/// Lifts a Laurent element into series coefficients.
pub fn to_series(x: &SkeinElement<LaurentPolynomial>, order: usize) -> SkeinElement<TruncatedSeries> {
    x.map_coeffs(|c| expand_laurent(c, order))
}
