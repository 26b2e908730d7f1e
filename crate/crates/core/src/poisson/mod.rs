//! The Poisson bracket on the character ring of a surface, computed from an
//! unoriented state sum and from the skein commutator.
//!
//! At `h = 0` a basis multicurve stands for the product of `-tr` over its
//! components, so character elements are rational combinations of
//! multicurves and multiply through the skein product at `A = -1`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::diagram::{build_product_diagram, Multicurve, PreparedDiagram, SurfaceKind};
use crate::rings::TruncatedSeries;
use crate::skein::{skein_commutator_bounded, skein_mul_bounded, SkeinElement, SkeinError, DEFAULT_MAX_CROSSINGS};

pub type CharacterElement = SkeinElement<BigRational>;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn check_surface(surface: SurfaceKind, m: &Multicurve) -> Result<(), SkeinError> {
    match m.surface() {
        Some(s) if s != surface => Err(SkeinError::SurfaceMismatch(surface, s)),
        _ => Ok(()),
    }
}

/// Product in the character ring.
pub fn character_mul(x: &CharacterElement, y: &CharacterElement) -> Result<CharacterElement, SkeinError> {
    skein_mul_bounded(x, y, DEFAULT_MAX_CROSSINGS)
}

/// `sum over states of (-1)^k (#A - #B)/2 * n_S` for the diagram of `alpha`
/// stacked over `beta`, where `n_S = (-2)^(trivial circles) * multicurve`.
/// Parallel families are resolved in one state sum.
pub fn poisson_statesum_direct(
    surface: SurfaceKind,
    alpha: &Multicurve,
    beta: &Multicurve,
) -> Result<CharacterElement, SkeinError> {
    check_surface(surface, alpha)?;
    check_surface(surface, beta)?;
    if surface == SurfaceKind::Disk {
        return Ok(CharacterElement::zero(surface));
    }
    let d = build_product_diagram(surface, alpha, beta)?;
    let k = d.num_crossings();
    if k > DEFAULT_MAX_CROSSINGS {
        return Err(SkeinError::CrossingBound {
            crossings: k,
            bound: DEFAULT_MAX_CROSSINGS,
        });
    }
    let pd = PreparedDiagram::new(&d);
    let mut counts: HashMap<(Multicurve, u32, u32), i64> = HashMap::new();
    let mut visited = Vec::new();
    for mask in 0..1u64 << k {
        let (trivial, m) = pd.resolve(mask, &mut visited)?;
        *counts.entry((m, mask.count_ones(), trivial)).or_insert(0) += 1;
    }
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let mut out = CharacterElement::zero(surface);
    for ((m, b, trivial), n) in counts {
        let a_minus_b = k as i64 - 2 * b as i64;
        let weight = BigRational::new(BigInt::from(sign * a_minus_b * n), 2.into())
            * rat(-2).pow(trivial as i32);
        out.add_term(m, weight);
    }
    Ok(out)
}

/// State-sum bracket of two basis multicurves. Components of one class are
/// handled by the derivation rule
/// `{x^m, y^n} = m n x^(m-1) y^(n-1) {x, y}`.
pub fn poisson_statesum(surface: SurfaceKind, alpha: &Multicurve, beta: &Multicurve) -> Result<CharacterElement, SkeinError> {
    check_surface(surface, alpha)?;
    check_surface(surface, beta)?;
    let (m1, m2) = (alpha.components(), beta.components());
    if surface != SurfaceKind::Torus || m1 == 0 || m2 == 0 {
        return Ok(CharacterElement::zero(surface));
    }
    let core = poisson_statesum_direct(surface, &alpha.with_multiplicity(1), &beta.with_multiplicity(1))?;
    if m1 == 1 && m2 == 1 {
        return Ok(core);
    }
    let rest = |m: &Multicurve, k: u32| CharacterElement::basis(surface, m.with_multiplicity(k - 1), BigRational::one());
    let factor = character_mul(&rest(alpha, m1), &rest(beta, m2))?;
    Ok(character_mul(&factor, &core)?.scale(&rat(m1 as i64 * m2 as i64)))
}

/// Bilinear extension of `poisson_statesum`.
pub fn poisson_bracket(x: &CharacterElement, y: &CharacterElement) -> Result<CharacterElement, SkeinError> {
    if x.surface() != y.surface() {
        return Err(SkeinError::SurfaceMismatch(x.surface(), y.surface()));
    }
    let mut out = CharacterElement::zero(x.surface());
    for (m1, c1) in x.terms() {
        for (m2, c2) in y.terms() {
            let b = poisson_statesum(x.surface(), m1, m2)?;
            out = out + b.scale(&(c1 * c2));
        }
    }
    Ok(out)
}

/// The `h^0` part of `(xy - yx)/h` for basis multicurves, at order `order`.
pub fn poisson_commutator(
    surface: SurfaceKind,
    alpha: &Multicurve,
    beta: &Multicurve,
    order: usize,
) -> Result<CharacterElement, SkeinError> {
    check_surface(surface, alpha)?;
    check_surface(surface, beta)?;
    let lift = |m: &Multicurve| SkeinElement::basis(surface, *m, TruncatedSeries::one(order));
    let c = skein_commutator_bounded(&lift(alpha), &lift(beta), order, DEFAULT_MAX_CROSSINGS)?;
    Ok(c.at_h_zero())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaReport {
    pub statesum: CharacterElement,
    pub commutator: CharacterElement,
}

impl ThetaReport {
    pub fn agrees(&self) -> bool {
        self.statesum == self.commutator
    }
}

/// Computes the bracket both ways for comparison.
pub fn theta_morphism_check(
    surface: SurfaceKind,
    alpha: &Multicurve,
    beta: &Multicurve,
    order: usize,
) -> Result<ThetaReport, SkeinError> {
    Ok(ThetaReport {
        statesum: poisson_statesum(surface, alpha, beta)?,
        commutator: poisson_commutator(surface, alpha, beta, order)?,
    })
}

/// Primitive classes `(p,q)` with `|p|, |q| <= bound`, one per unoriented
/// class.
pub fn primitive_classes(bound: i64) -> Vec<Multicurve> {
    let mut out = Vec::new();
    for p in 0..=bound {
        for q in -bound..=bound {
            if (p == 0 && q <= 0) || num_integer::gcd(p, q) != 1 {
                continue;
            }
            out.push(Multicurve::Torus { p, q, m: 1 });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: SurfaceKind = SurfaceKind::Torus;

    fn t(p: i64, q: i64) -> Multicurve {
        Multicurve::torus(p, q, 1).unwrap()
    }

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    #[test]
    fn basic_pair() {
        let expected = CharacterElement::from_terms(T, [(t(1, 1), -half()), (t(1, -1), half())]);
        assert_eq!(poisson_statesum(T, &t(1, 0), &t(0, 1)).unwrap(), expected);
        for n in 1..=5 {
            assert_eq!(poisson_commutator(T, &t(1, 0), &t(0, 1), n).unwrap(), expected);
        }
    }

    #[test]
    fn vanishing_cases() {
        let a = SurfaceKind::Annulus;
        assert!(poisson_statesum(a, &Multicurve::core(2), &Multicurve::core(3)).unwrap().is_zero());
        assert!(poisson_commutator(a, &Multicurve::core(2), &Multicurve::core(3), 3).unwrap().is_zero());
        assert!(poisson_statesum(T, &t(2, 1), &t(2, 1)).unwrap().is_zero());
        assert!(poisson_statesum(SurfaceKind::Disk, &Multicurve::Empty, &Multicurve::Empty).unwrap().is_zero());
        assert!(poisson_statesum(T, &Multicurve::Empty, &t(1, 0)).unwrap().is_zero());
    }

    #[test]
    fn surface_mismatch() {
        assert!(poisson_statesum(T, &Multicurve::core(1), &t(1, 0)).is_err());
    }

    #[test]
    fn primitive_class_count() {
        assert_eq!(primitive_classes(1).len(), 4);
        assert_eq!(primitive_classes(3).len(), 16);
    }

    #[test]
    fn derivation_rule_matches_direct_sum() {
        let x2 = Multicurve::torus(1, 0, 2).unwrap();
        let y = t(1, 1);
        let leibniz = poisson_statesum(T, &x2, &y).unwrap();
        let direct = poisson_statesum_direct(T, &x2, &y).unwrap();
        assert_eq!(leibniz, direct);
        assert!(!leibniz.is_zero());
    }
}
