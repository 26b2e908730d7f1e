use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::diagram::{Multicurve, SurfaceKind};
use crate::rings::{expand_laurent, LaurentPolynomial, TruncatedSeries, Valuation};

/// Coefficients a skein element can carry. `scale_laurent` multiplies by a
/// Laurent polynomial after moving it into this ring.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale_laurent(&self, p: &LaurentPolynomial) -> Self;
    /// Whether rendering needs parentheses before `* basis`.
    fn is_compound(&self) -> bool;
}

impl Coefficient for LaurentPolynomial {
    fn is_zero(&self) -> bool {
        LaurentPolynomial::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale_laurent(&self, p: &LaurentPolynomial) -> Self {
        self * p
    }
    fn is_compound(&self) -> bool {
        self.num_terms() > 1
    }
}

impl Coefficient for TruncatedSeries {
    fn is_zero(&self) -> bool {
        TruncatedSeries::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale_laurent(&self, p: &LaurentPolynomial) -> Self {
        self * &expand_laurent(p, self.order())
    }
    fn is_compound(&self) -> bool {
        true
    }
}

/// Rational coefficients are the `h = 0` specialization: `A` acts as `-1`.
impl Coefficient for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale_laurent(&self, p: &LaurentPolynomial) -> Self {
        self * BigRational::from_integer(p.eval_at_minus_one())
    }
    fn is_compound(&self) -> bool {
        false
    }
}

/// A finite combination of basis multicurves on one surface.
#[derive(Clone, Debug, PartialEq)]
pub struct SkeinElement<C> {
    surface: SurfaceKind,
    terms: BTreeMap<Multicurve, C>,
}

impl<C: Coefficient> SkeinElement<C> {
    pub fn zero(surface: SurfaceKind) -> Self {
        Self {
            surface,
            terms: BTreeMap::new(),
        }
    }

    /// `coeff * m`. Panics if `m` lives on another surface.
    pub fn basis(surface: SurfaceKind, m: Multicurve, coeff: C) -> Self {
        let mut e = Self::zero(surface);
        e.add_term(m, coeff);
        e
    }

    pub fn from_terms(surface: SurfaceKind, terms: impl IntoIterator<Item = (Multicurve, C)>) -> Self {
        let mut e = Self::zero(surface);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, m: Multicurve, coeff: C) {
        if let Some(s) = m.surface() {
            assert_eq!(s, self.surface, "multicurve {m} is not on the {}", self.surface);
        }
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(c) => {
                let sum = c.add(&coeff);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(m, coeff);
            }
        }
    }

    pub fn surface(&self) -> SurfaceKind {
        self.surface
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Multicurve, &C)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Multicurve) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::from_terms(self.surface, self.terms.iter().map(|(m, c)| (*m, c.mul(k))))
    }

    pub fn scale_laurent(&self, p: &LaurentPolynomial) -> Self {
        Self::from_terms(self.surface, self.terms.iter().map(|(m, c)| (*m, c.scale_laurent(p))))
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> SkeinElement<D> {
        SkeinElement::from_terms(self.surface, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        assert_eq!(self.surface, other.surface, "adding elements on different surfaces");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, if negate { c.neg() } else { c.clone() });
        }
        out
    }
}

impl SkeinElement<LaurentPolynomial> {
    /// Applies `A -> -exp(h/4)` to every coefficient.
    pub fn expand(&self, order: usize) -> SkeinElement<TruncatedSeries> {
        self.map_coeffs(|c| expand_laurent(c, order))
    }

    /// Specializes at `A = -1`.
    pub fn at_h_zero(&self) -> SkeinElement<BigRational> {
        self.map_coeffs(|c| BigRational::from_integer(c.eval_at_minus_one()))
    }

    pub fn invert_variable(&self) -> Self {
        self.map_coeffs(|c| c.invert_variable())
    }
}

impl SkeinElement<TruncatedSeries> {
    /// Least h-valuation over all coefficients; `AtLeast(N + 1)` for zero.
    pub fn valuation(&self, order: usize) -> Valuation {
        self.terms
            .values()
            .map(|c| c.valuation())
            .fold(Valuation::AtLeast(order + 1), Valuation::min)
    }

    pub fn truncate(&self, order: usize) -> Self {
        self.map_coeffs(|c| c.truncate(order))
    }

    /// Exact division by `h`, or `None` if some coefficient has a constant term.
    pub fn div_h(&self) -> Option<Self> {
        let mut out = Self::zero(self.surface);
        for (m, c) in &self.terms {
            out.add_term(*m, c.div_h()?);
        }
        Some(out)
    }

    pub fn at_h_zero(&self) -> SkeinElement<BigRational> {
        self.map_coeffs(|c| c.coeff(0))
    }

    pub fn lift(x: &SkeinElement<BigRational>, order: usize) -> Self {
        x.map_coeffs(|c| TruncatedSeries::constant(c.clone(), order))
    }
}

impl<C: Coefficient> Add for &SkeinElement<C> {
    type Output = SkeinElement<C>;
    fn add(self, o: &SkeinElement<C>) -> SkeinElement<C> {
        self.combine(o, false)
    }
}

impl<C: Coefficient> Sub for &SkeinElement<C> {
    type Output = SkeinElement<C>;
    fn sub(self, o: &SkeinElement<C>) -> SkeinElement<C> {
        self.combine(o, true)
    }
}

impl<C: Coefficient> Add for SkeinElement<C> {
    type Output = SkeinElement<C>;
    fn add(self, o: SkeinElement<C>) -> SkeinElement<C> {
        self.combine(&o, false)
    }
}

impl<C: Coefficient> Sub for SkeinElement<C> {
    type Output = SkeinElement<C>;
    fn sub(self, o: SkeinElement<C>) -> SkeinElement<C> {
        self.combine(&o, true)
    }
}

impl<C: Coefficient> Neg for &SkeinElement<C> {
    type Output = SkeinElement<C>;
    fn neg(self) -> SkeinElement<C> {
        self.map_coeffs(|c| c.neg())
    }
}

impl<C: Coefficient> fmt::Display for SkeinElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // a lone term is printed bare: `A^2 + A^-2 * empty`
        let several = self.terms.len() > 1;
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let text = c.to_string();
            let text = if several && c.is_compound() { format!("({text})") } else { text };
            match (i, text.strip_prefix('-')) {
                (0, _) => write!(f, "{text}")?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {text}")?,
            }
            write!(f, " * {m}")?;
        }
        Ok(())
    }
}

/// `1` in the coefficient ring, needed to build basis elements generically.
pub trait UnitCoefficient: Coefficient {
    fn unit(order: usize) -> Self;
}

impl UnitCoefficient for LaurentPolynomial {
    fn unit(_: usize) -> Self {
        LaurentPolynomial::one()
    }
}

impl UnitCoefficient for TruncatedSeries {
    fn unit(order: usize) -> Self {
        TruncatedSeries::one(order)
    }
}

impl UnitCoefficient for BigRational {
    fn unit(_: usize) -> Self {
        BigRational::one()
    }
}
