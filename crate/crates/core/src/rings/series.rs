use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::LaurentPolynomial;

/// Power series in `h` with rational coefficients, known modulo `h^(order+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

/// Lowest non-vanishing order of a truncated series.
///
/// A series that vanishes through its truncation order only certifies
/// vanishing up to that order, hence `AtLeast`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Exact(usize),
    AtLeast(usize),
}

impl Valuation {
    /// Lower bound on the true valuation.
    pub fn lower_bound(self) -> usize {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }

    pub fn min(self, other: Valuation) -> Valuation {
        if self.lower_bound() <= other.lower_bound() {
            self
        } else {
            other
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">= {v}"),
        }
    }
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Builds from explicit coefficients; `coeffs[i]` multiplies `h^i`.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        Self { coeffs }
    }

    /// `exp(r * h)` truncated at `order`.
    pub fn exp_linear(r: &BigRational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = BigRational::one();
        coeffs.push(term.clone());
        for i in 1..=order {
            term = term * r / BigRational::from_integer(BigInt::from(i));
            coeffs.push(term.clone());
        }
        Self { coeffs }
    }

    /// The formal variable `h`.
    pub fn h(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn valuation(&self) -> Valuation {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(i) => Valuation::Exact(i),
            None => Valuation::AtLeast(self.coeffs.len()),
        }
    }

    /// Reduces to a lower truncation order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise truncation order");
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Exact division by `h`; the order drops by one. Returns `None` when the
    /// constant term is nonzero or the series is already at order 0.
    pub fn div_h(&self) -> Option<Self> {
        if self.order() == 0 || !self.coeffs[0].is_zero() {
            return None;
        }
        Some(Self {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    fn check_orders(&self, other: &Self) {
        assert_eq!(
            self.order(),
            other.order(),
            "truncated series of different orders combined"
        );
    }
}

impl<'a> Add<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_orders(rhs);
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_orders(rhs);
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_orders(rhs);
        let n = self.coeffs.len();
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: Self) -> Self {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `-2 - 1/4*h^2 - 1/192*h^4 + O(h^5)`.
impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("h")?,
                (1, false) => write!(f, "{mag}*h")?,
                (i, true) => write!(f, "h^{i}")?,
                (i, false) => write!(f, "{mag}*h^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(h^{})", self.coeffs.len())
    }
}

/// Image of a Laurent polynomial under `A -> -exp(h/4)`, truncated at `order`.
///
/// `A^k` maps to `(-1)^k exp(k h / 4)`, so the coefficient of `h^i` is
/// `sum_k c_k (-1)^k (k/4)^i / i!`.
pub fn expand_laurent(p: &LaurentPolynomial, order: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(order);
    for (k, c) in p.terms() {
        let signed = if k.rem_euclid(2) == 0 { c.clone() } else { -c };
        let rate = BigRational::new(BigInt::from(k), BigInt::from(4));
        let e = TruncatedSeries::exp_linear(&rate, order);
        let weight = BigRational::from_integer(signed);
        for (slot, term) in out.coeffs.iter_mut().zip(e.coeffs) {
            *slot += &weight * term;
        }
    }
    out
}

/// `h`-adic valuation report of a truncated series.
pub fn h_valuation(f: &TruncatedSeries) -> Valuation {
    f.valuation()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn series(c: &[(i64, i64)]) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(c.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn expand_a() {
        let got = expand_laurent(&LaurentPolynomial::a(), 4);
        let want = series(&[(-1, 1), (-1, 4), (-1, 32), (-1, 384), (-1, 6144)]);
        assert_eq!(got, want);
    }

    #[test]
    fn expand_delta_is_minus_two_cosh() {
        let got = expand_laurent(&LaurentPolynomial::delta(), 4);
        let want = series(&[(-2, 1), (0, 1), (-1, 4), (0, 1), (-1, 192)]);
        assert_eq!(got, want);
        assert_eq!(got.to_string(), "-2 - 1/4*h^2 - 1/192*h^4 + O(h^5)");
    }

    #[test]
    fn expand_two_sinh() {
        // A^-1 - A  =  t - t^-1  =  2 sinh(h/4)
        let p = LaurentPolynomial::from_terms([(-1, 1), (1, -1)]);
        let got = expand_laurent(&p, 3);
        assert_eq!(got, series(&[(0, 1), (1, 2), (0, 1), (1, 192)]));
    }

    #[test]
    fn valuations() {
        let s = series(&[(0, 1), (0, 1), (1, 4), (-1, 1), (0, 1), (0, 1)]);
        assert_eq!(h_valuation(&s), Valuation::Exact(2));
        let z = TruncatedSeries::zero(5);
        assert_eq!(h_valuation(&z), Valuation::AtLeast(6));
        assert_eq!(h_valuation(&z).to_string(), ">= 6");
        let s = series(&[(3, 1), (1, 1), (0, 1), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(h_valuation(&s), Valuation::Exact(0));
    }

    #[test]
    fn div_h_requires_vanishing_constant() {
        assert!(series(&[(1, 1), (1, 1)]).div_h().is_none());
        let s = series(&[(0, 1), (1, 2), (3, 1)]).div_h().unwrap();
        assert_eq!(s, series(&[(1, 2), (3, 1)]));
    }

    #[test]
    fn zero_display() {
        assert_eq!(TruncatedSeries::zero(2).to_string(), "0 + O(h^3)");
        assert_eq!(series(&[(0, 1), (-1, 1)]).to_string(), "-h + O(h^2)");
    }
}
