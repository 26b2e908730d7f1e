//! Numeric SL(2,C) layer: trace gradients, the invariant form on sl(2),
//! torus representations and the Goldman bracket of trace functions.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;
use thiserror::Error;

use crate::diagram::Multicurve;
use crate::skein::SkeinElement;

mod matrix;

pub use matrix::{
    form_b, grad_trace, gradient_pairing_rhs, trace_derivative_fd, trace_identities_check, LieVector, Matrix2,
};

pub const GROUP_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error("matrix {0} has determinant {1}, not 1")]
    NotUnimodular(usize, Complex64),
    #[error("matrices do not commute (residual {0:e})")]
    NotCommuting(f64),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// A representation of the torus group: `(p,q) -> Ma^p Mb^q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorusRep {
    ma: Matrix2,
    mb: Matrix2,
}

impl TorusRep {
    pub fn new(ma: Matrix2, mb: Matrix2) -> Result<Self, RepError> {
        for (i, m) in [ma, mb].iter().enumerate() {
            if !m.is_group_element(GROUP_TOL) {
                return Err(RepError::NotUnimodular(i, m.det()));
            }
        }
        let residual = (ma * mb - mb * ma).max_abs();
        if residual > GROUP_TOL {
            return Err(RepError::NotCommuting(residual));
        }
        Ok(Self { ma, mb })
    }

    pub fn ma(&self) -> &Matrix2 {
        &self.ma
    }

    pub fn mb(&self) -> &Matrix2 {
        &self.mb
    }

    pub fn eval(&self, p: i64, q: i64) -> Matrix2 {
        self.ma.pow(p) * self.mb.pow(q)
    }

    /// `-tr` of the class `(p,q)`; the trivial class gives `-2`.
    pub fn neg_trace(&self, p: i64, q: i64) -> Complex64 {
        -self.eval(p, q).trace()
    }

    /// `M_a = diag(2, 1/2)`, `M_b = diag(3, 1/3)`.
    pub fn diagonal_fixture() -> Self {
        Self::new(Matrix2::real(2.0, 0.0, 0.0, 0.5), Matrix2::real(3.0, 0.0, 0.0, 1.0 / 3.0)).unwrap()
    }

    /// A commuting pair of parabolics, one of them times `-I`.
    pub fn parabolic_fixture() -> Self {
        let ma = Matrix2::real(1.0, 1.0, 0.0, 1.0);
        let mb = Matrix2::new(
            Complex64::new(-1.0, 0.0),
            Complex64::new(-0.5, 0.3),
            Complex64::new(0.0, 0.0),
            Complex64::new(-1.0, 0.0),
        );
        Self::new(ma, mb).unwrap()
    }

    /// A simultaneously diagonalizable pair: random diagonal elements
    /// conjugated by a random group element.
    pub fn random(rng: &mut impl Rng) -> Self {
        let g = random_sl2(rng);
        let gi = g.inverse();
        let mut diag = || {
            let z = Complex64::new(rng.gen_range(-0.6..0.6), rng.gen_range(-3.0..3.0)).exp();
            Matrix2::diag(z, z.inv())
        };
        let (da, db) = (diag(), diag());
        Self::new(g * da * gi, g * db * gi).expect("conjugated diagonal pair")
    }
}

/// A random element of SL(2,C) with entries of moderate size.
pub fn random_sl2(rng: &mut impl Rng) -> Matrix2 {
    let mut entry = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    loop {
        let (a, b, c) = (entry(), entry(), entry());
        if a.norm() < 0.3 {
            continue;
        }
        let d = (Complex64::new(1.0, 0.0) + b * c) / a;
        return Matrix2::new(a, b, c, d);
    }
}

/// Value of a multicurve under the trace map: each component contributes
/// `-tr` of its class.
pub fn multicurve_eval(m: &Multicurve, rho: &TorusRep) -> Complex64 {
    match *m {
        Multicurve::Torus { p, q, m } => rho.neg_trace(p, q).powu(m),
        Multicurve::Empty => Complex64::new(1.0, 0.0),
        Multicurve::Core { .. } => panic!("annulus multicurve evaluated at a torus representation"),
    }
}

/// Linear extension of `multicurve_eval` to rational combinations.
pub fn character_eval(x: &SkeinElement<BigRational>, rho: &TorusRep) -> Complex64 {
    x.terms()
        .map(|(m, c)| multicurve_eval(m, rho) * c.to_f64().expect("finite rational"))
        .sum()
}

/// Goldman bracket of the trace functions of the classes `alpha`, `beta` at
/// `rho`. On the torus the `|ps - qr|` intersection points have one common
/// sign and all spliced loops are conjugate, so the sum collapses to one term
/// times the algebraic intersection number, oriented so the bracket of
/// `(1,0)` with `(0,1)` is `tr(ab)/2 - tr(ab^-1)/2`.
pub fn goldman_numeric(alpha: (i64, i64), beta: (i64, i64), rho: &TorusRep) -> Complex64 {
    let (p, q) = alpha;
    let (r, s) = beta;
    let intersection = q * r - p * s;
    if intersection == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let a = rho.eval(p, q);
    let b = rho.eval(r, s);
    let term = gradient_pairing_rhs(&a, &b);
    term * intersection as f64
}

/// Parses a representation fixture: two 2x2 blocks of complex entries
/// written `re+im i`, rows on separate lines, `#` comments allowed.
pub fn parse_rep(text: &str) -> Result<TorusRep, RepError> {
    let mut entries = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens: Vec<String> = Vec::new();
        for tok in line.split_whitespace() {
            if tok == "i" || tok == "*i" {
                match tokens.last_mut() {
                    Some(last) => last.push('i'),
                    None => {
                        return Err(RepError::Syntax {
                            line: n + 1,
                            message: "stray `i`".into(),
                        })
                    }
                }
            } else {
                tokens.push(tok.to_string());
            }
        }
        if tokens.len() != 2 {
            return Err(RepError::Syntax {
                line: n + 1,
                message: format!("expected two entries per row, found {}", tokens.len()),
            });
        }
        for t in tokens {
            entries.push(parse_complex(&t).ok_or_else(|| RepError::Syntax {
                line: n + 1,
                message: format!("bad complex number `{t}`"),
            })?);
        }
    }
    if entries.len() != 8 {
        return Err(RepError::Syntax {
            line: text.lines().count(),
            message: format!("expected two 2x2 blocks, found {} entries", entries.len()),
        });
    }
    let m = |k: usize| Matrix2::new(entries[k], entries[k + 1], entries[k + 2], entries[k + 3]);
    TorusRep::new(m(0), m(4))
}

/// `re`, `im i`, or `re+im i` / `re-im i`.
fn parse_complex(t: &str) -> Option<Complex64> {
    let t = t.trim();
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0));
    };
    // split at the last sign that is not part of an exponent or the leading sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (body[..k].parse::<f64>().ok()?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => s.trim_start_matches('+').parse::<f64>().ok()?,
    };
    Some(Complex64::new(re, im))
}

/// Renders a representation in the fixture format.
pub fn format_rep(rho: &TorusRep) -> String {
    let entry = |z: Complex64| format!("{}{:+}i", z.re, z.im);
    let mut out = String::new();
    for m in [rho.ma(), rho.mb()] {
        for row in m.a {
            out.push_str(&format!("{} {}\n", entry(row[0]), entry(row[1])));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn goldman_fixed_instance() {
        let rho = TorusRep::diagonal_fixture();
        let direct = ((13.0 / 6.0) - (37.0 / 6.0)) / 2.0;
        assert!(close(gradient_pairing_rhs(&rho.eval(1, 0), &rho.eval(0, 1)), Complex64::new(direct, 0.0), 1e-12));
        // with the intersection orientation fixed by the skein side
        assert!(close(goldman_numeric((1, 0), (0, 1), &rho), Complex64::new(2.0, 0.0), 1e-12));
        assert!(close(goldman_numeric((0, 1), (1, 0), &rho), Complex64::new(-2.0, 0.0), 1e-12));
        assert_eq!(goldman_numeric((2, 1), (2, 1), &rho), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn character_values() {
        let rho = TorusRep::diagonal_fixture();
        let x = Multicurve::torus(1, 0, 1).unwrap();
        assert!(close(multicurve_eval(&x, &rho), Complex64::new(-2.5, 0.0), 1e-12));
        assert!(close(multicurve_eval(&x.with_multiplicity(2), &rho), Complex64::new(6.25, 0.0), 1e-12));
        assert_eq!(rho.neg_trace(0, 0), Complex64::new(-2.0, 0.0));
    }

    #[test]
    fn random_reps_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let rho = TorusRep::random(&mut rng);
            assert!(rho.ma().is_group_element(GROUP_TOL));
            assert!((*rho.ma() * *rho.mb() - *rho.mb() * *rho.ma()).max_abs() <= GROUP_TOL);
            let g = random_sl2(&mut rng);
            assert!(g.is_group_element(1e-12));
        }
    }

    #[test]
    fn rejects_bad_pairs() {
        let a = Matrix2::real(1.0, 1.0, 0.0, 1.0);
        let b = Matrix2::real(1.0, 0.0, 1.0, 1.0);
        assert!(matches!(TorusRep::new(a, b), Err(RepError::NotCommuting(_))));
        assert!(matches!(
            TorusRep::new(Matrix2::real(2.0, 0.0, 0.0, 1.0), a),
            Err(RepError::NotUnimodular(0, _))
        ));
    }

    #[test]
    fn complex_entries() {
        assert_eq!(parse_complex("2+0i"), Some(Complex64::new(2.0, 0.0)));
        assert_eq!(parse_complex("-1.5-2i"), Some(Complex64::new(-1.5, -2.0)));
        assert_eq!(parse_complex("0.5"), Some(Complex64::new(0.5, 0.0)));
        assert_eq!(parse_complex("3i"), Some(Complex64::new(0.0, 3.0)));
        assert_eq!(parse_complex("-i"), Some(Complex64::new(0.0, -1.0)));
        assert_eq!(parse_complex("1e-3+2e+1i"), Some(Complex64::new(1e-3, 20.0)));
        assert_eq!(parse_complex("x"), None);
    }

    #[test]
    fn rep_round_trip() {
        let text = "# diagonal\n2+0 i   0+0i\n0+0i 0.5+0i\n\n3+0i 0+0i\n0+0i 0.3333333333333333+0i\n";
        let rho = parse_rep(text).unwrap();
        assert!(close(rho.neg_trace(1, 0), Complex64::new(-2.5, 0.0), 1e-12));
        let again = parse_rep(&format_rep(&rho)).unwrap();
        assert_eq!(again, rho);
        assert!(matches!(parse_rep("1 0\n0 1\n"), Err(RepError::Syntax { .. })));
        assert!(matches!(parse_rep("1 0 0\n"), Err(RepError::Syntax { line: 1, .. })));
    }
}
