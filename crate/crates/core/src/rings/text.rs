//! Parsers for the textual forms produced by the `Display` impls.

use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{LaurentPolynomial, TruncatedSeries};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("empty expression")]
    Empty,
    #[error("bad coefficient `{0}`")]
    Coefficient(String),
    #[error("bad exponent `{0}`")]
    Exponent(String),
    #[error("unexpected variable in `{0}` (expected `{1}`)")]
    Variable(String, char),
    #[error("negative power of h in `{0}`")]
    NegativePower(String),
}

struct RawTerm {
    coeff: BigRational,
    exp: i64,
}

/// Splits `a - b + c` into signed term strings, ignoring signs inside parens
/// and exponent signs (`A^-2`).
fn split_terms(text: &str) -> Result<Vec<(bool, String)>, ExprError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(ExprError::Empty);
    }
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut negative = false;
    let mut depth = 0i32;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if (ch == '+' || ch == '-') && depth == 0 && prev != Some('^') {
            if !cur.is_empty() {
                out.push((negative, std::mem::take(&mut cur)));
            } else if prev.is_some() && prev != Some('+') && prev != Some('-') {
                return Err(ExprError::Coefficient(s.clone()));
            }
            negative = if cur.is_empty() && matches!(prev, Some('+') | Some('-')) {
                negative ^ (ch == '-')
            } else {
                ch == '-'
            };
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    if cur.is_empty() {
        return Err(ExprError::Empty);
    }
    out.push((negative, cur));
    Ok(out)
}

fn parse_rational(s: &str) -> Result<BigRational, ExprError> {
    BigRational::from_str(s).map_err(|_| ExprError::Coefficient(s.to_string()))
}

fn parse_term(negative: bool, term: &str, var: char) -> Result<RawTerm, ExprError> {
    let (coeff_part, var_part) = match term.find(var) {
        Some(pos) => (&term[..pos], Some(&term[pos + var.len_utf8()..])),
        None => (term, None),
    };
    let coeff_part = coeff_part.strip_suffix('*').unwrap_or(coeff_part);
    let mut coeff = if coeff_part.is_empty() {
        if var_part.is_none() {
            return Err(ExprError::Coefficient(term.to_string()));
        }
        BigRational::one()
    } else {
        parse_rational(coeff_part)?
    };
    if negative {
        coeff = -coeff;
    }
    let exp = match var_part {
        None => 0,
        Some("") => 1,
        Some(rest) => {
            let e = rest
                .strip_prefix('^')
                .ok_or_else(|| ExprError::Variable(term.to_string(), var))?;
            let e = e.trim_start_matches('(').trim_end_matches(')');
            e.parse::<i64>().map_err(|_| ExprError::Exponent(term.to_string()))?
        }
    };
    Ok(RawTerm { coeff, exp })
}

/// Parses a Laurent polynomial in `A`, e.g. `A^6 + A^2 - 2*A^-2`.
pub fn parse_laurent(text: &str) -> Result<LaurentPolynomial, ExprError> {
    let mut p = LaurentPolynomial::zero();
    for (neg, t) in split_terms(text)? {
        let raw = parse_term(neg, &t, 'A')?;
        if !raw.coeff.is_integer() {
            return Err(ExprError::Coefficient(t));
        }
        let exp = i32::try_from(raw.exp).map_err(|_| ExprError::Exponent(t.clone()))?;
        p.add_term(exp, raw.coeff.to_integer());
    }
    Ok(p)
}

/// Parses a series in `h`. A trailing `O(h^k)` fixes the order at `k - 1`;
/// otherwise `default_order` is used. Terms past the order are dropped.
pub fn parse_series(text: &str, default_order: usize) -> Result<TruncatedSeries, ExprError> {
    let mut order = default_order;
    let mut raws = Vec::new();
    for (neg, t) in split_terms(text)? {
        if let Some(inner) = t.strip_prefix("O(").and_then(|r| r.strip_suffix(')')) {
            let k = match inner.strip_prefix("h^") {
                Some(k) => k.parse::<usize>().map_err(|_| ExprError::Exponent(t.clone()))?,
                None if inner == "h" => 1,
                None => return Err(ExprError::Exponent(t.clone())),
            };
            if k == 0 {
                return Err(ExprError::Exponent(t.clone()));
            }
            order = k - 1;
            continue;
        }
        let raw = parse_term(neg, &t, 'h')?;
        if raw.exp < 0 {
            return Err(ExprError::NegativePower(t));
        }
        raws.push(raw);
    }
    let mut coeffs = vec![BigRational::zero(); order + 1];
    for r in raws {
        if let Some(slot) = coeffs.get_mut(r.exp as usize) {
            *slot += r.coeff;
        }
    }
    Ok(TruncatedSeries::from_coeffs(coeffs))
}

/// Parses an exact rational such as `-3/4` or `5`.
pub fn parse_rational_text(text: &str) -> Result<BigRational, ExprError> {
    parse_rational(text.trim())
}
