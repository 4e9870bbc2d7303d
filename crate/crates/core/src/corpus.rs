//! A fixed family of maps used for bulk checks: every polynomial of degree
//! 2 and 3 with integer coefficients in `[−3, 3]`, plus a few rational maps.

use crate::error::Result;
use crate::expr::parse_map_expression;
use crate::ratmap::RatMap;

pub const COEFF_BOUND: i64 = 3;

pub const RATIONAL_EXAMPLES: [&str; 5] =
    ["(x^2+1)/x", "1/x^2", "(x^2-1)/x", "(x^2+2)/(2*x)", "(3*x^2-1)/(x^2+x+2)"];

/// Expression text for `Σ coeffs[i]·x^i`, highest power first.
pub fn format_polynomial(coeffs: &[i64]) -> String {
    let mut out = String::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        match (mag, mono.is_empty()) {
            (_, true) => out.push_str(&mag.to_string()),
            (1, false) => out.push_str(&mono),
            _ => out.push_str(&format!("{mag}*{mono}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Ascending coefficient lists of every polynomial of exactly `degree` with
/// coefficients in `[−bound, bound]`.
pub fn polynomial_coefficients(degree: usize, bound: i64) -> Vec<Vec<i64>> {
    let width = (2 * bound + 1) as usize;
    let total = width.pow(degree as u32 + 1);
    (0..total)
        .map(|mut k| {
            (0..=degree)
                .map(|_| {
                    let c = (k % width) as i64 - bound;
                    k /= width;
                    c
                })
                .collect::<Vec<i64>>()
        })
        .filter(|c| c[degree] != 0)
        .collect()
}

/// Expression strings for the whole corpus, polynomials first.
pub fn expressions() -> Vec<String> {
    let mut out: Vec<String> = [2, 3]
        .iter()
        .flat_map(|&d| polynomial_coefficients(d, COEFF_BOUND))
        .map(|c| format_polynomial(&c))
        .collect();
    out.extend(RATIONAL_EXAMPLES.iter().map(|s| s.to_string()));
    out
}

/// The corpus as `(expression, map)` pairs.
pub fn maps() -> Result<Vec<(String, RatMap)>> {
    expressions()
        .into_iter()
        .map(|e| parse_map_expression(&e).map(|f| (e, f)))
        .collect()
}
