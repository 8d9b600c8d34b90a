//! Polynomials written on the command line.
//!
//! Either ascending coefficients, `-1,0,2` for `2z² - 1`, or a preset:
//! `cheb:d`, `negcheb:d`, `monomial:c,d`, `quad:c` (`z² + c`). A complex
//! literal is `re`, `re±imi` or `imi`, with no spaces; `−` (U+2212) is read
//! as a minus sign.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::Poly;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Preset {
    Chebyshev(usize),
    NegChebyshev(usize),
    Monomial(Complex64, usize),
    Quadratic(Complex64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolySpec {
    pub source: String,
    pub polynomial: Poly,
    pub preset: Option<Preset>,
}

fn parse_err<T>(column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        column,
        message: message.into(),
    })
}

pub fn parse_polynomial(text: &str) -> Result<PolySpec> {
    let lead = text.chars().take_while(|c| c.is_whitespace()).count();
    let body = text.trim();
    if body.is_empty() {
        return parse_err(1, "empty polynomial");
    }
    let chars: Vec<char> = body.chars().collect();
    let col = |i: usize| lead + i + 1;

    if let Some(colon) = chars.iter().position(|&c| c == ':') {
        let name: String = chars[..colon].iter().collect();
        let rest = &chars[colon + 1..];
        let at = colon + 1;
        let preset = match name.as_str() {
            "cheb" => Preset::Chebyshev(parse_degree(rest, col(at))?),
            "negcheb" => Preset::NegChebyshev(parse_degree(rest, col(at))?),
            "quad" => Preset::Quadratic(parse_complex_chars(rest, col(at))?),
            "monomial" => {
                let Some(comma) = rest.iter().rposition(|&c| c == ',') else {
                    return parse_err(col(at + rest.len()), "expected `monomial:c,d`");
                };
                let c = parse_complex_chars(&rest[..comma], col(at))?;
                let d = parse_degree(&rest[comma + 1..], col(at + comma + 1))?;
                Preset::Monomial(c, d)
            }
            _ => return parse_err(col(0), format!("unknown preset `{name}`")),
        };
        let polynomial = match preset {
            Preset::Chebyshev(d) => Poly::chebyshev(d)?,
            Preset::NegChebyshev(d) => Poly::chebyshev(d)?.neg(),
            Preset::Monomial(c, d) => Poly::monomial(c, d)?,
            Preset::Quadratic(c) => Poly::new(vec![c, 0.0.into(), 1.0.into()])?,
        };
        return Ok(PolySpec {
            source: text.to_string(),
            polynomial,
            preset: Some(preset),
        });
    }

    let mut coeffs = Vec::new();
    let mut start = 0;
    for piece in chars.split(|&c| c == ',') {
        coeffs.push(parse_complex_chars(piece, col(start))?);
        start += piece.len() + 1;
    }
    Ok(PolySpec {
        source: text.to_string(),
        polynomial: Poly::new(coeffs)?,
        preset: None,
    })
}

/// One complex literal; `column` is where the literal starts.
pub fn parse_complex(text: &str, column: usize) -> Result<Complex64> {
    let chars: Vec<char> = text.chars().collect();
    parse_complex_chars(&chars, column)
}

fn parse_degree(chars: &[char], column: usize) -> Result<usize> {
    if chars.is_empty() || !chars.iter().all(|c| c.is_ascii_digit()) {
        return parse_err(column, "expected a nonnegative integer degree");
    }
    let s: String = chars.iter().collect();
    s.parse()
        .or_else(|_| parse_err(column, format!("degree `{s}` out of range")))
}

fn is_sign(c: char) -> bool {
    c == '+' || c == '-' || c == '\u{2212}'
}

fn sign_of(c: char) -> f64 {
    if c == '+' {
        1.0
    } else {
        -1.0
    }
}

/// Unsigned decimal with optional fraction and exponent, starting at `i`.
fn scan_decimal(chars: &[char], mut i: usize) -> Option<(f64, usize)> {
    let start = i;
    let mut digits = 0;
    while i < chars.len() && chars[i].is_ascii_digit() {
        i += 1;
        digits += 1;
    }
    if i < chars.len() && chars[i] == '.' {
        i += 1;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
            digits += 1;
        }
    }
    if digits == 0 {
        return None;
    }
    if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
        let mut j = i + 1;
        if j < chars.len() && is_sign(chars[j]) {
            j += 1;
        }
        let exp_start = j;
        while j < chars.len() && chars[j].is_ascii_digit() {
            j += 1;
        }
        if j > exp_start {
            i = j;
        }
    }
    let s: String = chars[start..i].iter().collect();
    s.parse().ok().map(|v| (v, i))
}

fn parse_complex_chars(chars: &[char], column: usize) -> Result<Complex64> {
    if chars.is_empty() {
        return parse_err(column, "empty coefficient");
    }
    let mut i = 0;
    let mut s1 = 1.0;
    if is_sign(chars[0]) {
        s1 = sign_of(chars[0]);
        i = 1;
    }
    let Some((a, j)) = scan_decimal(chars, i) else {
        return parse_err(column + i, "expected a number");
    };
    i = j;
    if i == chars.len() {
        return Ok(Complex64::new(s1 * a, 0.0));
    }
    if chars[i] == 'i' {
        if i + 1 != chars.len() {
            return parse_err(column + i + 1, "unexpected text after imaginary unit");
        }
        return Ok(Complex64::new(0.0, s1 * a));
    }
    if !is_sign(chars[i]) {
        return parse_err(column + i, format!("unexpected character `{}`", chars[i]));
    }
    let s2 = sign_of(chars[i]);
    i += 1;
    let (b, j) = match scan_decimal(chars, i) {
        Some(v) => v,
        None if chars.get(i) == Some(&'i') => (1.0, i),
        None => return parse_err(column + i, "expected imaginary part"),
    };
    i = j;
    if chars.get(i) != Some(&'i') {
        return parse_err(column + i, "expected `i` after imaginary part");
    }
    if i + 1 != chars.len() {
        return parse_err(column + i + 1, "unexpected text after imaginary unit");
    }
    Ok(Complex64::new(s1 * a, s2 * b))
}
