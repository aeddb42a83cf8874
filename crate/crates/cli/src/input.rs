//! Polynomial ingestion: inline coefficient lists, JSON documents, and plain
//! coefficient-per-line files. Coefficients are ascending (c_0 first) unless
//! a document says otherwise; every value parses exactly (rational strings
//! "p/q", integers, or decimal strings).

use std::path::Path;

use companion_core::{parse_rational, MonicPolynomial, Rational};
use serde_json::Value;

use crate::CliError;

fn build_poly(coeffs: Vec<Rational>) -> Result<MonicPolynomial, CliError> {
    let degree = coeffs.len();
    MonicPolynomial::new(coeffs)
        .map_err(|_| CliError::Parse(format!("degree {} is below the minimum 2", degree)))
}

/// Parse an inline comma-separated ascending coefficient list, e.g.
/// `"5,4,3,2"` for c_0..c_3.
pub fn parse_inline(text: &str) -> Result<MonicPolynomial, CliError> {
    let coeffs: Vec<Rational> = text
        .split(',')
        .map(|piece| parse_rational(piece).map_err(CliError::Parse))
        .collect::<Result<_, _>>()?;
    build_poly(coeffs)
}

/// Parse a coefficient document: JSON (`{"coeffs": [...]}`) or one
/// coefficient per line.
pub fn parse_document(text: &str) -> Result<MonicPolynomial, CliError> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        parse_json_document(trimmed)
    } else {
        parse_lines(trimmed)
    }
}

fn parse_json_document(text: &str) -> Result<MonicPolynomial, CliError> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| CliError::Parse(format!("invalid JSON document: {}", e)))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| CliError::Parse("JSON document must be an object".to_string()))?;

    let (coeff_value, order_locked_ascending) = if let Some(v) = obj.get("coeffs") {
        (v, false)
    } else if let Some(v) = obj.get("coeffs_ascending") {
        (v, true)
    } else {
        return Err(CliError::Parse(
            "JSON document needs a \"coeffs\" (or \"coeffs_ascending\") array".to_string(),
        ));
    };
    let entries = coeff_value
        .as_array()
        .ok_or_else(|| CliError::Parse("\"coeffs\" must be an array".to_string()))?;
    let mut coeffs: Vec<Rational> = entries
        .iter()
        .map(parse_json_coefficient)
        .collect::<Result<_, _>>()?;

    let order = obj.get("order").and_then(Value::as_str).unwrap_or("ascending");
    match (order, order_locked_ascending) {
        ("ascending", _) => {}
        ("descending", false) => coeffs.reverse(),
        ("descending", true) => {
            return Err(CliError::Parse(
                "\"coeffs_ascending\" cannot be combined with descending order".to_string(),
            ))
        }
        (other, _) => {
            return Err(CliError::Parse(format!(
                "unknown order {:?}; expected \"ascending\" or \"descending\"",
                other
            )))
        }
    }

    if let Some(degree) = obj.get("degree") {
        let stated = degree
            .as_u64()
            .ok_or_else(|| CliError::Parse("\"degree\" must be a nonnegative integer".to_string()))?;
        if stated as usize != coeffs.len() {
            return Err(CliError::Parse(format!(
                "stated degree {} does not match {} coefficients",
                stated,
                coeffs.len()
            )));
        }
    }
    build_poly(coeffs)
}

fn parse_json_coefficient(value: &Value) -> Result<Rational, CliError> {
    match value {
        Value::String(s) => parse_rational(s).map_err(CliError::Parse),
        Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                Ok(companion_core::rat_int(i))
            } else {
                Err(CliError::Parse(format!(
                    "non-integer JSON number {}; write it as a string for exactness",
                    num
                )))
            }
        }
        other => Err(CliError::Parse(format!("bad coefficient entry {}", other))),
    }
}

fn parse_lines(text: &str) -> Result<MonicPolynomial, CliError> {
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
        .collect();
    if lines.is_empty() {
        return Err(CliError::Parse("empty coefficient document".to_string()));
    }
    if lines.len() == 1 && lines[0].contains(',') {
        return parse_inline(lines[0]);
    }
    let coeffs: Vec<Rational> = lines
        .iter()
        .map(|line| parse_rational(line).map_err(CliError::Parse))
        .collect::<Result<_, _>>()?;
    build_poly(coeffs)
}

/// Resolve the `--poly` argument: an existing file path is read as a
/// document, anything else is treated as an inline coefficient list.
pub fn parse_poly_argument(arg: &str) -> Result<MonicPolynomial, CliError> {
    if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg)
            .map_err(|e| CliError::Io(format!("cannot read {}: {}", arg, e)))?;
        return parse_document(&text);
    }
    if arg.contains(',') {
        return parse_inline(arg);
    }
    Err(CliError::Parse(format!(
        "{:?} is neither an existing file nor an inline coefficient list",
        arg
    )))
}
