//! Number parsing and significant-digit formatting.

use crate::CliError;

/// Text output precision.
pub const TEXT_DIGITS: usize = 12;
/// CSV output precision.
pub const CSV_DIGITS: usize = 15;

/// Formats `x` with `digits` significant digits, dropping trailing zeros.
pub fn sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    // round first so the exponent reflects carries like 9.99..95 -> 10
    let sci = format!("{:.*e}", digits - 1, x);
    let (_, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..16).contains(&exp) {
        let (mantissa, _) = sci.split_once('e').expect("exponent present");
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let rounded: f64 = sci.parse().expect("valid float");
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{rounded:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Parses a decimal (`0.25`, `-1e-3`) or a fraction of integers (`7/6`).
///
/// Fractions are divided once in floating point, so the result is the
/// correctly rounded value of the exact rational whenever numerator and
/// denominator are below `2^53`.
pub fn parse_number(token: &str) -> Result<f64, CliError> {
    let token = token.trim();
    let bad = || CliError::Usage(format!("cannot parse number '{token}'"));
    let value = match token.split_once('/') {
        Some((num, den)) => {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            let den: i64 = den.trim().parse().map_err(|_| bad())?;
            const EXACT: u64 = 1 << 53;
            if den == 0 || num.unsigned_abs() > EXACT || den.unsigned_abs() > EXACT {
                return Err(bad());
            }
            num as f64 / den as f64
        }
        None => token.parse::<f64>().map_err(|_| bad())?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

/// Parses a comma-separated list; an empty string is the empty list.
pub fn parse_list(list: &str) -> Result<Vec<f64>, CliError> {
    if list.trim().is_empty() {
        return Ok(Vec::new());
    }
    list.split(',').map(parse_number).collect()
}
