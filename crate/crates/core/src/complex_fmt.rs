//! Text form `a+bi` for complex numbers.
//!
//! The accepted grammar allows either part to be omitted: `0.4+0.7i`,
//! `-0.9i`, `0.6`, `i`, `1-i`, `2.5e-3i`. Whitespace is ignored.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Parse one complex number in `a+bi` form.
pub fn parse_complex(input: &str) -> Result<Complex64> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err(input, "empty string"));
    }

    // Split before a '+'/'-' that starts the second component. Signs at the
    // start or right after an exponent marker do not split.
    let bytes = s.as_bytes();
    let mut split = None;
    for i in 1..bytes.len() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
            if split.is_some() {
                return Err(err(input, "more than two components"));
            }
            split = Some(i);
        }
    }

    let (first, second) = match split {
        Some(i) => (&s[..i], &s[i..]),
        None => (&s[..], ""),
    };

    if second.is_empty() {
        if let Some(im) = strip_i(first) {
            Ok(Complex64::new(0.0, parse_part(input, im)?))
        } else {
            Ok(Complex64::new(parse_part(input, first)?, 0.0))
        }
    } else {
        let im = strip_i(second).ok_or_else(|| err(input, "second component must end in 'i'"))?;
        if strip_i(first).is_some() {
            return Err(err(input, "two imaginary components"));
        }
        Ok(Complex64::new(
            parse_part(input, first)?,
            parse_part(input, im)?,
        ))
    }
}

/// Parse a comma-separated list of complex numbers.
pub fn parse_complex_list(input: &str) -> Result<Vec<Complex64>> {
    input.split(',').map(parse_complex).collect()
}

/// Render a complex number in the same `a+bi` form `parse_complex` accepts.
pub fn format_complex(z: Complex64) -> String {
    let re = if z.re == 0.0 { 0.0 } else { z.re }; // normalize -0.0
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    match (re == 0.0, im == 0.0) {
        (_, true) => format!("{re}"),
        (true, false) => format!("{}i", unit_trim(im)),
        (false, false) => {
            if im < 0.0 {
                format!("{re}-{}i", unit_trim(-im))
            } else {
                format!("{re}+{}i", unit_trim(im))
            }
        }
    }
}

fn unit_trim(im: f64) -> String {
    if im == 1.0 {
        String::new()
    } else if im == -1.0 {
        "-".to_string()
    } else {
        format!("{im}")
    }
}

fn strip_i(part: &str) -> Option<&str> {
    part.strip_suffix('i')
}

fn parse_part(input: &str, part: &str) -> Result<f64> {
    match part {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => part
            .parse::<f64>()
            .map_err(|_| err(input, "not a decimal literal")),
    }
}

fn err(input: &str, reason: &'static str) -> Error {
    Error::ParseComplex {
        input: input.to_string(),
        reason,
    }
}
