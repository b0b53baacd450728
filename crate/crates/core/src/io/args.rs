//! Parsers for command line values.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Parses a real number or a multiple of pi: `0.5`, `pi`, `-pi/2`,
/// `7pi/9`, `2*pi/3`, `0.25pi`.
pub fn parse_angle(raw: &str) -> Result<f64> {
    let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidArgument(format!("cannot read `{raw}` as a number"));
    let number = |t: &str| t.parse::<f64>().map_err(|_| bad());
    let value = match s.find("pi") {
        None => match s.split_once('/') {
            Some((a, b)) => number(a)? / number(b)?,
            None => number(&s)?,
        },
        Some(at) => {
            let coef = s[..at].trim_end_matches('*');
            let coef = match coef {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => number(c)?,
            };
            let den = match &s[at + 2..] {
                "" => 1.0,
                rest => number(rest.strip_prefix('/').ok_or_else(bad)?)?,
            };
            coef * PI / den
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

/// Comma-separated list of [`parse_angle`] values.
pub fn parse_angle_list(raw: &str) -> Result<Vec<f64>> {
    let items: Vec<&str> = raw.split(',').filter(|t| !t.trim().is_empty()).collect();
    if items.is_empty() {
        return Err(Error::InvalidArgument("empty list".into()));
    }
    items.into_iter().map(parse_angle).collect()
}
