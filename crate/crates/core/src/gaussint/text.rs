//! Text syntax: optional sign, decimal digits, optional imaginary part.
//! Emission is whitespace-free: `7`, `i`, `-i`, `3i`, `2+2i`, `3-i`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::GaussianInt;
use crate::error::Error;

fn parse_signed_digits(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let v: BigInt = digits.parse().ok()?;
    Some(if s.starts_with('-') { -v } else { v })
}

fn parse_imag_coeff(s: &str) -> Option<BigInt> {
    match s {
        "" | "+" => Some(BigInt::one()),
        "-" => Some(-BigInt::one()),
        _ => parse_signed_digits(s),
    }
}

impl FromStr for GaussianInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || Error::Parse(s.to_string());
        let Some(body) = s.strip_suffix('i') else {
            return parse_signed_digits(s)
                .map(GaussianInt::from)
                .ok_or_else(err);
        };
        // The real/imaginary split is the last sign that is not leading.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, ch)| ch == '+' || ch == '-')
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (
                parse_signed_digits(&body[..k]),
                parse_imag_coeff(&body[k..]),
            ),
            None => (Some(BigInt::zero()), parse_imag_coeff(body)),
        };
        match (re, im) {
            (Some(re), Some(im)) => Ok(GaussianInt { re, im }),
            _ => Err(err()),
        }
    }
}

fn write_imag(f: &mut fmt::Formatter<'_>, im: &BigInt, leading: bool) -> fmt::Result {
    let sign = if im.is_negative() {
        "-"
    } else if leading {
        ""
    } else {
        "+"
    };
    let mag = im.abs();
    if mag.is_one() {
        write!(f, "{sign}i")
    } else {
        write!(f, "{sign}{mag}i")
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write_imag(f, &self.im, true),
            (false, false) => {
                write!(f, "{}", self.re)?;
                write_imag(f, &self.im, false)
            }
        }
    }
}
