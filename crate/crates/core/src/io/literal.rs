use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Quaternion, Rational};

/// Parses `1+2i-3j+4/5k`, `-i`, `0`, `3/2`: signed terms, each an optional
/// coefficient `p` or `p/q` followed by an optional unit. A missing
/// coefficient means 1; repeated units add up.
pub fn parse_quaternion(text: &str) -> Result<Quaternion> {
    parse_at(text, 1, 1)
}

/// As [`parse_quaternion`], reporting positions relative to `(line, column)`.
pub(crate) fn parse_at(text: &str, line: usize, column: usize) -> Result<Quaternion> {
    let bytes = text.as_bytes();
    let err = |pos: usize, msg: &str| Error::parse(line, column + pos, msg);
    if bytes.is_empty() {
        return Err(err(0, "empty quaternion literal"));
    }
    let mut coeffs: [Rational; 4] = Default::default();
    let mut pos = 0;
    let mut first = true;
    while pos < bytes.len() {
        let start = pos;
        let negative = match bytes[pos] {
            b'+' | b'-' => {
                pos += 1;
                bytes[start] == b'-'
            }
            _ if first => false,
            _ => return Err(err(pos, "expected `+` or `-` between terms")),
        };
        first = false;

        let num_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let mut value = if pos > num_start {
            let num: BigInt = text[num_start..pos].parse().expect("ascii digits");
            if pos < bytes.len() && bytes[pos] == b'/' {
                pos += 1;
                let den_start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == den_start {
                    return Err(err(pos, "expected denominator after `/`"));
                }
                let den: BigInt = text[den_start..pos].parse().expect("ascii digits");
                if den.is_zero() {
                    return Err(err(den_start, "zero denominator"));
                }
                Rational::new(num, den)
            } else {
                Rational::from_integer(num)
            }
        } else {
            Rational::from_integer(1.into())
        };

        let idx = match bytes.get(pos) {
            Some(b'i') => 1,
            Some(b'j') => 2,
            Some(b'k') => 3,
            _ => 0,
        };
        if idx > 0 {
            pos += 1;
        } else if pos == num_start {
            return Err(err(pos, "expected a coefficient or one of i, j, k"));
        }
        if pos < bytes.len() && !matches!(bytes[pos], b'+' | b'-') {
            return Err(err(
                pos,
                &format!(
                    "unexpected character `{}`",
                    text[pos..].chars().next().unwrap()
                ),
            ));
        }
        if negative {
            value = -value;
        }
        coeffs[idx] += value;
    }
    let [a0, a1, a2, a3] = coeffs;
    Ok(Quaternion::new(a0, a1, a2, a3))
}

impl FromStr for Quaternion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_quaternion(s)
    }
}
