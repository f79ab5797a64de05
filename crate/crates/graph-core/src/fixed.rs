//! Fixed-point decimal feature values.
//!
//! Feature vectors enter canonical codes byte for byte, so they must compare
//! and serialize identically on every platform. Values are stored as integer
//! micro-units (six decimal places); parsing is exact and anything that does
//! not fit is an error rather than a rounded float.

use std::fmt;
use std::str::FromStr;

use crate::GraphError;

pub const FRAC_DIGITS: u32 = 6;
const SCALE: i64 = 1_000_000;

/// Exact decimal with six fractional digits, stored as micro-units.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fixed(i64);

impl Fixed {
    pub const ZERO: Fixed = Fixed(0);
    pub const ONE: Fixed = Fixed(SCALE);

    pub fn from_int(v: i64) -> Fixed {
        Fixed(v.checked_mul(SCALE).expect("integer feature overflows fixed-point range"))
    }

    /// Raw micro-unit count; used by serializers.
    pub fn raw(self) -> i64 {
        self.0
    }

    pub fn from_raw(raw: i64) -> Fixed {
        Fixed(raw)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / SCALE as f64
    }
}

impl FromStr for Fixed {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Fixed, GraphError> {
        let err = || GraphError::DecimalParse { text: s.to_string() };
        let (sign, body) = match s.as_bytes().first() {
            Some(b'-') => (-1i64, &s[1..]),
            Some(b'+') => (1, &s[1..]),
            _ => (1, s),
        };
        if body.is_empty() {
            return Err(err());
        }
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        if frac_part.len() > FRAC_DIGITS as usize {
            return Err(GraphError::DecimalPrecision { text: s.to_string() });
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let int_val: i64 = if int_part.is_empty() { 0 } else { int_part.parse().map_err(|_| err())? };
        let mut frac_val: i64 = if frac_part.is_empty() { 0 } else { frac_part.parse().map_err(|_| err())? };
        for _ in frac_part.len()..FRAC_DIGITS as usize {
            frac_val *= 10;
        }
        let magnitude = int_val
            .checked_mul(SCALE)
            .and_then(|v| v.checked_add(frac_val))
            .ok_or_else(err)?;
        Ok(Fixed(sign * magnitude))
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        let int_part = abs / SCALE as u64;
        let mut frac = abs % SCALE as u64;
        if frac == 0 {
            return write!(f, "{sign}{int_part}");
        }
        let mut digits = FRAC_DIGITS as usize;
        while frac % 10 == 0 {
            frac /= 10;
            digits -= 1;
        }
        write!(f, "{sign}{int_part}.{frac:0digits$}")
    }
}

impl fmt::Debug for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fixed({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_displays_exactly() {
        for (text, canon) in [
            ("0", "0"),
            ("-0", "0"),
            ("1", "1"),
            ("-3", "-3"),
            ("2.5", "2.5"),
            ("2.500000", "2.5"),
            ("0.000001", "0.000001"),
            ("-0.25", "-0.25"),
            (".5", "0.5"),
            ("7.", "7"),
        ] {
            let v: Fixed = text.parse().unwrap();
            assert_eq!(v.to_string(), canon, "input {text}");
            let again: Fixed = v.to_string().parse().unwrap();
            assert_eq!(again, v);
        }
    }

    #[test]
    fn rejects_excess_precision_and_junk() {
        assert!(matches!(
            "0.0000001".parse::<Fixed>(),
            Err(GraphError::DecimalPrecision { .. })
        ));
        for bad in ["", ".", "-", "1e3", "1.2.3", "abc", "--1"] {
            assert!(bad.parse::<Fixed>().is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn ordering_matches_numeric_value() {
        let parse = |s: &str| s.parse::<Fixed>().unwrap();
        assert!(parse("-1.5") < parse("-1.25"));
        assert!(parse("0.999999") < parse("1"));
        assert_eq!(Fixed::from_int(2), parse("2.000000"));
    }
}
