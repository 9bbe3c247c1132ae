//! Deterministic decimal formatting.
//!
//! All numbers that reach the output document go through here: values are
//! rounded half-up (away from zero for negatives) to a fixed number of
//! decimals and trailing zeros are trimmed.

use alloc::string::String;
use core::fmt::Write;

/// Rounds a non-negative value half-up to an integer.
pub fn round_half_up(v: f64) -> f64 {
    let f = libm::floor(v);
    if v - f >= 0.5 {
        f + 1.0
    } else {
        f
    }
}

/// Rounds `x` to `decimals` places, returning the scaled integer.
///
/// Symmetric around zero: `-0.00005` and `0.00005` both move one unit away
/// from zero at four decimals.
pub fn to_scaled(x: f64, decimals: u32) -> i64 {
    let scale = libm::pow(10.0, decimals as f64);
    let mag = round_half_up(libm::fabs(x) * scale) as i64;
    if x < 0.0 {
        -mag
    } else {
        mag
    }
}

/// Writes a scaled integer as a decimal with trailing zeros trimmed.
pub fn write_scaled(out: &mut String, scaled: i64, decimals: u32) {
    let scale = 10_i64.pow(decimals);
    if scaled < 0 {
        out.push('-');
    }
    let mag = scaled.unsigned_abs();
    let int = mag / scale as u64;
    let mut frac = mag % scale as u64;
    let _ = write!(out, "{}", int);
    if frac == 0 {
        return;
    }
    let mut width = decimals as usize;
    while frac.is_multiple_of(10) {
        frac /= 10;
        width -= 1;
    }
    let _ = write!(out, ".{:0width$}", frac, width = width);
}

/// Formats `x` with at most `decimals` places, half-up, trailing zeros trimmed.
pub fn fmt_decimal(x: f64, decimals: u32) -> String {
    let mut s = String::new();
    push_decimal(&mut s, x, decimals);
    s
}

pub fn push_decimal(out: &mut String, x: f64, decimals: u32) {
    write_scaled(out, to_scaled(x, decimals), decimals);
}

/// Path and attribute coordinate precision.
pub const COORD_DECIMALS: u32 = 4;

/// A coordinate quantized to the output grid (units of 1e-4).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fixed(pub i64);

impl Fixed {
    pub fn from_f64(x: f64) -> Self {
        Fixed(to_scaled(x, COORD_DECIMALS))
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 10_000.0
    }

    pub fn push_to(self, out: &mut String) {
        write_scaled(out, self.0, COORD_DECIMALS);
    }
}

impl core::ops::Add for Fixed {
    type Output = Fixed;
    fn add(self, rhs: Fixed) -> Fixed {
        Fixed(self.0 + rhs.0)
    }
}

impl core::fmt::Display for Fixed {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let mut s = String::new();
        self.push_to(&mut s);
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn trims_and_rounds() {
        assert_eq!(fmt_decimal(100.0, 4), "100");
        assert_eq!(fmt_decimal(4.545454545, 4), "4.5455");
        assert_eq!(fmt_decimal(0.25, 4), "0.25");
        assert_eq!(fmt_decimal(2.5, 2), "2.5");
        assert_eq!(fmt_decimal(0.125, 2), "0.13");
        assert_eq!(fmt_decimal(-0.125, 2), "-0.13");
        assert_eq!(fmt_decimal(-0.00001, 4), "0");
        assert_eq!(fmt_decimal(0.00005, 4), "0.0001");
        assert_eq!(fmt_decimal(1e-4, 4), "0.0001");
        assert_eq!(fmt_decimal(12.0400, 4), "12.04");
    }

    #[test]
    fn half_up_near_boundary() {
        assert_eq!(round_half_up(0.49999999999999994), 0.0);
        assert_eq!(round_half_up(0.5), 1.0);
        assert_eq!(round_half_up(62.5), 63.0);
    }

    #[test]
    fn fixed_display_matches_decimal() {
        for x in [0.0, 1.5, -3.25, 123.45678, 9.99995] {
            assert_eq!(Fixed::from_f64(x).to_string(), fmt_decimal(x, 4));
        }
    }
}
