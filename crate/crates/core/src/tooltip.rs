//! Hover text listing each slice's raw value and percentage.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::num::{fmt_decimal, round_half_up, write_scaled};

/// One line per category, in category order, zero slices included.
#[derive(Clone, Debug, PartialEq)]
pub struct TooltipText {
    pub lines: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TooltipError {
    LengthMismatch { categories: usize, values: usize },
    AllZeroComposition,
}

impl fmt::Display for TooltipError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TooltipError::LengthMismatch { categories, values } => write!(
                f,
                "{} categories but {} values in tooltip",
                categories, values
            ),
            TooltipError::AllZeroComposition => f.write_str("all slice values are zero"),
        }
    }
}

/// Percentage in tenths of a percent, rounded half-up.
pub fn percent_tenths(value: f64, total: f64) -> i64 {
    round_half_up(1000.0 * value / total) as i64
}

/// Builds `"<category>: <raw> (<pct>%)"` lines.
///
/// Raw values keep up to two decimals, integers print bare. Percentages are
/// rounded independently, so they need not sum to exactly 100.
pub fn tooltip_text(
    categories: &[String],
    raw_values: &[f64],
) -> Result<TooltipText, TooltipError> {
    if categories.len() != raw_values.len() {
        return Err(TooltipError::LengthMismatch {
            categories: categories.len(),
            values: raw_values.len(),
        });
    }
    let total: f64 = raw_values.iter().sum();
    if !(total > 0.0) {
        return Err(TooltipError::AllZeroComposition);
    }
    let lines = categories
        .iter()
        .zip(raw_values)
        .map(|(cat, &v)| {
            let mut line = String::with_capacity(cat.len() + 16);
            line.push_str(cat);
            line.push_str(": ");
            line.push_str(&fmt_decimal(v, 2));
            line.push_str(" (");
            // Always one decimal, "50.0" rather than "50".
            let tenths = percent_tenths(v, total);
            let mut pct = String::new();
            write_scaled(&mut pct, tenths, 1);
            if tenths % 10 == 0 {
                pct.push_str(".0");
            }
            line.push_str(&pct);
            line.push_str("%)");
            line
        })
        .collect();
    Ok(TooltipText { lines })
}

impl TooltipText {
    /// Lines joined with newlines, as placed inside a `<title>` element.
    pub fn joined(&self) -> String {
        self.lines.join("\n")
    }
}
