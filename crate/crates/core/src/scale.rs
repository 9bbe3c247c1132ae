//! Data-to-screen mapping: linear position scales, tick breaks, facet panels
//! and the glyph size scale.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub const DEFAULT_EXPANSION: f64 = 0.05;
pub const DEFAULT_FACET_GAP: f64 = 10.0;

#[derive(Clone, Debug, PartialEq)]
pub enum ScaleError {
    NoFiniteValues,
    RowsColsTooSmall {
        rows: usize,
        cols: usize,
        panels: usize,
    },
    NoPanels,
    InvalidSizeScale,
    /// The margins leave no room for the plot area.
    PlotAreaTooSmall,
}

impl fmt::Display for ScaleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScaleError::NoFiniteValues => f.write_str("no finite values to fit a scale"),
            ScaleError::RowsColsTooSmall { rows, cols, panels } => write!(
                f,
                "facet grid {}x{} cannot hold {} panels",
                rows, cols, panels
            ),
            ScaleError::NoPanels => f.write_str("facet layout needs at least one panel"),
            ScaleError::InvalidSizeScale => f.write_str("size scale needs 0 < r_min <= r_max"),
            ScaleError::PlotAreaTooSmall => f.write_str("output is too small to hold a plot"),
        }
    }
}

/// Axis-aligned screen rectangle, y down.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl Rect {
    pub const fn new(x: f64, y: f64, w: f64, h: f64) -> Self {
        Rect { x, y, w, h }
    }

    pub fn right(&self) -> f64 {
        self.x + self.w
    }

    pub fn bottom(&self) -> f64 {
        self.y + self.h
    }

    pub fn contains_rect(&self, other: &Rect, tol: f64) -> bool {
        other.x >= self.x - tol
            && other.y >= self.y - tol
            && other.right() <= self.right() + tol
            && other.bottom() <= self.bottom() + tol
    }

    pub fn overlaps(&self, other: &Rect) -> bool {
        self.x < other.right()
            && other.x < self.right()
            && self.y < other.bottom()
            && other.y < self.bottom()
    }
}

/// Affine map from an expanded data domain onto a screen range.
///
/// For y scales pass an inverted range (`lo` below `hi` on screen) so larger
/// values sit higher.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearScale {
    pub domain: (f64, f64),
    pub range: (f64, f64),
    pub expansion: f64,
}

impl LinearScale {
    /// `domain` must satisfy `min < max`.
    pub fn new(domain: (f64, f64), range: (f64, f64), expansion: f64) -> Self {
        LinearScale {
            domain,
            range,
            expansion,
        }
    }

    pub fn expanded_domain(&self) -> (f64, f64) {
        let pad = (self.domain.1 - self.domain.0) * self.expansion;
        (self.domain.0 - pad, self.domain.1 + pad)
    }

    pub fn forward(&self, x: f64) -> f64 {
        let (d0, d1) = self.expanded_domain();
        let (lo, hi) = self.range;
        lo + (x - d0) / (d1 - d0) * (hi - lo)
    }

    pub fn inverse(&self, s: f64) -> f64 {
        let (d0, d1) = self.expanded_domain();
        let (lo, hi) = self.range;
        d0 + (s - lo) / (hi - lo) * (d1 - d0)
    }

    /// Same domain, different screen range.
    pub fn with_range(&self, range: (f64, f64)) -> Self {
        LinearScale { range, ..*self }
    }
}

/// Fits a scale to the finite entries of `values`.
///
/// A single distinct value `c` is widened to `(c - 1, c + 1)` before expansion.
pub fn fit_scale(
    values: &[f64],
    range: (f64, f64),
    expansion: f64,
) -> Result<LinearScale, ScaleError> {
    let mut it = values.iter().copied().filter(|v| v.is_finite());
    let first = it.next().ok_or(ScaleError::NoFiniteValues)?;
    let (mut min, mut max) = (first, first);
    for v in it {
        min = min.min(v);
        max = max.max(v);
    }
    if min == max {
        min -= 1.0;
        max += 1.0;
    }
    Ok(LinearScale::new((min, max), range, expansion))
}

/// Nice step multipliers as `(mantissa, decimal shift)`: 2.5 is 25 × 10⁻¹.
const NICE_STEPS: [(i64, i32); 5] = [(1, 0), (2, 0), (25, -1), (5, 0), (10, 0)];

/// `m * 10^e` computed by a single correctly rounded multiply or divide.
fn scaled_power(m: i64, e: i32) -> f64 {
    if e >= 0 {
        m as f64 * libm::pow(10.0, e as f64)
    } else {
        m as f64 / libm::pow(10.0, -e as f64)
    }
}

/// Tick values: every multiple of the nice step inside `[dmin, dmax]`.
///
/// The step is the smallest of {1, 2, 2.5, 5, 10} × 10^⌊log10 raw⌋ not below
/// `raw = (dmax - dmin) / (target_count - 1)`.
pub fn nice_breaks(dmin: f64, dmax: f64, target_count: usize) -> Vec<f64> {
    if !(dmin < dmax) || !dmin.is_finite() || !dmax.is_finite() {
        return Vec::new();
    }
    let intervals = target_count.max(2) - 1;
    let raw = (dmax - dmin) / intervals as f64;
    let exp = libm::floor(libm::log10(raw)) as i32;
    let (mant, shift) = NICE_STEPS
        .iter()
        .copied()
        .find(|&(m, s)| scaled_power(m, exp + s) >= raw * (1.0 - 1e-9))
        .unwrap_or((10, 0));
    let step_exp = exp + shift;
    let step = scaled_power(mant, step_exp);

    let tol = 1e-9;
    let k_lo = libm::ceil(dmin / step - tol) as i64;
    let k_hi = libm::floor(dmax / step + tol) as i64;
    let mut out = Vec::new();
    for k in k_lo..=k_hi {
        let b = scaled_power(k * mant, step_exp);
        if b >= dmin && b <= dmax {
            out.push(b);
        }
    }
    out
}

/// A drawing panel with its screen rectangle and position scales.
#[derive(Clone, Debug, PartialEq)]
pub struct Panel {
    pub rect: Rect,
    pub x_scale: LinearScale,
    pub y_scale: LinearScale,
    pub facet_key: Option<String>,
}

impl Panel {
    pub fn to_screen(&self, x: f64, y: f64) -> (f64, f64) {
        (self.x_scale.forward(x), self.y_scale.forward(y))
    }
}

/// A facet cell before scales are attached.
#[derive(Clone, Debug, PartialEq)]
pub struct FacetCell {
    pub rect: Rect,
    pub key: Option<String>,
    pub row: usize,
    pub col: usize,
}

/// Row-major grid of equally sized cells separated by `gap`.
///
/// Without explicit dimensions, `cols = ceil(sqrt(n))` and `rows = ceil(n / cols)`.
/// With only one given, the other is derived from it.
pub fn facet_layout(
    keys: &[Option<String>],
    total: Rect,
    rows: Option<usize>,
    cols: Option<usize>,
    gap: f64,
) -> Result<Vec<FacetCell>, ScaleError> {
    let n = keys.len();
    if n == 0 {
        return Err(ScaleError::NoPanels);
    }
    let (rows, cols) = match (rows, cols) {
        (Some(r), Some(c)) => (r, c),
        (Some(r), None) => (r, n.div_ceil(r.max(1))),
        (None, Some(c)) => (n.div_ceil(c.max(1)), c),
        (None, None) => {
            let c = libm::ceil(libm::sqrt(n as f64)) as usize;
            (n.div_ceil(c), c)
        }
    };
    if rows == 0 || cols == 0 || rows * cols < n {
        return Err(ScaleError::RowsColsTooSmall {
            rows,
            cols,
            panels: n,
        });
    }
    let w = (total.w - gap * (cols as f64 - 1.0)) / cols as f64;
    let h = (total.h - gap * (rows as f64 - 1.0)) / rows as f64;
    if !(w > 0.0 && h > 0.0) {
        return Err(ScaleError::PlotAreaTooSmall);
    }
    Ok(keys
        .iter()
        .enumerate()
        .map(|(i, key)| {
            let (r, c) = (i / cols, i % cols);
            FacetCell {
                rect: Rect::new(
                    total.x + c as f64 * (w + gap),
                    total.y + r as f64 * (h + gap),
                    w,
                    h,
                ),
                key: key.clone(),
                row: r,
                col: c,
            }
        })
        .collect())
}

/// Maps a data value to a glyph radius with area linear in the value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SizeScale {
    pub domain: (f64, f64),
    pub radius_range: (f64, f64),
}

impl SizeScale {
    pub fn new(domain: (f64, f64), radius_range: (f64, f64)) -> Result<Self, ScaleError> {
        let (r0, r1) = radius_range;
        if !(r0 > 0.0 && r0 <= r1 && r1.is_finite()) || !(domain.0 <= domain.1) {
            return Err(ScaleError::InvalidSizeScale);
        }
        Ok(SizeScale {
            domain,
            radius_range,
        })
    }

    pub fn fit(values: &[f64], radius_range: (f64, f64)) -> Result<Self, ScaleError> {
        let mut it = values.iter().copied().filter(|v| v.is_finite());
        let first = it.next().ok_or(ScaleError::NoFiniteValues)?;
        let (min, max) = it.fold((first, first), |(a, b), v| (a.min(v), b.max(v)));
        SizeScale::new((min, max), radius_range)
    }
}

/// `sqrt(r_min² + (r_max² − r_min²)·t)` with `t` the clamped domain fraction.
///
/// A degenerate domain maps every value to `r_max`.
pub fn size_radius(scale: &SizeScale, v: f64) -> f64 {
    let (vmin, vmax) = scale.domain;
    let (r0, r1) = scale.radius_range;
    let t = if vmax > vmin {
        ((v - vmin) / (vmax - vmin)).clamp(0.0, 1.0)
    } else {
        1.0
    };
    libm::sqrt(r0 * r0 + (r1 * r1 - r0 * r0) * t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn fit_scale_examples() {
        let s = fit_scale(&[0.0, 10.0], (0.0, 100.0), 0.05).unwrap();
        assert!((s.forward(-0.5) - 0.0).abs() < 1e-12);
        assert!((s.forward(10.5) - 100.0).abs() < 1e-12);
        // 100 * 0.5 / 11
        assert!((s.forward(0.0) - 4.545_454_545_454_545).abs() < 1e-9);

        let s = fit_scale(&[5.0, 5.0], (0.0, 1.0), 0.05).unwrap();
        assert_eq!(s.domain, (4.0, 6.0));

        let s = fit_scale(&[3.0, 9.0], (20.0, 80.0), 0.0).unwrap();
        assert_eq!(s.forward(3.0), 20.0);
        assert_eq!(s.forward(9.0), 80.0);

        assert_eq!(
            fit_scale(&[f64::NAN], (0.0, 1.0), 0.0),
            Err(ScaleError::NoFiniteValues)
        );
    }

    #[test]
    fn forward_examples() {
        let s = LinearScale::new((0.0, 1.0), (0.0, 100.0), 0.0);
        assert_eq!(s.forward(0.5), 50.0);
        assert_eq!(s.forward(2.0), 200.0);
        let inv = LinearScale::new((0.0, 1.0), (100.0, 0.0), 0.0);
        assert_eq!(inv.forward(0.0), 100.0);
    }

    #[test]
    fn nice_breaks_examples() {
        assert_eq!(
            nice_breaks(0.0, 100.0, 5),
            vec![0.0, 25.0, 50.0, 75.0, 100.0]
        );
        assert_eq!(nice_breaks(0.0, 1.0, 5), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(nice_breaks(0.3, 0.7, 5), vec![0.3, 0.4, 0.5, 0.6, 0.7]);
    }

    #[test]
    fn nice_breaks_other_ranges() {
        assert_eq!(nice_breaks(-7.0, 13.0, 5), vec![-5.0, 0.0, 5.0, 10.0]);
        assert_eq!(nice_breaks(47.5, 97.5, 5), vec![60.0, 80.0]);
        assert_eq!(nice_breaks(0.0, 10.0, 5), vec![0.0, 2.5, 5.0, 7.5, 10.0]);
        assert!(nice_breaks(1.0, 1.0, 5).is_empty());
    }

    #[test]
    fn facet_examples() {
        let total = Rect::new(0.0, 0.0, 310.0, 210.0);
        let one = facet_layout(&[None], total, None, None, 10.0).unwrap();
        assert_eq!(one[0].rect, total);

        let keys: Vec<Option<String>> = (0..5).map(|i| Some(alloc::format!("k{}", i))).collect();
        let five = facet_layout(&keys, total, None, None, 10.0).unwrap();
        assert_eq!(five.len(), 5);
        assert_eq!((five[4].row, five[4].col), (1, 1));
        assert_eq!(
            five[0].rect,
            Rect::new(0.0, 0.0, 96.666_666_666_666_67, 100.0)
        );

        let strip = facet_layout(&keys[..4], total, Some(1), None, 10.0).unwrap();
        assert!(strip.iter().all(|c| c.row == 0));
        assert_eq!(strip[3].col, 3);

        assert!(matches!(
            facet_layout(&keys, total, Some(1), Some(2), 10.0),
            Err(ScaleError::RowsColsTooSmall { .. })
        ));
    }

    #[test]
    fn size_radius_examples() {
        let s = SizeScale::new((0.0, 10.0), (4.0, 18.0)).unwrap();
        assert_eq!(size_radius(&s, 0.0), 4.0);
        assert_eq!(size_radius(&s, 10.0), 18.0);
        assert!((size_radius(&s, 5.0) - 13.038_404_810_405_298).abs() < 1e-9);
        assert_eq!(size_radius(&s, -3.0), 4.0);
        assert_eq!(size_radius(&s, 30.0), 18.0);
        assert!(SizeScale::new((0.0, 1.0), (0.0, 1.0)).is_err());
    }
}
