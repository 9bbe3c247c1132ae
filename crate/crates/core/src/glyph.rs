//! Pie-glyph geometry in a nested screen-space polar frame.
//!
//! Angles are radians measured clockwise from 12 o'clock, with screen y
//! growing downward. A glyph is fully described by its values, center,
//! radius and palette: nothing in this module can see an axis range, panel
//! size or projection.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};
use core::fmt;

use crate::model::CompositionRow;
use crate::num::{Fixed, COORD_DECIMALS};
use crate::tooltip::{tooltip_text, TooltipText};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sector {
    pub start_angle: f64,
    pub end_angle: f64,
    pub category: String,
    pub raw_value: f64,
    pub proportion: f64,
    pub fill: String,
}

impl Sector {
    pub fn sweep(&self) -> f64 {
        self.end_angle - self.start_angle
    }

    pub fn is_full_circle(&self) -> bool {
        self.start_angle == 0.0 && self.end_angle == TAU
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GlyphGeometry {
    pub center: Point,
    pub radius: f64,
    pub sectors: Vec<Sector>,
    pub tooltip: Option<TooltipText>,
    pub row_id: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GlyphError {
    AllZeroComposition,
    NegativeSliceValue { index: usize, value: f64 },
    NonFiniteValue { index: usize },
    FullCircleSector,
    InvalidRadius(f64),
    PaletteTooShort { categories: usize, colors: usize },
}

impl fmt::Display for GlyphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlyphError::AllZeroComposition => f.write_str("all slice values are zero"),
            GlyphError::NegativeSliceValue { index, value } => {
                write!(f, "slice {} has negative value {}", index, value)
            }
            GlyphError::NonFiniteValue { index } => write!(f, "slice {} is not finite", index),
            GlyphError::FullCircleSector => {
                f.write_str("a full-circle sector must be drawn as a circle")
            }
            GlyphError::InvalidRadius(r) => write!(f, "glyph radius {} must be positive", r),
            GlyphError::PaletteTooShort { categories, colors } => write!(
                f,
                "palette has {} colors for {} categories",
                colors, categories
            ),
        }
    }
}

/// Proportions `v[i] / sum(v)`. Zero entries stay zero.
pub fn normalize_slices(values: &[f64]) -> Result<Vec<f64>, GlyphError> {
    for (index, &value) in values.iter().enumerate() {
        if !value.is_finite() {
            return Err(GlyphError::NonFiniteValue { index });
        }
        if value < 0.0 {
            return Err(GlyphError::NegativeSliceValue { index, value });
        }
    }
    let total: f64 = values.iter().sum();
    if !(total > 0.0) {
        return Err(GlyphError::AllZeroComposition);
    }
    Ok(values.iter().map(|v| v / total).collect())
}

/// Angular interval of one non-empty slice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleSpan {
    /// Position of the slice in the input (category) order.
    pub index: usize,
    pub start: f64,
    pub end: f64,
}

/// Cumulative partition of `[0, 2π]` in input order.
///
/// Zero proportions produce no span. The last span always ends at exactly 2π.
pub fn sector_angles(proportions: &[f64]) -> Vec<AngleSpan> {
    let mut spans = Vec::with_capacity(proportions.len());
    let mut cumulative = 0.0;
    for (index, &p) in proportions.iter().enumerate() {
        if p <= 0.0 {
            continue;
        }
        let start = TAU * cumulative;
        cumulative += p;
        let end = TAU * cumulative;
        spans.push(AngleSpan { index, start, end });
    }
    if let Some(last) = spans.last_mut() {
        last.end = TAU;
    }
    spans
}

/// `(cx + r·sin θ, cy − r·cos θ)`.
pub fn angle_to_point(center: Point, radius: f64, theta: f64) -> Point {
    Point {
        x: center.x + radius * libm::sin(theta),
        y: center.y - radius * libm::cos(theta),
    }
}

/// Arc endpoint on the output grid.
///
/// The offset from the center is quantized on its own and then added to the
/// quantized center, so the emitted offsets (and therefore the angles
/// recoverable from the document) do not depend on where the glyph sits.
fn grid_point(center: (Fixed, Fixed), radius: f64, theta: f64) -> (Fixed, Fixed) {
    let offset = angle_to_point(Point::new(0.0, 0.0), radius, theta);
    (
        center.0 + Fixed::from_f64(offset.x),
        center.1 + Fixed::from_f64(offset.y),
    )
}

fn grid_center(center: Point) -> (Fixed, Fixed) {
    (Fixed::from_f64(center.x), Fixed::from_f64(center.y))
}

/// `M c L start A r r 0 large 1 end Z` for one slice.
pub fn sector_path(center: Point, radius: f64, sector: &Sector) -> Result<String, GlyphError> {
    if !(radius > 0.0) {
        return Err(GlyphError::InvalidRadius(radius));
    }
    let sweep = sector.sweep();
    if sweep >= TAU {
        return Err(GlyphError::FullCircleSector);
    }
    let c = grid_center(center);
    let start = grid_point(c, radius, sector.start_angle);
    let end = grid_point(c, radius, sector.end_angle);
    let large_arc = if sweep > PI { '1' } else { '0' };

    let mut d = String::with_capacity(64);
    d.push_str("M ");
    push_pair(&mut d, c);
    d.push_str(" L ");
    push_pair(&mut d, start);
    d.push_str(" A ");
    crate::num::push_decimal(&mut d, radius, COORD_DECIMALS);
    d.push(' ');
    crate::num::push_decimal(&mut d, radius, COORD_DECIMALS);
    d.push_str(" 0 ");
    d.push(large_arc);
    d.push_str(" 1 ");
    push_pair(&mut d, end);
    d.push_str(" Z");
    Ok(d)
}

fn push_pair(out: &mut String, p: (Fixed, Fixed)) {
    p.0.push_to(out);
    out.push(' ');
    p.1.push_to(out);
}

/// A single-category glyph drawn as one circle primitive.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleElement {
    pub cx: Fixed,
    pub cy: Fixed,
    pub r: Fixed,
    pub fill: String,
}

pub fn full_circle_path(
    center: Point,
    radius: f64,
    fill: &str,
) -> Result<CircleElement, GlyphError> {
    if !(radius > 0.0) {
        return Err(GlyphError::InvalidRadius(radius));
    }
    let (cx, cy) = grid_center(center);
    Ok(CircleElement {
        cx,
        cy,
        r: Fixed::from_f64(radius),
        fill: String::from(fill),
    })
}

/// Rendering primitive for one sector of a glyph.
#[derive(Clone, Debug, PartialEq)]
pub enum SectorShape {
    Path(String),
    Circle(CircleElement),
}

impl GlyphGeometry {
    /// Shapes in paint order, one per drawn sector.
    pub fn shapes(&self) -> Result<Vec<(SectorShape, &Sector)>, GlyphError> {
        self.sectors
            .iter()
            .map(|s| {
                let shape = if s.is_full_circle() {
                    SectorShape::Circle(full_circle_path(self.center, self.radius, &s.fill)?)
                } else {
                    SectorShape::Path(sector_path(self.center, self.radius, s)?)
                };
                Ok((shape, s))
            })
            .collect()
    }
}

/// Ordered `(category, color)` pairs covering every slice category.
#[derive(Clone, Debug, PartialEq)]
pub struct Palette {
    pub entries: Vec<(String, String)>,
}

impl Palette {
    pub fn categories(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(c, _)| c.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Assembles one glyph from a composition placed at `center`.
pub fn build_glyph(
    row: &CompositionRow,
    center: Point,
    radius: f64,
    palette: &Palette,
    interactive: bool,
) -> Result<GlyphGeometry, GlyphError> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(GlyphError::InvalidRadius(radius));
    }
    if palette.len() < row.values.len() {
        return Err(GlyphError::PaletteTooShort {
            categories: row.values.len(),
            colors: palette.len(),
        });
    }
    let proportions = normalize_slices(&row.values)?;
    let sectors = sector_angles(&proportions)
        .into_iter()
        .map(|span| {
            let (category, fill) = &palette.entries[span.index];
            Sector {
                start_angle: span.start,
                end_angle: span.end,
                category: category.clone(),
                raw_value: row.values[span.index],
                proportion: proportions[span.index],
                fill: fill.clone(),
            }
        })
        .collect();
    let tooltip = if interactive {
        let categories: Vec<String> = palette.entries[..row.values.len()]
            .iter()
            .map(|(c, _)| c.clone())
            .collect();
        // normalize_slices already rejected the only failure modes.
        tooltip_text(&categories, &row.values).ok()
    } else {
        None
    };
    Ok(GlyphGeometry {
        center,
        radius,
        sectors,
        tooltip,
        row_id: row.row_id,
    })
}
