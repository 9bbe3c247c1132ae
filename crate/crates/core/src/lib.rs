//! Pie-glyph plotting core.
//!
//! Glyphs are anchored at a data-space position but their geometry lives in a
//! nested screen-space polar frame, so their radius and sector angles never
//! depend on axis ranges, panel aspect ratio, or map projection. Everything in
//! this crate is pure computation over `alloc` types; file formats, the CLI and
//! parallel emission live in the `glyphplot` crate.

#![no_std]
// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod geo;
pub mod glyph;
pub mod jitter;
pub mod model;
pub mod num;
pub mod render;
pub mod scale;
pub mod scene;
pub mod tooltip;

pub use geo::{GeoLayer, Projection, ProjectionKind};
pub use glyph::{GlyphGeometry, Point, Sector};
pub use model::{CompositionRow, DataTable, PlotSpec, SliceSpec, Value};
pub use render::{render_scene, RenderOptions};
pub use scale::{LinearScale, Panel, Rect, SizeScale};
pub use scene::{build_scene, Scene};
