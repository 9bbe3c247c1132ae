//! Resolves a spec plus extracted compositions into a render tree.
//!
//! This is the only place where data space meets screen space: anchors go
//! through panel scales (or projection + uniform geo transform) to become
//! glyph centers, while the glyph geometry itself is built from the radius
//! and composition alone.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::geo::{
    fit_geo_scale, geo_path, project, Extent, GeoError, GeoLayer, GeoPath, Projection,
};
use crate::glyph::{build_glyph, GlyphError, GlyphGeometry, Point};
use crate::jitter::jitter_offsets;
use crate::model::{Extraction, Labels, PlotSpec};
use crate::render::{assign_palette, layout_legend, LegendLayout};
use crate::scale::{
    facet_layout, fit_scale, nice_breaks, size_radius, LinearScale, Panel, Rect, ScaleError,
    SizeScale, DEFAULT_EXPANSION, DEFAULT_FACET_GAP,
};

/// Fraction of the output width reserved for the legend on the right.
pub const LEGEND_FRACTION: f64 = 0.15;
pub const TITLE_MARGIN: f64 = 36.0;
pub const AXIS_MARGIN_LEFT: f64 = 56.0;
pub const AXIS_MARGIN_BOTTOM: f64 = 44.0;
pub const MAP_MARGIN: f64 = 10.0;
pub const STRIP_HEIGHT: f64 = 18.0;
pub const BREAK_TARGET: usize = 5;

#[derive(Clone, Debug, PartialEq)]
pub enum SceneError {
    Scale(ScaleError),
    Geo(GeoError),
    Glyph { row: usize, error: GlyphError },
}

impl fmt::Display for SceneError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SceneError::Scale(e) => write!(f, "{}", e),
            SceneError::Geo(e) => write!(f, "{}", e),
            SceneError::Glyph { row, error } => write!(f, "row {}: {}", row + 1, error),
        }
    }
}

impl From<ScaleError> for SceneError {
    fn from(e: ScaleError) -> Self {
        SceneError::Scale(e)
    }
}

impl From<GeoError> for SceneError {
    fn from(e: GeoError) -> Self {
        SceneError::Geo(e)
    }
}

/// One panel and everything drawn inside it.
#[derive(Clone, Debug, PartialEq)]
pub struct PanelScene {
    pub panel: Panel,
    pub x_breaks: Vec<f64>,
    pub y_breaks: Vec<f64>,
    /// Maps have no position axes.
    pub axes: bool,
    pub strip_label: Option<String>,
    pub geo_paths: Vec<GeoPath>,
    pub glyphs: Vec<GlyphGeometry>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MapStyle {
    pub fill: String,
    pub stroke: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    pub width: f64,
    pub height: f64,
    pub plot_area: Rect,
    pub panels: Vec<PanelScene>,
    pub legend: LegendLayout,
    pub labels: Labels,
    pub border_color: String,
    pub clip_glyphs: bool,
    pub map_style: Option<MapStyle>,
}

impl Scene {
    /// Glyphs across all panels in paint order.
    pub fn glyphs(&self) -> impl Iterator<Item = &GlyphGeometry> {
        self.panels.iter().flat_map(|p| p.glyphs.iter())
    }

    pub fn glyph_count(&self) -> usize {
        self.panels.iter().map(|p| p.glyphs.len()).sum()
    }
}

/// Area left for panels once title, axis and legend margins are taken.
pub fn plot_area(width: f64, height: f64, map: bool) -> Result<Rect, ScaleError> {
    let (left, bottom) = if map {
        (MAP_MARGIN, MAP_MARGIN)
    } else {
        (AXIS_MARGIN_LEFT, AXIS_MARGIN_BOTTOM)
    };
    let right = width * (1.0 - LEGEND_FRACTION) - MAP_MARGIN;
    let rect = Rect::new(
        left,
        TITLE_MARGIN,
        right - left,
        height - TITLE_MARGIN - bottom,
    );
    if rect.w > 0.0 && rect.h > 0.0 {
        Ok(rect)
    } else {
        Err(ScaleError::PlotAreaTooSmall)
    }
}

/// Facet keys in first-appearance order; a single unkeyed panel otherwise.
fn facet_keys(spec: &PlotSpec, extraction: &Extraction) -> Vec<Option<String>> {
    if spec.facet_column.is_none() {
        return alloc::vec![None];
    }
    let mut keys: Vec<Option<String>> = Vec::new();
    for row in &extraction.rows {
        if !keys.contains(&row.facet_key) {
            keys.push(row.facet_key.clone());
        }
    }
    if keys.is_empty() {
        keys.push(None);
    }
    keys
}

fn widen(extent: Extent) -> Extent {
    let mut e = extent;
    if !(e.width() > 0.0) {
        e.min_u -= 0.05;
        e.max_u += 0.05;
    }
    if !(e.height() > 0.0) {
        e.min_v -= 0.05;
        e.max_v += 0.05;
    }
    e
}

/// Builds the full scene. Scales are shared by every facet panel.
pub fn build_scene(
    spec: &PlotSpec,
    extraction: &Extraction,
    layer: Option<&GeoLayer>,
) -> Result<Scene, SceneError> {
    let map = spec.is_map();
    let area = plot_area(spec.width, spec.height, map)?;
    let keys = facet_keys(spec, extraction);
    let faceted = spec.facet_column.is_some();
    let cells = facet_layout(
        &keys,
        area,
        spec.facet_rows,
        spec.facet_cols,
        DEFAULT_FACET_GAP,
    )?;

    let rows = &extraction.rows;
    let palette = assign_palette(&extraction.categories, &spec.color_overrides);

    let size_scale = match &spec.size_column {
        Some(_) => {
            let values: Vec<f64> = rows.iter().filter_map(|r| r.size_value).collect();
            match SizeScale::fit(&values, spec.size_range) {
                Ok(s) => Some(s),
                Err(ScaleError::NoFiniteValues) => None,
                Err(e) => return Err(e.into()),
            }
        }
        None => None,
    };

    let projection = spec.projection.map(|kind| {
        let (lon, lat) = spec.projection_center.unwrap_or((0.0, 0.0));
        Projection::with_center(kind, lon, lat)
    });

    // Anchor positions in the plane the panel scales consume.
    let anchors: Vec<(f64, f64)> = match &projection {
        Some(p) => rows
            .iter()
            .map(|r| project(p, r.anchor_x, r.anchor_y))
            .collect::<Result<_, _>>()?,
        None => rows.iter().map(|r| (r.anchor_x, r.anchor_y)).collect(),
    };

    let mut panels: Vec<PanelScene> = Vec::with_capacity(cells.len());
    if let Some(proj) = &projection {
        let mut points = match layer {
            Some(l) => l.projected_points(proj)?,
            None => Vec::new(),
        };
        points.extend(anchors.iter().copied());
        let extent = Extent::of_points(points).map(widen);
        for cell in &cells {
            let rect = panel_rect(cell.rect, faceted);
            let transform = fit_geo_scale(extent, &rect)?;
            let (x_scale, y_scale) = transform.as_scales(&rect);
            let geo_paths = match layer {
                Some(l) => geo_path(l, proj, &transform)?,
                None => Vec::new(),
            };
            panels.push(PanelScene {
                panel: Panel {
                    rect,
                    x_scale,
                    y_scale,
                    facet_key: cell.key.clone(),
                },
                x_breaks: Vec::new(),
                y_breaks: Vec::new(),
                axes: false,
                strip_label: if faceted { cell.key.clone() } else { None },
                geo_paths,
                glyphs: Vec::new(),
            });
        }
    } else {
        let xs: Vec<f64> = anchors.iter().map(|a| a.0).collect();
        let ys: Vec<f64> = anchors.iter().map(|a| a.1).collect();
        let fit = |values: &[f64]| match fit_scale(values, (0.0, 1.0), DEFAULT_EXPANSION) {
            Err(ScaleError::NoFiniteValues) => {
                Ok(LinearScale::new((0.0, 1.0), (0.0, 1.0), DEFAULT_EXPANSION))
            }
            other => other,
        };
        let x_base = fit(&xs)?;
        let y_base = fit(&ys)?;
        let (x0, x1) = x_base.expanded_domain();
        let (y0, y1) = y_base.expanded_domain();
        let x_breaks = nice_breaks(x0, x1, BREAK_TARGET);
        let y_breaks = nice_breaks(y0, y1, BREAK_TARGET);
        for cell in &cells {
            let rect = panel_rect(cell.rect, faceted);
            panels.push(PanelScene {
                panel: Panel {
                    rect,
                    x_scale: x_base.with_range((rect.x, rect.right())),
                    y_scale: y_base.with_range((rect.bottom(), rect.y)),
                    facet_key: cell.key.clone(),
                },
                x_breaks: x_breaks.clone(),
                y_breaks: y_breaks.clone(),
                axes: true,
                strip_label: if faceted { cell.key.clone() } else { None },
                geo_paths: Vec::new(),
                glyphs: Vec::new(),
            });
        }
    }

    let offsets = match &spec.jitter {
        Some(j) => {
            let amount = j.amount.unwrap_or(spec.pie_radius / 2.0);
            jitter_offsets(rows.len(), amount, j.seed)
        }
        None => Vec::new(),
    };

    for (i, row) in rows.iter().enumerate() {
        let panel_index = if faceted {
            keys.iter().position(|k| *k == row.facet_key).unwrap_or(0)
        } else {
            0
        };
        let panel = &panels[panel_index].panel;
        let (u, v) = anchors[i];
        let (mut cx, mut cy) = panel.to_screen(u, v);
        if let Some(&(dx, dy)) = offsets.get(i) {
            cx += dx;
            cy += dy;
        }
        let radius = match (&size_scale, row.size_value) {
            (Some(s), Some(v)) => size_radius(s, v),
            _ => spec.pie_radius,
        };
        let glyph = build_glyph(row, Point::new(cx, cy), radius, &palette, spec.interactive)
            .map_err(|error| SceneError::Glyph {
                row: row.row_id,
                error,
            })?;
        panels[panel_index].glyphs.push(glyph);
    }

    let legend = layout_legend(&palette, size_scale.as_ref(), spec.width, area.y);

    Ok(Scene {
        width: spec.width,
        height: spec.height,
        plot_area: area,
        panels,
        legend,
        labels: spec.labels.clone(),
        border_color: spec.border_color.clone(),
        clip_glyphs: spec.clip_glyphs,
        map_style: layer.map(|l| MapStyle {
            fill: l.fill.clone(),
            stroke: l.stroke.clone(),
        }),
    })
}

fn panel_rect(cell: Rect, faceted: bool) -> Rect {
    if faceted {
        Rect::new(
            cell.x,
            cell.y + STRIP_HEIGHT,
            cell.w,
            (cell.h - STRIP_HEIGHT).max(1.0),
        )
    } else {
        cell
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{extract_compositions, CompositionRow, SliceSpec};
    use alloc::string::ToString;
    use alloc::vec;

    fn extraction(rows: Vec<CompositionRow>) -> Extraction {
        Extraction {
            categories: vec!["A".to_string(), "B".to_string(), "C".to_string()],
            rows,
            skipped: Vec::new(),
        }
    }

    fn row(x: f64, y: f64, values: &[f64], facet: Option<&str>, id: usize) -> CompositionRow {
        CompositionRow {
            anchor_x: x,
            anchor_y: y,
            values: values.to_vec(),
            size_value: Some(x),
            facet_key: facet.map(|s| s.to_string()),
            row_id: id,
        }
    }

    fn spec() -> PlotSpec {
        PlotSpec::new(
            "x",
            "y",
            SliceSpec::Wide(vec!["A".into(), "B".into(), "C".into()]),
        )
    }

    #[test]
    fn glyphs_keep_radius_and_angles_across_sizes() {
        let e = extraction(vec![
            row(1.0, 2.0, &[1.0, 2.0, 3.0], None, 0),
            row(5.0, -1.0, &[0.0, 1.0, 1.0], None, 1),
        ]);
        let mut a = spec();
        a.width = 600.0;
        a.height = 600.0;
        let mut b = spec();
        b.width = 1800.0;
        b.height = 300.0;
        let sa = build_scene(&a, &e, None).unwrap();
        let sb = build_scene(&b, &e, None).unwrap();
        for (ga, gb) in sa.glyphs().zip(sb.glyphs()) {
            assert_eq!(ga.radius, gb.radius);
            assert_eq!(ga.sectors, gb.sectors);
            assert_ne!(ga.center, gb.center);
        }
    }

    #[test]
    fn facets_share_scales_and_route_rows() {
        let e = extraction(vec![
            row(1.0, 2.0, &[1.0, 2.0, 3.0], Some("a"), 0),
            row(5.0, -1.0, &[0.0, 1.0, 1.0], Some("b"), 1),
            row(3.0, 0.0, &[1.0, 1.0, 1.0], Some("a"), 2),
        ]);
        let mut s = spec();
        s.facet_column = Some("f".into());
        let scene = build_scene(&s, &e, None).unwrap();
        assert_eq!(scene.panels.len(), 2);
        assert_eq!(scene.panels[0].glyphs.len(), 2);
        assert_eq!(scene.panels[1].glyphs.len(), 1);
        assert_eq!(
            scene.panels[0].panel.x_scale.domain,
            scene.panels[1].panel.x_scale.domain
        );
        assert!(!scene.panels[0]
            .panel
            .rect
            .overlaps(&scene.panels[1].panel.rect));
    }

    #[test]
    fn size_column_sets_radius() {
        let e = extraction(vec![
            row(0.0, 0.0, &[1.0, 1.0, 1.0], None, 0),
            row(10.0, 0.0, &[1.0, 1.0, 1.0], None, 1),
        ]);
        let mut s = spec();
        s.size_column = Some("x".into());
        let scene = build_scene(&s, &e, None).unwrap();
        let radii: Vec<f64> = scene.glyphs().map(|g| g.radius).collect();
        assert_eq!(radii, vec![4.0, 18.0]);
        assert_eq!(scene.legend.size_keys.len(), 3);
    }

    #[test]
    fn jitter_moves_centers_only() {
        let e = extraction(vec![
            row(1.0, 1.0, &[1.0, 2.0, 3.0], None, 0),
            row(2.0, 2.0, &[1.0, 0.0, 3.0], None, 1),
        ]);
        let plain = build_scene(&spec(), &e, None).unwrap();
        let mut j = spec();
        j.jitter = Some(crate::model::JitterSpec {
            amount: None,
            seed: 7,
        });
        let jittered = build_scene(&j, &e, None).unwrap();
        for (a, b) in plain.glyphs().zip(jittered.glyphs()) {
            assert_eq!(a.sectors, b.sectors);
            assert_eq!(a.radius, b.radius);
            assert!((a.center.x - b.center.x).abs() <= 5.0);
            assert!((a.center.y - b.center.y).abs() <= 5.0);
            assert_ne!(a.center, b.center);
        }
    }

    #[test]
    fn empty_data_still_builds() {
        let scene = build_scene(&spec(), &extraction(Vec::new()), None).unwrap();
        assert_eq!(scene.glyph_count(), 0);
        assert_eq!(scene.panels.len(), 1);
        assert!(!scene.panels[0].x_breaks.is_empty());
    }

    #[test]
    fn too_small_canvas() {
        let mut s = spec();
        s.width = 50.0;
        assert!(matches!(
            build_scene(&s, &extraction(Vec::new()), None),
            Err(SceneError::Scale(ScaleError::PlotAreaTooSmall))
        ));
    }

    #[test]
    fn extraction_to_scene() {
        let t = crate::model::DataTable::new(
            vec!["x".into(), "y".into(), "A".into(), "B".into(), "C".into()],
            vec![vec![
                crate::model::Value::Number(1.0),
                crate::model::Value::Number(1.0),
                crate::model::Value::Number(1.0),
                crate::model::Value::Number(0.0),
                crate::model::Value::Number(0.0),
            ]],
            "t",
        )
        .unwrap();
        let e = extract_compositions(&spec(), &t).unwrap();
        let scene = build_scene(&spec(), &e, None).unwrap();
        let g = scene.glyphs().next().unwrap();
        assert_eq!(g.sectors.len(), 1);
        assert!(g.sectors[0].is_full_circle());
    }
}
