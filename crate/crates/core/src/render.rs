//! SVG emission.
//!
//! Output is byte-deterministic for a given [`Scene`]: element order is fixed,
//! every number goes through [`crate::num`], and nothing depends on hashing
//! or the clock.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::glyph::{GlyphGeometry, Palette, SectorShape};
use crate::num::{fmt_decimal, push_decimal, COORD_DECIMALS};
use crate::scale::{size_radius, SizeScale};
use crate::scene::{PanelScene, Scene, LEGEND_FRACTION};

/// Default categorical cycle.
pub const DEFAULT_PALETTE: [&str; 8] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666",
];

const BACKGROUND: &str = "#ffffff";
const PANEL_BACKGROUND: &str = "#f5f5f5";
const GRID: &str = "#dddddd";
const AXIS: &str = "#333333";
const TEXT: &str = "#222222";

pub fn assign_palette(categories: &[String], overrides: &BTreeMap<String, String>) -> Palette {
    Palette {
        entries: categories
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let color = overrides
                    .get(c)
                    .cloned()
                    .unwrap_or_else(|| String::from(DEFAULT_PALETTE[i % DEFAULT_PALETTE.len()]));
                (c.clone(), color)
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Swatch {
    pub category: String,
    pub color: String,
    pub x: f64,
    pub y: f64,
    pub size: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SizeKey {
    pub value: f64,
    pub radius: f64,
    pub cx: f64,
    pub cy: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LegendLayout {
    pub x: f64,
    pub swatches: Vec<Swatch>,
    pub size_keys: Vec<SizeKey>,
}

const SWATCH: f64 = 12.0;
const SWATCH_ROW: f64 = 20.0;

/// Swatch column in the right margin, then three size reference circles
/// (domain min, mid, max) when a size scale exists.
pub fn layout_legend(
    palette: &Palette,
    size: Option<&SizeScale>,
    width: f64,
    top: f64,
) -> LegendLayout {
    let x = width * (1.0 - LEGEND_FRACTION) + 4.0;
    let swatches: Vec<Swatch> = palette
        .entries
        .iter()
        .enumerate()
        .map(|(i, (category, color))| Swatch {
            category: category.clone(),
            color: color.clone(),
            x,
            y: top + i as f64 * SWATCH_ROW,
            size: SWATCH,
        })
        .collect();
    let mut size_keys = Vec::new();
    if let Some(scale) = size {
        let (vmin, vmax) = scale.domain;
        let mut y = top + swatches.len() as f64 * SWATCH_ROW + 12.0;
        for value in [vmin, (vmin + vmax) / 2.0, vmax] {
            let radius = size_radius(scale, value);
            size_keys.push(SizeKey {
                value,
                radius,
                cx: x + scale.radius_range.1,
                cy: y + radius,
            });
            y += 2.0 * radius + 8.0;
        }
    }
    LegendLayout {
        x,
        swatches,
        size_keys,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RenderOptions {
    /// Attach `<title>` hover text to every sector.
    pub interactive: bool,
}

pub fn escape_xml(s: &str, out: &mut String) {
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c if (c as u32) < 0x20 && c != '\n' && c != '\t' => out.push(' '),
            c => out.push(c),
        }
    }
}

fn num(out: &mut String, v: f64) {
    push_decimal(out, v, COORD_DECIMALS);
}

/// Markup for a single glyph group.
pub fn glyph_markup(glyph: &GlyphGeometry, border: &str, opts: &RenderOptions) -> String {
    let mut out = String::with_capacity(96 + glyph.sectors.len() * 96);
    let _ = write!(
        out,
        "<g class=\"glyph\" data-row=\"{}\" stroke=\"",
        glyph.row_id
    );
    escape_xml(border, &mut out);
    out.push_str("\" stroke-width=\"1\">\n");
    let title = match (&glyph.tooltip, opts.interactive) {
        (Some(t), true) => {
            let mut s = String::new();
            escape_xml(&t.joined(), &mut s);
            Some(s)
        }
        _ => None,
    };
    let shapes = glyph
        .shapes()
        .expect("scene glyphs have a positive radius and routed full circles");
    for (shape, sector) in shapes {
        let element = match shape {
            SectorShape::Path(d) => {
                out.push_str("<path class=\"sector\" data-category=\"");
                escape_xml(&sector.category, &mut out);
                out.push_str("\" d=\"");
                out.push_str(&d);
                "path"
            }
            SectorShape::Circle(c) => {
                out.push_str("<circle class=\"sector\" data-category=\"");
                escape_xml(&sector.category, &mut out);
                let _ = write!(out, "\" cx=\"{}\" cy=\"{}\" r=\"{}", c.cx, c.cy, c.r);
                "circle"
            }
        };
        out.push_str("\" fill=\"");
        escape_xml(&sector.fill, &mut out);
        match &title {
            Some(t) => {
                let _ = writeln!(out, "\"><title>{}</title></{}>", t, element);
            }
            None => out.push_str("\"/>\n"),
        }
    }
    out.push_str("</g>\n");
    out
}

/// Renders the scene, emitting glyph groups one by one.
pub fn render_scene(scene: &Scene, opts: &RenderOptions) -> String {
    let glyphs: Vec<String> = scene
        .glyphs()
        .map(|g| glyph_markup(g, &scene.border_color, opts))
        .collect();
    render_scene_from(scene, &glyphs)
}

/// Renders the scene around pre-rendered glyph groups, given in
/// [`Scene::glyphs`] order.
pub fn render_scene_from(scene: &Scene, glyph_groups: &[String]) -> String {
    let glyph_bytes: usize = glyph_groups.iter().map(String::len).sum();
    let mut out = String::with_capacity(glyph_bytes + 8192);
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"");
    num(&mut out, scene.width);
    out.push_str("\" height=\"");
    num(&mut out, scene.height);
    out.push_str("\" viewBox=\"0 0 ");
    num(&mut out, scene.width);
    out.push(' ');
    num(&mut out, scene.height);
    out.push_str("\" font-family=\"sans-serif\" font-size=\"11\">\n");
    let _ = writeln!(
        out,
        "<rect class=\"background\" x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
        fmt_decimal(scene.width, 4),
        fmt_decimal(scene.height, 4),
        BACKGROUND
    );

    if scene.clip_glyphs {
        out.push_str("<defs>\n");
        for (i, p) in scene.panels.iter().enumerate() {
            let r = p.panel.rect;
            let _ = write!(out, "<clipPath id=\"panel-clip-{}\"><rect", i);
            rect_attrs(&mut out, r.x, r.y, r.w, r.h);
            out.push_str("/></clipPath>\n");
        }
        out.push_str("</defs>\n");
    }

    let mut next = 0;
    for (i, panel) in scene.panels.iter().enumerate() {
        let count = panel.glyphs.len();
        render_panel(&mut out, scene, i, panel, &glyph_groups[next..next + count]);
        next += count;
    }

    render_legend(&mut out, scene);
    render_labels(&mut out, scene);
    out.push_str("</svg>\n");
    out
}

fn rect_attrs(out: &mut String, x: f64, y: f64, w: f64, h: f64) {
    out.push_str(" x=\"");
    num(out, x);
    out.push_str("\" y=\"");
    num(out, y);
    out.push_str("\" width=\"");
    num(out, w);
    out.push_str("\" height=\"");
    num(out, h);
    out.push('"');
}

fn line(out: &mut String, x1: f64, y1: f64, x2: f64, y2: f64) {
    out.push_str("<line x1=\"");
    num(out, x1);
    out.push_str("\" y1=\"");
    num(out, y1);
    out.push_str("\" x2=\"");
    num(out, x2);
    out.push_str("\" y2=\"");
    num(out, y2);
    out.push_str("\"/>\n");
}

fn text(out: &mut String, class: &str, x: f64, y: f64, anchor: &str, extra: &str, body: &str) {
    let _ = write!(out, "<text class=\"{}\" x=\"", class);
    num(out, x);
    out.push_str("\" y=\"");
    num(out, y);
    let _ = write!(
        out,
        "\" text-anchor=\"{}\" fill=\"{}\"{}>",
        anchor, TEXT, extra
    );
    escape_xml(body, out);
    out.push_str("</text>\n");
}

fn render_panel(out: &mut String, scene: &Scene, index: usize, p: &PanelScene, glyphs: &[String]) {
    let r = p.panel.rect;
    let _ = write!(out, "<g class=\"panel\" data-panel=\"{}\"", index);
    if let Some(k) = &p.panel.facet_key {
        out.push_str(" data-facet=\"");
        escape_xml(k, out);
        out.push('"');
    }
    out.push_str(">\n<rect class=\"panel-background\"");
    rect_attrs(out, r.x, r.y, r.w, r.h);
    let _ = writeln!(out, " fill=\"{}\"/>", PANEL_BACKGROUND);

    if !p.geo_paths.is_empty() {
        let style = scene.map_style.as_ref();
        out.push_str("<g class=\"map\" fill=\"");
        escape_xml(style.map_or("#eeeeee", |s| s.fill.as_str()), out);
        out.push_str("\" stroke=\"");
        escape_xml(style.map_or("#999999", |s| s.stroke.as_str()), out);
        out.push_str("\" stroke-width=\"0.5\" fill-rule=\"evenodd\">\n");
        for gp in &p.geo_paths {
            out.push_str("<path class=\"feature\" data-id=\"");
            escape_xml(&gp.id, out);
            out.push_str("\" d=\"");
            out.push_str(&gp.d);
            out.push_str("\"/>\n");
        }
        out.push_str("</g>\n");
    }

    if p.axes {
        let _ = writeln!(
            out,
            "<g class=\"grid\" stroke=\"{}\" stroke-width=\"0.5\">",
            GRID
        );
        for &b in &p.x_breaks {
            let x = p.panel.x_scale.forward(b);
            line(out, x, r.y, x, r.bottom());
        }
        for &b in &p.y_breaks {
            let y = p.panel.y_scale.forward(b);
            line(out, r.x, y, r.right(), y);
        }
        out.push_str("</g>\n");

        let _ = writeln!(
            out,
            "<g class=\"axes\" stroke=\"{}\" stroke-width=\"1\">",
            AXIS
        );
        line(out, r.x, r.bottom(), r.right(), r.bottom());
        line(out, r.x, r.y, r.x, r.bottom());
        out.push_str("</g>\n<g class=\"ticks\">\n");
        for &b in &p.x_breaks {
            let x = p.panel.x_scale.forward(b);
            text(
                out,
                "tick-x",
                x,
                r.bottom() + 14.0,
                "middle",
                "",
                &fmt_decimal(b, 4),
            );
        }
        for &b in &p.y_breaks {
            let y = p.panel.y_scale.forward(b);
            text(
                out,
                "tick-y",
                r.x - 4.0,
                y + 4.0,
                "end",
                "",
                &fmt_decimal(b, 4),
            );
        }
        out.push_str("</g>\n");
    }

    if let Some(label) = &p.strip_label {
        text(
            out,
            "strip",
            r.x + r.w / 2.0,
            r.y - 5.0,
            "middle",
            "",
            label,
        );
    }

    out.push_str("<g class=\"glyphs\"");
    if scene.clip_glyphs {
        let _ = write!(out, " clip-path=\"url(#panel-clip-{})\"", index);
    }
    out.push_str(">\n");
    for g in glyphs {
        out.push_str(g);
    }
    out.push_str("</g>\n</g>\n");
}

fn render_legend(out: &mut String, scene: &Scene) {
    let legend = &scene.legend;
    out.push_str("<g class=\"legend\">\n");
    for s in &legend.swatches {
        out.push_str("<rect class=\"swatch\"");
        rect_attrs(out, s.x, s.y, s.size, s.size);
        out.push_str(" fill=\"");
        escape_xml(&s.color, out);
        out.push_str("\"/>\n");
        text(
            out,
            "legend-label",
            s.x + s.size + 4.0,
            s.y + s.size - 2.0,
            "start",
            "",
            &s.category,
        );
    }
    for k in &legend.size_keys {
        out.push_str("<circle class=\"size-key\" cx=\"");
        num(out, k.cx);
        out.push_str("\" cy=\"");
        num(out, k.cy);
        out.push_str("\" r=\"");
        num(out, k.radius);
        let _ = writeln!(out, "\" fill=\"none\" stroke=\"{}\"/>", AXIS);
        let label = fmt_decimal(k.value, 2);
        let x = k.cx + legend.size_keys.last().map_or(0.0, |l| l.radius) + 4.0;
        text(out, "size-label", x, k.cy + 4.0, "start", "", &label);
    }
    out.push_str("</g>\n");
}

fn render_labels(out: &mut String, scene: &Scene) {
    let area = scene.plot_area;
    if let Some(t) = &scene.labels.title {
        text(
            out,
            "title",
            area.x + area.w / 2.0,
            22.0,
            "middle",
            " font-size=\"15\"",
            t,
        );
    }
    if let Some(t) = &scene.labels.x {
        text(
            out,
            "x-label",
            area.x + area.w / 2.0,
            scene.height - 8.0,
            "middle",
            "",
            t,
        );
    }
    if let Some(t) = &scene.labels.y {
        let (x, y) = (14.0, area.y + area.h / 2.0);
        let mut extra = String::from(" transform=\"rotate(-90 ");
        num(&mut extra, x);
        extra.push(' ');
        num(&mut extra, y);
        extra.push_str(")\"");
        text(out, "y-label", x, y, "middle", &extra, t);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn cats(n: usize) -> Vec<String> {
        (0..n).map(|i| alloc::format!("c{}", i)).collect()
    }

    #[test]
    fn palette_rules() {
        let p = assign_palette(&cats(4), &BTreeMap::new());
        assert_eq!(
            p.entries.iter().map(|e| e.1.as_str()).collect::<Vec<_>>(),
            DEFAULT_PALETTE[..4].to_vec()
        );
        let p = assign_palette(&cats(9), &BTreeMap::new());
        assert_eq!(p.entries[8].1, DEFAULT_PALETTE[0]);
        let mut o = BTreeMap::new();
        o.insert("EU".to_string(), "#000000".to_string());
        let p = assign_palette(&["NA".to_string(), "EU".to_string()], &o);
        assert_eq!(p.entries[0].1, DEFAULT_PALETTE[0]);
        assert_eq!(p.entries[1].1, "#000000");
    }

    #[test]
    fn legend_layout() {
        let p = assign_palette(&cats(4), &BTreeMap::new());
        let l = layout_legend(&p, None, 1000.0, 40.0);
        assert_eq!(l.swatches.len(), 4);
        assert!(l.swatches.iter().all(|s| s.x >= 850.0));
        assert_eq!(l.swatches[0].y, 40.0);
        assert!(l.size_keys.is_empty());
        let s = SizeScale::new((0.0, 10.0), (4.0, 18.0)).unwrap();
        let l = layout_legend(&p, Some(&s), 1000.0, 40.0);
        assert_eq!(l.size_keys.len(), 3);
        assert_eq!(
            l.size_keys.iter().map(|k| k.value).collect::<Vec<_>>(),
            vec![0.0, 5.0, 10.0]
        );
        assert!(l.size_keys[0].cy > l.swatches[3].y);
    }

    #[test]
    fn escaping() {
        let mut s = String::new();
        escape_xml("a<b & \"c\"", &mut s);
        assert_eq!(s, "a&lt;b &amp; &quot;c&quot;");
    }
}
