//! Shared helpers: asset paths, CLI invocation and SVG glyph recovery.
#![allow(dead_code)]

use std::f64::consts::TAU;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn assets() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("assets")
}

pub fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("corpus")
}

pub fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glyphplot"))
        .args(args)
        .output()
        .expect("spawn glyphplot")
}

/// Runs the CLI on `data` + `spec`, writing `out`, plus any extra flags.
pub fn render(data: &Path, spec: &Path, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec![
        "--data",
        data.to_str().unwrap(),
        "--spec",
        spec.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    cli(&args)
}

/// One sector recovered from emitted coordinates.
#[derive(Clone, Debug)]
pub struct ParsedSector {
    pub category: String,
    /// Radius as written in the document.
    pub radius_text: String,
    /// Distance from the center to each arc endpoint.
    pub endpoint_radii: Vec<f64>,
    /// `[start, end)` clockwise from 12 o'clock; full circles are `(0, 2π)`.
    pub start: f64,
    pub end: f64,
    pub title: Option<String>,
}

#[derive(Clone, Debug)]
pub struct ParsedGlyph {
    pub row: String,
    pub center: (f64, f64),
    pub sectors: Vec<ParsedSector>,
}

fn num(s: &str) -> f64 {
    s.parse().unwrap_or_else(|_| panic!("bad number {:?}", s))
}

fn angle_of(dx: f64, dy: f64) -> f64 {
    let a = dx.atan2(-dy);
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

fn parse_path(d: &str) -> ((f64, f64), ParsedSector) {
    let t: Vec<&str> = d.split_whitespace().collect();
    assert_eq!(t.len(), 15, "unexpected sector path {:?}", d);
    assert_eq!(
        (t[0], t[3], t[6], t[9], t[11], t[14]),
        ("M", "L", "A", "0", "1", "Z")
    );
    assert_eq!(t[7], t[8], "elliptical arc in {:?}", d);
    let (cx, cy) = (num(t[1]), num(t[2]));
    let (x0, y0) = (num(t[4]) - cx, num(t[5]) - cy);
    let (x1, y1) = (num(t[12]) - cx, num(t[13]) - cy);
    let start = angle_of(x0, y0);
    let mut end = angle_of(x1, y1);
    if end <= start {
        end += TAU;
    }
    let sweep = end - start;
    if (sweep - std::f64::consts::PI).abs() > 1e-3 {
        assert_eq!(
            t[10] == "1",
            sweep > std::f64::consts::PI,
            "large-arc flag in {:?}",
            d
        );
    }
    (
        (cx, cy),
        ParsedSector {
            category: String::new(),
            radius_text: t[7].to_string(),
            endpoint_radii: vec![x0.hypot(y0), x1.hypot(y1)],
            start,
            end,
            title: None,
        },
    )
}

/// Every glyph group in document order.
pub fn parse_glyphs(svg: &str) -> Vec<ParsedGlyph> {
    let doc = roxmltree::Document::parse(svg).expect("well-formed SVG");
    let mut glyphs = Vec::new();
    for g in doc
        .descendants()
        .filter(|n| n.has_tag_name("g") && n.attribute("class") == Some("glyph"))
    {
        let mut center = None;
        let mut sectors = Vec::new();
        for el in g.children().filter(|n| n.is_element()) {
            let (c, mut sector) = match el.tag_name().name() {
                "path" => parse_path(el.attribute("d").unwrap()),
                "circle" => {
                    let c = (
                        num(el.attribute("cx").unwrap()),
                        num(el.attribute("cy").unwrap()),
                    );
                    let r = el.attribute("r").unwrap();
                    (
                        c,
                        ParsedSector {
                            category: String::new(),
                            radius_text: r.to_string(),
                            endpoint_radii: vec![num(r)],
                            start: 0.0,
                            end: TAU,
                            title: None,
                        },
                    )
                }
                other => panic!("unexpected glyph child <{}>", other),
            };
            sector.category = el
                .attribute("data-category")
                .unwrap_or_default()
                .to_string();
            sector.title = el
                .children()
                .find(|n| n.has_tag_name("title"))
                .map(|t| t.text().unwrap_or_default().to_string());
            match center {
                None => center = Some(c),
                Some(prev) => assert_eq!(prev, c, "sectors of one glyph share a center"),
            }
            sectors.push(sector);
        }
        glyphs.push(ParsedGlyph {
            row: g.attribute("data-row").unwrap().to_string(),
            center: center.expect("glyph has at least one sector"),
            sectors,
        });
    }
    glyphs
}

/// Largest angular disagreement between two renders of the same glyphs.
pub fn max_angle_difference(a: &[ParsedGlyph], b: &[ParsedGlyph]) -> Result<f64, String> {
    if a.len() != b.len() {
        return Err(format!("glyph count {} vs {}", a.len(), b.len()));
    }
    let mut worst = 0.0f64;
    for (ga, gb) in a.iter().zip(b) {
        if ga.row != gb.row || ga.sectors.len() != gb.sectors.len() {
            return Err(format!(
                "glyph {} vs {} differ in structure",
                ga.row, gb.row
            ));
        }
        for (sa, sb) in ga.sectors.iter().zip(&gb.sectors) {
            if sa.category != sb.category {
                return Err(format!("glyph {} category order differs", ga.row));
            }
            worst = worst
                .max((sa.start - sb.start).abs())
                .max((sa.end - sb.end).abs());
        }
    }
    Ok(worst)
}

/// Checks every emitted radius against `expected`; returns the first mismatch.
pub fn radius_mismatch(glyphs: &[ParsedGlyph], expected: &str) -> Option<String> {
    // Endpoints are rounded to 4 decimals per axis.
    let tol = 0.5e-4 * std::f64::consts::SQRT_2 + 1e-12;
    let r = num(expected);
    for g in glyphs {
        for s in &g.sectors {
            if s.radius_text != expected {
                return Some(format!("glyph {} radius {:?}", g.row, s.radius_text));
            }
            if let Some(d) = s.endpoint_radii.iter().find(|d| (**d - r).abs() > tol) {
                return Some(format!("glyph {} endpoint at distance {}", g.row, d));
            }
        }
    }
    None
}
