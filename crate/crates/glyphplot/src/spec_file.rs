//! JSON plot-spec documents.
//!
//! ```json
//! {
//!   "mapping": {"x": "critic", "y": "user", "slices": ["NA", "EU", "JP", "Other"],
//!               "size": "total", "facet": "genre"},
//!   "glyph": {"radius": 10, "colors": {"EU": "#000000"}, "border": "#ffffff"},
//!   "map": {"geojson": "europe.geojson", "projection": "mercator", "center": [10, 52]},
//!   "jitter": {"amount": 4, "seed": 42},
//!   "interactive": true,
//!   "labels": {"title": "...", "x": "...", "y": "..."},
//!   "size": {"width": 600, "height": 600}
//! }
//! ```
//!
//! Long-format data uses `"slices_long": {"category": .., "value": .., "group_by": [..]}`
//! in place of `"slices"`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use glyphplot_core::geo::ProjectionKind;
use glyphplot_core::model::{
    JitterSpec, Labels, PlotSpec, SliceSpec, DEFAULT_BORDER, DEFAULT_PIE_RADIUS, DEFAULT_SIZE_RANGE,
};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub mapping: Mapping,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub glyph: Option<GlyphSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jitter: Option<JitterSection>,
    #[serde(default)]
    pub interactive: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<LabelSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<SizeSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facet_grid: Option<FacetGrid>,
    #[serde(default)]
    pub skip_incomplete_rows: bool,
    #[serde(default)]
    pub clip_glyphs: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Mapping {
    pub x: String,
    pub y: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slices: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slices_long: Option<LongSlices>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facet: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LongSlices {
    pub category: String,
    pub value: String,
    #[serde(default)]
    pub group_by: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlyphSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub colors: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub border: Option<String>,
    /// `[r_min, r_max]` for the size scale.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size_range: Option<[f64; 2]>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geojson: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projection: Option<String>,
    /// `[lon, lat]` degrees.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fill: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stroke: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JitterSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amount: Option<f64>,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SizeSection {
    pub width: f64,
    pub height: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FacetGrid {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cols: Option<usize>,
}

#[derive(Debug)]
pub enum SpecError {
    Io(std::io::Error),
    Json(serde_json::Error),
    SliceMapping,
    UnknownProjection(String),
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Io(e) => write!(f, "cannot read spec: {}", e),
            SpecError::Json(e) => write!(f, "invalid spec: {}", e),
            SpecError::SliceMapping => {
                f.write_str("mapping needs exactly one of \"slices\" or \"slices_long\"")
            }
            SpecError::UnknownProjection(p) => write!(
                f,
                "unknown projection '{}' (expected equirectangular, mercator or lambert_azimuthal_equal_area)",
                p
            ),
        }
    }
}

impl std::error::Error for SpecError {}

/// A spec plus the map fill/stroke, which belong to the layer rather than the plot.
#[derive(Clone, Debug, PartialEq)]
pub struct LoadedSpec {
    pub spec: PlotSpec,
    pub map_fill: Option<String>,
    pub map_stroke: Option<String>,
}

pub fn parse_projection(name: &str) -> Result<ProjectionKind, SpecError> {
    name.parse()
        .map_err(|_| SpecError::UnknownProjection(name.to_string()))
}

impl SpecFile {
    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        serde_json::from_str(text).map_err(SpecError::Json)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec documents always serialize")
    }

    /// Converts to a [`PlotSpec`]; a relative GeoJSON path resolves against `base_dir`.
    pub fn into_plot_spec(self, base_dir: Option<&Path>) -> Result<LoadedSpec, SpecError> {
        let slices = match (self.mapping.slices, self.mapping.slices_long) {
            (Some(cols), None) => SliceSpec::Wide(cols),
            (None, Some(l)) => SliceSpec::Long {
                category: l.category,
                value: l.value,
                group_by: l.group_by,
            },
            _ => return Err(SpecError::SliceMapping),
        };
        let mut spec = PlotSpec::new(self.mapping.x, self.mapping.y, slices);
        spec.size_column = self.mapping.size;
        spec.facet_column = self.mapping.facet;
        let glyph = self.glyph.unwrap_or_default();
        spec.pie_radius = glyph.radius.unwrap_or(DEFAULT_PIE_RADIUS);
        spec.color_overrides = glyph.colors;
        spec.border_color = glyph.border.unwrap_or_else(|| DEFAULT_BORDER.to_string());
        spec.size_range = glyph
            .size_range
            .map(|[a, b]| (a, b))
            .unwrap_or(DEFAULT_SIZE_RANGE);

        let map = self.map.unwrap_or_default();
        spec.projection = map
            .projection
            .as_deref()
            .map(parse_projection)
            .transpose()?;
        spec.projection_center = map.center.map(|[lon, lat]| (lon, lat));
        spec.map_source = map.geojson.map(|p| match base_dir {
            Some(dir) if Path::new(&p).is_relative() => dir.join(&p).display().to_string(),
            _ => p,
        });

        spec.jitter = self.jitter.map(|j| JitterSpec {
            amount: j.amount,
            seed: j.seed,
        });
        spec.interactive = self.interactive;
        let labels = self.labels.unwrap_or_default();
        spec.labels = Labels {
            title: labels.title,
            x: labels.x,
            y: labels.y,
        };
        if let Some(size) = self.size {
            spec.width = size.width;
            spec.height = size.height;
        }
        if let Some(grid) = self.facet_grid {
            spec.facet_rows = grid.rows;
            spec.facet_cols = grid.cols;
        }
        spec.skip_incomplete_rows = self.skip_incomplete_rows;
        spec.clip_glyphs = self.clip_glyphs;
        Ok(LoadedSpec {
            spec,
            map_fill: map.fill,
            map_stroke: map.stroke,
        })
    }

    /// The document form of a [`PlotSpec`].
    pub fn from_plot_spec(spec: &PlotSpec) -> Self {
        let (slices, slices_long) = match &spec.slices {
            SliceSpec::Wide(c) => (Some(c.clone()), None),
            SliceSpec::Long {
                category,
                value,
                group_by,
            } => (
                None,
                Some(LongSlices {
                    category: category.clone(),
                    value: value.clone(),
                    group_by: group_by.clone(),
                }),
            ),
        };
        let map = if spec.projection.is_some()
            || spec.map_source.is_some()
            || spec.projection_center.is_some()
        {
            Some(MapSection {
                geojson: spec.map_source.clone(),
                projection: spec.projection.map(|p| p.name().to_string()),
                center: spec.projection_center.map(|(a, b)| [a, b]),
                fill: None,
                stroke: None,
            })
        } else {
            None
        };
        SpecFile {
            mapping: Mapping {
                x: spec.x_column.clone(),
                y: spec.y_column.clone(),
                slices,
                slices_long,
                size: spec.size_column.clone(),
                facet: spec.facet_column.clone(),
            },
            glyph: Some(GlyphSection {
                radius: Some(spec.pie_radius),
                colors: spec.color_overrides.clone(),
                border: Some(spec.border_color.clone()),
                size_range: Some([spec.size_range.0, spec.size_range.1]),
            }),
            map,
            jitter: spec.jitter.as_ref().map(|j| JitterSection {
                amount: j.amount,
                seed: j.seed,
            }),
            interactive: spec.interactive,
            labels: Some(LabelSection {
                title: spec.labels.title.clone(),
                x: spec.labels.x.clone(),
                y: spec.labels.y.clone(),
            }),
            size: Some(SizeSection {
                width: spec.width,
                height: spec.height,
            }),
            facet_grid: if spec.facet_rows.is_some() || spec.facet_cols.is_some() {
                Some(FacetGrid {
                    rows: spec.facet_rows,
                    cols: spec.facet_cols,
                })
            } else {
                None
            },
            skip_incomplete_rows: spec.skip_incomplete_rows,
            clip_glyphs: spec.clip_glyphs,
        }
    }
}

pub fn load_spec(path: &Path) -> Result<LoadedSpec, SpecError> {
    let text = std::fs::read_to_string(path).map_err(SpecError::Io)?;
    let base: PathBuf = path.parent().map(Path::to_path_buf).unwrap_or_default();
    SpecFile::from_json(&text)?.into_plot_spec(Some(&base))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_wide() {
        let f = SpecFile::from_json(r#"{"mapping":{"x":"a","y":"b","slices":["p","q"]}}"#).unwrap();
        let s = f.into_plot_spec(None).unwrap().spec;
        assert_eq!(s.slices, SliceSpec::Wide(vec!["p".into(), "q".into()]));
        assert_eq!(s.pie_radius, 10.0);
        assert_eq!((s.width, s.height), (600.0, 600.0));
        assert!(!s.interactive);
    }

    #[test]
    fn full_document() {
        let text = r##"{
            "mapping": {"x": "lon", "y": "lat",
                        "slices_long": {"category": "age", "value": "n", "group_by": ["country"]},
                        "facet": "year"},
            "glyph": {"radius": 8, "colors": {"35+": "#000000"}, "border": "#eeeeee"},
            "map": {"geojson": "europe.geojson", "projection": "lambert", "center": [10, 52]},
            "jitter": {"seed": 3},
            "interactive": true,
            "labels": {"title": "T"},
            "size": {"width": 800, "height": 500}
        }"##;
        let loaded = SpecFile::from_json(text)
            .unwrap()
            .into_plot_spec(Some(Path::new("/data/specs")))
            .unwrap();
        let s = loaded.spec;
        assert_eq!(
            s.projection,
            Some(ProjectionKind::LambertAzimuthalEqualArea)
        );
        assert_eq!(s.projection_center, Some((10.0, 52.0)));
        assert_eq!(s.map_source.as_deref(), Some("/data/specs/europe.geojson"));
        assert_eq!(
            s.jitter,
            Some(JitterSpec {
                amount: None,
                seed: 3
            })
        );
        assert_eq!(s.facet_column.as_deref(), Some("year"));
        assert_eq!((s.width, s.height), (800.0, 500.0));
        assert_eq!(s.pie_radius, 8.0);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            SpecFile::from_json(r#"{"mapping":{"x":"a","y":"b"}}"#)
                .unwrap()
                .into_plot_spec(None),
            Err(SpecError::SliceMapping)
        ));
        assert!(matches!(
            SpecFile::from_json(
                r#"{"mapping":{"x":"a","y":"b","slices":["p"]},"map":{"projection":"robinson"}}"#
            )
            .unwrap()
            .into_plot_spec(None),
            Err(SpecError::UnknownProjection(_))
        ));
        assert!(matches!(
            SpecFile::from_json(r#"{"mapping":{"x":"a","y":"b","slices":["p"]},"colour":1}"#),
            Err(SpecError::Json(_))
        ));
    }

    #[test]
    fn plot_spec_document_round_trip() {
        let text = r##"{"mapping":{"x":"a","y":"b","slices":["p","q"],"size":"t"},
                        "glyph":{"radius":7,"colors":{"p":"#123456"},"size_range":[3,12]},
                        "map":{"projection":"mercator"},"jitter":{"amount":2,"seed":9},
                        "labels":{"x":"X"},"size":{"width":300,"height":200},
                        "facet_grid":{"rows":1},"clip_glyphs":true}"##;
        let spec = SpecFile::from_json(text)
            .unwrap()
            .into_plot_spec(None)
            .unwrap()
            .spec;
        let again = SpecFile::from_json(&SpecFile::from_plot_spec(&spec).to_json())
            .unwrap()
            .into_plot_spec(None)
            .unwrap()
            .spec;
        assert_eq!(spec, again);
    }
}
