//! GeoJSON (RFC 7946) boundary ingestion: Polygon and MultiPolygon only.

use std::fmt;

use glyphplot_core::geo::{GeoError, GeoFeature, GeoLayer};
use serde_json::Value;

#[derive(Debug, PartialEq)]
pub enum GeoJsonError {
    Json(String),
    Malformed { feature: String, message: String },
    Layer(GeoError),
}

impl fmt::Display for GeoJsonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeoJsonError::Json(m) => write!(f, "invalid JSON: {}", m),
            GeoJsonError::Malformed { feature, message } => {
                write!(f, "feature '{}': {}", feature, message)
            }
            GeoJsonError::Layer(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for GeoJsonError {}

/// A parsed layer plus notes about skipped features.
#[derive(Debug)]
pub struct ParsedLayer {
    pub layer: GeoLayer,
    pub skipped: Vec<String>,
}

fn feature_id(feature: &Value, index: usize) -> String {
    let props = feature.get("properties");
    let candidates = [
        props.and_then(|p| p.get("id")),
        feature.get("id"),
        props.and_then(|p| p.get("name")),
    ];
    for c in candidates.into_iter().flatten() {
        match c {
            Value::String(s) => return s.clone(),
            Value::Number(n) => return n.to_string(),
            _ => {}
        }
    }
    format!("feature-{}", index)
}

fn malformed(id: &str, message: impl Into<String>) -> GeoJsonError {
    GeoJsonError::Malformed {
        feature: id.to_string(),
        message: message.into(),
    }
}

fn ring(id: &str, v: &Value) -> Result<Vec<(f64, f64)>, GeoJsonError> {
    let points = v
        .as_array()
        .ok_or_else(|| malformed(id, "ring is not an array"))?;
    points
        .iter()
        .map(|p| {
            let pos = p
                .as_array()
                .ok_or_else(|| malformed(id, "position is not an array"))?;
            match (
                pos.first().and_then(Value::as_f64),
                pos.get(1).and_then(Value::as_f64),
            ) {
                (Some(lon), Some(lat)) => Ok((lon, lat)),
                _ => Err(malformed(
                    id,
                    "position needs numeric longitude and latitude",
                )),
            }
        })
        .collect()
}

fn polygon(id: &str, v: &Value) -> Result<Vec<Vec<(f64, f64)>>, GeoJsonError> {
    v.as_array()
        .ok_or_else(|| malformed(id, "polygon coordinates are not an array"))?
        .iter()
        .map(|r| ring(id, r))
        .collect()
}

pub fn parse_geojson(text: &str) -> Result<ParsedLayer, GeoJsonError> {
    let root: Value = serde_json::from_str(text).map_err(|e| GeoJsonError::Json(e.to_string()))?;
    let features: Vec<&Value> = match root.get("type").and_then(Value::as_str) {
        Some("FeatureCollection") => root
            .get("features")
            .and_then(Value::as_array)
            .ok_or_else(|| GeoJsonError::Json("FeatureCollection without a features array".into()))?
            .iter()
            .collect(),
        Some("Feature") => vec![&root],
        other => {
            return Err(GeoJsonError::Json(format!(
                "expected a FeatureCollection or Feature, found {}",
                other.unwrap_or("no type")
            )))
        }
    };

    let mut out = Vec::new();
    let mut skipped = Vec::new();
    for (i, f) in features.into_iter().enumerate() {
        let id = feature_id(f, i);
        let geometry = match f.get("geometry") {
            Some(g) if !g.is_null() => g,
            _ => {
                skipped.push(format!("feature '{}' has no geometry, skipped", id));
                continue;
            }
        };
        let coords = geometry.get("coordinates");
        let rings = match geometry.get("type").and_then(Value::as_str) {
            Some("Polygon") => polygon(
                &id,
                coords.ok_or_else(|| malformed(&id, "missing coordinates"))?,
            )?,
            Some("MultiPolygon") => {
                let polys = coords
                    .and_then(Value::as_array)
                    .ok_or_else(|| malformed(&id, "multipolygon coordinates are not an array"))?;
                let mut rings = Vec::new();
                for p in polys {
                    rings.extend(polygon(&id, p)?);
                }
                rings
            }
            Some(other) => {
                skipped.push(format!(
                    "feature '{}' has unsupported geometry {}, skipped",
                    id, other
                ));
                continue;
            }
            None => return Err(malformed(&id, "geometry without a type")),
        };
        out.push(GeoFeature { id, rings });
    }
    let layer = GeoLayer::new(out).map_err(GeoJsonError::Layer)?;
    Ok(ParsedLayer { layer, skipped })
}
