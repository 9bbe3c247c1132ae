//! Map projections and boundary layers.
//!
//! Projections produce plane coordinates with v pointing north; the uniform
//! geo transform flips v into the y-down screen frame.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::num::Fixed;
use crate::scale::{LinearScale, Rect};

pub const MERCATOR_MAX_LAT: f64 = 85.05113;
/// Fraction of the panel left empty on each side when fitting a map.
pub const GEO_PADDING: f64 = 0.02;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjectionKind {
    Equirectangular,
    Mercator,
    LambertAzimuthalEqualArea,
}

impl ProjectionKind {
    pub fn name(self) -> &'static str {
        match self {
            ProjectionKind::Equirectangular => "equirectangular",
            ProjectionKind::Mercator => "mercator",
            ProjectionKind::LambertAzimuthalEqualArea => "lambert_azimuthal_equal_area",
        }
    }

    pub const ALL: [ProjectionKind; 3] = [
        ProjectionKind::Equirectangular,
        ProjectionKind::Mercator,
        ProjectionKind::LambertAzimuthalEqualArea,
    ];
}

impl fmt::Display for ProjectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownProjection(pub String);

impl fmt::Display for UnknownProjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown projection '{}' (expected equirectangular, mercator or lambert_azimuthal_equal_area)",
            self.0
        )
    }
}

impl FromStr for ProjectionKind {
    type Err = UnknownProjection;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "equirectangular" | "plate_carree" => Ok(ProjectionKind::Equirectangular),
            "mercator" => Ok(ProjectionKind::Mercator),
            "lambert_azimuthal_equal_area" | "lambert" | "laea" => {
                Ok(ProjectionKind::LambertAzimuthalEqualArea)
            }
            other => Err(UnknownProjection(String::from(other))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Projection {
    pub kind: ProjectionKind,
    /// `(lon, lat)` degrees; only used by the azimuthal projection.
    pub center: (f64, f64),
}

impl Projection {
    pub fn new(kind: ProjectionKind) -> Self {
        Projection {
            kind,
            center: (0.0, 0.0),
        }
    }

    pub fn with_center(kind: ProjectionKind, lon: f64, lat: f64) -> Self {
        Projection {
            kind,
            center: (lon, lat),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GeoError {
    AntipodePole {
        lon: f64,
        lat: f64,
    },
    OutOfRange {
        lon: f64,
        lat: f64,
    },
    DegenerateExtent,
    UnclosedRing {
        feature: String,
        ring: usize,
    },
    TooFewPoints {
        feature: String,
        ring: usize,
        points: usize,
    },
}

impl fmt::Display for GeoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeoError::AntipodePole { lon, lat } => write!(
                f,
                "point ({}, {}) is antipodal to the projection center",
                lon, lat
            ),
            GeoError::OutOfRange { lon, lat } => {
                write!(
                    f,
                    "point ({}, {}) is outside lon/lat degree range",
                    lon, lat
                )
            }
            GeoError::DegenerateExtent => f.write_str("projected extent has zero width or height"),
            GeoError::UnclosedRing { feature, ring } => {
                write!(f, "feature '{}' ring {} is not closed", feature, ring)
            }
            GeoError::TooFewPoints {
                feature,
                ring,
                points,
            } => write!(
                f,
                "feature '{}' ring {} has {} points, need at least 4",
                feature, ring, points
            ),
        }
    }
}

/// Projects degrees to plane coordinates `(u, v)` with v pointing north.
pub fn project(proj: &Projection, lon_deg: f64, lat_deg: f64) -> Result<(f64, f64), GeoError> {
    if !(-180.0..=180.0).contains(&lon_deg) || !(-90.0..=90.0).contains(&lat_deg) {
        return Err(GeoError::OutOfRange {
            lon: lon_deg,
            lat: lat_deg,
        });
    }
    let lam = lon_deg.to_radians();
    match proj.kind {
        ProjectionKind::Equirectangular => Ok((lam, lat_deg.to_radians())),
        ProjectionKind::Mercator => {
            let phi = lat_deg
                .clamp(-MERCATOR_MAX_LAT, MERCATOR_MAX_LAT)
                .to_radians();
            // ln tan(π/4 + φ/2) written as atanh(sin φ): same function, exact at φ = 0.
            Ok((lam, libm::atanh(libm::sin(phi))))
        }
        ProjectionKind::LambertAzimuthalEqualArea => {
            let phi = lat_deg.to_radians();
            let lam0 = proj.center.0.to_radians();
            let phi0 = proj.center.1.to_radians();
            let (sin_phi, cos_phi) = (libm::sin(phi), libm::cos(phi));
            let (sin_phi0, cos_phi0) = (libm::sin(phi0), libm::cos(phi0));
            let dlam = lam - lam0;
            let denom = 1.0 + sin_phi0 * sin_phi + cos_phi0 * cos_phi * libm::cos(dlam);
            if denom.abs() <= 1e-12 {
                return Err(GeoError::AntipodePole {
                    lon: lon_deg,
                    lat: lat_deg,
                });
            }
            let k = libm::sqrt(2.0 / denom);
            Ok((
                k * cos_phi * libm::sin(dlam),
                k * (cos_phi0 * sin_phi - sin_phi0 * cos_phi * libm::cos(dlam)),
            ))
        }
    }
}

/// Bounding box in projection-plane coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extent {
    pub min_u: f64,
    pub max_u: f64,
    pub min_v: f64,
    pub max_v: f64,
}

impl Extent {
    pub fn of_points(points: impl IntoIterator<Item = (f64, f64)>) -> Option<Extent> {
        let mut it = points.into_iter();
        let (u, v) = it.next()?;
        let mut e = Extent {
            min_u: u,
            max_u: u,
            min_v: v,
            max_v: v,
        };
        for (u, v) in it {
            e.min_u = e.min_u.min(u);
            e.max_u = e.max_u.max(u);
            e.min_v = e.min_v.min(v);
            e.max_v = e.max_v.max(v);
        }
        Some(e)
    }

    pub fn width(&self) -> f64 {
        self.max_u - self.min_u
    }

    pub fn height(&self) -> f64 {
        self.max_v - self.min_v
    }
}

/// Uniform zoom plus translation from the projection plane to screen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeoTransform {
    pub zoom: f64,
    /// Screen position of the plane origin.
    pub offset_x: f64,
    pub offset_y: f64,
}

impl GeoTransform {
    pub fn apply(&self, u: f64, v: f64) -> (f64, f64) {
        (self.offset_x + self.zoom * u, self.offset_y - self.zoom * v)
    }

    /// The same map expressed as a pair of position scales over the panel.
    pub fn as_scales(&self, rect: &Rect) -> (LinearScale, LinearScale) {
        let u_left = (rect.x - self.offset_x) / self.zoom;
        let u_right = (rect.right() - self.offset_x) / self.zoom;
        let v_bottom = (self.offset_y - rect.bottom()) / self.zoom;
        let v_top = (self.offset_y - rect.y) / self.zoom;
        (
            LinearScale::new((u_left, u_right), (rect.x, rect.right()), 0.0),
            LinearScale::new((v_bottom, v_top), (rect.bottom(), rect.y), 0.0),
        )
    }
}

/// Fits `extent` into `panel` with one zoom for both axes, centered.
pub fn fit_geo_scale(extent: Option<Extent>, panel: &Rect) -> Result<GeoTransform, GeoError> {
    let e = extent.ok_or(GeoError::DegenerateExtent)?;
    let (w, h) = (e.width(), e.height());
    if !(w > 0.0 && h > 0.0) || !w.is_finite() || !h.is_finite() {
        return Err(GeoError::DegenerateExtent);
    }
    let usable = 1.0 - 2.0 * GEO_PADDING;
    let zoom = (panel.w * usable / w).min(panel.h * usable / h);
    let cu = (e.min_u + e.max_u) / 2.0;
    let cv = (e.min_v + e.max_v) / 2.0;
    Ok(GeoTransform {
        zoom,
        offset_x: panel.x + panel.w / 2.0 - zoom * cu,
        offset_y: panel.y + panel.h / 2.0 + zoom * cv,
    })
}

/// One boundary feature: a list of closed `(lon, lat)` rings.
#[derive(Clone, Debug, PartialEq)]
pub struct GeoFeature {
    pub id: String,
    pub rings: Vec<Vec<(f64, f64)>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeoLayer {
    features: Vec<GeoFeature>,
    pub fill: String,
    pub stroke: String,
}

pub const DEFAULT_MAP_FILL: &str = "#eeeeee";
pub const DEFAULT_MAP_STROKE: &str = "#999999";

impl GeoLayer {
    /// Rejects rings with fewer than 4 points or first != last.
    pub fn new(features: Vec<GeoFeature>) -> Result<Self, GeoError> {
        for f in &features {
            for (ring, points) in f.rings.iter().enumerate() {
                if points.len() < 4 {
                    return Err(GeoError::TooFewPoints {
                        feature: f.id.clone(),
                        ring,
                        points: points.len(),
                    });
                }
                if points.first() != points.last() {
                    return Err(GeoError::UnclosedRing {
                        feature: f.id.clone(),
                        ring,
                    });
                }
            }
        }
        Ok(GeoLayer {
            features,
            fill: String::from(DEFAULT_MAP_FILL),
            stroke: String::from(DEFAULT_MAP_STROKE),
        })
    }

    pub fn features(&self) -> &[GeoFeature] {
        &self.features
    }

    /// Every vertex, projected.
    pub fn projected_points(&self, proj: &Projection) -> Result<Vec<(f64, f64)>, GeoError> {
        let mut out = Vec::new();
        for f in &self.features {
            for ring in &f.rings {
                for &(lon, lat) in ring {
                    out.push(project(proj, lon, lat)?);
                }
            }
        }
        Ok(out)
    }
}

/// Projected outline of one feature, rings as closed subpaths.
#[derive(Clone, Debug, PartialEq)]
pub struct GeoPath {
    pub id: String,
    pub d: String,
}

/// `M p0 L p1 … Z` per ring; the duplicated closing vertex is left to `Z`.
pub fn geo_path(
    layer: &GeoLayer,
    proj: &Projection,
    transform: &GeoTransform,
) -> Result<Vec<GeoPath>, GeoError> {
    let mut out = Vec::with_capacity(layer.features.len());
    for f in &layer.features {
        let mut d = String::new();
        for ring in &f.rings {
            if !d.is_empty() {
                d.push(' ');
            }
            for (i, &(lon, lat)) in ring[..ring.len() - 1].iter().enumerate() {
                let (u, v) = project(proj, lon, lat)?;
                let (x, y) = transform.apply(u, v);
                d.push_str(if i == 0 { "M " } else { " L " });
                Fixed::from_f64(x).push_to(&mut d);
                d.push(' ');
                Fixed::from_f64(y).push_to(&mut d);
            }
            d.push_str(" Z");
        }
        out.push(GeoPath {
            id: f.id.clone(),
            d,
        });
    }
    Ok(out)
}
