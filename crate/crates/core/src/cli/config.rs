use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::CliError;
use crate::families::CurveFamily;
use crate::geometry::{PlanarPolygon, Point2};
use crate::metric::{MetricContext, ThetaScheme, Truncation, DEFAULT_FILLER, DEFAULT_RATIO};
use crate::plane::{DirectionScheme, PlaneContext};
use crate::polygon::ConvexPolygon;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    #[default]
    Disc,
    Plane,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SchemeConfig {
    pub r: f64,
    pub filler_count: usize,
    pub seed: u64,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        Self {
            r: DEFAULT_RATIO,
            filler_count: DEFAULT_FILLER,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifyConfig {
    /// Random triples for the axiom, additivity and uniqueness checks.
    pub samples: usize,
    /// Random draws per family axiom.
    pub family_samples: usize,
    pub topology_center: Option<[f64; 2]>,
    pub topology_radii: Vec<f64>,
    /// Side approached by the ray checks.
    pub side: usize,
    pub ray_origin: Option<[f64; 2]>,
    pub ray_steps: Vec<f64>,
    pub parallel_targets: [f64; 2],
    pub parallel_steps: Vec<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            samples: 200,
            family_samples: 1000,
            topology_center: None,
            topology_radii: vec![0.1, 0.01, 0.001],
            side: 0,
            ray_origin: None,
            ray_steps: vec![1e-4, 1e-5, 1e-6, 1e-7, 1e-8],
            parallel_targets: [0.3, 0.7],
            parallel_steps: decades(2, 8),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CompareConfig {
    pub side: usize,
    /// Side parameters of the two targets of the parallel rays in `(P, d)`.
    pub targets: [f64; 2],
    pub steps: Vec<f64>,
    /// Boundary angles of the two Hilbert rays in the disc.
    pub disc_targets: [f64; 2],
    pub disc_direction: [f64; 2],
    pub half_log: bool,
    /// Half-width of the square searched for a second geodesic.
    pub square_half_width: f64,
    pub witness_points: [[f64; 2]; 2],
    pub grid: usize,
}

impl Default for CompareConfig {
    fn default() -> Self {
        Self {
            side: 0,
            targets: [0.3, 0.7],
            steps: decades(2, 8),
            disc_targets: [-0.2, 0.2],
            disc_direction: [1.0, 0.0],
            half_log: true,
            square_half_width: 0.5,
            witness_points: [[-0.25, -0.2], [0.25, 0.2]],
            grid: 400,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PlotConfig {
    /// Boundary angles (disc) or directions (plane) whose supports are drawn.
    pub thetas: Vec<f64>,
    /// Pairs of points whose connecting geodesic is drawn.
    pub geodesics: Vec<[[f64; 2]; 2]>,
    /// Polyline resolution for curved segments.
    pub resolution: usize,
}

impl Default for PlotConfig {
    fn default() -> Self {
        Self {
            thetas: vec![0.0],
            geodesics: Vec::new(),
            resolution: 64,
        }
    }
}

fn decades(from: i32, to: i32) -> Vec<f64> {
    (from..=to).map(|k| 10f64.powi(-k)).collect()
}

/// A run configuration; one JSON file per invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub space: Space,
    /// Disc space only; defaults to chords.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<CurveFamily>,
    pub polygon: Vec<[f64; 2]>,
    #[serde(default)]
    pub scheme: SchemeConfig,
    #[serde(default)]
    pub truncation: Truncation,
    #[serde(default)]
    pub verify: VerifyConfig,
    #[serde(default)]
    pub compare: CompareConfig,
    #[serde(default)]
    pub plot: PlotConfig,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let config: Self =
            serde_json::from_str(text).map_err(|e| CliError::config(format!("config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.space == Space::Plane && self.family.is_some() {
            return Err(CliError::config("`family` applies to the disc space only"));
        }
        crate::metric::check_ratio(self.scheme.r).map_err(CliError::config)?;
        self.truncation.validate().map_err(CliError::config)?;
        Ok(())
    }

    pub fn family(&self) -> CurveFamily {
        self.family.unwrap_or(CurveFamily::Chords)
    }

    /// Hex SHA-256 of the canonical serialization, defaults included.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("config serializes");
        Sha256::digest(&canonical)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    pub fn disc_polygon(&self) -> Result<ConvexPolygon, CliError> {
        if self.space != Space::Disc {
            return Err(CliError::config("this command needs `space: \"disc\"`"));
        }
        ConvexPolygon::from_coords(self.family(), &self.polygon).map_err(CliError::config)
    }

    pub fn disc_context(&self) -> Result<MetricContext, CliError> {
        let polygon = self.disc_polygon()?;
        let scheme = ThetaScheme::for_polygon(&polygon, self.scheme.filler_count, self.scheme.r)
            .map_err(CliError::config)?;
        MetricContext::new(polygon, scheme, self.truncation).map_err(CliError::config)
    }

    pub fn planar_polygon(&self) -> Result<PlanarPolygon, CliError> {
        PlanarPolygon::new(self.polygon.iter().map(|&p| Point2::from(p)).collect())
            .map_err(CliError::config)
    }

    pub fn plane_context(&self) -> Result<PlaneContext, CliError> {
        if self.space != Space::Plane {
            return Err(CliError::config("this command needs `space: \"plane\"`"));
        }
        let polygon = self.planar_polygon()?;
        let scheme = DirectionScheme::for_polygon(&polygon, self.scheme.filler_count, self.scheme.r)
            .map_err(CliError::config)?;
        PlaneContext::new(polygon, scheme, self.truncation).map_err(CliError::config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = r#"{"polygon": [[0.5,-0.5],[0.5,0.5],[-0.5,0.5],[-0.5,-0.5]]}"#;

    #[test]
    fn defaults_fill_in() {
        let c = RunConfig::from_json(SQUARE).unwrap();
        assert_eq!(c.space, Space::Disc);
        assert_eq!(c.family(), CurveFamily::Chords);
        assert_eq!(c.scheme.r, 0.9);
        assert_eq!(c.scheme.filler_count, 512);
        assert_eq!(c.truncation.max_terms, 4096);
        assert_eq!(c.truncation.tail_tol, 1e-9);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let bad = r#"{"polygon": [[0.5,-0.5],[0.5,0.5],[-0.5,0.5]], "colour": 1}"#;
        assert_eq!(RunConfig::from_json(bad).unwrap_err().code, super::super::EXIT_CONFIG);
        let nested = r#"{"polygon": [[0.5,-0.5],[0.5,0.5],[-0.5,0.5]], "scheme": {"ratio": 0.5}}"#;
        assert!(RunConfig::from_json(nested).is_err());
        let plane_family = r#"{"space": "plane", "family": "chords", "polygon": [[0,0],[1,0],[0,1]]}"#;
        assert!(RunConfig::from_json(plane_family).is_err());
        let ratio = r#"{"polygon": [[0.5,-0.5],[0.5,0.5],[-0.5,0.5]], "scheme": {"r": 1.5}}"#;
        assert!(RunConfig::from_json(ratio).is_err());
    }

    #[test]
    fn hash_tracks_effective_values() {
        let a = RunConfig::from_json(SQUARE).unwrap();
        let explicit = r#"{"polygon": [[0.5,-0.5],[0.5,0.5],[-0.5,0.5],[-0.5,-0.5]], "scheme": {"r": 0.9}}"#;
        let b = RunConfig::from_json(explicit).unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
        let other = r#"{"polygon": [[0.5,-0.5],[0.5,0.5],[-0.5,0.5],[-0.5,-0.5]], "scheme": {"r": 0.5}}"#;
        assert_ne!(a.hash(), RunConfig::from_json(other).unwrap().hash());
    }
}
