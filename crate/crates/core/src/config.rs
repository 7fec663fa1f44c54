//! Engine tolerances, loadable from a TOML or JSON config file.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// All numeric tolerances used by the engine.
///
/// The channel-activity thresholds (`t_eps`, `r_eps`, `s_eps`) sit an order
/// of magnitude below typical eased motion rates at 60 fps, so slow frames
/// at the ends of an eased motion still register as active.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Translation activity threshold, px per frame.
    pub t_eps: f64,
    /// Rotation activity threshold, degrees per frame.
    pub r_eps: f64,
    /// Scale activity threshold, per-frame ratio deviation from 1.
    pub s_eps: f64,
    /// Angular tolerance for direction matching, degrees.
    pub dir_tol: f64,
    /// Relative tolerance for magnitude matching.
    pub mag_tol_rel: f64,
    /// Absolute magnitude floor for translations, px.
    pub mag_floor_px: f64,
    /// Absolute magnitude floor for rotations, degrees.
    pub mag_floor_deg: f64,
    /// Absolute magnitude floor for scale ratios.
    pub mag_floor_ratio: f64,
    /// Distance tolerance for origin matching, px.
    pub origin_tol: f64,
    /// Spatial contact/equality tolerance, px.
    pub tau_space: f64,
    /// Relative tolerance for duration matching (absolute floor is one
    /// frame at the trace fps).
    pub dur_tol_rel: f64,
    /// Per-channel color comparison tolerance, 0-255.
    pub color_tol: u8,
    /// Origin samples further than this from the segment mean mark the
    /// segment origin-unstable, px.
    pub origin_spread: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            t_eps: 0.1,
            r_eps: 0.05,
            s_eps: 0.002,
            dir_tol: 15.0,
            mag_tol_rel: 0.02,
            mag_floor_px: 1.0,
            mag_floor_deg: 1.0,
            mag_floor_ratio: 0.02,
            origin_tol: 5.0,
            tau_space: 2.0,
            dur_tol_rel: 0.02,
            color_tol: 0,
            origin_spread: 5.0,
        }
    }
}

impl Tolerances {
    /// Magnitude tolerance for a translation target, px.
    pub fn mag_tol_px(&self, target: f64) -> f64 {
        self.mag_floor_px.max(self.mag_tol_rel * target.abs())
    }

    /// Magnitude tolerance for a rotation target, degrees.
    pub fn mag_tol_deg(&self, target: f64) -> f64 {
        self.mag_floor_deg.max(self.mag_tol_rel * target.abs())
    }

    /// Magnitude tolerance for a scale-ratio target.
    pub fn mag_tol_ratio(&self, target: f64) -> f64 {
        self.mag_floor_ratio.max(self.mag_tol_rel * target.abs())
    }

    /// Duration tolerance for a target in seconds at the given fps.
    pub fn dur_tol(&self, target: f64, fps: f64) -> f64 {
        (1.0 / fps).max(self.dur_tol_rel * target.abs())
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid config {path}: {detail}")]
    Parse { path: String, detail: String },
}

/// Load tolerances from a `.toml` or `.json` file.
pub fn load_tolerances(path: &Path) -> Result<Tolerances, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let is_json = path
        .extension()
        .map(|e| e.eq_ignore_ascii_case("json"))
        .unwrap_or(false);
    if is_json {
        serde_json::from_str(&text).map_err(|e| ConfigError::Parse {
            path: path.display().to_string(),
            detail: e.to_string(),
        })
    } else {
        toml::from_str(&text).map_err(|e| ConfigError::Parse {
            path: path.display().to_string(),
            detail: e.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_roundtrip_with_partial_override() {
        let toml_src = "t_eps = 0.5\ntau_space = 4.0\n";
        let t: Tolerances = toml::from_str(toml_src).unwrap();
        assert_eq!(t.t_eps, 0.5);
        assert_eq!(t.tau_space, 4.0);
        assert_eq!(t.dir_tol, Tolerances::default().dir_tol);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<Tolerances>("t_epz = 0.5\n").is_err());
    }

    #[test]
    fn duration_tolerance_has_frame_floor() {
        let t = Tolerances::default();
        assert_eq!(t.dur_tol(0.1, 60.0), 1.0 / 60.0);
        assert_eq!(t.dur_tol(10.0, 60.0), 0.2);
    }
}
