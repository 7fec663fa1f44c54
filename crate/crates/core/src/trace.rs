//! Canonical trace ingestion.
//!
//! The canonical animation input is a JSON file holding per-object,
//! per-frame affine matrices plus the static object inventory:
//!
//! ```json
//! {
//!   "fps": 60.0,
//!   "num_frames": 120,
//!   "objects": [
//!     {
//!       "id": "sq",
//!       "shape": "square",
//!       "color": "black",
//!       "bbox_local": [0.0, 0.0, 50.0, 50.0],
//!       "frames": [[1, 0, 0, 1, 0, 0], ...]
//!     }
//!   ]
//! }
//! ```
//!
//! `shape` and `color` may be omitted when an SVG scene file is supplied
//! alongside the trace; the SVG then provides object appearance, matched
//! by id. Frame indices are 1-based throughout the engine: `frames[0]`
//! is frame 1.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::color::parse_color;
use crate::geom::{Affine, Bbox};
use crate::jsonfmt::to_canonical_json;
use crate::scene::{ObjectInfo, Scene, ShapeClass};

/// Determinant threshold below which a frame matrix counts as collapsed.
pub const DEGENERATE_DET: f64 = 1e-9;

/// Per-object, per-frame transform matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct AnimationTrace {
    pub fps: f64,
    pub num_frames: usize,
    /// Outer index parallels `Scene::objects`; inner index is frame-1.
    pub frames: Vec<Vec<Affine>>,
}

impl AnimationTrace {
    /// Matrix for `object` at 1-based `frame`.
    pub fn matrix(&self, object: usize, frame: usize) -> &Affine {
        &self.frames[object][frame - 1]
    }
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed trace at {json_path}: {detail}")]
    MalformedTrace { json_path: String, detail: String },
    #[error("object {object:?} has {found} frames, expected {expected}")]
    InconsistentFrameCount {
        object: String,
        expected: usize,
        found: usize,
    },
    #[error("degenerate matrix for object {object:?} at frame {frame}")]
    DegenerateMatrix { object: String, frame: usize },
    #[error("SVG parse error: {0}")]
    SvgParse(String),
    #[error("SVG node #{node_index} has no id attribute")]
    MissingId { node_index: usize },
    #[error("unsupported SVG node <{tag}>")]
    UnsupportedNode { tag: String },
    #[error("unknown color {color:?} for object {object:?}")]
    UnknownColor { object: String, color: String },
    #[error("invalid scene: {0}")]
    InvalidScene(String),
}

#[derive(Serialize, Deserialize)]
struct TraceFile {
    fps: f64,
    num_frames: usize,
    objects: Vec<TraceObject>,
}

#[derive(Serialize, Deserialize)]
struct TraceObject {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    shape: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    color: Option<String>,
    bbox_local: [f64; 4],
    frames: Vec<[f64; 6]>,
}

/// Load a trace whose objects carry their own shape and color.
pub fn load_trace(path: &Path) -> Result<(Scene, AnimationTrace), IngestError> {
    load_inputs(path, None)
}

/// Load a trace, optionally merging appearance from an SVG scene file.
///
/// Object order is preserved from the trace file. When `svg_path` is given,
/// trace-level `shape`/`color` still win over the SVG values for the same
/// object; the trace is the canonical input.
pub fn load_inputs(
    trace_path: &Path,
    svg_path: Option<&Path>,
) -> Result<(Scene, AnimationTrace), IngestError> {
    let text = std::fs::read_to_string(trace_path).map_err(|source| IngestError::Io {
        path: trace_path.display().to_string(),
        source,
    })?;
    let svg_scene = svg_path.map(crate::svg::load_svg_scene).transpose()?;
    parse_trace_str(&text, svg_scene.as_ref())
}

/// Parse trace JSON text. See [`load_inputs`].
pub fn parse_trace_str(
    text: &str,
    svg_scene: Option<&Scene>,
) -> Result<(Scene, AnimationTrace), IngestError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: TraceFile =
        serde_path_to_error::deserialize(de).map_err(|e| IngestError::MalformedTrace {
            json_path: e.path().to_string(),
            detail: e.inner().to_string(),
        })?;

    if !(file.fps.is_finite() && file.fps > 0.0) {
        return Err(IngestError::MalformedTrace {
            json_path: "fps".into(),
            detail: format!("fps must be a positive number, got {}", file.fps),
        });
    }
    if file.num_frames == 0 {
        return Err(IngestError::MalformedTrace {
            json_path: "num_frames".into(),
            detail: "at least one frame required".into(),
        });
    }

    let mut objects = Vec::with_capacity(file.objects.len());
    let mut frames = Vec::with_capacity(file.objects.len());

    for (i, obj) in file.objects.iter().enumerate() {
        if obj.frames.len() != file.num_frames {
            return Err(IngestError::InconsistentFrameCount {
                object: obj.id.clone(),
                expected: file.num_frames,
                found: obj.frames.len(),
            });
        }

        let svg_obj = svg_scene.and_then(|s| s.objects.iter().find(|o| o.id == obj.id));

        let shape = match (&obj.shape, svg_obj) {
            (Some(s), _) => ShapeClass::from_name(s).ok_or_else(|| IngestError::MalformedTrace {
                json_path: format!("objects[{i}].shape"),
                detail: format!("unknown shape class {s:?}"),
            })?,
            (None, Some(svg)) => svg.shape,
            (None, None) => {
                return Err(IngestError::MalformedTrace {
                    json_path: format!("objects[{i}].shape"),
                    detail: "shape missing and no SVG scene supplied".into(),
                })
            }
        };

        let color = match (&obj.color, svg_obj) {
            (Some(c), _) => parse_color(c).map_err(|_| IngestError::UnknownColor {
                object: obj.id.clone(),
                color: c.clone(),
            })?,
            (None, Some(svg)) => svg.color,
            (None, None) => {
                return Err(IngestError::MalformedTrace {
                    json_path: format!("objects[{i}].color"),
                    detail: "color missing and no SVG scene supplied".into(),
                })
            }
        };

        let mut mats = Vec::with_capacity(obj.frames.len());
        for (fi, m) in obj.frames.iter().enumerate() {
            let mat = Affine::from_array(*m);
            if mat.det().abs() <= DEGENERATE_DET {
                return Err(IngestError::DegenerateMatrix {
                    object: obj.id.clone(),
                    frame: fi + 1,
                });
            }
            mats.push(mat);
        }

        let [x, y, w, h] = obj.bbox_local;
        objects.push(ObjectInfo {
            id: obj.id.clone(),
            shape,
            color,
            color_name: color.css_name().map(str::to_string),
            bbox_local: Bbox::from_xywh(x, y, w, h),
        });
        frames.push(mats);
    }

    let scene = Scene { objects };
    scene.validate().map_err(IngestError::InvalidScene)?;

    Ok((
        scene,
        AnimationTrace {
            fps: file.fps,
            num_frames: file.num_frames,
            frames,
        },
    ))
}

/// Serialize a scene + trace back to canonical JSON (6-decimal floats,
/// stable key order). Loading and re-serializing a canonical file is
/// byte-stable.
pub fn write_trace_json(scene: &Scene, trace: &AnimationTrace) -> Vec<u8> {
    let objects = scene
        .objects
        .iter()
        .zip(trace.frames.iter())
        .map(|(obj, mats)| TraceObject {
            id: obj.id.clone(),
            shape: Some(obj.shape.name().to_string()),
            color: Some(obj.color.to_string()),
            bbox_local: [
                obj.bbox_local.xmin,
                obj.bbox_local.ymin,
                obj.bbox_local.width(),
                obj.bbox_local.height(),
            ],
            frames: mats.iter().map(|m| m.to_array()).collect(),
        })
        .collect();
    let file = TraceFile {
        fps: trace.fps,
        num_frames: trace.num_frames,
        objects,
    };
    to_canonical_json(&file).expect("trace serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity_trace_json(ids: &[&str], n: usize) -> String {
        let frames: Vec<[f64; 6]> = (0..n).map(|_| [1.0, 0.0, 0.0, 1.0, 0.0, 0.0]).collect();
        let objects: Vec<serde_json::Value> = ids
            .iter()
            .map(|id| {
                serde_json::json!({
                    "id": id,
                    "shape": "square",
                    "color": "black",
                    "bbox_local": [0.0, 0.0, 50.0, 50.0],
                    "frames": frames,
                })
            })
            .collect();
        serde_json::json!({"fps": 60.0, "num_frames": n, "objects": objects}).to_string()
    }

    #[test]
    fn identity_trace_loads() {
        let (scene, trace) = parse_trace_str(&identity_trace_json(&["a", "b"], 120), None).unwrap();
        assert_eq!(scene.len(), 2);
        assert_eq!(trace.num_frames, 120);
        assert_eq!(trace.fps, 60.0);
        assert_eq!(*trace.matrix(0, 1), Affine::IDENTITY);
    }

    #[test]
    fn inconsistent_frame_count_is_rejected() {
        let mut v: serde_json::Value =
            serde_json::from_str(&identity_trace_json(&["sq", "ci"], 120)).unwrap();
        v["objects"][0]["frames"]
            .as_array_mut()
            .unwrap()
            .pop();
        let err = parse_trace_str(&v.to_string(), None).unwrap_err();
        match err {
            IngestError::InconsistentFrameCount {
                object,
                expected,
                found,
            } => {
                assert_eq!(object, "sq");
                assert_eq!(expected, 120);
                assert_eq!(found, 119);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn degenerate_matrix_is_rejected_with_location() {
        let mut v: serde_json::Value =
            serde_json::from_str(&identity_trace_json(&["sq"], 3)).unwrap();
        v["objects"][0]["frames"][1] = serde_json::json!([1.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        match parse_trace_str(&v.to_string(), None).unwrap_err() {
            IngestError::DegenerateMatrix { object, frame } => {
                assert_eq!(object, "sq");
                assert_eq!(frame, 2);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn schema_violations_carry_json_path() {
        let err = parse_trace_str(r#"{"fps": 60.0, "num_frames": 1, "objects": [{"id": "a"}]}"#, None)
            .unwrap_err();
        match err {
            IngestError::MalformedTrace { json_path, .. } => {
                assert!(json_path.contains("objects[0]"), "path was {json_path}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn missing_appearance_without_svg_is_rejected() {
        let mut v: serde_json::Value =
            serde_json::from_str(&identity_trace_json(&["a"], 1)).unwrap();
        v["objects"][0].as_object_mut().unwrap().remove("shape");
        match parse_trace_str(&v.to_string(), None).unwrap_err() {
            IngestError::MalformedTrace { json_path, .. } => {
                assert_eq!(json_path, "objects[0].shape");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn reserialization_is_byte_stable() {
        let (scene, trace) = parse_trace_str(&identity_trace_json(&["a", "b"], 4), None).unwrap();
        let bytes1 = write_trace_json(&scene, &trace);
        let (scene2, trace2) = parse_trace_str(std::str::from_utf8(&bytes1).unwrap(), None).unwrap();
        let bytes2 = write_trace_json(&scene2, &trace2);
        assert_eq!(bytes1, bytes2);
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let err = parse_trace_str(&identity_trace_json(&["a", "a"], 2), None).unwrap_err();
        assert!(matches!(err, IngestError::InvalidScene(_)));
    }
}
