//! Static scene description: object identity, shape class, color, and
//! local bounding box.

use serde::{Deserialize, Serialize};

use crate::color::Rgb;
use crate::geom::Bbox;

/// Shape classification of a scene object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeClass {
    Circle,
    Square,
    Rectangle,
    Triangle,
    Ellipse,
    Path,
    Letter,
    Group,
    Image,
}

impl ShapeClass {
    pub fn name(&self) -> &'static str {
        match self {
            ShapeClass::Circle => "circle",
            ShapeClass::Square => "square",
            ShapeClass::Rectangle => "rectangle",
            ShapeClass::Triangle => "triangle",
            ShapeClass::Ellipse => "ellipse",
            ShapeClass::Path => "path",
            ShapeClass::Letter => "letter",
            ShapeClass::Group => "group",
            ShapeClass::Image => "image",
        }
    }

    pub fn from_name(s: &str) -> Option<ShapeClass> {
        Some(match s {
            "circle" => ShapeClass::Circle,
            "square" => ShapeClass::Square,
            "rectangle" => ShapeClass::Rectangle,
            "triangle" => ShapeClass::Triangle,
            "ellipse" => ShapeClass::Ellipse,
            "path" => ShapeClass::Path,
            "letter" => ShapeClass::Letter,
            "group" => ShapeClass::Group,
            "image" => ShapeClass::Image,
            _ => return None,
        })
    }
}

impl std::fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One animated object in the scene.
#[derive(Clone, Debug, PartialEq)]
pub struct ObjectInfo {
    pub id: String,
    pub shape: ShapeClass,
    pub color: Rgb,
    /// Canonical CSS keyword for `color`, when one exists.
    pub color_name: Option<String>,
    /// Local bounding box in SVG user units, y-down.
    pub bbox_local: Bbox,
}

/// The static object inventory, in SVG document order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Scene {
    pub objects: Vec<ObjectInfo>,
}

impl Scene {
    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.objects.iter().position(|o| o.id == id)
    }

    pub fn ids(&self) -> Vec<String> {
        self.objects.iter().map(|o| o.id.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Checks the scene invariants: unique non-empty ids and finite,
    /// non-degenerate local boxes (zero width and height together are
    /// forbidden).
    pub fn validate(&self) -> Result<(), String> {
        let mut seen = std::collections::BTreeSet::new();
        for obj in &self.objects {
            if obj.id.is_empty() {
                return Err("object with empty id".to_string());
            }
            if !seen.insert(obj.id.clone()) {
                return Err(format!("duplicate object id {:?}", obj.id));
            }
            let bb = &obj.bbox_local;
            let finite =
                bb.xmin.is_finite() && bb.ymin.is_finite() && bb.xmax.is_finite() && bb.ymax.is_finite();
            if !finite {
                return Err(format!("object {:?} has a non-finite bbox", obj.id));
            }
            if bb.width() < 0.0 || bb.height() < 0.0 {
                return Err(format!("object {:?} has a negative-extent bbox", obj.id));
            }
            if bb.width() == 0.0 && bb.height() == 0.0 {
                return Err(format!("object {:?} has a degenerate (point) bbox", obj.id));
            }
        }
        Ok(())
    }
}
