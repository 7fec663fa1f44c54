//! Static SVG scene parsing.
//!
//! Animated objects must be direct children of the SVG root (or of one
//! wrapper `<g>` layer when that is the root's only element child), each
//! carrying an `id` attribute. Shape classification follows the node tag:
//!
//! * `circle`; `ellipse` with `rx ≈ ry` (within 1%) also classifies as circle
//! * `rect` with near-equal sides (within 1%) is a square, else rectangle
//! * `polygon` with three points is a triangle, other polygons classify as path
//! * `text` and `path` classify as letter
//! * `g` is a group, `image` an image
//!
//! Bounding boxes come from geometry attributes; path boxes from the
//! vertex/control-point extent of the `d` attribute.

use std::path::Path;

use crate::color::{parse_color, Rgb};
use crate::geom::Bbox;
use crate::scene::{ObjectInfo, Scene, ShapeClass};
use crate::trace::IngestError;

/// Relative tolerance for square-vs-rectangle and circle-vs-ellipse
/// classification.
const CLASSIFY_REL_TOL: f64 = 0.01;

pub fn load_svg_scene(path: impl AsRef<Path>) -> Result<Scene, IngestError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_svg_str(&text)
}

pub fn parse_svg_str(text: &str) -> Result<Scene, IngestError> {
    let doc = roxmltree::Document::parse(text)
        .map_err(|e| IngestError::SvgParse(e.to_string()))?;
    let root = doc.root_element();
    if root.tag_name().name() != "svg" {
        return Err(IngestError::SvgParse(format!(
            "root element is <{}>, expected <svg>",
            root.tag_name().name()
        )));
    }

    let mut children: Vec<roxmltree::Node> = root
        .children()
        .filter(|n| n.is_element() && !is_metadata(n.tag_name().name()))
        .collect();

    // A single un-identified <g> child is a wrapper layer, not an object.
    if children.len() == 1
        && children[0].tag_name().name() == "g"
        && children[0].attribute("id").is_none()
    {
        children = children[0]
            .children()
            .filter(|n| n.is_element() && !is_metadata(n.tag_name().name()))
            .collect();
    }

    let mut objects = Vec::new();
    for (index, node) in children.iter().enumerate() {
        let id = node
            .attribute("id")
            .ok_or(IngestError::MissingId { node_index: index })?
            .to_string();
        let (shape, bbox) = classify_node(node)?;
        let color = fill_color(node, &id)?;
        objects.push(ObjectInfo {
            id,
            shape,
            color,
            color_name: color.css_name().map(str::to_string),
            bbox_local: bbox,
        });
    }

    let scene = Scene { objects };
    scene.validate().map_err(IngestError::InvalidScene)?;
    Ok(scene)
}

fn is_metadata(tag: &str) -> bool {
    matches!(tag, "defs" | "title" | "desc" | "metadata" | "style")
}

fn attr_f64(node: &roxmltree::Node, name: &str, default: f64) -> Result<f64, IngestError> {
    match node.attribute(name) {
        None => Ok(default),
        Some(v) => v.trim().parse::<f64>().map_err(|_| {
            IngestError::SvgParse(format!("attribute {name}={v:?} is not a number"))
        }),
    }
}

fn classify_node(node: &roxmltree::Node) -> Result<(ShapeClass, Bbox), IngestError> {
    let tag = node.tag_name().name();
    match tag {
        "rect" => {
            let x = attr_f64(node, "x", 0.0)?;
            let y = attr_f64(node, "y", 0.0)?;
            let w = attr_f64(node, "width", 0.0)?;
            let h = attr_f64(node, "height", 0.0)?;
            let shape = if (w - h).abs() / w.max(h).max(f64::MIN_POSITIVE) <= CLASSIFY_REL_TOL {
                ShapeClass::Square
            } else {
                ShapeClass::Rectangle
            };
            Ok((shape, Bbox::from_xywh(x, y, w, h)))
        }
        "circle" => {
            let cx = attr_f64(node, "cx", 0.0)?;
            let cy = attr_f64(node, "cy", 0.0)?;
            let r = attr_f64(node, "r", 0.0)?;
            Ok((
                ShapeClass::Circle,
                Bbox::from_xywh(cx - r, cy - r, 2.0 * r, 2.0 * r),
            ))
        }
        "ellipse" => {
            let cx = attr_f64(node, "cx", 0.0)?;
            let cy = attr_f64(node, "cy", 0.0)?;
            let rx = attr_f64(node, "rx", 0.0)?;
            let ry = attr_f64(node, "ry", 0.0)?;
            let shape = if (rx - ry).abs() / rx.max(ry).max(f64::MIN_POSITIVE) <= CLASSIFY_REL_TOL {
                ShapeClass::Circle
            } else {
                ShapeClass::Ellipse
            };
            Ok((
                shape,
                Bbox::from_xywh(cx - rx, cy - ry, 2.0 * rx, 2.0 * ry),
            ))
        }
        "polygon" => {
            let pts = node.attribute("points").unwrap_or("");
            let coords = parse_number_list(pts);
            if coords.len() < 6 || coords.len() % 2 != 0 {
                return Err(IngestError::SvgParse(format!(
                    "polygon points {pts:?} do not form at least three vertices"
                )));
            }
            let points: Vec<(f64, f64)> =
                coords.chunks(2).map(|c| (c[0], c[1])).collect();
            let shape = if points.len() == 3 {
                ShapeClass::Triangle
            } else {
                ShapeClass::Path
            };
            let bbox = Bbox::from_points(points).expect("non-empty point list");
            Ok((shape, bbox))
        }
        "path" => {
            let d = node.attribute("d").unwrap_or("");
            let bbox = path_extent(d)
                .ok_or_else(|| IngestError::SvgParse(format!("path d={d:?} has no coordinates")))?;
            Ok((ShapeClass::Letter, bbox))
        }
        "text" => {
            // No font metrics available; approximate an em box from the
            // x/y anchor and font-size.
            let x = attr_f64(node, "x", 0.0)?;
            let y = attr_f64(node, "y", 0.0)?;
            let fs = attr_f64(node, "font-size", 16.0)?;
            let chars = node.text().map(|t| t.trim().chars().count()).unwrap_or(1);
            let w = 0.6 * fs * chars.max(1) as f64;
            Ok((ShapeClass::Letter, Bbox::from_xywh(x, y - 0.8 * fs, w, fs)))
        }
        "g" => {
            let mut bbox: Option<Bbox> = None;
            for child in node.children().filter(|n| n.is_element()) {
                let (_, child_box) = classify_node(&child)?;
                bbox = Some(match bbox {
                    Some(b) => b.union(&child_box),
                    None => child_box,
                });
            }
            let bbox = bbox.ok_or_else(|| {
                IngestError::SvgParse("empty <g> has no bounding box".to_string())
            })?;
            Ok((ShapeClass::Group, bbox))
        }
        "image" => {
            let x = attr_f64(node, "x", 0.0)?;
            let y = attr_f64(node, "y", 0.0)?;
            let w = attr_f64(node, "width", 0.0)?;
            let h = attr_f64(node, "height", 0.0)?;
            Ok((ShapeClass::Image, Bbox::from_xywh(x, y, w, h)))
        }
        other => Err(IngestError::UnsupportedNode {
            tag: other.to_string(),
        }),
    }
}

/// Whitespace/comma separated number list, as used by polygon points.
fn parse_number_list(s: &str) -> Vec<f64> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .filter_map(|t| t.parse().ok())
        .collect()
}

fn fill_color(node: &roxmltree::Node, id: &str) -> Result<Rgb, IngestError> {
    // SVG default fill is black.
    let fill = node.attribute("fill").unwrap_or("black");
    parse_color(fill).map_err(|_| IngestError::UnknownColor {
        object: id.to_string(),
        color: fill.to_string(),
    })
}

/// Extent of every vertex and control point in an SVG path `d` attribute.
///
/// This is the control-polygon hull, not the exact curve bbox; downstream
/// spatial tolerances absorb the difference.
pub fn path_extent(d: &str) -> Option<Bbox> {
    let mut points: Vec<(f64, f64)> = Vec::new();
    let mut cur = (0.0, 0.0);
    let mut subpath_start = (0.0, 0.0);
    let mut cmd = b' ';
    let mut nums = PathNumbers::new(d);

    while let Some(next) = nums.next_token() {
        match next {
            PathToken::Command(c) => {
                cmd = c;
                if c == b'Z' || c == b'z' {
                    cur = subpath_start;
                }
                continue;
            }
            PathToken::Number(first) => {
                // Implicit command repetition: a number where a command is
                // expected repeats the previous command (M becomes L).
                let rel = cmd.is_ascii_lowercase();
                let take = |nums: &mut PathNumbers| nums.next_number();
                let point = |x: f64, y: f64, cur: &(f64, f64)| {
                    if rel {
                        (cur.0 + x, cur.1 + y)
                    } else {
                        (x, y)
                    }
                };
                match cmd.to_ascii_uppercase() {
                    b'M' => {
                        let y = take(&mut nums)?;
                        cur = point(first, y, &cur);
                        subpath_start = cur;
                        points.push(cur);
                        // Subsequent pairs are implicit line-tos.
                        cmd = if rel { b'l' } else { b'L' };
                    }
                    b'L' | b'T' => {
                        let y = take(&mut nums)?;
                        cur = point(first, y, &cur);
                        points.push(cur);
                    }
                    b'H' => {
                        cur = if rel { (cur.0 + first, cur.1) } else { (first, cur.1) };
                        points.push(cur);
                    }
                    b'V' => {
                        cur = if rel { (cur.0, cur.1 + first) } else { (cur.0, first) };
                        points.push(cur);
                    }
                    b'C' => {
                        let c1y = take(&mut nums)?;
                        let c2x = take(&mut nums)?;
                        let c2y = take(&mut nums)?;
                        let ex = take(&mut nums)?;
                        let ey = take(&mut nums)?;
                        points.push(point(first, c1y, &cur));
                        points.push(point(c2x, c2y, &cur));
                        cur = point(ex, ey, &cur);
                        points.push(cur);
                    }
                    b'S' | b'Q' => {
                        let c1y = take(&mut nums)?;
                        let ex = take(&mut nums)?;
                        let ey = take(&mut nums)?;
                        points.push(point(first, c1y, &cur));
                        cur = point(ex, ey, &cur);
                        points.push(cur);
                    }
                    b'A' => {
                        // rx ry x-rot large-arc sweep x y; only the endpoint
                        // contributes to the extent.
                        let _ry = take(&mut nums)?;
                        let _rot = take(&mut nums)?;
                        let _large = take(&mut nums)?;
                        let _sweep = take(&mut nums)?;
                        let ex = take(&mut nums)?;
                        let ey = take(&mut nums)?;
                        cur = point(ex, ey, &cur);
                        points.push(cur);
                    }
                    _ => return None,
                }
            }
        }
    }
    Bbox::from_points(points)
}

enum PathToken {
    Command(u8),
    Number(f64),
}

struct PathNumbers<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> PathNumbers<'a> {
    fn new(s: &'a str) -> Self {
        PathNumbers {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_separators(&mut self) {
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_whitespace() || self.bytes[self.pos] == b',')
        {
            self.pos += 1;
        }
    }

    fn next_token(&mut self) -> Option<PathToken> {
        self.skip_separators();
        let b = *self.bytes.get(self.pos)?;
        if b.is_ascii_alphabetic() {
            self.pos += 1;
            Some(PathToken::Command(b))
        } else {
            self.next_number().map(PathToken::Number)
        }
    }

    fn next_number(&mut self) -> Option<f64> {
        self.skip_separators();
        let start = self.pos;
        let bytes = self.bytes;
        let mut pos = self.pos;
        if pos < bytes.len() && (bytes[pos] == b'-' || bytes[pos] == b'+') {
            pos += 1;
        }
        let mut seen_digit = false;
        let mut seen_dot = false;
        while pos < bytes.len() {
            match bytes[pos] {
                b'0'..=b'9' => {
                    seen_digit = true;
                    pos += 1;
                }
                b'.' if !seen_dot => {
                    seen_dot = true;
                    pos += 1;
                }
                b'e' | b'E' if seen_digit => {
                    pos += 1;
                    if pos < bytes.len() && (bytes[pos] == b'-' || bytes[pos] == b'+') {
                        pos += 1;
                    }
                }
                _ => break,
            }
        }
        if !seen_digit {
            return None;
        }
        self.pos = pos;
        std::str::from_utf8(&bytes[start..pos])
            .ok()?
            .parse()
            .ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rect_classifies_square_and_parses_hex_fill() {
        let scene = parse_svg_str(
            r##"<svg><rect id="s1" width="50" height="50" fill="#000"/></svg>"##,
        )
        .unwrap();
        assert_eq!(scene.objects[0].shape, ShapeClass::Square);
        assert_eq!(scene.objects[0].color, Rgb::new(0, 0, 0));
        assert_eq!(scene.objects[0].bbox_local, Bbox::from_xywh(0.0, 0.0, 50.0, 50.0));
    }

    #[test]
    fn named_fill_keeps_canonical_name() {
        let scene =
            parse_svg_str(r#"<svg><circle id="c" cx="5" cy="5" r="20" fill="orange"/></svg>"#)
                .unwrap();
        let obj = &scene.objects[0];
        assert_eq!(obj.shape, ShapeClass::Circle);
        assert_eq!(obj.color, Rgb::new(255, 165, 0));
        assert_eq!(obj.color_name.as_deref(), Some("orange"));
    }

    #[test]
    fn ellipse_with_unequal_radii_stays_ellipse() {
        let scene =
            parse_svg_str(r#"<svg><ellipse id="e" rx="20" ry="30" fill="red"/></svg>"#).unwrap();
        assert_eq!(scene.objects[0].shape, ShapeClass::Ellipse);
        let near = parse_svg_str(r#"<svg><ellipse id="e" rx="20" ry="20.1" fill="red"/></svg>"#)
            .unwrap();
        assert_eq!(near.objects[0].shape, ShapeClass::Circle);
    }

    #[test]
    fn triangle_and_letter_rules() {
        let scene = parse_svg_str(
            r#"<svg>
                 <polygon id="t" points="0,0 10,0 5,8" fill="green"/>
                 <path id="H" d="M0 0 L0 70 M0 35 L40 35 M40 0 L40 70" fill="black"/>
               </svg>"#,
        )
        .unwrap();
        assert_eq!(scene.objects[0].shape, ShapeClass::Triangle);
        assert_eq!(scene.objects[1].shape, ShapeClass::Letter);
        assert_eq!(scene.objects[1].bbox_local, Bbox::from_xywh(0.0, 0.0, 40.0, 70.0));
    }

    #[test]
    fn missing_id_and_unsupported_tag_error() {
        match parse_svg_str(r#"<svg><rect width="5" height="5"/></svg>"#).unwrap_err() {
            IngestError::MissingId { node_index } => assert_eq!(node_index, 0),
            other => panic!("unexpected {other:?}"),
        }
        match parse_svg_str(r#"<svg><line id="l" x1="0" y1="0" x2="5" y2="5"/></svg>"#)
            .unwrap_err()
        {
            IngestError::UnsupportedNode { tag } => assert_eq!(tag, "line"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn wrapper_group_layer_is_descended() {
        let scene = parse_svg_str(
            r#"<svg><g><rect id="a" width="4" height="9" fill="blue"/></g></svg>"#,
        )
        .unwrap();
        assert_eq!(scene.objects.len(), 1);
        assert_eq!(scene.objects[0].shape, ShapeClass::Rectangle);
    }

    #[test]
    fn path_extent_handles_relative_and_curves() {
        // m 10 10, relative line +20+0, cubic with controls up to (50, 40)
        let bb = path_extent("m10 10 l20 0 c5 5 15 30 20 5").unwrap();
        assert_eq!(bb.xmin, 10.0);
        assert_eq!(bb.ymin, 10.0);
        assert_eq!(bb.xmax, 50.0);
        assert_eq!(bb.ymax, 40.0);
    }

    #[test]
    fn classification_is_deterministic() {
        let src = r#"<svg><rect id="r" width="30" height="60" fill="teal"/></svg>"#;
        let a = parse_svg_str(src).unwrap();
        let b = parse_svg_str(src).unwrap();
        assert_eq!(a, b);
    }
}
