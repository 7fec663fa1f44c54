//! 2D affine transforms and axis-aligned boxes in SVG screen coordinates
//! (x grows right, y grows down).

use serde::{Deserialize, Serialize};

/// A 2D affine transform `[a b c d e f]` in SVG convention:
/// `x' = a*x + c*y + e`, `y' = b*x + d*y + f`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Affine {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl Affine {
    pub const IDENTITY: Affine = Affine {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
        e: 0.0,
        f: 0.0,
    };

    pub fn from_array(m: [f64; 6]) -> Self {
        Affine {
            a: m[0],
            b: m[1],
            c: m[2],
            d: m[3],
            e: m[4],
            f: m[5],
        }
    }

    pub fn to_array(self) -> [f64; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    pub fn translate(tx: f64, ty: f64) -> Self {
        Affine {
            e: tx,
            f: ty,
            ..Affine::IDENTITY
        }
    }

    /// Rotation by `deg` degrees. Positive angles turn clockwise on screen
    /// because y points down.
    pub fn rotate_deg(deg: f64) -> Self {
        let r = deg.to_radians();
        let (s, c) = r.sin_cos();
        Affine {
            a: c,
            b: s,
            c: -s,
            d: c,
            e: 0.0,
            f: 0.0,
        }
    }

    pub fn scale(sx: f64, sy: f64) -> Self {
        Affine {
            a: sx,
            d: sy,
            ..Affine::IDENTITY
        }
    }

    /// Rotation about a fixed point.
    pub fn rotate_about(deg: f64, px: f64, py: f64) -> Self {
        Affine::translate(px, py)
            .mul(&Affine::rotate_deg(deg))
            .mul(&Affine::translate(-px, -py))
    }

    /// Scale about a fixed point.
    pub fn scale_about(sx: f64, sy: f64, px: f64, py: f64) -> Self {
        Affine::translate(px, py)
            .mul(&Affine::scale(sx, sy))
            .mul(&Affine::translate(-px, -py))
    }

    /// Compose: `self * other` (apply `other` first, then `self`).
    pub fn mul(&self, other: &Affine) -> Affine {
        Affine {
            a: self.a * other.a + self.c * other.b,
            b: self.b * other.a + self.d * other.b,
            c: self.a * other.c + self.c * other.d,
            d: self.b * other.c + self.d * other.d,
            e: self.a * other.e + self.c * other.f + self.e,
            f: self.b * other.e + self.d * other.f + self.f,
        }
    }

    pub fn apply(&self, x: f64, y: f64) -> (f64, f64) {
        (
            self.a * x + self.c * y + self.e,
            self.b * x + self.d * y + self.f,
        )
    }

    /// Determinant of the linear part.
    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn invert(&self) -> Option<Affine> {
        let det = self.det();
        if det.abs() < 1e-12 {
            return None;
        }
        let inv_det = 1.0 / det;
        let a = self.d * inv_det;
        let b = -self.b * inv_det;
        let c = -self.c * inv_det;
        let d = self.a * inv_det;
        Some(Affine {
            a,
            b,
            c,
            d,
            e: -(a * self.e + c * self.f),
            f: -(b * self.e + d * self.f),
        })
    }

    /// Max elementwise absolute difference.
    pub fn max_abs_diff(&self, other: &Affine) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array().iter())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }
}

/// An axis-aligned bounding box in screen coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bbox {
    pub xmin: f64,
    pub ymin: f64,
    pub xmax: f64,
    pub ymax: f64,
}

impl Bbox {
    pub fn from_xywh(x: f64, y: f64, w: f64, h: f64) -> Self {
        Bbox {
            xmin: x,
            ymin: y,
            xmax: x + w,
            ymax: y + h,
        }
    }

    pub fn from_points(points: impl IntoIterator<Item = (f64, f64)>) -> Option<Self> {
        let mut it = points.into_iter();
        let (x0, y0) = it.next()?;
        let mut bb = Bbox {
            xmin: x0,
            ymin: y0,
            xmax: x0,
            ymax: y0,
        };
        for (x, y) in it {
            bb.xmin = bb.xmin.min(x);
            bb.ymin = bb.ymin.min(y);
            bb.xmax = bb.xmax.max(x);
            bb.ymax = bb.ymax.max(y);
        }
        Some(bb)
    }

    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }

    pub fn center(&self) -> (f64, f64) {
        (
            (self.xmin + self.xmax) / 2.0,
            (self.ymin + self.ymax) / 2.0,
        )
    }

    pub fn corners(&self) -> [(f64, f64); 4] {
        [
            (self.xmin, self.ymin),
            (self.xmax, self.ymin),
            (self.xmax, self.ymax),
            (self.xmin, self.ymax),
        ]
    }

    pub fn union(&self, other: &Bbox) -> Bbox {
        Bbox {
            xmin: self.xmin.min(other.xmin),
            ymin: self.ymin.min(other.ymin),
            xmax: self.xmax.max(other.xmax),
            ymax: self.ymax.max(other.ymax),
        }
    }

    /// Closed boxes share at least one point.
    pub fn intersects(&self, other: &Bbox) -> bool {
        self.xmin <= other.xmax
            && other.xmin <= self.xmax
            && self.ymin <= other.ymax
            && other.ymin <= self.ymax
    }

    /// Axis-aligned hull of the box transformed by `m`.
    pub fn transform(&self, m: &Affine) -> Bbox {
        Bbox::from_points(self.corners().iter().map(|&(x, y)| m.apply(x, y)))
            .expect("four corners")
    }

    /// Resolve a point given as percentages of this box's extent.
    pub fn percent_point(&self, px: f64, py: f64) -> (f64, f64) {
        (
            self.xmin + self.width() * px / 100.0,
            self.ymin + self.height() * py / 100.0,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_matches_pointwise_application() {
        let t = Affine::translate(10.0, 20.0);
        let r = Affine::rotate_deg(90.0);
        let both = t.mul(&r);
        let (x1, y1) = r.apply(3.0, 4.0);
        let (x2, y2) = t.apply(x1, y1);
        let (x3, y3) = both.apply(3.0, 4.0);
        assert!((x2 - x3).abs() < 1e-12 && (y2 - y3).abs() < 1e-12);
    }

    #[test]
    fn rotate_about_fixes_the_pivot() {
        let m = Affine::rotate_about(37.0, 5.0, -2.0);
        let (x, y) = m.apply(5.0, -2.0);
        assert!((x - 5.0).abs() < 1e-12 && (y + 2.0).abs() < 1e-12);
    }

    #[test]
    fn invert_roundtrip() {
        let m = Affine::rotate_about(45.0, 1.0, 2.0).mul(&Affine::scale(2.0, 0.5));
        let inv = m.invert().unwrap();
        assert!(m.mul(&inv).max_abs_diff(&Affine::IDENTITY) < 1e-12);
    }

    #[test]
    fn transformed_bbox_is_corner_hull() {
        let bb = Bbox::from_xywh(0.0, 0.0, 10.0, 10.0);
        let rot = Affine::rotate_about(45.0, 5.0, 5.0);
        let world = bb.transform(&rot);
        let half_diag = 5.0 * std::f64::consts::SQRT_2;
        assert!((world.width() - 2.0 * half_diag).abs() < 1e-9);
        let (cx, cy) = world.center();
        assert!((cx - 5.0).abs() < 1e-9 && (cy - 5.0).abs() < 1e-9);
    }
}
