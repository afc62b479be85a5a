use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::camera::Point3;
use super::polygon::{convex_clip, polygon_area, Point2, DEGENERATE_AREA};
use crate::error::{Error, Result};

/// Wrap an angle into (-π, π].
pub fn normalize_yaw(yaw: f64) -> f64 {
    let mut y = yaw % TAU;
    if y <= -PI {
        y += TAU;
    } else if y > PI {
        y -= TAU;
    }
    y
}

/// Oriented rectangle on the x–z ground plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotatedBevBox {
    pub cx: f64,
    pub cz: f64,
    /// Extent along the heading direction.
    pub l: f64,
    pub w: f64,
    /// KITTI `rotation_y`, in (-π, π].
    pub yaw: f64,
}

impl RotatedBevBox {
    pub fn new(cx: f64, cz: f64, l: f64, w: f64, yaw: f64) -> Result<Self> {
        let all_finite = [cx, cz, l, w, yaw].iter().all(|v| v.is_finite());
        if !all_finite || l <= 0.0 || w <= 0.0 || l * w < DEGENERATE_AREA {
            return Err(Error::DegenerateGeometry(format!(
                "bev box (cx={cx}, cz={cz}, l={l}, w={w}, yaw={yaw})"
            )));
        }
        Ok(Self {
            cx,
            cz,
            l,
            w,
            yaw: normalize_yaw(yaw),
        })
    }

    pub fn area(&self) -> f64 {
        self.l * self.w
    }

    /// Corners as (x, z) pairs, counter-clockwise in the x–z plane.
    pub fn corners(&self) -> [Point2; 4] {
        let (s, c) = self.yaw.sin_cos();
        let (hl, hw) = (0.5 * self.l, 0.5 * self.w);
        // object frame: dx along the length, dz along the width; rotation about +y
        let at = |dx: f64, dz: f64| Point2::new(self.cx + c * dx + s * dz, self.cz - s * dx + c * dz);
        [at(hl, hw), at(hl, -hw), at(-hl, -hw), at(-hl, hw)]
    }

    /// Whether `(x, z)` lies inside the footprint.
    pub fn contains(&self, x: f64, z: f64) -> bool {
        let (s, c) = self.yaw.sin_cos();
        let (dx, dz) = (x - self.cx, z - self.cz);
        let along = c * dx - s * dz;
        let across = s * dx + c * dz;
        along.abs() <= 0.5 * self.l && across.abs() <= 0.5 * self.w
    }

    fn key(&self) -> [u64; 5] {
        [self.cx, self.cz, self.l, self.w, self.yaw].map(f64::to_bits)
    }
}

/// Upright 3D box in the camera frame, KITTI label convention: `location`
/// is the bottom-face center, so the box spans `[y - h, y]` vertically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Box3D {
    pub location: Point3,
    pub h: f64,
    pub w: f64,
    pub l: f64,
    pub rotation_y: f64,
}

impl Box3D {
    pub fn new(location: Point3, h: f64, w: f64, l: f64, rotation_y: f64) -> Result<Self> {
        let b = Self {
            location,
            h,
            w,
            l,
            rotation_y,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.location;
        if !(self.h.is_finite() && self.h > 0.0 && p.y.is_finite()) {
            return Err(Error::DegenerateGeometry(format!("box height {}", self.h)));
        }
        self.bev().map(|_| ())
    }

    pub fn bev(&self) -> Result<RotatedBevBox> {
        RotatedBevBox::new(self.location.x, self.location.z, self.l, self.w, self.rotation_y)
    }

    /// (top, bottom) in camera y; top < bottom since y points down.
    pub fn vertical_extent(&self) -> (f64, f64) {
        (self.location.y - self.h, self.location.y)
    }

    pub fn volume(&self) -> f64 {
        self.l * self.w * self.h
    }
}

fn bev_intersection(a: &RotatedBevBox, b: &RotatedBevBox) -> Result<f64> {
    // fixed argument order keeps the result bit-symmetric
    let (first, second) = if a.key() <= b.key() { (a, b) } else { (b, a) };
    let poly = convex_clip(&first.corners(), &second.corners())?;
    Ok(polygon_area(&poly))
}

/// Bird's-eye-view IoU of two footprints.
pub fn bev_iou(a: &RotatedBevBox, b: &RotatedBevBox) -> Result<f64> {
    let inter = bev_intersection(a, b)?;
    let union = a.area() + b.area() - inter;
    Ok((inter / union).clamp(0.0, 1.0))
}

/// Volume IoU of two upright boxes.
pub fn iou_3d(a: &Box3D, b: &Box3D) -> Result<f64> {
    a.validate()?;
    b.validate()?;
    let (ba, bb) = (a.bev()?, b.bev()?);
    let (ta, da) = a.vertical_extent();
    let (tb, db) = b.vertical_extent();
    if ta == tb && da == db {
        return bev_iou(&ba, &bb);
    }
    let overlap = (da.min(db) - ta.max(tb)).max(0.0);
    if overlap == 0.0 {
        return Ok(0.0);
    }
    let inter = bev_intersection(&ba, &bb)? * overlap;
    let union = a.volume() + b.volume() - inter;
    Ok((inter / union).clamp(0.0, 1.0))
}
