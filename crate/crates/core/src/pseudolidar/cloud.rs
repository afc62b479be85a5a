use super::depth_map::DepthMap;
use crate::error::Result;
use crate::geometry::{backproject, CameraIntrinsics};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CloudPoint {
    pub x: f32,
    pub y: f32,
    pub z: f32,
    pub intensity: f32,
}

impl CloudPoint {
    pub const fn new(x: f32, y: f32, z: f32, intensity: f32) -> Self {
        Self { x, y, z, intensity }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PointCloud {
    pub points: Vec<CloudPoint>,
}

impl PointCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl FromIterator<CloudPoint> for PointCloud {
    fn from_iter<I: IntoIterator<Item = CloudPoint>>(iter: I) -> Self {
        Self {
            points: iter.into_iter().collect(),
        }
    }
}

/// Optional bounds for the dense cloud. Nothing is filtered by default.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DenseBounds {
    pub d_max: Option<f64>,
    /// Max height above the camera, i.e. points with `-y > h_max` are dropped.
    pub h_max: Option<f64>,
    pub r_min_frac: Option<f64>,
}

/// First image row kept when discarding the top `frac` of `height` rows.
pub fn r_min_row(frac: f64, height: usize) -> usize {
    ((frac * height as f64).ceil() as usize).min(height)
}

/// Back-project pixel `(u, v)` and keep it if it passes the depth and height
/// bounds. Bounds are checked on the stored f32 coordinates.
pub(crate) fn lift_pixel(
    u: usize,
    v: usize,
    depth: f64,
    k: &CameraIntrinsics,
    d_max: Option<f64>,
    h_max: Option<f64>,
) -> Result<Option<CloudPoint>> {
    let p = backproject(u as f64, v as f64, depth, k)?;
    let pt = CloudPoint::new(p.x as f32, p.y as f32, p.z as f32, 1.0);
    if d_max.is_some_and(|m| pt.z as f64 > m) || h_max.is_some_and(|m| -(pt.y as f64) > m) {
        return Ok(None);
    }
    Ok(Some(pt))
}

/// One point per valid pixel, row-major, optionally capped at `d_max`.
pub fn dense_cloud(d: &DepthMap, k: &CameraIntrinsics, d_max: Option<f64>) -> Result<PointCloud> {
    dense_cloud_bounded(
        d,
        k,
        &DenseBounds {
            d_max,
            ..DenseBounds::default()
        },
    )
}

pub fn dense_cloud_bounded(d: &DepthMap, k: &CameraIntrinsics, bounds: &DenseBounds) -> Result<PointCloud> {
    d.check_camera(k)?;
    let first_row = bounds.r_min_frac.map_or(0, |f| r_min_row(f, d.height()));
    let mut points = Vec::with_capacity(d.valid_count());
    for v in first_row..d.height() {
        for u in 0..d.width() {
            if let Some(depth) = d.get(u, v) {
                if let Some(p) = lift_pixel(u, v, depth, k, bounds.d_max, bounds.h_max)? {
                    points.push(p);
                }
            }
        }
    }
    Ok(PointCloud { points })
}
