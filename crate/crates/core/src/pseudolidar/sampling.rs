//! Virtual rotating-LiDAR sampling of a depth map.
//!
//! Each beam elevation `psi` and azimuth `phi` defines a ray
//! `(cos psi sin phi, sin psi, cos psi cos phi)` from the optical center.
//! Projected through the pinhole this lands at
//! `u = cu + f tan phi`, `v = cv + f tan psi / cos phi`, which gives the
//! curved scan lines of a real sensor. The nearest pixel is selected.

use serde::{Deserialize, Serialize};

use super::cloud::{lift_pixel, r_min_row, PointCloud};
use super::depth_map::DepthMap;
use crate::error::{Error, Result};
use crate::geometry::{project, CameraIntrinsics, Point3};

/// Vertical field of view of the Velodyne HDL-64E, in degrees.
pub const HDL64E_V_FOV_DEG: f64 = 26.9;

/// An angular interval `[start, start + extent]` in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularWindow {
    pub start: f64,
    pub extent: f64,
}

impl AngularWindow {
    pub fn between(start: f64, end: f64) -> Self {
        Self {
            start,
            extent: (end - start).max(0.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LidarSamplingSpec {
    pub n_beams: u32,
    /// Elevation window (positive is below the horizon). `None` derives it
    /// from the image rows between the cutoff row and the bottom edge.
    pub vertical: Option<AngularWindow>,
    /// Azimuth window. `None` derives it from the image columns.
    pub horizontal: Option<AngularWindow>,
    /// Azimuth step in radians.
    pub h_res: f64,
    pub d_max: f64,
    /// Max height above the camera in meters.
    pub h_max: f64,
    /// Fraction of top image rows to discard.
    pub r_min_frac: f64,
    /// Upper bound on a derived vertical extent, in radians.
    pub v_fov_clamp: Option<f64>,
}

impl LidarSamplingSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Validation(m));
        if self.n_beams == 0 {
            return bad("n_beams must be at least 1".into());
        }
        if !(self.h_res.is_finite() && self.h_res > 0.0) {
            return bad(format!("h_res must be positive, got {}", self.h_res));
        }
        if !(self.d_max > 0.0) {
            return bad(format!("d_max must be positive, got {}", self.d_max));
        }
        if self.h_max.is_nan() {
            return bad("h_max is NaN".into());
        }
        if !(0.0..1.0).contains(&self.r_min_frac) {
            return bad(format!("r_min_frac must be in [0, 1), got {}", self.r_min_frac));
        }
        for w in [self.vertical, self.horizontal].into_iter().flatten() {
            if !(w.start.is_finite() && w.extent.is_finite() && w.extent >= 0.0) {
                return bad(format!("invalid angular window {w:?}"));
            }
        }
        if let Some(c) = self.v_fov_clamp {
            if !(c >= 0.0) {
                return bad(format!("invalid vertical clamp {c}"));
            }
        }
        Ok(())
    }

    pub fn with_beams(&self, n_beams: u32) -> Self {
        Self {
            n_beams,
            ..self.clone()
        }
    }

    /// Elevation window actually swept for this camera.
    pub fn vertical_window(&self, k: &CameraIntrinsics) -> AngularWindow {
        let mut w = self.vertical.unwrap_or_else(|| {
            let top = r_min_row(self.r_min_frac, k.height) as f64;
            AngularWindow::between(
                ((top - k.cv) / k.f).atan(),
                ((k.height as f64 - 0.5 - k.cv) / k.f).atan(),
            )
        });
        if let Some(c) = self.v_fov_clamp {
            w.extent = w.extent.min(c);
        }
        w
    }

    /// Azimuth window actually swept for this camera.
    pub fn horizontal_window(&self, k: &CameraIntrinsics) -> AngularWindow {
        self.horizontal.unwrap_or_else(|| {
            AngularWindow::between(
                ((0.5 - k.cu) / k.f).atan(),
                ((k.width as f64 - 0.5 - k.cu) / k.f).atan(),
            )
        })
    }

    /// Beam elevations, evenly spaced from the top of the vertical window.
    pub fn elevations(&self, k: &CameraIntrinsics) -> Vec<f64> {
        let w = self.vertical_window(k);
        let step = w.extent / self.n_beams as f64;
        (0..self.n_beams).map(|i| w.start + i as f64 * step).collect()
    }

    pub fn azimuths(&self, k: &CameraIntrinsics) -> Vec<f64> {
        let w = self.horizontal_window(k);
        let n = azimuth_count(w.extent, self.h_res);
        (0..n).map(|j| w.start + j as f64 * self.h_res).collect()
    }
}

fn azimuth_count(extent: f64, h_res: f64) -> usize {
    (extent / h_res).ceil() as usize
}

/// The KITTI Velodyne setup: 64 beams, 0.08° azimuth step, 80 m depth,
/// 1 m height above the camera, top 40% of rows discarded. Angular extents
/// cover the image area of `k`.
pub fn kitti_velodyne_spec(k: &CameraIntrinsics) -> LidarSamplingSpec {
    let mut spec = LidarSamplingSpec {
        n_beams: 64,
        vertical: None,
        horizontal: None,
        h_res: 0.08f64.to_radians(),
        d_max: 80.0,
        h_max: 1.0,
        r_min_frac: 0.4,
        v_fov_clamp: None,
    };
    spec.vertical = Some(spec.vertical_window(k));
    spec.horizontal = Some(spec.horizontal_window(k));
    spec
}

/// Pixels hit by the virtual LiDAR rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleMask {
    width: usize,
    height: usize,
    first_row: usize,
    selected: Vec<bool>,
}

impl SampleMask {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Rows above this index are never selected.
    pub fn first_row(&self) -> usize {
        self.first_row
    }

    pub fn is_selected(&self, u: usize, v: usize) -> bool {
        u < self.width && v < self.height && self.selected[v * self.width + u]
    }

    pub fn selected(&self) -> &[bool] {
        &self.selected
    }

    pub fn count(&self) -> usize {
        self.selected.iter().filter(|&&s| s).count()
    }

    pub fn is_subset_of(&self, other: &SampleMask) -> bool {
        self.width == other.width
            && self.height == other.height
            && self.selected.iter().zip(&other.selected).all(|(&a, &b)| !a || b)
    }

    /// Selected pixels as (column, row), row-major.
    pub fn pixels(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.selected
            .iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| (i % self.width, i / self.width))
    }
}

pub fn build_sample_mask(k: &CameraIntrinsics, spec: &LidarSamplingSpec) -> Result<SampleMask> {
    spec.validate()?;
    let (width, height) = (k.width, k.height);
    let first_row = r_min_row(spec.r_min_frac, height);
    let mut selected = vec![false; width * height];

    let azimuths: Vec<(f64, f64)> = spec.azimuths(k).into_iter().map(f64::sin_cos).collect();
    for psi in spec.elevations(k) {
        let (sin_psi, cos_psi) = psi.sin_cos();
        for &(sin_phi, cos_phi) in &azimuths {
            let ray = Point3::new(cos_psi * sin_phi, sin_psi, cos_psi * cos_phi);
            let Ok((u, v)) = project(ray, k) else {
                continue;
            };
            // f64::round is half-away-from-zero
            let (col, row) = (u.round(), v.round());
            if col < 0.0 || row < first_row as f64 || col >= width as f64 || row >= height as f64 {
                continue;
            }
            selected[row as usize * width + col as usize] = true;
        }
    }
    Ok(SampleMask {
        width,
        height,
        first_row,
        selected,
    })
}

/// LiDAR-like sparse cloud: back-projects masked valid pixels and keeps
/// points within `d_max` depth and `h_max` height above the camera.
pub fn sampled_cloud(d: &DepthMap, k: &CameraIntrinsics, spec: &LidarSamplingSpec) -> Result<PointCloud> {
    d.check_camera(k)?;
    let mask = build_sample_mask(k, spec)?;
    sampled_cloud_with_mask(d, k, spec, &mask)
}

/// Same as [`sampled_cloud`] with a precomputed mask, for reuse across frames
/// that share a camera.
pub fn sampled_cloud_with_mask(
    d: &DepthMap,
    k: &CameraIntrinsics,
    spec: &LidarSamplingSpec,
    mask: &SampleMask,
) -> Result<PointCloud> {
    d.check_camera(k)?;
    d.check_same_shape(mask.width, mask.height)?;
    let mut points = Vec::with_capacity(mask.count());
    for (u, v) in mask.pixels() {
        if let Some(depth) = d.get(u, v) {
            if let Some(p) = lift_pixel(u, v, depth, k, Some(spec.d_max), Some(spec.h_max))? {
                points.push(p);
            }
        }
    }
    Ok(PointCloud { points })
}
