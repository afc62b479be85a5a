use std::collections::BTreeMap;

use nalgebra::{Matrix3, Matrix3x4, Matrix4};

use crate::error::{Error, Result};
use crate::geometry::CameraIntrinsics;
use crate::pseudolidar::{CloudPoint, PointCloud};

/// Relative difference between f_u and f_v above which we warn.
pub const FOCAL_MISMATCH_TOLERANCE: f64 = 1e-3;

/// All `name: v0 v1 …` matrices of a KITTI calibration file.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CalibrationFile {
    pub matrices: BTreeMap<String, Vec<f64>>,
}

impl CalibrationFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut matrices = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let Some((name, rest)) = line.split_once(':') else {
                return Err(Error::Parse {
                    line: i + 1,
                    message: "expected `name: values`".into(),
                });
            };
            let values = rest
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>().map_err(|_| Error::Parse {
                        line: i + 1,
                        message: format!("`{tok}` is not a number"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            matrices.insert(name.trim().to_string(), values);
        }
        Ok(Self { matrices })
    }

    pub fn matrix3x4(&self, name: &str) -> Result<Matrix3x4<f64>> {
        let v = self
            .matrices
            .get(name)
            .ok_or_else(|| Error::Format(format!("calibration has no `{name}` line")))?;
        if v.len() != 12 {
            return Err(Error::Format(format!("`{name}` has {} values, expected 12", v.len())));
        }
        Ok(Matrix3x4::from_row_slice(v))
    }

    pub fn matrix3(&self, name: &str) -> Result<Matrix3<f64>> {
        let v = self
            .matrices
            .get(name)
            .ok_or_else(|| Error::Format(format!("calibration has no `{name}` line")))?;
        if v.len() != 9 {
            return Err(Error::Format(format!("`{name}` has {} values, expected 9", v.len())));
        }
        Ok(Matrix3::from_row_slice(v))
    }

    /// Left color camera intrinsics from `P2`.
    pub fn intrinsics(&self) -> Result<CalibIntrinsics> {
        let p2 = self.matrix3x4("P2")?;
        let (fu, fv) = (p2[(0, 0)], p2[(1, 1)]);
        if !(fu > 0.0) {
            return Err(Error::Format(format!("P2[0][0] must be positive, got {fu}")));
        }
        let focal_mismatch = ((fu - fv) / fu).abs() > FOCAL_MISMATCH_TOLERANCE;
        if focal_mismatch {
            log::warn!("f_u = {fu} and f_v = {fv} differ; using f_u as the single focal length");
        }
        Ok(CalibIntrinsics {
            f: fu,
            cu: p2[(0, 2)],
            cv: p2[(1, 2)],
            fv,
            focal_mismatch,
        })
    }

    /// Homogeneous transform from the rectified camera frame to the LiDAR
    /// frame: the inverse of `R0_rect · Tr_velo_to_cam`.
    pub fn rect_to_velo(&self) -> Result<Matrix4<f64>> {
        let tr = self.matrix3x4("Tr_velo_to_cam")?;
        let mut velo_to_cam = Matrix4::identity();
        velo_to_cam.fixed_view_mut::<3, 4>(0, 0).copy_from(&tr);
        let mut rect = Matrix4::identity();
        if self.matrices.contains_key("R0_rect") {
            rect.fixed_view_mut::<3, 3>(0, 0).copy_from(&self.matrix3("R0_rect")?);
        }
        (rect * velo_to_cam)
            .try_inverse()
            .ok_or_else(|| Error::Format("R0_rect · Tr_velo_to_cam is singular".into()))
    }
}

/// Pinhole parameters read from `P2`, before the image size is known.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibIntrinsics {
    /// `P2[0][0]`, used as the single focal length.
    pub f: f64,
    pub cu: f64,
    pub cv: f64,
    /// `P2[1][1]`, kept for reference.
    pub fv: f64,
    pub focal_mismatch: bool,
}

impl CalibIntrinsics {
    pub fn with_size(&self, width: usize, height: usize) -> Result<CameraIntrinsics> {
        CameraIntrinsics::new(self.cu, self.cv, self.f, width, height)
    }
}

pub fn parse_calib(text: &str) -> Result<CalibIntrinsics> {
    CalibrationFile::parse(text)?.intrinsics()
}

/// Apply a homogeneous transform to every point, keeping intensities.
pub fn transform_cloud(cloud: &PointCloud, m: &Matrix4<f64>) -> PointCloud {
    cloud
        .points
        .iter()
        .map(|p| {
            let v = m * nalgebra::Vector4::new(p.x as f64, p.y as f64, p.z as f64, 1.0);
            CloudPoint::new(v.x as f32, v.y as f32, v.z as f32, p.intensity)
        })
        .collect()
}
