use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Pinhole intrinsics with a single focal length, plus the image size they
/// belong to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CameraIntrinsics {
    /// Optical-center column in pixels.
    pub cu: f64,
    /// Optical-center row in pixels.
    pub cv: f64,
    /// Focal length in pixels.
    pub f: f64,
    pub width: usize,
    pub height: usize,
}

impl CameraIntrinsics {
    pub fn new(cu: f64, cv: f64, f: f64, width: usize, height: usize) -> Result<Self> {
        if !(f.is_finite() && f > 0.0) {
            return Err(Error::Validation(format!("focal length must be positive, got {f}")));
        }
        if !(cu.is_finite() && cv.is_finite()) {
            return Err(Error::Validation("optical center must be finite".into()));
        }
        if width == 0 || height == 0 {
            return Err(Error::Validation(format!(
                "image must be at least 1x1, got {width}x{height}"
            )));
        }
        // cropped images can legitimately move the optical center off-image
        if !(0.0..width as f64).contains(&cu) || !(0.0..height as f64).contains(&cv) {
            log::warn!(
                "optical center ({cu}, {cv}) lies outside the {width}x{height} image"
            );
        }
        Ok(Self {
            cu,
            cv,
            f,
            width,
            height,
        })
    }

    /// Same camera, different image size.
    pub fn with_size(self, width: usize, height: usize) -> Result<Self> {
        Self::new(self.cu, self.cv, self.f, width, height)
    }
}

/// A point in the camera frame: x right, y down, z forward (meters).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }
}

/// Lift pixel `(u, v)` at metric depth `z` into the camera frame.
pub fn backproject(u: f64, v: f64, z: f64, k: &CameraIntrinsics) -> Result<Point3> {
    if !(z.is_finite() && z > 0.0) {
        return Err(Error::InvalidDepth(z));
    }
    let scale = z / k.f;
    Ok(Point3 {
        x: scale * (u - k.cu),
        y: scale * (v - k.cv),
        z,
    })
}

/// Real-valued pixel coordinates `(u, v)` of a camera-frame point.
pub fn project(p: Point3, k: &CameraIntrinsics) -> Result<(f64, f64)> {
    if !(p.z > 0.0) {
        return Err(Error::BehindCamera(p.z));
    }
    Ok((k.cu + k.f * p.x / p.z, k.cv + k.f * p.y / p.z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn kitti_like() -> CameraIntrinsics {
        CameraIntrinsics::new(600.0, 180.0, 720.0, 1242, 375).unwrap()
    }

    #[test]
    fn principal_point_maps_to_axis() {
        let k = kitti_like();
        assert_eq!(backproject(k.cu, k.cv, 7.0, &k).unwrap(), Point3::new(0.0, 0.0, 7.0));
        assert_eq!(project(Point3::new(0.0, 0.0, 5.0), &k).unwrap(), (k.cu, k.cv));
    }

    #[test]
    fn hand_evaluated_points() {
        let k = kitti_like();
        assert_eq!(backproject(960.0, 360.0, 10.0, &k).unwrap(), Point3::new(5.0, 2.5, 10.0));
        assert_eq!(backproject(240.0, 0.0, 10.0, &k).unwrap(), Point3::new(-5.0, -2.5, 10.0));
        assert_eq!(project(Point3::new(5.0, 2.5, 10.0), &k).unwrap(), (960.0, 360.0));
    }

    #[test]
    fn bad_depth_rejected() {
        let k = kitti_like();
        for z in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(backproject(1.0, 1.0, z, &k), Err(Error::InvalidDepth(_))));
        }
        assert!(matches!(
            project(Point3::new(1.0, 1.0, 0.0), &k),
            Err(Error::BehindCamera(_))
        ));
    }

    #[test]
    fn invalid_intrinsics() {
        assert!(CameraIntrinsics::new(1.0, 1.0, 0.0, 2, 2).is_err());
        assert!(CameraIntrinsics::new(1.0, 1.0, 1.0, 0, 2).is_err());
        // off-image optical center only warns
        assert!(CameraIntrinsics::new(-5.0, 1.0, 1.0, 2, 2).is_ok());
    }

    proptest! {
        #[test]
        fn round_trip(u in -500.0f64..2000.0, v in -500.0f64..1000.0, z in 1e-3f64..500.0) {
            let k = kitti_like();
            let (pu, pv) = project(backproject(u, v, z, &k).unwrap(), &k).unwrap();
            prop_assert!((pu - u).abs() <= 1e-9 * u.abs().max(1.0));
            prop_assert!((pv - v).abs() <= 1e-9 * v.abs().max(1.0));
        }

        #[test]
        fn depth_linearity(u in 0.0f64..1242.0, v in 0.0f64..375.0, z in 0.1f64..100.0, a in 0.1f64..10.0) {
            let k = kitti_like();
            let p = backproject(u, v, z, &k).unwrap();
            let q = backproject(u, v, a * z, &k).unwrap();
            for (s, t) in [(p.x, q.x), (p.y, q.y), (p.z, q.z)] {
                prop_assert!((a * s - t).abs() <= 1e-12 * t.abs().max(1.0));
            }
        }
    }
}
