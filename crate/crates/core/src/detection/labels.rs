use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Box3D, Point3};

/// One KITTI object label line. Ground truth has no score; detector output
/// carries a trailing confidence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectLabel {
    pub class_name: String,
    pub truncation: f64,
    /// 0 fully visible .. 3 unknown; -1 for DontCare.
    pub occlusion: i32,
    pub alpha: f64,
    /// (left, top, right, bottom) in pixels.
    pub bbox2d: [f64; 4],
    pub h: f64,
    pub w: f64,
    pub l: f64,
    /// Bottom-face center in the camera frame.
    pub location: Point3,
    pub rotation_y: f64,
    pub score: Option<f64>,
}

pub type GtObject = ObjectLabel;

pub const DONT_CARE: &str = "DontCare";

impl ObjectLabel {
    pub fn is_dont_care(&self) -> bool {
        self.class_name == DONT_CARE
    }

    pub fn bbox_height(&self) -> f64 {
        self.bbox2d[3] - self.bbox2d[1]
    }

    pub fn box3d(&self) -> Result<Box3D> {
        Box3D::new(self.location, self.h, self.w, self.l, self.rotation_y)
    }
}

/// A scored 3D box from a detector.
#[derive(Debug, Clone, PartialEq)]
pub struct Detection {
    pub class_name: String,
    pub box3d: Box3D,
    pub score: f64,
}

impl Detection {
    pub fn new(class_name: impl Into<String>, box3d: Box3D, score: f64) -> Self {
        Self {
            class_name: class_name.into(),
            box3d,
            score,
        }
    }
}

impl TryFrom<&ObjectLabel> for Detection {
    type Error = Error;

    fn try_from(label: &ObjectLabel) -> Result<Self> {
        let score = label
            .score
            .filter(|s| s.is_finite())
            .ok_or_else(|| Error::Validation(format!("{} detection without a finite score", label.class_name)))?;
        Ok(Detection {
            class_name: label.class_name.clone(),
            box3d: label.box3d()?,
            score,
        })
    }
}
