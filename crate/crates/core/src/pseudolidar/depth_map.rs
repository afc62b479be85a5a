use crate::error::{Error, Result};
use crate::geometry::CameraIntrinsics;

/// Per-pixel metric depth with a validity mask, row-major.
///
/// Invalid pixels always carry depth 0.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthMap {
    width: usize,
    height: usize,
    values: Vec<f64>,
    valid: Vec<bool>,
}

impl DepthMap {
    /// Build from raw depths; any non-finite or non-positive value becomes
    /// an invalid pixel.
    pub fn from_values(width: usize, height: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != width * height {
            return Err(Error::Validation(format!(
                "{} depth values for a {width}x{height} map",
                values.len()
            )));
        }
        let valid: Vec<bool> = values.iter().map(|&d| d.is_finite() && d > 0.0).collect();
        let values = values
            .into_iter()
            .zip(&valid)
            .map(|(d, &ok)| if ok { d } else { 0.0 })
            .collect();
        Ok(Self {
            width,
            height,
            values,
            valid,
        })
    }

    pub fn invalid(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            values: vec![0.0; width * height],
            valid: vec![false; width * height],
        }
    }

    pub fn filled(width: usize, height: usize, depth: f64) -> Result<Self> {
        Self::from_values(width, height, vec![depth; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn valid_mask(&self) -> &[bool] {
        &self.valid
    }

    /// Depth at column `u`, row `v`, if that pixel is valid.
    pub fn get(&self, u: usize, v: usize) -> Option<f64> {
        let i = v * self.width + u;
        (u < self.width && v < self.height && self.valid[i]).then(|| self.values[i])
    }

    pub fn set(&mut self, u: usize, v: usize, depth: Option<f64>) {
        let i = v * self.width + u;
        match depth {
            Some(d) if d.is_finite() && d > 0.0 => {
                self.values[i] = d;
                self.valid[i] = true;
            }
            _ => {
                self.values[i] = 0.0;
                self.valid[i] = false;
            }
        }
    }

    pub fn valid_count(&self) -> usize {
        self.valid.iter().filter(|&&v| v).count()
    }

    pub fn check_same_shape(&self, width: usize, height: usize) -> Result<()> {
        if self.width != width || self.height != height {
            return Err(Error::Shape {
                expected_width: width,
                expected_height: height,
                width: self.width,
                height: self.height,
            });
        }
        Ok(())
    }

    pub(crate) fn check_camera(&self, k: &CameraIntrinsics) -> Result<()> {
        self.check_same_shape(k.width, k.height)
    }
}
