use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::{read_text, write_file, SamplingOptions};
use crate::error::Result;
use crate::geometry::CameraIntrinsics;
use crate::kitti::{parse_calib, write_mask_image};
use crate::pseudolidar::{build_sample_mask, LidarSamplingSpec, SampleMask};

#[derive(Debug, Clone, PartialEq)]
pub enum CameraSource {
    /// KITTI calibration file; intrinsics come from `P2`.
    Calib(PathBuf),
    Intrinsics { f: f64, cu: f64, cv: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleMaskConfig {
    pub camera: CameraSource,
    pub width: usize,
    pub height: usize,
    pub sampling: SamplingOptions,
    /// Where to write the 8-bit PNG mask.
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaskSummary {
    pub width: usize,
    pub height: usize,
    pub first_row: usize,
    pub selected: usize,
    pub beams: usize,
    pub azimuths: usize,
    /// Spec with the windows resolved for this camera.
    pub spec: LidarSamplingSpec,
}

pub fn cmd_sample_mask(config: &SampleMaskConfig) -> Result<(SampleMask, MaskSummary)> {
    let k = match &config.camera {
        CameraSource::Calib(path) => parse_calib(&read_text(path)?)
            .and_then(|c| c.with_size(config.width, config.height))
            .map_err(|e| e.in_file(path))?,
        CameraSource::Intrinsics { f, cu, cv } => CameraIntrinsics::new(*cu, *cv, *f, config.width, config.height)?,
    };
    let mut spec = config.sampling.lidar_spec()?;
    spec.vertical = Some(spec.vertical_window(&k));
    spec.horizontal = Some(spec.horizontal_window(&k));
    let mask = build_sample_mask(&k, &spec)?;
    if let Some(out) = &config.out {
        write_file(out, &write_mask_image(&mask)?)?;
    }
    let summary = MaskSummary {
        width: mask.width(),
        height: mask.height(),
        first_row: mask.first_row(),
        selected: mask.count(),
        beams: spec.elevations(&k).len(),
        azimuths: spec.azimuths(&k).len(),
        spec,
    };
    Ok((mask, summary))
}
