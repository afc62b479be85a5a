use std::fs;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{frame_path, read_file, read_split, read_text, thread_pool, write_file, SamplingOptions};
use crate::error::{Error, Result};
use crate::kitti::{read_depth_image, transform_cloud, write_pointcloud, CalibrationFile};
use crate::pseudolidar::{dense_cloud_bounded, sampled_cloud, DenseBounds, LidarSamplingSpec, PointCloud};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CloudMode {
    /// Every valid pixel.
    Dense,
    /// Pixels hit by the virtual LiDAR rays.
    #[default]
    Sampled,
}

impl std::str::FromStr for CloudMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(CloudMode::Dense),
            "sampled" => Ok(CloudMode::Sampled),
            other => Err(Error::Validation(format!("unknown cloud mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ConvertConfig {
    /// `<id>.png` 16-bit depth maps.
    pub depth_dir: PathBuf,
    /// `<id>.txt` KITTI calibration files.
    pub calib_dir: PathBuf,
    pub split: PathBuf,
    /// Receives `<id>.bin` and `manifest.json`.
    pub out: PathBuf,
    pub mode: CloudMode,
    pub sampling: SamplingOptions,
    /// Write points in the LiDAR frame instead of the camera frame.
    pub lidar_frame: bool,
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameRecord {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    /// Hex SHA-256 of the written file.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sha256: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub mode: CloudMode,
    pub frame: String,
    pub sampling: SamplingOptions,
    /// Resolved sampling spec; windows left unset are derived per camera.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<LidarSamplingSpec>,
    pub frames: Vec<FrameRecord>,
    pub failed: usize,
}

impl Manifest {
    pub const FILE_NAME: &'static str = "manifest.json";

    pub fn is_complete(&self) -> bool {
        self.failed == 0
    }
}

/// Convert every frame of the split to a point-cloud binary. Frames that
/// fail are recorded in the manifest and do not stop the others.
pub fn cmd_convert(config: &ConvertConfig) -> Result<Manifest> {
    let ids = read_split(&config.split)?;
    let spec = match config.mode {
        CloudMode::Sampled => Some(config.sampling.lidar_spec()?),
        CloudMode::Dense => None,
    };
    fs::create_dir_all(&config.out).map_err(|e| Error::from(e).in_file(&config.out))?;

    let pool = thread_pool(config.jobs)?;
    let frames: Vec<FrameRecord> = pool.install(|| {
        ids.par_iter()
            .map(|id| match convert_frame(config, spec.as_ref(), id) {
                Ok((file, points, sha256)) => FrameRecord {
                    id: id.clone(),
                    file: Some(file),
                    points: Some(points),
                    sha256: Some(sha256),
                    error: None,
                },
                Err(e) => {
                    log::error!("frame {id}: {e}");
                    FrameRecord {
                        id: id.clone(),
                        file: None,
                        points: None,
                        sha256: None,
                        error: Some(e.to_string()),
                    }
                }
            })
            .collect()
    });

    let manifest = Manifest {
        mode: config.mode,
        frame: if config.lidar_frame { "lidar" } else { "camera" }.into(),
        sampling: config.sampling.clone(),
        spec,
        failed: frames.iter().filter(|f| f.error.is_some()).count(),
        frames,
    };
    let mut json = serde_json::to_string_pretty(&manifest)?;
    json.push('\n');
    write_file(&config.out.join(Manifest::FILE_NAME), json.as_bytes())?;
    Ok(manifest)
}

fn convert_frame(config: &ConvertConfig, spec: Option<&LidarSamplingSpec>, id: &str) -> Result<(String, usize, String)> {
    let depth_path = frame_path(&config.depth_dir, id, "png");
    let depth = read_depth_image(&read_file(&depth_path)?).map_err(|e| e.in_file(&depth_path))?;
    let calib_path = frame_path(&config.calib_dir, id, "txt");
    let calib = CalibrationFile::parse(&read_text(&calib_path)?).map_err(|e| e.in_file(&calib_path))?;
    let k = calib
        .intrinsics()
        .and_then(|c| c.with_size(depth.width(), depth.height()))
        .map_err(|e| e.in_file(&calib_path))?;

    let mut cloud: PointCloud = match spec {
        Some(spec) => sampled_cloud(&depth, &k, spec)?,
        None => {
            let bounds = DenseBounds {
                d_max: config.sampling.d_max,
                h_max: config.sampling.h_max,
                r_min_frac: config.sampling.r_min_frac,
            };
            dense_cloud_bounded(&depth, &k, &bounds)?
        }
    };
    if config.lidar_frame {
        let m = calib.rect_to_velo().map_err(|e| e.in_file(&calib_path))?;
        cloud = transform_cloud(&cloud, &m);
    }

    let bytes = write_pointcloud(&cloud);
    let file = format!("{id}.bin");
    write_file(&config.out.join(&file), &bytes)?;
    Ok((file, cloud.len(), hex::encode(Sha256::digest(&bytes))))
}
