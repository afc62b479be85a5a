//! Directory-level protocol steps behind the `plidar` binary. Each command
//! takes a plain config struct and returns a serializable report, so the
//! same steps can be driven from code.

mod convert;
mod eval;
mod mask;
mod rank;

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kitti::parse_split;
use crate::pseudolidar::{AngularWindow, LidarSamplingSpec};

pub use convert::{cmd_convert, CloudMode, ConvertConfig, FrameRecord, Manifest};
pub use eval::{cmd_eval_depth, cmd_eval_det, EvalDepthConfig, EvalDetConfig};
pub use mask::{cmd_sample_mask, CameraSource, MaskSummary, SampleMaskConfig};
pub use rank::{cmd_rank, RankConfig, RankOutput};

/// Sampling parameters as given on the command line. Unset fields fall back
/// to the KITTI Velodyne preset when sampling, and to "no bound" for dense
/// clouds.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SamplingOptions {
    pub beams: Option<u32>,
    /// Azimuth step in degrees.
    pub h_res_deg: Option<f64>,
    pub d_max: Option<f64>,
    pub h_max: Option<f64>,
    pub r_min_frac: Option<f64>,
    /// Azimuth window `(start, end)` in degrees.
    pub h_fov_deg: Option<(f64, f64)>,
    /// Elevation window `(start, end)` in degrees, positive below the horizon.
    pub v_fov_deg: Option<(f64, f64)>,
    /// Upper bound on a derived elevation extent, in degrees.
    pub v_fov_clamp_deg: Option<f64>,
}

impl SamplingOptions {
    /// Sampling spec with preset defaults. Windows left unset are derived
    /// from each frame's camera.
    pub fn lidar_spec(&self) -> Result<LidarSamplingSpec> {
        let window = |(a, b): (f64, f64)| AngularWindow::between(a.to_radians(), b.to_radians());
        let spec = LidarSamplingSpec {
            n_beams: self.beams.unwrap_or(64),
            vertical: self.v_fov_deg.map(window),
            horizontal: self.h_fov_deg.map(window),
            h_res: self.h_res_deg.unwrap_or(0.08).to_radians(),
            d_max: self.d_max.unwrap_or(80.0),
            h_max: self.h_max.unwrap_or(1.0),
            r_min_frac: self.r_min_frac.unwrap_or(0.4),
            v_fov_clamp: self.v_fov_clamp_deg.map(f64::to_radians),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Thread pool for per-frame work. `None` or 0 uses all cores.
pub(crate) fn thread_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Validation(format!("cannot start thread pool: {e}")))
}

pub(crate) fn read_file(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::from(e).in_file(path))
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::from(e).in_file(path))
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::from(e).in_file(path))
}

pub(crate) fn read_split(path: &Path) -> Result<Vec<String>> {
    parse_split(&read_text(path)?)
        .map(|s| s.0)
        .map_err(|e| e.in_file(path))
}

/// Sorted stems of the files in `dir` with the given extension.
pub(crate) fn stems(dir: &Path, ext: &str) -> Result<BTreeSet<String>> {
    let mut out = BTreeSet::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::from(e).in_file(dir))? {
        let path = entry.map_err(|e| Error::from(e).in_file(dir))?.path();
        if path.is_file() && path.extension().is_some_and(|x| x == ext) {
            if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                out.insert(stem.to_string());
            }
        }
    }
    Ok(out)
}

/// Frame ids for a pair of aligned directories: the split if given, else
/// the files of `reference`, which `other` must match exactly.
pub(crate) fn aligned_ids(
    split: Option<&Path>,
    reference: (&Path, &str),
    other: (&Path, &str),
) -> Result<Vec<String>> {
    let other_ids = stems(other.0, other.1)?;
    let ids: Vec<String> = match split {
        Some(path) => read_split(path)?,
        None => stems(reference.0, reference.1)?.into_iter().collect(),
    };
    let missing: Vec<String> = ids.iter().filter(|id| !other_ids.contains(*id)).cloned().collect();
    let unexpected: Vec<String> = if split.is_some() {
        Vec::new()
    } else {
        let ref_ids: BTreeSet<&String> = ids.iter().collect();
        other_ids.iter().filter(|id| !ref_ids.contains(id)).cloned().collect()
    };
    if !missing.is_empty() || !unexpected.is_empty() {
        return Err(Error::Alignment { missing, unexpected }.in_file(other.0));
    }
    Ok(ids)
}

pub(crate) fn frame_path(dir: &Path, id: &str, ext: &str) -> PathBuf {
    dir.join(format!("{id}.{ext}"))
}
