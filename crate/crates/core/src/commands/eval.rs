use std::path::PathBuf;

use rayon::prelude::*;

use super::{aligned_ids, frame_path, read_file, read_text, thread_pool};
use crate::depth_metrics::{evaluate_dataset, DepthEvalConfig, DepthMetricReport};
use crate::detection::{evaluate, APReport, DetEvalConfig, Detection, ObjectLabel};
use crate::error::{Error, Result};
use crate::kitti::{parse_labels, read_depth_image};
use crate::pseudolidar::DepthMap;

#[derive(Debug, Clone, Default)]
pub struct EvalDepthConfig {
    /// Predicted `<id>.png` depth maps.
    pub depth_dir: PathBuf,
    /// Ground-truth `<id>.png` depth maps.
    pub gt_depth_dir: PathBuf,
    /// Frames to evaluate; all ground-truth files when unset.
    pub split: Option<PathBuf>,
    pub eval: DepthEvalConfig,
    pub jobs: Option<usize>,
}

pub fn cmd_eval_depth(config: &EvalDepthConfig) -> Result<DepthMetricReport> {
    let ids = aligned_ids(
        config.split.as_deref(),
        (&config.gt_depth_dir, "png"),
        (&config.depth_dir, "png"),
    )?;
    let pool = thread_pool(config.jobs)?;
    pool.install(|| {
        let load = |dir: &PathBuf| -> Result<Vec<DepthMap>> {
            ids.par_iter()
                .map(|id| {
                    let path = frame_path(dir, id, "png");
                    read_depth_image(&read_file(&path)?).map_err(|e| e.in_file(&path))
                })
                .collect()
        };
        let preds = load(&config.depth_dir)?;
        let gts = load(&config.gt_depth_dir)?;
        evaluate_dataset(&preds, &gts, &config.eval)
    })
}

#[derive(Debug, Clone, Default)]
pub struct EvalDetConfig {
    /// Detector output `<id>.txt`, 16 fields per line.
    pub dets_dir: PathBuf,
    /// Ground-truth `<id>.txt` labels.
    pub labels_dir: PathBuf,
    /// Frames to evaluate; all label files when unset.
    pub split: Option<PathBuf>,
    pub eval: DetEvalConfig,
    pub jobs: Option<usize>,
}

pub fn cmd_eval_det(config: &EvalDetConfig) -> Result<APReport> {
    let ids = aligned_ids(config.split.as_deref(), (&config.labels_dir, "txt"), (&config.dets_dir, "txt"))?;
    let pool = thread_pool(config.jobs)?;
    let frames: Vec<(Vec<Detection>, Vec<ObjectLabel>)> = pool.install(|| {
        ids.par_iter()
            .map(|id| {
                let gt_path = frame_path(&config.labels_dir, id, "txt");
                let gts = parse_labels(&read_text(&gt_path)?).map_err(|e| e.in_file(&gt_path))?;
                let det_path = frame_path(&config.dets_dir, id, "txt");
                let dets = parse_labels(&read_text(&det_path)?)
                    .and_then(|labels| to_detections(&labels))
                    .map_err(|e| e.in_file(&det_path))?;
                Ok((dets, gts))
            })
            .collect::<Result<_>>()
    })?;
    let (dets, gts): (Vec<_>, Vec<_>) = frames.into_iter().unzip();
    evaluate(&dets, &gts, &config.eval)
}

fn to_detections(labels: &[ObjectLabel]) -> Result<Vec<Detection>> {
    labels
        .iter()
        .enumerate()
        .filter(|(_, l)| !l.is_dont_care())
        .map(|(i, l)| {
            Detection::try_from(l).map_err(|e| match e {
                Error::Validation(m) => Error::Format(format!("object {}: {m}", i + 1)),
                other => other,
            })
        })
        .collect()
}
