//! Depth-estimation error metrics pooled over every valid pixel of a dataset.
//!
//! All sums are global: `n` is the number of valid ground-truth pixels across
//! all frames, not a per-image average.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pseudolidar::DepthMap;

/// δ thresholds: 1.25, 1.25², 1.25³.
pub const DELTA_THRESHOLDS: [f64; 3] = [1.25, 1.25 * 1.25, 1.25 * 1.25 * 1.25];

/// Predictions are clamped up to this before comparison.
pub const DEFAULT_MIN_PRED: f64 = 1e-3;

/// Pixel window `[top, bottom) x [left, right)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crop {
    pub top: usize,
    pub bottom: usize,
    pub left: usize,
    pub right: usize,
}

impl Crop {
    fn contains(&self, u: usize, v: usize) -> bool {
        (self.top..self.bottom).contains(&v) && (self.left..self.right).contains(&u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DepthEvalConfig {
    /// Ground-truth pixels deeper than this are skipped; predictions are
    /// clamped to `[min_pred, cap]`.
    pub cap: f64,
    pub min_pred: f64,
    pub crop: Option<Crop>,
    /// Rescale each prediction by median(gt) / median(pred) before clamping.
    pub median_scaling: bool,
}

impl DepthEvalConfig {
    pub fn with_cap(cap: f64) -> Self {
        Self {
            cap,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.cap > 0.0) || !(self.min_pred > 0.0) || self.min_pred > self.cap {
            return Err(Error::Validation(format!(
                "need 0 < min_pred <= cap, got min_pred={} cap={}",
                self.min_pred, self.cap
            )));
        }
        Ok(())
    }
}

impl Default for DepthEvalConfig {
    fn default() -> Self {
        Self {
            cap: 80.0,
            min_pred: DEFAULT_MIN_PRED,
            crop: None,
            median_scaling: false,
        }
    }
}

/// Mergeable running sums over evaluated pixels.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MetricAccumulator {
    pub n: u64,
    pub abs_rel: f64,
    pub sq_rel: f64,
    pub sq: f64,
    pub sq_log: f64,
    pub inliers: [u64; 3],
}

impl MetricAccumulator {
    /// Add one (ground truth, already clamped prediction) pair.
    pub fn push(&mut self, gt: f64, pred: f64) {
        let err = gt - pred;
        let log_err = gt.ln() - pred.ln();
        let ratio = (pred / gt).max(gt / pred);
        self.n += 1;
        self.abs_rel += err.abs() / gt;
        self.sq_rel += err * err / gt;
        self.sq += err * err;
        self.sq_log += log_err * log_err;
        for (count, tau) in self.inliers.iter_mut().zip(DELTA_THRESHOLDS) {
            if ratio < tau {
                *count += 1;
            }
        }
    }

    pub fn merge(&mut self, other: &MetricAccumulator) {
        self.n += other.n;
        self.abs_rel += other.abs_rel;
        self.sq_rel += other.sq_rel;
        self.sq += other.sq;
        self.sq_log += other.sq_log;
        for (a, b) in self.inliers.iter_mut().zip(other.inliers) {
            *a += b;
        }
    }

    pub fn finalize(&self, config: &DepthEvalConfig) -> Result<DepthMetricReport> {
        if self.n == 0 {
            return Err(Error::EmptyEvaluation);
        }
        let n = self.n as f64;
        let frac = |k: usize| self.inliers[k] as f64 / n;
        Ok(DepthMetricReport {
            abs_rel: self.abs_rel / n,
            sq_rel: self.sq_rel / n,
            rms: (self.sq / n).sqrt(),
            rms_log: (self.sq_log / n).sqrt(),
            delta1: frac(0),
            delta2: frac(1),
            delta3: frac(2),
            n: self.n,
            cap: config.cap,
            min_pred: config.min_pred,
            median_scaling: config.median_scaling,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DepthMetricReport {
    pub abs_rel: f64,
    pub sq_rel: f64,
    pub rms: f64,
    pub rms_log: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub delta3: f64,
    pub n: u64,
    pub cap: f64,
    /// Lower clamp applied to predictions (the upper clamp is `cap`).
    pub min_pred: f64,
    pub median_scaling: bool,
}

impl DepthMetricReport {
    pub fn to_table(&self) -> String {
        format!(
            "{:>9} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9}\n{:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>9.4}\n",
            "abs_rel", "sq_rel", "rms", "rms_log", "d<1.25", "d<1.25^2", "d<1.25^3",
            self.abs_rel, self.sq_rel, self.rms, self.rms_log, self.delta1, self.delta2, self.delta3
        )
    }
}

fn median(mut xs: Vec<f64>) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    xs.sort_by(f64::total_cmp);
    let mid = xs.len() / 2;
    Some(if xs.len() % 2 == 1 {
        xs[mid]
    } else {
        0.5 * (xs[mid - 1] + xs[mid])
    })
}

/// Evaluated pixels of one frame as (gt, raw prediction) pairs, row-major.
fn selected_pairs(pred: &DepthMap, gt: &DepthMap, config: &DepthEvalConfig) -> Vec<(f64, f64)> {
    let (width, height) = (gt.width(), gt.height());
    let mut pairs = Vec::new();
    for v in 0..height {
        for u in 0..width {
            if config.crop.is_some_and(|c| !c.contains(u, v)) {
                continue;
            }
            let Some(g) = gt.get(u, v) else { continue };
            if g > config.cap {
                continue;
            }
            pairs.push((g, pred.get(u, v).unwrap_or(0.0)));
        }
    }
    pairs
}

/// Sums for one frame.
pub fn accumulate(pred: &DepthMap, gt: &DepthMap, config: &DepthEvalConfig) -> Result<MetricAccumulator> {
    config.validate()?;
    pred.check_same_shape(gt.width(), gt.height())?;
    let pairs = selected_pairs(pred, gt, config);
    let scale = if config.median_scaling {
        let positive: Vec<f64> = pairs.iter().map(|p| p.1).filter(|&p| p > 0.0).collect();
        match (median(pairs.iter().map(|p| p.0).collect()), median(positive)) {
            (Some(mg), Some(mp)) => mg / mp,
            _ => 1.0,
        }
    } else {
        1.0
    };
    let mut acc = MetricAccumulator::default();
    for (g, p) in pairs {
        acc.push(g, (p * scale).clamp(config.min_pred, config.cap));
    }
    Ok(acc)
}

/// Pool all frames and finalize. Frames are accumulated in parallel and
/// merged in frame order, so the result does not depend on thread count.
pub fn evaluate_dataset(preds: &[DepthMap], gts: &[DepthMap], config: &DepthEvalConfig) -> Result<DepthMetricReport> {
    if preds.len() != gts.len() {
        return Err(Error::Validation(format!(
            "{} predictions for {} ground-truth frames",
            preds.len(),
            gts.len()
        )));
    }
    let per_frame: Vec<MetricAccumulator> = preds
        .par_iter()
        .zip(gts)
        .enumerate()
        .map(|(i, (p, g))| accumulate(p, g, config).map_err(|e| e.in_frame(i)))
        .collect::<Result<_>>()?;
    merge_in_order(&per_frame).finalize(config)
}

pub fn merge_in_order(parts: &[MetricAccumulator]) -> MetricAccumulator {
    parts.iter().fold(MetricAccumulator::default(), |mut acc, part| {
        acc.merge(part);
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn row(values: &[f64]) -> DepthMap {
        DepthMap::from_values(values.len(), 1, values.to_vec()).unwrap()
    }

    #[test]
    fn perfect_prediction() {
        let gt = row(&[2.0, 4.0, 10.0]);
        let cfg = DepthEvalConfig::default();
        let acc = accumulate(&gt, &gt, &cfg).unwrap();
        assert_eq!(acc.abs_rel, 0.0);
        assert_eq!(acc.sq, 0.0);
        assert_eq!(acc.inliers, [3, 3, 3]);
        let r = acc.finalize(&cfg).unwrap();
        assert_eq!((r.abs_rel, r.rms, r.rms_log), (0.0, 0.0, 0.0));
        assert_eq!((r.delta1, r.delta2, r.delta3), (1.0, 1.0, 1.0));
    }

    #[test]
    fn two_pixel_hand_case() {
        let cfg = DepthEvalConfig::default();
        let r = accumulate(&row(&[1.0, 5.0]), &row(&[2.0, 4.0]), &cfg)
            .unwrap()
            .finalize(&cfg)
            .unwrap();
        assert_eq!(r.abs_rel, 0.375);
        assert_eq!(r.rms, 1.0);
        // 5/4 is exactly 1.25, and the comparison is strict
        assert_eq!(r.delta1, 0.0);
        assert_eq!(r.sq_rel, 0.375);
        let rms_log = ((2f64.ln().powi(2) + 1.25f64.ln().powi(2)) / 2.0).sqrt();
        assert!((r.rms_log - rms_log).abs() < 1e-15);
        assert!((r.rms_log - 0.5149).abs() < 1e-4);
        assert_eq!(r.delta2, 0.5);
        // 1.25³ < 2
        assert_eq!(r.delta3, 0.5);
        assert_eq!(r.n, 2);
    }

    #[test]
    fn empty_is_error() {
        let cfg = DepthEvalConfig::default();
        let acc = accumulate(&row(&[1.0]), &DepthMap::invalid(1, 1), &cfg).unwrap();
        assert!(matches!(acc.finalize(&cfg), Err(Error::EmptyEvaluation)));
    }

    #[test]
    fn cap_and_clamp() {
        let cfg = DepthEvalConfig::with_cap(80.0);
        // 90 m ground truth is skipped; an invalid prediction is clamped, not skipped
        let acc = accumulate(&row(&[0.0, 100.0, 5.0]), &row(&[10.0, 50.0, 90.0]), &cfg).unwrap();
        assert_eq!(acc.n, 2);
        let expected = (10.0 - 1e-3) / 10.0 + (80.0 - 50.0) / 50.0;
        assert!((acc.abs_rel - expected).abs() < 1e-12);
    }

    #[test]
    fn crop_restricts_pixels() {
        let gt = DepthMap::filled(4, 4, 10.0).unwrap();
        let cfg = DepthEvalConfig {
            crop: Some(Crop { top: 1, bottom: 3, left: 0, right: 2 }),
            ..Default::default()
        };
        assert_eq!(accumulate(&gt, &gt, &cfg).unwrap().n, 4);
    }

    #[test]
    fn median_scaling_fixes_global_scale() {
        let gt = row(&[2.0, 4.0, 8.0]);
        let pred = row(&[1.0, 2.0, 4.0]);
        let mut cfg = DepthEvalConfig::default();
        assert!(accumulate(&pred, &gt, &cfg).unwrap().abs_rel > 0.0);
        cfg.median_scaling = true;
        assert_eq!(accumulate(&pred, &gt, &cfg).unwrap().abs_rel, 0.0);
    }

    #[test]
    fn shape_and_length_errors() {
        let cfg = DepthEvalConfig::default();
        assert!(matches!(
            accumulate(&row(&[1.0]), &row(&[1.0, 2.0]), &cfg),
            Err(Error::Shape { .. })
        ));
        let err = evaluate_dataset(&[row(&[1.0]), row(&[1.0])], &[row(&[1.0]), row(&[1.0, 2.0])], &cfg)
            .unwrap_err();
        assert!(matches!(err, Error::Frame { index: 1, .. }));
        assert!(evaluate_dataset(&[row(&[1.0])], &[], &cfg).is_err());
    }

    #[test]
    fn merge_matches_concatenation() {
        let cfg = DepthEvalConfig::default();
        let (p1, g1) = (row(&[1.0, 5.0]), row(&[2.0, 4.0]));
        let (p2, g2) = (row(&[3.0, 7.5, 9.0]), row(&[3.3, 6.0, 12.0]));
        let mut acc = accumulate(&p1, &g1, &cfg).unwrap();
        acc.merge(&accumulate(&p2, &g2, &cfg).unwrap());
        let joint = accumulate(
            &row(&[1.0, 5.0, 3.0, 7.5, 9.0]),
            &row(&[2.0, 4.0, 3.3, 6.0, 12.0]),
            &cfg,
        )
        .unwrap();
        assert_eq!(acc.n, joint.n);
        assert_eq!(acc.inliers, joint.inliers);
        assert!((acc.abs_rel - joint.abs_rel).abs() < 1e-14);
        assert!((acc.sq - joint.sq).abs() < 1e-12);
    }

    #[test]
    fn frame_order_does_not_matter() {
        let cfg = DepthEvalConfig::default();
        let preds = [row(&[1.0, 5.0]), row(&[3.0, 7.5])];
        let gts = [row(&[2.0, 4.0]), row(&[3.3, 6.0])];
        let a = evaluate_dataset(&preds, &gts, &cfg).unwrap();
        let b = evaluate_dataset(&[preds[1].clone(), preds[0].clone()], &[gts[1].clone(), gts[0].clone()], &cfg).unwrap();
        assert!((a.abs_rel - b.abs_rel).abs() < 1e-15);
        assert!((a.rms - b.rms).abs() < 1e-15);
        assert_eq!(a.delta1, b.delta1);
    }

    proptest! {
        #[test]
        fn scale_behaviour(
            pairs in proptest::collection::vec((0.5f64..60.0, 0.5f64..60.0), 1..40),
            alpha in 0.2f64..5.0,
        ) {
            let cfg = DepthEvalConfig::with_cap(1e6);
            let gt: Vec<f64> = pairs.iter().map(|p| p.0).collect();
            let pred: Vec<f64> = pairs.iter().map(|p| p.1).collect();
            let base = accumulate(&row(&pred), &row(&gt), &cfg).unwrap().finalize(&cfg).unwrap();
            let scaled_gt: Vec<f64> = gt.iter().map(|g| g * alpha).collect();
            let scaled_pred: Vec<f64> = pred.iter().map(|p| p * alpha).collect();
            let s = accumulate(&row(&scaled_pred), &row(&scaled_gt), &cfg).unwrap().finalize(&cfg).unwrap();
            let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * b.abs().max(1e-9);
            prop_assert!(close(s.abs_rel, base.abs_rel));
            prop_assert!(close(s.rms, alpha * base.rms));
            prop_assert!(close(s.sq_rel, alpha * base.sq_rel));
            prop_assert!((s.rms_log - base.rms_log).abs() <= 1e-9);
            prop_assert_eq!((s.delta1, s.delta2, s.delta3), (base.delta1, base.delta2, base.delta3));
            prop_assert!(base.delta1 <= base.delta2 && base.delta2 <= base.delta3);
        }
    }
}
