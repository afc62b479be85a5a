//! KITTI-style 3D detection evaluation: difficulty buckets, greedy matching
//! under BEV or 3D IoU, and interpolated average precision.

mod ap;
mod difficulty;
mod labels;
mod matching;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

pub use ap::{average_precision, ApMode};
pub use difficulty::{assign_difficulty, Difficulty, DifficultyRules, DifficultyThreshold};
pub use labels::{Detection, GtObject, ObjectLabel, DONT_CARE};
pub use matching::{match_frame, FrameMatch, IouKind, Outcome, ScoredOutcome};

use crate::error::{Error, Result};

/// IoU threshold for each difficulty, easy → hard.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IouThresholds(pub [f64; 3]);

impl IouThresholds {
    /// 0.7 for easy, 0.5 for moderate and hard.
    pub const PROTOCOL: IouThresholds = IouThresholds([0.7, 0.5, 0.5]);
    /// Stock KITTI car evaluation: 0.7 everywhere.
    pub const STOCK_CAR: IouThresholds = IouThresholds([0.7, 0.7, 0.7]);

    pub fn get(&self, d: Difficulty) -> f64 {
        self.0[d as usize]
    }
}

impl Default for IouThresholds {
    fn default() -> Self {
        Self::PROTOCOL
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetEvalConfig {
    pub class_name: String,
    pub rules: DifficultyRules,
    pub mode: ApMode,
    pub thresholds: IouThresholds,
}

impl Default for DetEvalConfig {
    fn default() -> Self {
        Self {
            class_name: "Car".into(),
            rules: DifficultyRules::default(),
            mode: ApMode::R11,
            thresholds: IouThresholds::PROTOCOL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApPair {
    pub ap_bev: f64,
    pub ap_3d: f64,
}

/// AP per difficulty; `None` where no ground truth was counted.
#[derive(Debug, Clone, PartialEq)]
pub struct APReport {
    pub class_name: String,
    pub mode: ApMode,
    pub entries: [Option<ApPair>; 3],
}

impl APReport {
    pub fn get(&self, d: Difficulty) -> Option<ApPair> {
        self.entries[d as usize]
    }

    /// `{class: {difficulty: {ap_bev, ap_3d} | null}}`
    pub fn to_document(&self) -> Value {
        let mut per_difficulty = Map::new();
        for d in Difficulty::ALL {
            let v = match self.get(d) {
                Some(p) => json!({ "ap_bev": p.ap_bev, "ap_3d": p.ap_3d }),
                None => Value::Null,
            };
            per_difficulty.insert(d.name().to_string(), v);
        }
        let mut doc = Map::new();
        doc.insert(self.class_name.clone(), Value::Object(per_difficulty));
        Value::Object(doc)
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("{} ({:?})\n{:<10} {:>8} {:>8}\n", self.class_name, self.mode, "", "AP_BEV", "AP_3D");
        for d in Difficulty::ALL {
            match self.get(d) {
                Some(p) => out += &format!("{:<10} {:>8.2} {:>8.2}\n", d.name(), p.ap_bev, p.ap_3d),
                None => out += &format!("{:<10} {:>8} {:>8}\n", d.name(), "-", "-"),
            }
        }
        out
    }
}

/// Pool per-frame matches for one difficulty and IoU kind and compute AP.
pub fn evaluate_one(
    dets: &[Vec<Detection>],
    gts: &[Vec<ObjectLabel>],
    config: &DetEvalConfig,
    difficulty: Difficulty,
    kind: IouKind,
) -> Result<f64> {
    let threshold = config.thresholds.get(difficulty);
    let frames: Vec<FrameMatch> = dets
        .par_iter()
        .zip(gts)
        .enumerate()
        .map(|(i, (d, g))| {
            match_frame(d, g, &config.class_name, difficulty, &config.rules, |a, b| kind.iou(a, b), threshold)
                .map_err(|e| e.in_frame(i))
        })
        .collect::<Result<_>>()?;
    let counted: usize = frames.iter().map(|f| f.counted_gt).sum();
    let pooled: Vec<ScoredOutcome> = frames.into_iter().flat_map(|f| f.outcomes).collect();
    average_precision(&pooled, counted, config.mode)
}

/// AP_BEV and AP_3D for every difficulty.
pub fn evaluate(dets: &[Vec<Detection>], gts: &[Vec<ObjectLabel>], config: &DetEvalConfig) -> Result<APReport> {
    if dets.len() != gts.len() {
        return Err(Error::Validation(format!(
            "{} detection frames for {} ground-truth frames",
            dets.len(),
            gts.len()
        )));
    }
    let mut entries = [None; 3];
    for d in Difficulty::ALL {
        let bev = evaluate_one(dets, gts, config, d, IouKind::Bev);
        let three_d = evaluate_one(dets, gts, config, d, IouKind::ThreeD);
        entries[d as usize] = match (bev, three_d) {
            (Ok(ap_bev), Ok(ap_3d)) => Some(ApPair { ap_bev, ap_3d }),
            (Err(Error::UndefinedRecall), _) | (_, Err(Error::UndefinedRecall)) => {
                log::warn!("no counted {} objects for {}; AP left empty", config.class_name, d.name());
                None
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
    }
    Ok(APReport {
        class_name: config.class_name.clone(),
        mode: config.mode,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point3;

    fn car(x: f64, z: f64, yaw: f64) -> ObjectLabel {
        ObjectLabel {
            class_name: "Car".into(),
            truncation: 0.0,
            occlusion: 0,
            alpha: 0.0,
            bbox2d: [0.0, 0.0, 60.0, 45.0],
            h: 1.5,
            w: 1.6,
            l: 3.9,
            location: Point3::new(x, 1.7, z),
            rotation_y: yaw,
            score: None,
        }
    }

    fn as_dets(gts: &[ObjectLabel]) -> Vec<Detection> {
        gts.iter()
            .enumerate()
            .map(|(i, g)| Detection::new("Car", g.box3d().unwrap(), 1.0 - 0.1 * i as f64))
            .collect()
    }

    fn scene() -> Vec<Vec<ObjectLabel>> {
        vec![
            vec![car(0.0, 10.0, 0.1), car(4.0, 20.0, -1.2)],
            vec![car(-3.0, 15.0, 1.5)],
            vec![car(2.0, 30.0, 0.0), car(-6.0, 8.0, 3.0), car(6.0, 40.0, -2.0)],
        ]
    }

    #[test]
    fn perfect_detections() {
        let gts = scene();
        let dets: Vec<_> = gts.iter().map(|g| as_dets(g)).collect();
        for mode in [ApMode::R11, ApMode::R40] {
            let cfg = DetEvalConfig { mode, ..Default::default() };
            let r = evaluate(&dets, &gts, &cfg).unwrap();
            for d in Difficulty::ALL {
                assert_eq!(r.get(d), Some(ApPair { ap_bev: 100.0, ap_3d: 100.0 }));
            }
        }
    }

    #[test]
    fn empty_detections() {
        let gts = scene();
        let dets = vec![Vec::new(); gts.len()];
        let r = evaluate(&dets, &gts, &DetEvalConfig::default()).unwrap();
        for d in Difficulty::ALL {
            assert_eq!(r.get(d), Some(ApPair { ap_bev: 0.0, ap_3d: 0.0 }));
        }
    }

    #[test]
    fn absent_difficulty_is_null() {
        let mut gts = scene();
        for g in gts.iter_mut().flatten() {
            g.bbox2d[3] = 30.0; // moderate only
        }
        let dets: Vec<_> = gts.iter().map(|g| as_dets(g)).collect();
        let r = evaluate(&dets, &gts, &DetEvalConfig::default()).unwrap();
        assert_eq!(r.get(Difficulty::Easy), None);
        assert!(r.get(Difficulty::Moderate).is_some());
        let doc = r.to_document();
        assert!(doc["Car"]["easy"].is_null());
        assert_eq!(doc["Car"]["hard"]["ap_bev"], 100.0);
    }

    #[test]
    fn frame_count_mismatch() {
        assert!(evaluate(&[vec![]], &[], &DetEvalConfig::default()).is_err());
    }
}
