use serde::{Deserialize, Serialize};

use super::difficulty::{Difficulty, DifficultyRules};
use super::labels::{Detection, ObjectLabel};
use crate::error::Result;
use crate::geometry::{bev_iou, iou_3d, Box3D};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IouKind {
    Bev,
    ThreeD,
}

impl IouKind {
    pub fn iou(self, a: &Box3D, b: &Box3D) -> Result<f64> {
        match self {
            IouKind::Bev => bev_iou(&a.bev()?, &b.bev()?),
            IouKind::ThreeD => iou_3d(a, b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    TruePositive,
    FalsePositive,
    /// Matched an object outside the evaluated difficulty; not scored.
    Ignored,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoredOutcome {
    pub score: f64,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FrameMatch {
    /// One entry per detection of the target class, in descending score order.
    pub outcomes: Vec<ScoredOutcome>,
    /// Ground-truth objects whose difficulty is at most the evaluated one.
    pub counted_gt: usize,
}

/// Ground truth of the target class with its difficulty, in input order.
pub(crate) fn target_objects(
    gts: &[ObjectLabel],
    class_name: &str,
    rules: &DifficultyRules,
) -> Result<Vec<(Box3D, Option<Difficulty>)>> {
    gts.iter()
        .filter(|g| g.class_name == class_name)
        .map(|g| Ok((g.box3d()?, rules.assign(g))))
        .collect()
}

/// Indices of target-class detections, highest score first; equal scores
/// keep input order.
pub(crate) fn score_order(dets: &[Detection], class_name: &str) -> Vec<usize> {
    let mut order: Vec<usize> = (0..dets.len()).filter(|&i| dets[i].class_name == class_name).collect();
    order.sort_by(|&a, &b| dets[b].score.total_cmp(&dets[a].score));
    order
}

/// Greedy score-ordered matching for one frame.
///
/// Each detection takes the unmatched ground-truth object with the highest
/// IoU at or above `threshold` (lowest index on ties). Matching a counted
/// object is a true positive, matching an object that is harder than
/// `difficulty` (or unassignable) is ignored, and no match is a false positive.
pub fn match_frame<F>(
    dets: &[Detection],
    gts: &[ObjectLabel],
    class_name: &str,
    difficulty: Difficulty,
    rules: &DifficultyRules,
    iou: F,
    threshold: f64,
) -> Result<FrameMatch>
where
    F: Fn(&Box3D, &Box3D) -> Result<f64>,
{
    let objects = target_objects(gts, class_name, rules)?;
    let counted = |d: Option<Difficulty>| d.is_some_and(|d| d <= difficulty);
    let mut taken = vec![false; objects.len()];
    let mut outcomes = Vec::new();
    for i in score_order(dets, class_name) {
        let det = &dets[i];
        let mut best: Option<(usize, f64)> = None;
        for (j, (gt_box, _)) in objects.iter().enumerate() {
            if taken[j] {
                continue;
            }
            let overlap = iou(&det.box3d, gt_box)?;
            if overlap >= threshold && best.is_none_or(|(_, b)| overlap > b) {
                best = Some((j, overlap));
            }
        }
        let outcome = match best {
            Some((j, _)) => {
                taken[j] = true;
                if counted(objects[j].1) {
                    Outcome::TruePositive
                } else {
                    Outcome::Ignored
                }
            }
            None => Outcome::FalsePositive,
        };
        outcomes.push(ScoredOutcome {
            score: det.score,
            outcome,
        });
    }
    Ok(FrameMatch {
        outcomes,
        counted_gt: objects.iter().filter(|o| counted(o.1)).count(),
    })
}
