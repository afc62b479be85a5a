use serde::{Deserialize, Serialize};

use super::labels::ObjectLabel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Difficulty {
    Easy,
    Moderate,
    Hard,
}

impl Difficulty {
    pub const ALL: [Difficulty; 3] = [Difficulty::Easy, Difficulty::Moderate, Difficulty::Hard];

    pub fn name(self) -> &'static str {
        match self {
            Difficulty::Easy => "easy",
            Difficulty::Moderate => "moderate",
            Difficulty::Hard => "hard",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DifficultyThreshold {
    /// Minimum 2D box height in pixels.
    pub min_height: f64,
    pub max_occlusion: i32,
    pub max_truncation: f64,
}

/// Per-bucket admission thresholds, easy → hard.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DifficultyRules {
    pub levels: [DifficultyThreshold; 3],
}

impl Default for DifficultyRules {
    /// KITTI object benchmark thresholds.
    fn default() -> Self {
        let t = |min_height, max_occlusion, max_truncation| DifficultyThreshold {
            min_height,
            max_occlusion,
            max_truncation,
        };
        Self {
            levels: [t(40.0, 0, 0.15), t(25.0, 1, 0.30), t(25.0, 2, 0.50)],
        }
    }
}

impl DifficultyRules {
    pub fn threshold(&self, d: Difficulty) -> &DifficultyThreshold {
        &self.levels[d as usize]
    }

    /// Each harder bucket must admit everything the easier one does.
    pub fn is_monotone(&self) -> bool {
        self.levels.windows(2).all(|w| {
            w[1].min_height <= w[0].min_height
                && w[1].max_occlusion >= w[0].max_occlusion
                && w[1].max_truncation >= w[0].max_truncation
        })
    }

    /// Easiest bucket the object qualifies for, or `None` if it is too
    /// small, occluded or truncated even for hard.
    pub fn assign(&self, obj: &ObjectLabel) -> Option<Difficulty> {
        let height = obj.bbox_height();
        Difficulty::ALL.into_iter().find(|&d| {
            let t = self.threshold(d);
            height >= t.min_height && obj.occlusion <= t.max_occlusion && obj.truncation <= t.max_truncation
        })
    }
}

pub fn assign_difficulty(obj: &ObjectLabel, rules: &DifficultyRules) -> Option<Difficulty> {
    rules.assign(obj)
}
