use serde::{Deserialize, Serialize};

use super::matching::{Outcome, ScoredOutcome};
use crate::error::{Error, Result};

/// Recall sampling used to integrate the precision envelope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ApMode {
    /// 11 points: 0, 0.1, …, 1.0.
    #[default]
    R11,
    /// 40 points: 1/40, 2/40, …, 1.0.
    R40,
}

impl ApMode {
    /// Recall sample points as (numerator, denominator).
    fn recall_points(self) -> impl Iterator<Item = (usize, usize)> {
        let (range, den) = match self {
            ApMode::R11 => (0..=10, 10),
            ApMode::R40 => (1..=40, 40),
        };
        range.map(move |i| (i, den))
    }
}

impl std::str::FromStr for ApMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "r11" => Ok(ApMode::R11),
            "r40" => Ok(ApMode::R40),
            other => Err(Error::Validation(format!("unknown AP mode `{other}`"))),
        }
    }
}

/// Interpolated average precision, as a percentage.
///
/// `outcomes` is the pooled list over all frames; ignored entries are
/// dropped and the rest are ranked by descending score (stable).
pub fn average_precision(outcomes: &[ScoredOutcome], counted_gt: usize, mode: ApMode) -> Result<f64> {
    if counted_gt == 0 {
        return Err(Error::UndefinedRecall);
    }
    let mut ranked: Vec<&ScoredOutcome> = outcomes.iter().filter(|o| o.outcome != Outcome::Ignored).collect();
    ranked.sort_by(|a, b| b.score.total_cmp(&a.score));

    // (true positives, precision) after each ranked detection
    let mut curve = Vec::with_capacity(ranked.len());
    let mut tp = 0usize;
    for (k, o) in ranked.iter().enumerate() {
        if o.outcome == Outcome::TruePositive {
            tp += 1;
        }
        curve.push((tp, tp as f64 / (k + 1) as f64));
    }
    // precision envelope: best precision at this recall or beyond
    let mut envelope: Vec<f64> = curve.iter().map(|c| c.1).collect();
    for i in (0..envelope.len().saturating_sub(1)).rev() {
        envelope[i] = envelope[i].max(envelope[i + 1]);
    }

    let mut total = 0.0;
    let mut count = 0usize;
    for (num, den) in mode.recall_points() {
        // recall >= num/den  <=>  tp * den >= num * counted_gt
        let first = curve.partition_point(|&(tp, _)| tp * den < num * counted_gt);
        total += envelope.get(first).copied().unwrap_or(0.0);
        count += 1;
    }
    Ok(100.0 * total / count as f64)
}
