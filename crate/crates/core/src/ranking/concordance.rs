use serde::{Deserialize, Serialize};

use super::rank::{check_same_models, inversion_count, normalized_distance, rank_models, Ranking};
use super::table::MetricTable;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairConcordance {
    pub depth_metric: String,
    pub detector: String,
    pub inversions: u64,
    pub normalized: f64,
    pub depth_ranking: Ranking,
    pub detector_ranking: Ranking,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricTotal {
    pub depth_metric: String,
    pub inversions: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcordanceReport {
    pub detector_metric: String,
    pub pairs: Vec<PairConcordance>,
    /// Inversions summed over detectors, per depth metric, in table order.
    pub totals: Vec<MetricTotal>,
    /// Depth metric with the fewest total inversions (first on ties).
    pub best_metric: String,
    /// Detectors grouped by identical rankings.
    pub detector_groups: Vec<Vec<String>>,
}

impl ConcordanceReport {
    pub fn pair(&self, depth_metric: &str, detector: &str) -> Option<&PairConcordance> {
        self.pairs
            .iter()
            .find(|p| p.depth_metric == depth_metric && p.detector == detector)
    }

    pub fn to_table(&self) -> String {
        let mut detectors: Vec<&str> = Vec::new();
        for p in &self.pairs {
            if !detectors.contains(&p.detector.as_str()) {
                detectors.push(&p.detector);
            }
        }
        let mut out = format!("{:<14}", "metric");
        for d in &detectors {
            out += &format!(" {d:>12}");
        }
        out += &format!(" {:>8}\n", "total");
        for t in &self.totals {
            out += &format!("{:<14}", t.depth_metric);
            for d in &detectors {
                let n = self.pair(&t.depth_metric, d).map_or(0, |p| p.inversions);
                out += &format!(" {n:>12}");
            }
            out += &format!(" {:>8}\n", t.inversions);
        }
        out += &format!("best depth metric: {}\n", self.best_metric);
        out
    }
}

/// Inversions between every depth-metric ranking and every detector ranking
/// (each detector ranked by `detector_metric`).
pub fn concordance_report(
    depth_table: &MetricTable,
    det_tables: &[(String, MetricTable)],
    detector_metric: &str,
) -> Result<ConcordanceReport> {
    if depth_table.columns().is_empty() {
        return Err(Error::Validation("depth table has no metrics".into()));
    }
    let mut det_rankings = Vec::with_capacity(det_tables.len());
    for (name, table) in det_tables {
        check_same_models(depth_table.models(), table.models()).map_err(|e| e.in_file(name))?;
        det_rankings.push((name.clone(), rank_models(table, detector_metric)?));
    }

    let mut pairs = Vec::new();
    let mut totals = Vec::new();
    for column in depth_table.columns() {
        let depth_ranking = rank_models(depth_table, &column.name)?;
        let mut total = 0;
        for (name, det_ranking) in &det_rankings {
            let inversions = inversion_count(&depth_ranking, det_ranking)?;
            total += inversions;
            pairs.push(PairConcordance {
                depth_metric: column.name.clone(),
                detector: name.clone(),
                inversions,
                normalized: normalized_distance(inversions, depth_ranking.len()),
                depth_ranking: depth_ranking.clone(),
                detector_ranking: det_ranking.clone(),
            });
        }
        totals.push(MetricTotal {
            depth_metric: column.name.clone(),
            inversions: total,
        });
    }
    let best_metric = totals
        .iter()
        .min_by_key(|t| t.inversions)
        .map(|t| t.depth_metric.clone())
        .unwrap_or_default();

    let mut detector_groups: Vec<(Vec<String>, &Vec<String>)> = Vec::new();
    for (name, r) in &det_rankings {
        match detector_groups.iter_mut().find(|(_, models)| *models == &r.models) {
            Some((names, _)) => names.push(name.clone()),
            None => detector_groups.push((vec![name.clone()], &r.models)),
        }
    }

    Ok(ConcordanceReport {
        detector_metric: detector_metric.to_string(),
        pairs,
        totals,
        best_metric,
        detector_groups: detector_groups.into_iter().map(|(names, _)| names).collect(),
    })
}
