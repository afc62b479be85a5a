use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::table::{Direction, MetricTable};
use crate::error::{Error, Result};

/// Model ids ordered best first by one metric.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ranking {
    pub models: Vec<String>,
    pub metric: String,
    pub direction: Direction,
    /// Adjacent pairs with exactly equal values, ordered by id.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub ties: Vec<(String, String)>,
}

impl Ranking {
    pub fn position(&self, model: &str) -> Option<usize> {
        self.models.iter().position(|m| m == model)
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }
}

pub fn rank_models(table: &MetricTable, metric: &str) -> Result<Ranking> {
    let column = table.column(metric)?;
    let models = table.models();
    let mut order: Vec<usize> = (0..models.len()).collect();
    order.sort_by(|&a, &b| {
        let (va, vb) = (column.values[a], column.values[b]);
        let by_value = match column.direction {
            Direction::Lower => va.total_cmp(&vb),
            Direction::Higher => vb.total_cmp(&va),
        };
        by_value.then_with(|| models[a].cmp(&models[b]))
    });
    let ties: Vec<(String, String)> = order
        .windows(2)
        .filter(|w| column.values[w[0]] == column.values[w[1]])
        .map(|w| (models[w[0]].clone(), models[w[1]].clone()))
        .collect();
    if !ties.is_empty() {
        log::warn!("metric `{metric}` has tied values, broken by model id: {ties:?}");
    }
    Ok(Ranking {
        models: order.into_iter().map(|i| models[i].clone()).collect(),
        metric: metric.to_string(),
        direction: column.direction,
        ties,
    })
}

pub(crate) fn check_same_models(expected: &[String], got: &[String]) -> Result<()> {
    let a: BTreeSet<&String> = expected.iter().collect();
    let b: BTreeSet<&String> = got.iter().collect();
    if a != b || expected.len() != got.len() {
        return Err(Error::Alignment {
            missing: a.difference(&b).map(|s| s.to_string()).collect(),
            unexpected: b.difference(&a).map(|s| s.to_string()).collect(),
        });
    }
    Ok(())
}

/// Number of model pairs the two rankings order oppositely (Kendall tau
/// distance). With both rankings drawn as evenly spaced columns joined by
/// straight arrows, this is the number of arrow crossings.
pub fn inversion_count(a: &Ranking, b: &Ranking) -> Result<u64> {
    check_same_models(&a.models, &b.models)?;
    let pos_in_b: HashMap<&str, usize> = b.models.iter().enumerate().map(|(i, m)| (m.as_str(), i)).collect();
    let mut seq: Vec<usize> = a.models.iter().map(|m| pos_in_b[m.as_str()]).collect();
    let mut buf = vec![0; seq.len()];
    Ok(sort_counting(&mut seq, &mut buf))
}

// merge sort that returns the number of inversions it removed
fn sort_counting(xs: &mut [usize], buf: &mut [usize]) -> u64 {
    let n = xs.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = {
        let (lo, hi) = xs.split_at_mut(mid);
        let (blo, bhi) = buf.split_at_mut(mid);
        sort_counting(lo, blo) + sort_counting(hi, bhi)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if xs[i] <= xs[j] {
            buf[k] = xs[i];
            i += 1;
        } else {
            buf[k] = xs[j];
            j += 1;
            count += (mid - i) as u64;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&xs[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&xs[j..n]);
    xs.copy_from_slice(&buf[..n]);
    count
}

/// Inversions divided by the number of pairs; 0 for fewer than two models.
pub fn normalized_distance(count: u64, n: usize) -> f64 {
    let pairs = (n * n.saturating_sub(1) / 2) as f64;
    if pairs == 0.0 {
        0.0
    } else {
        count as f64 / pairs
    }
}
