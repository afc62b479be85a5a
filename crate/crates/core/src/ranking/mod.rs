//! Rankings from metric tables and their agreement, measured as pairwise
//! inversions between a depth-metric ranking and a detector ranking.

mod concordance;
mod diagram;
mod rank;
mod table;

pub use concordance::{concordance_report, ConcordanceReport, MetricTotal, PairConcordance};
pub use diagram::{render_diagram, Arrow, RankingDiagram};
pub use rank::{inversion_count, normalized_distance, rank_models, Ranking};
pub use table::{Direction, MetricColumn, MetricTable};
