use std::fs;
use std::path::PathBuf;

use super::{read_text, write_file};
use crate::error::{Error, Result};
use crate::ranking::{concordance_report, render_diagram, ConcordanceReport, MetricTable};
use crate::reference_tables;

#[derive(Debug, Clone, PartialEq)]
pub struct RankConfig {
    /// Depth-metric table. When unset, the bundled reference tables are used
    /// and `det_tables` must be empty.
    pub depth_table: Option<PathBuf>,
    /// `(detector name, table path)` pairs.
    pub det_tables: Vec<(String, PathBuf)>,
    /// Detector column the detectors are ranked by.
    pub det_metric: String,
    /// Directory for one SVG diagram per (depth metric, detector) pair.
    pub diagram_dir: Option<PathBuf>,
}

impl Default for RankConfig {
    fn default() -> Self {
        Self {
            depth_table: None,
            det_tables: Vec::new(),
            det_metric: "ap-bev-mod".into(),
            diagram_dir: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankOutput {
    pub report: ConcordanceReport,
    /// `(file name, SVG document)` per pair, in report order.
    pub diagrams: Vec<(String, String)>,
}

pub fn cmd_rank(config: &RankConfig) -> Result<RankOutput> {
    let (depth, dets) = match &config.depth_table {
        None if !config.det_tables.is_empty() => {
            return Err(Error::Validation("detector tables given without a depth table".into()))
        }
        None => (reference_tables::depth_table()?, reference_tables::detector_tables()?),
        Some(path) => {
            let depth = load_table(path)?;
            if config.det_tables.is_empty() {
                return Err(Error::Validation("at least one detector table is required".into()));
            }
            let dets = config
                .det_tables
                .iter()
                .map(|(name, path)| Ok((name.clone(), load_table(path)?)))
                .collect::<Result<Vec<_>>>()?;
            (depth, dets)
        }
    };
    let report = concordance_report(&depth, &dets, &config.det_metric)?;
    let diagrams = report
        .pairs
        .iter()
        .map(|p| {
            let svg = render_diagram(&p.depth_ranking, &p.detector_ranking)?.to_svg();
            Ok((format!("{}__{}.svg", file_safe(&p.depth_metric), file_safe(&p.detector)), svg))
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(dir) = &config.diagram_dir {
        fs::create_dir_all(dir).map_err(|e| Error::from(e).in_file(dir))?;
        for (name, svg) in &diagrams {
            write_file(&dir.join(name), svg.as_bytes())?;
        }
    }
    Ok(RankOutput { report, diagrams })
}

fn load_table(path: &PathBuf) -> Result<MetricTable> {
    MetricTable::parse(&read_text(path)?).map_err(|e| e.in_file(path))
}

fn file_safe(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '.' { c } else { '_' })
        .collect()
}
