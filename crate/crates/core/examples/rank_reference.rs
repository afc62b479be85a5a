//! Compare how depth metrics and detectors rank the same depth models, using
//! the bundled reference tables, and write the ranking diagrams.
//!
//!     cargo run --example rank_reference -- [OUT_DIR]

use std::path::PathBuf;

use pseudo_lidar_eval::ranking::{concordance_report, inversion_count, rank_models, render_diagram};
use pseudo_lidar_eval::reference_tables;

fn main() -> pseudo_lidar_eval::Result<()> {
    let out_dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let depth = reference_tables::depth_table()?;
    let detectors = reference_tables::detector_tables()?;

    let report = concordance_report(&depth, &detectors, "ap-bev-mod")?;
    print!("{}", report.to_table());
    println!("detectors with identical rankings: {:?}", report.detector_groups);

    let by_abs_rel = rank_models(&depth, "abs-rel")?;
    let (name, table) = &detectors[0];
    let by_ap = rank_models(table, "ap-bev-mod")?;
    println!("abs-rel order:     {}", by_abs_rel.models.join(" > "));
    println!("{name} order: {}", by_ap.models.join(" > "));
    println!("crossings: {}", inversion_count(&by_abs_rel, &by_ap)?);

    let path = out_dir.join("abs-rel_vs_point-rcnn.svg");
    std::fs::write(&path, render_diagram(&by_abs_rel, &by_ap)?.to_svg())?;
    println!("wrote {}", path.display());
    Ok(())
}
