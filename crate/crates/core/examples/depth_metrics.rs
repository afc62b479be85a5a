//! Pooled depth-error metrics over a few synthetic frames, with and without
//! median scaling.
//!
//!     cargo run --example depth_metrics

use pseudo_lidar_eval::depth_metrics::{evaluate_dataset, DepthEvalConfig};
use pseudo_lidar_eval::pseudolidar::DepthMap;

fn frame(width: usize, height: usize, f: impl Fn(usize, usize) -> f64) -> DepthMap {
    let values = (0..height).flat_map(|v| (0..width).map(move |u| (u, v))).map(|(u, v)| f(u, v)).collect();
    DepthMap::from_values(width, height, values).expect("valid size")
}

fn main() -> pseudo_lidar_eval::Result<()> {
    let (w, h) = (64, 48);
    let mut gts = Vec::new();
    let mut preds = Vec::new();
    for i in 0..4 {
        let gt = frame(w, h, |u, v| 5.0 + 0.9 * (u + v + 7 * i) as f64);
        // A model that over-estimates by 10% with a small row-dependent wobble.
        let pred = frame(w, h, |u, v| (5.0 + 0.9 * (u + v + 7 * i) as f64) * (1.1 + 0.02 * ((v % 5) as f64 - 2.0)));
        gts.push(gt);
        preds.push(pred);
    }

    let config = DepthEvalConfig::default();
    let report = evaluate_dataset(&preds, &gts, &config)?;
    println!("cap {} m, {} pixels (ground truth beyond the cap is skipped)", report.cap, report.n);
    print!("{}", report.to_table());

    let scaled = DepthEvalConfig {
        median_scaling: true,
        ..config
    };
    println!("with median scaling:");
    print!("{}", evaluate_dataset(&preds, &gts, &scaled)?.to_table());
    Ok(())
}
