//! BEV and 3D average precision for a handful of hand-built frames.
//!
//!     cargo run --example detection_ap

use pseudo_lidar_eval::detection::{evaluate, ApMode, DetEvalConfig, Detection};
use pseudo_lidar_eval::geometry::{bev_iou, iou_3d, Box3D, Point3};
use pseudo_lidar_eval::kitti::parse_labels;

const GT: [&str; 2] = [
    "Car 0.00 0 -1.58 100.00 150.00 300.00 250.00 1.50 1.60 3.90 2.00 1.70 15.00 -1.60\n\
     Car 0.00 1 1.20 600.00 170.00 660.00 205.00 1.45 1.70 4.10 -4.00 1.65 32.00 1.30\n\
     DontCare -1 -1 -10 900.00 160.00 950.00 180.00 -1 -1 -1 -1000 -1000 -1000 -10\n",
    "Car 0.00 0 0.10 400.00 160.00 520.00 240.00 1.55 1.65 4.00 1.00 1.70 20.00 0.05\n",
];

fn main() -> pseudo_lidar_eval::Result<()> {
    let gts = GT.iter().map(|t| parse_labels(t)).collect::<Result<Vec<_>, _>>()?;

    // Slightly shifted copies of the ground truth, plus one false alarm.
    let mut dets: Vec<Vec<Detection>> = Vec::new();
    for (frame, labels) in gts.iter().enumerate() {
        let mut out = Vec::new();
        for (i, gt) in labels.iter().filter(|l| !l.is_dont_care()).enumerate() {
            let b = gt.box3d()?;
            let shifted = Box3D::new(
                Point3::new(b.location.x + 0.1, b.location.y, b.location.z + 0.15),
                b.h,
                b.w,
                b.l,
                b.rotation_y + 0.03,
            )?;
            println!(
                "frame {frame} object {i}: BEV IoU {:.3}, 3D IoU {:.3}",
                bev_iou(&shifted.bev()?, &b.bev()?)?,
                iou_3d(&shifted, &b)?
            );
            out.push(Detection::new("Car", shifted, 0.9 - 0.1 * i as f64));
        }
        dets.push(out);
    }
    dets[1].push(Detection::new("Car", Box3D::new(Point3::new(-8.0, 1.7, 12.0), 1.5, 1.6, 3.9, 0.0)?, 0.95));

    for mode in [ApMode::R11, ApMode::R40] {
        let config = DetEvalConfig {
            mode,
            ..DetEvalConfig::default()
        };
        let report = evaluate(&dets, &gts, &config)?;
        println!("{mode:?}");
        print!("{}", report.to_table());
    }
    Ok(())
}
