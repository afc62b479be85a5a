//! Rotated bird's-eye-view and 3D overlap between boxes.
//!
//!     cargo run --example bev_overlap

use std::f64::consts::FRAC_PI_4;

use pseudo_lidar_eval::geometry::{bev_iou, iou_3d, Box3D, Point3, RotatedBevBox};

fn main() -> pseudo_lidar_eval::Result<()> {
    let square = RotatedBevBox::new(0.0, 0.0, 2.0, 2.0, 0.0)?;
    let shifted = RotatedBevBox::new(1.0, 0.0, 2.0, 2.0, 0.0)?;
    let turned = RotatedBevBox::new(0.0, 0.0, 2.0, 2.0, FRAC_PI_4)?;
    println!("half-width shift: {:.6}", bev_iou(&square, &shifted)?);
    println!("45 degree turn:   {:.6}", bev_iou(&square, &turned)?);
    for c in turned.corners() {
        println!("  corner ({:+.4}, {:+.4})", c.x, c.y);
    }

    let car = Box3D::new(Point3::new(2.0, 1.7, 15.0), 1.5, 1.6, 3.9, -1.6)?;
    let raised = Box3D::new(Point3::new(2.0, 1.2, 15.0), 1.5, 1.6, 3.9, -1.6)?;
    println!(
        "same footprint, raised 0.5 m: BEV {:.4}, 3D {:.4}",
        bev_iou(&car.bev()?, &raised.bev()?)?,
        iou_3d(&car, &raised)?
    );
    Ok(())
}
