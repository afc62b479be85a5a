//! Lift a synthetic depth map into a dense pseudo-LiDAR cloud and write it
//! as a float32 binary.
//!
//!     cargo run --example backproject -- [OUT.bin]

use pseudo_lidar_eval::geometry::{backproject, project, CameraIntrinsics};
use pseudo_lidar_eval::kitti::{read_pointcloud, write_pointcloud};
use pseudo_lidar_eval::pseudolidar::{dense_cloud_bounded, DenseBounds, DepthMap};

fn main() -> pseudo_lidar_eval::Result<()> {
    let k = CameraIntrinsics::new(600.0, 180.0, 720.0, 1242, 375)?;

    let p = backproject(1200.0, 360.0, 10.0, &k)?;
    println!("pixel (1200, 360) at 10 m -> ({:.3}, {:.3}, {:.3})", p.x, p.y, p.z);
    let (u, v) = project(p, &k)?;
    println!("and back to pixel ({u:.3}, {v:.3})");

    // A flat road: depth grows as rows approach the horizon. The sky is invalid.
    let camera_height = 1.65;
    let mut depth = DepthMap::invalid(k.width, k.height);
    for v in 0..k.height {
        let below = v as f64 - k.cv;
        if below > 0.5 {
            let z = k.f * camera_height / below;
            for u in 0..k.width {
                depth.set(u, v, Some(z));
            }
        }
    }

    let bounds = DenseBounds {
        d_max: Some(80.0),
        h_max: Some(1.0),
        r_min_frac: Some(0.4),
    };
    let cloud = dense_cloud_bounded(&depth, &k, &bounds)?;
    println!("{} valid pixels -> {} points within 80 m", depth.valid_count(), cloud.len());

    let bytes = write_pointcloud(&cloud);
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| std::env::temp_dir().join("road.bin").display().to_string());
    std::fs::write(&out, &bytes)?;
    assert_eq!(read_pointcloud(&std::fs::read(&out)?)?, cloud);
    println!("wrote {} bytes to {out}", bytes.len());
    Ok(())
}
