//! Build the 64- and 16-beam virtual LiDAR masks for a KITTI camera, check
//! that the sparse one is contained in the dense one, and save both as PNG.
//!
//!     cargo run --example sample_mask -- [OUT_DIR]

use std::path::PathBuf;

use pseudo_lidar_eval::geometry::CameraIntrinsics;
use pseudo_lidar_eval::kitti::write_mask_image;
use pseudo_lidar_eval::pseudolidar::{build_sample_mask, kitti_velodyne_spec};

fn main() -> pseudo_lidar_eval::Result<()> {
    let out_dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let k = CameraIntrinsics::new(609.5593, 172.854, 721.5377, 1242, 375)?;
    let spec64 = kitti_velodyne_spec(&k);
    let spec16 = spec64.with_beams(16);

    let v = spec64.vertical_window(&k);
    let h = spec64.horizontal_window(&k);
    println!(
        "elevation {:.2}..{:.2} deg, azimuth {:.2}..{:.2} deg",
        v.start.to_degrees(),
        (v.start + v.extent).to_degrees(),
        h.start.to_degrees(),
        (h.start + h.extent).to_degrees()
    );

    let m64 = build_sample_mask(&k, &spec64)?;
    let m16 = build_sample_mask(&k, &spec16)?;
    println!("64 beams: {} pixels, 16 beams: {} pixels", m64.count(), m16.count());
    println!("rows above {} are never sampled", m64.first_row());
    println!("16-beam mask inside 64-beam mask: {}", m16.is_subset_of(&m64));

    for (name, mask) in [("mask64.png", &m64), ("mask16.png", &m16)] {
        let path = out_dir.join(name);
        std::fs::write(&path, write_mask_image(mask)?)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
