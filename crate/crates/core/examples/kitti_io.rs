//! Read and write the on-disk formats: calibration, labels, 16-bit depth
//! PNGs, point-cloud binaries and split lists.
//!
//!     cargo run --example kitti_io

use pseudo_lidar_eval::kitti::{
    parse_calib, parse_labels, parse_split, read_depth_image, read_pointcloud, write_depth_image, write_labels,
    write_pointcloud, CalibrationFile,
};
use pseudo_lidar_eval::pseudolidar::{dense_cloud, DepthMap};

const CALIB: &str = "\
P2: 721.5377 0 609.5593 44.85728 0 721.5377 172.854 0.2163791 0 0 1 0.002745884
R0_rect: 0.9999239 0.00983776 -0.007445048 -0.009869795 0.9999421 -0.004278459 0.007402527 0.004351614 0.9999631
Tr_velo_to_cam: 0.007533745 -0.9999714 -0.000616602 -0.004069766 0.01480249 0.0007280733 -0.9998902 -0.07631618 0.9998621 0.007523790 0.01480755 -0.2717806
";

fn main() -> pseudo_lidar_eval::Result<()> {
    let intrinsics = parse_calib(CALIB)?;
    println!("f = {}, cu = {}, cv = {}", intrinsics.f, intrinsics.cu, intrinsics.cv);
    let to_lidar = CalibrationFile::parse(CALIB)?.rect_to_velo()?;
    println!("camera -> LiDAR transform:{to_lidar}");

    let split = parse_split("000000\n000003\n000007\n")?;
    println!("split: {:?}", split.ids());

    let labels = parse_labels("Car 0.00 0 -1.58 587.01 173.33 614.12 200.12 1.65 1.67 3.64 -0.65 1.71 46.70 -1.59\n")?;
    print!("labels re-serialized: {}", write_labels(&labels));

    let k = intrinsics.with_size(8, 6)?;
    let depth = DepthMap::from_values(8, 6, (0..48).map(|i| 10.0 + i as f64 / 256.0).collect())?;
    let png = write_depth_image(&depth)?;
    assert_eq!(read_depth_image(&png)?, depth);
    println!("8x6 depth PNG: {} bytes, round trip exact", png.len());

    let cloud = dense_cloud(&depth, &k, None)?;
    let bin = write_pointcloud(&cloud);
    assert_eq!(read_pointcloud(&bin)?, cloud);
    println!("{} points -> {} bytes, round trip exact", cloud.len(), bin.len());
    Ok(())
}
