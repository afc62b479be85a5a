//! Published KITTI results for eight monocular depth models, and the AP of
//! three detectors trained on pseudo-LiDAR from each of them.

use crate::error::Result;
use crate::ranking::MetricTable;

pub const DEPTH: &str = include_str!("../fixtures/reference_tables/depth.csv");
pub const POINT_RCNN: &str = include_str!("../fixtures/reference_tables/point_rcnn.csv");
pub const VOXEL_RCNN: &str = include_str!("../fixtures/reference_tables/voxel_rcnn.csv");
pub const CENTERPOINT: &str = include_str!("../fixtures/reference_tables/centerpoint.csv");

pub fn depth_table() -> Result<MetricTable> {
    MetricTable::parse(DEPTH)
}

/// `(detector name, table)` for each detector.
pub fn detector_tables() -> Result<Vec<(String, MetricTable)>> {
    [("Point R-CNN", POINT_RCNN), ("Voxel R-CNN", VOXEL_RCNN), ("CenterPoint", CENTERPOINT)]
        .into_iter()
        .map(|(name, text)| Ok((name.to_string(), MetricTable::parse(text)?)))
        .collect()
}
