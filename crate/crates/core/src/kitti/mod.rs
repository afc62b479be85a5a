//! Codecs for the on-disk formats: calibration text, object labels, 16-bit
//! depth PNGs, raw float32 point clouds, split lists and sample-mask images.

mod calib;
mod images;
mod labels;
mod pointcloud;
mod split;

pub use calib::{parse_calib, transform_cloud, CalibIntrinsics, CalibrationFile, FOCAL_MISMATCH_TOLERANCE};
pub use images::{read_depth_image, read_mask_image, write_depth_image, write_mask_image, DEPTH_SCALE};
pub use labels::{parse_labels, write_labels};
pub use pointcloud::{read_pointcloud, write_pointcloud, POINT_BYTES};
pub use split::{parse_split, SplitList};
