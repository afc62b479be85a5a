//! Pseudo-LiDAR generation from dense depth maps, LiDAR-like resampling,
//! depth-map error metrics, KITTI-style 3D detection AP, and tools for
//! comparing how depth models rank against the detectors built on them.
//!
//! Coordinates follow the rectified camera frame: x right, y down, z forward.

// `!(x > 0.0)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod depth_metrics;
pub mod detection;
pub mod error;
pub mod geometry;
pub mod kitti;
pub mod pseudolidar;
pub mod ranking;
pub mod reference_tables;

pub use error::{Error, Result};
