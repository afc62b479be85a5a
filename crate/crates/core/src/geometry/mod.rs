//! Pinhole back-projection and rotated-box overlap.
//!
//! Everything here uses the KITTI camera frame: x right, y down, z forward.
//! The bird's-eye-view plane is x–z and yaw is KITTI `rotation_y`.

mod boxes;
mod camera;
mod polygon;

pub use boxes::{bev_iou, iou_3d, normalize_yaw, Box3D, RotatedBevBox};
pub use camera::{backproject, project, CameraIntrinsics, Point3};
pub use polygon::{convex_clip, polygon_area, signed_area, Point2, DEGENERATE_AREA};
