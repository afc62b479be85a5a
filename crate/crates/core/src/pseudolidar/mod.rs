//! Pseudo-LiDAR point clouds from metric depth maps: the dense cloud (every
//! valid pixel) and the LiDAR-ray-sampled cloud.

mod cloud;
mod depth_map;
mod sampling;

pub use cloud::{dense_cloud, dense_cloud_bounded, r_min_row, CloudPoint, DenseBounds, PointCloud};
pub use depth_map::DepthMap;
pub use sampling::{
    build_sample_mask, kitti_velodyne_spec, sampled_cloud, sampled_cloud_with_mask, AngularWindow,
    LidarSamplingSpec, SampleMask, HDL64E_V_FOV_DEG,
};
