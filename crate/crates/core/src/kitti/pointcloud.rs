use crate::error::{Error, Result};
use crate::pseudolidar::{CloudPoint, PointCloud};

/// Bytes per point: x, y, z, intensity as little-endian f32.
pub const POINT_BYTES: usize = 16;

pub fn write_pointcloud(cloud: &PointCloud) -> Vec<u8> {
    let mut out = Vec::with_capacity(cloud.len() * POINT_BYTES);
    for p in &cloud.points {
        for v in [p.x, p.y, p.z, p.intensity] {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    out
}

pub fn read_pointcloud(bytes: &[u8]) -> Result<PointCloud> {
    if !bytes.len().is_multiple_of(POINT_BYTES) {
        return Err(Error::Truncation(bytes.len()));
    }
    let f = |b: &[u8]| f32::from_le_bytes(b.try_into().unwrap());
    Ok(bytes
        .chunks_exact(POINT_BYTES)
        .map(|c| CloudPoint::new(f(&c[0..4]), f(&c[4..8]), f(&c[8..12]), f(&c[12..16])))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_and_single() {
        assert!(write_pointcloud(&PointCloud::default()).is_empty());
        let cloud = PointCloud {
            points: vec![CloudPoint::new(1.0, 2.0, 3.0, 1.0)],
        };
        let bytes = write_pointcloud(&cloud);
        assert_eq!(bytes.len(), 16);
        assert_eq!(&bytes[..4], &1.0f32.to_le_bytes());
        assert_eq!(read_pointcloud(&bytes).unwrap(), cloud);
    }

    #[test]
    fn truncated() {
        assert!(matches!(read_pointcloud(&[0u8; 17]), Err(Error::Truncation(17))));
    }

    proptest! {
        #[test]
        fn bit_exact(bits in proptest::collection::vec(any::<u32>(), 0..64)) {
            let bits = &bits[..bits.len() / 4 * 4];
            let bytes: Vec<u8> = bits.iter().flat_map(|b| f32::from_bits(*b).to_le_bytes()).collect();
            prop_assert_eq!(write_pointcloud(&read_pointcloud(&bytes).unwrap()), bytes);
        }
    }
}
