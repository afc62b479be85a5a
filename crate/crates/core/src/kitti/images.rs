use std::io::Cursor;

use image::{DynamicImage, GrayImage, ImageBuffer, ImageFormat, Luma};

use crate::error::{Error, Result};
use crate::pseudolidar::{DepthMap, SampleMask};

/// Depth quantization of 16-bit depth images: raw = meters × 256.
pub const DEPTH_SCALE: f64 = 256.0;

/// Decode a 16-bit single-channel PNG depth image. Raw 0 is an invalid pixel.
pub fn read_depth_image(bytes: &[u8]) -> Result<DepthMap> {
    let img = image::load_from_memory_with_format(bytes, ImageFormat::Png)?;
    let DynamicImage::ImageLuma16(buf) = img else {
        return Err(Error::Format(format!(
            "depth image must be 16-bit single-channel, got {:?}",
            img.color()
        )));
    };
    let (w, h) = buf.dimensions();
    let values = buf.pixels().map(|p| p.0[0] as f64 / DEPTH_SCALE).collect();
    DepthMap::from_values(w as usize, h as usize, values)
}

/// Encode as a 16-bit PNG. Depths are rounded to 1/256 m and saturate at
/// 65535/256 m; invalid pixels become 0.
pub fn write_depth_image(depth: &DepthMap) -> Result<Vec<u8>> {
    let raw: Vec<u16> = depth
        .values()
        .iter()
        .zip(depth.valid_mask())
        .map(|(&d, &ok)| {
            if ok {
                (d * DEPTH_SCALE).round().clamp(1.0, u16::MAX as f64) as u16
            } else {
                0
            }
        })
        .collect();
    let buf: ImageBuffer<Luma<u16>, Vec<u16>> =
        ImageBuffer::from_raw(depth.width() as u32, depth.height() as u32, raw)
            .ok_or_else(|| Error::Format("depth buffer size mismatch".into()))?;
    encode_png(DynamicImage::ImageLuma16(buf))
}

/// Sample mask as an 8-bit grayscale PNG: 255 selected, 0 otherwise.
pub fn write_mask_image(mask: &SampleMask) -> Result<Vec<u8>> {
    let raw: Vec<u8> = mask.selected().iter().map(|&s| if s { 255 } else { 0 }).collect();
    let buf = GrayImage::from_raw(mask.width() as u32, mask.height() as u32, raw)
        .ok_or_else(|| Error::Format("mask buffer size mismatch".into()))?;
    encode_png(DynamicImage::ImageLuma8(buf))
}

/// Decode an 8-bit grayscale mask; nonzero pixels are selected.
/// Returns (width, height, selected).
pub fn read_mask_image(bytes: &[u8]) -> Result<(usize, usize, Vec<bool>)> {
    let img = image::load_from_memory_with_format(bytes, ImageFormat::Png)?;
    let DynamicImage::ImageLuma8(buf) = img else {
        return Err(Error::Format(format!("mask must be 8-bit grayscale, got {:?}", img.color())));
    };
    let (w, h) = buf.dimensions();
    Ok((w as usize, h as usize, buf.pixels().map(|p| p.0[0] != 0).collect()))
}

fn encode_png(img: DynamicImage) -> Result<Vec<u8>> {
    let mut out = Cursor::new(Vec::new());
    img.write_to(&mut out, ImageFormat::Png)?;
    Ok(out.into_inner())
}
