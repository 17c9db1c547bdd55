//! Separable Gaussian filtering with replicated borders.

use crate::error::{Error, Result};
use crate::raster::{Px, RgbImage};
use crate::scalar::{real, Real};

/// Normalized 1-D sampled Gaussian. `kernel_size` must be odd and >= 3,
/// `sigma` positive.
pub fn gaussian_kernel<F: Real>(sigma: F, kernel_size: usize) -> Result<Vec<F>> {
    if kernel_size < 3 || kernel_size.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "kernel size must be odd and >= 3, got {kernel_size}"
        )));
    }
    if sigma <= F::zero() {
        return Err(Error::InvalidParameter("sigma must be positive".into()));
    }
    let radius = (kernel_size / 2) as i64;
    let two_sigma_sq = real::<F>(2.0) * sigma * sigma;
    let mut weights: Vec<F> = (-radius..=radius)
        .map(|i| (-real::<F>((i * i) as f64) / two_sigma_sq).exp())
        .collect();
    let mut sum = F::zero();
    for &w in &weights {
        sum = sum + w;
    }
    for w in &mut weights {
        *w = *w / sum;
    }
    Ok(weights)
}

/// Separable Gaussian blur of the whole image, one channel at a time.
/// Borders replicate the edge pixels; intermediate arithmetic stays in `F`
/// and the final store rounds half away from zero and clamps to `[0, 255]`.
pub fn gaussian_blur<F: Real>(image: &RgbImage, sigma: F, kernel_size: usize) -> Result<RgbImage> {
    let weights = gaussian_kernel(sigma, kernel_size)?;
    let (width, height) = image.dims();
    let rect = blur_rect(image, &weights, (0, height - 1), (0, width - 1));
    let mut data = Vec::with_capacity(3 * width as usize * height as usize);
    for rgb in rect {
        data.extend_from_slice(&rgb);
    }
    RgbImage::from_raw(width, height, data)
}

/// Blurred values over an inclusive (row, col) rectangle, row-major.
/// Matches `gaussian_blur` bit-for-bit on the covered pixels: the horizontal
/// pass reads the source image with column indices clamped to the image and
/// the vertical pass reads the horizontal pass with row indices clamped.
pub(crate) fn blur_rect<F: Real>(
    image: &RgbImage,
    weights: &[F],
    rows: (u32, u32),
    cols: (u32, u32),
) -> Vec<[u8; 3]> {
    let radius = (weights.len() / 2) as i64;
    let img_w = image.width() as i64;
    let img_h = image.height() as i64;
    let (r0, r1) = (rows.0 as i64, rows.1 as i64);
    let (c0, c1) = (cols.0 as i64, cols.1 as i64);
    debug_assert!(r0 <= r1 && r1 < img_h && c0 <= c1 && c1 < img_w);

    // Horizontal pass over the rows the vertical pass will consume.
    let h_row0 = (r0 - radius).max(0);
    let h_row1 = (r1 + radius).min(img_h - 1);
    let rect_w = (c1 - c0 + 1) as usize;
    let h_rows = (h_row1 - h_row0 + 1) as usize;
    let mut horizontal: Vec<[F; 3]> = vec![[F::zero(); 3]; h_rows * rect_w];
    for (ri, r) in (h_row0..=h_row1).enumerate() {
        for (ci, c) in (c0..=c1).enumerate() {
            let mut acc = [F::zero(); 3];
            for (k, &w) in weights.iter().enumerate() {
                let sc = (c + k as i64 - radius).clamp(0, img_w - 1);
                let rgb = image.get(Px::new(r as u32, sc as u32));
                for ch in 0..3 {
                    acc[ch] = acc[ch] + w * real::<F>(rgb[ch] as f64);
                }
            }
            horizontal[ri * rect_w + ci] = acc;
        }
    }

    let rect_h = (r1 - r0 + 1) as usize;
    let mut out = vec![[0u8; 3]; rect_h * rect_w];
    for (ri, r) in (r0..=r1).enumerate() {
        for ci in 0..rect_w {
            let mut acc = [F::zero(); 3];
            for (k, &w) in weights.iter().enumerate() {
                let sr = (r + k as i64 - radius).clamp(0, img_h - 1);
                let h = horizontal[(sr - h_row0) as usize * rect_w + ci];
                for ch in 0..3 {
                    acc[ch] = acc[ch] + w * h[ch];
                }
            }
            out[ri * rect_w + ci] = [quantize(acc[0]), quantize(acc[1]), quantize(acc[2])];
        }
    }
    out
}

/// Rounds half away from zero and clamps to the 8-bit range.
pub(crate) fn quantize<F: Real>(v: F) -> u8 {
    let rounded = v.round();
    if rounded <= F::zero() {
        0
    } else if rounded >= real::<F>(255.0) {
        255
    } else {
        rounded.to_u8().expect("value in range after clamp")
    }
}
