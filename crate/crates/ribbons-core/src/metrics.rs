//! Full-reference image quality metrics: PSNR over all pixels and channels,
//! and single-scale SSIM on luminance.

use serde::Serialize;

use crate::blur::gaussian_kernel;
use crate::error::{Error, Result};
use crate::inpaint::luminance;
use crate::raster::RgbImage;
use crate::scalar::{real, Real};

/// 8-bit dynamic range peak.
pub const PEAK: f64 = 255.0;

/// SSIM window and constants from the standard single-scale definition.
pub const SSIM_WINDOW: usize = 11;
pub const SSIM_SIGMA: f64 = 1.5;
pub const SSIM_K1: f64 = 0.01;
pub const SSIM_K2: f64 = 0.03;

/// PSNR/SSIM pair; identical images score (+inf, 1.0).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct QualityScore<F> {
    pub psnr: F,
    pub ssim: F,
}

fn check_dims(reference: &RgbImage, test: &RgbImage) -> Result<()> {
    if reference.dims() != test.dims() {
        return Err(Error::DimensionMismatch {
            expected_width: reference.width(),
            expected_height: reference.height(),
            width: test.width(),
            height: test.height(),
        });
    }
    Ok(())
}

/// `10 log10(255^2 / MSE)` with the MSE averaged over all pixels and all
/// three channels; returns `+inf` for identical images. The squared-error
/// sum is accumulated exactly in integers.
pub fn psnr<F: Real>(reference: &RgbImage, test: &RgbImage) -> Result<F> {
    check_dims(reference, test)?;
    let mut sq_sum = 0u64;
    for (&a, &b) in reference.as_raw().iter().zip(test.as_raw()) {
        let d = a as i64 - b as i64;
        sq_sum += (d * d) as u64;
    }
    if sq_sum == 0 {
        return Ok(F::infinity());
    }
    let mse = real::<F>(sq_sum as f64) / real::<F>(reference.as_raw().len() as f64);
    Ok(real::<F>(10.0) * (real::<F>(PEAK * PEAK) / mse).log10())
}

/// Single-scale SSIM on Rec. 601 luminance: 11x11 Gaussian window with
/// sigma 1.5, K1 = 0.01, K2 = 0.03, dynamic range 255, averaged over all
/// window positions fully inside the image.
pub fn ssim<F: Real>(reference: &RgbImage, test: &RgbImage) -> Result<F> {
    check_dims(reference, test)?;
    let (width, height) = reference.dims();
    if (width as usize) < SSIM_WINDOW || (height as usize) < SSIM_WINDOW {
        return Err(Error::InvalidParameter(format!(
            "SSIM needs at least {SSIM_WINDOW}x{SSIM_WINDOW} images, got {width}x{height}"
        )));
    }
    let window = gaussian_kernel::<F>(real(SSIM_SIGMA), SSIM_WINDOW)?;
    let w = width as usize;
    let h = height as usize;

    let x: Vec<F> = reference.as_raw().chunks_exact(3).map(|p| luminance([p[0], p[1], p[2]])).collect();
    let y: Vec<F> = test.as_raw().chunks_exact(3).map(|p| luminance([p[0], p[1], p[2]])).collect();
    let xx: Vec<F> = x.iter().map(|&v| v * v).collect();
    let yy: Vec<F> = y.iter().map(|&v| v * v).collect();
    let xy: Vec<F> = x.iter().zip(&y).map(|(&a, &b)| a * b).collect();

    let mu_x = window_filter(&x, w, h, &window);
    let mu_y = window_filter(&y, w, h, &window);
    let e_xx = window_filter(&xx, w, h, &window);
    let e_yy = window_filter(&yy, w, h, &window);
    let e_xy = window_filter(&xy, w, h, &window);

    let c1 = real::<F>((SSIM_K1 * PEAK) * (SSIM_K1 * PEAK));
    let c2 = real::<F>((SSIM_K2 * PEAK) * (SSIM_K2 * PEAK));
    let two = real::<F>(2.0);

    let mut sum = F::zero();
    for i in 0..mu_x.len() {
        let (mx, my) = (mu_x[i], mu_y[i]);
        let var_x = e_xx[i] - mx * mx;
        let var_y = e_yy[i] - my * my;
        let cov = e_xy[i] - mx * my;
        let value = ((two * mx * my + c1) * (two * cov + c2))
            / ((mx * mx + my * my + c1) * (var_x + var_y + c2));
        sum = sum + value;
    }
    Ok(sum / real::<F>(mu_x.len() as f64))
}

/// Separable weighted filtering over all window positions fully inside the
/// plane ("valid" correlation); output is (w - k + 1) x (h - k + 1).
fn window_filter<F: Real>(plane: &[F], w: usize, h: usize, window: &[F]) -> Vec<F> {
    let k = window.len();
    let out_w = w - k + 1;
    let out_h = h - k + 1;
    let mut horizontal = vec![F::zero(); h * out_w];
    for row in 0..h {
        for col in 0..out_w {
            let mut acc = F::zero();
            for (j, &wj) in window.iter().enumerate() {
                acc = acc + wj * plane[row * w + col + j];
            }
            horizontal[row * out_w + col] = acc;
        }
    }
    let mut out = vec![F::zero(); out_h * out_w];
    for row in 0..out_h {
        for col in 0..out_w {
            let mut acc = F::zero();
            for (j, &wj) in window.iter().enumerate() {
                acc = acc + wj * horizontal[(row + j) * out_w + col];
            }
            out[row * out_w + col] = acc;
        }
    }
    out
}

/// Both metrics at once.
pub fn quality<F: Real>(reference: &RgbImage, test: &RgbImage) -> Result<QualityScore<F>> {
    Ok(QualityScore { psnr: psnr(reference, test)?, ssim: ssim(reference, test)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raster::Px;

    fn textured(width: u32, height: u32) -> RgbImage {
        RgbImage::from_fn(width, height, |r, c| {
            let v = 128.0
                + 60.0 * (r as f64 * 0.31).sin()
                + 40.0 * (c as f64 * 0.17).cos();
            let v = v.clamp(0.0, 255.0) as u8;
            [v, v.wrapping_add(10), v.wrapping_sub(7)]
        })
        .unwrap()
    }

    #[test]
    fn psnr_identical_is_infinite() {
        let img = textured(32, 24);
        assert!(psnr::<f64>(&img, &img).unwrap().is_infinite());
    }

    #[test]
    fn psnr_one_level_offset_closed_form() {
        let a = RgbImage::from_fn(40, 30, |r, c| [((r + c) % 200) as u8; 3]).unwrap();
        let b = RgbImage::from_fn(40, 30, |r, c| [((r + c) % 200) as u8 + 1; 3]).unwrap();
        let got = psnr::<f64>(&a, &b).unwrap();
        let want = 10.0 * (255.0f64 * 255.0).log10();
        assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        assert!((want - 48.130803608679).abs() < 1e-9);
    }

    #[test]
    fn psnr_full_swing_is_zero_db() {
        let black = RgbImage::from_pixel(16, 16, [0, 0, 0]).unwrap();
        let white = RgbImage::from_pixel(16, 16, [255, 255, 255]).unwrap();
        assert_eq!(psnr::<f64>(&black, &white).unwrap(), 0.0);
    }

    #[test]
    fn psnr_strictly_decreases_with_error_magnitude() {
        let base = RgbImage::from_pixel(24, 24, [100, 100, 100]).unwrap();
        let mut last = f64::INFINITY;
        for k in 1..=8u8 {
            let shifted = RgbImage::from_pixel(24, 24, [100 + k, 100 + k, 100 + k]).unwrap();
            let p = psnr::<f64>(&base, &shifted).unwrap();
            assert!(p < last);
            last = p;
        }
    }

    #[test]
    fn psnr_rejects_dimension_mismatch() {
        let a = RgbImage::new(16, 16).unwrap();
        let b = RgbImage::new(17, 16).unwrap();
        assert!(psnr::<f64>(&a, &b).is_err());
    }

    #[test]
    fn ssim_identical_is_exactly_one() {
        let img = textured(48, 32);
        assert_eq!(ssim::<f64>(&img, &img).unwrap(), 1.0);
    }

    #[test]
    fn ssim_constant_pair_closed_form() {
        // Zero variances collapse SSIM to the luminance term.
        let a = RgbImage::from_pixel(32, 32, [100, 100, 100]).unwrap();
        let b = RgbImage::from_pixel(32, 32, [110, 110, 110]).unwrap();
        let c1 = (SSIM_K1 * PEAK) * (SSIM_K1 * PEAK);
        let want = (2.0 * 100.0 * 110.0 + c1) / (100.0f64 * 100.0 + 110.0 * 110.0 + c1);
        let got = ssim::<f64>(&a, &b).unwrap();
        assert!((got - want).abs() < 1e-9, "{got} vs {want}");
    }

    #[test]
    fn ssim_inverted_image_is_strongly_negative() {
        let img = textured(64, 64);
        let inverted = RgbImage::from_fn(64, 64, |r, c| {
            let [x, y, z] = img.get(Px::new(r, c));
            [255 - x, 255 - y, 255 - z]
        })
        .unwrap();
        let got = ssim::<f64>(&img, &inverted).unwrap();
        assert!(got < -0.2, "expected strongly negative, got {got}");
    }

    #[test]
    fn ssim_rejects_images_smaller_than_window() {
        let a = RgbImage::new(10, 32).unwrap();
        assert!(ssim::<f64>(&a, &a).is_err());
    }

    #[test]
    fn ssim_symmetry() {
        let a = textured(32, 32);
        let b = RgbImage::from_fn(32, 32, |r, c| [((r * 11 + c * 23) % 256) as u8; 3]).unwrap();
        let ab = ssim::<f64>(&a, &b).unwrap();
        let ba = ssim::<f64>(&b, &a).unwrap();
        assert!((ab - ba).abs() < 1e-12);
    }
}
