//! Deterministic synthetic evaluation corpus: five 512x512 textures
//! (gradients, periodic patterns, filtered noise) so benchmarks and the
//! acceptance suite run without downloading any dataset.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blur::gaussian_blur;
use crate::raster::RgbImage;

/// Edge length of every corpus texture.
pub const CORPUS_SIZE: u32 = 512;

/// The five shipped textures as (name, image) pairs, in a fixed order.
pub fn synthetic_corpus() -> Vec<(String, RgbImage)> {
    vec![
        ("ramp".to_string(), ramp()),
        ("radial".to_string(), radial()),
        ("stripes".to_string(), stripes()),
        ("plaid".to_string(), plaid()),
        ("speckle".to_string(), speckle()),
    ]
}

fn to_u8(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}

/// Linear gradients: diagonal, vertical and horizontal ramps per channel.
fn ramp() -> RgbImage {
    let n = CORPUS_SIZE;
    let span = (n - 1) as f64;
    RgbImage::from_fn(n, n, |r, c| {
        [
            to_u8(255.0 * (r as f64 + c as f64) / (2.0 * span)),
            to_u8(255.0 * r as f64 / span),
            to_u8(255.0 * c as f64 / span),
        ]
    })
    .expect("valid dims")
}

/// Radial gradient around the image center.
fn radial() -> RgbImage {
    let n = CORPUS_SIZE;
    let mid = (n - 1) as f64 / 2.0;
    let max_dist = (2.0f64).sqrt() * mid;
    RgbImage::from_fn(n, n, |r, c| {
        let d = ((r as f64 - mid).powi(2) + (c as f64 - mid).powi(2)).sqrt() / max_dist;
        [
            to_u8(255.0 * (1.0 - d)),
            to_u8(40.0 + 180.0 * d),
            to_u8(128.0 + 100.0 * (std::f64::consts::PI * d).cos()),
        ]
    })
    .expect("valid dims")
}

/// Soft vertical stripes with a 96-pixel period, constant along rows.
/// Brightness and stripe contrast drift slowly across the image, the way
/// illumination does in scanned photographs.
fn stripes() -> RgbImage {
    let n = CORPUS_SIZE;
    let span = (n - 1) as f64;
    RgbImage::from_fn(n, n, |_, c| {
        let t = c as f64 / span;
        let level = 110.0 + 40.0 * t;
        let amp = 35.0 + 15.0 * t;
        let phase = 2.0 * std::f64::consts::PI * c as f64 / 96.0;
        [
            to_u8(level + amp * phase.sin()),
            to_u8(level + amp * phase.sin()),
            to_u8(level + amp * phase.cos()),
        ]
    })
    .expect("valid dims")
}

/// Slow plaid: sinusoids with a 192-pixel period along both axes.
fn plaid() -> RgbImage {
    let n = CORPUS_SIZE;
    let period = 192.0;
    RgbImage::from_fn(n, n, |r, c| {
        let a = (2.0 * std::f64::consts::PI * r as f64 / period).sin();
        let b = (2.0 * std::f64::consts::PI * c as f64 / period).sin();
        [
            to_u8(128.0 + 50.0 * a),
            to_u8(128.0 + 50.0 * b),
            to_u8(128.0 + 25.0 * a + 25.0 * b),
        ]
    })
    .expect("valid dims")
}

/// Filtered noise: seeded white noise blurred into smooth blobs, then
/// stretched back to full contrast per channel.
fn speckle() -> RgbImage {
    let n = CORPUS_SIZE;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eedc0de);
    let mut data = vec![0u8; 3 * n as usize * n as usize];
    rng.fill(&mut data[..]);
    let noise = RgbImage::from_raw(n, n, data).expect("valid dims");
    let blurred = gaussian_blur(&noise, 8.0f64, 33).expect("valid blur params");
    stretch_channels(&blurred)
}

/// Linear rescale of each channel to the full [0, 255] range.
fn stretch_channels(image: &RgbImage) -> RgbImage {
    let mut lo = [u8::MAX; 3];
    let mut hi = [u8::MIN; 3];
    for chunk in image.as_raw().chunks_exact(3) {
        for ch in 0..3 {
            lo[ch] = lo[ch].min(chunk[ch]);
            hi[ch] = hi[ch].max(chunk[ch]);
        }
    }
    let mut data = Vec::with_capacity(image.as_raw().len());
    for chunk in image.as_raw().chunks_exact(3) {
        for ch in 0..3 {
            let span = hi[ch] as f64 - lo[ch] as f64;
            let v = if span == 0.0 {
                chunk[ch]
            } else {
                to_u8(255.0 * (chunk[ch] as f64 - lo[ch] as f64) / span)
            };
            data.push(v);
        }
    }
    RgbImage::from_raw(image.width(), image.height(), data).expect("same dims")
}
