//! Reproducible synthetic ribbon degradation: random segments dilated to a
//! target width, plus application of a mask to an image.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::morph::{dilate, StructuringElement};
use crate::raster::{rasterize_segment, DegradationMask, Px, RgbImage};

/// Images smaller than this cannot host meaningful ribbons.
pub const MIN_DIMENSION: u32 = 16;

/// Parameters of one synthetic degradation: `line_count` random segments,
/// each dilated to `width` pixels, drawn from a generator seeded by `seed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegradationSpec {
    pub line_count: u32,
    pub width: u32,
    pub seed: u64,
}

impl DegradationSpec {
    pub fn new(line_count: u32, width: u32, seed: u64) -> Self {
        Self { line_count, width, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.width.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "ribbon width must be odd and positive, got {}",
                self.width
            )));
        }
        Ok(())
    }

    /// Disk radius reproducing the requested width on axis-aligned runs.
    pub fn disk_radius(&self) -> u32 {
        self.width / 2
    }
}

/// Draws `spec.line_count` segments with endpoints sampled uniformly over
/// the canvas from a ChaCha8 stream seeded by `spec.seed` (per segment, the
/// draw order is start row, start col, end row, end col), unions their
/// rasterizations and dilates once with a disk of radius `width / 2`.
/// Identical (dims, spec) yield a bit-identical mask.
pub fn generate_mask(width: u32, height: u32, spec: &DegradationSpec) -> Result<DegradationMask> {
    spec.validate()?;
    if width < MIN_DIMENSION || height < MIN_DIMENSION {
        return Err(Error::InvalidParameter(format!(
            "image must be at least {MIN_DIMENSION}x{MIN_DIMENSION} for ribbon degradation, got {width}x{height}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut mask = DegradationMask::new(width, height)?;
    for _ in 0..spec.line_count {
        let p0 = Px::new(rng.random_range(0..height), rng.random_range(0..width));
        let p1 = Px::new(rng.random_range(0..height), rng.random_range(0..width));
        for px in rasterize_segment(p0, p1, width, height)? {
            mask.set(px, true);
        }
    }
    Ok(dilate(&mask, &StructuringElement::disk(spec.disk_radius())))
}

/// Copy of the image with every masked pixel painted white; unmasked pixels
/// are bit-identical to the input. The inpainting engine never reads the
/// painted value, only the mask.
pub fn apply_degradation(image: &RgbImage, mask: &DegradationMask) -> Result<RgbImage> {
    if image.dims() != mask.dims() {
        let (mw, mh) = mask.dims();
        return Err(Error::DimensionMismatch {
            expected_width: image.width(),
            expected_height: image.height(),
            width: mw,
            height: mh,
        });
    }
    let mut out = image.clone();
    for px in mask.true_pixels() {
        out.set(px, [255, 255, 255]);
    }
    Ok(out)
}
