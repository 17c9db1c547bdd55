//! Fast ribbon-defect inpainting: synthetic scratch generation, directional
//! patch substitution driven by a product cost of neighborhood statistics
//! and distance, seam smoothing, and PSNR/SSIM quality metrics.
//!
//! The numeric pipeline is generic over the [`Real`] scalar (`f32` or
//! `f64`); the type aliases at the crate root fix `f64`, which is what the
//! shipped CLI uses.

pub mod blur;
pub mod degrade;
pub mod error;
pub mod inpaint;
pub mod metrics;
pub mod morph;
pub mod raster;
pub mod scalar;
pub mod textures;

pub use blur::{gaussian_blur, gaussian_kernel};
pub use degrade::{apply_degradation, generate_mask, DegradationSpec, MIN_DIMENSION};
pub use error::{Error, Result};
pub use inpaint::{
    candidate_placements, evaluate_cost, inpaint, luminance, neighbor_ring, region_stats,
    select_candidate, smooth_seams, substitute, CandidatePlacement, Direction, FillDirection,
};
pub use metrics::{psnr, quality, ssim};
pub use morph::{boundary_band, connected_components, dilate, BBox, StructuringElement};
pub use raster::{rasterize_segment, DegradationMask, Px, RgbImage};
pub use scalar::Real;
pub use textures::{synthetic_corpus, CORPUS_SIZE};

/// f64-concrete aliases for the generic core types.
pub type RibbonComponent = morph::RibbonComponent<f64>;
pub type RegionStats = inpaint::RegionStats<f64>;
pub type CostBreakdown = inpaint::CostBreakdown<f64>;
pub type InpaintConfig = inpaint::InpaintConfig<f64>;
pub type ComponentReport = inpaint::ComponentReport<f64>;
pub type QualityScore = metrics::QualityScore<f64>;
