//! The inpainting engine: per-component neighborhood statistics, directional
//! candidate search, cost-ranked substitution, and seam smoothing.
//!
//! Each connected component of the degradation mask is treated as one work
//! item. Its shape is rigidly translated up, down, left and right into fully
//! known territory; each placement is scored by the product of the absolute
//! mean difference, the absolute spread difference (both in luminance), and
//! the translation distance. The cheapest placement is copied into the hole
//! and a thin band around the seam is low-pass filtered.

use serde::Serialize;

use crate::blur::{blur_rect, gaussian_kernel, quantize};
use crate::error::{Error, Result};
use crate::morph::{boundary_band, cheb_dilate, connected_components, Frame, RibbonComponent};
use crate::raster::{DegradationMask, Px, RgbImage};
use crate::scalar::{real, Real};

/// Rec. 601 luminance of an RGB triple, computed in double precision.
#[inline]
pub fn luminance<F: Real>(rgb: [u8; 3]) -> F {
    real(0.299 * rgb[0] as f64 + 0.587 * rgb[1] as f64 + 0.114 * rgb[2] as f64)
}

/// Directions a candidate can be displaced in, in tie-break priority order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
    Left,
    Right,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::Up, Direction::Down, Direction::Left, Direction::Right];

    /// Lower wins exact cost ties.
    pub(crate) fn priority(self) -> u8 {
        match self {
            Direction::Up => 0,
            Direction::Down => 1,
            Direction::Left => 2,
            Direction::Right => 3,
        }
    }
}

/// A component's shape rigidly translated into fully known territory: every
/// pixel is in bounds and off the original degradation mask.
#[derive(Clone, Debug)]
pub struct CandidatePlacement {
    pub direction: Direction,
    /// (row offset, col offset) applied to the component's pixels.
    pub translation: (i64, i64),
    pixels: Vec<Px>,
}

impl CandidatePlacement {
    /// Translated pixels, sorted row-major like the source component.
    pub fn pixels(&self) -> &[Px] {
        &self.pixels
    }
}

/// Mean and population standard deviation of luminance over a pixel set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionStats<F> {
    pub mean: F,
    pub spread: F,
}

/// The three cost factors and their product for one candidate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CostBreakdown<F> {
    pub delta_mu: F,
    pub delta_sigma: F,
    #[serde(rename = "d")]
    pub distance: F,
    pub f_cost: F,
}

impl<F: Real> CostBreakdown<F> {
    pub fn new(delta_mu: F, delta_sigma: F, distance: F) -> Self {
        Self { delta_mu, delta_sigma, distance, f_cost: delta_mu * delta_sigma * distance }
    }
}

/// Engine knobs. Defaults: gap 1, ring width 2, at most 8 outward retries,
/// smoothing on with sigma 1.0 over a 5-tap kernel and a band half-width of 1.
#[derive(Clone, Copy, Debug)]
pub struct InpaintConfig<F> {
    /// Pixels between the component's bounding box and the nearest candidate.
    pub gap: u32,
    /// Chebyshev width of the known ring whose statistics describe the hole.
    pub ring_width: u32,
    /// Outward growth attempts per direction before it is abandoned.
    pub fallback_max_steps: u32,
    pub smoothing: bool,
    pub sigma: F,
    pub kernel_size: usize,
    /// Half-width of the seam band that gets low-pass filtered.
    pub band_half_width: u32,
}

impl<F: Real> Default for InpaintConfig<F> {
    fn default() -> Self {
        Self {
            gap: 1,
            ring_width: 2,
            fallback_max_steps: 8,
            smoothing: true,
            sigma: real(1.0),
            kernel_size: 5,
            band_half_width: 1,
        }
    }
}

impl<F: Real> InpaintConfig<F> {
    pub fn validate(&self) -> Result<()> {
        if self.gap == 0 {
            return Err(Error::InvalidParameter("gap must be at least 1".into()));
        }
        if self.ring_width == 0 {
            return Err(Error::InvalidParameter("ring width must be at least 1".into()));
        }
        if self.band_half_width == 0 {
            return Err(Error::InvalidParameter("band half-width must be at least 1".into()));
        }
        if self.smoothing {
            gaussian_kernel(self.sigma, self.kernel_size)?;
        }
        Ok(())
    }
}

/// Known pixels within Chebyshev distance `ring_width` of the component,
/// excluding every mask-true pixel (of any component) and clipped to the
/// image. Sorted row-major. An empty result is the empty-ring condition the
/// caller falls back on.
pub fn neighbor_ring<F: Real>(
    component: &RibbonComponent<F>,
    mask: &DegradationMask,
    ring_width: u32,
) -> Vec<Px> {
    assert!(ring_width >= 1, "ring width must be at least 1");
    let (width, height) = mask.dims();
    let frame = Frame::around(component.bbox(), ring_width, width, height);
    let grid = frame.grid_from(component.pixels());
    let dilated = cheb_dilate(&frame, &grid, ring_width as i64);
    let mut out = Vec::new();
    frame.scan(|r, c, i| {
        let px = Px::new(r as u32, c as u32);
        if dilated[i] && !mask.get(px) {
            out.push(px);
        }
    });
    out
}

/// Mean and population standard deviation of luminance over `pixels`,
/// accumulated in slice order.
pub fn region_stats<F: Real>(image: &RgbImage, pixels: &[Px]) -> Result<RegionStats<F>> {
    if pixels.is_empty() {
        return Err(Error::EmptyPixelSet);
    }
    let n = real::<F>(pixels.len() as f64);
    let mut sum = F::zero();
    for &px in pixels {
        sum = sum + luminance::<F>(image.get(px));
    }
    let mean = sum / n;
    let mut var_sum = F::zero();
    for &px in pixels {
        let d = luminance::<F>(image.get(px)) - mean;
        var_sum = var_sum + d * d;
    }
    Ok(RegionStats { mean, spread: (var_sum / n).sqrt() })
}

/// Component pixels shifted by `translation` if the result stays in bounds
/// and off the mask; `None` otherwise.
fn translated_pixels<F: Real>(
    component: &RibbonComponent<F>,
    mask: &DegradationMask,
    translation: (i64, i64),
) -> Option<Vec<Px>> {
    let (width, height) = mask.dims();
    let bbox = component.bbox();
    // Bounding-box reject before the per-pixel scan.
    let row_min = bbox.row_min as i64 + translation.0;
    let row_max = bbox.row_max as i64 + translation.0;
    let col_min = bbox.col_min as i64 + translation.1;
    let col_max = bbox.col_max as i64 + translation.1;
    if row_min < 0 || col_min < 0 || row_max >= height as i64 || col_max >= width as i64 {
        return None;
    }
    let mut out = Vec::with_capacity(component.pixel_count());
    for &px in component.pixels() {
        let q = Px::new((px.row as i64 + translation.0) as u32, (px.col as i64 + translation.1) as u32);
        if mask.get(q) {
            return None;
        }
        out.push(q);
    }
    Some(out)
}

/// Up to four directional placements. The base displacement is the bounding
/// box extent plus `config.gap`; a direction whose placement overlaps the
/// mask or leaves the image retries `config.fallback_max_steps` times, each
/// time one extent farther out, before it is abandoned. Output order is
/// fixed: up, down, left, right.
pub fn candidate_placements<F: Real>(
    component: &RibbonComponent<F>,
    mask: &DegradationMask,
    config: &InpaintConfig<F>,
) -> Vec<CandidatePlacement> {
    let bbox = component.bbox();
    let v_extent = bbox.height() as i64;
    let h_extent = bbox.width() as i64;
    let gap = config.gap as i64;

    let mut out = Vec::with_capacity(4);
    for direction in Direction::ALL {
        let (unit_row, unit_col): (i64, i64) = match direction {
            Direction::Up => (-v_extent, 0),
            Direction::Down => (v_extent, 0),
            Direction::Left => (0, -h_extent),
            Direction::Right => (0, h_extent),
        };
        let (gap_row, gap_col) = (gap * unit_row.signum(), gap * unit_col.signum());
        for step in 1..=config.fallback_max_steps as i64 {
            let translation = (unit_row * step + gap_row, unit_col * step + gap_col);
            if let Some(pixels) = translated_pixels(component, mask, translation) {
                out.push(CandidatePlacement { direction, translation, pixels });
                break;
            }
        }
    }
    out
}

/// Scores one candidate against the ring per the product cost: absolute mean
/// difference times absolute spread difference times translation distance.
pub fn evaluate_cost<F: Real>(
    image: &RgbImage,
    ring: &[Px],
    candidate: &CandidatePlacement,
) -> Result<CostBreakdown<F>> {
    if ring.is_empty() {
        return Err(Error::EmptyRing);
    }
    let ring_stats = region_stats::<F>(image, ring)?;
    let cand_stats = region_stats::<F>(image, candidate.pixels())?;
    let (d_row, d_col) = candidate.translation;
    let distance = real::<F>(((d_row * d_row + d_col * d_col) as f64).sqrt());
    Ok(CostBreakdown::new(
        (cand_stats.mean - ring_stats.mean).abs(),
        (cand_stats.spread - ring_stats.spread).abs(),
        distance,
    ))
}

/// Minimum-cost entry; exact ties resolve by direction priority
/// up > down > left > right regardless of input order.
pub fn select_candidate<F: Real>(
    scored: &[(CandidatePlacement, CostBreakdown<F>)],
) -> Option<&(CandidatePlacement, CostBreakdown<F>)> {
    scored.iter().min_by(|a, b| {
        a.1.f_cost
            .partial_cmp(&b.1.f_cost)
            .expect("finite cost")
            .then(a.0.direction.priority().cmp(&b.0.direction.priority()))
    })
}

/// Copies all three channels from the candidate pixels into the component
/// pixels; every other pixel is untouched.
pub fn substitute<F: Real>(
    image: &RgbImage,
    component: &RibbonComponent<F>,
    candidate: &CandidatePlacement,
) -> RgbImage {
    let mut out = image.clone();
    substitute_mut(&mut out, component, candidate);
    out
}

fn substitute_mut<F: Real>(
    image: &mut RgbImage,
    component: &RibbonComponent<F>,
    candidate: &CandidatePlacement,
) {
    debug_assert_eq!(component.pixel_count(), candidate.pixels().len());
    // Candidate pixels are off the mask, hence never written by this loop.
    for (&dst, &src) in component.pixels().iter().zip(candidate.pixels()) {
        let value = image.get(src);
        image.set(dst, value);
    }
}

/// Low-pass filters the seam: blurred values are written back only on the
/// boundary band, restricted to the disk-dilated component so that nothing
/// outside `dilate(mask, band_half_width)` ever changes. The ribbon interior
/// and all remote pixels are bit-identical to the input.
pub fn smooth_seams<F: Real>(
    image: &RgbImage,
    component: &RibbonComponent<F>,
    config: &InpaintConfig<F>,
) -> Result<RgbImage> {
    let mut out = image.clone();
    if config.smoothing {
        config.validate()?;
        smooth_seams_mut(&mut out, component, config)?;
    }
    Ok(out)
}

fn smooth_seams_mut<F: Real>(
    image: &mut RgbImage,
    component: &RibbonComponent<F>,
    config: &InpaintConfig<F>,
) -> Result<()> {
    let (width, height) = image.dims();
    let hw = config.band_half_width;
    let band = boundary_band(component, width, height, hw);
    if band.is_empty() {
        return Ok(());
    }

    // Keep only band pixels within Euclidean distance hw of the component;
    // this pins every write inside the disk-dilation of the mask.
    let frame = Frame::around(component.bbox(), hw, width, height);
    let grid = frame.grid_from(component.pixels());
    let disk = crate::morph::StructuringElement::disk(hw).offsets();
    let writes: Vec<Px> = band
        .into_iter()
        .filter(|px| {
            disk.iter()
                .any(|&(dr, dc)| frame.get(&grid, px.row as i64 + dr, px.col as i64 + dc))
        })
        .collect();
    if writes.is_empty() {
        return Ok(());
    }

    let row0 = writes.iter().map(|p| p.row).min().unwrap();
    let row1 = writes.iter().map(|p| p.row).max().unwrap();
    let col0 = writes.iter().map(|p| p.col).min().unwrap();
    let col1 = writes.iter().map(|p| p.col).max().unwrap();
    let weights = gaussian_kernel::<F>(config.sigma, config.kernel_size)?;
    let blurred = blur_rect(image, &weights, (row0, row1), (col0, col1));
    let rect_w = (col1 - col0 + 1) as usize;
    for px in writes {
        let local = (px.row - row0) as usize * rect_w + (px.col - col0) as usize;
        image.set(px, blurred[local]);
    }
    Ok(())
}

/// How one component was filled, for the per-component report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FillDirection {
    Up,
    Down,
    Left,
    Right,
    Fallback,
}

impl FillDirection {
    pub fn is_fallback(self) -> bool {
        self == FillDirection::Fallback
    }
}

impl From<Direction> for FillDirection {
    fn from(d: Direction) -> Self {
        match d {
            Direction::Up => FillDirection::Up,
            Direction::Down => FillDirection::Down,
            Direction::Left => FillDirection::Left,
            Direction::Right => FillDirection::Right,
        }
    }
}

/// One line of the per-component report. Cost fields are absent for
/// fallback-filled components.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport<F> {
    pub component_index: usize,
    pub pixel_count: usize,
    pub direction: FillDirection,
    pub delta_mu: Option<F>,
    pub delta_sigma: Option<F>,
    #[serde(rename = "d")]
    pub distance: Option<F>,
    pub f_cost: Option<F>,
}

/// Runs the full pipeline: extract components, then per component in
/// centroid scanline order ring -> candidates -> costs -> select ->
/// substitute -> smooth. A component with no surviving candidate splits
/// along its longer bounding-box axis and each half re-enters the same
/// scheme (crossing ribbons merge into sprawling components whose
/// whole-extent translations would always leave the image); unsplittable
/// leaves take their ring's mean color. A component whose ring is empty is
/// filled with the global mean of unmasked pixels. Either way the component
/// is flagged `fallback` in the report.
pub fn inpaint<F: Real>(
    image: &RgbImage,
    mask: &DegradationMask,
    config: &InpaintConfig<F>,
) -> Result<(RgbImage, Vec<ComponentReport<F>>)> {
    if image.dims() != mask.dims() {
        let (mw, mh) = mask.dims();
        return Err(Error::DimensionMismatch {
            expected_width: image.width(),
            expected_height: image.height(),
            width: mw,
            height: mh,
        });
    }
    config.validate()?;

    let components = connected_components::<F>(mask);
    let mut out = image.clone();
    let mut reports = Vec::with_capacity(components.len());
    let mut global_mean: Option<[u8; 3]> = None;

    for (index, component) in components.iter().enumerate() {
        let fill = fill_item(&mut out, image, mask, component, config, &mut global_mean, true)?;
        reports.push(match fill {
            ItemFill::Direct { direction, cost } => ComponentReport {
                component_index: index,
                pixel_count: component.pixel_count(),
                direction: direction.into(),
                delta_mu: Some(cost.delta_mu),
                delta_sigma: Some(cost.delta_sigma),
                distance: Some(cost.distance),
                f_cost: Some(cost.f_cost),
            },
            ItemFill::Fallback => ComponentReport {
                component_index: index,
                pixel_count: component.pixel_count(),
                direction: FillDirection::Fallback,
                delta_mu: None,
                delta_sigma: None,
                distance: None,
                f_cost: None,
            },
        });

        if config.smoothing {
            smooth_seams_mut(&mut out, component, config)?;
        }
    }
    Ok((out, reports))
}

enum ItemFill<F> {
    Direct { direction: Direction, cost: CostBreakdown<F> },
    Fallback,
}

/// Sub-items of a failed component keep splitting until both bounding-box
/// extents fit this many pixels before candidates are tried again, keeping
/// their substitutes near instead of one whole-network extent away.
const FALLBACK_SPLIT_EXTENT: u32 = 16;

/// Fills one work item. The direct path is the four-candidate scheme; when
/// no placement survives, the item subdivides along its longer bounding-box
/// axis and each half re-enters this function, so merged ribbon networks
/// are filled block by block instead of with one flat color. Leaves that
/// cannot split take their ring's mean; enclosed items (empty ring) take
/// the global unmasked mean.
fn fill_item<F: Real>(
    out: &mut RgbImage,
    original: &RgbImage,
    mask: &DegradationMask,
    item: &RibbonComponent<F>,
    config: &InpaintConfig<F>,
    global_mean: &mut Option<[u8; 3]>,
    attempt_direct: bool,
) -> Result<ItemFill<F>> {
    let bbox = item.bbox();
    let compact = bbox.height().max(bbox.width()) <= FALLBACK_SPLIT_EXTENT;
    if attempt_direct || compact {
        let ring = neighbor_ring(item, mask, config.ring_width);
        if ring.is_empty() {
            // Nothing known within reach; an enclosed item stays enclosed
            // under subdivision, so paint it with the global mean directly.
            let fill = *global_mean.get_or_insert_with(|| unmasked_mean(original, mask));
            for &px in item.pixels() {
                out.set(px, fill);
            }
            return Ok(ItemFill::Fallback);
        }
        let mut scored = Vec::with_capacity(4);
        for candidate in candidate_placements(item, mask, config) {
            let cost = evaluate_cost::<F>(out, &ring, &candidate)?;
            scored.push((candidate, cost));
        }
        if let Some((candidate, cost)) = select_candidate(&scored) {
            let (candidate, cost) = (candidate.clone(), *cost);
            substitute_mut(out, item, &candidate);
            return Ok(ItemFill::Direct { direction: candidate.direction, cost });
        }
        if bbox.height() == 1 && bbox.width() == 1 {
            let fill = mean_color(out, &ring);
            for &px in item.pixels() {
                out.set(px, fill);
            }
            return Ok(ItemFill::Fallback);
        }
    }

    let (first, second) = split_item(item);
    fill_item(out, original, mask, &first, config, global_mean, false)?;
    fill_item(out, original, mask, &second, config, global_mean, false)?;
    Ok(ItemFill::Fallback)
}

/// Splits an item at the midpoint of its longer bounding-box axis. The box
/// is tight, so both halves are nonempty whenever an axis extent exceeds 1.
fn split_item<F: Real>(item: &RibbonComponent<F>) -> (RibbonComponent<F>, RibbonComponent<F>) {
    let bbox = item.bbox();
    let (first, second): (Vec<Px>, Vec<Px>) = if bbox.height() >= bbox.width() {
        let cut = bbox.row_min + bbox.height() / 2;
        item.pixels().iter().partition(|px| px.row < cut)
    } else {
        let cut = bbox.col_min + bbox.width() / 2;
        item.pixels().iter().partition(|px| px.col < cut)
    };
    (
        RibbonComponent::from_pixels(first).expect("tight bbox keeps both halves nonempty"),
        RibbonComponent::from_pixels(second).expect("tight bbox keeps both halves nonempty"),
    )
}

/// Per-channel mean over a pixel set, rounded half away from zero.
fn mean_color(image: &RgbImage, pixels: &[Px]) -> [u8; 3] {
    let mut sums = [0u64; 3];
    for &px in pixels {
        let rgb = image.get(px);
        for ch in 0..3 {
            sums[ch] += rgb[ch] as u64;
        }
    }
    let n = pixels.len() as f64;
    [
        quantize(sums[0] as f64 / n),
        quantize(sums[1] as f64 / n),
        quantize(sums[2] as f64 / n),
    ]
}

/// Mean color over mask-false pixels of the original image; mid-gray when
/// the mask covers everything.
fn unmasked_mean(image: &RgbImage, mask: &DegradationMask) -> [u8; 3] {
    let mut sums = [0u64; 3];
    let mut count = 0u64;
    for row in 0..image.height() {
        for col in 0..image.width() {
            let px = Px::new(row, col);
            if !mask.get(px) {
                let rgb = image.get(px);
                for ch in 0..3 {
                    sums[ch] += rgb[ch] as u64;
                }
                count += 1;
            }
        }
    }
    if count == 0 {
        return [128, 128, 128];
    }
    let n = count as f64;
    [
        quantize(sums[0] as f64 / n),
        quantize(sums[1] as f64 / n),
        quantize(sums[2] as f64 / n),
    ]
}
