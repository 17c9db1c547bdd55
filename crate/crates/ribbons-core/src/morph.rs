//! Morphological primitives: disk dilation, 8-connected component labeling,
//! and the boundary band used for seam smoothing.

use crate::error::{Error, Result};
use crate::raster::{DegradationMask, Px};
use crate::scalar::Real;

/// Disk-shaped structuring element: all offsets at Euclidean distance
/// `<= radius` from the origin. Radius 0 is the identity for dilation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructuringElement {
    radius: u32,
}

impl StructuringElement {
    pub fn disk(radius: u32) -> Self {
        Self { radius }
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// (d_row, d_col) offsets covered by the disk.
    pub fn offsets(&self) -> Vec<(i64, i64)> {
        let r = self.radius as i64;
        let r_sq = r * r;
        let mut out = Vec::new();
        for d_row in -r..=r {
            for d_col in -r..=r {
                if d_row * d_row + d_col * d_col <= r_sq {
                    out.push((d_row, d_col));
                }
            }
        }
        out
    }
}

/// Morphological dilation, clipped at the image borders.
pub fn dilate(mask: &DegradationMask, se: &StructuringElement) -> DegradationMask {
    let (width, height) = mask.dims();
    let offsets = se.offsets();
    let mut out = DegradationMask::new(width, height).expect("source mask has valid dims");
    for px in mask.true_pixels() {
        for &(d_row, d_col) in &offsets {
            if let Some(q) = px.offset(d_row, d_col, width, height) {
                out.set(q, true);
            }
        }
    }
    out
}

/// Axis-aligned inclusive bounding box in (row, col) space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BBox {
    pub row_min: u32,
    pub row_max: u32,
    pub col_min: u32,
    pub col_max: u32,
}

impl BBox {
    /// Rows covered, inclusive.
    pub fn height(&self) -> u32 {
        self.row_max - self.row_min + 1
    }

    /// Columns covered, inclusive.
    pub fn width(&self) -> u32 {
        self.col_max - self.col_min + 1
    }

    pub fn contains(&self, px: Px) -> bool {
        px.row >= self.row_min && px.row <= self.row_max && px.col >= self.col_min && px.col <= self.col_max
    }
}

/// One 8-connected region of a degradation mask: its pixels (sorted
/// row-major), tight bounding box, and unweighted centroid.
#[derive(Clone, Debug)]
pub struct RibbonComponent<F> {
    pixels: Vec<Px>,
    bbox: BBox,
    centroid: (F, F),
}

impl<F: Real> RibbonComponent<F> {
    /// Builds a component from its member pixels; they are sorted and
    /// deduplicated. Errors on an empty set.
    pub fn from_pixels(mut pixels: Vec<Px>) -> Result<Self> {
        if pixels.is_empty() {
            return Err(Error::EmptyPixelSet);
        }
        pixels.sort_unstable();
        pixels.dedup();
        let mut bbox = BBox {
            row_min: u32::MAX,
            row_max: 0,
            col_min: u32::MAX,
            col_max: 0,
        };
        let mut row_sum = 0u64;
        let mut col_sum = 0u64;
        for px in &pixels {
            bbox.row_min = bbox.row_min.min(px.row);
            bbox.row_max = bbox.row_max.max(px.row);
            bbox.col_min = bbox.col_min.min(px.col);
            bbox.col_max = bbox.col_max.max(px.col);
            row_sum += px.row as u64;
            col_sum += px.col as u64;
        }
        let n = pixels.len() as f64;
        let centroid = (
            crate::scalar::real::<F>(row_sum as f64 / n),
            crate::scalar::real::<F>(col_sum as f64 / n),
        );
        Ok(Self { pixels, bbox, centroid })
    }

    /// Member pixels, sorted row-major.
    pub fn pixels(&self) -> &[Px] {
        &self.pixels
    }

    pub fn bbox(&self) -> BBox {
        self.bbox
    }

    /// Mean (row, col) of the member pixels.
    pub fn centroid(&self) -> (F, F) {
        self.centroid
    }

    pub fn pixel_count(&self) -> usize {
        self.pixels.len()
    }

    /// Membership test via binary search on the sorted pixel list.
    pub fn contains(&self, px: Px) -> bool {
        self.pixels.binary_search(&px).is_ok()
    }
}

/// Partitions the mask's true pixels into maximal 8-connected components,
/// ordered by (centroid row, centroid col) ascending.
pub fn connected_components<F: Real>(mask: &DegradationMask) -> Vec<RibbonComponent<F>> {
    let (width, height) = mask.dims();
    let mut visited = vec![false; width as usize * height as usize];
    let at = |px: Px| px.row as usize * width as usize + px.col as usize;

    let mut components: Vec<RibbonComponent<F>> = Vec::new();
    for row in 0..height {
        for col in 0..width {
            let seed = Px::new(row, col);
            if !mask.get(seed) || visited[at(seed)] {
                continue;
            }
            let mut pixels = Vec::new();
            let mut stack = vec![seed];
            visited[at(seed)] = true;
            while let Some(px) = stack.pop() {
                pixels.push(px);
                for d_row in -1i64..=1 {
                    for d_col in -1i64..=1 {
                        if d_row == 0 && d_col == 0 {
                            continue;
                        }
                        if let Some(q) = px.offset(d_row, d_col, width, height) {
                            if mask.get(q) && !visited[at(q)] {
                                visited[at(q)] = true;
                                stack.push(q);
                            }
                        }
                    }
                }
            }
            components.push(RibbonComponent::from_pixels(pixels).expect("nonempty BFS result"));
        }
    }

    components.sort_by(|a, b| {
        let (ar, ac) = a.centroid();
        let (br, bc) = b.centroid();
        ar.partial_cmp(&br)
            .expect("finite centroid")
            .then(ac.partial_cmp(&bc).expect("finite centroid"))
            .then(a.pixels()[0].cmp(&b.pixels()[0]))
    });
    components
}

/// Thin band straddling the component's boundary: pixels within Chebyshev
/// distance `half_width` of the component AND of its in-image complement,
/// clipped to image bounds. Sorted row-major.
pub fn boundary_band<F: Real>(
    component: &RibbonComponent<F>,
    width: u32,
    height: u32,
    half_width: u32,
) -> Vec<Px> {
    assert!(half_width >= 1, "band half-width must be at least 1");
    let frame = Frame::around(component.bbox(), half_width, width, height);
    let comp = frame.grid_from(component.pixels());
    let hw = half_width as i64;
    let dilated = cheb_dilate(&frame, &comp, hw);
    let eroded = cheb_erode(&frame, &comp, hw);

    let mut out = Vec::new();
    frame.scan(|r, c, i| {
        if dilated[i] && !eroded[i] {
            out.push(Px::new(r as u32, c as u32));
        }
    });
    out
}

/// A rectangular window of the image plane with absolute coordinates,
/// backing the local boolean grids the band and ring computations use.
pub(crate) struct Frame {
    pub row0: i64,
    pub col0: i64,
    pub rows: i64,
    pub cols: i64,
    pub img_width: i64,
    pub img_height: i64,
}

impl Frame {
    /// Bounding box expanded by `pad`, clipped to the image.
    pub(crate) fn around(bbox: BBox, pad: u32, img_width: u32, img_height: u32) -> Self {
        let row0 = (bbox.row_min as i64 - pad as i64).max(0);
        let col0 = (bbox.col_min as i64 - pad as i64).max(0);
        let row1 = (bbox.row_max as i64 + pad as i64).min(img_height as i64 - 1);
        let col1 = (bbox.col_max as i64 + pad as i64).min(img_width as i64 - 1);
        Self {
            row0,
            col0,
            rows: row1 - row0 + 1,
            cols: col1 - col0 + 1,
            img_width: img_width as i64,
            img_height: img_height as i64,
        }
    }

    pub(crate) fn len(&self) -> usize {
        (self.rows * self.cols) as usize
    }

    #[inline]
    fn index(&self, r: i64, c: i64) -> Option<usize> {
        if r < self.row0 || c < self.col0 || r >= self.row0 + self.rows || c >= self.col0 + self.cols {
            None
        } else {
            Some(((r - self.row0) * self.cols + (c - self.col0)) as usize)
        }
    }

    #[inline]
    pub(crate) fn get(&self, grid: &[bool], r: i64, c: i64) -> bool {
        self.index(r, c).map(|i| grid[i]).unwrap_or(false)
    }

    pub(crate) fn grid_from(&self, pixels: &[Px]) -> Vec<bool> {
        let mut grid = vec![false; self.len()];
        for px in pixels {
            if let Some(i) = self.index(px.row as i64, px.col as i64) {
                grid[i] = true;
            }
        }
        grid
    }

    /// Visits every cell in row-major order as (row, col, linear index).
    pub(crate) fn scan(&self, mut f: impl FnMut(i64, i64, usize)) {
        let mut i = 0;
        for r in self.row0..self.row0 + self.rows {
            for c in self.col0..self.col0 + self.cols {
                f(r, c, i);
                i += 1;
            }
        }
    }
}

/// Chebyshev (square-window) dilation of a local grid, separable OR passes.
/// The window is clipped to the image; cells outside the frame read false.
pub(crate) fn cheb_dilate(frame: &Frame, grid: &[bool], hw: i64) -> Vec<bool> {
    let mut tmp = vec![false; frame.len()];
    frame.scan(|r, c, i| {
        let lo = (c - hw).max(0);
        let hi = (c + hw).min(frame.img_width - 1);
        tmp[i] = (lo..=hi).any(|cc| frame.get(grid, r, cc));
    });
    let mut out = vec![false; frame.len()];
    frame.scan(|r, c, i| {
        let lo = (r - hw).max(0);
        let hi = (r + hw).min(frame.img_height - 1);
        out[i] = (lo..=hi).any(|rr| frame.get(&tmp, rr, c));
    });
    out
}

/// Chebyshev erosion: true where every in-image cell of the square window is
/// set. Separable AND passes with the same clipping as `cheb_dilate`.
pub(crate) fn cheb_erode(frame: &Frame, grid: &[bool], hw: i64) -> Vec<bool> {
    let mut tmp = vec![false; frame.len()];
    frame.scan(|r, c, i| {
        let lo = (c - hw).max(0);
        let hi = (c + hw).min(frame.img_width - 1);
        tmp[i] = (lo..=hi).all(|cc| frame.get(grid, r, cc));
    });
    let mut out = vec![false; frame.len()];
    frame.scan(|r, c, i| {
        let lo = (r - hw).max(0);
        let hi = (r + hw).min(frame.img_height - 1);
        out[i] = (lo..=hi).all(|rr| frame.get(&tmp, rr, c));
    });
    out
}
