//! Image and mask containers, PNG I/O, and digital line rasterization.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

/// Pixel location as (row, col), row 0 at the top. The derived `Ord` is
/// row-major scan order, which every pixel list in this crate follows.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Px {
    pub row: u32,
    pub col: u32,
}

impl Px {
    #[inline]
    pub fn new(row: u32, col: u32) -> Self {
        Self { row, col }
    }

    /// Translates by (d_row, d_col); `None` if the result leaves a
    /// `width` x `height` canvas.
    #[inline]
    pub fn offset(self, d_row: i64, d_col: i64, width: u32, height: u32) -> Option<Px> {
        let r = self.row as i64 + d_row;
        let c = self.col as i64 + d_col;
        if r < 0 || c < 0 || r >= height as i64 || c >= width as i64 {
            None
        } else {
            Some(Px::new(r as u32, c as u32))
        }
    }
}

impl fmt::Debug for Px {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

fn check_dims(width: u32, height: u32) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidParameter(format!(
            "image dimensions must be at least 1x1, got {width}x{height}"
        )));
    }
    Ok(())
}

/// 8-bit three-channel raster stored row-major, the unit of all processing.
#[derive(Clone, PartialEq, Eq)]
pub struct RgbImage {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl RgbImage {
    /// Black image of the given size.
    pub fn new(width: u32, height: u32) -> Result<Self> {
        check_dims(width, height)?;
        Ok(Self { width, height, data: vec![0; 3 * width as usize * height as usize] })
    }

    /// Constant-color image.
    pub fn from_pixel(width: u32, height: u32, rgb: [u8; 3]) -> Result<Self> {
        let mut img = Self::new(width, height)?;
        for chunk in img.data.chunks_exact_mut(3) {
            chunk.copy_from_slice(&rgb);
        }
        Ok(img)
    }

    /// Builds an image by evaluating `f(row, col)` for every pixel.
    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> [u8; 3]) -> Result<Self> {
        check_dims(width, height)?;
        let mut data = Vec::with_capacity(3 * width as usize * height as usize);
        for row in 0..height {
            for col in 0..width {
                data.extend_from_slice(&f(row, col));
            }
        }
        Ok(Self { width, height, data })
    }

    /// Wraps an interleaved RGB byte buffer; its length must be `3 * width * height`.
    pub fn from_raw(width: u32, height: u32, data: Vec<u8>) -> Result<Self> {
        check_dims(width, height)?;
        let expected = 3 * width as usize * height as usize;
        if data.len() != expected {
            return Err(Error::InvalidParameter(format!(
                "raw buffer length {} does not match {width}x{height} RGB ({expected})",
                data.len()
            )));
        }
        Ok(Self { width, height, data })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// (width, height)
    pub fn dims(&self) -> (u32, u32) {
        (self.width, self.height)
    }

    #[inline]
    pub fn in_bounds(&self, px: Px) -> bool {
        px.row < self.height && px.col < self.width
    }

    #[inline]
    fn index(&self, px: Px) -> usize {
        debug_assert!(self.in_bounds(px));
        3 * (px.row as usize * self.width as usize + px.col as usize)
    }

    #[inline]
    pub fn get(&self, px: Px) -> [u8; 3] {
        let i = self.index(px);
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    #[inline]
    pub fn set(&mut self, px: Px, rgb: [u8; 3]) {
        let i = self.index(px);
        self.data[i..i + 3].copy_from_slice(&rgb);
    }

    /// Interleaved RGB bytes, row-major.
    pub fn as_raw(&self) -> &[u8] {
        &self.data
    }

    pub fn read_png(path: &Path) -> Result<Self> {
        let decoded = image::open(path)?.to_rgb8();
        Self::from_raw(decoded.width(), decoded.height(), decoded.into_raw())
    }

    pub fn write_png(&self, path: &Path) -> Result<()> {
        let buffer: image::RgbImage =
            image::ImageBuffer::from_raw(self.width, self.height, self.data.clone())
                .expect("buffer length matches dimensions");
        buffer.save_with_format(path, image::ImageFormat::Png)?;
        Ok(())
    }
}

impl fmt::Debug for RgbImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RgbImage({}x{})", self.width, self.height)
    }
}

/// Binary raster aligned to an image; true marks a degraded pixel.
#[derive(Clone, PartialEq, Eq)]
pub struct DegradationMask {
    width: u32,
    height: u32,
    bits: Vec<bool>,
}

impl DegradationMask {
    /// All-false mask of the given size.
    pub fn new(width: u32, height: u32) -> Result<Self> {
        check_dims(width, height)?;
        Ok(Self { width, height, bits: vec![false; width as usize * height as usize] })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn dims(&self) -> (u32, u32) {
        (self.width, self.height)
    }

    #[inline]
    pub fn in_bounds(&self, px: Px) -> bool {
        px.row < self.height && px.col < self.width
    }

    #[inline]
    pub fn get(&self, px: Px) -> bool {
        debug_assert!(self.in_bounds(px));
        self.bits[px.row as usize * self.width as usize + px.col as usize]
    }

    #[inline]
    pub fn set(&mut self, px: Px, value: bool) {
        debug_assert!(self.in_bounds(px));
        self.bits[px.row as usize * self.width as usize + px.col as usize] = value;
    }

    pub fn count_true(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// True pixels in row-major scan order.
    pub fn true_pixels(&self) -> Vec<Px> {
        let mut out = Vec::new();
        for row in 0..self.height {
            for col in 0..self.width {
                if self.get(Px::new(row, col)) {
                    out.push(Px::new(row, col));
                }
            }
        }
        out
    }

    /// Reads an 8-bit grayscale PNG; any nonzero byte marks a degraded pixel.
    pub fn read_png(path: &Path) -> Result<Self> {
        let decoded = image::open(path)?.to_luma8();
        check_dims(decoded.width(), decoded.height())?;
        Ok(Self {
            width: decoded.width(),
            height: decoded.height(),
            bits: decoded.into_raw().into_iter().map(|v| v != 0).collect(),
        })
    }

    /// Writes an 8-bit grayscale PNG, 255 for degraded and 0 otherwise.
    pub fn write_png(&self, path: &Path) -> Result<()> {
        let raw: Vec<u8> = self.bits.iter().map(|&b| if b { 255 } else { 0 }).collect();
        let buffer: image::GrayImage =
            image::ImageBuffer::from_raw(self.width, self.height, raw)
                .expect("buffer length matches dimensions");
        buffer.save_with_format(path, image::ImageFormat::Png)?;
        Ok(())
    }
}

impl fmt::Debug for DegradationMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DegradationMask({}x{}, {} true)", self.width, self.height, self.count_true())
    }
}

/// 8-connected digital line from `p0` to `p1` inclusive, midpoint (Bresenham)
/// rule. The result is independent of endpoint order and sorted row-major.
pub fn rasterize_segment(p0: Px, p1: Px, width: u32, height: u32) -> Result<Vec<Px>> {
    for p in [p0, p1] {
        if p.row >= height || p.col >= width {
            return Err(Error::OutOfBounds { row: p.row, col: p.col, width, height });
        }
    }
    // Canonical endpoint order makes the traced pixel set symmetric.
    let (a, b) = if p1 < p0 { (p1, p0) } else { (p0, p1) };

    let (mut r, mut c) = (a.row as i64, a.col as i64);
    let (r1, c1) = (b.row as i64, b.col as i64);
    let dr = (r1 - r).abs();
    let dc = (c1 - c).abs();
    let sr = if r < r1 { 1 } else { -1 };
    let sc = if c < c1 { 1 } else { -1 };
    let mut err = dc - dr;

    let mut out = Vec::with_capacity((dr.max(dc) + 1) as usize);
    loop {
        out.push(Px::new(r as u32, c as u32));
        if r == r1 && c == c1 {
            break;
        }
        let e2 = 2 * err;
        if e2 >= -dr {
            err -= dr;
            c += sc;
        }
        if e2 <= dc {
            err += dc;
            r += sr;
        }
    }
    out.sort_unstable();
    Ok(out)
}
