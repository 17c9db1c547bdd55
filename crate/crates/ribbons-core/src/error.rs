use thiserror::Error;

/// Errors produced by the raster, degradation, inpainting and metric routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected_width}x{expected_height}, got {width}x{height}")]
    DimensionMismatch {
        expected_width: u32,
        expected_height: u32,
        width: u32,
        height: u32,
    },

    #[error("point ({row}, {col}) lies outside a {width}x{height} image")]
    OutOfBounds { row: u32, col: u32, width: u32, height: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("empty pixel set")]
    EmptyPixelSet,

    #[error("empty neighbor ring")]
    EmptyRing,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("image codec error: {0}")]
    Codec(#[from] image::ImageError),
}

pub type Result<T> = std::result::Result<T, Error>;
