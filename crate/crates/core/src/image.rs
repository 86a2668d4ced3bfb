//! Grayscale raster, replicate padding and window extraction.

use crate::error::{Error, Result};

/// An 8-bit single-channel image stored row-major, top row first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage(format!(
                "dimensions must be positive, got {width}x{height}"
            )));
        }
        let expected = width.checked_mul(height).ok_or_else(|| {
            Error::InvalidImage(format!("{width}x{height} overflows the pixel count"))
        })?;
        if pixels.len() != expected {
            return Err(Error::InvalidImage(format!(
                "{width}x{height} image needs {expected} pixels, got {}",
                pixels.len()
            )));
        }
        Ok(GrayImage {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::new(width, height, vec![value; width.saturating_mul(height)])
    }

    /// Builds an image by evaluating `f(x, y)` at every pixel.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width.saturating_mul(height));
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, pixels)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    /// Always false; images have at least one pixel.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    #[inline]
    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    pub fn same_dimensions(&self, other: &GrayImage) -> bool {
        self.width == other.width && self.height == other.height
    }

    /// Same-size image with each pixel produced by `f(x, y)`.
    pub(crate) fn map_coords(&self, mut f: impl FnMut(usize, usize) -> u8) -> GrayImage {
        let mut pixels = Vec::with_capacity(self.pixels.len());
        for y in 0..self.height {
            for x in 0..self.width {
                pixels.push(f(x, y));
            }
        }
        GrayImage {
            width: self.width,
            height: self.height,
            pixels,
        }
    }
}

/// Rounds half away from zero and clamps to `[0, 255]`. NaN maps to 0.
#[inline]
pub fn quantize(value: f64) -> u8 {
    if value.is_nan() {
        return 0;
    }
    value.round().clamp(0.0, 255.0) as u8
}

/// Border handling used when reading outside the source raster.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PaddingPolicy {
    /// Clamp-to-edge: out-of-bounds reads return the nearest in-bounds pixel.
    #[default]
    Replicate,
}

/// Read-only view of an image extended by `margin` virtual pixels on each side.
#[derive(Debug, Clone, Copy)]
pub struct PaddedView<'a> {
    source: &'a GrayImage,
    margin: usize,
    policy: PaddingPolicy,
}

/// Wraps `img` in a replicate-padded view.
pub fn pad_replicate(img: &GrayImage, margin: usize) -> PaddedView<'_> {
    PaddedView {
        source: img,
        margin,
        policy: PaddingPolicy::Replicate,
    }
}

impl<'a> PaddedView<'a> {
    pub fn source(&self) -> &'a GrayImage {
        self.source
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    pub fn policy(&self) -> PaddingPolicy {
        self.policy
    }

    /// Reads a (possibly virtual) pixel. Coordinates beyond the margin are
    /// still answered by clamping; the margin only bounds [`Self::window`].
    #[inline]
    pub fn get(&self, x: isize, y: isize) -> u8 {
        match self.policy {
            PaddingPolicy::Replicate => {
                let cx = x.clamp(0, self.source.width as isize - 1) as usize;
                let cy = y.clamp(0, self.source.height as isize - 1) as usize;
                self.source.get(cx, cy)
            }
        }
    }

    /// The `size`×`size` neighborhood centered on `(cx, cy)`, row-major.
    pub fn window(&self, cx: usize, cy: usize, size: usize) -> Result<Vec<u8>> {
        let mut out = Vec::with_capacity(size * size);
        self.window_into(cx, cy, size, &mut out)?;
        Ok(out)
    }

    /// Like [`Self::window`] but reuses `out`, which is cleared first.
    pub fn window_into(&self, cx: usize, cy: usize, size: usize, out: &mut Vec<u8>) -> Result<()> {
        if size == 0 || size.is_multiple_of(2) {
            return Err(Error::BadKernelSize(size));
        }
        let half = size / 2;
        if half > self.margin {
            return Err(Error::WindowExceedsPadding {
                size,
                needed: half,
                margin: self.margin,
            });
        }
        if cx >= self.source.width || cy >= self.source.height {
            return Err(Error::InvalidImage(format!(
                "window center ({cx}, {cy}) outside {}x{} image",
                self.source.width, self.source.height
            )));
        }
        out.clear();
        let half = half as isize;
        let (cx, cy) = (cx as isize, cy as isize);
        for dy in -half..=half {
            for dx in -half..=half {
                out.push(self.get(cx + dx, cy + dy));
            }
        }
        Ok(())
    }
}

/// Free-function form of [`PaddedView::window`].
pub fn window(view: &PaddedView<'_>, cx: usize, cy: usize, size: usize) -> Result<Vec<u8>> {
    view.window(cx, cy, size)
}
