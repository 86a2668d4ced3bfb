//! Linear filters: kernels, replicate-padded convolution, mean and Gaussian.

use crate::error::{Error, Result};
use crate::image::{pad_replicate, quantize, GrayImage};

/// Allowed deviation of a kernel's weight sum from 1.
const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// A square, odd-sized, normalized convolution kernel stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel2D {
    size: usize,
    weights: Vec<f64>,
}

impl Kernel2D {
    pub fn new(size: usize, weights: Vec<f64>) -> Result<Self> {
        check_odd(size)?;
        if weights.len() != size * size {
            return Err(Error::BadKernel(format!(
                "size {size} needs {} weights, got {}",
                size * size,
                weights.len()
            )));
        }
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::BadKernel("weights must be finite".into()));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::BadKernel(format!("weights sum to {sum}, expected 1")));
        }
        Ok(Kernel2D { size, weights })
    }

    /// Box kernel with every weight equal to `1 / size²`.
    pub fn uniform(size: usize) -> Result<Self> {
        check_odd(size)?;
        let n = size * size;
        Ok(Kernel2D {
            size,
            weights: vec![1.0 / n as f64; n],
        })
    }

    pub fn identity() -> Self {
        Kernel2D {
            size: 1,
            weights: vec![1.0],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Weight at row `row`, column `col`.
    pub fn at(&self, row: usize, col: usize) -> f64 {
        self.weights[row * self.size + col]
    }
}

pub(crate) fn check_odd(size: usize) -> Result<()> {
    if size == 0 || size.is_multiple_of(2) {
        Err(Error::BadKernelSize(size))
    } else {
        Ok(())
    }
}

/// Sampled isotropic Gaussian, `exp(-(dx² + dy²) / 2σ²)` normalized to sum 1.
pub fn gaussian_kernel(size: usize, sigma: f64) -> Result<Kernel2D> {
    check_odd(size)?;
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::BadSigma(sigma));
    }
    let half = (size / 2) as i64;
    let denom = 2.0 * sigma * sigma;
    let mut weights = Vec::with_capacity(size * size);
    for dy in -half..=half {
        for dx in -half..=half {
            weights.push((-((dx * dx + dy * dy) as f64) / denom).exp());
        }
    }
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    Ok(Kernel2D { size, weights })
}

/// Correlates `img` with `kernel` under replicate padding and quantizes.
///
/// Products are accumulated in kernel row-major order.
pub fn convolve2d(img: &GrayImage, kernel: &Kernel2D) -> GrayImage {
    let half = (kernel.size / 2) as isize;
    let view = pad_replicate(img, kernel.size / 2);
    img.map_coords(|x, y| {
        let (x, y) = (x as isize, y as isize);
        let mut acc = 0.0;
        let mut k = 0;
        for dy in -half..=half {
            for dx in -half..=half {
                acc += kernel.weights[k] * f64::from(view.get(x + dx, y + dy));
                k += 1;
            }
        }
        quantize(acc)
    })
}

/// Box average over a `window`×`window` neighborhood.
pub fn mean_filter(img: &GrayImage, window: usize) -> Result<GrayImage> {
    Ok(convolve2d(img, &Kernel2D::uniform(window)?))
}

pub fn gaussian_filter(img: &GrayImage, kernel_size: usize, sigma: f64) -> Result<GrayImage> {
    Ok(convolve2d(img, &gaussian_kernel(kernel_size, sigma)?))
}
