//! Locally adaptive Wiener filter.

use crate::error::{Error, Result};
use crate::filters::kernel::check_odd;
use crate::image::{pad_replicate, quantize, GrayImage};

/// Per-pixel window mean and population variance on the 0-255 scale.
fn local_stats(img: &GrayImage, window: usize) -> (Vec<f64>, Vec<f64>) {
    let view = pad_replicate(img, window / 2);
    let half = (window / 2) as isize;
    let n = (window * window) as u64;
    let mut means = Vec::with_capacity(img.len());
    let mut variances = Vec::with_capacity(img.len());
    for y in 0..img.height() as isize {
        for x in 0..img.width() as isize {
            let (mut sum, mut sum_sq) = (0u64, 0u64);
            for dy in -half..=half {
                for dx in -half..=half {
                    let v = u64::from(view.get(x + dx, y + dy));
                    sum += v;
                    sum_sq += v * v;
                }
            }
            // n·Σv² − (Σv)² is exact in integers and never negative
            let spread = n * sum_sq - sum * sum;
            means.push(sum as f64 / n as f64);
            variances.push(spread as f64 / (n * n) as f64);
        }
    }
    (means, variances)
}

/// Adaptive Wiener filter over a `window`×`window` neighborhood.
///
/// `noise_variance` is on the 0-255 intensity scale. When absent it is
/// estimated as the mean of all local variances.
pub fn adaptive_wiener(
    img: &GrayImage,
    window: usize,
    noise_variance: Option<f64>,
) -> Result<GrayImage> {
    check_odd(window)?;
    if let Some(nv) = noise_variance {
        if !(nv >= 0.0) || !nv.is_finite() {
            return Err(Error::NegativeNoiseVariance(nv));
        }
    }
    let (means, variances) = local_stats(img, window);
    let noise = noise_variance
        .unwrap_or_else(|| variances.iter().sum::<f64>() / variances.len() as f64);

    let mut i = 0;
    Ok(img.map_coords(|x, y| {
        let (mean, var) = (means[i], variances[i]);
        i += 1;
        if var == 0.0 {
            return quantize(mean);
        }
        let gain = (var - noise).max(0.0) / var.max(noise);
        quantize(mean + gain * (f64::from(img.get(x, y)) - mean))
    }))
}
