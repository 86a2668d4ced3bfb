//! MSE and PSNR for 8-bit images.

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Square of the 8-bit peak value.
pub const PEAK_SQUARED: f64 = 255.0 * 255.0;

/// Quality of a candidate image against a reference.
///
/// `psnr_db` is `f64::INFINITY` when `mse` is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityReport {
    pub mse: f64,
    pub psnr_db: f64,
}

impl QualityReport {
    pub fn is_lossless(&self) -> bool {
        self.psnr_db.is_infinite()
    }

    /// `mse,psnr_db` with two decimals each and `inf` for a perfect match.
    pub fn csv_line(&self) -> String {
        format!("{},{}", format_value(self.mse), format_value(self.psnr_db))
    }
}

/// Two-decimal rendering used by every CSV surface; infinity prints as `inf`.
pub fn format_value(v: f64) -> String {
    if v.is_infinite() && v > 0.0 {
        "inf".to_string()
    } else {
        format!("{v:.2}")
    }
}

/// Mean squared difference. The squared-error sum is accumulated exactly.
pub fn mse(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    if !a.same_dimensions(b) {
        return Err(Error::DimensionMismatch(a.width(), a.height(), b.width(), b.height()));
    }
    let sum: u64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&p, &q)| {
            let d = u64::from(p.abs_diff(q));
            d * d
        })
        .sum();
    Ok(sum as f64 / a.len() as f64)
}

/// `10·log10(255² / mse)`, or infinity for `mse == 0`.
pub fn psnr(mse_value: f64) -> Result<QualityReport> {
    if !(mse_value >= 0.0) {
        return Err(Error::NegativeMse(mse_value));
    }
    let psnr_db = if mse_value == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (PEAK_SQUARED / mse_value).log10()
    };
    Ok(QualityReport {
        mse: mse_value,
        psnr_db,
    })
}

pub fn evaluate(reference: &GrayImage, candidate: &GrayImage) -> Result<QualityReport> {
    psnr(mse(reference, candidate)?)
}
