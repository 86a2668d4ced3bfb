//! Seeded injection of salt & pepper, Gaussian and speckle noise.
//!
//! Every injector draws from a `ChaCha8Rng` seeded with
//! `SeedableRng::seed_from_u64(seed)` and consumes draws strictly in
//! row-major pixel order, so output depends only on (image, params, seed):
//!
//! * salt & pepper: one `f64` in `[0, 1)` per pixel; `u < p1` gives salt,
//!   `p1 <= u < p1 + p2` gives pepper.
//! * Gaussian: one `rand_distr::Normal` sample per pixel, scaled by 255.
//! * speckle: one `f64` in `[0, 1)` per pixel mapped to `n = a(2u - 1)`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::{quantize, GrayImage};

/// The three noise families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseKind {
    /// Salt & pepper impulses.
    Spn,
    /// Additive Gaussian noise.
    Rvin,
    /// Multiplicative uniform speckle.
    Spkn,
}

impl NoiseKind {
    pub const ALL: [NoiseKind; 3] = [NoiseKind::Spn, NoiseKind::Rvin, NoiseKind::Spkn];

    pub fn label(self) -> &'static str {
        match self {
            NoiseKind::Spn => "spn",
            NoiseKind::Rvin => "rvin",
            NoiseKind::Spkn => "spkn",
        }
    }

    /// Stable small integer used when mixing seeds.
    pub(crate) fn tag(self) -> u64 {
        match self {
            NoiseKind::Spn => 1,
            NoiseKind::Rvin => 2,
            NoiseKind::Spkn => 3,
        }
    }
}

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "spn" => Ok(NoiseKind::Spn),
            "rvin" => Ok(NoiseKind::Rvin),
            "spkn" => Ok(NoiseKind::Spkn),
            other => Err(Error::BadNoiseParams(format!(
                "unknown noise kind {other:?} (expected spn, rvin or spkn)"
            ))),
        }
    }
}

/// Normal noise on normalized intensities: `z ~ N(mean, variance)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianNoiseParams {
    pub mean: f64,
    pub variance: f64,
}

impl GaussianNoiseParams {
    pub fn new(mean: f64, variance: f64) -> Result<Self> {
        if !mean.is_finite() {
            return Err(Error::BadNoiseParams(format!("mean {mean} is not finite")));
        }
        if !(variance >= 0.0) || !variance.is_finite() {
            return Err(Error::BadNoiseParams(format!(
                "variance {variance} must be finite and non-negative"
            )));
        }
        Ok(GaussianNoiseParams { mean, variance })
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SaltPepperParams {
    pub density: f64,
    pub salt_fraction: f64,
    pub salt_value: u8,
    pub pepper_value: u8,
}

impl SaltPepperParams {
    /// Equal salt/pepper split with white salt and black pepper.
    pub fn new(density: f64) -> Result<Self> {
        Self::with_split(density, 0.5)
    }

    pub fn with_split(density: f64, salt_fraction: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&density) {
            return Err(Error::DensityOutOfRange(density));
        }
        if !(0.0..=1.0).contains(&salt_fraction) {
            return Err(Error::BadNoiseParams(format!(
                "salt fraction {salt_fraction} is outside [0, 1]"
            )));
        }
        Ok(SaltPepperParams {
            density,
            salt_fraction,
            salt_value: 255,
            pepper_value: 0,
        })
    }

    /// Probability of a pixel becoming salt.
    pub fn p_salt(&self) -> f64 {
        self.density * self.salt_fraction
    }

    /// Probability of a pixel becoming pepper.
    pub fn p_pepper(&self) -> f64 {
        self.density - self.p_salt()
    }
}

/// Uniform multiplicative noise with zero mean and the given variance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpeckleParams {
    pub variance: f64,
}

impl SpeckleParams {
    pub fn new(variance: f64) -> Result<Self> {
        if !(variance >= 0.0) || !variance.is_finite() {
            return Err(Error::BadNoiseParams(format!(
                "variance {variance} must be finite and non-negative"
            )));
        }
        Ok(SpeckleParams { variance })
    }

    /// Half-width `a` of the support `[-a, a]`; `Var(U(-a, a)) = a²/3`.
    pub fn half_width(&self) -> f64 {
        (3.0 * self.variance).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum NoiseParams {
    SaltPepper(SaltPepperParams),
    Gaussian(GaussianNoiseParams),
    Speckle(SpeckleParams),
}

/// A noise kind together with the density it was derived from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub kind: NoiseKind,
    pub density: f64,
    pub params: NoiseParams,
}

impl NoiseSpec {
    pub fn apply(&self, img: &GrayImage, seed: u64) -> GrayImage {
        match &self.params {
            NoiseParams::SaltPepper(p) => add_salt_pepper(img, p, seed),
            NoiseParams::Gaussian(p) => add_gaussian_noise(img, p, seed),
            NoiseParams::Speckle(p) => add_speckle(img, p, seed),
        }
    }
}

/// Maps a density to concrete parameters.
///
/// Salt & pepper uses the density as corruption probability. Gaussian and
/// speckle use it as the variance on normalized `[0, 1]` intensities.
pub fn density_to_params(kind: NoiseKind, density: f64) -> Result<NoiseSpec> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::DensityOutOfRange(density));
    }
    let params = match kind {
        NoiseKind::Spn => NoiseParams::SaltPepper(SaltPepperParams::new(density)?),
        NoiseKind::Rvin => NoiseParams::Gaussian(GaussianNoiseParams::new(0.0, density)?),
        NoiseKind::Spkn => NoiseParams::Speckle(SpeckleParams::new(density)?),
    };
    Ok(NoiseSpec {
        kind,
        density,
        params,
    })
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn add_salt_pepper(img: &GrayImage, params: &SaltPepperParams, seed: u64) -> GrayImage {
    let mut rng = rng_for(seed);
    let p_salt = params.p_salt();
    let p_any = params.density;
    img.map_coords(|x, y| {
        let u: f64 = rng.random();
        if u < p_salt {
            params.salt_value
        } else if u < p_any {
            params.pepper_value
        } else {
            img.get(x, y)
        }
    })
}

/// `p -> quantize(p + 255 z)` with `z ~ N(mean, variance)` per pixel.
pub fn add_gaussian_noise(img: &GrayImage, params: &GaussianNoiseParams, seed: u64) -> GrayImage {
    let mut rng = rng_for(seed);
    // std_dev is finite and non-negative by construction
    let normal = Normal::new(params.mean, params.std_dev()).expect("valid normal parameters");
    img.map_coords(|x, y| {
        let z = normal.sample(&mut rng);
        quantize(f64::from(img.get(x, y)) + 255.0 * z)
    })
}

/// `I -> quantize(I (1 + n))` with `n ~ U(-a, a)` per pixel.
pub fn add_speckle(img: &GrayImage, params: &SpeckleParams, seed: u64) -> GrayImage {
    let mut rng = rng_for(seed);
    let a = params.half_width();
    img.map_coords(|x, y| {
        let u: f64 = rng.random();
        let n = a * (2.0 * u - 1.0);
        let i = f64::from(img.get(x, y));
        quantize(i + n * i)
    })
}
