//! The five restoration filters and their textual spec form.
//!
//! A filter spec string has the shape `kind[:key=value[,key=value]*]`:
//!
//! | kind  | keys                    | defaults            |
//! |-------|-------------------------|---------------------|
//! | `mf`  | `window`                | 3                   |
//! | `smf` | `window`                | 3                   |
//! | `awf` | `window`, `noisevar`    | 3, estimated        |
//! | `gf`  | `size`, `sigma`         | 3, 0.5              |
//! | `amf` | `smax`                  | 7                   |

mod kernel;
mod rank;
mod wiener;

use std::fmt;
use std::str::FromStr;

pub use kernel::{convolve2d, gaussian_filter, gaussian_kernel, mean_filter, Kernel2D};
pub use rank::{adaptive_median, median_filter};
pub use wiener::adaptive_wiener;

use crate::error::{Error, Result};
use crate::image::GrayImage;

pub const DEFAULT_WINDOW: usize = 3;
pub const DEFAULT_GAUSSIAN_SIZE: usize = 3;
pub const DEFAULT_GAUSSIAN_SIGMA: f64 = 0.5;
pub const DEFAULT_SMAX: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FilterKind {
    Mean,
    Median,
    AdaptiveWiener,
    Gaussian,
    AdaptiveMedian,
}

impl FilterKind {
    pub fn label(self) -> &'static str {
        match self {
            FilterKind::Mean => "mf",
            FilterKind::Median => "smf",
            FilterKind::AdaptiveWiener => "awf",
            FilterKind::Gaussian => "gf",
            FilterKind::AdaptiveMedian => "amf",
        }
    }
}

/// A fully parameterized filter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FilterSpec {
    Mean { window: usize },
    Median { window: usize },
    AdaptiveWiener { window: usize, noise_variance: Option<f64> },
    Gaussian { size: usize, sigma: f64 },
    AdaptiveMedian { s_max: usize },
}

impl FilterSpec {
    pub fn mean() -> Self {
        FilterSpec::Mean { window: DEFAULT_WINDOW }
    }

    pub fn median() -> Self {
        FilterSpec::Median { window: DEFAULT_WINDOW }
    }

    pub fn adaptive_wiener() -> Self {
        FilterSpec::AdaptiveWiener {
            window: DEFAULT_WINDOW,
            noise_variance: None,
        }
    }

    pub fn gaussian() -> Self {
        FilterSpec::Gaussian {
            size: DEFAULT_GAUSSIAN_SIZE,
            sigma: DEFAULT_GAUSSIAN_SIGMA,
        }
    }

    pub fn adaptive_median() -> Self {
        FilterSpec::AdaptiveMedian { s_max: DEFAULT_SMAX }
    }

    pub fn defaults(kind: FilterKind) -> Self {
        match kind {
            FilterKind::Mean => Self::mean(),
            FilterKind::Median => Self::median(),
            FilterKind::AdaptiveWiener => Self::adaptive_wiener(),
            FilterKind::Gaussian => Self::gaussian(),
            FilterKind::AdaptiveMedian => Self::adaptive_median(),
        }
    }

    /// MF, AWF, GF, SMF, AMF with default parameters.
    pub fn default_set() -> Vec<FilterSpec> {
        vec![
            Self::mean(),
            Self::adaptive_wiener(),
            Self::gaussian(),
            Self::median(),
            Self::adaptive_median(),
        ]
    }

    pub fn kind(&self) -> FilterKind {
        match self {
            FilterSpec::Mean { .. } => FilterKind::Mean,
            FilterSpec::Median { .. } => FilterKind::Median,
            FilterSpec::AdaptiveWiener { .. } => FilterKind::AdaptiveWiener,
            FilterSpec::Gaussian { .. } => FilterKind::Gaussian,
            FilterSpec::AdaptiveMedian { .. } => FilterKind::AdaptiveMedian,
        }
    }

    /// Checks parameters without running the filter.
    pub fn validate(&self) -> Result<()> {
        match *self {
            FilterSpec::Mean { window } | FilterSpec::Median { window } => kernel::check_odd(window),
            FilterSpec::AdaptiveWiener {
                window,
                noise_variance,
            } => {
                kernel::check_odd(window)?;
                match noise_variance {
                    Some(nv) if !(nv >= 0.0) || !nv.is_finite() => {
                        Err(Error::NegativeNoiseVariance(nv))
                    }
                    _ => Ok(()),
                }
            }
            FilterSpec::Gaussian { size, sigma } => gaussian_kernel(size, sigma).map(|_| ()),
            FilterSpec::AdaptiveMedian { s_max } => {
                if s_max < 3 || s_max % 2 == 0 {
                    Err(Error::BadSmax(s_max))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn apply(&self, img: &GrayImage) -> Result<GrayImage> {
        match *self {
            FilterSpec::Mean { window } => mean_filter(img, window),
            FilterSpec::Median { window } => median_filter(img, window),
            FilterSpec::AdaptiveWiener {
                window,
                noise_variance,
            } => adaptive_wiener(img, window, noise_variance),
            FilterSpec::Gaussian { size, sigma } => gaussian_filter(img, size, sigma),
            FilterSpec::AdaptiveMedian { s_max } => adaptive_median(img, s_max),
        }
    }
}

/// Canonical form: the bare kind when every parameter is at its default,
/// otherwise `kind:` followed by the non-default parameters.
impl fmt::Display for FilterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut params = Vec::new();
        match *self {
            FilterSpec::Mean { window } | FilterSpec::Median { window } => {
                if window != DEFAULT_WINDOW {
                    params.push(format!("window={window}"));
                }
            }
            FilterSpec::AdaptiveWiener {
                window,
                noise_variance,
            } => {
                if window != DEFAULT_WINDOW {
                    params.push(format!("window={window}"));
                }
                if let Some(nv) = noise_variance {
                    params.push(format!("noisevar={nv}"));
                }
            }
            FilterSpec::Gaussian { size, sigma } => {
                if size != DEFAULT_GAUSSIAN_SIZE {
                    params.push(format!("size={size}"));
                }
                if sigma != DEFAULT_GAUSSIAN_SIGMA {
                    params.push(format!("sigma={sigma}"));
                }
            }
            FilterSpec::AdaptiveMedian { s_max } => {
                if s_max != DEFAULT_SMAX {
                    params.push(format!("smax={s_max}"));
                }
            }
        }
        f.write_str(self.kind().label())?;
        if !params.is_empty() {
            write!(f, ":{}", params.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for FilterSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let syntax = |token: &str| Error::FilterSpecSyntax {
            spec: s.to_string(),
            token: token.to_string(),
        };
        let (kind, rest) = match s.split_once(':') {
            Some((k, r)) => (k, Some(r)),
            None => (s, None),
        };
        let mut spec = match kind.trim() {
            "mf" => Self::mean(),
            "smf" => Self::median(),
            "awf" => Self::adaptive_wiener(),
            "gf" => Self::gaussian(),
            "amf" => Self::adaptive_median(),
            other => return Err(syntax(other)),
        };
        if let Some(rest) = rest {
            for token in rest.split(',') {
                let (key, value) = token.split_once('=').ok_or_else(|| syntax(token))?;
                let int = || value.trim().parse::<usize>().map_err(|_| syntax(token));
                let real = || {
                    value
                        .trim()
                        .parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .ok_or_else(|| syntax(token))
                };
                match (&mut spec, key.trim()) {
                    (FilterSpec::Mean { window }, "window")
                    | (FilterSpec::Median { window }, "window")
                    | (FilterSpec::AdaptiveWiener { window, .. }, "window") => *window = int()?,
                    (FilterSpec::AdaptiveWiener { noise_variance, .. }, "noisevar") => {
                        *noise_variance = Some(real()?)
                    }
                    (FilterSpec::Gaussian { size, .. }, "size") => *size = int()?,
                    (FilterSpec::Gaussian { sigma, .. }, "sigma") => *sigma = real()?,
                    (FilterSpec::AdaptiveMedian { s_max }, "smax") => *s_max = int()?,
                    _ => return Err(syntax(token)),
                }
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

/// Splits a comma-separated list of filter specs.
///
/// Parameters are comma-separated too, so a `key=value` token without a
/// `:` is attached to the preceding spec: `mf,gf:size=5,sigma=1,smf`
/// yields `mf`, `gf:size=5,sigma=1` and `smf`.
pub fn parse_filter_list(list: &str) -> Result<Vec<FilterSpec>> {
    let mut groups: Vec<String> = Vec::new();
    for token in list.split(',') {
        let token = token.trim();
        let is_param = token.contains('=') && !token.contains(':');
        match groups.last_mut() {
            Some(last) if is_param => {
                last.push(',');
                last.push_str(token);
            }
            _ => groups.push(token.to_string()),
        }
    }
    groups.iter().map(|g| g.parse()).collect()
}
