//! Grayscale image denoising toolkit.
//!
//! Three noise models (salt & pepper, additive Gaussian, multiplicative
//! speckle), five restoration filters (mean, median, adaptive Wiener,
//! Gaussian, adaptive median), MSE/PSNR metrics and a seeded benchmark
//! harness that sweeps noise density and renders the results as CSV and
//! JSON. All filters use replicate (clamp-to-edge) border handling and
//! quantize once at output, rounding half away from zero.

// Parameter checks use `!(x > 0.0)` on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod filters;
pub mod harness;
pub mod image;
pub mod metrics;
pub mod noise;
pub mod pgm;
pub mod testimage;

pub use error::{Error, Result};
pub use filters::{
    adaptive_median, adaptive_wiener, convolve2d, gaussian_filter, gaussian_kernel, mean_filter,
    median_filter, parse_filter_list, FilterKind, FilterSpec, Kernel2D,
};
pub use harness::{
    bench_artifacts, derive_cell_seed, emit_csv, emit_csv_table, emit_plot_data, run_sweep, run_sweep_with_workers,
    to_json, CellResult, Metric, MseReference, ResultGrid, SweepConfig,
};
pub use image::{pad_replicate, quantize, window, GrayImage, PaddedView, PaddingPolicy};
pub use metrics::{evaluate, mse, psnr, QualityReport};
pub use noise::{
    add_gaussian_noise, add_salt_pepper, add_speckle, density_to_params, GaussianNoiseParams,
    NoiseKind, NoiseParams, NoiseSpec, SaltPepperParams, SpeckleParams,
};
pub use pgm::{load_pgm, save_pgm};
pub use testimage::{default_test_image, synthetic_planet};
