//! Density-sweep benchmark: noise kinds × densities × filters.
//!
//! Each (noise kind, density, trial) triple gets its own seed derived from
//! the master seed, so the noisy image for a cell never depends on which
//! filters run or in what order cells execute. Trials are averaged on MSE
//! and PSNR is recomputed from the averaged MSE.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::filters::FilterSpec;
use crate::image::GrayImage;
use crate::metrics::{self, format_value, QualityReport};
use crate::noise::{density_to_params, NoiseKind};

pub const DEFAULT_DENSITIES: [f64; 6] = [0.10, 0.20, 0.30, 0.40, 0.50, 0.60];

/// What the filtered image is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MseReference {
    /// The clean input image (restoration quality).
    #[default]
    Original,
    /// The noisy image the filter was given.
    Noisy,
}

impl fmt::Display for MseReference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MseReference::Original => "original",
            MseReference::Noisy => "noisy",
        })
    }
}

impl FromStr for MseReference {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "original" => Ok(MseReference::Original),
            "noisy" => Ok(MseReference::Noisy),
            other => Err(Error::InvalidConfig(format!(
                "mse reference {other:?} (expected original or noisy)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Psnr,
    Mse,
}

impl Metric {
    pub fn label(self) -> &'static str {
        match self {
            Metric::Psnr => "psnr",
            Metric::Mse => "mse",
        }
    }

    fn pick(self, report: &QualityReport) -> f64 {
        match self {
            Metric::Psnr => report.psnr_db,
            Metric::Mse => report.mse,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub noise_kinds: Vec<NoiseKind>,
    pub densities: Vec<f64>,
    pub filters: Vec<FilterSpec>,
    pub master_seed: u64,
    pub trials: usize,
    pub mse_reference: MseReference,
}

impl SweepConfig {
    /// All three noise kinds at 10%..60% through all five default filters.
    pub fn new(master_seed: u64) -> Self {
        SweepConfig {
            noise_kinds: NoiseKind::ALL.to_vec(),
            densities: DEFAULT_DENSITIES.to_vec(),
            filters: FilterSpec::default_set(),
            master_seed,
            trials: 1,
            mse_reference: MseReference::Original,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidConfig(msg));
        if self.noise_kinds.is_empty() || self.densities.is_empty() || self.filters.is_empty() {
            return invalid("noise kinds, densities and filters must be non-empty".into());
        }
        if self.trials == 0 {
            return invalid("trials must be at least 1".into());
        }
        for (i, kind) in self.noise_kinds.iter().enumerate() {
            if self.noise_kinds[..i].contains(kind) {
                return invalid(format!("noise kind {kind} listed twice"));
            }
        }
        for &d in &self.densities {
            if !(0.0..=1.0).contains(&d) {
                return Err(Error::DensityOutOfRange(d));
            }
        }
        if self.densities.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("densities must be strictly increasing".into());
        }
        let labels: Vec<String> = self.filters.iter().map(ToString::to_string).collect();
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return invalid(format!("filter {label} listed twice"));
            }
        }
        for filter in &self.filters {
            filter.validate()?;
        }
        Ok(())
    }
}

/// Averaged quality of one (noise kind, density, filter) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub noise: NoiseKind,
    pub density: f64,
    pub filter: FilterSpec,
    pub report: QualityReport,
    /// Seed of the noisy image for each trial, in trial order.
    pub seeds: Vec<u64>,
}

impl CellResult {
    pub fn filter_label(&self) -> String {
        self.filter.to_string()
    }

    /// `kind/density/filter`, the key used in the JSON document.
    pub fn key(&self) -> String {
        format!("{}/{}/{}", self.noise, self.density, self.filter)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultGrid {
    pub config: SweepConfig,
    pub image_width: usize,
    pub image_height: usize,
    /// Cells ordered by noise kind, then density, then filter, as configured.
    pub cells: Vec<CellResult>,
}

impl ResultGrid {
    pub fn cell(&self, noise: NoiseKind, density: f64, filter: &FilterSpec) -> Option<&CellResult> {
        self.cells
            .iter()
            .find(|c| c.noise == noise && c.density == density && &c.filter == filter)
    }

    /// PSNR (or MSE) of one filter across the configured densities.
    pub fn series(&self, noise: NoiseKind, filter: &FilterSpec, metric: Metric) -> Vec<f64> {
        self.config
            .densities
            .iter()
            .filter_map(|&d| self.cell(noise, d, filter))
            .map(|c| metric.pick(&c.report))
            .collect()
    }
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for the noisy image of one (noise kind, density, trial).
///
/// Folds the master seed, a kind tag, the IEEE-754 bits of the density and
/// the trial index through SplitMix64, one word at a time.
pub fn derive_cell_seed(master_seed: u64, noise_kind: NoiseKind, density: f64, trial: u32) -> u64 {
    [noise_kind.tag(), density.to_bits(), u64::from(trial)]
        .into_iter()
        .fold(mix64(master_seed.wrapping_add(GOLDEN_GAMMA)), |h, word| {
            mix64(h.wrapping_add(GOLDEN_GAMMA) ^ word)
        })
}

/// Runs the sweep on the global rayon pool.
pub fn run_sweep(input: &GrayImage, config: &SweepConfig) -> Result<ResultGrid> {
    config.validate()?;
    sweep(input, config)
}

/// Runs the sweep on a dedicated pool of `workers` threads.
pub fn run_sweep_with_workers(
    input: &GrayImage,
    config: &SweepConfig,
    workers: usize,
) -> Result<ResultGrid> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot start worker pool: {e}")))?;
    pool.install(|| sweep(input, config))
}

struct Job {
    noise: NoiseKind,
    density: f64,
    trial: u32,
    seed: u64,
}

fn sweep(input: &GrayImage, config: &SweepConfig) -> Result<ResultGrid> {
    let trials = config.trials as u32;
    let mut jobs = Vec::new();
    for &noise in &config.noise_kinds {
        for &density in &config.densities {
            for trial in 0..trials {
                let seed = derive_cell_seed(config.master_seed, noise, density, trial);
                jobs.push(Job {
                    noise,
                    density,
                    trial,
                    seed,
                });
            }
        }
    }

    // One MSE per filter for every job, in job order.
    let per_job: Vec<Vec<f64>> = jobs
        .par_iter()
        .map(|job| {
            let spec = density_to_params(job.noise, job.density)?;
            let noisy = spec.apply(input, job.seed);
            let reference = match config.mse_reference {
                MseReference::Original => input,
                MseReference::Noisy => &noisy,
            };
            config
                .filters
                .par_iter()
                .map(|filter| {
                    let filtered = filter.apply(&noisy)?;
                    metrics::mse(reference, &filtered)
                })
                .collect::<Result<Vec<f64>>>()
                .map_err(|e| Error::Cell {
                    noise: job.noise.to_string(),
                    density: job.density,
                    filter: "?".into(),
                    source: Box::new(e),
                })
        })
        .collect::<Result<_>>()?;

    let mut cells = Vec::with_capacity(jobs.len() / config.trials * config.filters.len());
    for (chunk, results) in jobs.chunks(config.trials).zip(per_job.chunks(config.trials)) {
        let (noise, density) = (chunk[0].noise, chunk[0].density);
        debug_assert!(chunk.iter().enumerate().all(|(i, j)| j.trial == i as u32));
        let seeds: Vec<u64> = chunk.iter().map(|j| j.seed).collect();
        for (f, filter) in config.filters.iter().enumerate() {
            let total: f64 = results.iter().map(|r| r[f]).sum();
            let mean_mse = total / config.trials as f64;
            let report = metrics::psnr(mean_mse).map_err(|e| Error::Cell {
                noise: noise.to_string(),
                density,
                filter: filter.to_string(),
                source: Box::new(e),
            })?;
            cells.push(CellResult {
                noise,
                density,
                filter: *filter,
                report,
                seeds: seeds.clone(),
            });
        }
    }

    Ok(ResultGrid {
        config: config.clone(),
        image_width: input.width(),
        image_height: input.height(),
        cells,
    })
}

/// `0.1` -> `10%`, `0.125` -> `12.5%`.
pub fn percent_label(density: f64) -> String {
    let pct = density * 100.0;
    let rounded = pct.round();
    if (pct - rounded).abs() < 1e-9 {
        format!("{}%", rounded as i64)
    } else {
        format!("{pct}%")
    }
}

fn write_rows(rows: &[Vec<String>]) -> Vec<u8> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for row in rows {
        writer.write_record(row).expect("writing to memory cannot fail");
    }
    writer.into_inner().expect("writing to memory cannot fail")
}

/// One table in the layout `filter,10%,20%,...` with a row per filter.
pub fn emit_csv_table(grid: &ResultGrid, noise: NoiseKind, metric: Metric) -> Vec<u8> {
    let mut rows = Vec::with_capacity(grid.config.filters.len() + 1);
    let mut header = vec!["filter".to_string()];
    header.extend(grid.config.densities.iter().map(|&d| percent_label(d)));
    rows.push(header);
    for filter in &grid.config.filters {
        let mut row = vec![filter.to_string()];
        row.extend(
            grid.series(noise, filter, metric)
                .into_iter()
                .map(format_value),
        );
        rows.push(row);
    }
    write_rows(&rows)
}

/// One table per configured noise kind, separated by an empty line.
pub fn emit_csv(grid: &ResultGrid, metric: Metric) -> Vec<u8> {
    let mut out = Vec::new();
    for (i, &noise) in grid.config.noise_kinds.iter().enumerate() {
        if i > 0 {
            out.push(b'\n');
        }
        out.extend(emit_csv_table(grid, noise, metric));
    }
    out
}

/// Long format `noise,filter,density,metric_value`, sorted by
/// (noise label, filter label, density).
pub fn emit_plot_data(grid: &ResultGrid, metric: Metric) -> Vec<u8> {
    let mut cells: Vec<(&'static str, String, f64, f64)> = grid
        .cells
        .iter()
        .map(|c| (c.noise.label(), c.filter_label(), c.density, metric.pick(&c.report)))
        .collect();
    cells.sort_by(|a, b| {
        a.0.cmp(b.0)
            .then_with(|| a.1.cmp(&b.1))
            .then_with(|| a.2.total_cmp(&b.2))
    });
    let mut rows = vec![vec![
        "noise".to_string(),
        "filter".to_string(),
        "density".to_string(),
        "metric_value".to_string(),
    ]];
    rows.extend(
        cells
            .into_iter()
            .map(|(n, f, d, v)| vec![n.to_string(), f, d.to_string(), format_value(v)]),
    );
    write_rows(&rows)
}

fn number_or_inf(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        json!("inf")
    }
}

/// The whole grid as one JSON document with cells keyed `kind/density/filter`.
pub fn to_json(grid: &ResultGrid) -> String {
    let config = &grid.config;
    let mut cells = Map::new();
    for cell in &grid.cells {
        cells.insert(
            cell.key(),
            json!({
                "noise": cell.noise,
                "filter": cell.filter_label(),
                "density": cell.density,
                "mse": cell.report.mse,
                "psnr_db": number_or_inf(cell.report.psnr_db),
                "seed": cell.seeds[0],
                "trial_seeds": cell.seeds,
            }),
        );
    }
    let doc = json!({
        "config": {
            "image_width": grid.image_width,
            "image_height": grid.image_height,
            "noise_kinds": config.noise_kinds,
            "densities": config.densities,
            "filters": config.filters.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "master_seed": config.master_seed,
            "trials": config.trials,
            "mse_reference": config.mse_reference,
        },
        "cells": Value::Object(cells),
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
    text.push('\n');
    text
}

/// Every file of a benchmark output directory as `(file name, bytes)`:
/// `{kind}_psnr.csv` and `{kind}_mse.csv` per noise kind, `plot_psnr.csv`,
/// `plot_mse.csv` and `grid.json`.
pub fn bench_artifacts(grid: &ResultGrid) -> Vec<(String, Vec<u8>)> {
    let mut files = Vec::new();
    for &noise in &grid.config.noise_kinds {
        for metric in [Metric::Psnr, Metric::Mse] {
            files.push((
                format!("{}_{}.csv", noise, metric.label()),
                emit_csv_table(grid, noise, metric),
            ));
        }
    }
    for metric in [Metric::Psnr, Metric::Mse] {
        files.push((format!("plot_{}.csv", metric.label()), emit_plot_data(grid, metric)));
    }
    files.push(("grid.json".to_string(), to_json(grid).into_bytes()));
    files
}
