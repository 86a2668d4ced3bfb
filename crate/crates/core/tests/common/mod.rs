//! Naive reference implementations used as test oracles.
//!
//! Everything here works on plain `Vec<u8>` rasters with explicit index
//! clamping and never calls into the library's filter code.

#![allow(dead_code)]

use denoise_core::GrayImage;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Raster {
    pub w: usize,
    pub h: usize,
    pub px: Vec<u8>,
}

impl Raster {
    pub fn of(img: &GrayImage) -> Self {
        Raster {
            w: img.width(),
            h: img.height(),
            px: img.pixels().to_vec(),
        }
    }

    pub fn at(&self, x: i64, y: i64) -> u8 {
        let cx = x.max(0).min(self.w as i64 - 1) as usize;
        let cy = y.max(0).min(self.h as i64 - 1) as usize;
        self.px[cy * self.w + cx]
    }

    pub fn neighborhood(&self, x: usize, y: usize, size: usize) -> Vec<u8> {
        let r = (size / 2) as i64;
        let mut out = Vec::new();
        for j in -r..=r {
            for i in -r..=r {
                out.push(self.at(x as i64 + i, y as i64 + j));
            }
        }
        out
    }

    pub fn image(w: usize, h: usize, px: Vec<u8>) -> GrayImage {
        GrayImage::new(w, h, px).unwrap()
    }
}

pub fn round_clamp(v: f64) -> u8 {
    let r = if v >= 0.0 { (v + 0.5).floor() } else { (v - 0.5).ceil() };
    r.clamp(0.0, 255.0) as u8
}

pub fn random_image(rng: &mut ChaCha8Rng, w: usize, h: usize) -> GrayImage {
    let px = (0..w * h).map(|_| rng.random::<u8>()).collect();
    GrayImage::new(w, h, px).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Correlation with a row-major kernel, accumulated in kernel order.
pub fn convolve(img: &GrayImage, size: usize, weights: &[f64]) -> GrayImage {
    let r = Raster::of(img);
    let half = (size / 2) as i64;
    let mut out = Vec::new();
    for y in 0..r.h {
        for x in 0..r.w {
            let mut acc = 0.0;
            for ky in 0..size {
                for kx in 0..size {
                    let v = r.at(x as i64 + kx as i64 - half, y as i64 + ky as i64 - half);
                    acc += weights[ky * size + kx] * f64::from(v);
                }
            }
            out.push(round_clamp(acc));
        }
    }
    Raster::image(r.w, r.h, out)
}

pub fn box_weights(size: usize) -> Vec<f64> {
    vec![1.0 / (size * size) as f64; size * size]
}

pub fn gaussian_weights(size: usize, sigma: f64) -> Vec<f64> {
    let c = (size / 2) as f64;
    let mut w = Vec::new();
    for i in 0..size {
        for j in 0..size {
            let (dy, dx) = (i as f64 - c, j as f64 - c);
            w.push((-(dx * dx + dy * dy) / (2.0 * sigma * sigma)).exp());
        }
    }
    let total: f64 = w.iter().sum();
    w.iter().map(|v| v / total).collect()
}

pub fn median(img: &GrayImage, size: usize) -> GrayImage {
    let r = Raster::of(img);
    let mut out = Vec::new();
    for y in 0..r.h {
        for x in 0..r.w {
            let mut n = r.neighborhood(x, y, size);
            n.sort();
            out.push(n[n.len() / 2]);
        }
    }
    Raster::image(r.w, r.h, out)
}

fn amf_pixel(r: &Raster, x: usize, y: usize, size: usize, s_max: usize) -> u8 {
    let mut n = r.neighborhood(x, y, size);
    n.sort();
    let (lo, med, hi) = (n[0], n[n.len() / 2], *n.last().unwrap());
    let z = r.at(x as i64, y as i64);
    if lo < med && med < hi {
        if lo < z && z < hi {
            z
        } else {
            med
        }
    } else if size + 2 <= s_max {
        amf_pixel(r, x, y, size + 2, s_max)
    } else {
        med
    }
}

/// Recursive textbook adaptive median.
pub fn adaptive_median(img: &GrayImage, s_max: usize) -> GrayImage {
    let r = Raster::of(img);
    let mut out = Vec::new();
    for y in 0..r.h {
        for x in 0..r.w {
            out.push(amf_pixel(&r, x, y, 3, s_max));
        }
    }
    Raster::image(r.w, r.h, out)
}

/// Two-pass float statistics and the gain formula written out directly.
pub fn wiener(img: &GrayImage, size: usize, noise: Option<f64>) -> GrayImage {
    let r = Raster::of(img);
    let mut means = Vec::new();
    let mut vars = Vec::new();
    for y in 0..r.h {
        for x in 0..r.w {
            let n: Vec<f64> = r.neighborhood(x, y, size).into_iter().map(f64::from).collect();
            let m = n.iter().sum::<f64>() / n.len() as f64;
            let v = n.iter().map(|a| (a - m) * (a - m)).sum::<f64>() / n.len() as f64;
            means.push(m);
            vars.push(v);
        }
    }
    let nu = noise.unwrap_or(vars.iter().sum::<f64>() / vars.len() as f64);
    let mut out = Vec::new();
    for (i, &g) in r.px.iter().enumerate() {
        let (m, v) = (means[i], vars[i]);
        let val = if v == 0.0 {
            m
        } else {
            m + ((v - nu).max(0.0) / v.max(nu)) * (f64::from(g) - m)
        };
        out.push(round_clamp(val));
    }
    Raster::image(r.w, r.h, out)
}

pub fn mse(a: &GrayImage, b: &GrayImage) -> f64 {
    let s: f64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&p, &q)| (f64::from(p) - f64::from(q)).powi(2))
        .sum();
    s / a.len() as f64
}

/// Central binomial interval `[lo, hi]` holding `1 - alpha` of the mass,
/// from the pmf recursion `P(k+1) = P(k) (n-k)/(k+1) p/(1-p)` in log space.
pub fn binomial_interval(n: u64, p: f64, alpha: f64) -> (u64, u64) {
    let mut log_pmf = n as f64 * (1.0 - p).ln();
    let ratio = (p / (1.0 - p)).ln();
    let mut cdf = 0.0;
    let mut lo = None;
    for k in 0..=n {
        cdf += log_pmf.exp();
        // smallest k with CDF(k) >= alpha/2, smallest k with CDF(k) >= 1 - alpha/2
        if lo.is_none() && cdf >= alpha / 2.0 {
            lo = Some(k);
        }
        if cdf >= 1.0 - alpha / 2.0 {
            return (lo.unwrap(), k);
        }
        log_pmf += ((n - k) as f64 / (k + 1) as f64).ln() + ratio;
    }
    (lo.unwrap_or(n), n)
}
