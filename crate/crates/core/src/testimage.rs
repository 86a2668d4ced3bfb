//! Deterministic synthetic test scene: a flat planet disk crossed by a
//! tilted ring with a radial brightness gradient, on a black sky.
//!
//! With `s = min(w, h) / 2` and offsets `dx, dy` from the image center:
//!
//! * disk: `sqrt(dx² + dy²) <= 0.42 s`, intensity 180;
//! * ring: elliptical radius `ρ = sqrt((dx/s)² + (dy/(0.3 s))²)` in
//!   `[0.55, 0.95]`, intensity `round(90 + 110 (ρ - 0.55) / 0.4)`; the ring
//!   passes in front of the disk below the center and behind it above;
//! * everything else is 0;
//! * every pixel then gets a fixed grain offset `2 (2 h(x, y) - 1)`, where
//!   `h` maps the coordinates through SplitMix64 to `[0, 1)`, and the sum is
//!   rounded and clamped to `[0, 255]`.
//!
//! The grain keeps flat regions from being perfectly constant, as in real
//! sensor data; rank filters behave very differently on exactly flat input.

use crate::error::Result;
use crate::image::{quantize, GrayImage};

pub const DEFAULT_WIDTH: usize = 256;
pub const DEFAULT_HEIGHT: usize = 256;

const DISK_RADIUS: f64 = 0.42;
const DISK_LEVEL: u8 = 180;
const RING_INNER: f64 = 0.55;
const RING_OUTER: f64 = 0.95;
const RING_TILT: f64 = 0.3;
const GRAIN_AMPLITUDE: f64 = 2.0;

/// Deterministic per-pixel value in `[0, 1)`.
fn grain_hash(x: usize, y: usize) -> f64 {
    let mut z = (x as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (y as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z ^= z >> 31;
    z = z.wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 29;
    (z >> 11) as f64 / (1u64 << 53) as f64
}

pub fn synthetic_planet(width: usize, height: usize) -> Result<GrayImage> {
    let s = width.min(height) as f64 / 2.0;
    let cx = (width as f64 - 1.0) / 2.0;
    let cy = (height as f64 - 1.0) / 2.0;
    GrayImage::from_fn(width, height, |x, y| {
        let dx = x as f64 - cx;
        let dy = y as f64 - cy;
        let in_disk = (dx * dx + dy * dy).sqrt() <= DISK_RADIUS * s;
        let u = dx / s;
        let v = dy / (RING_TILT * s);
        let rho = (u * u + v * v).sqrt();
        let ring = (RING_INNER..=RING_OUTER)
            .contains(&rho)
            .then(|| 90.0 + 110.0 * (rho - RING_INNER) / (RING_OUTER - RING_INNER));
        let level = match (in_disk, ring) {
            (true, Some(level)) if dy > 0.0 => level,
            (true, _) => f64::from(DISK_LEVEL),
            (false, Some(level)) => level,
            (false, None) => 0.0,
        };
        quantize(level + GRAIN_AMPLITUDE * (2.0 * grain_hash(x, y) - 1.0))
    })
}

pub fn default_test_image() -> GrayImage {
    synthetic_planet(DEFAULT_WIDTH, DEFAULT_HEIGHT).expect("default dimensions are valid")
}
