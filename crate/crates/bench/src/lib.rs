//! Fixtures shared by the criterion benches.

use denoise_core::{default_test_image, density_to_params, GrayImage, NoiseKind};

pub const FIXTURE_SEED: u64 = 0x5eed;

/// The default synthetic scene corrupted with `kind` at `density`.
pub fn noisy_scene(kind: NoiseKind, density: f64) -> (GrayImage, GrayImage) {
    let clean = default_test_image();
    let noisy = density_to_params(kind, density)
        .expect("fixture density is in range")
        .apply(&clean, FIXTURE_SEED);
    (clean, noisy)
}
