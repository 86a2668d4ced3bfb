mod common;

use common as oracle;
use common::{binomial_interval, box_weights, gaussian_weights, random_image, rng, Raster};
use denoise_core::*;
use proptest::prelude::*;
use rand::Rng;

const IMAGES: u64 = 100;

#[test]
fn comment_header_matches_independent_reader() {
    let mut bytes = b"P5\n# c\n3 1\n255\n".to_vec();
    bytes.extend([7, 8, 9]);
    // Oracle: drop comment lines, split the header on whitespace.
    let text: String = String::from_utf8_lossy(&bytes[..bytes.len() - 3])
        .lines()
        .filter(|l| !l.starts_with('#'))
        .collect::<Vec<_>>()
        .join(" ");
    let tokens: Vec<&str> = text.split_whitespace().collect();
    assert_eq!(tokens, ["P5", "3", "1", "255"]);
    let w: usize = tokens[1].parse().unwrap();
    let h: usize = tokens[2].parse().unwrap();
    let oracle = GrayImage::new(w, h, bytes[bytes.len() - w * h..].to_vec()).unwrap();
    assert_eq!(load_pgm(&bytes).unwrap(), oracle);
}

#[test]
fn padding_matches_clamp_oracle() {
    let mut r = rng(4);
    let img = random_image(&mut r, 4, 4);
    let oracle = Raster::of(&img);
    let view = pad_replicate(&img, 3);
    for y in -3..7 {
        for x in -3..7 {
            assert_eq!(view.get(x as isize, y as isize), oracle.at(x, y));
        }
    }
    for y in 0..4 {
        for x in 0..4 {
            for size in [1, 3, 5, 7] {
                assert_eq!(view.window(x, y, size).unwrap(), oracle.neighborhood(x, y, size));
            }
        }
    }
}

#[test]
fn convolution_matches_triple_loop() {
    let mut r = rng(8);
    for _ in 0..IMAGES {
        let img = random_image(&mut r, 8, 8);
        let raw: Vec<f64> = (0..9).map(|_| r.random::<f64>()).collect();
        let total: f64 = raw.iter().sum();
        let weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
        let kernel = Kernel2D::new(3, weights.clone()).unwrap();
        assert_eq!(convolve2d(&img, &kernel), oracle::convolve(&img, 3, &weights));
    }
}

#[test]
fn mean_matches_box_convolution() {
    let mut r = rng(16);
    for _ in 0..IMAGES {
        let img = random_image(&mut r, 16, 16);
        for w in [3, 5] {
            let got = mean_filter(&img, w).unwrap();
            assert_eq!(got, oracle::convolve(&img, w, &box_weights(w)));
            assert_eq!(got, convolve2d(&img, &Kernel2D::uniform(w).unwrap()));
        }
    }
}

#[test]
fn gaussian_matches_composed_oracles() {
    let mut r = rng(23);
    for _ in 0..IMAGES {
        let img = random_image(&mut r, 8, 8);
        assert_eq!(
            gaussian_filter(&img, 3, 0.5).unwrap(),
            oracle::convolve(&img, 3, &gaussian_weights(3, 0.5))
        );
        assert_eq!(
            gaussian_filter(&img, 5, 1.0).unwrap(),
            oracle::convolve(&img, 5, &gaussian_weights(5, 1.0))
        );
    }
}

#[test]
fn median_matches_full_sort() {
    let mut r = rng(42);
    for _ in 0..IMAGES {
        let img = random_image(&mut r, 16, 16);
        for w in [3, 5] {
            assert_eq!(median_filter(&img, w).unwrap(), oracle::median(&img, w));
        }
    }
}

#[test]
fn adaptive_median_matches_recursive_oracle() {
    let mut r = rng(77);
    let spn = SaltPepperParams::new(0.4).unwrap();
    for i in 0..IMAGES {
        let img = add_salt_pepper(&random_image(&mut r, 16, 16), &spn, i);
        for s_max in [5, 7] {
            assert_eq!(adaptive_median(&img, s_max).unwrap(), oracle::adaptive_median(&img, s_max));
        }
    }
}

#[test]
fn wiener_matches_direct_formula() {
    let mut r = rng(91);
    for _ in 0..IMAGES {
        let img = random_image(&mut r, 16, 16);
        for noise in [None, Some(250.0)] {
            let got = adaptive_wiener(&img, 3, noise).unwrap();
            let want = oracle::wiener(&img, 3, noise);
            for (a, b) in got.pixels().iter().zip(want.pixels()) {
                assert!(a.abs_diff(*b) <= 1);
            }
        }
    }
}

#[test]
fn selection_filters_only_emit_neighborhood_values() {
    let mut r = rng(5);
    for _ in 0..20 {
        let img = random_image(&mut r, 12, 12);
        let raster = Raster::of(&img);
        let med = median_filter(&img, 3).unwrap();
        let amf = adaptive_median(&img, 7).unwrap();
        for y in 0..12 {
            for x in 0..12 {
                assert!(raster.neighborhood(x, y, 3).contains(&med.get(x, y)));
                assert!(raster.neighborhood(x, y, 7).contains(&amf.get(x, y)));
            }
        }
    }
}

#[test]
fn adaptive_median_smax3_agrees_with_median_and_identity() {
    let mut r = rng(6);
    for _ in 0..20 {
        let img = random_image(&mut r, 12, 12);
        let raster = Raster::of(&img);
        let amf = adaptive_median(&img, 3).unwrap();
        let med = median_filter(&img, 3).unwrap();
        for y in 0..12 {
            for x in 0..12 {
                let mut n = raster.neighborhood(x, y, 3);
                n.sort();
                let (lo, mid, hi) = (n[0], n[4], n[8]);
                let z = img.get(x, y);
                if lo < mid && mid < hi && lo < z && z < hi {
                    assert_eq!(amf.get(x, y), z);
                } else {
                    assert_eq!(amf.get(x, y), med.get(x, y));
                }
            }
        }
    }
}

#[test]
fn adaptive_median_leaves_clean_pixels_of_smooth_images() {
    let smooth = GrayImage::from_fn(64, 64, |x, y| (40 + x + y) as u8).unwrap();
    for density in [0.1, 0.2] {
        let p = SaltPepperParams::new(density).unwrap();
        let noisy = add_salt_pepper(&smooth, &p, 12);
        let out = adaptive_median(&noisy, 7).unwrap();
        let (mut clean, mut kept) = (0, 0);
        for i in 0..smooth.len() {
            let v = noisy.pixels()[i];
            if v != 0 && v != 255 {
                clean += 1;
                kept += usize::from(out.pixels()[i] == v);
            }
        }
        assert!(kept as f64 >= 0.99 * clean as f64, "{kept}/{clean}");
    }
}

#[test]
fn all_filters_fix_constant_images() {
    for v in [0u8, 1, 128, 254, 255] {
        let img = GrayImage::filled(11, 7, v).unwrap();
        for f in FilterSpec::default_set() {
            assert_eq!(f.apply(&img).unwrap(), img, "{f} {v}");
        }
    }
}

#[test]
fn metric_closed_forms() {
    let a = GrayImage::new(2, 2, vec![0, 255, 0, 0]).unwrap();
    let z = GrayImage::filled(2, 2, 0).unwrap();
    assert_eq!(mse(&a, &z).unwrap(), 255.0 * 255.0 / 4.0);
    let r = evaluate(&z, &GrayImage::filled(2, 2, 2).unwrap()).unwrap();
    assert_eq!(r.mse, 4.0);
    assert!((r.psnr_db - 10.0 * (65025.0f64 / 4.0).log10()).abs() < 1e-9);
}

#[test]
fn binomial_intervals_match_frozen_values() {
    // Frozen from scipy.stats.binom.ppf(0.0005 / 0.9995, 16384, p).
    let frozen = [
        (0.1, 1513, 1766),
        (0.2, 3109, 3446),
        (0.3, 4723, 5109),
        (0.4, 6348, 6760),
        (0.5, 7981, 8403),
        (0.6, 9624, 10036),
    ];
    for (p, lo, hi) in frozen {
        assert_eq!(binomial_interval(16384, p, 0.001), (lo, hi), "{p}");
    }
}

#[test]
fn salt_pepper_count_in_binomial_interval() {
    let img = GrayImage::filled(128, 128, 128).unwrap();
    let p = SaltPepperParams::new(0.4).unwrap();
    let out = add_salt_pepper(&img, &p, 2024);
    let hits = out.pixels().iter().filter(|&&v| v != 128).count() as u64;
    let (lo, hi) = binomial_interval(16384, 0.4, 0.001);
    assert!((lo..=hi).contains(&hits), "{hits}");
}

#[test]
fn gaussian_noise_moments() {
    let img = GrayImage::filled(128, 128, 128).unwrap();
    let out = add_gaussian_noise(&img, &GaussianNoiseParams::new(0.0, 0.01).unwrap(), 7);
    let n = out.len() as f64;
    let mean = out.pixels().iter().map(|&v| f64::from(v)).sum::<f64>() / n;
    let var = out.pixels().iter().map(|&v| (f64::from(v) - mean).powi(2)).sum::<f64>() / (n - 1.0);
    assert!((mean - 128.0).abs() <= 1.0, "{mean}");
    assert!((var.sqrt() - 25.5).abs() <= 0.15 * 25.5, "{}", var.sqrt());
}

#[test]
fn speckle_mean_is_preserved() {
    let img = GrayImage::filled(128, 128, 100).unwrap();
    let out = add_speckle(&img, &SpeckleParams::new(0.05).unwrap(), 13);
    let mean = out.pixels().iter().map(|&v| f64::from(v)).sum::<f64>() / out.len() as f64;
    assert!((mean - 100.0).abs() <= 1.5, "{mean}");
}

fn arb_image(max: usize) -> impl Strategy<Value = GrayImage> {
    (1..=max, 1..=max).prop_flat_map(|(w, h)| {
        prop::collection::vec(any::<u8>(), w * h)
            .prop_map(move |px| GrayImage::new(w, h, px).unwrap())
    })
}

fn arb_pair(max: usize) -> impl Strategy<Value = (GrayImage, GrayImage)> {
    (1..=max, 1..=max).prop_flat_map(|(w, h)| {
        (
            prop::collection::vec(any::<u8>(), w * h),
            prop::collection::vec(any::<u8>(), w * h),
        )
            .prop_map(move |(a, b)| (GrayImage::new(w, h, a).unwrap(), GrayImage::new(w, h, b).unwrap()))
    })
}

proptest! {
    #[test]
    fn pgm_round_trip(img in arb_image(24)) {
        let bytes = save_pgm(&img);
        prop_assert_eq!(load_pgm(&bytes).unwrap(), img);
        prop_assert_eq!(save_pgm(&load_pgm(&bytes).unwrap()), bytes);
    }

    #[test]
    fn padding_never_invents_values(img in arb_image(6), x in -8isize..14, y in -8isize..14) {
        let v = pad_replicate(&img, 8).get(x, y);
        prop_assert!(img.pixels().contains(&v));
    }

    #[test]
    fn mse_symmetric_and_zero_iff_equal((a, b) in arb_pair(10)) {
        let ab = mse(&a, &b).unwrap();
        prop_assert_eq!(ab, mse(&b, &a).unwrap());
        prop_assert_eq!(ab == 0.0, a == b);
        prop_assert!((ab - oracle::mse(&a, &b)).abs() <= 1e-9 * ab.max(1.0));
    }

    #[test]
    fn psnr_decreasing_and_scaling(m in 1e-6f64..1e6, k in 1.0001f64..1e3) {
        let base = psnr(m).unwrap().psnr_db;
        let scaled = psnr(m * k).unwrap().psnr_db;
        prop_assert!(scaled < base);
        prop_assert!((base - scaled - 10.0 * k.log10()).abs() < 1e-9);
    }

    #[test]
    fn filters_preserve_shape(img in arb_image(12), idx in 0usize..5) {
        let spec = FilterSpec::default_set()[idx];
        let out = spec.apply(&img).unwrap();
        prop_assert!(out.same_dimensions(&img));
    }

    #[test]
    fn noise_is_seed_deterministic(img in arb_image(12), d in 0.0f64..=1.0, seed: u64, k in 0usize..3) {
        let spec = density_to_params(NoiseKind::ALL[k], d).unwrap();
        prop_assert_eq!(spec.apply(&img, seed), spec.apply(&img, seed));
    }

    #[test]
    fn speckle_fixes_zero_pixels(img in arb_image(12), d in 0.0f64..=1.0, seed: u64) {
        let out = add_speckle(&img, &SpeckleParams::new(d).unwrap(), seed);
        for (a, b) in img.pixels().iter().zip(out.pixels()) {
            if *a == 0 { prop_assert_eq!(*b, 0); }
        }
    }
}
