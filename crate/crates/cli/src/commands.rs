use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context};
use denoise_core::{
    bench_artifacts, density_to_params, evaluate, load_pgm, parse_filter_list, run_sweep_with_workers,
    save_pgm, synthetic_planet, testimage, FilterSpec, GrayImage, MseReference, NoiseKind, SweepConfig,
};

use crate::{BenchArgs, EvalArgs, FilterArgs, GenArgs, NoiseArgs};

const EXIT_IO: u8 = 2;
const EXIT_PARAM: u8 = 3;

pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

type Outcome<T = ()> = Result<T, Failure>;

fn io(error: anyhow::Error) -> Failure {
    Failure { code: EXIT_IO, error }
}

fn param(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: EXIT_PARAM,
        error: error.into(),
    }
}

/// Library errors split by kind: malformed files are I/O failures, the rest
/// are parameter failures.
fn library(error: denoise_core::Error) -> Failure {
    let code = if error.is_format() { EXIT_IO } else { EXIT_PARAM };
    Failure {
        code,
        error: error.into(),
    }
}

fn read_image(path: &Path) -> Outcome<GrayImage> {
    let bytes = fs::read(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(io)?;
    load_pgm(&bytes).map_err(|e| io(anyhow!(e).context(format!("cannot decode {}", path.display()))))
}

fn write_file(path: &Path, bytes: &[u8]) -> Outcome {
    fs::write(path, bytes)
        .with_context(|| format!("cannot write {}", path.display()))
        .map_err(io)
}

/// Decimal or `0x` hex.
pub fn parse_seed(text: &str) -> anyhow::Result<u64> {
    let t = text.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse(),
    };
    parsed.map_err(|_| anyhow!("invalid seed {text:?} (expected decimal or 0x-hex 64-bit integer)"))
}

fn resolve_seed(seed: Option<&str>) -> Outcome<u64> {
    match seed {
        Some(s) => parse_seed(s).map_err(param),
        None => {
            let seed = rand::random::<u64>();
            eprintln!("denoise: no --seed given, using --seed={seed}");
            Ok(seed)
        }
    }
}

fn parse_density(text: &str) -> Outcome<f64> {
    let d: f64 = text
        .trim()
        .parse()
        .map_err(|_| param(anyhow!("invalid density {text:?}")))?;
    if !(0.0..=1.0).contains(&d) {
        return Err(library(denoise_core::Error::DensityOutOfRange(d)));
    }
    Ok(d)
}

fn parse_size(text: &str) -> Outcome<(usize, usize)> {
    let bad = || param(anyhow!("invalid size {text:?} (expected WxH with positive integers)"));
    let (w, h) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    let w: usize = w.trim().parse().map_err(|_| bad())?;
    let h: usize = h.trim().parse().map_err(|_| bad())?;
    if w == 0 || h == 0 {
        return Err(bad());
    }
    Ok((w, h))
}

pub fn noise(args: NoiseArgs) -> Outcome {
    let kind: NoiseKind = args.kind.parse().map_err(library)?;
    let density = parse_density(&args.density)?;
    let seed = resolve_seed(args.seed.as_deref())?;
    let spec = density_to_params(kind, density).map_err(library)?;
    let input = read_image(&args.input)?;
    let noisy = spec.apply(&input, seed);
    write_file(&args.output, &save_pgm(&noisy))?;
    let report = evaluate(&input, &noisy).map_err(library)?;
    println!("{}", report.csv_line());
    Ok(())
}

pub fn filter(args: FilterArgs) -> Outcome {
    let spec: FilterSpec = args.spec.parse().map_err(library)?;
    let input = read_image(&args.input)?;
    let output = spec.apply(&input).map_err(library)?;
    write_file(&args.output, &save_pgm(&output))
}

pub fn eval(args: EvalArgs) -> Outcome {
    let reference = read_image(&args.reference)?;
    let candidate = read_image(&args.candidate)?;
    let report = evaluate(&reference, &candidate).map_err(library)?;
    println!("{}", report.csv_line());
    Ok(())
}

pub fn gen_test_image(args: GenArgs) -> Outcome {
    let (w, h) = parse_size(&args.size)?;
    let img = synthetic_planet(w, h).map_err(library)?;
    write_file(&args.output, &save_pgm(&img))
}

fn bench_config(args: &BenchArgs) -> Outcome<SweepConfig> {
    let mut config = SweepConfig::new(0);
    config.noise_kinds = args
        .kind
        .split(',')
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(library)?;
    config.densities = args
        .densities
        .split(',')
        .map(parse_density)
        .collect::<Result<_, _>>()?;
    config.filters = parse_filter_list(&args.filters).map_err(library)?;
    config.trials = args
        .trials
        .trim()
        .parse()
        .map_err(|_| param(anyhow!("invalid trial count {:?}", args.trials)))?;
    config.mse_reference = args.mse_reference.parse::<MseReference>().map_err(library)?;
    config.validate().map_err(library)?;
    config.master_seed = resolve_seed(args.seed.as_deref())?;
    Ok(config)
}

pub fn bench(args: BenchArgs) -> Outcome {
    let config = bench_config(&args)?;
    let workers = match &args.workers {
        Some(w) => match w.trim().parse::<usize>() {
            Ok(n) if n > 0 => n,
            _ => return Err(param(anyhow!("invalid worker count {w:?}"))),
        },
        None => std::thread::available_parallelism().map_or(1, usize::from),
    };
    let image = match (&args.input, &args.gen_test_image) {
        (Some(path), None) => read_image(path)?,
        (None, Some(size)) => {
            let (w, h) = parse_size(size)?;
            synthetic_planet(w, h).map_err(library)?
        }
        (None, None) => {
            eprintln!(
                "denoise: no --input given, using the {}x{} synthetic test image",
                testimage::DEFAULT_WIDTH,
                testimage::DEFAULT_HEIGHT
            );
            testimage::default_test_image()
        }
        (Some(_), Some(_)) => unreachable!("clap rejects --input with --gen-test-image"),
    };

    let grid = run_sweep_with_workers(&image, &config, workers).map_err(library)?;

    fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("cannot create {}", args.out_dir.display()))
        .map_err(io)?;
    for (name, bytes) in bench_artifacts(&grid) {
        write_file(&args.out_dir.join(name), &bytes)?;
    }

    println!("noise,filter,density,mse,psnr_db");
    for cell in &grid.cells {
        println!("{},{},{},{}", cell.noise, csv_field(&cell.filter_label()), cell.density, cell.report.csv_line());
    }
    eprintln!(
        "denoise: wrote {} cells to {} (seed {})",
        grid.cells.len(),
        args.out_dir.display(),
        config.master_seed
    );
    Ok(())
}

fn csv_field(text: &str) -> String {
    if text.contains(',') {
        format!("\"{text}\"")
    } else {
        text.to_string()
    }
}
