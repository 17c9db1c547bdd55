mod bench;

use std::path::PathBuf;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use ribbons_core::{
    apply_degradation, generate_mask, inpaint, quality, synthetic_corpus, DegradationMask,
    DegradationSpec, InpaintConfig, RgbImage,
};

#[derive(Parser)]
#[command(
    name = "ribbons",
    version,
    about = "Ribbon-defect synthesis, inpainting by directional patch substitution, and quality benchmarking"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Paint reproducible ribbon defects onto an image and save the mask
    Degrade(DegradeArgs),
    /// Restore masked pixels by cost-ranked directional patch substitution
    Inpaint(InpaintArgs),
    /// PSNR/SSIM of a test image against a reference
    Eval(EvalArgs),
    /// Sweep degradation settings over a dataset and record one CSV row per cell
    Bench(bench::BenchArgs),
    /// Write the five built-in 512x512 synthetic textures as PNGs
    Synth(SynthArgs),
}

/// Engine knobs shared by `inpaint` and `bench`.
#[derive(Args, Debug, Clone)]
struct EngineArgs {
    /// Disable seam smoothing
    #[arg(long)]
    no_smooth: bool,
    /// Pixels between a component's bounding box and its nearest candidate
    #[arg(long, default_value_t = 1)]
    gap: u32,
    /// Gaussian sigma for seam smoothing
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    /// Odd Gaussian kernel size for seam smoothing
    #[arg(long, default_value_t = 5)]
    kernel: usize,
    /// Chebyshev width of the known neighbor ring used for statistics
    #[arg(long, default_value_t = 2)]
    ring_width: u32,
}

impl EngineArgs {
    fn config(&self) -> InpaintConfig {
        InpaintConfig {
            smoothing: !self.no_smooth,
            gap: self.gap,
            sigma: self.sigma,
            kernel_size: self.kernel,
            ring_width: self.ring_width,
            ..Default::default()
        }
    }
}

#[derive(Args)]
struct DegradeArgs {
    /// Input PNG
    #[arg(long = "in")]
    input: PathBuf,
    /// Output PNG with masked pixels painted white
    #[arg(long)]
    out: PathBuf,
    /// Output mask PNG (255 = degraded)
    #[arg(long)]
    mask: PathBuf,
    /// Number of random ribbons
    #[arg(long)]
    lines: u32,
    /// Ribbon width in pixels, odd
    #[arg(long, default_value_t = 9)]
    width: u32,
    /// Generator seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct InpaintArgs {
    /// Degraded input PNG
    #[arg(long = "in")]
    input: PathBuf,
    /// Mask PNG; any nonzero pixel counts as degraded
    #[arg(long)]
    mask: PathBuf,
    /// Restored output PNG
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Args)]
struct EvalArgs {
    /// Reference PNG
    #[arg(long = "ref")]
    reference: PathBuf,
    /// Test PNG
    #[arg(long)]
    test: PathBuf,
}

#[derive(Args)]
struct SynthArgs {
    /// Directory the texture PNGs are written into
    #[arg(long)]
    out_dir: PathBuf,
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli.command) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Degrade(args) => cmd_degrade(args),
        Command::Inpaint(args) => cmd_inpaint(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Bench(args) => bench::run(&args),
        Command::Synth(args) => cmd_synth(args),
    }
}

fn read_image(path: &std::path::Path) -> Result<RgbImage> {
    RgbImage::read_png(path).with_context(|| format!("reading image {}", path.display()))
}

fn cmd_degrade(args: DegradeArgs) -> Result<()> {
    let image = read_image(&args.input)?;
    let spec = DegradationSpec::new(args.lines, args.width, args.seed);
    let mask = generate_mask(image.width(), image.height(), &spec)?;
    let degraded = apply_degradation(&image, &mask)?;
    degraded
        .write_png(&args.out)
        .with_context(|| format!("writing degraded image {}", args.out.display()))?;
    mask.write_png(&args.mask)
        .with_context(|| format!("writing mask {}", args.mask.display()))?;
    Ok(())
}

fn cmd_inpaint(args: InpaintArgs) -> Result<()> {
    let image = read_image(&args.input)?;
    let mask = DegradationMask::read_png(&args.mask)
        .with_context(|| format!("reading mask {}", args.mask.display()))?;
    let config = args.engine.config();
    let start = Instant::now();
    let (restored, reports) = inpaint(&image, &mask, &config)?;
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    for report in &reports {
        println!("{}", serde_json::to_string(report)?);
    }
    println!("{}", serde_json::json!({ "wall_time_ms": wall_time_ms }));
    restored
        .write_png(&args.out)
        .with_context(|| format!("writing restored image {}", args.out.display()))?;
    Ok(())
}

fn cmd_eval(args: EvalArgs) -> Result<()> {
    let reference = read_image(&args.reference)?;
    let test = read_image(&args.test)?;
    let score = quality::<f64>(&reference, &test)?;
    println!(
        "{}",
        serde_json::json!({ "psnr": bench::json_metric(score.psnr), "ssim": score.ssim })
    );
    Ok(())
}

fn cmd_synth(args: SynthArgs) -> Result<()> {
    std::fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;
    for (name, image) in synthetic_corpus() {
        let path = args.out_dir.join(format!("{name}.png"));
        image
            .write_png(&path)
            .with_context(|| format!("writing texture {}", path.display()))?;
        println!("{}", path.display());
    }
    Ok(())
}
