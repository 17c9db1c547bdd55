//! Benchmark harness: for every (image, line count, width, seed) cell,
//! degrade, time the inpaint call (wall clock around the inpaint operation
//! only, no I/O), evaluate both versions against the original, and append one
//! CSV row. Cells run sequentially so the timing column stays comparable.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::Args;
use ribbons_core::{
    apply_degradation, generate_mask, inpaint, quality, DegradationSpec, RgbImage,
};

use crate::EngineArgs;

/// Fixed column order of the benchmark CSV.
pub const CSV_HEADER: &str = "image_id,line_count,width,seed,psnr_degraded,psnr_inpainted,\
ssim_degraded,ssim_inpainted,wall_time_ms,fallback_count";

#[derive(Args)]
pub struct BenchArgs {
    /// Directory of reference PNGs; every PNG in it is benchmarked
    #[arg(long)]
    dataset: PathBuf,
    /// Ribbon counts to sweep
    #[arg(long = "lines-set", value_delimiter = ',', default_values_t = [5u32, 10, 15, 20])]
    lines_set: Vec<u32>,
    /// Ribbon widths to sweep (odd)
    #[arg(long = "widths-set", value_delimiter = ',', default_values_t = [3u32, 5, 7, 9, 11])]
    widths_set: Vec<u32>,
    /// Seeds per cell, used as seed values 0..seeds
    #[arg(long, default_value_t = 10)]
    seeds: u32,
    /// Output CSV path
    #[arg(long)]
    csv: PathBuf,
    #[command(flatten)]
    engine: EngineArgs,
}

/// One benchmark row.
pub struct ExperimentRecord {
    pub image_id: String,
    pub line_count: u32,
    pub width: u32,
    pub seed: u64,
    pub psnr_degraded: f64,
    pub psnr_inpainted: f64,
    pub ssim_degraded: f64,
    pub ssim_inpainted: f64,
    pub wall_time_ms: f64,
    pub fallback_count: usize,
}

impl ExperimentRecord {
    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.image_id,
            self.line_count,
            self.width,
            self.seed,
            self.psnr_degraded,
            self.psnr_inpainted,
            self.ssim_degraded,
            self.ssim_inpainted,
            self.wall_time_ms,
            self.fallback_count
        )
    }
}

pub fn run(args: &BenchArgs) -> Result<()> {
    let images = dataset_images(&args.dataset)?;
    let config = args.engine.config();

    let mut records = Vec::new();
    for (image_id, path) in &images {
        let image = RgbImage::read_png(path)
            .with_context(|| format!("reading dataset image {}", path.display()))?;
        for &line_count in &args.lines_set {
            for &width in &args.widths_set {
                for seed in 0..args.seeds as u64 {
                    let spec = DegradationSpec::new(line_count, width, seed);
                    let mask = generate_mask(image.width(), image.height(), &spec)?;
                    let degraded = apply_degradation(&image, &mask)?;
                    let start = Instant::now();
                    let (restored, reports) = inpaint(&degraded, &mask, &config)?;
                    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
                    let degraded_score = quality::<f64>(&image, &degraded)?;
                    let restored_score = quality::<f64>(&image, &restored)?;
                    records.push(ExperimentRecord {
                        image_id: image_id.clone(),
                        line_count,
                        width,
                        seed,
                        psnr_degraded: degraded_score.psnr,
                        psnr_inpainted: restored_score.psnr,
                        ssim_degraded: degraded_score.ssim,
                        ssim_inpainted: restored_score.ssim,
                        wall_time_ms,
                        fallback_count: reports.iter().filter(|r| r.direction.is_fallback()).count(),
                    });
                }
            }
        }
    }

    write_csv(&args.csv, &records)?;
    print_summary(&args.lines_set, &args.widths_set, &records);
    Ok(())
}

/// PNGs of the dataset directory as (file stem, path), sorted by name.
fn dataset_images(dir: &std::path::Path) -> Result<Vec<(String, PathBuf)>> {
    let entries = fs::read_dir(dir).with_context(|| format!("reading dataset {}", dir.display()))?;
    let mut images = Vec::new();
    for entry in entries {
        let path = entry?.path();
        let is_png = path
            .extension()
            .map(|e| e.eq_ignore_ascii_case("png"))
            .unwrap_or(false);
        if path.is_file() && is_png {
            let id = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            images.push((id, path));
        }
    }
    if images.is_empty() {
        bail!("dataset {} contains no PNG images", dir.display());
    }
    images.sort();
    Ok(images)
}

fn write_csv(path: &PathBuf, records: &[ExperimentRecord]) -> Result<()> {
    let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut out = std::io::BufWriter::new(file);
    writeln!(out, "{CSV_HEADER}")?;
    for record in records {
        writeln!(out, "{}", record.csv_row())?;
    }
    out.flush()?;
    Ok(())
}

/// Per-(line_count, width) quartile summary over all images and seeds, one
/// JSON line per cell, for box plots.
fn print_summary(lines_set: &[u32], widths_set: &[u32], records: &[ExperimentRecord]) {
    for &line_count in lines_set {
        for &width in widths_set {
            let cell: Vec<&ExperimentRecord> = records
                .iter()
                .filter(|r| r.line_count == line_count && r.width == width)
                .collect();
            if cell.is_empty() {
                continue;
            }
            let psnr: Vec<f64> = cell.iter().map(|r| r.psnr_inpainted).collect();
            let ssim: Vec<f64> = cell.iter().map(|r| r.ssim_inpainted).collect();
            println!(
                "{}",
                serde_json::json!({
                    "line_count": line_count,
                    "width": width,
                    "runs": cell.len(),
                    "psnr_inpainted": five_numbers(&psnr),
                    "ssim_inpainted": five_numbers(&ssim),
                })
            );
        }
    }
}

fn five_numbers(values: &[f64]) -> serde_json::Value {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("metric values are comparable"));
    let mean = sorted.iter().sum::<f64>() / sorted.len() as f64;
    serde_json::json!({
        "mean": json_metric(mean),
        "min": json_metric(sorted[0]),
        "q1": json_metric(quantile(&sorted, 0.25)),
        "median": json_metric(quantile(&sorted, 0.5)),
        "q3": json_metric(quantile(&sorted, 0.75)),
        "max": json_metric(sorted[sorted.len() - 1]),
    })
}

/// Linear-interpolation quantile of a sorted slice.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
    }
}

/// JSON cannot carry IEEE infinities; they serialize as the string "inf".
pub fn json_metric(v: f64) -> serde_json::Value {
    if v.is_finite() {
        serde_json::json!(v)
    } else {
        serde_json::json!("inf")
    }
}
