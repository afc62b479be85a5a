use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use pseudo_lidar_eval::commands::{
    cmd_convert, cmd_eval_depth, cmd_eval_det, cmd_rank, cmd_sample_mask, CameraSource, CloudMode, ConvertConfig,
    EvalDepthConfig, EvalDetConfig, RankConfig, SampleMaskConfig, SamplingOptions,
};
use pseudo_lidar_eval::depth_metrics::{Crop, DepthEvalConfig};
use pseudo_lidar_eval::detection::{ApMode, DetEvalConfig, IouThresholds};
use pseudo_lidar_eval::Error;

const EXIT_OTHER: u8 = 1;
const EXIT_PARSE: u8 = 3;
const EXIT_ALIGNMENT: u8 = 4;
const EXIT_PARTIAL: u8 = 5;

/// Pseudo-LiDAR conversion and depth/detection evaluation.
///
/// Exit codes: 0 success, 1 other error, 2 usage, 3 unreadable input,
/// 4 misaligned frames or model ids, 5 some frames failed.
#[derive(Parser)]
#[command(name = "plidar", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert depth maps to point-cloud binaries plus a manifest.
    Convert(ConvertArgs),
    /// Write the virtual LiDAR sampling mask as a PNG.
    SampleMask(SampleMaskArgs),
    /// Pooled depth metrics of predicted vs ground-truth depth maps.
    EvalDepth(EvalDepthArgs),
    /// BEV and 3D average precision per difficulty.
    EvalDet(EvalDetArgs),
    /// Rank agreement between depth metrics and detector results.
    Rank(RankArgs),
}

#[derive(Args)]
struct SamplingArgs {
    /// Number of beams.
    #[arg(long)]
    beams: Option<u32>,
    /// Azimuth step in degrees.
    #[arg(long)]
    h_res: Option<f64>,
    /// Max depth in meters.
    #[arg(long)]
    d_max: Option<f64>,
    /// Max height above the camera in meters.
    #[arg(long)]
    h_max: Option<f64>,
    /// Fraction of top image rows to discard.
    #[arg(long)]
    r_min_frac: Option<f64>,
    /// Azimuth window START,END in degrees.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    h_fov: Option<(f64, f64)>,
    /// Elevation window START,END in degrees, positive below the horizon.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    v_fov: Option<(f64, f64)>,
    /// Upper bound on the derived elevation extent, in degrees.
    #[arg(long)]
    v_fov_clamp: Option<f64>,
}

impl SamplingArgs {
    fn options(&self) -> SamplingOptions {
        SamplingOptions {
            beams: self.beams,
            h_res_deg: self.h_res,
            d_max: self.d_max,
            h_max: self.h_max,
            r_min_frac: self.r_min_frac,
            h_fov_deg: self.h_fov,
            v_fov_deg: self.v_fov,
            v_fov_clamp_deg: self.v_fov_clamp,
        }
    }
}

#[derive(Args)]
struct ConvertArgs {
    #[arg(long)]
    depth_dir: PathBuf,
    #[arg(long)]
    calib_dir: PathBuf,
    #[arg(long)]
    split: PathBuf,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "sampled", value_parser = ["dense", "sampled"])]
    mode: String,
    /// Write points in the LiDAR frame using Tr_velo_to_cam.
    #[arg(long)]
    lidar_frame: bool,
    #[command(flatten)]
    sampling: SamplingArgs,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct SampleMaskArgs {
    /// KITTI calibration file.
    #[arg(long, conflicts_with = "focal")]
    calib: Option<PathBuf>,
    /// Focal length in pixels, used with --cu and --cv instead of --calib.
    #[arg(long, requires_all = ["cu", "cv"])]
    focal: Option<f64>,
    #[arg(long)]
    cu: Option<f64>,
    #[arg(long)]
    cv: Option<f64>,
    #[arg(long, default_value_t = 1242)]
    width: usize,
    #[arg(long, default_value_t = 375)]
    height: usize,
    #[command(flatten)]
    sampling: SamplingArgs,
    /// Output PNG path.
    #[arg(long)]
    out: PathBuf,
    /// Print a text summary instead of JSON.
    #[arg(long)]
    table: bool,
}

#[derive(Args)]
struct EvalDepthArgs {
    /// Predicted depth maps.
    #[arg(long)]
    depth_dir: PathBuf,
    #[arg(long)]
    gt_depth_dir: PathBuf,
    #[arg(long)]
    split: Option<PathBuf>,
    /// Max ground-truth depth in meters.
    #[arg(long, default_value_t = 80.0)]
    cap: f64,
    /// Rescale predictions by the per-frame median ratio.
    #[arg(long)]
    median_scaling: bool,
    /// Evaluation crop TOP,BOTTOM,LEFT,RIGHT in pixels.
    #[arg(long, value_parser = parse_crop)]
    crop: Option<Crop>,
    /// Report path; stdout when unset.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    table: bool,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct EvalDetArgs {
    #[arg(long)]
    dets_dir: PathBuf,
    /// Ground-truth label directory.
    #[arg(long)]
    labels_dir: PathBuf,
    #[arg(long)]
    split: Option<PathBuf>,
    #[arg(long, default_value = "r11", value_parser = ["r11", "r40"])]
    ap_mode: String,
    #[arg(long = "class", default_value = "Car")]
    class_name: String,
    /// Use 0.7 IoU for every difficulty.
    #[arg(long)]
    stock_thresholds: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    table: bool,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct RankArgs {
    /// Depth-metric table (CSV, TSV or JSON). The bundled reference tables
    /// are used when unset.
    #[arg(long, requires = "det_table")]
    depth_table: Option<PathBuf>,
    /// Detector table as NAME=PATH; repeatable.
    #[arg(long, value_parser = parse_named_path, requires = "depth_table")]
    det_table: Vec<(String, PathBuf)>,
    /// Detector column to rank detectors by.
    #[arg(long, default_value = "ap-bev-mod")]
    det_metric: String,
    /// Directory for the SVG ranking diagrams.
    #[arg(long)]
    diagram_dir: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    table: bool,
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected START,END")?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    Ok((num(a)?, num(b)?))
}

fn parse_crop(s: &str) -> Result<Crop, String> {
    let v: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<_, _>>()?;
    let [top, bottom, left, right] = v[..] else {
        return Err("expected TOP,BOTTOM,LEFT,RIGHT".into());
    };
    Ok(Crop {
        top,
        bottom,
        left,
        right,
    })
}

fn parse_named_path(s: &str) -> Result<(String, PathBuf), String> {
    let (name, path) = s.split_once('=').ok_or("expected NAME=PATH")?;
    Ok((name.to_string(), PathBuf::from(path)))
}

fn emit(doc: &impl Serialize, table: Option<String>, out: Option<&PathBuf>) -> Result<(), Error> {
    let mut json = serde_json::to_string_pretty(doc)?;
    json.push('\n');
    match out {
        Some(path) => std::fs::write(path, json)?,
        None if table.is_none() => print!("{json}"),
        None => {}
    }
    if let Some(t) = table {
        print!("{t}");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Convert(a) => {
            let config = ConvertConfig {
                depth_dir: a.depth_dir,
                calib_dir: a.calib_dir,
                split: a.split,
                out: a.out,
                mode: a.mode.parse::<CloudMode>()?,
                sampling: a.sampling.options(),
                lidar_frame: a.lidar_frame,
                jobs: a.jobs,
            };
            let manifest = cmd_convert(&config)?;
            let written = manifest.frames.len() - manifest.failed;
            eprintln!("wrote {written} of {} frames", manifest.frames.len());
            Ok(if manifest.is_complete() { 0 } else { EXIT_PARTIAL })
        }
        Command::SampleMask(a) => {
            let camera = match (a.calib, a.focal, a.cu, a.cv) {
                (Some(path), ..) => CameraSource::Calib(path),
                (None, Some(f), Some(cu), Some(cv)) => CameraSource::Intrinsics { f, cu, cv },
                _ => return Err(Error::Validation("give --calib or --focal/--cu/--cv".into())),
            };
            let config = SampleMaskConfig {
                camera,
                width: a.width,
                height: a.height,
                sampling: a.sampling.options(),
                out: Some(a.out),
            };
            let (_, summary) = cmd_sample_mask(&config)?;
            let table = a.table.then(|| {
                format!(
                    "{}x{} mask, {} beams x {} azimuths, {} pixels selected, rows from {}\n",
                    summary.width, summary.height, summary.beams, summary.azimuths, summary.selected, summary.first_row
                )
            });
            emit(&summary, table, None)?;
            Ok(0)
        }
        Command::EvalDepth(a) => {
            let config = EvalDepthConfig {
                depth_dir: a.depth_dir,
                gt_depth_dir: a.gt_depth_dir,
                split: a.split,
                eval: DepthEvalConfig {
                    crop: a.crop,
                    median_scaling: a.median_scaling,
                    ..DepthEvalConfig::with_cap(a.cap)
                },
                jobs: a.jobs,
            };
            let report = cmd_eval_depth(&config)?;
            emit(&report, a.table.then(|| report.to_table()), a.out.as_ref())?;
            Ok(0)
        }
        Command::EvalDet(a) => {
            let config = EvalDetConfig {
                dets_dir: a.dets_dir,
                labels_dir: a.labels_dir,
                split: a.split,
                eval: DetEvalConfig {
                    class_name: a.class_name,
                    mode: a.ap_mode.parse::<ApMode>()?,
                    thresholds: if a.stock_thresholds {
                        IouThresholds::STOCK_CAR
                    } else {
                        IouThresholds::PROTOCOL
                    },
                    ..DetEvalConfig::default()
                },
                jobs: a.jobs,
            };
            let report = cmd_eval_det(&config)?;
            emit(&report.to_document(), a.table.then(|| report.to_table()), a.out.as_ref())?;
            Ok(0)
        }
        Command::Rank(a) => {
            let config = RankConfig {
                depth_table: a.depth_table,
                det_tables: a.det_table,
                det_metric: a.det_metric,
                diagram_dir: a.diagram_dir,
            };
            let output = cmd_rank(&config)?;
            emit(&output.report, a.table.then(|| output.report.to_table()), a.out.as_ref())?;
            Ok(0)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e.root() {
        Error::Parse { .. } | Error::Format(_) | Error::Truncation(_) | Error::Json(_) | Error::Image(_) => EXIT_PARSE,
        Error::Alignment { .. } => EXIT_ALIGNMENT,
        _ => EXIT_OTHER,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
