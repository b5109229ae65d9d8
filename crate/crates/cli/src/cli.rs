use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use texgrain_core::{ColorMode, Method};

#[derive(Debug, Parser)]
#[command(
    name = "texgrain",
    version,
    about = "Grain-component texture features and classifiers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extract one feature vector per image into a CSV table.
    Extract(ExtractArgs),
    /// Train a classifier on an extracted feature table.
    Train(TrainArgs),
    /// Classify one image with a trained model.
    Classify(ClassifyArgs),
    /// Compare feature methods and classifiers over repeated splits.
    Evaluate(EvaluateArgs),
    /// Generate a synthetic four-family texture corpus.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Ppu,
    Lbp,
    Glcm,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Ppu => Method::Ppu,
            MethodArg::Lbp => Method::Lbp,
            MethodArg::Glcm => Method::Glcm,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassifierArg {
    Knn,
    Nb,
}

/// Color handling and preprocessing shared by several subcommands.
#[derive(Debug, Clone, Args)]
pub struct PipelineArgs {
    /// Per-channel RGB features (12 dims for PPU).
    #[arg(long, conflicts_with = "gray")]
    pub color: bool,
    /// Luma-only features (4 dims for PPU).
    #[arg(long)]
    pub gray: bool,
    /// Side of the non-overlapping grain mask (odd, >= 3).
    #[arg(long)]
    pub mask: Option<usize>,
    /// Histogram-equalize each plane before thresholding.
    #[arg(long)]
    pub equalize: bool,
}

impl PipelineArgs {
    pub fn color_mode(&self) -> Option<ColorMode> {
        match (self.color, self.gray) {
            (true, _) => Some(ColorMode::Color),
            (_, true) => Some(ColorMode::Gray),
            _ => None,
        }
    }
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    /// Directory with one subdirectory of images per class.
    pub input_dir: PathBuf,
    #[arg(long, value_enum, default_value = "ppu")]
    pub features: MethodArg,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    /// Output CSV; settings are written next to it as `<out>.extraction.json`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Feature table written by `extract`.
    #[arg(long)]
    pub features: PathBuf,
    #[arg(long, value_enum, default_value = "knn")]
    pub classifier: ClassifierArg,
    /// Neighbor count for KNN (odd).
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Train on raw features instead of z-scored ones.
    #[arg(long)]
    pub no_standardize: bool,
    #[arg(long)]
    pub model: PathBuf,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub model: PathBuf,
    pub image: PathBuf,
    /// Requested feature method; must agree with the model.
    #[arg(long, value_enum)]
    pub features: Option<MethodArg>,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub dataset: PathBuf,
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "ppu,lbp,glcm"
    )]
    pub features: Vec<MethodArg>,
    #[arg(long, value_delimiter = ',', default_value = "knn1,knn3,knn5,nb")]
    pub classifiers: Vec<String>,
    #[arg(long, default_value_t = 10)]
    pub splits: usize,
    #[arg(long, default_value_t = 0.65)]
    pub train_frac: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    #[arg(long)]
    pub no_standardize: bool,
    /// Report JSON path; the table always goes to standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 4)]
    pub classes: usize,
    #[arg(long, default_value_t = 20)]
    pub per_class: usize,
    /// Image side in pixels.
    #[arg(long, default_value_t = 96)]
    pub size: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}
