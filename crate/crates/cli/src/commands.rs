use std::fs;
use std::io::Write;
use std::path::Path;

use texgrain_core::classify::{
    evaluate, Classifier, EvalConfig, EvalReport, LabeledDataset, ModelDocument, Sample,
    TrainedModel,
};
use texgrain_core::io::load_image;
use texgrain_core::synth::{write_corpus, SynthSpec};
use texgrain_core::{ColorMode, Error, Extraction, Layout, MaskSize, Method, RasterImage};

use crate::cli::{
    ClassifierArg, ClassifyArgs, Cli, Command, EvaluateArgs, ExtractArgs, PipelineArgs, SynthArgs,
    TrainArgs,
};
use crate::corpus::{self, Entry};
use crate::error::{CliError, CliResult};
use crate::table::{read_sidecar, write_sidecar, FeatureTable, Row};

pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Extract(args) => extract_cmd(args, out),
        Command::Train(args) => train_cmd(args, out),
        Command::Classify(args) => classify_cmd(args, out),
        Command::Evaluate(args) => evaluate_cmd(args, out),
        Command::Synth(args) => synth_cmd(args, out),
    }
}

fn mask_arg(mask: Option<usize>) -> CliResult<MaskSize> {
    mask.map_or(Ok(MaskSize::DEFAULT), |k| Ok(MaskSize::new(k)?))
}

fn extraction_from(method: Method, p: &PipelineArgs) -> CliResult<Extraction> {
    Ok(Extraction::new(
        method,
        p.color_mode().unwrap_or(ColorMode::Color),
        mask_arg(p.mask)?,
        p.equalize,
    ))
}

/// Extracts features for every decodable image, dropping (with a warning)
/// images the pipeline rejects.
pub fn extract_images(
    images: &[(Entry, RasterImage)],
    extractions: &[Extraction],
) -> CliResult<Vec<(Entry, Vec<Vec<f64>>)>> {
    let pixels: Vec<RasterImage> = images.iter().map(|(_, img)| img.clone()).collect();
    let per_method: Vec<_> = extractions.iter().map(|e| e.extract_all(&pixels)).collect();
    let mut rows = Vec::with_capacity(images.len());
    'images: for (i, (entry, _)) in images.iter().enumerate() {
        let mut values = Vec::with_capacity(extractions.len());
        for (e, results) in extractions.iter().zip(&per_method) {
            match &results[i] {
                Ok(f) => values.push(f.values().to_vec()),
                Err(err) => {
                    eprintln!("warning: skipping {} ({}): {err}", entry.rel_path, e.method);
                    continue 'images;
                }
            }
        }
        rows.push((entry.clone(), values));
    }
    if rows.is_empty() {
        return Err(CliError::Data("no image produced features".into()));
    }
    Ok(rows)
}

/// Builds the feature table for a corpus directory.
pub fn extract_table(root: &Path, extraction: &Extraction) -> CliResult<FeatureTable> {
    let images = corpus::load(corpus::scan(root)?)?;
    let rows = extract_images(&images, std::slice::from_ref(extraction))?
        .into_iter()
        .map(|(entry, mut values)| Row {
            path: entry.rel_path,
            label: entry.label,
            values: values.pop().expect("one method"),
        })
        .collect();
    Ok(FeatureTable {
        layout: extraction.layout(),
        rows,
    })
}

fn extract_cmd(args: ExtractArgs, out: &mut dyn Write) -> CliResult<()> {
    let extraction = extraction_from(args.features.into(), &args.pipeline)?;
    let table = extract_table(&args.input_dir, &extraction)?;
    table.write(&args.out)?;
    write_sidecar(&args.out, &extraction)?;
    writeln!(
        out,
        "wrote {} rows of {} features to {}",
        table.rows.len(),
        table.layout,
        args.out.display()
    )?;
    Ok(())
}

fn train_cmd(args: TrainArgs, out: &mut dyn Write) -> CliResult<()> {
    let classifier = match args.classifier {
        ClassifierArg::Knn => format!("knn{}", args.k).parse::<Classifier>()?,
        ClassifierArg::Nb => Classifier::NaiveBayes,
    };
    let table = FeatureTable::read(&args.features)?;
    let extraction = read_sidecar(&args.features)?;
    let ds = table.to_dataset()?;
    let model = TrainedModel::train(classifier, &ds, !args.no_standardize)?;
    let doc = ModelDocument::new(model, extraction)?;
    fs::write(&args.model, doc.to_json())?;
    writeln!(
        out,
        "trained {} on {} samples ({}) -> {}",
        classifier,
        ds.len(),
        table.layout,
        args.model.display()
    )?;
    Ok(())
}

/// Settings implied by a model layout when the model carries none.
fn extraction_for_layout(layout: Layout) -> Extraction {
    let (method, color) = match layout {
        Layout::PpuColor => (Method::Ppu, ColorMode::Color),
        Layout::PpuGray => (Method::Ppu, ColorMode::Gray),
        Layout::Lbp => (Method::Lbp, ColorMode::Gray),
        Layout::Glcm => (Method::Glcm, ColorMode::Gray),
    };
    Extraction::new(method, color, MaskSize::DEFAULT, false)
}

/// Applies command-line overrides to the model's extraction settings and
/// checks that the result still produces the model's layout.
pub fn resolve_extraction(
    doc: &ModelDocument,
    method: Option<Method>,
    pipeline: &PipelineArgs,
) -> CliResult<Extraction> {
    let base = doc
        .extraction
        .unwrap_or_else(|| extraction_for_layout(doc.model.layout()));
    let mut e = Extraction::new(
        method.unwrap_or(base.method),
        pipeline.color_mode().unwrap_or(base.color),
        pipeline.mask.map_or(Ok(base.mask), MaskSize::new)?,
        base.equalize || pipeline.equalize,
    );
    e.glcm_levels = base.glcm_levels;
    if e.layout() != doc.model.layout() {
        return Err(CliError::Data(
            Error::LayoutMismatch {
                model: doc.model.layout().to_string(),
                requested: e.layout().to_string(),
            }
            .to_string(),
        ));
    }
    Ok(e)
}

fn classify_cmd(args: ClassifyArgs, out: &mut dyn Write) -> CliResult<()> {
    let text = fs::read_to_string(&args.model)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", args.model.display())))?;
    let doc = ModelDocument::from_json(&text)?;
    let extraction = resolve_extraction(&doc, args.features.map(Into::into), &args.pipeline)?;
    let img = load_image(&args.image)?;
    let features = extraction.extract(&img)?;
    writeln!(out, "{}", doc.model.classify(features.values())?)?;
    Ok(())
}

fn parse_classifiers(names: &[String]) -> CliResult<Vec<Classifier>> {
    names
        .iter()
        .map(|n| n.trim().parse::<Classifier>().map_err(CliError::from))
        .collect()
}

/// Extracts every requested method from one corpus and evaluates all
/// method/classifier pairs over the same splits.
pub fn evaluate_corpus(
    root: &Path,
    extractions: &[Extraction],
    classifiers: &[Classifier],
    config: EvalConfig,
) -> CliResult<EvalReport> {
    let images = corpus::load(corpus::scan(root)?)?;
    let rows = extract_images(&images, extractions)?;
    let mut datasets = Vec::with_capacity(extractions.len());
    for (m, e) in extractions.iter().enumerate() {
        let samples = rows
            .iter()
            .map(|(entry, values)| Sample {
                features: values[m].clone(),
                label: entry.label.clone(),
            })
            .collect();
        datasets.push((
            e.method.to_string(),
            LabeledDataset::new(e.layout(), samples)?,
        ));
    }
    Ok(evaluate(&datasets, classifiers, config)?)
}

pub fn report_json(report: &EvalReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes") + "\n"
}

fn evaluate_cmd(args: EvaluateArgs, out: &mut dyn Write) -> CliResult<()> {
    let mut methods: Vec<Method> = Vec::new();
    for m in args.features.iter().map(|&m| Method::from(m)) {
        if !methods.contains(&m) {
            methods.push(m);
        }
    }
    let extractions = methods
        .iter()
        .map(|&m| extraction_from(m, &args.pipeline))
        .collect::<CliResult<Vec<_>>>()?;
    let classifiers = parse_classifiers(&args.classifiers)?;
    if !(args.train_frac > 0.0 && args.train_frac < 1.0) {
        return Err(CliError::Usage(
            "--train-frac must lie strictly between 0 and 1".into(),
        ));
    }
    let config = EvalConfig {
        splits: args.splits,
        train_fraction: args.train_frac,
        seed: args.seed,
        standardize: !args.no_standardize,
    };
    let report = evaluate_corpus(&args.dataset, &extractions, &classifiers, config)?;
    write!(out, "{}", report.render_table())?;
    if let Some(path) = &args.out {
        fs::write(path, report_json(&report))?;
    }
    Ok(())
}

fn synth_cmd(args: SynthArgs, out: &mut dyn Write) -> CliResult<()> {
    let spec = SynthSpec {
        classes: args.classes,
        per_class: args.per_class,
        size: args.size,
        seed: args.seed,
    };
    let paths = write_corpus(&spec, &args.out)?;
    writeln!(
        out,
        "wrote {} images to {}",
        paths.len(),
        args.out.display()
    )?;
    Ok(())
}
