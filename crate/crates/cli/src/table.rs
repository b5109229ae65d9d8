//! Feature tables: `path,label,<dimension names...>` CSV with LF endings
//! and 17 significant digits per value.

use std::fs;
use std::path::{Path, PathBuf};

use texgrain_core::classify::{LabeledDataset, Sample};
use texgrain_core::{Extraction, Layout};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub path: String,
    pub label: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTable {
    pub layout: Layout,
    pub rows: Vec<Row>,
}

/// Scientific notation with 17 significant digits; parses back exactly.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

impl FeatureTable {
    pub fn header(&self) -> Vec<String> {
        let mut h = vec!["path".to_string(), "label".to_string()];
        h.extend(self.layout.dimension_names());
        h
    }

    pub fn to_csv(&self) -> CliResult<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(self.header())?;
        for row in &self.rows {
            let mut record = vec![row.path.clone(), row.label.clone()];
            record.extend(row.values.iter().map(|&v| format_value(v)));
            w.write_record(&record)?;
        }
        w.into_inner()
            .map_err(|e| CliError::Data(format!("CSV: {}", e.error())))
    }

    pub fn from_csv(bytes: &[u8]) -> CliResult<Self> {
        let mut r = csv::ReaderBuilder::new().from_reader(bytes);
        let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
        if header.len() < 3 || header[0] != "path" || header[1] != "label" {
            return Err(CliError::Data(
                "feature table header must start with `path,label`".into(),
            ));
        }
        let layout = Layout::from_dimension_names(&header[2..]).ok_or_else(|| {
            CliError::Data("feature table columns do not match any known layout".into())
        })?;
        let mut rows = Vec::new();
        for (i, record) in r.records().enumerate() {
            let record = record?;
            let values = record
                .iter()
                .skip(2)
                .map(|f| f.parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Data(format!("row {}: {e}", i + 1)))?;
            rows.push(Row {
                path: record[0].to_string(),
                label: record[1].to_string(),
                values,
            });
        }
        Ok(Self { layout, rows })
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let bytes = fs::read(path)
            .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
        Self::from_csv(&bytes)
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        fs::write(path, self.to_csv()?)?;
        Ok(())
    }

    pub fn to_dataset(&self) -> CliResult<LabeledDataset> {
        let samples = self
            .rows
            .iter()
            .map(|r| Sample {
                features: r.values.clone(),
                label: r.label.clone(),
            })
            .collect();
        Ok(LabeledDataset::new(self.layout, samples)?)
    }
}

/// Where `extract` records its settings next to a table.
pub fn sidecar_path(table: &Path) -> PathBuf {
    let mut name = table.as_os_str().to_owned();
    name.push(".extraction.json");
    PathBuf::from(name)
}

pub fn write_sidecar(table: &Path, extraction: &Extraction) -> CliResult<()> {
    let text = serde_json::to_string_pretty(extraction).expect("settings serialize") + "\n";
    fs::write(sidecar_path(table), text)?;
    Ok(())
}

pub fn read_sidecar(table: &Path) -> CliResult<Option<Extraction>> {
    let path = sidecar_path(table);
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(&path)?;
    serde_json::from_str(&text)
        .map(Some)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}
