//! Image directories laid out as `<root>/<label>/<image>`.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use texgrain_core::io::load_image;
use texgrain_core::RasterImage;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    /// Path relative to the corpus root, `/`-separated.
    pub rel_path: String,
    pub label: String,
    pub path: PathBuf,
}

fn is_hidden(path: &Path) -> bool {
    path.file_name()
        .and_then(|n| n.to_str())
        .is_some_and(|n| n.starts_with('.'))
}

fn sorted_children(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let mut children: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", dir.display())))?
        .map(|entry| entry.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    children.retain(|p| !is_hidden(p));
    children.sort();
    Ok(children)
}

/// Lists every file under the class subdirectories of `root`, sorted by
/// relative path.
pub fn scan(root: &Path) -> CliResult<Vec<Entry>> {
    if !root.is_dir() {
        return Err(CliError::Data(format!(
            "{} is not a directory",
            root.display()
        )));
    }
    let mut entries = Vec::new();
    for class_dir in sorted_children(root)? {
        if !class_dir.is_dir() {
            eprintln!(
                "warning: ignoring {} (images must sit in a class subdirectory)",
                class_dir.display()
            );
            continue;
        }
        let label = class_dir
            .file_name()
            .and_then(|n| n.to_str())
            .ok_or_else(|| {
                CliError::Data(format!("non-UTF-8 directory name {}", class_dir.display()))
            })?
            .to_string();
        for file in sorted_children(&class_dir)? {
            if !file.is_file() {
                continue;
            }
            let Some(name) = file.file_name().and_then(|n| n.to_str()) else {
                eprintln!("warning: skipping non-UTF-8 file name {}", file.display());
                continue;
            };
            entries.push(Entry {
                rel_path: format!("{label}/{name}"),
                label: label.clone(),
                path: file,
            });
        }
    }
    if entries.is_empty() {
        return Err(CliError::Data(format!(
            "no images found under {}",
            root.display()
        )));
    }
    entries.sort_by(|a, b| a.rel_path.cmp(&b.rel_path));
    Ok(entries)
}

/// Decodes every entry in parallel, warning about and dropping files that
/// fail. Fails only when nothing could be decoded.
pub fn load(entries: Vec<Entry>) -> CliResult<Vec<(Entry, RasterImage)>> {
    let decoded: Vec<_> = entries
        .into_par_iter()
        .map(|e| {
            let img = load_image(&e.path);
            (e, img)
        })
        .collect();
    let mut ok = Vec::with_capacity(decoded.len());
    for (entry, img) in decoded {
        match img {
            Ok(img) => ok.push((entry, img)),
            Err(err) => eprintln!("warning: skipping {}: {err}", entry.rel_path),
        }
    }
    if ok.is_empty() {
        return Err(CliError::Data("no readable images".into()));
    }
    Ok(ok)
}
