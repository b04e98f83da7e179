//! Batch runs over a directory of PGM/PPM files.
//!
//! Files are taken in lexicographic order. Addition pairs each image with
//! the next one, wrapping around. Motion uses consecutive frames.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::{evaluate, mean_quality, read_netpbm, App, AppInputs, ImagePlane, QualityReport};
use crate::adders::RcaScenario;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DatasetRow {
    /// Input file name(s), `+` separated for pairs.
    pub inputs: String,
    pub quality: QualityReport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DatasetReport {
    pub app: App,
    pub directory: PathBuf,
    pub rows: Vec<DatasetRow>,
    pub average: QualityReport,
}

fn list_images(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.retain(|p| {
        p.is_file()
            && p.extension()
                .and_then(|e| e.to_str())
                .is_some_and(|e| matches!(e.to_ascii_lowercase().as_str(), "pgm" | "ppm"))
    });
    files.sort();
    Ok(files)
}

fn file_name(p: &Path) -> String {
    p.file_name()
        .map_or_else(String::new, |n| n.to_string_lossy().into_owned())
}

pub fn run_dataset(
    dir: impl AsRef<Path>,
    app: App,
    scenario: &RcaScenario,
) -> Result<DatasetReport> {
    let dir = dir.as_ref();
    if !dir.is_dir() {
        return Err(Error::InvalidArgument(format!(
            "{} is not a directory",
            dir.display()
        )));
    }
    let files = list_images(dir)?;
    if files.is_empty() {
        return Err(Error::EmptyDataset(dir.to_path_buf()));
    }
    let images: Vec<ImagePlane> = files.iter().map(read_netpbm).collect::<Result<_>>()?;
    let n = images.len();
    let pairs: Vec<(usize, usize)> = match app {
        App::Addition => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        App::Motion => {
            if n < 2 {
                return Err(Error::InvalidArgument(
                    "motion detection needs at least two frames".into(),
                ));
            }
            (0..n - 1).map(|i| (i, i + 1)).collect()
        }
        App::Grayscale | App::AvgPool => (0..n).map(|i| (i, i)).collect(),
    };
    let mut rows = Vec::with_capacity(pairs.len());
    for (i, j) in pairs {
        let (inputs, label) = if app.arity() == 2 {
            (
                AppInputs::Pair(&images[i], &images[j]),
                format!("{}+{}", file_name(&files[i]), file_name(&files[j])),
            )
        } else {
            (AppInputs::Single(&images[i]), file_name(&files[i]))
        };
        let run = evaluate(app, &inputs, scenario)?;
        rows.push(DatasetRow {
            inputs: label,
            quality: run.quality,
        });
    }
    let qualities: Vec<QualityReport> = rows.iter().map(|r| r.quality.clone()).collect();
    let average = mean_quality(app.name(), &qualities[0].scenario, &qualities)?;
    Ok(DatasetReport {
        app,
        directory: dir.to_path_buf(),
        rows,
        average,
    })
}
