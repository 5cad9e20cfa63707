//! CSV dataset ingestion.
//!
//! One data point per row. Fields are real floats or `re:im` complex pairs;
//! with `WeightMode::Column` the final column carries the probability
//! weight. Vectors are normalized on load (raw norms are recorded in the
//! [`Dataset`]) and zero-padded to the next power of two.

use std::fmt;
use std::path::Path;

use qpca_core::covariance::{CovarianceError, Dataset};
use qpca_core::Complex64;

/// How weights are assigned to rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    /// Uniform `1/N`.
    Uniform,
    /// Final CSV column is the weight.
    Column,
}

/// Errors from dataset loading.
#[derive(Debug)]
pub enum LoadError {
    /// File could not be read.
    Io(std::io::Error),
    /// CSV layer error.
    Csv(csv::Error),
    /// A field failed to parse; row and column are 1-based.
    Parse {
        /// 1-based row.
        row: usize,
        /// 1-based column.
        col: usize,
        /// The offending token.
        token: String,
    },
    /// A row had too few fields for the weight column.
    MissingWeight {
        /// 1-based row.
        row: usize,
    },
    /// Dataset-level validation failed.
    Covariance(CovarianceError),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io(e) => write!(f, "io error: {e}"),
            LoadError::Csv(e) => write!(f, "csv error: {e}"),
            LoadError::Parse { row, col, token } => {
                write!(f, "row {row}, column {col}: cannot parse {token:?}")
            }
            LoadError::MissingWeight { row } => {
                write!(
                    f,
                    "row {row}: weight column requested but row has one field"
                )
            }
            LoadError::Covariance(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for LoadError {}

impl From<CovarianceError> for LoadError {
    fn from(e: CovarianceError) -> Self {
        LoadError::Covariance(e)
    }
}

/// Parse one field: a real float or a `re:im` complex pair.
fn parse_field(token: &str) -> Option<Complex64> {
    let t = token.trim();
    if let Some((re, im)) = t.split_once(':') {
        let re: f64 = re.trim().parse().ok()?;
        let im: f64 = im.trim().parse().ok()?;
        return Some(Complex64::new(re, im));
    }
    t.parse::<f64>().ok().map(|x| Complex64::new(x, 0.0))
}

/// Load a CSV file into a validated [`Dataset`].
pub fn load_dataset(path: &Path, weight_mode: WeightMode) -> Result<Dataset, LoadError> {
    let file = std::fs::File::open(path).map_err(LoadError::Io)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);

    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    let mut weights: Vec<f64> = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record.map_err(LoadError::Csv)?;
        let fields: Vec<&str> = record.iter().filter(|s| !s.trim().is_empty()).collect();
        if fields.is_empty() {
            continue;
        }
        let (point_fields, weight_field) = match weight_mode {
            WeightMode::Uniform => (&fields[..], None),
            WeightMode::Column => {
                if fields.len() < 2 {
                    return Err(LoadError::MissingWeight { row: r + 1 });
                }
                let (last, rest) = fields.split_last().unwrap();
                (rest, Some(*last))
            }
        };
        let mut row = Vec::with_capacity(point_fields.len());
        for (c, token) in point_fields.iter().enumerate() {
            let z = parse_field(token).ok_or_else(|| LoadError::Parse {
                row: r + 1,
                col: c + 1,
                token: (*token).to_owned(),
            })?;
            row.push(z);
        }
        if let Some(wtoken) = weight_field {
            let w: f64 = wtoken.trim().parse().map_err(|_| LoadError::Parse {
                row: r + 1,
                col: point_fields.len() + 1,
                token: wtoken.to_owned(),
            })?;
            weights.push(w);
        }
        rows.push(row);
    }

    let ds = match weight_mode {
        WeightMode::Uniform => Dataset::from_rows(&rows, None)?,
        WeightMode::Column => Dataset::from_rows(&rows, Some(&weights))?,
    };
    Ok(ds)
}
