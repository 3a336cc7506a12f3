//! Telemetry and table CSV files.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use phase_markov_core::{Channel, Telemetry};

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Open {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path} is empty")]
    Empty { path: PathBuf },
    #[error("{path} has a header but no samples")]
    NoRows { path: PathBuf },
    #[error("row {row}: expected {expected} columns, found {found}")]
    Ragged {
        row: u64,
        expected: usize,
        found: usize,
    },
    #[error("row {row}, column {column}: cannot parse {value:?} as a number")]
    NonNumeric {
        row: u64,
        column: usize,
        value: String,
    },
    #[error("row {row}: {source}")]
    Csv { row: u64, source: csv::Error },
    #[error("header column {column}: empty channel name")]
    EmptyName { column: usize },
    #[error("unknown channel {0}")]
    UnknownChannel(String),
    #[error("no measurement error given for channel {0}")]
    MissingError(String),
    #[error(transparent)]
    Telemetry(#[from] phase_markov_core::Error),
}

/// Reads a header-plus-samples CSV. Rows are numbered as lines of the file,
/// the header being row 1.
pub fn load_csv(
    path: &Path,
    dt: f64,
    errors: &BTreeMap<String, f64>,
) -> Result<Telemetry, IngestError> {
    let file = File::open(path).map_err(|source| IngestError::Open {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let mut records = reader.records();

    let header = match records.next() {
        None => {
            return Err(IngestError::Empty {
                path: path.to_path_buf(),
            })
        }
        Some(r) => r.map_err(|source| IngestError::Csv { row: 1, source })?,
    };
    let names: Vec<String> = header.iter().map(str::to_owned).collect();
    if let Some(column) = names.iter().position(String::is_empty) {
        return Err(IngestError::EmptyName { column: column + 1 });
    }
    if let Some(unknown) = errors.keys().find(|k| !names.contains(k)) {
        return Err(IngestError::UnknownChannel(unknown.clone()));
    }

    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
    for (i, record) in records.enumerate() {
        let row = i as u64 + 2;
        let record = record.map_err(|source| IngestError::Csv { row, source })?;
        let row = record.position().map_or(row, |p| p.line());
        if record.len() != names.len() {
            return Err(IngestError::Ragged {
                row,
                expected: names.len(),
                found: record.len(),
            });
        }
        for (c, cell) in record.iter().enumerate() {
            let value = cell.parse::<f64>().map_err(|_| IngestError::NonNumeric {
                row,
                column: c + 1,
                value: cell.to_owned(),
            })?;
            columns[c].push(value);
        }
    }
    if columns.first().is_none_or(Vec::is_empty) {
        return Err(IngestError::NoRows {
            path: path.to_path_buf(),
        });
    }

    let channels = names
        .into_iter()
        .zip(columns)
        .map(|(name, samples)| {
            let error = *errors
                .get(&name)
                .ok_or_else(|| IngestError::MissingError(name.clone()))?;
            Ok(Channel::new(name, samples, error))
        })
        .collect::<Result<Vec<_>, IngestError>>()?;
    Ok(Telemetry::new(channels, dt)?)
}

/// Header names of a CSV file, without reading the samples.
pub fn csv_header(path: &Path) -> Result<Vec<String>, IngestError> {
    let file = File::open(path).map_err(|source| IngestError::Open {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(file);
    match reader.records().next() {
        None => Err(IngestError::Empty {
            path: path.to_path_buf(),
        }),
        Some(r) => Ok(r
            .map_err(|source| IngestError::Csv { row: 1, source })?
            .iter()
            .map(str::to_owned)
            .collect()),
    }
}

/// Writes telemetry with shortest round-trip number formatting.
pub fn write_telemetry(path: &Path, telemetry: &Telemetry) -> anyhow::Result<()> {
    let mut table = Table::new(telemetry.channels().iter().map(|c| c.name.clone()));
    for i in 0..telemetry.len() {
        table.push(telemetry.channels().iter().map(|c| Cell::Num(c.samples[i])));
    }
    table.write(path)
}

/// Shortest text that parses back to the same `f64`; scientific notation
/// outside `[1e-4, 1e15)`.
pub fn format_number(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || !a.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => format_number(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as u64)
    }
}

/// An in-memory CSV table.
#[derive(Debug, Clone, Default)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: impl IntoIterator<Item = String>) -> Self {
        Self {
            header: header.into_iter().collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: impl IntoIterator<Item = Cell>) {
        let row: Vec<Cell> = row.into_iter().collect();
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn write(&self, path: &Path) -> anyhow::Result<()> {
        let file = File::create(path)
            .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))?;
        let mut out = csv::Writer::from_writer(BufWriter::new(file));
        out.write_record(&self.header)?;
        for row in &self.rows {
            out.write_record(row.iter().map(Cell::render))?;
        }
        out.into_inner()
            .map_err(|e| anyhow::anyhow!("cannot write {}: {}", path.display(), e.error()))?
            .flush()?;
        Ok(())
    }
}
