//! CSV ingestion into a typed [`DataTable`].

use std::fmt;
use std::fs::File;
use std::io::Read;
use std::path::Path;

use glyphplot_core::model::{DataTable, TableError, Value};

#[derive(Debug)]
pub enum CsvError {
    Io(std::io::Error),
    /// Malformed record; `row` is the 1-based data row when known.
    Parse {
        row: Option<u64>,
        message: String,
    },
    Table(TableError),
}

impl fmt::Display for CsvError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CsvError::Io(e) => write!(f, "cannot read data: {}", e),
            CsvError::Parse { message, .. } => write!(f, "{}", message),
            CsvError::Table(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for CsvError {}

impl CsvError {
    pub fn row(&self) -> Option<usize> {
        match self {
            CsvError::Parse { row, .. } => row.map(|r| r as usize),
            CsvError::Table(TableError::RowWidth { row, .. }) => Some(row + 1),
            _ => None,
        }
    }
}

/// Reads RFC 4180 CSV with a header row. Cells are typed with [`Value::parse`].
pub fn read_table<R: Read>(reader: R, source: &str) -> Result<DataTable, CsvError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let columns: Vec<String> = rdr
        .headers()
        .map_err(|e| CsvError::Parse {
            row: None,
            message: format!("bad header: {}", e),
        })?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    let mut rows = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| CsvError::Parse {
            row: Some(i as u64 + 1),
            message: match e.kind() {
                csv::ErrorKind::UnequalLengths {
                    expected_len, len, ..
                } => {
                    format!("record has {} fields, header has {}", len, expected_len)
                }
                _ => e.to_string(),
            },
        })?;
        rows.push(record.iter().map(Value::parse).collect());
    }
    DataTable::new(columns, rows, source).map_err(CsvError::Table)
}

pub fn read_table_file(path: &Path) -> Result<DataTable, CsvError> {
    let file = File::open(path).map_err(CsvError::Io)?;
    read_table(file, &path.display().to_string())
}
