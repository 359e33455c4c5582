//! CSV ingestion for coordinates and precomputed distance matrices.
//!
//! Coordinate files hold one point per row with numeric columns and an
//! optional trailing label column. A header row is recognised by a
//! non-numeric first field. Distance files are square numeric tables.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{DistanceMatrix, PointSet, Space, DISTANCE_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputFormat {
    /// Square numeric tables that look like distance matrices are read as
    /// such; everything else as coordinates.
    #[default]
    Auto,
    Points,
    Distances,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DataSource {
    Points(PointSet),
    Distances(DistanceMatrix),
}

impl DataSource {
    pub fn len(&self) -> usize {
        match self {
            DataSource::Points(p) => p.len(),
            DataSource::Distances(d) => d.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn labels(&self) -> Option<&[String]> {
        match self {
            DataSource::Points(p) => p.labels(),
            DataSource::Distances(_) => None,
        }
    }
}

struct Table {
    values: Vec<Vec<f64>>,
    labels: Option<Vec<String>>,
}

fn parse_error(path: &Path, row: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        row,
        column,
        message: message.into(),
    }
}

fn input_error(path: &Path, message: impl Into<String>) -> Error {
    Error::Input {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

fn is_number(field: &str) -> bool {
    field.parse::<f64>().is_ok()
}

fn read_table<R: Read>(reader: R, path: &Path) -> Result<Table> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut records = Vec::new();
    for record in csv.records() {
        let record = record.map_err(|e| {
            let row = e.position().map_or(0, |p| p.line() as usize);
            parse_error(path, row, 0, e.to_string())
        })?;
        let row = record.position().map_or(records.len() + 1, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        records.push((row, record));
    }
    let Some((_, first)) = records.first() else {
        return Err(input_error(path, "file contains no rows"));
    };
    let skip = usize::from(!is_number(&first[0]));
    let data = &records[skip..];
    let Some((_, head)) = data.first() else {
        return Err(input_error(path, "file contains a header but no data rows"));
    };
    let width = head.len();
    let labelled = width >= 2 && !is_number(&head[width - 1]);
    let numeric = width - usize::from(labelled);

    let mut values = Vec::with_capacity(data.len());
    let mut labels = labelled.then(Vec::new);
    for (row, record) in data {
        if record.len() != width {
            return Err(parse_error(
                path,
                *row,
                record.len().min(width) + 1,
                format!("expected {width} fields, found {}", record.len()),
            ));
        }
        let parsed = record
            .iter()
            .take(numeric)
            .enumerate()
            .map(|(c, field)| match field.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                Ok(_) => Err(parse_error(path, *row, c + 1, format!("non-finite value {field:?}"))),
                Err(_) => Err(parse_error(path, *row, c + 1, format!("not a number: {field:?}"))),
            })
            .collect::<Result<Vec<f64>>>()?;
        values.push(parsed);
        if let Some(labels) = labels.as_mut() {
            labels.push(record[width - 1].to_string());
        }
    }
    Ok(Table { values, labels })
}

fn table_to_points(table: Table, path: &Path, space: Space) -> Result<PointSet> {
    let dim = table.values.first().map_or(0, Vec::len);
    let coords = table.values.into_iter().flatten().collect();
    PointSet::new(space, coords, dim, table.labels).map_err(|e| input_error(path, e.to_string()))
}

fn table_to_distances(table: Table, path: &Path, space: Space) -> Result<DistanceMatrix> {
    if table.labels.is_some() {
        return Err(input_error(path, "distance matrices cannot carry a label column"));
    }
    DistanceMatrix::from_rows(space, table.values).map_err(|e| input_error(path, e.to_string()))
}

fn looks_like_distances(table: &Table) -> bool {
    let n = table.values.len();
    table.labels.is_none()
        && n >= 2
        && table.values.iter().all(|r| r.len() == n)
        && (0..n).all(|i| {
            table.values[i][i].abs() <= DISTANCE_TOLERANCE
                && (0..n).all(|j| {
                    let v = table.values[i][j];
                    v >= 0.0 && (v - table.values[j][i]).abs() <= DISTANCE_TOLERANCE
                })
        })
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads coordinates from any reader; `path` is only used in messages.
pub fn parse_points<R: Read>(reader: R, path: &Path, space: Space) -> Result<PointSet> {
    table_to_points(read_table(reader, path)?, path, space)
}

pub fn parse_data<R: Read>(reader: R, path: &Path, format: InputFormat) -> Result<DataSource> {
    let table = read_table(reader, path)?;
    let as_distances = match format {
        InputFormat::Points => false,
        InputFormat::Distances => true,
        InputFormat::Auto => looks_like_distances(&table),
    };
    if as_distances {
        table_to_distances(table, path, Space::Data).map(DataSource::Distances)
    } else {
        table_to_points(table, path, Space::Data).map(DataSource::Points)
    }
}

pub fn load_points(path: &Path, space: Space) -> Result<PointSet> {
    parse_points(open(path)?, path, space)
}

pub fn load_data(path: &Path, format: InputFormat) -> Result<DataSource> {
    parse_data(open(path)?, path, format)
}
