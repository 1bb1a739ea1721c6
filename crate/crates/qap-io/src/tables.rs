//! Feature and run-record CSV tables.
//!
//! Two schemas are defined here. The feature table has columns
//! `instance,class,source` followed by the 40 catalog feature names in
//! order; landscape cells may be empty (a row written before landscape
//! sampling), every other cell must hold a finite number. The run-record
//! table has columns `instance,algorithm,run,best_cost,time_to_best` and
//! carries one row per solver run.
//!
//! Values are written with the shortest representation that parses back to
//! the same number, so read ∘ write is the identity on both tables.

use std::path::Path;

use crate::catalog::{FEATURE_COUNT, FEATURE_NAMES, LANDSCAPE_START};
use crate::{atomic_write, resolve_feature_name, IoError};

/// Accepted values for the feature table's `source` column.
pub const SOURCES: [&str; 3] = ["benchmark", "generated", "evolved"];

/// The run-record CSV header.
pub const RUN_RECORD_HEADER: &str = "instance,algorithm,run,best_cost,time_to_best";

/// One row of the feature table: an instance's labels plus its 40 feature
/// values in catalog order. Landscape features (the last eight) may be
/// `None`; the deterministic features are always present.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRow {
    pub instance: String,
    pub class: String,
    pub source: String,
    pub values: Vec<Option<f64>>,
}

impl FeatureRow {
    /// Builds a row, enforcing the schema invariants: exactly
    /// [`FEATURE_COUNT`] values, deterministic features present, all present
    /// values finite, and a recognized source.
    pub fn new(
        instance: impl Into<String>,
        class: impl Into<String>,
        source: impl Into<String>,
        values: Vec<Option<f64>>,
    ) -> Result<Self, IoError> {
        let source = source.into();
        if !SOURCES.contains(&source.as_str()) {
            return Err(IoError::Invalid {
                reason: format!("source must be one of {SOURCES:?}, got {source:?}"),
            });
        }
        if values.len() != FEATURE_COUNT {
            return Err(IoError::Invalid {
                reason: format!("feature row has {} values, expected {FEATURE_COUNT}", values.len()),
            });
        }
        for (index, value) in values.iter().enumerate() {
            match value {
                Some(v) if !v.is_finite() => {
                    return Err(IoError::Invalid {
                        reason: format!("feature {:?} is not finite", FEATURE_NAMES[index]),
                    });
                }
                None if index < LANDSCAPE_START => {
                    return Err(IoError::Invalid {
                        reason: format!(
                            "deterministic feature {:?} is missing",
                            FEATURE_NAMES[index]
                        ),
                    });
                }
                _ => {}
            }
        }
        Ok(FeatureRow { instance: instance.into(), class: class.into(), source, values })
    }

    /// Looks up a feature value by catalog name (aliases accepted).
    pub fn value(&self, name: &str) -> Result<Option<f64>, IoError> {
        Ok(self.values[resolve_feature_name(name)?])
    }
}

/// One solver run: which instance, which algorithm, and what it achieved.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub instance: String,
    pub algorithm: String,
    pub run: u32,
    pub best_cost: f64,
    pub time_to_best: f64,
}

impl RunRecord {
    /// Builds a record, enforcing `run >= 1`, a finite best cost, and a
    /// finite non-negative time.
    pub fn new(
        instance: impl Into<String>,
        algorithm: impl Into<String>,
        run: u32,
        best_cost: f64,
        time_to_best: f64,
    ) -> Result<Self, IoError> {
        if run == 0 {
            return Err(IoError::Invalid { reason: "run index must be at least 1".to_string() });
        }
        if !best_cost.is_finite() {
            return Err(IoError::Invalid { reason: "best_cost must be finite".to_string() });
        }
        if !time_to_best.is_finite() || time_to_best < 0.0 {
            return Err(IoError::Invalid {
                reason: "time_to_best must be finite and non-negative".to_string(),
            });
        }
        Ok(RunRecord {
            instance: instance.into(),
            algorithm: algorithm.into(),
            run,
            best_cost,
            time_to_best,
        })
    }
}

/// The feature table's header fields, in order.
pub fn feature_csv_header() -> Vec<String> {
    let mut header = vec!["instance".to_string(), "class".to_string(), "source".to_string()];
    header.extend(FEATURE_NAMES.iter().map(|n| n.to_string()));
    header
}

fn check_header(found: &csv::StringRecord, expected: &[String]) -> Result<(), IoError> {
    let found: Vec<&str> = found.iter().collect();
    for want in expected {
        if !found.contains(&want.as_str()) {
            return Err(IoError::MissingColumn { column: want.clone() });
        }
    }
    for have in &found {
        if !expected.iter().any(|w| w == have) {
            return Err(IoError::UnknownColumn { column: have.to_string() });
        }
    }
    if found != expected.iter().map(String::as_str).collect::<Vec<_>>() {
        return Err(IoError::InvalidRecord {
            line: 1,
            reason: "header columns are out of order".to_string(),
        });
    }
    Ok(())
}

fn record_line(record: &csv::StringRecord, fallback: usize) -> usize {
    record.position().map(|p| p.line() as usize).unwrap_or(fallback)
}

fn parse_cell(text: &str, line: usize, column: &str) -> Result<f64, IoError> {
    let value: f64 = text.parse().map_err(|_| IoError::BadCell {
        line,
        column: column.to_string(),
        value: text.to_string(),
    })?;
    if !value.is_finite() {
        return Err(IoError::InvalidRecord {
            line,
            reason: format!("column {column:?} is not finite"),
        });
    }
    Ok(value)
}

/// Serializes feature rows to CSV text.
pub fn write_feature_csv(rows: &[FeatureRow]) -> Result<String, IoError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(feature_csv_header())?;
    for row in rows {
        let mut record = vec![row.instance.clone(), row.class.clone(), row.source.clone()];
        for value in &row.values {
            record.push(match value {
                Some(v) => v.to_string(),
                None => String::new(),
            });
        }
        writer.write_record(record)?;
    }
    let bytes = writer.into_inner().map_err(|e| IoError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Parses feature rows from CSV text. An empty input yields an empty list.
pub fn read_feature_csv(text: &str) -> Result<Vec<FeatureRow>, IoError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    check_header(reader.headers()?, &feature_csv_header())?;
    let mut rows = Vec::new();
    for (index, record) in reader.records().enumerate() {
        let record = record?;
        let line = record_line(&record, index + 2);
        let mut values = Vec::with_capacity(FEATURE_COUNT);
        for (offset, name) in FEATURE_NAMES.iter().enumerate() {
            let cell = record.get(3 + offset).unwrap_or("");
            if cell.is_empty() {
                values.push(None);
            } else {
                values.push(Some(parse_cell(cell, line, name)?));
            }
        }
        let row = FeatureRow::new(
            record.get(0).unwrap_or(""),
            record.get(1).unwrap_or(""),
            record.get(2).unwrap_or(""),
            values,
        )
        .map_err(|err| match err {
            IoError::Invalid { reason } => IoError::InvalidRecord { line, reason },
            other => other,
        })?;
        rows.push(row);
    }
    Ok(rows)
}

/// Serializes run records to CSV text.
pub fn write_run_records(records: &[RunRecord]) -> Result<String, IoError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(RUN_RECORD_HEADER.split(','))?;
    for record in records {
        writer.write_record([
            record.instance.as_str(),
            record.algorithm.as_str(),
            &record.run.to_string(),
            &record.best_cost.to_string(),
            &record.time_to_best.to_string(),
        ])?;
    }
    let bytes = writer.into_inner().map_err(|e| IoError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Parses run records from CSV text. An empty input yields an empty list.
pub fn read_run_records(text: &str) -> Result<Vec<RunRecord>, IoError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let expected: Vec<String> = RUN_RECORD_HEADER.split(',').map(str::to_string).collect();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    check_header(reader.headers()?, &expected)?;
    let mut records = Vec::new();
    for (index, record) in reader.records().enumerate() {
        let record = record?;
        let line = record_line(&record, index + 2);
        let run_text = record.get(2).unwrap_or("");
        let run: u32 = run_text.parse().map_err(|_| IoError::BadCell {
            line,
            column: "run".to_string(),
            value: run_text.to_string(),
        })?;
        let best_cost = parse_cell(record.get(3).unwrap_or(""), line, "best_cost")?;
        let time_to_best = parse_cell(record.get(4).unwrap_or(""), line, "time_to_best")?;
        let parsed = RunRecord::new(
            record.get(0).unwrap_or(""),
            record.get(1).unwrap_or(""),
            run,
            best_cost,
            time_to_best,
        )
        .map_err(|err| match err {
            IoError::Invalid { reason } => IoError::InvalidRecord { line, reason },
            other => other,
        })?;
        records.push(parsed);
    }
    Ok(records)
}

/// Reads a feature CSV file; a missing-length or malformed file is an error,
/// an empty file is an empty list.
pub fn read_feature_csv_file(path: &Path) -> Result<Vec<FeatureRow>, IoError> {
    read_feature_csv(&std::fs::read_to_string(path)?)
}

/// Writes a feature CSV file, atomically.
pub fn write_feature_csv_file(path: &Path, rows: &[FeatureRow]) -> Result<(), IoError> {
    atomic_write(path, write_feature_csv(rows)?.as_bytes())?;
    Ok(())
}

/// Reads a run-record CSV file.
pub fn read_run_records_file(path: &Path) -> Result<Vec<RunRecord>, IoError> {
    read_run_records(&std::fs::read_to_string(path)?)
}

/// Writes a run-record CSV file, atomically.
pub fn write_run_records_file(path: &Path, records: &[RunRecord]) -> Result<(), IoError> {
    atomic_write(path, write_run_records(records)?.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_values() -> Vec<Option<f64>> {
        (0..FEATURE_COUNT).map(|i| Some(i as f64 / 8.0)).collect()
    }

    #[test]
    fn feature_row_validates_length_source_and_finiteness() {
        assert!(FeatureRow::new("a", "b", "generated", sample_values()).is_ok());
        assert!(FeatureRow::new("a", "b", "generated", vec![Some(0.0); 39]).is_err());
        assert!(FeatureRow::new("a", "b", "handmade", sample_values()).is_err());
        let mut nan = sample_values();
        nan[7] = Some(f64::NAN);
        assert!(FeatureRow::new("a", "b", "generated", nan).is_err());
        let mut hole = sample_values();
        hole[0] = None;
        assert!(FeatureRow::new("a", "b", "generated", hole).is_err());
    }

    #[test]
    fn landscape_cells_may_be_empty() {
        let mut values = sample_values();
        for cell in values.iter_mut().skip(LANDSCAPE_START) {
            *cell = None;
        }
        let row = FeatureRow::new("inst", "uniform", "generated", values).unwrap();
        let text = write_feature_csv(std::slice::from_ref(&row)).unwrap();
        assert!(text.ends_with(",,,,,,,,\n"));
        let back = read_feature_csv(&text).unwrap();
        assert_eq!(back, vec![row]);
    }

    #[test]
    fn run_record_round_trips_through_csv() {
        let records = vec![
            RunRecord::new("tai12a", "bma", 1, 224416.0, 1.25).unwrap(),
            RunRecord::new("tai12a", "mmas", 1, 224500.0, 0.07812500001).unwrap(),
        ];
        let text = write_run_records(&records).unwrap();
        assert!(text.starts_with(RUN_RECORD_HEADER));
        assert_eq!(read_run_records(&text).unwrap(), records);
    }

    #[test]
    fn missing_column_is_named() {
        let err = read_run_records("instance,algorithm,run,best_cost\na,b,1,2\n").unwrap_err();
        match err {
            IoError::MissingColumn { column } => assert_eq!(column, "time_to_best"),
            other => panic!("unexpected error: {other:?}"),
        }
    }

    #[test]
    fn empty_input_is_an_empty_collection() {
        assert_eq!(read_feature_csv("").unwrap(), Vec::new());
        assert_eq!(read_run_records("\n").unwrap(), Vec::new());
    }

    #[test]
    fn zero_run_index_is_rejected_with_its_line() {
        let text = format!("{RUN_RECORD_HEADER}\na,b,1,2,3\na,b,0,2,3\n");
        let err = read_run_records(&text).unwrap_err();
        match err {
            IoError::InvalidRecord { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error: {other:?}"),
        }
    }
}
