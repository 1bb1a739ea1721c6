//! File formats for the instance-analysis toolkit.
//!
//! This crate owns every on-disk format the workspace touches, and nothing
//! else — no statistics, no solving:
//!
//! - plain-text instances (size, then both matrices; see [`qaplib`]),
//! - the canonical 40-feature vocabulary shared by all producers and
//!   consumers of feature data (see [`catalog`]),
//! - feature and run-record CSV tables (see [`tables`]),
//! - projection and selector configuration files (see [`config`]).
//!
//! Everything is a pure function over in-memory text plus thin `_file`
//! wrappers; the wrappers write atomically so readers never observe a
//! half-written table.

pub mod catalog;
pub mod config;
pub mod error;
pub mod qaplib;
pub mod tables;

pub use catalog::{
    feature_index, is_landscape_feature, resolve_feature_name, ESCAPE_PROBABILITY_ALIAS,
    FEATURE_COUNT, FEATURE_NAMES, LANDSCAPE_START,
};
pub use config::{
    format_projection_model, format_selector_model, load_projection_model, load_selector_model,
    read_projection_model_file, read_selector_model_file, write_projection_model_file,
    write_selector_model_file, AlgorithmModel, ProjectionModel, SelectorModel,
};
pub use error::IoError;
pub use qaplib::{
    parse_qaplib, read_qaplib_file, write_qaplib, write_qaplib_file, write_qaplib_with,
    NumberFormat,
};
pub use tables::{
    feature_csv_header, read_feature_csv, read_feature_csv_file, read_run_records,
    read_run_records_file, write_feature_csv, write_feature_csv_file, write_run_records,
    write_run_records_file, FeatureRow, RunRecord, RUN_RECORD_HEADER, SOURCES,
};

use std::io::Write as _;
use std::path::Path;

/// Writes `contents` to `path` atomically: the bytes go to a temporary file
/// in the same directory, which is renamed over the target only once fully
/// written. A crash mid-write leaves the original file untouched.
pub fn atomic_write(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent,
        _ => Path::new("."),
    };
    let mut file = tempfile::NamedTempFile::new_in(dir)?;
    file.write_all(contents)?;
    file.persist(path).map_err(|e| e.error)?;
    Ok(())
}
