//! Reading and writing the plain-text instance format.
//!
//! An instance file is a whitespace-separated token stream: the first token
//! is the size `n`, followed by the n*n entries of matrix A in row-major
//! order and then the n*n entries of matrix B. Tokens may be split across
//! lines arbitrarily; the writer emits the size on its own line and then one
//! matrix row per line.
//!
//! The first matrix in the file always binds to A and the second to B. No
//! distance/flow meaning is attached at parse time — that identification is
//! the job of `qap_core::standardize`, which works from the data alone.
//!
//! Content after the expected token count (trailing comments in some
//! published instance files) is tolerated and discarded.

use std::path::Path;

use ndarray::Array2;
use qap_core::Instance;

use crate::{atomic_write, IoError};

/// How matrix entries are rendered by [`write_qaplib_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumberFormat {
    /// Render entries as integers; any fractional entry is an error.
    Integer,
    /// Render entries with this many decimal places.
    Decimal(usize),
}

/// Parses an instance from its plain-text form.
///
/// Errors: too few tokens reports expected vs. found counts; a non-numeric
/// token before the count is satisfied reports its 1-based position; a size
/// below 2 is rejected.
pub fn parse_qaplib(text: &str) -> Result<Instance, IoError> {
    let mut tokens = text.split_whitespace();
    let first = match tokens.next() {
        Some(token) => token,
        None => return Err(IoError::TokenCount { expected: 1, found: 0 }),
    };
    let n = match first.parse::<usize>() {
        Ok(n) => n,
        Err(_) if first.parse::<f64>().is_ok() => {
            return Err(IoError::InvalidSize { token: first.to_string() })
        }
        Err(_) => {
            return Err(IoError::NonNumericToken { position: 1, token: first.to_string() })
        }
    };
    if n < 2 {
        return Err(IoError::InstanceTooSmall { n });
    }

    let needed = 2 * n * n;
    let mut values = Vec::with_capacity(needed);
    for (offset, token) in tokens.enumerate() {
        if values.len() == needed {
            break; // trailing content after the full count is ignored
        }
        let value: f64 = token.parse().map_err(|_| IoError::NonNumericToken {
            position: offset + 2,
            token: token.to_string(),
        })?;
        values.push(value);
    }
    if values.len() < needed {
        return Err(IoError::TokenCount {
            expected: 1 + needed,
            found: 1 + values.len(),
        });
    }

    let b_values = values.split_off(n * n);
    let a = Array2::from_shape_vec((n, n), values).expect("length checked above");
    let b = Array2::from_shape_vec((n, n), b_values).expect("length checked above");
    Ok(Instance::new("", a, b)?)
}

/// Serializes an instance, choosing [`NumberFormat::Integer`] when every
/// entry is integral and twelve decimal places otherwise.
pub fn write_qaplib(inst: &Instance) -> Result<String, IoError> {
    let integral = inst
        .a()
        .iter()
        .chain(inst.b().iter())
        .all(|v| v.is_finite() && v.fract() == 0.0);
    let format = if integral { NumberFormat::Integer } else { NumberFormat::Decimal(12) };
    write_qaplib_with(inst, format)
}

/// Serializes an instance with an explicit entry format.
pub fn write_qaplib_with(inst: &Instance, format: NumberFormat) -> Result<String, IoError> {
    let n = inst.n();
    // Rough size: one line for n, then 2n lines of n numbers.
    let mut out = String::with_capacity(2 * n * n * 8 + 16);
    out.push_str(&n.to_string());
    out.push('\n');
    for (name, matrix) in [("A", inst.a()), ("B", inst.b())] {
        for row in 0..n {
            for col in 0..n {
                let value = matrix[(row, col)];
                if !value.is_finite() {
                    return Err(IoError::NonFiniteEntry { matrix: name, row, col });
                }
                if col > 0 {
                    out.push(' ');
                }
                match format {
                    NumberFormat::Integer => {
                        if value.fract() != 0.0 {
                            return Err(IoError::NonIntegralEntry {
                                matrix: name,
                                row,
                                col,
                                value,
                            });
                        }
                        out.push_str(&value.to_string());
                    }
                    NumberFormat::Decimal(places) => {
                        out.push_str(&format!("{value:.places$}"));
                    }
                }
            }
            out.push('\n');
        }
    }
    Ok(out)
}

/// Reads and parses an instance file, labelling the instance with the file
/// stem.
pub fn read_qaplib_file(path: &Path) -> Result<Instance, IoError> {
    let text = std::fs::read_to_string(path)?;
    let inst = parse_qaplib(&text)?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(inst.with_label(label))
}

/// Serializes an instance to a file, atomically.
pub fn write_qaplib_file(inst: &Instance, path: &Path) -> Result<(), IoError> {
    let text = write_qaplib(inst)?;
    atomic_write(path, text.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_two_by_two_example() {
        let inst = parse_qaplib("2\n0 1\n2 0\n0 3\n4 0").unwrap();
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.a()[(0, 1)], 1.0);
        assert_eq!(inst.a()[(1, 0)], 2.0);
        assert_eq!(inst.b()[(0, 1)], 3.0);
        assert_eq!(inst.b()[(1, 0)], 4.0);
    }

    #[test]
    fn short_stream_reports_expected_and_found_counts() {
        let err = parse_qaplib("2\n0 1 2").unwrap_err();
        assert!(matches!(err, IoError::TokenCount { expected: 9, found: 4 }));
        assert_eq!(err.to_string(), "expected 9 tokens, found 4");
    }

    #[test]
    fn non_numeric_token_reports_its_position() {
        let err = parse_qaplib("2\n0 1\n2 x\n0 3\n4 0").unwrap_err();
        match err {
            IoError::NonNumericToken { position, token } => {
                assert_eq!(position, 5);
                assert_eq!(token, "x");
            }
            other => panic!("unexpected error: {other:?}"),
        }
    }

    #[test]
    fn undersized_instances_are_rejected() {
        assert!(matches!(parse_qaplib("1\n0\n0"), Err(IoError::InstanceTooSmall { n: 1 })));
        assert!(matches!(parse_qaplib("0"), Err(IoError::InstanceTooSmall { n: 0 })));
        assert!(matches!(parse_qaplib("2.5\n"), Err(IoError::InvalidSize { .. })));
    }

    #[test]
    fn trailing_content_after_the_token_count_is_ignored() {
        let inst = parse_qaplib("2\n0 1\n2 0\n0 3\n4 0\nend of data").unwrap();
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.b()[(1, 0)], 4.0);
    }

    #[test]
    fn writes_one_matrix_row_per_line() {
        let inst = parse_qaplib("2 0 1 2 0 0 3 4 0").unwrap();
        assert_eq!(write_qaplib(&inst).unwrap(), "2\n0 1\n2 0\n0 3\n4 0\n");
    }

    #[test]
    fn integer_format_rejects_fractional_entries() {
        let a = Array2::from_shape_vec((2, 2), vec![0.0, 1.5, 2.0, 0.0]).unwrap();
        let b = Array2::from_shape_vec((2, 2), vec![0.0, 3.0, 4.0, 0.0]).unwrap();
        let inst = Instance::new("fractional", a, b).unwrap();
        let err = write_qaplib_with(&inst, NumberFormat::Integer).unwrap_err();
        assert!(matches!(
            err,
            IoError::NonIntegralEntry { matrix: "A", row: 0, col: 1, .. }
        ));
        // The automatic chooser falls back to decimal output instead.
        let text = write_qaplib(&inst).unwrap();
        assert!(text.contains("1.5"));
        assert_eq!(parse_qaplib(&text).unwrap().a()[(0, 1)], 1.5);
    }
}
