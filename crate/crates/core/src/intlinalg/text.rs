use std::str::FromStr;

use num_bigint::BigInt;

use super::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: bad integer {token:?}")]
    BadInteger { line: usize, token: String },
    #[error("line {line}: expected {expected} entries, found {found}")]
    Ragged {
        line: usize,
        expected: usize,
        found: usize,
    },
}

/// Parses the matrix literal format: one row per line, whitespace-separated
/// decimal integers. `#` starts a comment. `first_line` offsets the reported
/// line numbers when the block comes from a larger file.
pub fn parse_matrix_at(text: &str, first_line: usize) -> Result<IntMatrix, ParseError> {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = first_line + k;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let row = toks
            .iter()
            .map(|t| {
                BigInt::from_str(t).map_err(|_| ParseError::BadInteger {
                    line,
                    token: t.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(ParseError::Ragged {
                    line,
                    expected: first.len(),
                    found: row.len(),
                });
            }
        }
        rows.push(row);
    }
    let cols = rows.first().map_or(0, Vec::len);
    Ok(IntMatrix::from_rows(&rows, cols))
}

pub fn parse_matrix(text: &str) -> Result<IntMatrix, ParseError> {
    parse_matrix_at(text, 1)
}
