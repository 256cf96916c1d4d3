//! Plain-text square format: the order on the first line, then `n` lines of
//! `n` space-separated integers.

use std::collections::BTreeSet;
use std::io::{Read, Write};

use super::{FamilyTag, LatinSquare};
use crate::error::{Error, Result};

pub fn write_square<W: Write>(l: &LatinSquare, mut out: W) -> Result<()> {
    writeln!(out, "{}", l.order())?;
    for row in l.rows() {
        let line: Vec<String> = row.iter().map(|s| s.to_string()).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

pub fn read_square<R: Read>(mut input: R) -> Result<LatinSquare> {
    let mut text = String::new();
    input.read_to_string(&mut text)?;
    parse_square(&text)
}

/// Parses the text format. Any alphabet of `n` distinct integers is re-indexed
/// to `0..n` by sorted order before validation.
pub fn parse_square(text: &str) -> Result<LatinSquare> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        reason: "missing order line".into(),
    })?;
    let n: usize = header.parse().map_err(|_| Error::Parse {
        line: header_line,
        reason: format!("order `{header}` is not a positive integer"),
    })?;
    if n == 0 {
        return Err(Error::Parse {
            line: header_line,
            reason: "order must be positive".into(),
        });
    }

    let mut raw: Vec<i64> = Vec::with_capacity(n * n);
    let mut last_line = header_line;
    for row in 0..n {
        let (line_no, line) = lines.next().ok_or(Error::Parse {
            line: last_line + 1,
            reason: format!("expected {n} rows, found {row}"),
        })?;
        last_line = line_no;
        let values: Vec<i64> = line
            .split_whitespace()
            .map(|t| {
                t.parse::<i64>().map_err(|_| Error::Parse {
                    line: line_no,
                    reason: format!("`{t}` is not an integer"),
                })
            })
            .collect::<Result<_>>()?;
        if values.len() != n {
            return Err(Error::Parse {
                line: line_no,
                reason: format!("expected {n} entries, found {}", values.len()),
            });
        }
        raw.extend(values);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::Parse {
            line: line_no,
            reason: format!("trailing data after {n} rows"),
        });
    }

    let alphabet: BTreeSet<i64> = raw.iter().copied().collect();
    let canonical = alphabet.len() == n
        && alphabet.first() == Some(&0)
        && alphabet.last() == Some(&(n as i64 - 1));
    let cells: Vec<usize> = if canonical || alphabet.len() != n {
        // leave out-of-range values for the validator to report
        raw.iter()
            .map(|&v| usize::try_from(v).unwrap_or(usize::MAX))
            .collect()
    } else {
        let index: Vec<i64> = alphabet.into_iter().collect();
        raw.iter()
            .map(|v| index.binary_search(v).unwrap())
            .collect()
    };
    LatinSquare::from_flat(n, &cells, FamilyTag::User)
}
