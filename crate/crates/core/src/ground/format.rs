use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ground::matrix::parse_matrix_row;
use crate::ground::{family_to_matrix, SetFamily, SubsetMask};

/// Text formats for families.
///
/// * `Sets`: first line `k=<int>`, then one member per line as an ascending
///   comma-separated list of 1-based elements; an empty line is the empty set.
/// * `Matrix`: one row per member, `'0'`/`'1'` per cell, no separators; `k` is
///   the row length.
/// * `Json`: `{"k": <int>, "sets": [[...], ...]}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Sets,
    Matrix,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sets" => Ok(Format::Sets),
            "matrix" => Ok(Format::Matrix),
            "json" => Ok(Format::Json),
            other => Err(Error::domain(format!("unknown format {other:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Sets => "sets",
            Format::Matrix => "matrix",
            Format::Json => "json",
        })
    }
}

#[derive(Serialize, Deserialize)]
struct JsonFamily {
    k: usize,
    sets: Vec<Vec<usize>>,
}

pub fn parse_family(text: &str, format: Format) -> Result<SetFamily> {
    match format {
        Format::Sets => parse_sets(text),
        Format::Matrix => parse_matrix(text),
        Format::Json => parse_json(text),
    }
}

/// Guesses the format from the first non-blank character: `k` → sets,
/// `{` → JSON, otherwise matrix.
pub fn parse_family_auto(text: &str) -> Result<SetFamily> {
    let format = match text.trim_start().chars().next() {
        Some('k') => Format::Sets,
        Some('{') => Format::Json,
        _ => Format::Matrix,
    };
    parse_family(text, format)
}

pub fn emit_family(family: &SetFamily, format: Format) -> Result<String> {
    match format {
        Format::Sets => {
            let mut out = format!("k={}\n", family.k());
            for m in family.iter() {
                let line: Vec<String> = m.elements().iter().map(|e| e.to_string()).collect();
                out.push_str(&line.join(","));
                out.push('\n');
            }
            Ok(out)
        }
        Format::Matrix => Ok(family_to_matrix(family)?.to_string()),
        Format::Json => {
            let doc = JsonFamily {
                k: family.k(),
                sets: family.iter().map(|m| m.elements()).collect(),
            };
            let mut s = serde_json::to_string(&doc).expect("plain data serializes");
            s.push('\n');
            Ok(s)
        }
    }
}

fn parse_sets(text: &str) -> Result<SetFamily> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::parse(1, "missing k=<int> header"))?;
    let k = header
        .trim()
        .strip_prefix("k=")
        .ok_or_else(|| Error::parse(1, "expected k=<int>"))?
        .trim()
        .parse::<usize>()
        .map_err(|e| Error::parse(1, format!("bad k: {e}")))?;
    if k == 0 {
        return Err(Error::parse(1, "k must be positive"));
    }
    let mut family = SetFamily::new(k)?;
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let line = line.trim();
        let mut elements = Vec::new();
        if !line.is_empty() {
            for tok in line.split(',') {
                let e: usize = tok
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad element {tok:?}")))?;
                if e == 0 || e > k {
                    return Err(Error::parse(lineno, format!("element {e} outside [1, {k}]")));
                }
                if elements.last().is_some_and(|&last| last >= e) {
                    return Err(Error::parse(lineno, "elements must be strictly ascending"));
                }
                elements.push(e);
            }
        }
        family.insert(SubsetMask::from_elements(k, elements)?)?;
    }
    Ok(family)
}

fn parse_matrix(text: &str) -> Result<SetFamily> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let row = parse_matrix_row(line.trim(), i + 1)?;
        if let Some(first) = rows.first() {
            let first: &SubsetMask = first;
            if first.k() != row.k() {
                return Err(Error::parse(
                    i + 1,
                    format!("row length {} differs from {}", row.k(), first.k()),
                ));
            }
        }
        rows.push(row);
    }
    let k = rows
        .first()
        .map(|r| r.k())
        .ok_or_else(|| Error::parse(1, "matrix has no rows"))?;
    SetFamily::from_members(k, rows)
}

fn parse_json(text: &str) -> Result<SetFamily> {
    let doc: JsonFamily = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    if doc.k == 0 {
        return Err(Error::parse(1, "k must be positive"));
    }
    let mut family = SetFamily::new(doc.k)?;
    for set in doc.sets {
        if let Some(&e) = set.iter().find(|&&e| e == 0 || e > doc.k) {
            return Err(Error::parse(1, format!("element {e} outside [1, {}]", doc.k)));
        }
        family.insert(SubsetMask::from_elements(doc.k, set)?)?;
    }
    Ok(family)
}
