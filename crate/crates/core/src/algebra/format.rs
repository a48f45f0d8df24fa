//! Plain-text algebra files.
//!
//! ```text
//! # sl(2,R) in the (H, K, D) basis
//! name = "sl2r_hkd"
//! dim = 3
//! names = ["H", "K", "D"]
//! bracket = [0, 1, 2, 2.0]
//! bracket = [0, 2, 0, 1.0]
//! bracket = [1, 2, 1, -1.0]
//! ```
//!
//! Each `bracket = [i, j, k, value]` sets `c_ij^k = value` with 0-based
//! indices; `i < j` is required. `#` starts a comment. `name` is optional and
//! defaults to the file stem; `names` defaults to `e0, e1, ...`.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::Value;

use super::LieAlgebra;
use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn as_index(v: &Value, line: usize) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(line, format!("expected a non-negative integer index, found {v}")))
}

/// Parses algebra text. `default_name` is used when the text has no `name` key.
pub fn parse_algebra(text: &str, default_name: &str) -> Result<LieAlgebra> {
    let mut name: Option<String> = None;
    let mut dim: Option<usize> = None;
    let mut names: Option<Vec<String>> = None;
    let mut records = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| parse_err(line, "expected `key = value`"))?;
        let key = key.trim();
        let value: Value = serde_json::from_str(value.trim())
            .map_err(|e| parse_err(line, format!("bad value for `{key}`: {e}")))?;
        match key {
            "name" => {
                let s = value.as_str().ok_or_else(|| parse_err(line, "`name` must be a string"))?;
                name = Some(s.to_string());
            }
            "dim" => {
                let d = as_index(&value, line)?;
                if d == 0 {
                    return Err(parse_err(line, "`dim` must be at least 1"));
                }
                if dim.replace(d).is_some() {
                    return Err(parse_err(line, "`dim` given twice"));
                }
            }
            "names" => {
                let arr = value.as_array().ok_or_else(|| parse_err(line, "`names` must be a list"))?;
                let list = arr
                    .iter()
                    .map(|v| v.as_str().map(String::from))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| parse_err(line, "`names` entries must be strings"))?;
                names = Some(list);
            }
            "bracket" => {
                let arr = value
                    .as_array()
                    .filter(|a| a.len() == 4)
                    .ok_or_else(|| parse_err(line, "`bracket` must be [i, j, k, value]"))?;
                let i = as_index(&arr[0], line)?;
                let j = as_index(&arr[1], line)?;
                let k = as_index(&arr[2], line)?;
                let v = arr[3]
                    .as_f64()
                    .ok_or_else(|| parse_err(line, "bracket value must be a number"))?;
                if i >= j {
                    return Err(parse_err(line, format!("bracket requires i < j, got ({i}, {j})")));
                }
                records.push((i, j, k, v));
            }
            other => return Err(parse_err(line, format!("unknown key `{other}`"))),
        }
    }

    let dim = dim.ok_or_else(|| parse_err(0, "missing `dim`"))?;
    let names = match names {
        Some(n) if n.len() != dim => {
            return Err(Error::Structure(format!("{} names for dimension {dim}", n.len())));
        }
        Some(n) => n,
        None => (0..dim).map(|i| format!("e{i}")).collect(),
    };
    LieAlgebra::new(name.unwrap_or_else(|| default_name.to_string()), names, records)
}

pub fn read_algebra_file(path: impl AsRef<Path>) -> Result<LieAlgebra> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("algebra");
    parse_algebra(&text, stem)
}

/// Serializes an algebra in the same text format.
pub fn write_algebra(alg: &LieAlgebra) -> String {
    let mut out = String::new();
    let names = serde_json::to_string(alg.names()).expect("strings serialize");
    let _ = writeln!(out, "name = {}", serde_json::Value::String(alg.name().to_string()));
    let _ = writeln!(out, "dim = {}", alg.dim());
    let _ = writeln!(out, "names = {names}");
    for (i, j, k, v) in alg.records() {
        let _ = writeln!(out, "bracket = [{i}, {j}, {k}, {v:?}]");
    }
    out
}
