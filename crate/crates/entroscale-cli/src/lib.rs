//! Parsing and serialization behind the `entroscale` binary: the flat
//! key=value config format, comma-separated number lists, and float text
//! that round-trips 64-bit values exactly.

use serde::Serialize;
use std::collections::BTreeMap;
use std::io;

/// 17 significant digits; parses back to the identical bits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Cell text for a column that only ever holds whole numbers (lengths,
/// indices, counts).
pub fn fmt_int(x: f64) -> String {
    debug_assert_eq!(x.fract(), 0.0);
    format!("{}", x as i64)
}

/// Flat key=value file whose keys mirror the long flag names. Blank lines
/// and lines starting with '#' are skipped; the last occurrence of a key
/// wins.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("line {}: expected key=value", idx + 1));
        };
        let key = key.trim();
        if key.is_empty() {
            return Err(format!("line {}: empty key", idx + 1));
        }
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// Comma-separated floats; entries are trimmed, empty entries rejected.
pub fn parse_list_f64(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|part| {
            let part = part.trim();
            if part.is_empty() {
                return Err("empty list entry".to_string());
            }
            part.parse::<f64>()
                .map_err(|e| format!("list entry {part:?}: {e}"))
        })
        .collect()
}

/// Comma-separated nonnegative integers; entries are trimmed, empty entries
/// rejected.
pub fn parse_list_usize(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(|part| {
            let part = part.trim();
            if part.is_empty() {
                return Err("empty list entry".to_string());
            }
            part.parse::<usize>()
                .map_err(|e| format!("list entry {part:?}: {e}"))
        })
        .collect()
}

/// Header plus comma-joined rows, one line each. Cells are pre-formatted
/// and never contain commas, so no quoting is applied.
pub fn write_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    debug_assert!(rows.iter().all(|r| r.len() == header.len()));
    let mut s = String::new();
    s.push_str(&header.join(","));
    s.push('\n');
    for row in rows {
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Compact JSON with every float in 17-significant-digit form. Integers go
/// out as plain integers.
pub fn to_json(value: &serde_json::Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value.serialize(&mut ser).expect("in-memory json");
    out.push(b'\n');
    String::from_utf8(out).expect("json output is utf-8")
}
