//! Text encodings for integer sequences.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Values separated by single spaces on one line.
    Plain,
    /// OEIS b-file: `index value` per line.
    Bfile,
    /// `index,value` rows under a header.
    Csv,
    Json,
}

/// A named sequence whose first term has index `offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequence {
    pub name: String,
    pub offset: i64,
    /// Decimal renderings of the terms, so that big integers pass through.
    pub values: Vec<String>,
}

impl Sequence {
    pub fn new<T: ToString>(name: &str, offset: i64, values: impl IntoIterator<Item = T>) -> Self {
        Sequence {
            name: name.to_string(),
            offset,
            values: values.into_iter().map(|v| v.to_string()).collect(),
        }
    }

    fn indexed(&self) -> impl Iterator<Item = (i64, &str)> {
        (self.offset..).zip(self.values.iter().map(String::as_str))
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Plain => {
                out.push_str(&self.values.join(" "));
                out.push('\n');
            }
            Format::Bfile => {
                for (i, v) in self.indexed() {
                    let _ = writeln!(out, "{i} {v}");
                }
            }
            Format::Csv => {
                out.push_str("index,value\n");
                for (i, v) in self.indexed() {
                    let _ = writeln!(out, "{i},{v}");
                }
            }
            Format::Json => {
                let values: Vec<Value> = self.values.iter().map(|v| json_number(v)).collect();
                let doc = json!({ "name": self.name, "offset": self.offset, "values": values });
                out.push_str(&doc.to_string());
                out.push('\n');
            }
        }
        out
    }
}

/// Machine-sized values become JSON numbers, anything larger a string.
fn json_number(v: &str) -> Value {
    if let Ok(x) = i64::from_str(v) {
        Value::from(x)
    } else if let Ok(x) = u64::from_str(v) {
        Value::from(x)
    } else {
        Value::from(v)
    }
}

/// Reads a b-file back into `(index, value)` pairs, skipping blank lines and
/// `#` comments.
pub fn parse_bfile(text: &str) -> Result<Vec<(i64, String)>, String> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(i), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(format!("line {}: expected `index value`", lineno + 1));
        };
        let i = i
            .parse()
            .map_err(|_| format!("line {}: bad index {i:?}", lineno + 1))?;
        if v.strip_prefix('-').unwrap_or(v).is_empty()
            || !v.strip_prefix('-').unwrap_or(v).bytes().all(|b| b.is_ascii_digit())
        {
            return Err(format!("line {}: bad value {v:?}", lineno + 1));
        }
        out.push((i, v.to_string()));
    }
    Ok(out)
}
