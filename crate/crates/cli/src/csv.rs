//! CSV output: `#`-prefixed header comments carrying the resolved
//! parameters, one column-name line, then fixed-precision rows.

use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

/// Formats `v` with `precision` decimals; `-0.000…` prints unsigned.
pub fn fmt_value(v: f64, precision: usize) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{v:.precision$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

pub struct Table {
    precision: usize,
    text: String,
}

impl Table {
    /// Starts a table for `command`, logging every `(key, value)` parameter.
    pub fn new(command: &str, params: &[(&str, String)], precision: usize, stamp: bool) -> Self {
        let mut text = format!("# unruh-probe {command}\n");
        for (k, v) in params {
            let _ = writeln!(text, "# {k} = {v}");
        }
        let _ = writeln!(text, "# precision = {precision}");
        if stamp {
            let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
            let _ = writeln!(text, "# generated_unix = {secs}");
        }
        Self { precision, text }
    }

    pub fn comment(&mut self, line: &str) {
        let _ = writeln!(self.text, "# {line}");
    }

    pub fn columns(&mut self, names: &[&str]) {
        self.text.push_str(&names.join(","));
        self.text.push('\n');
    }

    /// Appends a row; `None` cells are left empty.
    pub fn row(&mut self, cells: &[Option<f64>]) {
        let line: Vec<String> = cells
            .iter()
            .map(|c| c.map(|v| fmt_value(v, self.precision)).unwrap_or_default())
            .collect();
        self.text.push_str(&line.join(","));
        self.text.push('\n');
    }

    /// Appends a row whose first cell is a label.
    pub fn labeled_row(&mut self, label: &str, cells: &[Option<f64>]) {
        self.text.push_str(label);
        for c in cells {
            self.text.push(',');
            if let Some(v) = c {
                self.text.push_str(&fmt_value(*v, self.precision));
            }
        }
        self.text.push('\n');
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

/// Shortest round-trip representation, used for header parameters.
pub fn param(v: f64) -> String {
    format!("{v}")
}
