//! JSON report envelope and the plain-text renderer.

use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: &str = "1";
pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Debug, Serialize)]
pub struct Report<T> {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub input_digest: Option<String>,
    pub model: String,
    pub result: T,
    pub timing_ms: f64,
}

impl<T: Serialize + RenderText> Report<T> {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("reports always serialize"),
            Format::Text => {
                let mut out = String::new();
                let _ = writeln!(out, "command  {}", self.command);
                let _ = writeln!(out, "model    {}", self.model);
                if let Some(digest) = &self.input_digest {
                    let _ = writeln!(out, "input    {digest}");
                }
                self.result.render_text(&mut out);
                let _ = writeln!(out, "time     {:.3} ms", self.timing_ms);
                out
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

pub trait RenderText {
    fn render_text(&self, out: &mut String);
}

/// `sha256:<hex>` of the raw input bytes.
pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

/// Left-aligned columns separated by two spaces.
pub fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |out: &mut String, cells: &mut dyn Iterator<Item = &str>| {
        let text: Vec<String> = cells
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", text.join("  ").trim_end());
    };
    line(out, &mut header.iter().copied());
    for row in rows {
        line(out, &mut row.iter().map(String::as_str));
    }
}

/// Millisecond wall time rounded to microseconds.
pub fn elapsed_ms(start: std::time::Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}
