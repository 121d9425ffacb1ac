//! Plain-text length-sequence files.
//!
//! ```text
//! # kind: geometric
//! # seed: 1
//! 1 2 1 1 3
//! 1 1 2
//! ```
//!
//! Lines starting with `#` are comments; a comment of the form `key: value`
//! is kept as header metadata. Everything else is whitespace-separated
//! positive integers. Line breaks carry no meaning to the analyzers.

use crate::error::{Error, Result};
use crate::seqmodel::LengthSequence;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LengthFile {
    pub header: Vec<(String, String)>,
    pub sequence: LengthSequence,
}

impl LengthFile {
    pub fn new(sequence: LengthSequence) -> Self {
        Self {
            header: Vec::new(),
            sequence,
        }
    }

    pub fn with_header(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.header.push((key.into(), value.to_string()));
        self
    }

    pub fn header_value(&self, key: &str) -> Option<&str> {
        self.header
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header = Vec::new();
        let mut lengths = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if let Some(comment) = trimmed.strip_prefix('#') {
                if let Some((k, v)) = comment.split_once(':') {
                    header.push((k.trim().to_owned(), v.trim().to_owned()));
                }
                continue;
            }
            for field in trimmed.split_whitespace() {
                let value: u32 = field.parse().map_err(|_| Error::LengthFile {
                    line: idx + 1,
                    reason: format!("{field:?} is not a positive integer"),
                })?;
                if value == 0 {
                    return Err(Error::LengthFile {
                        line: idx + 1,
                        reason: "word lengths must be at least 1".into(),
                    });
                }
                lengths.push(value);
            }
        }
        Ok(Self {
            header,
            sequence: LengthSequence::from_counts(lengths),
        })
    }

    /// Renders the file, wrapping the sequence at `per_line` values.
    pub fn render(&self, per_line: usize) -> String {
        let per_line = per_line.max(1);
        let mut rows: Vec<&[u32]> = self.sequence.lengths().chunks(per_line).collect();
        if rows.is_empty() {
            rows.push(&[]);
        }
        self.render_rows(rows)
    }

    /// Renders with one output line per group, e.g. one verse line per row.
    pub fn render_grouped<'a>(&self, groups: impl IntoIterator<Item = &'a [u32]>) -> String {
        self.render_rows(groups.into_iter().collect())
    }

    fn render_rows(&self, rows: Vec<&[u32]>) -> String {
        let mut out = String::new();
        for (k, v) in &self.header {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        for row in rows {
            if row.is_empty() {
                continue;
            }
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// True when every non-comment field is a positive integer and at least one
/// such field exists.
pub fn looks_like_length_file(text: &str) -> bool {
    let mut any = false;
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.starts_with('#') {
            continue;
        }
        for field in trimmed.split_whitespace() {
            match field.parse::<u32>() {
                Ok(v) if v > 0 => any = true,
                _ => return false,
            }
        }
    }
    any
}
