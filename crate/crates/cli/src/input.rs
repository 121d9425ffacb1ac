//! Reading corpora from files or stdin.

use std::io::Read;
use std::path::Path;

use anyhow::{Context, Result};
use lineometer_core::lengthfile::looks_like_length_file;
use lineometer_core::textprep::{decode, syllabify_text};
use lineometer_core::{ExceptionLexicon, InputKind, LengthFile, LengthSequence};
use regex::Regex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum InputFormat {
    /// Length-sequence file if every field is a positive integer, text otherwise.
    #[default]
    Auto,
    Text,
    Lengths,
}

/// One sequence ready for analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct Source {
    pub name: String,
    pub kind: InputKind,
    pub sequence: LengthSequence,
}

pub fn read_bytes(path: &str) -> Result<Vec<u8>> {
    if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .context("reading stdin")?;
        Ok(buf)
    } else {
        std::fs::read(path).with_context(|| format!("reading {path}"))
    }
}

/// Builtin exceptions, overridden by entries from `path` when given.
pub fn load_lexicon(path: Option<&Path>) -> Result<ExceptionLexicon> {
    let mut lex = ExceptionLexicon::builtin();
    if let Some(path) = path {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading lexicon {}", path.display()))?;
        let user = ExceptionLexicon::parse(&text)
            .with_context(|| format!("parsing lexicon {}", path.display()))?;
        log::info!(
            "loaded {} lexicon entries from {}",
            user.len(),
            path.display()
        );
        lex.extend_from(&user);
    }
    Ok(lex)
}

/// Splits text at lines matching `heading`; heading lines are dropped and
/// parts without words are skipped.
fn split_chapters(text: &str, heading: &Regex) -> Vec<String> {
    let mut parts = vec![String::new()];
    for line in text.lines() {
        if heading.is_match(line) {
            parts.push(String::new());
        } else {
            let cur = parts.last_mut().expect("non-empty");
            cur.push_str(line);
            cur.push('\n');
        }
    }
    parts
}

/// Parses one input into one or more sources.
pub fn sources(
    name: &str,
    bytes: &[u8],
    format: InputFormat,
    lexicon: &ExceptionLexicon,
    chapters: Option<&Regex>,
) -> Result<Vec<Source>> {
    let text = decode(bytes).with_context(|| format!("decoding {name}"))?;
    let kind = match format {
        InputFormat::Text => InputKind::Text,
        InputFormat::Lengths => InputKind::Lengths,
        InputFormat::Auto if looks_like_length_file(text) => InputKind::Lengths,
        InputFormat::Auto => InputKind::Text,
    };
    if kind == InputKind::Lengths {
        let file = LengthFile::parse(text).with_context(|| format!("parsing {name}"))?;
        return Ok(vec![Source {
            name: name.to_owned(),
            kind,
            sequence: file.sequence,
        }]);
    }
    let Some(re) = chapters else {
        return Ok(vec![Source {
            name: name.to_owned(),
            kind,
            sequence: syllabify_text(text, lexicon),
        }]);
    };
    let out: Vec<Source> = split_chapters(text, re)
        .iter()
        .map(|part| syllabify_text(part, lexicon))
        .filter(|seq| !seq.is_empty())
        .enumerate()
        .map(|(i, sequence)| Source {
            name: format!("{name}#{}", i + 1),
            kind,
            sequence,
        })
        .collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn auto_detects_length_files() {
        let lex = ExceptionLexicon::new();
        let s = sources("a", b"# kind: x\n1 2 3\n", InputFormat::Auto, &lex, None).unwrap();
        assert_eq!(s[0].kind, InputKind::Lengths);
        assert_eq!(s[0].sequence.lengths(), [1, 2, 3]);
        let s = sources("b", b"one two", InputFormat::Auto, &lex, None).unwrap();
        assert_eq!(s[0].kind, InputKind::Text);
        let s = sources("c", b"1 2 3", InputFormat::Text, &lex, None).unwrap();
        assert!(s[0].sequence.is_empty());
    }

    #[test]
    fn chapters() {
        let re = Regex::new(r"^CHAPTER").unwrap();
        let text = b"CHAPTER I\nthe cat sat\nCHAPTER II\n\nCHAPTER III\non the mat today\n";
        let s = sources(
            "t",
            text,
            InputFormat::Text,
            &ExceptionLexicon::new(),
            Some(&re),
        )
        .unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].name, "t#1");
        assert_eq!(s[1].sequence.len(), 4);
    }

    #[test]
    fn bad_utf8() {
        let e = sources(
            "x",
            &[0x61, 0xff],
            InputFormat::Auto,
            &ExceptionLexicon::new(),
            None,
        );
        assert!(e.is_err());
    }
}
