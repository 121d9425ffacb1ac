//! Tokenization and syllable counting.
//!
//! Text is split on whitespace (and on em/en dashes, which join words in
//! literary prose without spaces). Each chunk is lowercased and stripped of
//! leading and trailing non-alphanumeric characters; apostrophes and hyphens
//! inside a word are kept, so `twenty-two` and `don't` are single tokens.
//! Chunks without any alphabetic character, such as numerals, are dropped.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seqmodel::LengthSequence;

const BUILTIN_EXCEPTIONS: &str = include_str!("../data/exceptions.tsv");

/// A normalized word and its 1-based position in the text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyllabifiedToken {
    pub token: Token,
    pub syllables: u32,
}

/// A lexicon entry that was overwritten by a later line of the same file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DuplicateEntry {
    pub word: String,
    pub line: usize,
    pub previous: u32,
    pub replacement: u32,
}

/// Word-to-syllable-count overrides consulted before the heuristic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExceptionLexicon {
    entries: BTreeMap<String, u32>,
}

impl ExceptionLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// The exception list shipped with the crate.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_EXCEPTIONS).expect("built-in exception lexicon is well formed")
    }

    /// Inserts an entry, normalizing the key the same way tokens are
    /// normalized. Returns the previous count, if any.
    pub fn insert(&mut self, word: &str, syllables: u32) -> Result<Option<u32>> {
        if syllables == 0 {
            return Err(Error::InvalidLength(0));
        }
        let key = normalize(word).ok_or_else(|| Error::InvalidParameter {
            name: "lexicon word",
            reason: format!("{word:?} has no alphabetic character"),
        })?;
        Ok(self.entries.insert(key, syllables))
    }

    pub fn get(&self, word: &str) -> Option<u32> {
        self.entries.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.entries.iter().map(|(w, &c)| (w.as_str(), c))
    }

    /// Adds every entry of `other`, overriding existing entries.
    pub fn extend_from(&mut self, other: &ExceptionLexicon) {
        for (w, c) in other.iter() {
            self.entries.insert(w.to_owned(), c);
        }
    }

    /// Parses `word<TAB>count` lines. Blank lines and `#` comments are
    /// skipped. Duplicate keys keep the last value and are logged.
    pub fn parse(text: &str) -> Result<Self> {
        let (lexicon, duplicates) = Self::parse_with_duplicates(text)?;
        for d in &duplicates {
            log::warn!(
                "lexicon line {}: duplicate entry {:?} ({} replaced by {})",
                d.line,
                d.word,
                d.previous,
                d.replacement
            );
        }
        Ok(lexicon)
    }

    pub fn parse_with_duplicates(text: &str) -> Result<(Self, Vec<DuplicateEntry>)> {
        let mut lexicon = Self::new();
        let mut duplicates = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (word, count) = raw.split_once('\t').ok_or_else(|| Error::Lexicon {
                line,
                reason: "expected `word<TAB>count`".into(),
            })?;
            let count: u32 = count.trim().parse().map_err(|_| Error::Lexicon {
                line,
                reason: format!(
                    "syllable count {:?} is not a positive integer",
                    count.trim()
                ),
            })?;
            if count == 0 {
                return Err(Error::Lexicon {
                    line,
                    reason: "syllable count must be at least 1".into(),
                });
            }
            let previous = lexicon
                .insert(word.trim(), count)
                .map_err(|e| Error::Lexicon {
                    line,
                    reason: e.to_string(),
                })?;
            if let Some(previous) = previous {
                duplicates.push(DuplicateEntry {
                    word: normalize(word.trim()).unwrap_or_default(),
                    line,
                    previous,
                    replacement: count,
                });
            }
        }
        Ok((lexicon, duplicates))
    }
}

fn is_hyphen(c: char) -> bool {
    matches!(c, '-' | '\u{2010}' | '\u{2011}')
}

fn is_separator(c: char) -> bool {
    c.is_whitespace() || matches!(c, '\u{2013}' | '\u{2014}' | '\u{2015}')
}

/// Lowercases a raw word and strips non-alphanumeric characters from both
/// ends. Returns `None` when nothing alphabetic remains.
pub fn normalize(raw: &str) -> Option<String> {
    let trimmed = raw.trim_matches(|c: char| !c.is_alphanumeric());
    if !trimmed.chars().any(char::is_alphabetic) {
        return None;
    }
    let mut out = String::with_capacity(trimmed.len());
    for c in trimmed.chars() {
        match c {
            '\u{2019}' | '\u{2018}' | '\u{02BC}' => out.push('\''),
            '\u{2010}' | '\u{2011}' => out.push('-'),
            _ => out.extend(c.to_lowercase()),
        }
    }
    Some(out)
}

pub fn tokenize(text: &str) -> Vec<Token> {
    text.split(is_separator)
        .flat_map(|chunk| chunk.split("--"))
        .filter_map(normalize)
        .enumerate()
        .map(|(i, surface)| Token {
            surface,
            position: i + 1,
        })
        .collect()
}

/// Decodes UTF-8 bytes and tokenizes them.
pub fn tokenize_bytes(bytes: &[u8]) -> Result<Vec<Token>> {
    Ok(tokenize(decode(bytes)?))
}

pub fn decode(bytes: &[u8]) -> Result<&str> {
    std::str::from_utf8(bytes).map_err(|e| Error::Decode {
        offset: e.valid_up_to(),
    })
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

fn is_consonant(c: char) -> bool {
    c.is_alphabetic() && !is_vowel(c)
}

/// Rule-based syllable estimate for a single hyphen-free word.
///
/// Counts maximal runs of vowels (`y` included), then drops a silent final
/// `e`, a silent `-ed` (not after `t`/`d`) and a silent `-es` (not after a
/// sibilant). A final consonant + `le` keeps its syllable. The result is
/// never below one.
pub fn heuristic_syllables(word: &str) -> u32 {
    let letters: Vec<char> = word.chars().filter(|c| c.is_alphabetic()).collect();
    let mut groups = 0u32;
    let mut in_vowel = false;
    for &c in &letters {
        let v = is_vowel(c);
        if v && !in_vowel {
            groups += 1;
        }
        in_vowel = v;
    }
    if groups > 1 && silent_ending(&letters) {
        groups -= 1;
    }
    groups.max(1)
}

fn silent_ending(w: &[char]) -> bool {
    let n = w.len();
    let at = |back: usize| if back <= n { Some(w[n - back]) } else { None };
    let consonant_le =
        |back: usize| at(back) == Some('l') && at(back + 1).is_some_and(is_consonant);
    match (at(2), at(1)) {
        (_, Some('e')) => !consonant_le(2),
        (Some('e'), Some('d')) if n >= 4 => {
            at(3).is_some_and(|c| is_consonant(c) && c != 't' && c != 'd')
        }
        (Some('e'), Some('s')) if n >= 4 => {
            let before = at(3);
            let sibilant = matches!(before, Some('s' | 'x' | 'z' | 'c' | 'g'))
                || (before == Some('h') && matches!(at(4), Some('c' | 's')));
            before.is_some_and(is_consonant) && !sibilant && !consonant_le(3)
        }
        _ => false,
    }
}

/// Syllable count of a normalized word: lexicon entry if present, otherwise
/// the sum of the heuristic (or lexicon) counts of its hyphen-separated parts.
pub fn count_syllables(word: &str, lexicon: &ExceptionLexicon) -> u32 {
    if let Some(n) = lexicon.get(word) {
        return n;
    }
    let total: u32 = word
        .split(is_hyphen)
        .filter(|part| part.chars().any(char::is_alphabetic))
        .map(|part| {
            let part = part.trim_matches(|c: char| !c.is_alphanumeric());
            lexicon
                .get(part)
                .unwrap_or_else(|| heuristic_syllables(part))
        })
        .sum();
    total.max(1)
}

pub fn syllabify_tokens(tokens: Vec<Token>, lexicon: &ExceptionLexicon) -> Vec<SyllabifiedToken> {
    tokens
        .into_iter()
        .map(|token| {
            let syllables = count_syllables(&token.surface, lexicon);
            SyllabifiedToken { token, syllables }
        })
        .collect()
}

pub fn syllabify_text(text: &str, lexicon: &ExceptionLexicon) -> LengthSequence {
    let lengths = tokenize(text)
        .iter()
        .map(|t| count_syllables(&t.surface, lexicon))
        .collect();
    LengthSequence::from_counts(lengths)
}

pub fn syllabify_bytes(bytes: &[u8], lexicon: &ExceptionLexicon) -> Result<LengthSequence> {
    Ok(syllabify_text(decode(bytes)?, lexicon))
}
