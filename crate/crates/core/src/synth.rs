//! Seeded synthetic length sequences.
//!
//! All generators draw from xoshiro256++ seeded through SplitMix64
//! (`Xoshiro256PlusPlus::seed_from_u64`). A uniform variate is
//! `u = 1 - (x >> 11) * 2^-53`, which lies in `(0, 1]`, and a geometric word
//! length is `1 + floor(ln u / ln(1 - q))`. Each word consumes exactly one
//! 64-bit output, so sequences are reproducible in any language that
//! implements the two published algorithms.

use rand::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::seqmodel::LengthSequence;

/// Portable pseudorandom stream used by every generator.
#[derive(Debug, Clone)]
pub struct SynthRng(Xoshiro256PlusPlus);

impl SynthRng {
    pub fn new(seed: u64) -> Self {
        Self(Xoshiro256PlusPlus::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `(0, 1]`.
    pub fn unit(&mut self) -> f64 {
        1.0 - (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Geometric word length with boundary probability `q`, by inversion.
    pub fn geometric(&mut self, q: f64) -> u32 {
        let u = self.unit();
        if q >= 1.0 {
            return 1;
        }
        let extra = (u.ln() / (-q).ln_1p()).floor();
        if extra >= (u32::MAX - 1) as f64 {
            u32::MAX
        } else {
            1 + extra as u32
        }
    }
}

fn check_q(q: f64) -> Result<()> {
    if q > 0.0 && q <= 1.0 {
        Ok(())
    } else {
        Err(invalid(
            "boundary probability q",
            format!("{q} is not in (0, 1]"),
        ))
    }
}

fn check_words(words: usize) -> Result<()> {
    if words == 0 {
        Err(invalid("word count", "must be at least 1"))
    } else {
        Ok(())
    }
}

/// `words` independent geometric(`q`) word lengths.
pub fn random_segmented(q: f64, words: usize, seed: u64) -> Result<LengthSequence> {
    check_q(q)?;
    check_words(words)?;
    let mut rng = SynthRng::new(seed);
    Ok(LengthSequence::from_counts(
        (0..words).map(|_| rng.geometric(q)).collect(),
    ))
}

fn verse_line(rng: &mut SynthRng, line: u32, q: f64) -> Vec<u32> {
    let mut words = Vec::new();
    let mut remaining = line;
    while remaining > 0 {
        let s = rng.geometric(q).min(remaining);
        words.push(s);
        remaining -= s;
    }
    words
}

/// Verse lines of exactly `line` syllables each. Words are drawn from
/// geometric(`q`) and the last word of a line is truncated to fit, which
/// biases line-final words toward being short.
pub fn isometric_verse(line: u32, lines: usize, q: f64, seed: u64) -> Result<Vec<Vec<u32>>> {
    if line < 1 {
        return Err(invalid("line length", "must be at least 1 syllable"));
    }
    if lines == 0 {
        return Err(invalid("line count", "must be at least 1"));
    }
    check_q(q)?;
    let mut rng = SynthRng::new(seed);
    Ok((0..lines).map(|_| verse_line(&mut rng, line, q)).collect())
}

/// [`isometric_verse`] flattened into a single sequence.
pub fn isometric_lines(line: u32, lines: usize, q: f64, seed: u64) -> Result<LengthSequence> {
    let verse = isometric_verse(line, lines, q, seed)?;
    Ok(LengthSequence::from_counts(verse.concat()))
}

/// Odd positions (1st, 3rd, ...) drawn with mean `long_mean`, even
/// positions with mean `short_mean`.
pub fn alternating(
    words: usize,
    long_mean: f64,
    short_mean: f64,
    seed: u64,
) -> Result<LengthSequence> {
    check_words(words)?;
    if !(short_mean >= 1.0 && long_mean >= short_mean && long_mean.is_finite()) {
        return Err(invalid(
            "alternating means",
            format!("need long_mean >= short_mean >= 1, got {long_mean} and {short_mean}"),
        ));
    }
    let (q_long, q_short) = (1.0 / long_mean, 1.0 / short_mean);
    let mut rng = SynthRng::new(seed);
    Ok(LengthSequence::from_counts(
        (0..words)
            .map(|i| rng.geometric(if i % 2 == 0 { q_long } else { q_short }))
            .collect(),
    ))
}

/// Parameters of a synthetic corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GeneratorSpec {
    Geometric {
        q: f64,
        words: usize,
        seed: u64,
    },
    Isometric {
        line: u32,
        lines: usize,
        q: f64,
        seed: u64,
    },
    Alternating {
        words: usize,
        long_mean: f64,
        short_mean: f64,
        seed: u64,
    },
    /// Prose and verse blocks interleaved so that `verse_fraction` of the
    /// syllables come from the verse generator. The component specs' own
    /// seeds drive their streams; their size fields are ignored.
    Mixture {
        prose: Box<GeneratorSpec>,
        verse: Box<GeneratorSpec>,
        verse_fraction: f64,
        words: usize,
        block_lines: usize,
        seed: u64,
    },
}

impl GeneratorSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            GeneratorSpec::Geometric { .. } => "geometric",
            GeneratorSpec::Isometric { .. } => "isometric",
            GeneratorSpec::Alternating { .. } => "alternating",
            GeneratorSpec::Mixture { .. } => "mixture",
        }
    }

    pub fn seed(&self) -> u64 {
        match *self {
            GeneratorSpec::Geometric { seed, .. }
            | GeneratorSpec::Isometric { seed, .. }
            | GeneratorSpec::Alternating { seed, .. }
            | GeneratorSpec::Mixture { seed, .. } => seed,
        }
    }

    pub fn generate(&self) -> Result<LengthSequence> {
        match self {
            &GeneratorSpec::Geometric { q, words, seed } => random_segmented(q, words, seed),
            &GeneratorSpec::Isometric {
                line,
                lines,
                q,
                seed,
            } => isometric_lines(line, lines, q, seed),
            &GeneratorSpec::Alternating {
                words,
                long_mean,
                short_mean,
                seed,
            } => alternating(words, long_mean, short_mean, seed),
            GeneratorSpec::Mixture {
                prose,
                verse,
                verse_fraction,
                words,
                block_lines,
                seed,
            } => mixture(prose, verse, *verse_fraction, *words, *block_lines, *seed),
        }
    }

    /// `key: value` pairs describing the spec, for file headers.
    pub fn header(&self) -> Vec<(String, String)> {
        let mut h = vec![("kind".to_owned(), self.kind().to_owned())];
        let mut push = |k: &str, v: String| h.push((k.to_owned(), v));
        match self {
            GeneratorSpec::Geometric { q, words, seed } => {
                push("q", q.to_string());
                push("words", words.to_string());
                push("seed", seed.to_string());
            }
            GeneratorSpec::Isometric {
                line,
                lines,
                q,
                seed,
            } => {
                push("line", line.to_string());
                push("lines", lines.to_string());
                push("q", q.to_string());
                push("seed", seed.to_string());
            }
            GeneratorSpec::Alternating {
                words,
                long_mean,
                short_mean,
                seed,
            } => {
                push("words", words.to_string());
                push("long_mean", long_mean.to_string());
                push("short_mean", short_mean.to_string());
                push("seed", seed.to_string());
            }
            GeneratorSpec::Mixture {
                prose,
                verse,
                verse_fraction,
                words,
                block_lines,
                seed,
            } => {
                push("verse_fraction", verse_fraction.to_string());
                push("words", words.to_string());
                push("block_lines", block_lines.to_string());
                push("seed", seed.to_string());
                for (prefix, spec) in [("prose", prose), ("verse", verse)] {
                    for (k, v) in spec.header() {
                        push(&format!("{prefix}.{k}"), v);
                    }
                }
            }
        }
        h
    }
}

/// Unbounded word stream behind one side of a mixture.
enum Stream {
    Geometric {
        rng: SynthRng,
        q: f64,
    },
    Verse {
        rng: SynthRng,
        line: u32,
        q: f64,
    },
    Alternating {
        rng: SynthRng,
        q_long: f64,
        q_short: f64,
        position: usize,
    },
}

impl Stream {
    fn from_spec(spec: &GeneratorSpec) -> Result<Self> {
        // validate through the ordinary generator with a minimal size
        match *spec {
            GeneratorSpec::Geometric { q, seed, .. } => {
                check_q(q)?;
                Ok(Stream::Geometric {
                    rng: SynthRng::new(seed),
                    q,
                })
            }
            GeneratorSpec::Isometric { line, q, seed, .. } => {
                isometric_verse(line, 1, q, seed)?;
                Ok(Stream::Verse {
                    rng: SynthRng::new(seed),
                    line,
                    q,
                })
            }
            GeneratorSpec::Alternating {
                long_mean,
                short_mean,
                seed,
                ..
            } => {
                alternating(1, long_mean, short_mean, seed)?;
                Ok(Stream::Alternating {
                    rng: SynthRng::new(seed),
                    q_long: 1.0 / long_mean,
                    q_short: 1.0 / short_mean,
                    position: 0,
                })
            }
            GeneratorSpec::Mixture { .. } => {
                Err(invalid("mixture component", "mixtures cannot be nested"))
            }
        }
    }

    /// Appends at least `budget` syllables (whole verse lines for verse).
    fn fill(&mut self, budget: u64, out: &mut Vec<u32>) -> u64 {
        let mut total = 0u64;
        while total < budget {
            match self {
                Stream::Geometric { rng, q } => {
                    let s = rng.geometric(*q);
                    total += s as u64;
                    out.push(s);
                }
                Stream::Verse { rng, line, q } => {
                    out.extend(verse_line(rng, *line, *q));
                    total += *line as u64;
                }
                Stream::Alternating {
                    rng,
                    q_long,
                    q_short,
                    position,
                } => {
                    let q = if *position % 2 == 0 {
                        *q_long
                    } else {
                        *q_short
                    };
                    *position += 1;
                    let s = rng.geometric(q);
                    total += s as u64;
                    out.push(s);
                }
            }
        }
        total
    }
}

const DEFAULT_BLOCK_SYLLABLES: u64 = 32;

/// Interleaves prose and verse blocks of equal syllable budget. A block is
/// `block_lines` verse lines (or 32 syllables when the verse side is not
/// isometric). Block types follow a deterministic credit schedule whose
/// phase is drawn from `seed`, so the verse share of syllables tracks
/// `verse_fraction` to within one block. Fraction 0 reproduces the prose
/// generator and fraction 1 the verse generator, truncated to `words`.
pub fn mixture(
    prose: &GeneratorSpec,
    verse: &GeneratorSpec,
    verse_fraction: f64,
    words: usize,
    block_lines: usize,
    seed: u64,
) -> Result<LengthSequence> {
    if !(0.0..=1.0).contains(&verse_fraction) {
        return Err(invalid(
            "verse fraction",
            format!("{verse_fraction} is not in [0, 1]"),
        ));
    }
    check_words(words)?;
    if block_lines == 0 {
        return Err(invalid("block lines", "must be at least 1"));
    }
    let mut prose_stream = Stream::from_spec(prose)?;
    let mut verse_stream = Stream::from_spec(verse)?;
    let budget = match verse_stream {
        Stream::Verse { line, .. } => line as u64 * block_lines as u64,
        _ => DEFAULT_BLOCK_SYLLABLES,
    };
    let mut credit = 1.0 - SynthRng::new(seed).unit();
    let mut out = Vec::with_capacity(words + budget as usize);
    while out.len() < words {
        credit += verse_fraction;
        if credit >= 1.0 {
            credit -= 1.0;
            verse_stream.fill(budget, &mut out);
        } else {
            prose_stream.fill(budget, &mut out);
        }
    }
    out.truncate(words);
    Ok(LengthSequence::from_counts(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certain_boundary_gives_monosyllables() {
        assert_eq!(random_segmented(1.0, 5, 9).unwrap().lengths(), [1; 5]);
    }

    #[test]
    fn deterministic() {
        let a = random_segmented(0.6, 500, 42).unwrap();
        let b = random_segmented(0.6, 500, 42).unwrap();
        let c = random_segmented(0.6, 500, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn stream_is_pinned() {
        // xoshiro256++ seeded via SplitMix64 with seed 0
        let mut rng = SynthRng::new(0);
        assert_eq!(rng.next_u64(), 0x53175d61490b23df);
        assert_eq!(rng.next_u64(), 0x61da6f3dc380d507);
        // inversion draws cross-checked against a separate implementation
        let s = random_segmented(0.6, 10, 42).unwrap();
        assert_eq!(s.lengths(), [2, 1, 5, 2, 2, 1, 1, 2, 1, 3]);
    }

    #[test]
    fn unit_range() {
        let mut rng = SynthRng::new(1);
        for _ in 0..10_000 {
            let u = rng.unit();
            assert!(u > 0.0 && u <= 1.0);
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(random_segmented(0.0, 5, 1).is_err());
        assert!(random_segmented(1.2, 5, 1).is_err());
        assert!(random_segmented(0.5, 0, 1).is_err());
        assert!(isometric_lines(0, 5, 0.5, 1).is_err());
        assert!(alternating(10, 1.2, 1.6, 1).is_err());
        assert!(alternating(10, 2.0, 0.5, 1).is_err());
    }

    #[test]
    fn isometric_lines_sum_exactly() {
        let verse = isometric_verse(8, 5000, 0.7, 3).unwrap();
        assert_eq!(verse.len(), 5000);
        assert!(verse.iter().all(|l| l.iter().sum::<u32>() == 8));
        let one = isometric_lines(1, 20, 0.3, 3).unwrap();
        assert!(one.lengths().iter().all(|&s| s == 1));
    }

    #[test]
    fn alternating_two_words() {
        let s = alternating(2, 1.6, 1.2, 4).unwrap();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn mixture_endpoints() {
        let prose = GeneratorSpec::Geometric {
            q: 0.75,
            words: 3000,
            seed: 11,
        };
        let verse = GeneratorSpec::Isometric {
            line: 8,
            lines: 2000,
            q: 0.7,
            seed: 12,
        };
        let pure_prose = mixture(&prose, &verse, 0.0, 3000, 4, 5).unwrap();
        assert_eq!(pure_prose, prose.generate().unwrap());
        let pure_verse = mixture(&prose, &verse, 1.0, 3000, 4, 5).unwrap();
        assert_eq!(
            pure_verse.lengths(),
            &verse.generate().unwrap().lengths()[..3000]
        );
        assert!(mixture(&prose, &verse, 1.5, 3000, 4, 5).is_err());
        let nested = GeneratorSpec::Mixture {
            prose: Box::new(prose.clone()),
            verse: Box::new(verse.clone()),
            verse_fraction: 0.5,
            words: 10,
            block_lines: 1,
            seed: 0,
        };
        assert!(mixture(&nested, &verse, 0.5, 100, 4, 5).is_err());
    }

    #[test]
    fn mixture_fraction_by_syllables() {
        let prose = GeneratorSpec::Geometric {
            q: 0.75,
            words: 0,
            seed: 1,
        };
        let verse = GeneratorSpec::Isometric {
            line: 8,
            lines: 0,
            q: 0.7,
            seed: 2,
        };
        let seq = mixture(&prose, &verse, 0.3, 40_000, 4, 9).unwrap();
        assert_eq!(seq.len(), 40_000);
        let again = mixture(&prose, &verse, 0.3, 40_000, 4, 9).unwrap();
        assert_eq!(seq, again);
    }

    #[test]
    fn spec_round_trips_through_json() {
        let spec = GeneratorSpec::Mixture {
            prose: Box::new(GeneratorSpec::Geometric {
                q: 0.77,
                words: 0,
                seed: 1,
            }),
            verse: Box::new(GeneratorSpec::Isometric {
                line: 8,
                lines: 0,
                q: 0.7,
                seed: 2,
            }),
            verse_fraction: 0.25,
            words: 1000,
            block_lines: 4,
            seed: 3,
        };
        let json = serde_json::to_string(&spec).unwrap();
        let back: GeneratorSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
        assert_eq!(back.generate().unwrap(), spec.generate().unwrap());
    }
}
