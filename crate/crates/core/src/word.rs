//! Freely reduced words in the free group on `x1 = A` and `x2 = B`.
//!
//! Text form: `A`, `B` and their inverses `a`, `b`, each with an optional
//! caret exponent (`B^-2 A B^-1 A`, or `B^-2AbA`). Whitespace is ignored.
//! The printer emits `A`/`a` for exponents `±1` and `A^k` otherwise, with
//! no separators.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `x1 ↦ A`
    A,
    /// `x2 ↦ B_α`
    B,
}

impl Generator {
    pub fn other(self) -> Generator {
        match self {
            Generator::A => Generator::B,
            Generator::B => Generator::A,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub generator: Generator,
    pub exponent: i64,
}

impl Syllable {
    pub fn new(generator: Generator, exponent: i64) -> Syllable {
        Syllable {
            generator,
            exponent,
        }
    }
}

/// A freely reduced word: adjacent syllables alternate generators and every
/// exponent is nonzero. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ReducedWord {
    syllables: Vec<Syllable>,
}

impl ReducedWord {
    pub fn identity() -> ReducedWord {
        ReducedWord::default()
    }

    pub fn generator(generator: Generator, exponent: i64) -> ReducedWord {
        ReducedWord::from_syllables([Syllable::new(generator, exponent)])
    }

    /// Multiplies the syllables left to right and freely reduces the result.
    pub fn from_syllables<I: IntoIterator<Item = Syllable>>(syllables: I) -> ReducedWord {
        let mut out: Vec<Syllable> = Vec::new();
        for s in syllables {
            push_reduced(&mut out, s);
        }
        ReducedWord { syllables: out }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Number of syllables.
    pub fn syllable_len(&self) -> usize {
        self.syllables.len()
    }

    /// Number of single-generator applications, `Σ|exponent|`.
    pub fn generator_len(&self) -> u64 {
        self.syllables
            .iter()
            .map(|s| s.exponent.unsigned_abs())
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Reduced product `self · other`.
    pub fn concat(&self, other: &ReducedWord) -> ReducedWord {
        let mut out = self.syllables.clone();
        for s in &other.syllables {
            push_reduced(&mut out, *s);
        }
        ReducedWord { syllables: out }
    }

    pub fn inverse(&self) -> ReducedWord {
        ReducedWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.generator, -s.exponent))
                .collect(),
        }
    }

    /// Image under the automorphism `x1 ↦ x1⁻¹`, `x2 ↦ x2⁻¹`.
    pub fn mirror(&self) -> ReducedWord {
        ReducedWord {
            syllables: self
                .syllables
                .iter()
                .map(|s| Syllable::new(s.generator, -s.exponent))
                .collect(),
        }
    }

    /// Exponent sum of one generator (the abelianization coordinate).
    pub fn exponent_sum(&self, generator: Generator) -> i64 {
        self.syllables
            .iter()
            .filter(|s| s.generator == generator)
            .map(|s| s.exponent)
            .sum()
    }

    /// Prefixes `w_1 ⋯ w_i` for `i = 0..=k`, one per syllable boundary.
    pub fn prefixes(&self) -> impl Iterator<Item = ReducedWord> + '_ {
        (0..=self.syllables.len()).map(|i| ReducedWord {
            syllables: self.syllables[..i].to_vec(),
        })
    }
}

fn push_reduced(out: &mut Vec<Syllable>, s: Syllable) {
    if s.exponent == 0 {
        return;
    }
    match out.last_mut() {
        Some(last) if last.generator == s.generator => {
            last.exponent += s.exponent;
            if last.exponent == 0 {
                out.pop();
            }
        }
        _ => out.push(s),
    }
}

/// `x1·mirror(x)`, the second witness built from a first one.
pub fn mirror_partner(word: &ReducedWord) -> ReducedWord {
    ReducedWord::generator(Generator::A, 1).concat(&word.mirror())
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for s in &self.syllables {
            let (upper, lower) = match s.generator {
                Generator::A => ('A', 'a'),
                Generator::B => ('B', 'b'),
            };
            match s.exponent {
                1 => write!(f, "{upper}")?,
                -1 => write!(f, "{lower}")?,
                e => write!(f, "{upper}^{e}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for ReducedWord {
    type Err = Error;

    fn from_str(input: &str) -> Result<ReducedWord> {
        let err = || Error::parse("word", input);
        let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.as_slice() == ['1'] || chars.is_empty() {
            return Ok(ReducedWord::identity());
        }
        let mut syllables = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let (generator, sign) = match chars[i] {
                'A' => (Generator::A, 1),
                'a' => (Generator::A, -1),
                'B' => (Generator::B, 1),
                'b' => (Generator::B, -1),
                _ => return Err(err()),
            };
            i += 1;
            let mut exponent = 1i64;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                exponent = text.parse().map_err(|_| err())?;
            }
            syllables.push(Syllable::new(generator, sign * exponent));
        }
        Ok(ReducedWord::from_syllables(syllables))
    }
}

impl Serialize for ReducedWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ReducedWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
