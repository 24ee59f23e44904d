//! Ordered base alphabets and the padded tuple alphabets built on top of them.
//!
//! A tuple letter over `d` tracks is a vector of track values where `0`
//! stands for the pad symbol `#` and `1..=k` for the base symbols in their
//! declared order. Letters are numbered by reading the track values as a
//! mixed-radix number (track 0 most significant) and subtracting one, which
//! drops the all-`#` tuple. The resulting letter order is lexicographic by
//! track with `#` before every base symbol. For arity 1 the letter id is the
//! symbol index itself.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// The reserved pad symbol.
pub const PAD: &str = "#";

/// Index of a symbol in an [`OrderedAlphabet`].
pub type Symbol = usize;

/// Index of a letter in an [`Alphabet`].
pub type Letter = usize;

/// A word over an ordered alphabet, as symbol indices.
pub type Word = Vec<Symbol>;

/// A finite alphabet whose list order is the total order on symbols.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrderedAlphabet {
    symbols: Arc<[String]>,
}

impl OrderedAlphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("no symbols".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s == PAD || s.contains('|') || s.chars().any(char::is_whitespace) {
                return Err(Error::InvalidAlphabet(format!("bad symbol {s:?}")));
            }
            if symbols[..i].contains(s) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {s:?}")));
            }
        }
        Ok(OrderedAlphabet {
            symbols: symbols.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, symbol: Symbol) -> &str {
        &self.symbols[symbol]
    }

    pub fn index_of(&self, name: &str) -> Option<Symbol> {
        self.symbols.iter().position(|s| s == name)
    }

    /// Renders a word. Symbols are concatenated when every symbol is a single
    /// character and separated by spaces otherwise.
    pub fn render(&self, word: &[Symbol]) -> String {
        if self.symbols.iter().all(|s| s.chars().count() == 1) {
            word.iter().map(|&s| self.name(s)).collect()
        } else {
            word.iter()
                .map(|&s| self.name(s))
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    /// Inverse of [`render`](Self::render). Whitespace separates symbols;
    /// within a chunk the longest matching symbol name is taken greedily.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut word = Vec::new();
        for chunk in text.split_whitespace() {
            let mut rest = chunk;
            while !rest.is_empty() {
                let best = self
                    .symbols
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| rest.starts_with(s.as_str()))
                    .max_by_key(|(_, s)| s.len());
                match best {
                    Some((i, s)) => {
                        word.push(i);
                        rest = &rest[s.len()..];
                    }
                    None => return Err(Error::UnknownSymbol(rest.to_string())),
                }
            }
        }
        Ok(word)
    }
}

impl fmt::Debug for OrderedAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.symbols.iter()).finish()
    }
}

/// The alphabet of an automaton: `(base ∪ {#})^arity` minus the all-`#` tuple.
///
/// Arity 1 is the plain base alphabet.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    base: OrderedAlphabet,
    arity: usize,
}

impl Alphabet {
    pub fn new(base: OrderedAlphabet, arity: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidAlphabet("arity must be at least 1".into()));
        }
        let radix = base.len() as u128 + 1;
        if radix.checked_pow(arity as u32).is_none_or(|n| n > u32::MAX as u128) {
            return Err(Error::InvalidAlphabet("tuple alphabet too large".into()));
        }
        Ok(Alphabet { base, arity })
    }

    pub fn plain(base: OrderedAlphabet) -> Self {
        Alphabet { base, arity: 1 }
    }

    pub fn base(&self) -> &OrderedAlphabet {
        &self.base
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Same base, different arity.
    pub fn with_arity(&self, arity: usize) -> Result<Self> {
        Alphabet::new(self.base.clone(), arity)
    }

    fn radix(&self) -> usize {
        self.base.len() + 1
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.radix().pow(self.arity as u32) - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> std::ops::Range<Letter> {
        0..self.len()
    }

    /// Letter for the given track values (`None` is `#`). Returns `None` for
    /// the all-`#` tuple.
    pub fn encode(&self, tracks: &[Option<Symbol>]) -> Option<Letter> {
        debug_assert_eq!(tracks.len(), self.arity);
        let radix = self.radix();
        let code = tracks
            .iter()
            .fold(0usize, |acc, t| acc * radix + t.map_or(0, |s| s + 1));
        code.checked_sub(1)
    }

    /// Track values of a letter (`None` is `#`).
    pub fn decode(&self, letter: Letter) -> Vec<Option<Symbol>> {
        let radix = self.radix();
        let mut code = letter + 1;
        let mut tracks = vec![None; self.arity];
        for slot in tracks.iter_mut().rev() {
            let v = code % radix;
            code /= radix;
            *slot = v.checked_sub(1);
        }
        tracks
    }

    /// Value of a single track of a letter.
    pub fn track(&self, letter: Letter, track: usize) -> Option<Symbol> {
        let radix = self.radix();
        let shift = radix.pow((self.arity - 1 - track) as u32);
        (((letter + 1) / shift) % radix).checked_sub(1)
    }

    /// Bitmask of the tracks carrying `#` in this letter.
    pub fn pad_mask(&self, letter: Letter) -> u64 {
        let mut mask = 0;
        for t in 0..self.arity {
            if self.track(letter, t).is_none() {
                mask |= 1 << t;
            }
        }
        mask
    }

    pub fn letter_name(&self, letter: Letter) -> String {
        self.decode(letter)
            .iter()
            .map(|t| t.map_or(PAD, |s| self.base.name(s)))
            .collect::<Vec<_>>()
            .join("|")
    }

    pub fn parse_letter(&self, text: &str) -> Result<Letter> {
        let parts: Vec<&str> = text.split('|').collect();
        if parts.len() != self.arity {
            return Err(Error::UnknownSymbol(text.to_string()));
        }
        let mut tracks = Vec::with_capacity(self.arity);
        for p in parts {
            if p == PAD {
                tracks.push(None);
            } else {
                let s = self
                    .base
                    .index_of(p)
                    .ok_or_else(|| Error::UnknownSymbol(p.to_string()))?;
                tracks.push(Some(s));
            }
        }
        self.encode(&tracks)
            .ok_or_else(|| Error::UnknownSymbol(text.to_string()))
    }

    /// Unary alphabets have a single base symbol.
    pub fn is_unary(&self) -> bool {
        self.base.len() == 1
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}^{}", self.base, self.arity)
    }
}
