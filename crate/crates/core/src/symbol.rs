//! Symbol names and terminal words.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Tokens with a fixed meaning in the grammar text format.
pub const RESERVED: [&str; 6] = ["->", "|", "^", "$", "eps", "#"];

/// The end-of-flag marker every indexed grammar carries.
pub const END_FLAG: &str = "$";

/// An interned-by-refcount symbol name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    /// Builds a symbol after checking the naming rules: non-empty, no
    /// whitespace, no `^` or `|`, and not one of the reserved tokens.
    pub fn new(name: &str) -> Result<Self> {
        if !is_valid_name(name) {
            return Err(Error::InvalidName(name.to_string()));
        }
        Ok(Symbol(Arc::from(name)))
    }

    /// The end-of-flag marker `$`.
    pub fn end_flag() -> Self {
        Symbol(Arc::from(END_FLAG))
    }

    pub(crate) fn raw(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_end_flag(&self) -> bool {
        &*self.0 == END_FLAG
    }
}

pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && !RESERVED.contains(&name) && !name.chars().any(|c| c.is_whitespace() || c == '^' || c == '|')
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

/// Helper for building symbol lists in tests and fixtures.
pub fn syms(names: &str) -> Vec<Symbol> {
    names.split_whitespace().map(Symbol::raw).collect()
}

/// A word over terminal symbols. Ordered shortlex: shorter words first, then
/// lexicographically by symbol name.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn epsilon() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    /// Parses a word from text: whitespace-separated symbols, or a run of
    /// single-character symbols when no whitespace is present. `eps` and the
    /// empty string denote the empty word.
    pub fn parse(text: &str) -> Word {
        let text = text.trim();
        if text.is_empty() || text == "eps" {
            return Word::epsilon();
        }
        if text.contains(char::is_whitespace) {
            Word(syms(text))
        } else {
            Word(text.chars().map(|c| Symbol::raw(c.encode_utf8(&mut [0; 4]))).collect())
        }
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }
}

impl From<&str> for Word {
    fn from(text: &str) -> Self {
        Word::parse(text)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("eps");
        }
        let compact = self.0.iter().all(|s| s.as_str().chars().count() == 1);
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 && !compact {
                f.write_str(" ")?;
            }
            f.write_str(s.as_str())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
