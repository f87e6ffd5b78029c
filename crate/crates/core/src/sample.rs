use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::symbol::Word;

/// A finite set of words together with the length bound it was computed for.
///
/// When `exhaustive` is set the set is exactly `L ∩ Σ^{≤bound}`; it is cleared
/// when an indexed-grammar search ran out of budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LanguageSample {
    pub words: BTreeSet<Word>,
    pub bound: usize,
    pub exhaustive: bool,
}

impl LanguageSample {
    pub fn new(bound: usize) -> Self {
        LanguageSample {
            words: BTreeSet::new(),
            bound,
            exhaustive: true,
        }
    }

    /// Builds an exhaustive sample, dropping words longer than `bound`.
    pub fn from_words<I, W>(bound: usize, words: I) -> Self
    where
        I: IntoIterator<Item = W>,
        W: Into<Word>,
    {
        let words = words
            .into_iter()
            .map(Into::into)
            .filter(|w: &Word| w.len() <= bound)
            .collect();
        LanguageSample {
            words,
            bound,
            exhaustive: true,
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn contains_epsilon(&self) -> bool {
        self.words.contains(&Word::epsilon())
    }

    pub fn insert(&mut self, w: Word) {
        debug_assert!(w.len() <= self.bound);
        self.words.insert(w);
    }

    /// Union of two samples at the same bound.
    pub fn union(&self, other: &LanguageSample) -> Result<LanguageSample> {
        if self.bound != other.bound {
            return Err(Error::BoundMismatch(self.bound, other.bound));
        }
        Ok(LanguageSample {
            words: self.words.union(&other.words).cloned().collect(),
            bound: self.bound,
            exhaustive: self.exhaustive && other.exhaustive,
        })
    }

    /// The words rendered shortlex, one per entry.
    pub fn lines(&self) -> Vec<String> {
        self.words.iter().map(|w| w.to_string()).collect()
    }
}

/// Outcome of comparing a computed sample against an expected one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleDiff {
    /// Expected words the actual sample lacks.
    pub missing: BTreeSet<Word>,
    /// Words in the actual sample that were not expected.
    pub extra: BTreeSet<Word>,
    /// Set when either side is not exhaustive; the comparison then only
    /// speaks about what was found.
    pub advisory: bool,
}

impl SampleDiff {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }

    /// Equal as sets and both sides exhaustive.
    pub fn is_exact_match(&self) -> bool {
        self.is_empty() && !self.advisory
    }
}

/// Symmetric difference of `actual` against `expected`.
pub fn samples_equal(actual: &LanguageSample, expected: &LanguageSample) -> Result<SampleDiff> {
    if actual.bound != expected.bound {
        return Err(Error::BoundMismatch(actual.bound, expected.bound));
    }
    Ok(SampleDiff {
        missing: expected.words.difference(&actual.words).cloned().collect(),
        extra: actual.words.difference(&expected.words).cloned().collect(),
        advisory: !(actual.exhaustive && expected.exhaustive),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_sets_have_empty_diff() {
        let a = LanguageSample::from_words(4, ["ab", "ba"]);
        let d = samples_equal(&a, &a.clone()).unwrap();
        assert!(d.is_exact_match());
    }

    #[test]
    fn missing_word_reported() {
        let a = LanguageSample::from_words(4, ["ab"]);
        let b = LanguageSample::from_words(4, ["ab", "ba"]);
        let d = samples_equal(&a, &b).unwrap();
        assert_eq!(d.missing, BTreeSet::from([Word::from("ba")]));
        assert!(d.extra.is_empty());
    }

    #[test]
    fn bound_mismatch_is_an_error() {
        let a = LanguageSample::new(6);
        let b = LanguageSample::new(8);
        assert_eq!(samples_equal(&a, &b), Err(Error::BoundMismatch(6, 8)));
    }

    #[test]
    fn non_exhaustive_side_marks_advisory() {
        let a = LanguageSample::new(3);
        let mut b = LanguageSample::new(3);
        b.exhaustive = false;
        assert!(samples_equal(&a, &b).unwrap().advisory);
    }
}
