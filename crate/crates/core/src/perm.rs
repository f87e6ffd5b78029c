//! Permutations in one-line notation and their subpatterns.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{1..k}` in one-line notation `(σ(1),…,σ(k))`.
///
/// Applied to parts `w_1…w_k` it yields `w_{σ(1)}…w_{σ(k)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let k = images.len();
        if k == 0 {
            return Err(Error::InvalidPermutation("degree must be at least 1".into()));
        }
        let mut seen = vec![false; k];
        for &i in &images {
            if i == 0 || i > k || std::mem::replace(&mut seen[i - 1], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 1..{k}"
                )));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(k: usize) -> Permutation {
        assert!(k >= 1, "degree must be at least 1");
        Permutation {
            images: (1..=k).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `σ(i)` for `1 ≤ i ≤ k`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// The position `j` with `σ(j) = i`.
    pub fn position_of(&self, i: usize) -> usize {
        self.images.iter().position(|&x| x == i).expect("image in range") + 1
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &i)| i == j + 1)
    }

    /// All permutations of degree `k` in lexicographic order.
    pub fn all_of_degree(k: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(k);
        let mut used = vec![false; k];
        fn rec(k: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if current.len() == k {
                out.push(Permutation {
                    images: current.clone(),
                });
                return;
            }
            for i in 0..k {
                if !used[i] {
                    used[i] = true;
                    current.push(i + 1);
                    rec(k, current, used, out);
                    current.pop();
                    used[i] = false;
                }
            }
        }
        if k >= 1 {
            rec(k, &mut current, &mut used, &mut out);
        }
        out
    }

    /// Keeps the images that lie in `keep` (in one-line order) and renumbers
    /// them order-isomorphically.
    pub fn restrict(&self, keep: &BTreeSet<usize>) -> Option<Permutation> {
        if keep.is_empty() {
            return None;
        }
        let rank: Vec<usize> = self
            .images
            .iter()
            .filter(|i| keep.contains(i))
            .map(|i| keep.range(..=i).count())
            .collect();
        Some(Permutation { images: rank })
    }

    /// Patterns of `σ` on every non-empty subset of `{1..k}`, deduplicated.
    pub fn subpatterns(&self) -> BTreeSet<Permutation> {
        let k = self.degree();
        (1u64..(1 << k))
            .filter_map(|mask| {
                let keep: BTreeSet<usize> = (1..=k).filter(|i| mask & (1 << (i - 1)) != 0).collect();
                self.restrict(&keep)
            })
            .collect()
    }

    /// Concatenates `parts` in the order `σ(1), …, σ(k)`.
    pub fn apply<T: Clone>(&self, parts: &[&[T]]) -> Vec<T> {
        assert_eq!(parts.len(), self.degree(), "one part per letter");
        self.images.iter().flat_map(|&i| parts[i - 1].iter().cloned()).collect()
    }
}

/// Comma-separated one-line notation, e.g. `2,3,1` (parentheses optional).
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Permutation> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let images = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPermutation(format!("`{s}` is not comma-separated one-line notation")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}
