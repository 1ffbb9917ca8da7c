//! Derivation relations and bounded language enumeration.
//!
//! Enumeration is a level-synchronous breadth-first closure of the start
//! forms under a one-step relation. Every visited form is memoized, forms are
//! pruned by size and by a lower bound on what they can still produce, and
//! the search stops after `max_steps` levels. With more than one worker a
//! level is expanded on a rayon pool; successors are merged back in frontier
//! order, so the output never depends on scheduling.

mod cfg;
mod cftg;
mod tag;

use std::collections::HashSet;
use std::hash::Hash;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::symbol::Word;
use crate::tree::TermError;

pub use cfg::cfg_enumerate;
pub use cftg::{
    cftg_enumerate, cftg_enumerate_with, cftg_step, cftg_strings, rtg_enumerate,
    rtg_enumerate_with, StringReading,
};
pub use tag::{tag_enumerate, tag_enumerate_with, tag_step, tag_strings, TagLanguages};

pub const DEFAULT_MAX_STEPS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeriveError {
    #[error("invalid sentential form: {0}")]
    InvalidTree(#[from] TermError),
    #[error("invalid TAG tree: {0}")]
    InvalidTagTree(String),
    #[error("bounds must be positive: {0}")]
    Bounds(&'static str),
}

/// Limits that finitize an enumeration. `usize::MAX` means no limit and
/// serializes as `null`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Bounds {
    /// Largest node count of a reported tree.
    #[serde(serialize_with = "limit")]
    pub max_tree_size: usize,
    /// Number of derivation levels explored.
    pub max_steps: usize,
    /// Longest reported string.
    #[serde(serialize_with = "limit")]
    pub max_string_len: usize,
}

fn limit<S: serde::Serializer>(v: &usize, s: S) -> Result<S::Ok, S::Error> {
    if *v == usize::MAX {
        s.serialize_none()
    } else {
        s.serialize_u64(*v as u64)
    }
}

impl Bounds {
    pub fn new(
        max_tree_size: usize,
        max_steps: usize,
        max_string_len: usize,
    ) -> Result<Self, DeriveError> {
        if max_tree_size == 0 {
            return Err(DeriveError::Bounds("max_tree_size"));
        }
        if max_steps == 0 {
            return Err(DeriveError::Bounds("max_steps"));
        }
        Ok(Bounds {
            max_tree_size,
            max_steps,
            max_string_len,
        })
    }

    /// Tree enumeration: only the size limits the output.
    pub fn trees(max_tree_size: usize) -> Self {
        Bounds {
            max_tree_size,
            max_steps: DEFAULT_MAX_STEPS,
            max_string_len: max_tree_size,
        }
    }

    pub fn with_steps(self, max_steps: usize) -> Self {
        Bounds { max_steps, ..self }
    }

    pub fn with_string_len(self, max_string_len: usize) -> Self {
        Bounds {
            max_string_len,
            ..self
        }
    }
}

/// A finite, canonically ordered sample of a language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedLanguage<T> {
    pub items: Vec<T>,
    pub bounds: Bounds,
    /// The sample is exhaustive for items up to this size (tree node count
    /// or string length); `None` when a bound cut the search short.
    pub complete_up_to: Option<usize>,
}

impl<T> BoundedLanguage<T> {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.items.iter()
    }

    pub fn is_complete(&self) -> bool {
        self.complete_up_to.is_some()
    }
}

pub(crate) fn sort_trees<L: std::fmt::Display + Ord>(items: &mut Vec<crate::tree::Tree<L>>) {
    let mut keyed: Vec<_> = items
        .drain(..)
        .map(|t| ((t.size(), t.to_string()), t))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    items.extend(keyed.into_iter().map(|(_, t)| t));
}

impl<L: std::fmt::Display> BoundedLanguage<crate::tree::Tree<L>> {
    /// One canonical tree per line.
    pub fn to_lines(&self) -> String {
        self.items.iter().map(|t| format!("{t}\n")).collect()
    }
}

impl BoundedLanguage<Word> {
    /// One string per line, the empty string as `<eps>`.
    pub fn to_lines(&self) -> String {
        self.items
            .iter()
            .map(|w| format!("{}\n", show_word(w)))
            .collect()
    }
}

pub fn show_word(w: &Word) -> String {
    if w.is_empty() {
        "<eps>".to_string()
    } else {
        w.to_string()
    }
}

impl<T: std::fmt::Display> BoundedLanguage<T> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "bounds": self.bounds,
            "complete_up_to": self.complete_up_to,
            "items": self.items.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }
}

/// One-step relation plus pruning, as seen by the breadth-first closure.
pub(crate) trait Search: Sync {
    type Form: Clone + Eq + Hash + Send + Sync;

    fn successors(&self, form: &Self::Form) -> Vec<Self::Form>;

    /// Forms failing this are dropped before memoization.
    fn admissible(&self, form: &Self::Form) -> bool;

    fn is_final(&self, form: &Self::Form) -> bool;
}

pub(crate) struct Explored<F> {
    pub finals: Vec<F>,
    pub exhausted: bool,
}

pub(crate) fn explore<S: Search>(
    search: &S,
    starts: Vec<S::Form>,
    max_steps: usize,
    workers: usize,
) -> Explored<S::Form> {
    let mut visited: HashSet<S::Form> = HashSet::new();
    let mut finals = Vec::new();
    let mut frontier = Vec::new();
    for s in starts {
        if search.admissible(&s) && visited.insert(s.clone()) {
            if search.is_final(&s) {
                finals.push(s.clone());
            }
            frontier.push(s);
        }
    }
    let pool = (workers > 1)
        .then(|| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .ok()
        })
        .flatten();
    let expand = |f: &S::Form| -> Vec<S::Form> {
        search
            .successors(f)
            .into_iter()
            .filter(|s| search.admissible(s))
            .collect()
    };

    let mut depth = 0;
    while !frontier.is_empty() {
        if depth >= max_steps {
            return Explored {
                finals,
                exhausted: false,
            };
        }
        let expanded: Vec<Vec<S::Form>> = match &pool {
            Some(pool) => pool.install(|| frontier.par_iter().map(expand).collect()),
            None => frontier.iter().map(expand).collect(),
        };
        let mut next = Vec::new();
        for s in expanded.into_iter().flatten() {
            if !visited.contains(&s) {
                visited.insert(s.clone());
                if search.is_final(&s) {
                    finals.push(s.clone());
                }
                next.push(s);
            }
        }
        frontier = next;
        depth += 1;
    }
    Explored {
        finals,
        exhausted: true,
    }
}

/// A cost that may be unbounded (an unproductive symbol).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Cost {
    Finite(usize),
    Infinite,
}

impl Cost {
    pub fn add(self, other: Cost) -> Cost {
        match (self, other) {
            (Cost::Finite(a), Cost::Finite(b)) => Cost::Finite(a.saturating_add(b)),
            _ => Cost::Infinite,
        }
    }

    pub fn within(self, limit: usize) -> bool {
        matches!(self, Cost::Finite(c) if c <= limit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Counter {
        limit: u32,
    }

    impl Search for Counter {
        type Form = u32;

        fn successors(&self, f: &u32) -> Vec<u32> {
            vec![f + 1, f * 2]
        }

        fn admissible(&self, f: &u32) -> bool {
            *f <= self.limit
        }

        fn is_final(&self, f: &u32) -> bool {
            f.is_multiple_of(5)
        }
    }

    #[test]
    fn closure_is_exhaustive_and_deterministic() {
        let c = Counter { limit: 40 };
        let one = explore(&c, vec![1], 100, 1);
        let many = explore(&c, vec![1], 100, 4);
        assert!(one.exhausted);
        assert_eq!(one.finals, many.finals);
        let mut finals = one.finals.clone();
        finals.sort();
        assert_eq!(finals, (1..=8).map(|k| 5 * k).collect::<Vec<_>>());
    }

    #[test]
    fn step_limit_reports_incomplete() {
        let c = Counter { limit: 1000 };
        let r = explore(&c, vec![1], 3, 1);
        assert!(!r.exhausted);
    }

    #[test]
    fn bounds_positive() {
        assert!(Bounds::new(0, 1, 1).is_err());
        assert!(Bounds::new(1, 0, 1).is_err());
        assert!(Bounds::new(3, 4, 0).is_ok());
    }

    #[test]
    fn cost_arithmetic() {
        assert_eq!(Cost::Finite(2).add(Cost::Finite(3)), Cost::Finite(5));
        assert_eq!(Cost::Finite(2).add(Cost::Infinite), Cost::Infinite);
        assert!(Cost::Finite(2).within(2));
        assert!(!Cost::Infinite.within(usize::MAX));
    }
}
