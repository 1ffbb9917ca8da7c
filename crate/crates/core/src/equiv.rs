//! Bounded weak equivalence: string languages compared up to a length.

use std::collections::BTreeSet;

use crate::derive::{
    cfg_enumerate, cftg_strings, tag_strings, BoundedLanguage, Bounds, DEFAULT_MAX_STEPS,
};
use crate::grammar::{Cftg, Grammar};
use crate::symbol::Word;

/// How the tree side of a string enumeration is bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StringOptions {
    pub max_len: usize,
    /// Fixed tree-size bound for grammars whose strings are read off
    /// enumerated trees; derived from `max_len` when absent.
    pub tree_size: Option<usize>,
    pub max_steps: usize,
    pub workers: usize,
}

impl StringOptions {
    pub fn new(max_len: usize) -> Self {
        StringOptions {
            max_len,
            tree_size: None,
            max_steps: DEFAULT_MAX_STEPS,
            workers: 1,
        }
    }
}

/// How many times a derived tree-size bound is doubled when it turned out
/// to cut derivations within the string bound.
const RETRIES: usize = 2;

fn cftg_factor(g: &Cftg) -> usize {
    g.terminals().max_rank() + 1
}

/// The strings of `g` up to `opts.max_len`.
///
/// CFGs, TAGs and linear tree grammars are solved on strings directly.
/// Other tree grammars are enumerated with tree size at most
/// `c * max_len + c`, where `c` is one more than the largest terminal rank.
/// If that bound cut a derivation short it is doubled, at most twice; the
/// result reports whether it is complete.
pub fn bounded_string_language_with(g: &Grammar, opts: &StringOptions) -> BoundedLanguage<Word> {
    let factor = match g {
        Grammar::Cfg(g) => return cfg_enumerate(g, opts.max_len),
        Grammar::Cftg(c) => cftg_factor(c),
        Grammar::Rtg(r) => cftg_factor(r.as_cftg()),
        Grammar::Tag(t) => return tag_strings(t, opts.max_len, opts.max_steps),
    };
    let mut size = opts
        .tree_size
        .unwrap_or(factor * opts.max_len + factor)
        .max(1);
    let retries = if opts.tree_size.is_some() { 0 } else { RETRIES };
    let mut attempt = 0;
    loop {
        let bounds = Bounds {
            max_tree_size: size,
            max_steps: opts.max_steps,
            max_string_len: opts.max_len,
        };
        let lang = match g {
            Grammar::Cftg(c) => cftg_strings(c, bounds, opts.workers),
            Grammar::Rtg(r) => cftg_strings(r.as_cftg(), bounds, opts.workers),
            Grammar::Cfg(_) | Grammar::Tag(_) => unreachable!(),
        };
        if lang.is_complete() || attempt == retries {
            return lang;
        }
        attempt += 1;
        size *= 2;
    }
}

pub fn bounded_string_language(g: &Grammar, max_len: usize) -> BoundedLanguage<Word> {
    bounded_string_language_with(g, &StringOptions::new(max_len))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivReport {
    pub equal: bool,
    pub bound: usize,
    pub only_in_left: Vec<Word>,
    pub only_in_right: Vec<Word>,
    pub left_complete: bool,
    pub right_complete: bool,
}

impl EquivReport {
    pub fn compare(
        left: &BoundedLanguage<Word>,
        right: &BoundedLanguage<Word>,
        bound: usize,
    ) -> Self {
        let l: BTreeSet<&Word> = left.iter().collect();
        let r: BTreeSet<&Word> = right.iter().collect();
        let only_in_left: Vec<Word> = l.difference(&r).map(|w| (*w).clone()).collect();
        let only_in_right: Vec<Word> = r.difference(&l).map(|w| (*w).clone()).collect();
        EquivReport {
            equal: only_in_left.is_empty() && only_in_right.is_empty(),
            bound,
            only_in_left,
            only_in_right,
            left_complete: left.is_complete(),
            right_complete: right.is_complete(),
        }
    }

    /// Same comparison seen from the other side.
    pub fn swapped(&self) -> Self {
        EquivReport {
            only_in_left: self.only_in_right.clone(),
            only_in_right: self.only_in_left.clone(),
            left_complete: self.right_complete,
            right_complete: self.left_complete,
            ..self.clone()
        }
    }

    /// Machine-readable form listing at most `limit` differences per side.
    pub fn to_json(&self, limit: usize) -> serde_json::Value {
        let show = |ws: &[Word]| -> Vec<String> {
            ws.iter()
                .take(limit)
                .map(crate::derive::show_word)
                .collect()
        };
        serde_json::json!({
            "equal": self.equal,
            "bound": self.bound,
            "left_complete": self.left_complete,
            "right_complete": self.right_complete,
            "only_in_left": show(&self.only_in_left),
            "only_in_right": show(&self.only_in_right),
        })
    }
}

pub fn check_weak_equiv_with(g1: &Grammar, g2: &Grammar, opts: &StringOptions) -> EquivReport {
    let (left, right) = if opts.workers > 1 {
        rayon::join(
            || bounded_string_language_with(g1, opts),
            || bounded_string_language_with(g2, opts),
        )
    } else {
        (
            bounded_string_language_with(g1, opts),
            bounded_string_language_with(g2, opts),
        )
    };
    EquivReport::compare(&left, &right, opts.max_len)
}

pub fn check_weak_equiv(g1: &Grammar, g2: &Grammar, max_len: usize) -> EquivReport {
    check_weak_equiv_with(g1, g2, &StringOptions::new(max_len))
}
