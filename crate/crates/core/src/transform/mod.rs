//! Constructive translations between the grammar formalisms.
//!
//! Every translation returns the new grammar together with human-readable
//! notes about synthesized names; `convert` writes the notes as comments.

mod monadic;
mod regular;
mod tag;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::grammar::{Grammar, GrammarError, GrammarKind};
use crate::symbol::Symbol;

pub use monadic::{cfg_to_monadic_cftg, monadic_cftg_to_cfg};
pub use regular::{
    cfg_to_derivation_rtg, monadic_rtg_to_regular_cfg, regular_cfg_to_monadic_rtg, rtg_yield_cfg,
};
pub use tag::{cftg_to_tag, tag_to_cftg, CftgToTag, TagToCftg};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("terminal `{symbol}` has rank {rank}, but a monadic alphabet needs rank 1 letters")]
    NonMonadic { symbol: Symbol, rank: usize },
    #[error("nonterminal `{symbol}` has rank {rank}, at most {max} is supported")]
    NonterminalRank {
        symbol: Symbol,
        rank: usize,
        max: usize,
    },
    #[error("rule {rule}: {problem}")]
    Rule { rule: usize, problem: String },
    #[error("rule {rule} is not right-linear")]
    NotRightLinear { rule: usize },
    #[error("no translation from {from} to {to}")]
    Unsupported { from: GrammarKind, to: GrammarKind },
    #[error("translated grammar is invalid: {0}")]
    Grammar(#[from] GrammarError),
}

/// A translated grammar with notes on the names it introduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translation<G> {
    pub grammar: G,
    pub notes: Vec<String>,
}

impl<G> Translation<G> {
    pub fn into_grammar(self) -> G {
        self.grammar
    }
}

/// Hands out names that collide with nothing seen so far.
pub(crate) struct Names {
    taken: BTreeSet<String>,
}

impl Names {
    pub fn new<'a>(taken: impl IntoIterator<Item = &'a Symbol>) -> Self {
        let mut taken: BTreeSet<String> = taken.into_iter().map(|s| s.to_string()).collect();
        taken.insert(crate::symbol::EPSILON.to_string());
        Names { taken }
    }

    /// `base`, or `base` primed until unused. A rule tag `@i` moves to the
    /// end, so `A@1bar` becomes `Abar@1`.
    pub fn fresh(&mut self, base: &str) -> Symbol {
        let (stem, tag) = match base.split_once('@') {
            Some((s, t)) => {
                let digits = t.len() - t.trim_start_matches(|c: char| c.is_ascii_digit()).len();
                (format!("{s}{}", &t[digits..]), format!("@{}", &t[..digits]))
            }
            None => (base.to_string(), String::new()),
        };
        let mut stem = stem;
        loop {
            let candidate = format!("{stem}{tag}");
            if self.taken.insert(candidate.clone()) {
                return Symbol::from(candidate);
            }
            stem.push('\'');
        }
    }
}

/// Single translation steps, in the order `convert` tries them.
fn step(g: &Grammar, to: GrammarKind) -> Result<Translation<Grammar>, TransformError> {
    fn lift<G: Into<Grammar>>(t: Translation<G>) -> Translation<Grammar> {
        Translation {
            grammar: t.grammar.into(),
            notes: t.notes,
        }
    }
    match (g, to) {
        (Grammar::Cfg(g), GrammarKind::Cftg) => Ok(lift(cfg_to_monadic_cftg(g)?)),
        (Grammar::Cfg(g), GrammarKind::Rtg) => {
            if g.is_right_linear() {
                Ok(lift(regular_cfg_to_monadic_rtg(g)?))
            } else {
                Ok(lift(cfg_to_derivation_rtg(g)?))
            }
        }
        (Grammar::Cftg(g), GrammarKind::Cfg) => Ok(lift(monadic_cftg_to_cfg(g)?)),
        (Grammar::Cftg(g), GrammarKind::Rtg) => match crate::grammar::Rtg::from_cftg(g) {
            Some(r) => Ok(lift(Translation {
                grammar: r,
                notes: Vec::new(),
            })),
            None => {
                let (symbol, rank) = g
                    .nonterminals()
                    .iter()
                    .find(|(_, r)| *r > 0)
                    .map(|(s, r)| (s.clone(), r))
                    .expect("some nonterminal is ranked");
                Err(TransformError::NonterminalRank {
                    symbol,
                    rank,
                    max: 0,
                })
            }
        },
        (Grammar::Cftg(g), GrammarKind::Tag) => {
            let t = cftg_to_tag(g)?;
            Ok(lift(Translation {
                grammar: t.grammar,
                notes: t.notes,
            }))
        }
        (Grammar::Rtg(g), GrammarKind::Cfg) => {
            if crate::grammar::classify(g.as_cftg()).is_monadic_terminals {
                Ok(lift(monadic_rtg_to_regular_cfg(g)?))
            } else {
                Ok(lift(rtg_yield_cfg(g)?))
            }
        }
        (Grammar::Rtg(g), GrammarKind::Cftg) => Ok(lift(Translation {
            grammar: g.as_cftg().clone(),
            notes: Vec::new(),
        })),
        (Grammar::Tag(g), GrammarKind::Cftg) => {
            let t = tag_to_cftg(g)?;
            Ok(lift(Translation {
                grammar: t.grammar,
                notes: t.notes,
            }))
        }
        (g, to) => Err(TransformError::Unsupported { from: g.kind(), to }),
    }
}

fn reads_monadic(g: &Grammar) -> bool {
    match g {
        Grammar::Cfg(_) => true,
        Grammar::Cftg(c) => crate::grammar::classify(c).is_monadic_terminals,
        Grammar::Rtg(r) => crate::grammar::classify(r.as_cftg()).is_monadic_terminals,
        Grammar::Tag(_) => false,
    }
}

/// The kinds visited when converting `g` into `to`, endpoints excluded.
///
/// A TAG carries its string on the frontier, so chains into `tag` from a
/// grammar over unary letters pass through the derivation trees of a
/// string grammar.
pub fn conversion_chain(g: &Grammar, to: GrammarKind) -> Vec<GrammarKind> {
    use GrammarKind::*;
    match (g.kind(), to) {
        (Cfg, Tag) => vec![Rtg, Cftg],
        (Rtg, Tag) if reads_monadic(g) => vec![Cfg, Rtg, Cftg],
        (Rtg, Tag) | (Tag, Cfg) | (Tag, Rtg) => vec![Cftg],
        _ => Vec::new(),
    }
}

/// Converts `g` into `to`, composing single steps through
/// [`conversion_chain`] unless `single_step` is set.
pub fn convert(
    g: &Grammar,
    to: GrammarKind,
    single_step: bool,
) -> Result<Translation<Grammar>, TransformError> {
    if g.kind() == to {
        return Ok(Translation {
            grammar: g.clone(),
            notes: Vec::new(),
        });
    }
    let via = conversion_chain(g, to);
    if single_step && !via.is_empty() {
        return Err(TransformError::Unsupported { from: g.kind(), to });
    }
    let mut current = Translation {
        grammar: g.clone(),
        notes: Vec::new(),
    };
    for kind in via.into_iter().chain([to]) {
        let next = match (&current.grammar, kind) {
            (Grammar::Cfg(c), GrammarKind::Rtg) if to == GrammarKind::Tag => {
                let t = cfg_to_derivation_rtg(c)?;
                Translation {
                    grammar: t.grammar.into(),
                    notes: t.notes,
                }
            }
            (current, kind) => step(current, kind)?,
        };
        current.notes.extend(next.notes);
        current.grammar = next.grammar;
    }
    if to == GrammarKind::Tag && g.kind() == GrammarKind::Cftg && reads_monadic(g) {
        current.notes.push(
            "letters are unary and label inner nodes; strings are read along derived trees".into(),
        );
    }
    Ok(current)
}
