//! The four grammar formalisms and their file format.

mod cfg;
mod cftg;
pub mod format;
mod rtg;
mod tag;

use std::fmt;

use thiserror::Error;

use crate::symbol::{AlphabetError, Symbol};
use crate::tree::{Path, ShowPath, TermError};

pub use cfg::{CfgRule, StringCfg};
pub use cftg::{classify, validate_cftg, Cftg, CftgRule, GrammarClassification};
pub use rtg::{Rtg, RtgRule};
pub use tag::{validate_tag, Constraint, Tag, TagLabel, TagTree, TreeRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error("start symbol `{0}` is not a declared nonterminal")]
    UnknownStart(Symbol),
    #[error("start symbol `{symbol}` must have rank 0, not {rank}")]
    StartRank { symbol: Symbol, rank: usize },
    #[error("regular tree grammar nonterminal `{symbol}` has rank {rank}")]
    RankedNonterminal { symbol: Symbol, rank: usize },
    #[error("rule {rule}: `{symbol}` is not a declared nonterminal")]
    UnknownLhs { rule: usize, symbol: Symbol },
    #[error("rule {rule}: {source}")]
    Rule { rule: usize, source: TermError },
    #[error("rule {rule}: undeclared symbol `{symbol}`")]
    UndeclaredSymbol { rule: usize, symbol: Symbol },
    #[error("`{0}` is reserved")]
    Reserved(Symbol),
    #[error("{tree} at {}: {problem}", ShowPath(.path))]
    Tag {
        tree: TreeRef,
        path: Path,
        problem: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GrammarKind {
    Cfg,
    Cftg,
    Rtg,
    Tag,
}

impl GrammarKind {
    pub const ALL: [GrammarKind; 4] = [
        GrammarKind::Cfg,
        GrammarKind::Cftg,
        GrammarKind::Rtg,
        GrammarKind::Tag,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GrammarKind::Cfg => "cfg",
            GrammarKind::Cftg => "cftg",
            GrammarKind::Rtg => "rtg",
            GrammarKind::Tag => "tag",
        }
    }
}

impl fmt::Display for GrammarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for GrammarKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GrammarKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown grammar kind `{s}` (expected cfg, cftg, rtg or tag)"))
    }
}

/// Any grammar value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Grammar {
    Cfg(StringCfg),
    Cftg(Cftg),
    Rtg(Rtg),
    Tag(Tag),
}

impl Grammar {
    pub fn kind(&self) -> GrammarKind {
        match self {
            Grammar::Cfg(_) => GrammarKind::Cfg,
            Grammar::Cftg(_) => GrammarKind::Cftg,
            Grammar::Rtg(_) => GrammarKind::Rtg,
            Grammar::Tag(_) => GrammarKind::Tag,
        }
    }

    /// Re-checks every invariant of the underlying formalism.
    pub fn validate(&self) -> Result<(), GrammarError> {
        match self {
            Grammar::Cfg(g) => g.validate(),
            Grammar::Cftg(g) => g.validate(),
            Grammar::Rtg(g) => g.validate(),
            Grammar::Tag(g) => g.validate(),
        }
    }
}

impl From<StringCfg> for Grammar {
    fn from(g: StringCfg) -> Self {
        Grammar::Cfg(g)
    }
}

impl From<Cftg> for Grammar {
    fn from(g: Cftg) -> Self {
        Grammar::Cftg(g)
    }
}

impl From<Rtg> for Grammar {
    fn from(g: Rtg) -> Self {
        Grammar::Rtg(g)
    }
}

impl From<Tag> for Grammar {
    fn from(g: Tag) -> Self {
        Grammar::Tag(g)
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format::print_grammar(self))
    }
}
