use std::collections::BTreeSet;

use crate::symbol::{RankedAlphabet, Symbol};
use crate::tree::Term;

use super::{Cftg, CftgRule, GrammarError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RtgRule {
    pub lhs: Symbol,
    pub rhs: Term,
}

impl RtgRule {
    pub fn new(lhs: impl Into<Symbol>, rhs: Term) -> Self {
        RtgRule {
            lhs: lhs.into(),
            rhs,
        }
    }
}

/// A regular tree grammar: every nonterminal has rank zero.
///
/// Internally this is the corresponding [`Cftg`], which keeps validation and
/// derivation in one place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rtg {
    inner: Cftg,
}

impl Rtg {
    pub fn new(
        terminals: RankedAlphabet,
        nonterminals: impl IntoIterator<Item = Symbol>,
        start: impl Into<Symbol>,
        rules: Vec<RtgRule>,
    ) -> Result<Self, GrammarError> {
        let nonterminals: BTreeSet<Symbol> = nonterminals.into_iter().collect();
        let mut ranked = RankedAlphabet::default();
        for n in nonterminals {
            ranked.insert(n, 0)?;
        }
        let rules = rules
            .into_iter()
            .map(|r| CftgRule::new(r.lhs, r.rhs))
            .collect();
        Ok(Rtg {
            inner: Cftg::new(terminals, ranked, start, rules)?,
        })
    }

    /// Succeeds exactly when every nonterminal of `g` has rank zero.
    pub fn from_cftg(g: &Cftg) -> Option<Rtg> {
        (g.nonterminals().max_rank() == 0).then(|| Rtg { inner: g.clone() })
    }

    pub fn as_cftg(&self) -> &Cftg {
        &self.inner
    }

    pub fn into_cftg(self) -> Cftg {
        self.inner
    }

    pub fn terminals(&self) -> &RankedAlphabet {
        self.inner.terminals()
    }

    pub fn nonterminals(&self) -> impl Iterator<Item = &Symbol> {
        self.inner.nonterminals().symbols()
    }

    pub fn is_nonterminal(&self, s: &str) -> bool {
        self.inner.is_nonterminal(s)
    }

    pub fn start(&self) -> &Symbol {
        self.inner.start()
    }

    pub fn rules(&self) -> impl Iterator<Item = RtgRule> + '_ {
        self.inner
            .rules()
            .iter()
            .map(|r| RtgRule::new(r.lhs.clone(), r.rhs.clone()))
    }

    pub fn rule_count(&self) -> usize {
        self.inner.rules().len()
    }

    pub fn validate(&self) -> Result<(), GrammarError> {
        self.inner.validate()?;
        if let Some((s, r)) = self.inner.nonterminals().iter().find(|(_, r)| *r != 0) {
            return Err(GrammarError::RankedNonterminal {
                symbol: s.clone(),
                rank: r,
            });
        }
        Ok(())
    }
}
