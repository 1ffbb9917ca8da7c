use std::collections::BTreeSet;

use crate::symbol::{is_identifier, variable_index, AlphabetError, Symbol};

use super::GrammarError;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CfgRule {
    pub lhs: Symbol,
    /// Empty for an epsilon rule.
    pub rhs: Vec<Symbol>,
}

impl CfgRule {
    pub fn new(lhs: impl Into<Symbol>, rhs: Vec<Symbol>) -> Self {
        CfgRule {
            lhs: lhs.into(),
            rhs,
        }
    }
}

/// A context-free string grammar `(N, V, S, P)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringCfg {
    nonterminals: BTreeSet<Symbol>,
    terminals: BTreeSet<Symbol>,
    start: Symbol,
    rules: Vec<CfgRule>,
}

impl StringCfg {
    pub fn new(
        nonterminals: impl IntoIterator<Item = Symbol>,
        terminals: impl IntoIterator<Item = Symbol>,
        start: impl Into<Symbol>,
        rules: Vec<CfgRule>,
    ) -> Result<Self, GrammarError> {
        let g = StringCfg {
            nonterminals: nonterminals.into_iter().collect(),
            terminals: terminals.into_iter().collect(),
            start: start.into(),
            rules,
        };
        g.validate()?;
        Ok(g)
    }

    /// Shorthand for tests and examples: single-character symbols, upper case
    /// letters are nonterminals, `rules` like `["S -> aSb", "S ->"]`.
    pub fn from_compact(start: &str, rules: &[&str]) -> Result<Self, GrammarError> {
        let mut n = BTreeSet::new();
        let mut v = BTreeSet::new();
        let mut out = Vec::new();
        n.insert(Symbol::new(start));
        for r in rules {
            let (lhs, rhs) = r.split_once("->").unwrap_or((r, ""));
            let lhs = Symbol::new(lhs.trim());
            n.insert(lhs.clone());
            let mut syms = Vec::new();
            for c in rhs.chars().filter(|c| !c.is_whitespace()) {
                let s = Symbol::new(c.encode_utf8(&mut [0; 4]));
                if c.is_ascii_uppercase() {
                    n.insert(s.clone());
                } else {
                    v.insert(s.clone());
                }
                syms.push(s);
            }
            out.push(CfgRule::new(lhs, syms));
        }
        StringCfg::new(n, v, start, out)
    }

    pub fn nonterminals(&self) -> &BTreeSet<Symbol> {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &BTreeSet<Symbol> {
        &self.terminals
    }

    pub fn start(&self) -> &Symbol {
        &self.start
    }

    pub fn rules(&self) -> &[CfgRule] {
        &self.rules
    }

    pub fn is_nonterminal(&self, s: &str) -> bool {
        self.nonterminals.contains(s)
    }

    pub fn validate(&self) -> Result<(), GrammarError> {
        for s in self.nonterminals.iter().chain(&self.terminals) {
            if s.is_epsilon() {
                return Err(GrammarError::Reserved(s.clone()));
            }
            if !is_identifier(s.as_str()) {
                return Err(AlphabetError::BadName(s.to_string()).into());
            }
            if variable_index(s.as_str()).is_some() {
                return Err(AlphabetError::ReservedVariable(s.to_string()).into());
            }
        }
        if let Some(s) = self.nonterminals.intersection(&self.terminals).next() {
            return Err(AlphabetError::Overlap(s.clone()).into());
        }
        if !self.nonterminals.contains(&self.start) {
            return Err(GrammarError::UnknownStart(self.start.clone()));
        }
        for (i, r) in self.rules.iter().enumerate() {
            if !self.nonterminals.contains(&r.lhs) {
                return Err(GrammarError::UnknownLhs {
                    rule: i,
                    symbol: r.lhs.clone(),
                });
            }
            if let Some(s) = r
                .rhs
                .iter()
                .find(|s| !self.nonterminals.contains(*s) && !self.terminals.contains(*s))
            {
                return Err(GrammarError::UndeclaredSymbol {
                    rule: i,
                    symbol: s.clone(),
                });
            }
        }
        Ok(())
    }

    /// Every right-hand side is a run of terminals optionally followed by a
    /// single nonterminal.
    pub fn is_right_linear(&self) -> bool {
        self.rules
            .iter()
            .all(|r| self.right_linear_split(r).is_some())
    }

    /// Splits a right-linear rhs into its terminal run and trailing nonterminal.
    pub(crate) fn right_linear_split<'r>(
        &self,
        r: &'r CfgRule,
    ) -> Option<(&'r [Symbol], Option<&'r Symbol>)> {
        match r.rhs.split_last() {
            Some((last, init)) if self.is_nonterminal(last) => init
                .iter()
                .all(|s| !self.is_nonterminal(s))
                .then_some((init, Some(last))),
            _ => r
                .rhs
                .iter()
                .all(|s| !self.is_nonterminal(s))
                .then_some((&r.rhs[..], None)),
        }
    }
}
