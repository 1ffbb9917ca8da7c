use std::collections::BTreeSet;

use crate::symbol::{RankedAlphabet, Symbol};
use crate::tree::{Term, Variable};

use super::GrammarError;

/// `F(x_1, …, x_m) -> rhs`, where `m` is the rank of `F`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CftgRule {
    pub lhs: Symbol,
    pub rhs: Term,
}

impl CftgRule {
    pub fn new(lhs: impl Into<Symbol>, rhs: Term) -> Self {
        CftgRule {
            lhs: lhs.into(),
            rhs,
        }
    }
}

/// A context-free tree grammar `⟨Σ, F, S, P⟩`.
///
/// The epsilon constant is always part of `Σ` with rank 0. Rules keep their
/// insertion order; rule indices are stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cftg {
    terminals: RankedAlphabet,
    nonterminals: RankedAlphabet,
    start: Symbol,
    rules: Vec<CftgRule>,
    combined: RankedAlphabet,
}

impl Cftg {
    pub fn new(
        terminals: RankedAlphabet,
        nonterminals: RankedAlphabet,
        start: impl Into<Symbol>,
        rules: Vec<CftgRule>,
    ) -> Result<Self, GrammarError> {
        let mut terminals = terminals;
        terminals.insert(Symbol::epsilon(), 0)?;
        let combined = terminals.merge(&nonterminals)?;
        let g = Cftg {
            terminals,
            nonterminals,
            start: start.into(),
            rules,
            combined,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn terminals(&self) -> &RankedAlphabet {
        &self.terminals
    }

    pub fn nonterminals(&self) -> &RankedAlphabet {
        &self.nonterminals
    }

    /// `Σ ∪ F`.
    pub fn alphabet(&self) -> &RankedAlphabet {
        &self.combined
    }

    pub fn start(&self) -> &Symbol {
        &self.start
    }

    pub fn rules(&self) -> &[CftgRule] {
        &self.rules
    }

    pub fn is_nonterminal(&self, s: &str) -> bool {
        self.nonterminals.contains(s)
    }

    /// Indices of the rules rewriting `f`, in order.
    pub fn rules_for<'a>(&'a self, f: &'a str) -> impl Iterator<Item = usize> + 'a {
        self.rules
            .iter()
            .enumerate()
            .filter(move |(_, r)| r.lhs.as_str() == f)
            .map(|(i, _)| i)
    }

    pub fn rank_of_lhs(&self, rule: usize) -> usize {
        self.nonterminals
            .rank(self.rules[rule].lhs.as_str())
            .unwrap_or(0)
    }

    pub fn validate(&self) -> Result<(), GrammarError> {
        let merged = self.terminals.merge(&self.nonterminals)?;
        match self.nonterminals.rank(self.start.as_str()) {
            None => return Err(GrammarError::UnknownStart(self.start.clone())),
            Some(0) => {}
            Some(rank) => {
                return Err(GrammarError::StartRank {
                    symbol: self.start.clone(),
                    rank,
                })
            }
        }
        for (i, rule) in self.rules.iter().enumerate() {
            let m = self.nonterminals.rank(rule.lhs.as_str()).ok_or_else(|| {
                GrammarError::UnknownLhs {
                    rule: i,
                    symbol: rule.lhs.clone(),
                }
            })?;
            rule.rhs
                .validate(&merged, m)
                .map_err(|source| GrammarError::Rule { rule: i, source })?;
        }
        Ok(())
    }
}

/// Re-checks a grammar's invariants.
pub fn validate_cftg(g: &Cftg) -> Result<(), GrammarError> {
    g.validate()
}

/// Structural facts about a CFTG that gate the translations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrammarClassification {
    /// Every terminal has rank one except the epsilon constant.
    pub is_monadic_terminals: bool,
    pub max_nonterminal_rank: usize,
    /// No variable occurs twice in any right-hand side.
    pub all_rules_linear: bool,
    /// Every `x_i` of the left-hand side occurs exactly once on the right.
    pub all_rules_exactly_once: bool,
    pub is_regular: bool,
}

pub fn classify(g: &Cftg) -> GrammarClassification {
    let is_monadic_terminals =
        g.terminals()
            .iter()
            .all(|(s, r)| if s.is_epsilon() { r == 0 } else { r == 1 });
    let max_nonterminal_rank = g.nonterminals().max_rank();
    let mut all_rules_linear = true;
    let mut all_rules_exactly_once = true;
    for (i, rule) in g.rules().iter().enumerate() {
        let m = g.rank_of_lhs(i);
        let vars: BTreeSet<Variable> = (1..=m).map(Variable::new).collect();
        all_rules_linear &= rule.rhs.is_linear(&vars);
        let counts = rule.rhs.variable_counts();
        all_rules_exactly_once &= vars.iter().all(|v| counts.get(v) == Some(&1));
    }
    GrammarClassification {
        is_monadic_terminals,
        max_nonterminal_rank,
        all_rules_linear,
        all_rules_exactly_once,
        is_regular: max_nonterminal_rank == 0,
    }
}
