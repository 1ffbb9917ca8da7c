use crate::grammar::{CfgRule, GrammarError, Rtg, RtgRule, StringCfg};
use crate::symbol::{RankedAlphabet, Symbol};
use crate::tree::{Label, Term};

use super::{Names, TransformError, Translation};

/// `A -> a1(…an(eps)…)` becomes `A -> a1…an` and `A -> a1(…an(B)…)` becomes
/// `A -> a1…an B`.
pub fn monadic_rtg_to_regular_cfg(g: &Rtg) -> Result<Translation<StringCfg>, TransformError> {
    let c = g.as_cftg();
    if let Some((symbol, rank)) =
        c.terminals()
            .iter()
            .find(|(s, r)| if s.is_epsilon() { false } else { *r != 1 })
    {
        return Err(TransformError::NonMonadic {
            symbol: symbol.clone(),
            rank,
        });
    }
    let mut rules = Vec::new();
    // Over unary letters every right-hand side is a chain ending in `eps`
    // or in a nonterminal leaf.
    for r in c.rules() {
        let mut rhs = Vec::new();
        let mut node = &r.rhs;
        loop {
            let s = node.symbol().expect("rtg rules have no variables");
            if s.is_epsilon() {
                break;
            }
            rhs.push(s.clone());
            if g.is_nonterminal(s) {
                break;
            }
            node = &node.children()[0];
        }
        rules.push(CfgRule::new(r.lhs.clone(), rhs));
    }
    let letters = c.terminals().symbols().filter(|s| !s.is_epsilon()).cloned();
    Ok(Translation {
        grammar: StringCfg::new(g.nonterminals().cloned(), letters, g.start().clone(), rules)?,
        notes: Vec::new(),
    })
}

/// Inverse of [`monadic_rtg_to_regular_cfg`] on right-linear grammars.
pub fn regular_cfg_to_monadic_rtg(g: &StringCfg) -> Result<Translation<Rtg>, TransformError> {
    let mut rules = Vec::new();
    for (i, r) in g.rules().iter().enumerate() {
        let (letters, tail) = g
            .right_linear_split(r)
            .ok_or(TransformError::NotRightLinear { rule: i })?;
        let end = tail.map_or_else(Term::epsilon, |n| Term::sym(n.clone()));
        let chain = letters
            .iter()
            .rev()
            .fold(end, |acc, a| Term::app(a.clone(), vec![acc]));
        rules.push(RtgRule::new(r.lhs.clone(), chain));
    }
    let mut terminals = RankedAlphabet::default();
    for v in g.terminals() {
        terminals.insert(v.clone(), 1).map_err(GrammarError::from)?;
    }
    terminals
        .insert(Symbol::epsilon(), 0)
        .map_err(GrammarError::from)?;
    Ok(Translation {
        grammar: Rtg::new(
            terminals,
            g.nonterminals().iter().cloned(),
            g.start().clone(),
            rules,
        )?,
        notes: Vec::new(),
    })
}

/// The string grammar of the yields: each rule keeps its rank-0 leaves and
/// nonterminals in left-to-right order.
pub fn rtg_yield_cfg(g: &Rtg) -> Result<Translation<StringCfg>, TransformError> {
    let c = g.as_cftg();
    let rules = c
        .rules()
        .iter()
        .map(|r| {
            let rhs = r
                .rhs
                .leaf_paths()
                .into_iter()
                .filter_map(|p| match p.last() {
                    Some(Label::Sym(s)) if !s.is_epsilon() => Some(s.clone()),
                    _ => None,
                })
                .collect();
            CfgRule::new(r.lhs.clone(), rhs)
        })
        .collect();
    let letters = c
        .terminals()
        .of_rank(0)
        .filter(|s| !s.is_epsilon())
        .cloned();
    Ok(Translation {
        grammar: StringCfg::new(g.nonterminals().cloned(), letters, g.start().clone(), rules)?,
        notes: Vec::new(),
    })
}

/// Derivation trees of a string grammar as a regular tree grammar whose
/// yields are the strings. A rule with `n >= 2` symbols gets an inner node
/// `A_n`; shorter rules need none.
pub fn cfg_to_derivation_rtg(g: &StringCfg) -> Result<Translation<Rtg>, TransformError> {
    let mut names = Names::new(g.nonterminals().iter().chain(g.terminals()));
    let mut inner: Vec<((Symbol, usize), Symbol)> = Vec::new();
    let mut terminals = RankedAlphabet::default();
    for v in g.terminals() {
        terminals.insert(v.clone(), 0).map_err(GrammarError::from)?;
    }
    terminals
        .insert(Symbol::epsilon(), 0)
        .map_err(GrammarError::from)?;
    let mut rules = Vec::new();
    for r in g.rules() {
        let rhs = match r.rhs.len() {
            0 => Term::epsilon(),
            1 => Term::sym(r.rhs[0].clone()),
            n => {
                let key = (r.lhs.clone(), n);
                let label = match inner.iter().find(|(k, _)| *k == key) {
                    Some((_, l)) => l.clone(),
                    None => {
                        let l = names.fresh(&format!("{}_{n}", r.lhs));
                        terminals.insert(l.clone(), n).map_err(GrammarError::from)?;
                        inner.push((key, l.clone()));
                        l
                    }
                };
                Term::app(label, r.rhs.iter().map(|s| Term::sym(s.clone())).collect())
            }
        };
        rules.push(RtgRule::new(r.lhs.clone(), rhs));
    }
    let notes = inner
        .iter()
        .map(|((a, n), l)| format!("{l} is an inner node of a rule for {a} with {n} symbols"))
        .collect();
    Ok(Translation {
        grammar: Rtg::new(
            terminals,
            g.nonterminals().iter().cloned(),
            g.start().clone(),
            rules,
        )?,
        notes,
    })
}
