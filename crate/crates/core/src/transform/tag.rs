use std::collections::{BTreeMap, BTreeSet};

use crate::grammar::{Cftg, CftgRule, Constraint, GrammarError, Tag, TagLabel, TagTree};
use crate::symbol::{RankedAlphabet, Symbol};
use crate::tree::{Label, Term, Tree};

use super::{Names, TransformError};

/// A CFTG built from a TAG, with the naming needed to read derived TAG trees
/// as terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagToCftg {
    pub grammar: Cftg,
    pub notes: Vec<String>,
    arity_names: BTreeMap<(Symbol, usize), Symbol>,
    leaf_names: BTreeMap<Symbol, Symbol>,
}

impl TagToCftg {
    /// The term over the new terminal alphabet spelling the same tree.
    /// Nonterminal leaves map to their (rule-less) leaf nonterminals.
    pub fn derived_tree_to_term(&self, t: &TagTree) -> Term {
        match t.label() {
            TagLabel::Terminal(s) => Term::sym(s.clone()),
            TagLabel::Nonterminal { symbol, .. } if t.is_leaf() => {
                Term::sym(self.leaf_names.get(symbol).unwrap_or(symbol).clone())
            }
            TagLabel::Nonterminal { symbol, .. } => {
                let n = t.children().len();
                let name = self
                    .arity_names
                    .get(&(symbol.clone(), n))
                    .unwrap_or(symbol)
                    .clone();
                Term::app(
                    name,
                    t.children()
                        .iter()
                        .map(|c| self.derived_tree_to_term(c))
                        .collect(),
                )
            }
        }
    }
}

fn all_trees(g: &Tag) -> impl Iterator<Item = &TagTree> {
    g.initial_trees().iter().chain(g.auxiliary_trees())
}

/// Translates a TAG into a CFTG whose nonterminals have rank at most one.
///
/// A nonterminal `A` with `n` daughters becomes the terminal `A_n` (plain
/// `A` when only one arity occurs). An obligatory node gets the rank-1
/// nonterminal `Abar` above it, which the auxiliary trees for `A` rewrite.
/// A nonterminal leaf becomes the rank-0 nonterminal `A'`; it has no rules,
/// since a tree whose frontier keeps a nonterminal never yields a string.
pub fn tag_to_cftg(g: &Tag) -> Result<TagToCftg, TransformError> {
    let mut arities: BTreeMap<Symbol, BTreeSet<usize>> = BTreeMap::new();
    let mut barred: BTreeSet<Symbol> = BTreeSet::new();
    let mut leaves: BTreeSet<Symbol> = BTreeSet::new();
    for t in all_trees(g) {
        for (_, n) in t.nodes() {
            if let TagLabel::Nonterminal { symbol, foot, .. } = n.label() {
                if n.label().is_obligatory() {
                    barred.insert(symbol.clone());
                }
                if !n.is_leaf() {
                    arities
                        .entry(symbol.clone())
                        .or_default()
                        .insert(n.children().len());
                } else if !foot {
                    leaves.insert(symbol.clone());
                }
            }
        }
    }
    for aux in g.auxiliary_trees() {
        barred.insert(aux.label().symbol().clone());
    }

    let mut names = Names::new(g.terminals().iter());
    let mut notes = Vec::new();
    let start = names.fresh(&format!("{}'", g.start()));
    notes.push(format!("{start} is the new start symbol"));
    let mut arity_names = BTreeMap::new();
    for (a, ns) in &arities {
        for &n in ns {
            let name = if ns.len() == 1 {
                names.fresh(a)
            } else {
                names.fresh(&format!("{a}_{n}"))
            };
            if name != *a {
                notes.push(format!("{name} is {a} with {n} daughters"));
            }
            arity_names.insert((a.clone(), n), name);
        }
    }
    let bars: BTreeMap<Symbol, Symbol> = barred
        .iter()
        .map(|a| {
            let b = names.fresh(&format!("{a}bar"));
            notes.push(format!("{b} marks obligatory adjunction at {a}"));
            (a.clone(), b)
        })
        .collect();
    let leaf_names: BTreeMap<Symbol, Symbol> = leaves
        .iter()
        .map(|a| {
            let l = names.fresh(&format!("{a}'"));
            notes.push(format!("{l} is a nonterminal leaf {a} and has no rules"));
            (a.clone(), l)
        })
        .collect();

    let star = |t: &TagTree| -> Term {
        fn go(
            t: &TagTree,
            arity_names: &BTreeMap<(Symbol, usize), Symbol>,
            bars: &BTreeMap<Symbol, Symbol>,
            leaf_names: &BTreeMap<Symbol, Symbol>,
        ) -> Term {
            match t.label() {
                TagLabel::Terminal(s) => Term::sym(s.clone()),
                TagLabel::Nonterminal {
                    symbol,
                    constraint,
                    foot,
                } => {
                    let inner = if *foot {
                        Term::var(1)
                    } else if t.is_leaf() {
                        Term::sym(leaf_names[symbol].clone())
                    } else {
                        let name = arity_names[&(symbol.clone(), t.children().len())].clone();
                        Term::app(
                            name,
                            t.children()
                                .iter()
                                .map(|c| go(c, arity_names, bars, leaf_names))
                                .collect(),
                        )
                    };
                    match constraint {
                        Constraint::Obligatory => Term::app(bars[symbol].clone(), vec![inner]),
                        Constraint::Null => inner,
                    }
                }
            }
        }
        go(t, &arity_names, &bars, &leaf_names)
    };

    let mut rules: Vec<CftgRule> = g
        .initial_trees()
        .iter()
        .map(|t| CftgRule::new(start.clone(), star(t)))
        .collect();
    for aux in g.auxiliary_trees() {
        rules.push(CftgRule::new(bars[aux.label().symbol()].clone(), star(aux)));
    }

    let mut terminals = RankedAlphabet::default();
    for v in g.terminals() {
        terminals.insert(v.clone(), 0).map_err(GrammarError::from)?;
    }
    for ((_, n), name) in &arity_names {
        terminals
            .insert(name.clone(), *n)
            .map_err(GrammarError::from)?;
    }
    let mut nonterminals = RankedAlphabet::default();
    nonterminals
        .insert(start.clone(), 0)
        .map_err(GrammarError::from)?;
    for b in bars.values() {
        nonterminals
            .insert(b.clone(), 1)
            .map_err(GrammarError::from)?;
    }
    for l in leaf_names.values() {
        nonterminals
            .insert(l.clone(), 0)
            .map_err(GrammarError::from)?;
    }
    Ok(TagToCftg {
        grammar: Cftg::new(terminals, nonterminals, start, rules)?,
        notes,
        arity_names,
        leaf_names,
    })
}

/// A TAG built from a CFTG, with the naming needed to read its derived trees
/// back as terms of the source grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CftgToTag {
    pub grammar: Tag,
    pub notes: Vec<String>,
    pairs: BTreeSet<Symbol>,
}

impl CftgToTag {
    /// Collapses every rule-pair node and the new root onto their first
    /// daughter, which yields a term over the source terminals.
    pub fn derived_tree_to_term(&self, t: &TagTree) -> Term {
        match t.label() {
            TagLabel::Terminal(s) => Term::sym(s.clone()),
            TagLabel::Nonterminal { symbol, .. }
                if self.pairs.contains(symbol) || symbol == self.grammar.start() =>
            {
                match t.children().first() {
                    Some(c) => self.derived_tree_to_term(c),
                    None => Term::sym(symbol.clone()),
                }
            }
            TagLabel::Nonterminal { symbol, .. } => Term::app(
                symbol.clone(),
                t.children()
                    .iter()
                    .map(|c| self.derived_tree_to_term(c))
                    .collect(),
            ),
        }
    }
}

/// Translates a CFTG with nonterminals of rank at most one, whose rules use
/// their argument exactly once, into a TAG.
///
/// An occurrence of `F` becomes an obligatory node labelled by the pair
/// `F@i` of `F` and a rule `i` rewriting it, in every combination. Rules of
/// the start symbol give initial trees under a new root; the other rules
/// give auxiliary trees rooted by their pair, with the pair as foot in place
/// of the variable. An occurrence of a rank-0 nonterminal keeps an `eps`
/// daughter so that its auxiliary trees, which put the foot after the
/// right-hand side, have somewhere to adjoin.
pub fn cftg_to_tag(g: &Cftg) -> Result<CftgToTag, TransformError> {
    if let Some((symbol, rank)) = g.nonterminals().iter().find(|(_, r)| *r > 1) {
        return Err(TransformError::NonterminalRank {
            symbol: symbol.clone(),
            rank,
            max: 1,
        });
    }
    for (i, r) in g.rules().iter().enumerate() {
        if g.rank_of_lhs(i) == 1 {
            let uses = r.rhs.variable_counts().values().sum::<usize>();
            if uses != 1 {
                return Err(TransformError::Rule {
                    rule: i,
                    problem: format!(
                        "x1 occurs {uses} times, the TAG translation needs exactly one"
                    ),
                });
            }
        }
    }

    let mut names = Names::new(g.alphabet().symbols());
    let mut notes = Vec::new();
    let start = names.fresh(&format!("{}'", g.start()));
    notes.push(format!("{start} is the root of every initial tree"));
    let pair: Vec<Symbol> = g
        .rules()
        .iter()
        .enumerate()
        .map(|(i, r)| names.fresh(&format!("{}@{i}", r.lhs)))
        .collect();
    for (i, p) in pair.iter().enumerate() {
        notes.push(format!("{p} pairs {} with rule {i}", g.rules()[i].lhs));
    }

    let expand = |t: &Term, foot: Option<&Symbol>| -> Vec<TagTree> {
        fn go(g: &Cftg, pair: &[Symbol], t: &Term, foot: Option<&Symbol>) -> Vec<TagTree> {
            let s = match t.label() {
                Label::Var(_) => {
                    let f = foot.expect("variables only occur in rank-1 rules");
                    return vec![Tree::leaf(TagLabel::foot(f.clone(), Constraint::Null))];
                }
                Label::Sym(s) => s,
            };
            let mut kids: Vec<Vec<TagTree>> = vec![Vec::new()];
            for c in t.children() {
                let options = go(g, pair, c, foot);
                kids = kids
                    .iter()
                    .flat_map(|prefix| {
                        options.iter().map(move |o| {
                            let mut v = prefix.clone();
                            v.push(o.clone());
                            v
                        })
                    })
                    .collect();
            }
            if !g.is_nonterminal(s) {
                let label = if t.is_leaf() {
                    TagLabel::Terminal(s.clone())
                } else {
                    TagLabel::nonterminal(s.clone(), Constraint::Null)
                };
                return kids
                    .into_iter()
                    .map(|k| Tree::new(label.clone(), k))
                    .collect();
            }
            if kids.first().is_some_and(Vec::is_empty) {
                kids = vec![vec![Tree::leaf(TagLabel::Terminal(Symbol::epsilon()))]];
            }
            g.rules_for(s)
                .flat_map(|p| {
                    let label = TagLabel::nonterminal(pair[p].clone(), Constraint::Obligatory);
                    kids.iter()
                        .map(move |k| Tree::new(label.clone(), k.clone()))
                        .collect::<Vec<_>>()
                })
                .collect()
        }
        go(g, &pair, t, foot)
    };

    let mut initial = Vec::new();
    for p in g.rules_for(g.start()) {
        for t in expand(&g.rules()[p].rhs, None) {
            initial.push(Tree::new(
                TagLabel::nonterminal(start.clone(), Constraint::Null),
                vec![t],
            ));
        }
    }
    let occurring: BTreeSet<&Symbol> = g
        .rules()
        .iter()
        .flat_map(|r| r.rhs.nodes())
        .filter_map(|(_, n)| n.symbol())
        .filter(|s| g.is_nonterminal(s))
        .collect();
    let mut auxiliary = Vec::new();
    for (i, r) in g.rules().iter().enumerate() {
        let rank = g.rank_of_lhs(i);
        if r.lhs == *g.start() && !occurring.contains(&r.lhs) {
            continue;
        }
        let root = TagLabel::nonterminal(pair[i].clone(), Constraint::Null);
        for t in expand(&r.rhs, Some(&pair[i])) {
            let children = if rank == 1 {
                vec![t]
            } else {
                vec![
                    t,
                    Tree::leaf(TagLabel::foot(pair[i].clone(), Constraint::Null)),
                ]
            };
            auxiliary.push(Tree::new(root.clone(), children));
        }
    }

    let terminals: Vec<Symbol> = g.terminals().of_rank(0).cloned().collect();
    let mut nonterminals: Vec<Symbol> = g
        .terminals()
        .iter()
        .filter(|(_, r)| *r > 0)
        .map(|(s, _)| s.clone())
        .collect();
    nonterminals.extend(pair.iter().cloned());
    nonterminals.push(start.clone());
    Ok(CftgToTag {
        grammar: Tag::new(terminals, nonterminals, start, initial, auxiliary)?,
        notes,
        pairs: pair.into_iter().collect(),
    })
}
