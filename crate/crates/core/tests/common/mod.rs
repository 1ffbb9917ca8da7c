//! Seeded grammar generators, brute-force oracles and property strategies
//! shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treegram::{
    CfgRule, Cftg, CftgRule, Grammar, Label, RankedAlphabet, Rtg, RtgRule, StringCfg, Symbol, Term,
    Variable, Word,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn corpus(name: &str) -> Grammar {
    let path = format!("{}/corpus/{name}", env!("CARGO_MANIFEST_DIR"));
    let src = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    treegram::parse_grammar(&src).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn corpus_path(name: &str) -> String {
    format!("{}/corpus/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn strings<'a>(words: impl IntoIterator<Item = &'a Word>) -> BTreeSet<String> {
    words.into_iter().map(ToString::to_string).collect()
}

fn sym(s: &str) -> Symbol {
    Symbol::new(s)
}

const NONTERMINALS: [&str; 4] = ["S", "A", "B", "C"];

/// At most 4 nonterminals, 8 rules and right-hand sides of length 4 over `a`
/// and `b`. Every nonterminal gets at least one rule.
pub fn random_cfg(rng: &mut ChaCha8Rng) -> StringCfg {
    let n = rng.gen_range(1..=4);
    let nts = &NONTERMINALS[..n];
    let count = rng.gen_range(n..=8);
    let mut rules = Vec::new();
    for i in 0..count {
        let lhs = if i < n {
            nts[i]
        } else {
            *nts.choose(rng).unwrap()
        };
        let len = rng.gen_range(0..=4);
        let rhs = (0..len)
            .map(|_| {
                if rng.gen_bool(0.55) {
                    sym(["a", "b"].choose(rng).unwrap())
                } else {
                    sym(nts.choose(rng).unwrap())
                }
            })
            .collect();
        rules.push(CfgRule::new(lhs, rhs));
    }
    StringCfg::new(nts.iter().map(|s| sym(s)), [sym("a"), sym("b")], "S", rules)
        .expect("generated cfg")
}

/// Right-linear: up to three letters, then at most one nonterminal. Rules
/// are distinct so that round trips compare rule lists directly.
pub fn random_right_linear_cfg(rng: &mut ChaCha8Rng) -> StringCfg {
    let n = rng.gen_range(1..=3);
    let nts = &NONTERMINALS[..n];
    let count = rng.gen_range(n..=6);
    let mut rules: Vec<CfgRule> = Vec::new();
    let mut i = 0;
    while rules.len() < count {
        let lhs = if i < n {
            nts[i]
        } else {
            *nts.choose(rng).unwrap()
        };
        i += 1;
        let mut rhs: Vec<Symbol> = (0..rng.gen_range(0..=3))
            .map(|_| sym(["a", "b", "c"].choose(rng).unwrap()))
            .collect();
        if rng.gen_bool(0.6) {
            rhs.push(sym(nts.choose(rng).unwrap()));
        }
        let rule = CfgRule::new(lhs, rhs);
        if !rules.contains(&rule) {
            rules.push(rule);
        }
    }
    StringCfg::new(
        nts.iter().map(|s| sym(s)),
        [sym("a"), sym("b"), sym("c")],
        "S",
        rules,
    )
    .expect("generated right-linear cfg")
}

fn random_term(rng: &mut ChaCha8Rng, pool: &[(&str, usize)], hole: bool, depth: usize) -> Term {
    let leaves: Vec<&(&str, usize)> = pool.iter().filter(|(_, r)| *r == 0).collect();
    if hole && rng.gen_bool(0.3) {
        return Term::var(1);
    }
    let (name, rank) = if depth == 0 {
        **leaves.choose(rng).unwrap()
    } else {
        *pool.choose(rng).unwrap()
    };
    let children = (0..rank)
        .map(|_| {
            let inner = hole && rng.gen_bool(0.5);
            random_term(rng, pool, inner, depth.saturating_sub(1))
        })
        .collect();
    Term::app(name, children)
}

fn count_var(t: &Term) -> usize {
    t.variable_counts().values().sum()
}

fn has_label(t: &Term, names: &[&str]) -> bool {
    t.nodes()
        .iter()
        .any(|(_, n)| n.symbol().is_some_and(|s| names.contains(&s.as_str())))
}

/// Linear CFTG with at most three nonterminals of rank at most one and
/// right-hand sides of at most six nodes. Rank-one rules use `x1` exactly
/// once; a right-hand side mentioning a nonterminal also carries a letter
/// unless it is the bare `x1`.
pub fn random_linear_monadic_cftg(rng: &mut ChaCha8Rng) -> Cftg {
    let terminals = [("a", 0), ("b", 0), ("c", 0), ("f", 2), ("g", 1)];
    let k = rng.gen_range(1..=2);
    let extra: Vec<(&str, usize)> = [("F", 1), ("G", 1), ("A", 0)]
        .choose_multiple(rng, k)
        .copied()
        .collect();
    let mut nts = vec![("S", 0)];
    nts.extend(extra);
    let names: Vec<&str> = nts.iter().map(|(n, _)| *n).collect();
    let mut pool: Vec<(&str, usize)> = terminals.to_vec();
    pool.extend(nts.iter().copied());
    pool.push(("eps", 0));

    let mut rules = Vec::new();
    let count = rng.gen_range(nts.len()..=nts.len() + 3);
    for i in 0..count {
        let (lhs, rank) = if i < nts.len() {
            nts[i]
        } else {
            *nts.choose(rng).unwrap()
        };
        let rhs = loop {
            let t = if rank == 1 && rng.gen_bool(0.15) {
                Term::var(1)
            } else {
                random_term(rng, &pool, rank == 1, 3)
            };
            let letters = has_label(&t, &["a", "b", "c"]);
            let ok = t.size() <= 6
                && count_var(&t) == rank
                && (t.variable().is_some() || !has_label(&t, &names) || letters)
                && t != Term::app(lhs, vec![Term::var(1)]);
            if ok {
                break t;
            }
        };
        rules.push(CftgRule::new(lhs, rhs));
    }
    let t = RankedAlphabet::new(terminals).unwrap();
    let n = RankedAlphabet::new(nts).unwrap();
    Cftg::new(t, n, "S", rules).expect("generated cftg")
}

/// At most three rank-0 nonterminals, terminals of rank at most three and
/// right-hand sides of at most five nodes.
pub fn random_rtg(rng: &mut ChaCha8Rng) -> Rtg {
    let terminals = [("a", 0), ("b", 0), ("g", 1), ("f", 2), ("h", 3)];
    let n = rng.gen_range(1..=3);
    let nts: Vec<(&str, usize)> = NONTERMINALS[..n].iter().map(|s| (*s, 0)).collect();
    let mut pool: Vec<(&str, usize)> = terminals.to_vec();
    pool.extend(nts.iter().copied());
    pool.push(("eps", 0));
    let count = rng.gen_range(n..=6);
    let mut rules = Vec::new();
    for i in 0..count {
        let lhs = if i < n {
            nts[i].0
        } else {
            nts.choose(rng).unwrap().0
        };
        let rhs = loop {
            let t = random_term(rng, &pool, false, 2);
            if t.size() <= 5 && t != Term::sym(lhs) {
                break t;
            }
        };
        rules.push(RtgRule::new(lhs, rhs));
    }
    Rtg::new(
        RankedAlphabet::new(terminals).unwrap(),
        nts.iter().map(|(s, _)| sym(s)),
        "S",
        rules,
    )
    .expect("generated rtg")
}

/// A rule of a weighted string grammar: `lhs -> items` at `cost`.
pub struct WeightedRule {
    pub lhs: Symbol,
    pub items: Vec<Item>,
    pub cost: usize,
}

#[derive(Clone, PartialEq, Eq)]
pub enum Item {
    Letter(Symbol),
    Nonterminal(Symbol),
}

/// Cheapest derivation of `word` from `start`, by a fixpoint over spans.
/// `None` when the word is not derivable.
#[allow(clippy::needless_range_loop)]
pub fn min_cost(rules: &[WeightedRule], start: &Symbol, word: &[Symbol]) -> Option<usize> {
    let n = word.len();
    let mut best: BTreeMap<(Symbol, usize, usize), usize> = BTreeMap::new();
    loop {
        let mut changed = false;
        for r in rules {
            for i in 0..=n {
                for j in i..=n {
                    // reach[k][p]: cheapest cover of word[i..p] by items[..k].
                    let mut reach = vec![vec![None::<usize>; n + 1]; r.items.len() + 1];
                    reach[0][i] = Some(0);
                    for (k, item) in r.items.iter().enumerate() {
                        for p in i..=j {
                            let Some(c) = reach[k][p] else { continue };
                            match item {
                                Item::Letter(a) => {
                                    if p < j && word[p] == *a {
                                        let e = &mut reach[k + 1][p + 1];
                                        *e = Some(e.map_or(c, |x| x.min(c)));
                                    }
                                }
                                Item::Nonterminal(b) => {
                                    for q in p..=j {
                                        if let Some(&s) = best.get(&(b.clone(), p, q)) {
                                            let e = &mut reach[k + 1][q];
                                            *e = Some(e.map_or(c + s, |x| x.min(c + s)));
                                        }
                                    }
                                }
                            }
                        }
                    }
                    if let Some(c) = reach[r.items.len()][j] {
                        let total = c + r.cost;
                        let key = (r.lhs.clone(), i, j);
                        if best.get(&key).is_none_or(|&old| total < old) {
                            best.insert(key, total);
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            return best.get(&(start.clone(), 0, n)).copied();
        }
    }
}

pub fn cfg_weighted(g: &StringCfg) -> Vec<WeightedRule> {
    g.rules()
        .iter()
        .map(|r| WeightedRule {
            lhs: r.lhs.clone(),
            items: r
                .rhs
                .iter()
                .map(|s| {
                    if g.is_nonterminal(s) {
                        Item::Nonterminal(s.clone())
                    } else {
                        Item::Letter(s.clone())
                    }
                })
                .collect(),
            cost: 1,
        })
        .collect()
}

/// Each rule costs its terminal nodes, so the cost of a derivation is the
/// size of the tree it derives.
pub fn rtg_weighted(g: &Rtg) -> Vec<WeightedRule> {
    g.rules()
        .map(|r| {
            let mut items = Vec::new();
            let mut cost = 0;
            for (_, node) in r.rhs.nodes() {
                let s = node.symbol().expect("ground");
                if g.is_nonterminal(s) {
                    items.push(Item::Nonterminal(s.clone()));
                } else {
                    cost += 1;
                    if node.is_leaf() && !s.is_epsilon() {
                        items.push(Item::Letter(s.clone()));
                    }
                }
            }
            WeightedRule {
                lhs: r.lhs.clone(),
                items,
                cost,
            }
        })
        .collect()
}

/// All words over `letters` of length at most `max_len`.
pub fn all_words(letters: &[&str], max_len: usize) -> Vec<Vec<Symbol>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for a in letters {
                let mut v: Vec<Symbol> = w.clone();
                v.push(sym(a));
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

// Property strategies over a fixed ranked alphabet with variables x1..x3.

const TERM_ALPHABET: [(&str, usize); 6] =
    [("a", 0), ("b", 0), ("eps", 0), ("g", 1), ("f", 2), ("h", 3)];

pub fn term_alphabet() -> RankedAlphabet {
    RankedAlphabet::new(TERM_ALPHABET).unwrap()
}

fn leaf(vars: usize) -> BoxedStrategy<Term> {
    let consts = prop::sample::select(vec!["a", "b", "eps"]).prop_map(Term::sym);
    if vars == 0 {
        consts.boxed()
    } else {
        prop_oneof![consts, (1..=vars).prop_map(Term::var)].boxed()
    }
}

/// Terms over the test alphabet with variables among `x1..x_vars`.
pub fn term(vars: usize) -> BoxedStrategy<Term> {
    leaf(vars)
        .prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                inner.clone().prop_map(|t| Term::app("g", vec![t])),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Term::app("f", vec![l, r])),
                (inner.clone(), inner.clone(), inner)
                    .prop_map(|(a, b, c)| Term::app("h", vec![a, b, c])),
            ]
        })
        .boxed()
}

pub fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(vec!["a", "b", "c"]), 0..12)
        .prop_map(|v| Word::new(v.into_iter().map(Symbol::new).collect()))
}

/// Yield with variable leaves kept in place.
fn yield_with_vars(t: &Term) -> Vec<Label> {
    t.leaf_paths()
        .into_iter()
        .filter_map(|p| match p.last() {
            Some(Label::Sym(s)) if s.is_epsilon() => None,
            other => other.cloned(),
        })
        .collect()
}

pub fn identity_args(n: usize) -> Vec<Term> {
    (1..=n).map(Term::var).collect()
}

pub fn prop_substitution_identity(t: &Term) -> Result<(), TestCaseError> {
    prop_assert_eq!(&t.substitute(&identity_args(3)).unwrap(), t);
    Ok(())
}

pub fn prop_substitution_composition(
    t: &Term,
    s: &[Term],
    u: &[Term],
) -> Result<(), TestCaseError> {
    let left = t.substitute(s).unwrap().substitute(u).unwrap();
    let su: Vec<Term> = s.iter().map(|si| si.substitute(u).unwrap()).collect();
    let right = t.substitute(&su).unwrap();
    prop_assert_eq!(left, right);
    Ok(())
}

/// The yield of `t[s]` is the yield of `t` with every `x_i` replaced by the
/// yield of `s_i`.
pub fn prop_yield_homomorphism(t: &Term, s: &[Term]) -> Result<(), TestCaseError> {
    let got = t.substitute(s).unwrap().yield_word().unwrap();
    let mut expected = Vec::new();
    for item in yield_with_vars(t) {
        match item {
            Label::Var(v) => expected.extend(
                s[v.index() - 1]
                    .yield_word()
                    .unwrap()
                    .symbols()
                    .iter()
                    .map(ToString::to_string),
            ),
            Label::Sym(a) => expected.push(a.to_string()),
        }
    }
    let got: Vec<String> = got.symbols().iter().map(ToString::to_string).collect();
    prop_assert_eq!(got, expected);
    Ok(())
}

pub fn prop_iso_round_trip(w: &Word) -> Result<(), TestCaseError> {
    let alphabet = treegram::MonadicWordAlphabet::new(["a", "b", "c"]).unwrap();
    let t = treegram::string_to_monadic_tree(w, &alphabet).unwrap();
    prop_assert_eq!(t.size(), w.len() + 1);
    prop_assert_eq!(&treegram::monadic_tree_to_string(&t).unwrap(), w);
    prop_assert_eq!(
        treegram::string_to_monadic_tree(&treegram::monadic_tree_to_string(&t).unwrap(), &alphabet)
            .unwrap(),
        t
    );
    Ok(())
}

/// `is_linear` agrees with occurrence counting.
pub fn prop_linearity(t: &Term) -> Result<(), TestCaseError> {
    let counts = t.variable_counts();
    let all: BTreeSet<Variable> = (1..=3).map(Variable::new).collect();
    prop_assert_eq!(t.is_linear(&all), counts.values().all(|&c| c <= 1));
    for v in &all {
        let one: BTreeSet<Variable> = [*v].into();
        prop_assert_eq!(t.is_linear(&one), counts.get(v).copied().unwrap_or(0) <= 1);
    }
    Ok(())
}
