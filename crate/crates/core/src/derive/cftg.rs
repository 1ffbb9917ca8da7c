use std::collections::{BTreeSet, HashMap, HashSet};
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use crate::grammar::{classify, Cftg, CftgRule, Rtg};
use crate::symbol::{Symbol, Word};
use crate::tree::{monadic_tree_to_string, Label, Term, TermError, Variable};

use rayon::prelude::*;

use super::{sort_trees, BoundedLanguage, Bounds, DeriveError};

/// How a terminal tree of a grammar is read as a string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StringReading {
    /// Monadic trees `a1(a2(…(eps)))` read as `a1 a2 …`.
    Monadic,
    /// Left-to-right leaves, `eps` dropped.
    Yield,
}

impl StringReading {
    pub fn of(g: &Cftg) -> Self {
        if classify(g).is_monadic_terminals {
            StringReading::Monadic
        } else {
            StringReading::Yield
        }
    }

    pub fn read(self, t: &Term) -> Result<Word, TermError> {
        match self {
            StringReading::Monadic => monadic_tree_to_string(t),
            StringReading::Yield => t.yield_word(),
        }
    }
}

/// All trees reachable from `t` in one step, rewriting any nonterminal
/// occurrence with any of its rules.
pub fn cftg_step(g: &Cftg, t: &Term) -> Result<BTreeSet<Term>, DeriveError> {
    t.validate(g.alphabet(), 0)?;
    Ok(raw_successors(g, t).into_iter().collect())
}

fn raw_successors(g: &Cftg, t: &Term) -> Vec<Term> {
    let mut out = Vec::new();
    for (path, node) in t.nodes() {
        let Some(f) = node.symbol() else { continue };
        if !g.is_nonterminal(f) {
            continue;
        }
        for r in g.rules_for(f) {
            let rhs = &g.rules()[r].rhs;
            out.push(t.replace_at(&path, |n| rhs.substitute_unchecked(n.children())));
        }
    }
    out
}

/// Measures of a context that only grow under substitution. `size` is what
/// the enumeration is ordered and cut by; `letters` counts the string
/// reading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Weight {
    size: usize,
    letters: usize,
}

impl Weight {
    const ZERO: Weight = Weight {
        size: 0,
        letters: 0,
    };

    fn plus(self, o: Weight) -> Weight {
        Weight {
            size: self.size + o.size,
            letters: self.letters + o.letters,
        }
    }
}

/// A set of contexts with their weights, sorted by weight.
type Weighted<C> = Vec<(C, Weight)>;

/// Contexts derivable from `F(x1, …, xm)`, with the variables standing for
/// whatever the arguments derive. Substituting into a context never makes
/// it smaller, so contexts exceeding the bounds can be dropped early.
trait Contexts: Sync {
    type C: Clone + Ord + Hash + Send + Sync;

    fn limit(&self) -> Weight;

    /// Records that a context within the letter limit was dropped for size.
    fn size_cut(&self);

    fn var(&self, index: usize) -> (Self::C, Weight);

    /// Weight a terminal node adds to its children.
    fn node_weight(&self, symbol: &Symbol, rank: usize) -> Weight;

    fn build(&self, symbol: &Symbol, children: Vec<Self::C>) -> Self::C;

    /// Variable indices of `c` in left-to-right order of occurrence.
    fn occurrences(&self, c: &Self::C) -> Vec<usize>;

    /// Every way of replacing the k-th variable occurrence, independently,
    /// by a member of `occ[k]`.
    fn substitute(&self, c: &Self::C, occ: &[&Weighted<Self::C>]) -> Weighted<Self::C>;
}

fn is_letter(reading: StringReading, s: &Symbol, rank: usize) -> bool {
    !s.is_epsilon()
        && match reading {
            StringReading::Monadic => rank == 1,
            StringReading::Yield => rank == 0,
        }
}

/// All combinations of one member per list within the limit, starting from
/// `base`. Lists must be sorted by weight, which lets a scan stop at the
/// first member that is too large.
fn product<A: Contexts>(
    alg: &A,
    lists: &[&Weighted<A::C>],
    base: Weight,
) -> Vec<(Vec<A::C>, Weight)> {
    let limit = alg.limit();
    if base.size > limit.size || base.letters > limit.letters {
        if base.letters <= limit.letters {
            alg.size_cut();
        }
        return Vec::new();
    }
    let mut acc: Vec<(Vec<A::C>, Weight)> = vec![(Vec::new(), base)];
    for list in lists {
        let mut next = Vec::new();
        for (prefix, w) in &acc {
            for (item, iw) in list.iter() {
                let total = w.plus(*iw);
                if total.size > limit.size {
                    if total.letters <= limit.letters {
                        alg.size_cut();
                    }
                    break;
                }
                if total.letters > limit.letters {
                    continue;
                }
                let mut v = Vec::with_capacity(lists.len());
                v.extend(prefix.iter().cloned());
                v.push(item.clone());
                next.push((v, total));
            }
        }
        acc = next;
        if acc.is_empty() {
            break;
        }
    }
    acc
}

fn sorted<C: Ord>(mut v: Weighted<C>) -> Weighted<C> {
    v.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    v.dedup_by(|a, b| a.0 == b.0);
    v
}

/// A context tree with shared subtrees, so that building and copying
/// contexts does not copy whole trees. Caches its hash and weight.
#[derive(Clone)]
struct Shared(Arc<SharedNode>);

struct SharedNode {
    hash: u64,
    weight: Weight,
    ground: bool,
    label: Label,
    children: Vec<Shared>,
}

impl Shared {
    fn new(label: Label, children: Vec<Shared>, own: Weight) -> Self {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        label.hash(&mut h);
        let mut weight = own;
        let mut ground = matches!(label, Label::Sym(_));
        for c in &children {
            c.0.hash.hash(&mut h);
            weight = weight.plus(c.0.weight);
            ground &= c.0.ground;
        }
        Shared(Arc::new(SharedNode {
            hash: h.finish(),
            weight,
            ground,
            label,
            children,
        }))
    }

    fn to_term(&self) -> Term {
        Term::new(
            self.0.label.clone(),
            self.0.children.iter().map(Shared::to_term).collect(),
        )
    }
}

impl PartialEq for Shared {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0)
            || (self.0.hash == o.0.hash
                && self.0.label == o.0.label
                && self.0.children == o.0.children)
    }
}

impl Eq for Shared {}

impl Hash for Shared {
    fn hash<H: Hasher>(&self, h: &mut H) {
        h.write_u64(self.0.hash);
    }
}

impl PartialOrd for Shared {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Shared {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        if Arc::ptr_eq(&self.0, &o.0) {
            return std::cmp::Ordering::Equal;
        }
        (&self.0.label, &self.0.children).cmp(&(&o.0.label, &o.0.children))
    }
}

/// Terminal contexts as trees, bounded by node count and letters.
struct TreeContexts {
    reading: StringReading,
    bounds: Bounds,
    cut: AtomicBool,
}

impl Contexts for TreeContexts {
    type C = Shared;

    fn limit(&self) -> Weight {
        Weight {
            size: self.bounds.max_tree_size,
            letters: self.bounds.max_string_len,
        }
    }

    fn size_cut(&self) {
        self.cut.store(true, Ordering::Relaxed);
    }

    fn var(&self, index: usize) -> (Shared, Weight) {
        let w = Weight {
            size: 1,
            letters: 0,
        };
        (
            Shared::new(Label::Var(Variable::new(index)), Vec::new(), w),
            w,
        )
    }

    fn node_weight(&self, symbol: &Symbol, rank: usize) -> Weight {
        Weight {
            size: 1,
            letters: usize::from(is_letter(self.reading, symbol, rank)),
        }
    }

    fn build(&self, symbol: &Symbol, children: Vec<Shared>) -> Shared {
        let own = self.node_weight(symbol, children.len());
        Shared::new(Label::Sym(symbol.clone()), children, own)
    }

    fn occurrences(&self, c: &Shared) -> Vec<usize> {
        fn walk(t: &Shared, out: &mut Vec<usize>) {
            if t.0.ground {
                return;
            }
            match &t.0.label {
                Label::Var(v) => out.push(v.index()),
                Label::Sym(_) => t.0.children.iter().for_each(|k| walk(k, out)),
            }
        }
        let mut out = Vec::new();
        walk(c, &mut out);
        out
    }

    fn substitute(&self, c: &Shared, occ: &[&Weighted<Shared>]) -> Weighted<Shared> {
        self.substitute_from(c, occ, &mut 0)
    }
}

impl TreeContexts {
    fn substitute_from(
        &self,
        c: &Shared,
        occ: &[&Weighted<Shared>],
        next: &mut usize,
    ) -> Weighted<Shared> {
        if c.0.ground {
            return vec![(c.clone(), c.0.weight)];
        }
        match &c.0.label {
            Label::Var(_) => {
                *next += 1;
                occ[*next - 1].clone()
            }
            Label::Sym(s) => {
                let lists: Vec<Weighted<Shared>> =
                    c.0.children
                        .iter()
                        .map(|k| self.substitute_from(k, occ, next))
                        .collect();
                let refs: Vec<&Weighted<Shared>> = lists.iter().collect();
                let base = self.node_weight(s, c.0.children.len());
                sorted(
                    product(self, &refs, base)
                        .into_iter()
                        .map(|(children, w)| (self.build(s, children), w))
                        .collect(),
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Item {
    Letter(Symbol),
    Var(usize),
}

/// Terminal contexts read as strings over letters and variables, bounded by
/// letters only. Exact for linear grammars, whose contexts never repeat a
/// variable, because the reading commutes with substitution.
struct StringContexts {
    reading: StringReading,
    max_len: usize,
}

impl Contexts for StringContexts {
    type C = Vec<Item>;

    fn limit(&self) -> Weight {
        Weight {
            size: self.max_len,
            letters: self.max_len,
        }
    }

    fn size_cut(&self) {}

    fn var(&self, index: usize) -> (Vec<Item>, Weight) {
        (vec![Item::Var(index)], Weight::ZERO)
    }

    fn node_weight(&self, symbol: &Symbol, rank: usize) -> Weight {
        let n = usize::from(is_letter(self.reading, symbol, rank));
        Weight {
            size: n,
            letters: n,
        }
    }

    fn build(&self, symbol: &Symbol, children: Vec<Vec<Item>>) -> Vec<Item> {
        let mut out = Vec::new();
        if is_letter(self.reading, symbol, children.len()) {
            out.push(Item::Letter(symbol.clone()));
        }
        out.extend(children.into_iter().flatten());
        out
    }

    fn occurrences(&self, c: &Vec<Item>) -> Vec<usize> {
        c.iter()
            .filter_map(|i| match i {
                Item::Var(v) => Some(*v),
                Item::Letter(_) => None,
            })
            .collect()
    }

    fn substitute(&self, c: &Vec<Item>, occ: &[&Weighted<Vec<Item>>]) -> Weighted<Vec<Item>> {
        let one = Weight {
            size: 1,
            letters: 1,
        };
        let letters: Vec<Weighted<Vec<Item>>> = c
            .iter()
            .filter_map(|i| match i {
                Item::Letter(_) => Some(vec![(vec![i.clone()], one)]),
                Item::Var(_) => None,
            })
            .collect();
        let (mut l, mut v) = (letters.iter(), occ.iter());
        let lists: Vec<&Weighted<Vec<Item>>> = c
            .iter()
            .map(|i| match i {
                Item::Letter(_) => l.next().expect("one list per letter"),
                Item::Var(_) => *v.next().expect("one list per occurrence"),
            })
            .collect();
        sorted(
            product(self, &lists, Weight::ZERO)
                .into_iter()
                .map(|(parts, w)| (parts.concat(), w))
                .collect(),
        )
    }
}

struct Solution<C> {
    start: Vec<C>,
    converged: bool,
}

/// Contexts of one nonterminal (or rule subterm), split into those known
/// before the last round and those it added.
struct Split<C> {
    old: Weighted<C>,
    fresh: Weighted<C>,
}

impl<C: Clone + Ord> Split<C> {
    fn all(&self) -> Weighted<C> {
        merge(&self.old, &self.fresh)
    }
}

fn merge<C: Clone + Ord>(a: &Weighted<C>, b: &Weighted<C>) -> Weighted<C> {
    let key = |x: &(C, Weight)| (x.1, x.0.clone());
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if key(&a[i]) <= key(&b[j]) {
            out.push(a[i].clone());
            i += 1;
        } else {
            out.push(b[j].clone());
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// A nonterminal's contexts with a membership index.
type Known<C> = (Split<C>, HashSet<C>);

/// What a rule subterm has produced so far, mirroring the subterm's shape.
struct Node<C> {
    all: Weighted<C>,
    members: HashSet<C>,
    children: Vec<Node<C>>,
}

impl<C> Node<C> {
    fn of(t: &Term) -> Self {
        Node {
            all: Vec::new(),
            members: HashSet::new(),
            children: t.children().iter().map(Node::of).collect(),
        }
    }
}

impl<C: Clone + Ord + Hash> Node<C> {
    fn absorb(&mut self, fresh: &Weighted<C>) {
        self.all = merge(&self.all, fresh);
        self.members.extend(fresh.iter().map(|(c, _)| c.clone()));
    }
}

/// Least fixpoint of the context sets, one round per derivation level.
///
/// Evaluation is semi-naive: every rule subterm remembers what it produced,
/// and a round only builds combinations involving something new from the
/// previous round. Rules only read the previous round's sets, so parallel
/// evaluation gives the same result.
fn solve<A: Contexts>(g: &Cftg, alg: &A, max_steps: usize, workers: usize) -> Solution<A::C> {
    let pool = (workers > 1)
        .then(|| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .ok()
        })
        .flatten();
    let mut sets: HashMap<Symbol, Known<A::C>> = g
        .nonterminals()
        .symbols()
        .map(|s| {
            let split = Split {
                old: Vec::new(),
                fresh: Vec::new(),
            };
            (s.clone(), (split, HashSet::new()))
        })
        .collect();
    let mut nodes: Vec<Node<A::C>> = g.rules().iter().map(|r| Node::of(&r.rhs)).collect();
    let mut converged = false;
    for _ in 0..max_steps {
        let views: HashMap<Symbol, &Split<A::C>> =
            sets.iter().map(|(s, (v, _))| (s.clone(), v)).collect();
        let step = |(node, rule): (&mut Node<A::C>, &CftgRule)| {
            let fresh = eval(g, alg, node, &rule.rhs, &views);
            node.absorb(&fresh);
            fresh
        };
        let results: Vec<Weighted<A::C>> = match &pool {
            Some(pool) => pool.install(|| {
                nodes
                    .par_iter_mut()
                    .zip(g.rules().par_iter())
                    .map(step)
                    .collect()
            }),
            None => nodes.iter_mut().zip(g.rules().iter()).map(step).collect(),
        };
        drop(views);
        let mut found: HashMap<&Symbol, Weighted<A::C>> = HashMap::new();
        for (rule, fresh) in g.rules().iter().zip(results) {
            found.entry(&rule.lhs).or_default().extend(fresh);
        }
        let mut changed = false;
        for (s, (split, members)) in sets.iter_mut() {
            let new: Weighted<A::C> = found
                .remove(s)
                .map(sorted)
                .unwrap_or_default()
                .into_iter()
                .filter(|(c, _)| !members.contains(c))
                .collect();
            changed |= !new.is_empty();
            members.extend(new.iter().map(|(c, _)| c.clone()));
            split.old = split.all();
            split.fresh = new;
        }
        if !changed {
            converged = true;
            break;
        }
    }
    let start = sets
        .remove(g.start())
        .map(|(split, _)| split.all().into_iter().map(|(c, _)| c).collect())
        .unwrap_or_default();
    Solution { start, converged }
}

/// Contexts `t` derives this round that it had not derived before. Children
/// record their own new contexts once the combinations are built.
fn eval<A: Contexts>(
    g: &Cftg,
    alg: &A,
    node: &mut Node<A::C>,
    t: &Term,
    views: &HashMap<Symbol, &Split<A::C>>,
) -> Weighted<A::C> {
    let first = node.members.is_empty();
    let s = match t.label() {
        Label::Var(v) => {
            return if first {
                vec![alg.var(v.index())]
            } else {
                Vec::new()
            };
        }
        Label::Sym(s) => s,
    };
    let args: Vec<Split<A::C>> = node
        .children
        .iter_mut()
        .zip(t.children())
        .map(|(n, c)| Split {
            fresh: eval(g, alg, n, c, views),
            old: Vec::new(),
        })
        .collect();
    // Borrow the children's history as the old part instead of copying it.
    let olds: Vec<&Weighted<A::C>> = node.children.iter().map(|n| &n.all).collect();
    let alls: Vec<Weighted<A::C>> = olds
        .iter()
        .zip(&args)
        .map(|(o, a)| merge(o, &a.fresh))
        .collect();
    let mut found: Weighted<A::C> = Vec::new();
    if g.is_nonterminal(s) {
        let view = views[s];
        for (c, _) in &view.fresh {
            let occ: Vec<&Weighted<A::C>> =
                alg.occurrences(c).iter().map(|v| &alls[v - 1]).collect();
            found.extend(alg.substitute(c, &occ));
        }
        for (c, _) in &view.old {
            let vars = alg.occurrences(c);
            for (k, v) in vars.iter().enumerate() {
                if args[v - 1].fresh.is_empty() {
                    continue;
                }
                let occ: Vec<&Weighted<A::C>> = vars
                    .iter()
                    .enumerate()
                    .map(|(i, u)| match i.cmp(&k) {
                        std::cmp::Ordering::Less => olds[u - 1],
                        std::cmp::Ordering::Equal => &args[u - 1].fresh,
                        std::cmp::Ordering::Greater => &alls[u - 1],
                    })
                    .collect();
                found.extend(alg.substitute(c, &occ));
            }
        }
    } else {
        let base = alg.node_weight(s, args.len());
        let mut combos = Vec::new();
        if args.is_empty() {
            if first {
                combos = product(alg, &[], base);
            }
        } else {
            for k in 0..args.len() {
                if args[k].fresh.is_empty() {
                    continue;
                }
                let lists: Vec<&Weighted<A::C>> = (0..args.len())
                    .map(|i| match i.cmp(&k) {
                        std::cmp::Ordering::Less => olds[i],
                        std::cmp::Ordering::Equal => &args[i].fresh,
                        std::cmp::Ordering::Greater => &alls[i],
                    })
                    .collect();
                combos.extend(product(alg, &lists, base));
            }
        }
        found = combos
            .into_iter()
            .map(|(children, w)| (alg.build(s, children), w))
            .collect();
    }
    for (n, a) in node.children.iter_mut().zip(&args) {
        n.absorb(&a.fresh);
    }
    sorted(found)
        .into_iter()
        .filter(|(c, _)| !node.members.contains(c))
        .collect()
}

/// Terminal trees of size at most `max_tree_size` whose string reading has
/// length at most `max_string_len`, in unrestricted derivation mode.
/// `max_steps` bounds the derivation levels; `workers > 1` evaluates rules
/// in parallel with an identical result.
pub fn cftg_enumerate_with(g: &Cftg, bounds: Bounds, workers: usize) -> BoundedLanguage<Term> {
    let alg = TreeContexts {
        reading: StringReading::of(g),
        bounds,
        cut: AtomicBool::new(false),
    };
    let sol = solve(g, &alg, bounds.max_steps, workers);
    let mut items: Vec<Term> = sol.start.iter().map(Shared::to_term).collect();
    sort_trees(&mut items);
    BoundedLanguage {
        items,
        bounds,
        complete_up_to: sol.converged.then_some(bounds.max_tree_size),
    }
}

pub fn cftg_enumerate(g: &Cftg, bounds: Bounds) -> BoundedLanguage<Term> {
    cftg_enumerate_with(g, bounds, 1)
}

/// Strings of length at most `max_string_len` under the grammar's reading.
///
/// Linear grammars are solved on strings directly and the tree-size bound
/// plays no part. Otherwise the trees under `bounds` are read, and the
/// result is complete only when no tree within the string bound was cut by
/// the size bound.
pub fn cftg_strings(g: &Cftg, bounds: Bounds, workers: usize) -> BoundedLanguage<Word> {
    let reading = StringReading::of(g);
    let linear = classify(g).all_rules_linear;
    let (words, complete): (BTreeSet<Word>, bool) = if linear {
        let alg = StringContexts {
            reading,
            max_len: bounds.max_string_len,
        };
        let sol = solve(g, &alg, bounds.max_steps, workers);
        let words = sol
            .start
            .into_iter()
            .map(|items| {
                Word::new(
                    items
                        .into_iter()
                        .map(|i| match i {
                            Item::Letter(s) => s,
                            Item::Var(_) => unreachable!("start contexts are ground"),
                        })
                        .collect(),
                )
            })
            .collect();
        (words, sol.converged)
    } else {
        let alg = TreeContexts {
            reading,
            bounds,
            cut: AtomicBool::new(false),
        };
        let sol = solve(g, &alg, bounds.max_steps, workers);
        let words = sol
            .start
            .iter()
            .map(|t| {
                reading
                    .read(&t.to_term())
                    .expect("terminal trees have a reading")
            })
            .collect();
        (words, sol.converged && !alg.cut.load(Ordering::Relaxed))
    };
    let bounds = if linear {
        Bounds {
            max_tree_size: usize::MAX,
            ..bounds
        }
    } else {
        bounds
    };
    BoundedLanguage {
        items: words.into_iter().collect(),
        bounds,
        complete_up_to: complete.then_some(bounds.max_string_len),
    }
}

pub fn rtg_enumerate(g: &Rtg, bounds: Bounds) -> BoundedLanguage<Term> {
    cftg_enumerate(g.as_cftg(), bounds)
}

pub fn rtg_enumerate_with(g: &Rtg, bounds: Bounds, workers: usize) -> BoundedLanguage<Term> {
    cftg_enumerate_with(g.as_cftg(), bounds, workers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::format::parse_grammar;
    use crate::grammar::Grammar;

    fn cftg(src: &str) -> Cftg {
        match parse_grammar(src).unwrap() {
            Grammar::Cftg(g) => g,
            other => panic!("not a cftg: {other:?}"),
        }
    }

    const COUNTING_CFTG: &str = "%kind cftg
%terminals a:0 b:0 c:0 d:0 S:3
%nonterminals S':0 Sbar:1
%start S'
S' -> Sbar(eps)
Sbar(x1) -> x1
Sbar(x1) -> S(a, Sbar(S(b, x1, c)), d)
";

    #[test]
    fn one_step() {
        let g = cftg(COUNTING_CFTG);
        let next = cftg_step(&g, &"Sbar(eps)".parse().unwrap()).unwrap();
        let shown: Vec<String> = next.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["S(a, Sbar(S(b, eps, c)), d)", "eps"]);
        assert!(cftg_step(&g, &"Sbar(eps, eps)".parse().unwrap()).is_err());
        assert!(cftg_step(&g, &"S(a, b, c)".parse().unwrap())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn counting_language_trees() {
        let g = cftg(COUNTING_CFTG);
        let lang = cftg_enumerate(&g, Bounds::trees(17));
        let words: Vec<String> = lang
            .iter()
            .map(|t| t.yield_word().unwrap().to_string())
            .collect();
        assert_eq!(words, ["", "abcd", "aabbccdd"]);
        assert_eq!(lang.complete_up_to, Some(17));
        let sizes: Vec<usize> = lang.iter().map(Term::size).collect();
        assert_eq!(sizes, [1, 7, 13]);
    }

    #[test]
    fn deleting_rules_stay_finite() {
        // Arguments grow forever but are only kept by the second rule.
        let g = cftg(
            "%kind cftg
%terminals h:1 a:0 e:0
%nonterminals S F:1 G:1
%start S
S -> F(e)
F(x1) -> G(h(x1))
G(x1) -> F(h(x1))
F(x1) -> a
G(x1) -> x1
",
        );
        let lang = cftg_enumerate(&g, Bounds::trees(6));
        assert!(lang.is_complete());
        let shown: Vec<String> = lang.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["a", "h(e)", "h(h(h(e)))", "h(h(h(h(h(e)))))"]);
    }

    #[test]
    fn workers_agree() {
        let g = cftg(COUNTING_CFTG);
        let b = Bounds::trees(31);
        assert_eq!(cftg_enumerate_with(&g, b, 1), cftg_enumerate_with(&g, b, 4));
    }

    #[test]
    fn step_limit_is_reported() {
        let g = cftg(COUNTING_CFTG);
        let lang = cftg_enumerate(&g, Bounds::trees(31).with_steps(2));
        assert_eq!(lang.complete_up_to, None);
        assert_eq!(lang.len(), 1);
    }

    #[test]
    fn unproductive_start_is_empty() {
        let g = cftg(
            "%kind cftg
%terminals a:1
%nonterminals S F:1
%start S
S -> F(eps)
F(x1) -> F(a(x1))
",
        );
        let lang = cftg_enumerate(&g, Bounds::trees(10));
        assert!(lang.is_empty());
        assert!(lang.is_complete());
    }

    #[test]
    fn string_length_bound_uses_reading() {
        let g = cftg(
            "%kind cftg
%terminals a:1 b:1
%nonterminals S A:1
%start S
S -> A(eps)
A(x1) -> a(A(b(x1)))
A(x1) -> x1
",
        );
        assert_eq!(StringReading::of(&g), StringReading::Monadic);
        let lang = cftg_enumerate(&g, Bounds::trees(100).with_string_len(4));
        let words: Vec<String> = lang
            .iter()
            .map(|t| StringReading::Monadic.read(t).unwrap().to_string())
            .collect();
        assert_eq!(words, ["", "ab", "aabb"]);
    }

    #[test]
    fn linear_strings_ignore_tree_size() {
        let g = cftg(COUNTING_CFTG);
        let tight = cftg_strings(&g, Bounds::trees(14).with_string_len(12), 1);
        let words: Vec<String> = tight.iter().map(ToString::to_string).collect();
        assert_eq!(words, ["", "abcd", "aabbccdd", "aaabbbcccddd"]);
        assert_eq!(tight.complete_up_to, Some(12));
    }

    #[test]
    fn copying_strings_track_size_cuts() {
        let g = cftg(
            "%kind cftg
%terminals a:0 f:2 g:1
%nonterminals S F:1
%start S
S -> F(a)
F(x1) -> f(x1, x1)
F(x1) -> F(g(x1))
",
        );
        let lang = cftg_strings(&g, Bounds::trees(9).with_string_len(4), 1);
        let words: Vec<String> = lang.iter().map(ToString::to_string).collect();
        assert_eq!(words, ["aa"]);
        assert_eq!(lang.complete_up_to, None);
        let trees = cftg_enumerate(&g, Bounds::trees(7));
        let shown: Vec<String> = trees.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["f(a, a)", "f(g(a), g(a))", "f(g(g(a)), g(g(a)))"]);
        assert!(trees.is_complete());
    }

    #[test]
    fn erasing_cycles_converge() {
        // Every string over a and b, through unit and empty cycles.
        let g = cftg(
            "%kind cftg
%terminals a:1 b:1
%nonterminals S0 S:1
%start S0
S0 -> S(eps)
S(x1) -> S(S(x1))
S(x1) -> S(x1)
S(x1) -> x1
S(x1) -> a(x1)
S(x1) -> b(x1)
",
        );
        let lang = cftg_strings(&g, Bounds::trees(1).with_string_len(8), 4);
        assert_eq!(lang.len(), 511);
        assert!(lang.is_complete());
    }
}
