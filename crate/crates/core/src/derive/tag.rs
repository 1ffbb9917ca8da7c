use std::collections::{BTreeSet, HashMap};
use std::sync::atomic::{AtomicBool, Ordering};

use crate::grammar::{Constraint, Tag, TagLabel, TagTree};
use crate::symbol::{Symbol, Word};
use crate::tree::{Path, ShowPath, Tree};

use super::{explore, sort_trees, BoundedLanguage, Bounds, Cost, DeriveError, Search};

/// An auxiliary tree with its foot located once.
struct Prepared<'g> {
    tree: &'g TagTree,
    foot: Path,
    foot_constraint: Constraint,
}

fn prepare(g: &Tag) -> HashMap<Symbol, Vec<Prepared<'_>>> {
    let mut out: HashMap<Symbol, Vec<Prepared<'_>>> = HashMap::new();
    for aux in g.auxiliary_trees() {
        let foot = aux
            .foot_path()
            .expect("validated auxiliary tree has a foot");
        let foot_constraint = match aux.subtree(&foot).map(Tree::label) {
            Some(TagLabel::Nonterminal { constraint, .. }) => *constraint,
            _ => unreachable!("foot is a nonterminal"),
        };
        out.entry(aux.label().symbol().clone())
            .or_default()
            .push(Prepared {
                tree: aux,
                foot,
                foot_constraint,
            });
    }
    out
}

/// Adjoins `aux` at `path`: the subtree there moves to the foot and takes
/// over the foot's constraint.
fn adjoin(t: &TagTree, path: &[usize], aux: &Prepared<'_>) -> TagTree {
    t.replace_at(path, |below| {
        let (label, children) = below.clone().into_parts();
        let lowered = Tree::new(
            TagLabel::nonterminal(label.symbol().clone(), aux.foot_constraint),
            children,
        );
        aux.tree.replace_at(&aux.foot, |_| lowered)
    })
}

fn raw_successors(aux: &HashMap<Symbol, Vec<Prepared<'_>>>, t: &TagTree) -> Vec<TagTree> {
    let mut out = Vec::new();
    for (path, node) in t.nodes() {
        if !node.label().is_obligatory() {
            continue;
        }
        for a in aux.get(node.label().symbol()).into_iter().flatten() {
            out.push(adjoin(t, &path, a));
        }
    }
    out
}

fn check_tree(g: &Tag, t: &TagTree) -> Result<(), DeriveError> {
    for (path, node) in t.nodes() {
        let bad =
            |what: String| DeriveError::InvalidTagTree(format!("at {}: {what}", ShowPath(&path)));
        match node.label() {
            TagLabel::Terminal(s) => {
                if !s.is_epsilon() && !g.terminals().contains(s) {
                    return Err(bad(format!("undeclared terminal `{s}`")));
                }
                if !node.is_leaf() {
                    return Err(bad(format!("terminal `{s}` has children")));
                }
            }
            TagLabel::Nonterminal { symbol, foot, .. } => {
                if !g.nonterminals().contains(symbol) {
                    return Err(bad(format!("undeclared nonterminal `{symbol}`")));
                }
                if *foot {
                    return Err(bad("derived trees have no foot node".to_string()));
                }
            }
        }
    }
    Ok(())
}

/// All trees obtained by one adjunction at an obligatory node.
pub fn tag_step(g: &Tag, t: &TagTree) -> Result<BTreeSet<TagTree>, DeriveError> {
    check_tree(g, t)?;
    Ok(raw_successors(&prepare(g), t).into_iter().collect())
}

/// Minimum growth still needed before no obligatory node remains. Adjunction
/// never removes nodes, so the current size plus these costs bounds every
/// completion from below.
struct Analysis {
    min_size: HashMap<Symbol, Cost>,
    min_letters: HashMap<Symbol, Cost>,
}

fn letters(t: &TagTree) -> usize {
    t.nodes()
        .iter()
        .filter(|(_, n)| matches!(n.label(), TagLabel::Terminal(s) if !s.is_epsilon()))
        .count()
}

impl Analysis {
    fn new(g: &Tag) -> Self {
        let own = |w: fn(&TagTree) -> usize| -> HashMap<Symbol, Cost> {
            let mut mins: HashMap<Symbol, Cost> = g
                .nonterminals()
                .iter()
                .map(|s| (s.clone(), Cost::Infinite))
                .collect();
            loop {
                let mut changed = false;
                for aux in g.auxiliary_trees() {
                    let mut c = Cost::Finite(w(aux));
                    for (_, n) in aux.nodes() {
                        if n.label().is_obligatory() {
                            c = c.add(mins[n.label().symbol()]);
                        }
                    }
                    let cur = mins.get_mut(aux.label().symbol()).expect("declared root");
                    if c < *cur {
                        *cur = c;
                        changed = true;
                    }
                }
                if !changed {
                    return mins;
                }
            }
        };
        Analysis {
            // The foot is not a new node.
            min_size: own(|t| t.size() - 1),
            min_letters: own(letters),
        }
    }

    fn lower_bounds(&self, t: &TagTree) -> (Cost, Cost) {
        let mut size = Cost::Finite(t.size());
        let mut lets = Cost::Finite(letters(t));
        for (_, n) in t.nodes() {
            if n.label().is_obligatory() {
                size = size.add(self.min_size[n.label().symbol()]);
                lets = lets.add(self.min_letters[n.label().symbol()]);
            }
        }
        (size, lets)
    }
}

struct TagSearch<'g> {
    aux: HashMap<Symbol, Vec<Prepared<'g>>>,
    analysis: Analysis,
    bounds: Bounds,
    size_cut: AtomicBool,
}

impl Search for TagSearch<'_> {
    type Form = TagTree;

    fn successors(&self, form: &TagTree) -> Vec<TagTree> {
        raw_successors(&self.aux, form)
    }

    fn admissible(&self, form: &TagTree) -> bool {
        let (size, lets) = self.analysis.lower_bounds(form);
        let short = lets.within(self.bounds.max_string_len);
        if short && !size.within(self.bounds.max_tree_size) {
            self.size_cut.store(true, Ordering::Relaxed);
            return false;
        }
        short
    }

    fn is_final(&self, form: &TagTree) -> bool {
        form.obligatory_count() == 0
    }
}

/// Tree language and string language of a TAG, enumerated together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagLanguages {
    /// Derived trees without obligatory nodes.
    pub trees: BoundedLanguage<TagTree>,
    /// Frontiers of those trees that consist of terminals only. Complete
    /// only when the size bound cut no derivation within the string bound.
    pub strings: BoundedLanguage<Word>,
}

pub fn tag_enumerate(g: &Tag, bounds: Bounds) -> TagLanguages {
    tag_enumerate_with(g, bounds, 1)
}

pub fn tag_enumerate_with(g: &Tag, bounds: Bounds, workers: usize) -> TagLanguages {
    let search = TagSearch {
        aux: prepare(g),
        analysis: Analysis::new(g),
        bounds,
        size_cut: AtomicBool::new(false),
    };
    let explored = explore(
        &search,
        g.initial_trees().to_vec(),
        bounds.max_steps,
        workers,
    );
    let mut trees = explored.finals;
    sort_trees(&mut trees);
    let strings: BTreeSet<Word> = trees.iter().filter_map(TagTree::frontier).collect();
    let complete = explored.exhausted;
    let size_cut = search.size_cut.load(Ordering::Relaxed);
    TagLanguages {
        strings: BoundedLanguage {
            items: strings.into_iter().collect(),
            bounds,
            complete_up_to: (complete && !size_cut).then_some(bounds.max_string_len),
        },
        trees: BoundedLanguage {
            items: trees,
            bounds,
            complete_up_to: complete.then_some(bounds.max_tree_size),
        },
    }
}

/// A piece of frontier: a letter, or the place of an auxiliary tree's foot.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Item {
    Letter(Symbol),
    Hole,
}

type Frontiers = BTreeSet<Vec<Item>>;

fn letter_count(f: &[Item]) -> usize {
    f.iter().filter(|i| matches!(i, Item::Letter(_))).count()
}

/// Frontier strings of `u x v` with `x` replaced by each of `fill`.
fn plug(wrap: &[Item], fill: &Frontiers, max_len: usize) -> Vec<Vec<Item>> {
    let outer = letter_count(wrap);
    let Some(at) = wrap.iter().position(|i| *i == Item::Hole) else {
        return vec![wrap.to_vec()];
    };
    fill.iter()
        .filter(|f| outer + letter_count(f) <= max_len)
        .map(|f| {
            let mut v = wrap[..at].to_vec();
            v.extend(f.iter().cloned());
            v.extend_from_slice(&wrap[at + 1..]);
            v
        })
        .collect()
}

/// Terminal frontiers of what `node` can become once every obligatory node
/// below it is resolved, given the wrappers each nonterminal can receive.
/// The foot of an auxiliary tree is a hole; any other nonterminal leaf
/// stays on the frontier and contributes nothing.
fn frontiers(node: &TagTree, wraps: &HashMap<Symbol, Frontiers>, max_len: usize) -> Frontiers {
    let symbol = match node.label() {
        TagLabel::Terminal(s) if s.is_epsilon() => return BTreeSet::from([Vec::new()]),
        TagLabel::Terminal(_) if max_len == 0 => return BTreeSet::new(),
        TagLabel::Terminal(s) => return BTreeSet::from([vec![Item::Letter(s.clone())]]),
        TagLabel::Nonterminal { foot: true, .. } => return BTreeSet::from([vec![Item::Hole]]),
        TagLabel::Nonterminal { symbol, .. } => symbol,
    };
    if node.is_leaf() {
        return BTreeSet::new();
    }
    let mut inner: Frontiers = BTreeSet::from([Vec::new()]);
    for child in node.children() {
        let below = frontiers(child, wraps, max_len);
        let mut next = BTreeSet::new();
        for prefix in &inner {
            let used = letter_count(prefix);
            for f in &below {
                if used + letter_count(f) <= max_len {
                    let mut v = prefix.clone();
                    v.extend(f.iter().cloned());
                    next.insert(v);
                }
            }
        }
        inner = next;
    }
    if !node.label().is_obligatory() {
        return inner;
    }
    wraps
        .get(symbol)
        .into_iter()
        .flatten()
        .flat_map(|w| plug(w, &inner, max_len))
        .collect()
}

/// Strings of length at most `max_len` on terminal frontiers of derived
/// trees, without enumerating the trees.
///
/// Each nonterminal gets the set of frontiers `u x v` an obligatory node
/// with that label can be wrapped in: an auxiliary tree with its own
/// obligatory nodes resolved, followed by further wrapping when its foot is
/// obligatory. Letters only grow, so the sets are finite and reach a
/// fixpoint; `max_steps` bounds the rounds.
pub fn tag_strings(g: &Tag, max_len: usize, max_steps: usize) -> BoundedLanguage<Word> {
    let aux = prepare(g);
    let mut wraps: HashMap<Symbol, Frontiers> = HashMap::new();
    let mut converged = false;
    for _ in 0..max_steps {
        let mut next: HashMap<Symbol, Frontiers> = HashMap::new();
        for (symbol, trees) in &aux {
            let set = next.entry(symbol.clone()).or_default();
            for a in trees {
                let again = match a.foot_constraint {
                    Constraint::Obligatory => wraps.get(symbol).cloned().unwrap_or_default(),
                    Constraint::Null => BTreeSet::from([vec![Item::Hole]]),
                };
                for f in frontiers(a.tree, &wraps, max_len) {
                    set.extend(plug(&f, &again, max_len));
                }
            }
        }
        next.retain(|_, s| !s.is_empty());
        if next == wraps {
            converged = true;
            break;
        }
        wraps = next;
    }
    let words: BTreeSet<Word> = g
        .initial_trees()
        .iter()
        .flat_map(|t| frontiers(t, &wraps, max_len))
        .map(|f| {
            Word::new(
                f.into_iter()
                    .map(|i| match i {
                        Item::Letter(s) => s,
                        Item::Hole => unreachable!("initial trees have no foot"),
                    })
                    .collect(),
            )
        })
        .collect();
    BoundedLanguage {
        items: words.into_iter().collect(),
        bounds: Bounds {
            max_tree_size: usize::MAX,
            max_steps,
            max_string_len: max_len,
        },
        complete_up_to: converged.then_some(max_len),
    }
}
