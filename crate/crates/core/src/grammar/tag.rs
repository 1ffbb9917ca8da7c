use std::collections::BTreeSet;
use std::fmt;

use crate::symbol::{is_identifier, variable_index, AlphabetError, Symbol, Word};
use crate::syntax::{ParseError, RawNode};
use crate::tree::{Path, Tree};

use super::GrammarError;

/// Adjunction constraint of a nonterminal node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Constraint {
    /// Written with a bar (`A!`): adjunction must happen here.
    Obligatory,
    /// No adjunction allowed.
    Null,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TagLabel {
    Terminal(Symbol),
    Nonterminal {
        symbol: Symbol,
        constraint: Constraint,
        foot: bool,
    },
}

impl TagLabel {
    pub fn nonterminal(symbol: impl Into<Symbol>, constraint: Constraint) -> Self {
        TagLabel::Nonterminal {
            symbol: symbol.into(),
            constraint,
            foot: false,
        }
    }

    pub fn foot(symbol: impl Into<Symbol>, constraint: Constraint) -> Self {
        TagLabel::Nonterminal {
            symbol: symbol.into(),
            constraint,
            foot: true,
        }
    }

    pub fn symbol(&self) -> &Symbol {
        match self {
            TagLabel::Terminal(s) | TagLabel::Nonterminal { symbol: s, .. } => s,
        }
    }

    pub fn is_obligatory(&self) -> bool {
        matches!(
            self,
            TagLabel::Nonterminal {
                constraint: Constraint::Obligatory,
                ..
            }
        )
    }

    pub fn is_foot(&self) -> bool {
        matches!(self, TagLabel::Nonterminal { foot: true, .. })
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self, TagLabel::Terminal(_))
    }
}

impl fmt::Display for TagLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TagLabel::Terminal(s) => write!(f, "{s}"),
            TagLabel::Nonterminal {
                symbol,
                constraint,
                foot,
            } => {
                write!(f, "{symbol}")?;
                if *constraint == Constraint::Obligatory {
                    write!(f, "!")?;
                }
                if *foot {
                    write!(f, "*")?;
                }
                Ok(())
            }
        }
    }
}

pub type TagTree = Tree<TagLabel>;

impl TagTree {
    /// Leaf labels left to right, `None` unless every leaf is a terminal.
    /// Epsilon leaves contribute nothing.
    pub fn frontier(&self) -> Option<Word> {
        let mut out = Word::empty();
        for path in self.leaf_paths() {
            match path.last()? {
                TagLabel::Terminal(s) if s.is_epsilon() => {}
                TagLabel::Terminal(s) => out.push(s.clone()),
                TagLabel::Nonterminal { .. } => return None,
            }
        }
        Some(out)
    }

    pub fn obligatory_count(&self) -> usize {
        self.nodes()
            .iter()
            .filter(|(_, n)| n.label().is_obligatory())
            .count()
    }

    pub fn foot_path(&self) -> Option<Path> {
        self.nodes()
            .into_iter()
            .find(|(_, n)| n.label().is_foot())
            .map(|(p, _)| p)
    }
}

/// Which elementary tree a diagnostic refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TreeRef {
    Initial(usize),
    Auxiliary(usize),
}

impl fmt::Display for TreeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeRef::Initial(i) => write!(f, "initial tree {i}"),
            TreeRef::Auxiliary(i) => write!(f, "auxiliary tree {i}"),
        }
    }
}

/// A tree adjoining grammar `(V, N, S, I, A)` with obligatory and null
/// adjunction constraints. The epsilon constant is an implicit terminal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tag {
    terminals: BTreeSet<Symbol>,
    nonterminals: BTreeSet<Symbol>,
    start: Symbol,
    initial: Vec<TagTree>,
    auxiliary: Vec<TagTree>,
}

impl Tag {
    pub fn new(
        terminals: impl IntoIterator<Item = Symbol>,
        nonterminals: impl IntoIterator<Item = Symbol>,
        start: impl Into<Symbol>,
        initial: Vec<TagTree>,
        auxiliary: Vec<TagTree>,
    ) -> Result<Self, GrammarError> {
        let mut terminals: BTreeSet<Symbol> = terminals.into_iter().collect();
        terminals.insert(Symbol::epsilon());
        let g = Tag {
            terminals,
            nonterminals: nonterminals.into_iter().collect(),
            start: start.into(),
            initial,
            auxiliary,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn terminals(&self) -> &BTreeSet<Symbol> {
        &self.terminals
    }

    pub fn nonterminals(&self) -> &BTreeSet<Symbol> {
        &self.nonterminals
    }

    pub fn start(&self) -> &Symbol {
        &self.start
    }

    pub fn initial_trees(&self) -> &[TagTree] {
        &self.initial
    }

    pub fn auxiliary_trees(&self) -> &[TagTree] {
        &self.auxiliary
    }

    /// Auxiliary trees whose root (and foot) is labelled `a`.
    pub fn auxiliaries_for<'a>(&'a self, a: &'a Symbol) -> impl Iterator<Item = &'a TagTree> {
        self.auxiliary
            .iter()
            .filter(move |t| t.label().symbol() == a)
    }

    /// Resolves a parsed tree against the declared symbols.
    pub(crate) fn resolve(
        raw: &RawNode,
        terminals: &BTreeSet<Symbol>,
        nonterminals: &BTreeSet<Symbol>,
    ) -> Result<TagTree, ParseError> {
        let symbol = Symbol::new(&raw.name);
        let label = if symbol.is_epsilon() || terminals.contains(&symbol) {
            if raw.bar || raw.foot {
                return Err(raw.error(format!("terminal `{}` cannot carry marks", raw.name)));
            }
            TagLabel::Terminal(symbol)
        } else if nonterminals.contains(&symbol) {
            TagLabel::Nonterminal {
                symbol,
                constraint: if raw.bar {
                    Constraint::Obligatory
                } else {
                    Constraint::Null
                },
                foot: raw.foot,
            }
        } else {
            return Err(raw.error(format!("undeclared symbol `{}`", raw.name)));
        };
        let children = raw
            .children
            .iter()
            .map(|c| Tag::resolve(c, terminals, nonterminals))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Tree::new(label, children))
    }

    pub fn validate(&self) -> Result<(), GrammarError> {
        for s in self.terminals.iter().chain(&self.nonterminals) {
            if !is_identifier(s.as_str()) {
                return Err(AlphabetError::BadName(s.to_string()).into());
            }
            if variable_index(s.as_str()).is_some() {
                return Err(AlphabetError::ReservedVariable(s.to_string()).into());
            }
        }
        if let Some(s) = self.terminals.intersection(&self.nonterminals).next() {
            return Err(AlphabetError::Overlap(s.clone()).into());
        }
        if !self.nonterminals.contains(&self.start) {
            return Err(GrammarError::UnknownStart(self.start.clone()));
        }
        for (i, t) in self.initial.iter().enumerate() {
            let at = TreeRef::Initial(i);
            self.check_nodes(at, t)?;
            if t.label().is_terminal() || t.label().symbol() != &self.start {
                return Err(tag_error(
                    at,
                    vec![],
                    format!("root must be labelled `{}`", self.start),
                ));
            }
            if let Some(p) = t.foot_path() {
                return Err(tag_error(at, p, "initial trees have no foot node"));
            }
        }
        for (i, t) in self.auxiliary.iter().enumerate() {
            let at = TreeRef::Auxiliary(i);
            self.check_nodes(at, t)?;
            let feet: Vec<(Path, &TagTree)> = t
                .nodes()
                .into_iter()
                .filter(|(_, n)| n.label().is_foot())
                .collect();
            match feet.as_slice() {
                [] => return Err(tag_error(at, vec![], "missing foot node")),
                [(path, foot)] => {
                    if foot.label().symbol() != t.label().symbol() {
                        return Err(tag_error(
                            at,
                            path.clone(),
                            format!(
                                "foot `{}` does not match root `{}`",
                                foot.label().symbol(),
                                t.label().symbol()
                            ),
                        ));
                    }
                    if path.is_empty() {
                        return Err(tag_error(at, vec![], "the root cannot be the foot node"));
                    }
                }
                [_, (second, _), ..] => {
                    return Err(tag_error(at, second.clone(), "more than one foot node"))
                }
            }
        }
        Ok(())
    }

    fn check_nodes(&self, at: TreeRef, t: &TagTree) -> Result<(), GrammarError> {
        for (path, node) in t.nodes() {
            match node.label() {
                TagLabel::Terminal(s) => {
                    if !self.terminals.contains(s) {
                        return Err(tag_error(at, path, format!("undeclared terminal `{s}`")));
                    }
                    if !node.is_leaf() {
                        return Err(tag_error(
                            at,
                            path,
                            format!("terminal `{s}` labels an interior node"),
                        ));
                    }
                }
                TagLabel::Nonterminal { symbol, foot, .. } => {
                    if !self.nonterminals.contains(symbol) {
                        return Err(tag_error(
                            at,
                            path,
                            format!("undeclared nonterminal `{symbol}`"),
                        ));
                    }
                    if *foot && !node.is_leaf() {
                        return Err(tag_error(at, path, "foot node must be a frontier node"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn tag_error(tree: TreeRef, path: Path, problem: impl Into<String>) -> GrammarError {
    GrammarError::Tag {
        tree,
        path,
        problem: problem.into(),
    }
}

/// Re-checks a grammar's invariants.
pub fn validate_tag(g: &Tag) -> Result<(), GrammarError> {
    g.validate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_raw;

    fn syms(names: &[&str]) -> BTreeSet<Symbol> {
        names.iter().map(|n| Symbol::new(n)).collect()
    }

    fn tree(src: &str, v: &[&str], n: &[&str]) -> TagTree {
        Tag::resolve(&parse_raw(src, 1, 1).unwrap(), &syms(v), &syms(n)).unwrap()
    }

    fn abcd_tag(aux: &[&str]) -> Result<Tag, GrammarError> {
        let v = ["a", "b", "c", "d"];
        let n = ["S"];
        Tag::new(
            syms(&v),
            syms(&n),
            "S",
            vec![tree("S!(eps)", &v, &n)],
            aux.iter().map(|s| tree(s, &v, &n)).collect(),
        )
    }

    #[test]
    fn anbncndn_tag_is_valid() {
        let g = abcd_tag(&["S(S*)", "S(a, S!(b, S*, c), d)"]).unwrap();
        assert_eq!(validate_tag(&g), Ok(()));
        assert_eq!(g.auxiliaries_for(&Symbol::new("S")).count(), 2);
    }

    #[test]
    fn two_feet_rejected() {
        let err = abcd_tag(&["S(S*, S*)"]).unwrap_err();
        assert_eq!(
            err,
            GrammarError::Tag {
                tree: TreeRef::Auxiliary(0),
                path: vec![1],
                problem: "more than one foot node".into()
            }
        );
    }

    #[test]
    fn foot_label_mismatch_rejected() {
        let v = ["a"];
        let n = ["S", "A", "B"];
        let err = Tag::new(
            syms(&v),
            syms(&n),
            "S",
            vec![tree("S(a)", &v, &n)],
            vec![tree("A(a, B*)", &v, &n)],
        )
        .unwrap_err();
        assert!(
            matches!(err, GrammarError::Tag { tree: TreeRef::Auxiliary(0), ref path, .. } if path == &vec![1])
        );
        assert!(err.to_string().contains("does not match root"));
    }

    #[test]
    fn other_violations() {
        assert!(abcd_tag(&["S(a)"])
            .unwrap_err()
            .to_string()
            .contains("missing foot"));
        let v = ["a"];
        let n = ["S", "A"];
        let interior = Tag::new(
            syms(&v),
            syms(&n),
            "S",
            vec![tree("S(a(a))", &v, &n)],
            vec![],
        );
        assert!(interior.unwrap_err().to_string().contains("interior"));
        let root = Tag::new(syms(&v), syms(&n), "S", vec![tree("A(a)", &v, &n)], vec![]);
        assert!(root
            .unwrap_err()
            .to_string()
            .contains("root must be labelled"));
        let foot_interior = Tag::new(
            syms(&v),
            syms(&n),
            "S",
            vec![],
            vec![tree("A(A*(a))", &v, &n)],
        );
        assert!(foot_interior.unwrap_err().to_string().contains("frontier"));
        let bad = parse_raw("S(a!)", 1, 1).unwrap();
        assert!(Tag::resolve(&bad, &syms(&v), &syms(&n)).is_err());
    }

    #[test]
    fn frontier_of_trees() {
        let v = ["a", "b", "c", "d"];
        let n = ["S"];
        assert_eq!(
            tree("S(a, S(b, S(eps), c), d)", &v, &n).frontier(),
            Some(Word::from_chars("abcd"))
        );
        assert_eq!(tree("S(a, S)", &v, &n).frontier(), None);
        assert_eq!(tree("S(a, S!(b, S*, c), d)", &v, &n).obligatory_count(), 1);
    }
}
