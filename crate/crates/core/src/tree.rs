//! Ordered ranked trees, variables and first-order substitution.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::symbol::{MonadicWordAlphabet, RankedAlphabet, Symbol, Word};

/// Child indices from the root to a node; the root is `[]`.
pub type Path = Vec<usize>;

pub(crate) struct ShowPath<'a>(pub &'a [usize]);

impl fmt::Display for ShowPath<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// A variable `x_i`, `i >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(usize);

impl Variable {
    /// # Panics
    /// If `index` is zero.
    pub fn new(index: usize) -> Self {
        assert!(index >= 1, "variable indices start at 1");
        Variable(index)
    }

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// Node label of a term: an alphabet symbol or a variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Sym(Symbol),
    Var(Variable),
}

impl Label {
    pub fn symbol(&self) -> Option<&Symbol> {
        match self {
            Label::Sym(s) => Some(s),
            Label::Var(_) => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Sym(s) => write!(f, "{s}"),
            Label::Var(v) => write!(f, "{v}"),
        }
    }
}

/// An ordered tree with labels of type `L`. Trees are immutable values compared
/// structurally.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tree<L = Label> {
    label: L,
    children: Vec<Tree<L>>,
}

/// A tree over symbols and variables, an element of `T(Σ, X)`.
pub type Term = Tree<Label>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("symbol `{symbol}` has rank {expected} but {found} children at {}", ShowPath(.path))]
    ArityMismatch {
        path: Path,
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("undeclared symbol `{symbol}` at {}", ShowPath(.path))]
    UndeclaredSymbol { path: Path, symbol: Symbol },
    #[error("variable x{index} exceeds x{max} at {}", ShowPath(.path))]
    VariableOutOfRange {
        path: Path,
        index: usize,
        max: usize,
    },
    #[error("variable x{index} at {} has no value", ShowPath(.path))]
    UnexpectedVariable { path: Path, index: usize },
    #[error("`{symbol}` at {} is not part of a monadic signature", ShowPath(.path))]
    NonMonadic { path: Path, symbol: String },
    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(Symbol),
}

impl<L> Tree<L> {
    pub fn new(label: L, children: Vec<Tree<L>>) -> Self {
        Tree { label, children }
    }

    pub fn leaf(label: L) -> Self {
        Tree {
            label,
            children: Vec::new(),
        }
    }

    pub fn label(&self) -> &L {
        &self.label
    }

    pub fn children(&self) -> &[Tree<L>] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn into_parts(self) -> (L, Vec<Tree<L>>) {
        (self.label, self.children)
    }

    /// Node count.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Tree::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(Tree::depth).max().unwrap_or(0)
    }

    pub fn subtree(&self, path: &[usize]) -> Option<&Tree<L>> {
        path.iter().try_fold(self, |node, &i| node.children.get(i))
    }

    /// Preorder traversal yielding each node with its path.
    pub fn nodes(&self) -> Vec<(Path, &Tree<L>)> {
        let mut out = Vec::new();
        let mut stack = vec![(Vec::new(), self)];
        while let Some((path, node)) = stack.pop() {
            for (i, c) in node.children.iter().enumerate().rev() {
                let mut p = path.clone();
                p.push(i);
                stack.push((p, c));
            }
            out.push((path, node));
        }
        out
    }

    pub fn map<M, F: Fn(&L) -> M + Copy>(&self, f: F) -> Tree<M> {
        Tree {
            label: f(&self.label),
            children: self.children.iter().map(|c| c.map(f)).collect(),
        }
    }

    /// One entry per leaf, left to right, each listing the labels from the
    /// root down to that leaf.
    pub fn leaf_paths(&self) -> Vec<Vec<L>>
    where
        L: Clone,
    {
        fn walk<L: Clone>(t: &Tree<L>, prefix: &mut Vec<L>, out: &mut Vec<Vec<L>>) {
            prefix.push(t.label.clone());
            if t.children.is_empty() {
                out.push(prefix.clone());
            } else {
                for c in &t.children {
                    walk(c, prefix, out);
                }
            }
            prefix.pop();
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }
}

impl<L: Clone> Tree<L> {
    /// Returns a copy with the subtree at `path` replaced by `f(old)`.
    ///
    /// # Panics
    /// If `path` does not address a node.
    pub fn replace_at(&self, path: &[usize], f: impl FnOnce(&Tree<L>) -> Tree<L>) -> Tree<L> {
        match path.split_first() {
            None => f(self),
            Some((&i, rest)) => {
                let mut children = self.children.clone();
                children[i] = self.children[i].replace_at(rest, f);
                Tree {
                    label: self.label.clone(),
                    children,
                }
            }
        }
    }
}

impl<L: fmt::Display> fmt::Display for Tree<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)?;
        if !self.children.is_empty() {
            write!(f, "(")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl Term {
    pub fn sym(name: impl Into<Symbol>) -> Term {
        Tree::leaf(Label::Sym(name.into()))
    }

    pub fn app(name: impl Into<Symbol>, children: Vec<Term>) -> Term {
        Tree::new(Label::Sym(name.into()), children)
    }

    pub fn var(index: usize) -> Term {
        Tree::leaf(Label::Var(Variable::new(index)))
    }

    pub fn epsilon() -> Term {
        Term::sym(Symbol::epsilon())
    }

    pub fn symbol(&self) -> Option<&Symbol> {
        self.label.symbol()
    }

    pub fn variable(&self) -> Option<Variable> {
        match self.label {
            Label::Var(v) => Some(v),
            Label::Sym(_) => None,
        }
    }

    pub fn is_ground(&self) -> bool {
        self.variable().is_none() && self.children.iter().all(Term::is_ground)
    }

    /// Checks membership in `T(Σ, X_max_var)`.
    pub fn validate(&self, alphabet: &RankedAlphabet, max_var: usize) -> Result<(), TermError> {
        fn go(
            t: &Term,
            alphabet: &RankedAlphabet,
            max_var: usize,
            path: &mut Path,
        ) -> Result<(), TermError> {
            match &t.label {
                Label::Var(v) => {
                    if !t.children.is_empty() {
                        return Err(TermError::ArityMismatch {
                            path: path.clone(),
                            symbol: v.to_string(),
                            expected: 0,
                            found: t.children.len(),
                        });
                    }
                    if v.index() > max_var {
                        return Err(TermError::VariableOutOfRange {
                            path: path.clone(),
                            index: v.index(),
                            max: max_var,
                        });
                    }
                }
                Label::Sym(s) => {
                    let rank =
                        alphabet
                            .rank(s.as_str())
                            .ok_or_else(|| TermError::UndeclaredSymbol {
                                path: path.clone(),
                                symbol: s.clone(),
                            })?;
                    if rank != t.children.len() {
                        return Err(TermError::ArityMismatch {
                            path: path.clone(),
                            symbol: s.to_string(),
                            expected: rank,
                            found: t.children.len(),
                        });
                    }
                    for (i, c) in t.children.iter().enumerate() {
                        path.push(i);
                        go(c, alphabet, max_var, path)?;
                        path.pop();
                    }
                }
            }
            Ok(())
        }
        go(self, alphabet, max_var, &mut Vec::new())
    }

    /// `t[t_1, …, t_m]`: replaces every `x_i` by `args[i-1]`.
    pub fn substitute(&self, args: &[Term]) -> Result<Term, TermError> {
        if let Some((path, node)) = self
            .nodes()
            .into_iter()
            .find(|(_, n)| n.variable().is_some_and(|v| v.index() > args.len()))
        {
            return Err(TermError::VariableOutOfRange {
                path,
                index: node.variable().map_or(0, Variable::index),
                max: args.len(),
            });
        }
        Ok(self.substitute_unchecked(args))
    }

    pub(crate) fn substitute_unchecked(&self, args: &[Term]) -> Term {
        match &self.label {
            Label::Var(v) => args[v.index() - 1].clone(),
            Label::Sym(_) => Tree {
                label: self.label.clone(),
                children: self
                    .children
                    .iter()
                    .map(|c| c.substitute_unchecked(args))
                    .collect(),
            },
        }
    }

    /// Occurrence count of every variable in the term.
    pub fn variable_counts(&self) -> BTreeMap<Variable, usize> {
        let mut counts = BTreeMap::new();
        for (_, n) in self.nodes() {
            if let Some(v) = n.variable() {
                *counts.entry(v).or_insert(0) += 1;
            }
        }
        counts
    }

    /// True iff no variable of `vars` occurs more than once.
    pub fn is_linear(&self, vars: &BTreeSet<Variable>) -> bool {
        fn go(t: &Term, vars: &BTreeSet<Variable>, seen: &mut BTreeSet<Variable>) -> bool {
            match t.variable() {
                Some(v) => !vars.contains(&v) || seen.insert(v),
                None => t.children.iter().all(|c| go(c, vars, seen)),
            }
        }
        go(self, vars, &mut BTreeSet::new())
    }

    /// The frontier homomorphism. The epsilon constant contributes the empty
    /// string, every other constant contributes itself.
    pub fn yield_word(&self) -> Result<Word, TermError> {
        fn go(t: &Term, path: &mut Path, out: &mut Word) -> Result<(), TermError> {
            match &t.label {
                Label::Var(v) => Err(TermError::UnexpectedVariable {
                    path: path.clone(),
                    index: v.index(),
                }),
                Label::Sym(s) if t.children.is_empty() => {
                    if !s.is_epsilon() {
                        out.push(s.clone());
                    }
                    Ok(())
                }
                Label::Sym(_) => {
                    for (i, c) in t.children.iter().enumerate() {
                        path.push(i);
                        go(c, path, out)?;
                        path.pop();
                    }
                    Ok(())
                }
            }
        }
        let mut out = Word::empty();
        go(self, &mut Vec::new(), &mut out)?;
        Ok(out)
    }
}

/// `a_1 a_2 … a_n` becomes `a_1(a_2(…a_n(eps)…))`.
pub fn string_to_monadic_tree(w: &Word, alphabet: &MonadicWordAlphabet) -> Result<Term, TermError> {
    if let Some(bad) = w.symbols().iter().find(|s| !alphabet.contains(s.as_str())) {
        return Err(TermError::UnknownLetter(bad.clone()));
    }
    Ok(w.symbols()
        .iter()
        .rev()
        .fold(Term::epsilon(), |acc, a| Term::app(a.clone(), vec![acc])))
}

/// Inverse of [`string_to_monadic_tree`].
pub fn monadic_tree_to_string(t: &Term) -> Result<Word, TermError> {
    let mut out = Word::empty();
    let mut node = t;
    let mut path = Vec::new();
    loop {
        match (&node.label, node.children.as_slice()) {
            (Label::Sym(s), []) if s.is_epsilon() => return Ok(out),
            (Label::Sym(s), [child]) if !s.is_epsilon() => {
                out.push(s.clone());
                node = child;
                path.push(0);
            }
            (label, _) => {
                return Err(TermError::NonMonadic {
                    path,
                    symbol: label.to_string(),
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn ab_monadic() -> RankedAlphabet {
        MonadicWordAlphabet::new(["a", "b"]).unwrap().ranked()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(t("eps").validate(&ab_monadic(), 0), Ok(()));
        assert_eq!(t("a(b(eps))").validate(&ab_monadic(), 0), Ok(()));
        assert_eq!(
            t("a(eps, eps)").validate(&ab_monadic(), 0),
            Err(TermError::ArityMismatch {
                path: vec![],
                symbol: "a".into(),
                expected: 1,
                found: 2
            })
        );
    }

    #[test]
    fn validate_reports_paths() {
        let err = t("a(b(c))").validate(&ab_monadic(), 0).unwrap_err();
        assert_eq!(
            err,
            TermError::UndeclaredSymbol {
                path: vec![0, 0],
                symbol: Symbol::new("c")
            }
        );
        let err = t("a(x2)").validate(&ab_monadic(), 1).unwrap_err();
        assert!(matches!(
            err,
            TermError::VariableOutOfRange {
                index: 2,
                max: 1,
                ..
            }
        ));
        assert_eq!(err.to_string(), "variable x2 exceeds x1 at [0]");
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(t("x1").substitute(&[t("a(eps)")]).unwrap(), t("a(eps)"));
        assert_eq!(
            t("a(F(b(x1)))").substitute(&[t("eps")]).unwrap(),
            t("a(F(b(eps)))")
        );
        assert_eq!(
            t("S(x1, x2, x1)").substitute(&[t("b"), t("c")]).unwrap(),
            t("S(b, c, b)")
        );
        assert!(matches!(
            t("f(x3)").substitute(&[t("a")]),
            Err(TermError::VariableOutOfRange {
                index: 3,
                max: 1,
                ..
            })
        ));
    }

    #[test]
    fn linearity_examples() {
        let x1: BTreeSet<_> = [Variable::new(1)].into();
        assert!(t("S(a, x1, d)").is_linear(&x1));
        assert!(!t("S(x1, c, x1)").is_linear(&x1));
        assert!(t("a(F(b(x1)))").is_linear(&x1));
        assert!(t("S(x2, x2)").is_linear(&x1));
    }

    #[test]
    fn yield_examples() {
        assert_eq!(t("a").yield_word().unwrap(), Word::from_chars("a"));
        assert_eq!(
            t("S(a, S(b, eps, c), d)").yield_word().unwrap(),
            Word::from_chars("abcd")
        );
        assert_eq!(t("eps").yield_word().unwrap(), Word::empty());
        assert!(matches!(
            t("f(a, x1)").yield_word(),
            Err(TermError::UnexpectedVariable { index: 1, .. })
        ));
    }

    #[test]
    fn monadic_codec_examples() {
        let v = MonadicWordAlphabet::new(["a", "b"]).unwrap();
        let enc = |s: &str| string_to_monadic_tree(&Word::from_chars(s), &v).unwrap();
        assert_eq!(enc(""), t("eps"));
        assert_eq!(enc("ab"), t("a(b(eps))"));
        assert_eq!(enc("aabb"), t("a(a(b(b(eps))))"));
        assert_eq!(monadic_tree_to_string(&t("eps")).unwrap(), Word::empty());
        assert_eq!(
            monadic_tree_to_string(&t("a(a(b(b(eps))))")).unwrap(),
            Word::from_chars("aabb")
        );
        assert!(matches!(
            string_to_monadic_tree(&Word::from_chars("ac"), &v),
            Err(TermError::UnknownLetter(_))
        ));
        assert!(matches!(
            monadic_tree_to_string(&t("a(f(eps, eps))")),
            Err(TermError::NonMonadic { ref path, .. }) if path == &vec![0]
        ));
        assert!(monadic_tree_to_string(&t("a(x1)")).is_err());
    }

    #[test]
    fn leaf_path_examples() {
        let labels = |s: &str| -> Vec<Vec<String>> {
            t(s).leaf_paths()
                .into_iter()
                .map(|p| p.iter().map(ToString::to_string).collect())
                .collect()
        };
        assert_eq!(labels("a"), vec![vec!["a"]]);
        assert_eq!(labels("a(F(b(x1)))"), vec![vec!["a", "F", "b", "x1"]]);
        assert_eq!(
            labels("S(a, x1, d)"),
            vec![vec!["S", "a"], vec!["S", "x1"], vec!["S", "d"]]
        );
    }

    #[test]
    fn replace_and_nodes() {
        let tree = t("f(a, g(b))");
        let paths: Vec<Path> = tree.nodes().into_iter().map(|(p, _)| p).collect();
        assert_eq!(paths, vec![vec![], vec![0], vec![1], vec![1, 0]]);
        assert_eq!(tree.replace_at(&[1, 0], |_| t("c")), t("f(a, g(c))"));
        assert_eq!(tree.subtree(&[1]), Some(&t("g(b)")));
        assert_eq!(tree.size(), 4);
        assert_eq!(tree.depth(), 3);
    }
}
