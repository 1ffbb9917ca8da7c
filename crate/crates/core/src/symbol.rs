//! Symbols, ranked alphabets and words.

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Name of the reserved rank-0 constant that stands for the empty string.
pub const EPSILON: &str = "eps";

/// An atomic, interned-by-value symbol name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn epsilon() -> Self {
        Symbol::new(EPSILON)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_epsilon(&self) -> bool {
        &*self.0 == EPSILON
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::ops::Deref for Symbol {
    type Target = str;

    fn deref(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for Symbol {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

impl From<String> for Symbol {
    fn from(s: String) -> Self {
        Symbol(Arc::from(s))
    }
}

/// True when `name` is a well-formed identifier: `[A-Za-z_][A-Za-z0-9_']*`,
/// optionally followed by a rule tag `@<digits>`.
pub fn is_identifier(name: &str) -> bool {
    let (base, tag) = match name.split_once('@') {
        Some((b, t)) => (b, Some(t)),
        None => (name, None),
    };
    let mut chars = base.chars();
    let head_ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_');
    let tail_ok = chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
    let tag_ok = tag.is_none_or(|t| !t.is_empty() && t.chars().all(|c| c.is_ascii_digit()));
    head_ok && tail_ok && tag_ok
}

/// Returns the variable index if `name` is spelled like a variable (`x1`, `x2`, ...).
pub(crate) fn variable_index(name: &str) -> Option<Result<usize, ()>> {
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    match digits.parse::<usize>() {
        Ok(i) if i >= 1 => Some(Ok(i)),
        _ => Some(Err(())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("ranked alphabet must not be empty")]
    Empty,
    #[error("symbol `{symbol}` declared with ranks {first} and {second}")]
    ConflictingRank {
        symbol: Symbol,
        first: usize,
        second: usize,
    },
    #[error("`{0}` is not a valid symbol name")]
    BadName(String),
    #[error("`{0}` is reserved for variables")]
    ReservedVariable(String),
    #[error("symbol `{0}` occurs in both alphabets")]
    Overlap(Symbol),
    #[error("`{0}` is the reserved epsilon constant and cannot be a letter")]
    EpsilonLetter(Symbol),
}

/// A finite assignment of ranks to symbols.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RankedAlphabet {
    entries: BTreeMap<Symbol, usize>,
}

impl RankedAlphabet {
    /// Builds an alphabet, rejecting a symbol declared with two different ranks.
    /// Repeating a symbol with the same rank is harmless.
    pub fn new<I, S>(entries: I) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<Symbol>,
    {
        let mut alphabet = RankedAlphabet::default();
        for (sym, rank) in entries {
            alphabet.insert(sym.into(), rank)?;
        }
        if alphabet.entries.is_empty() {
            return Err(AlphabetError::Empty);
        }
        Ok(alphabet)
    }

    pub(crate) fn insert(&mut self, sym: Symbol, rank: usize) -> Result<(), AlphabetError> {
        if !is_identifier(sym.as_str()) {
            return Err(AlphabetError::BadName(sym.to_string()));
        }
        if variable_index(sym.as_str()).is_some() {
            return Err(AlphabetError::ReservedVariable(sym.to_string()));
        }
        match self.entries.get(&sym) {
            Some(&r) if r != rank => Err(AlphabetError::ConflictingRank {
                symbol: sym,
                first: r,
                second: rank,
            }),
            _ => {
                self.entries.insert(sym, rank);
                Ok(())
            }
        }
    }

    pub fn rank(&self, sym: &str) -> Option<usize> {
        self.entries.get(sym).copied()
    }

    pub fn contains(&self, sym: &str) -> bool {
        self.entries.contains_key(sym)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, usize)> {
        self.entries.iter().map(|(s, &r)| (s, r))
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.entries.keys()
    }

    /// Symbols of exactly rank `n`.
    pub fn of_rank(&self, n: usize) -> impl Iterator<Item = &Symbol> {
        self.entries
            .iter()
            .filter(move |(_, &r)| r == n)
            .map(|(s, _)| s)
    }

    pub fn max_rank(&self) -> usize {
        self.entries.values().copied().max().unwrap_or(0)
    }

    /// Disjoint union of two alphabets.
    pub fn merge(&self, other: &RankedAlphabet) -> Result<RankedAlphabet, AlphabetError> {
        if let Some(sym) = self.symbols().find(|s| other.contains(s.as_str())) {
            return Err(AlphabetError::Overlap(sym.clone()));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|(s, &r)| (s.clone(), r)));
        Ok(RankedAlphabet { entries })
    }
}

/// An ordinary finite alphabet `V` read as a monadic signature: every letter has
/// rank one and [`EPSILON`] is the single constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonadicWordAlphabet {
    letters: BTreeSet<Symbol>,
}

impl MonadicWordAlphabet {
    pub fn new<I, S>(letters: I) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<Symbol>,
    {
        let mut set = BTreeSet::new();
        for l in letters {
            let l = l.into();
            if l.is_epsilon() {
                return Err(AlphabetError::EpsilonLetter(l));
            }
            if !is_identifier(l.as_str()) {
                return Err(AlphabetError::BadName(l.to_string()));
            }
            set.insert(l);
        }
        Ok(MonadicWordAlphabet { letters: set })
    }

    pub fn letters(&self) -> &BTreeSet<Symbol> {
        &self.letters
    }

    pub fn contains(&self, letter: &str) -> bool {
        self.letters.contains(letter)
    }

    /// The induced signature `Σ_V`.
    pub fn ranked(&self) -> RankedAlphabet {
        let mut alphabet = RankedAlphabet::default();
        alphabet.entries.insert(Symbol::epsilon(), 0);
        for l in &self.letters {
            alphabet.entries.insert(l.clone(), 1);
        }
        alphabet
    }
}

/// A string over some alphabet, as a sequence of symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// One symbol per character: `"aabb"` becomes `[a, a, b, b]`.
    pub fn from_chars(s: &str) -> Self {
        Word(
            s.chars()
                .map(|c| Symbol::new(c.encode_utf8(&mut [0; 4])))
                .collect(),
        )
    }

    /// Parses the printed form: space-separated tokens if there is any
    /// whitespace, otherwise one symbol per character. `<eps>` is the empty word.
    pub fn parse(s: &str) -> Self {
        let s = s.trim();
        if s == "<eps>" {
            Word::empty()
        } else if s.contains(char::is_whitespace) {
            Word(s.split_whitespace().map(Symbol::new).collect())
        } else {
            Word::from_chars(s)
        }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn extend(&mut self, other: &Word) {
        self.0.extend(other.0.iter().cloned());
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Single-character symbols are concatenated, longer ones space-separated.
/// The empty word prints as nothing; list outputs use `<eps>` for it.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.0.iter().all(|s| s.as_str().chars().count() == 1);
        let sep = if compact { "" } else { " " };
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            f.write_str(s.as_str())?;
        }
        Ok(())
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<T: IntoIterator<Item = Symbol>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers() {
        assert!(is_identifier("S'"));
        assert!(is_identifier("Sbar@12"));
        assert!(is_identifier("_a1"));
        assert!(!is_identifier("1a"));
        assert!(!is_identifier("F@"));
        assert!(!is_identifier("F@x"));
        assert!(!is_identifier(""));
    }

    #[test]
    fn conflicting_rank_rejected() {
        let err = RankedAlphabet::new([("a", 1), ("a", 2)]).unwrap_err();
        assert!(matches!(err, AlphabetError::ConflictingRank { .. }));
        assert!(RankedAlphabet::new([("a", 1), ("a", 1)]).is_ok());
        assert_eq!(
            RankedAlphabet::new(Vec::<(&str, usize)>::new()),
            Err(AlphabetError::Empty)
        );
    }

    #[test]
    fn variables_are_reserved() {
        assert!(matches!(
            RankedAlphabet::new([("x3", 0)]),
            Err(AlphabetError::ReservedVariable(_))
        ));
        assert!(RankedAlphabet::new([("x", 0)]).is_ok());
    }

    #[test]
    fn merge_requires_disjointness() {
        let a = RankedAlphabet::new([("a", 1), ("eps", 0)]).unwrap();
        let f = RankedAlphabet::new([("F", 1)]).unwrap();
        let both = a.merge(&f).unwrap();
        assert_eq!(both.len(), 3);
        assert_eq!(a.merge(&a), Err(AlphabetError::Overlap(Symbol::new("a"))));
    }

    #[test]
    fn monadic_signature() {
        let v = MonadicWordAlphabet::new(["a", "b"]).unwrap();
        let sigma = v.ranked();
        assert_eq!(sigma.rank("a"), Some(1));
        assert_eq!(sigma.rank("eps"), Some(0));
        assert_eq!(sigma.of_rank(0).count(), 1);
        assert!(MonadicWordAlphabet::new(["eps"]).is_err());
    }

    #[test]
    fn word_printing_and_order() {
        assert_eq!(Word::from_chars("aabb").to_string(), "aabb");
        let w = Word::new(vec![Symbol::new("ab"), Symbol::new("c")]);
        assert_eq!(w.to_string(), "ab c");
        assert_eq!(Word::parse("ab c"), w);
        assert_eq!(Word::parse("<eps>"), Word::empty());
        assert!(Word::from_chars("b") < Word::from_chars("aa"));
        assert!(Word::from_chars("ab") < Word::from_chars("ba"));
    }
}
