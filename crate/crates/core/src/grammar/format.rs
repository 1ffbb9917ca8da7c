//! Line-oriented grammar files.
//!
//! ```text
//! %kind cftg
//! %terminals a:1 b:1
//! %nonterminals S:0 F:1
//! %start S
//! S -> F(eps)
//! F(x1) -> a(F(b(x1)))
//! ```
//!
//! `cfg` and `tag` files declare symbols without ranks. CFG rules are
//! `A -> sym sym …` (an empty right-hand side or `eps` is an epsilon rule).
//! TAG files list trees with `%initial` and `%auxiliary`; `A!` marks an
//! obligatory adjunction constraint and `A*` the foot node. `#` starts a comment.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::symbol::{variable_index, RankedAlphabet, Symbol};
use crate::syntax::{parse_raw, raw_to_term, Cursor, ParseError, RawNode};

use super::{
    CfgRule, Cftg, CftgRule, Grammar, GrammarError, GrammarKind, Rtg, RtgRule, StringCfg, Tag,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("parse error at {0}")]
    Syntax(#[from] ParseError),
    #[error("invalid grammar: {0}")]
    Invalid(#[from] GrammarError),
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

enum Body<'a> {
    Rule(Line<'a>),
    Initial(Line<'a>, usize),
    Auxiliary(Line<'a>, usize),
}

pub fn parse_grammar(src: &str) -> Result<Grammar, FormatError> {
    let mut kind: Option<GrammarKind> = None;
    let mut terminals: Vec<(Symbol, Option<usize>, usize, usize)> = Vec::new();
    let mut nonterminals: Vec<(Symbol, Option<usize>, usize, usize)> = Vec::new();
    let mut start: Option<Symbol> = None;
    let mut body = Vec::new();

    for (idx, full) in src.lines().enumerate() {
        let number = idx + 1;
        let text = full.split('#').next().unwrap_or("");
        let trimmed = text.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let col0 = text.len() - trimmed.len() + 1;
        if let Some(rest) = trimmed.strip_prefix('%') {
            let word_len = rest.find(|c: char| c.is_whitespace()).unwrap_or(rest.len());
            let (directive, args) = rest.split_at(word_len);
            let args_col = col0 + 1 + word_len;
            match directive {
                "kind" => {
                    let k = args.trim();
                    if kind.is_some() {
                        return Err(ParseError::new(number, col0, "duplicate %kind").into());
                    }
                    kind = Some(
                        k.parse()
                            .map_err(|m: String| ParseError::new(number, args_col, m))?,
                    );
                }
                "terminals" => declarations(args, number, args_col, &mut terminals)?,
                "nonterminals" => declarations(args, number, args_col, &mut nonterminals)?,
                "start" => {
                    let mut cur = Cursor::new(args, number, args_col);
                    let name = cur.ident()?;
                    if !cur.at_end() {
                        return Err(cur.error("expected a single start symbol").into());
                    }
                    start = Some(Symbol::new(&name));
                }
                "initial" => body.push(Body::Initial(Line { number, text: args }, args_col)),
                "auxiliary" => body.push(Body::Auxiliary(Line { number, text: args }, args_col)),
                other => {
                    return Err(ParseError::new(
                        number,
                        col0,
                        format!("unknown directive %{other}"),
                    )
                    .into())
                }
            }
        } else {
            body.push(Body::Rule(Line { number, text }));
        }
    }

    let kind = kind.ok_or_else(|| ParseError::new(1, 1, "missing %kind header"))?;
    let start = start.ok_or_else(|| ParseError::new(1, 1, "missing %start header"))?;

    match kind {
        GrammarKind::Cfg | GrammarKind::Tag => {
            for (s, rank, line, col) in terminals.iter().chain(&nonterminals) {
                if rank.is_some() {
                    return Err(ParseError::new(
                        *line,
                        *col,
                        format!("`{s}`: {kind} symbols are declared without ranks"),
                    )
                    .into());
                }
            }
        }
        GrammarKind::Cftg | GrammarKind::Rtg => {}
    }

    match kind {
        GrammarKind::Cfg => {
            let n: BTreeSet<Symbol> = nonterminals.into_iter().map(|d| d.0).collect();
            let v: BTreeSet<Symbol> = terminals.into_iter().map(|d| d.0).collect();
            let mut rules = Vec::new();
            for b in body {
                let Body::Rule(line) = b else {
                    return Err(misplaced(&b, kind));
                };
                let (lhs, rhs) = split_rule(&line)?;
                let mut cur = Cursor::new(lhs, line.number, 1);
                let lhs = Symbol::new(&cur.ident()?);
                if !cur.at_end() {
                    return Err(cur.error("expected `->`").into());
                }
                let mut symbols = Vec::new();
                let mut cur = Cursor::new(rhs.0, line.number, rhs.1);
                while !cur.at_end() {
                    symbols.push(Symbol::new(&cur.ident()?));
                }
                if symbols.len() == 1 && symbols[0].is_epsilon() {
                    symbols.clear();
                }
                rules.push(CfgRule::new(lhs, symbols));
            }
            Ok(Grammar::Cfg(StringCfg::new(n, v, start, rules)?))
        }
        GrammarKind::Cftg | GrammarKind::Rtg => {
            let t = ranked(terminals)?;
            let n = ranked(nonterminals)?;
            let mut rules = Vec::new();
            for b in body {
                let Body::Rule(line) = b else {
                    return Err(misplaced(&b, kind));
                };
                let (lhs, rhs) = split_rule(&line)?;
                let lhs = parse_raw(lhs, line.number, 1)?;
                let name = lhs_name(&lhs, &n)?;
                let rhs = raw_to_term(&parse_raw(rhs.0, line.number, rhs.1)?)?;
                rules.push(CftgRule::new(name, rhs));
            }
            if kind == GrammarKind::Cftg {
                Ok(Grammar::Cftg(Cftg::new(t, n, start, rules)?))
            } else {
                if let Some((s, r)) = n.iter().find(|(_, r)| *r != 0) {
                    return Err(GrammarError::RankedNonterminal {
                        symbol: s.clone(),
                        rank: r,
                    }
                    .into());
                }
                let names: Vec<Symbol> = n.symbols().cloned().collect();
                let rules = rules
                    .into_iter()
                    .map(|r| RtgRule::new(r.lhs, r.rhs))
                    .collect();
                Ok(Grammar::Rtg(Rtg::new(t, names, start, rules)?))
            }
        }
        GrammarKind::Tag => {
            let v: BTreeSet<Symbol> = terminals.into_iter().map(|d| d.0).collect();
            let n: BTreeSet<Symbol> = nonterminals.into_iter().map(|d| d.0).collect();
            let mut initial = Vec::new();
            let mut auxiliary = Vec::new();
            for b in body {
                match b {
                    Body::Initial(line, col) => initial.push(Tag::resolve(
                        &parse_raw(line.text, line.number, col)?,
                        &v,
                        &n,
                    )?),
                    Body::Auxiliary(line, col) => auxiliary.push(Tag::resolve(
                        &parse_raw(line.text, line.number, col)?,
                        &v,
                        &n,
                    )?),
                    Body::Rule(line) => {
                        return Err(ParseError::new(
                            line.number,
                            1,
                            "tag files list trees with %initial and %auxiliary",
                        )
                        .into())
                    }
                }
            }
            Ok(Grammar::Tag(Tag::new(v, n, start, initial, auxiliary)?))
        }
    }
}

fn misplaced(b: &Body<'_>, kind: GrammarKind) -> FormatError {
    let line = match b {
        Body::Rule(l) | Body::Initial(l, _) | Body::Auxiliary(l, _) => l.number,
    };
    ParseError::new(
        line,
        1,
        format!("%initial/%auxiliary are not allowed in a {kind} file"),
    )
    .into()
}

fn declarations(
    args: &str,
    line: usize,
    col0: usize,
    out: &mut Vec<(Symbol, Option<usize>, usize, usize)>,
) -> Result<(), ParseError> {
    let mut cur = Cursor::new(args, line, col0);
    while !cur.at_end() {
        let col = cur.column();
        let name = cur.ident()?;
        let rank = if cur.peek() == Some(b':') {
            cur.eat(b':');
            Some(cur.number()?)
        } else {
            None
        };
        out.push((Symbol::new(&name), rank, line, col));
    }
    Ok(())
}

fn ranked(
    decls: Vec<(Symbol, Option<usize>, usize, usize)>,
) -> Result<RankedAlphabet, GrammarError> {
    let mut a = RankedAlphabet::default();
    for (s, r, _, _) in decls {
        a.insert(s, r.unwrap_or(0))?;
    }
    Ok(a)
}

/// Splits `lhs -> rhs`, returning the rhs with its starting column.
fn split_rule<'a>(line: &Line<'a>) -> Result<(&'a str, (&'a str, usize)), ParseError> {
    let at = line
        .text
        .find("->")
        .ok_or_else(|| ParseError::new(line.number, 1, "expected `lhs -> rhs`"))?;
    Ok((&line.text[..at], (&line.text[at + 2..], at + 3)))
}

fn lhs_name(lhs: &RawNode, nonterminals: &RankedAlphabet) -> Result<Symbol, ParseError> {
    if lhs.bar || lhs.foot {
        return Err(lhs.error("unexpected mark on a left-hand side"));
    }
    if variable_index(&lhs.name).is_some() {
        return Err(lhs.error("a variable cannot be a left-hand side"));
    }
    for (i, c) in lhs.children.iter().enumerate() {
        let ok = c.children.is_empty()
            && !c.bar
            && !c.foot
            && variable_index(&c.name) == Some(Ok(i + 1));
        if !ok {
            return Err(c.error(format!("expected variable x{} in left-hand side", i + 1)));
        }
    }
    if let Some(rank) = nonterminals.rank(&lhs.name) {
        if rank != lhs.children.len() {
            return Err(lhs.error(format!(
                "`{}` has rank {rank} but the left-hand side lists {} variables",
                lhs.name,
                lhs.children.len()
            )));
        }
    }
    Ok(Symbol::new(&lhs.name))
}

/// Canonical text form; `parse_grammar(&print_grammar(g)) == g`.
pub fn print_grammar(g: &Grammar) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "%kind {}", g.kind());
    match g {
        Grammar::Cfg(g) => {
            let _ = writeln!(out, "%terminals{}", plain_list(g.terminals().iter()));
            let _ = writeln!(out, "%nonterminals{}", plain_list(g.nonterminals().iter()));
            let _ = writeln!(out, "%start {}", g.start());
            for r in g.rules() {
                let _ = write!(out, "{} ->", r.lhs);
                for s in &r.rhs {
                    let _ = write!(out, " {s}");
                }
                out.push('\n');
            }
        }
        Grammar::Cftg(g) => print_cftg(&mut out, g),
        Grammar::Rtg(g) => print_cftg(&mut out, g.as_cftg()),
        Grammar::Tag(g) => {
            let visible = g.terminals().iter().filter(|s| !s.is_epsilon());
            let _ = writeln!(out, "%terminals{}", plain_list(visible));
            let _ = writeln!(out, "%nonterminals{}", plain_list(g.nonterminals().iter()));
            let _ = writeln!(out, "%start {}", g.start());
            for t in g.initial_trees() {
                let _ = writeln!(out, "%initial {t}");
            }
            for t in g.auxiliary_trees() {
                let _ = writeln!(out, "%auxiliary {t}");
            }
        }
    }
    out
}

/// [`print_grammar`] preceded by `#` comment lines.
pub fn print_grammar_with_notes(g: &Grammar, notes: &[String]) -> String {
    let mut out = String::new();
    for n in notes {
        let _ = writeln!(out, "# {n}");
    }
    out.push_str(&print_grammar(g));
    out
}

fn plain_list<'a>(it: impl Iterator<Item = &'a Symbol>) -> String {
    it.map(|s| format!(" {s}")).collect()
}

fn print_cftg(out: &mut String, g: &Cftg) {
    let ranked = |a: &RankedAlphabet| -> String {
        a.iter()
            .filter(|(s, _)| !s.is_epsilon())
            .map(|(s, r)| format!(" {s}:{r}"))
            .collect()
    };
    let _ = writeln!(out, "%terminals{}", ranked(g.terminals()));
    let _ = writeln!(out, "%nonterminals{}", ranked(g.nonterminals()));
    let _ = writeln!(out, "%start {}", g.start());
    for (i, r) in g.rules().iter().enumerate() {
        let m = g.rank_of_lhs(i);
        let _ = write!(out, "{}", r.lhs);
        if m > 0 {
            let vars: Vec<String> = (1..=m).map(|j| format!("x{j}")).collect();
            let _ = write!(out, "({})", vars.join(", "));
        }
        let _ = writeln!(out, " -> {}", r.rhs);
    }
}
