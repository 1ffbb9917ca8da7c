use crate::grammar::{classify, CfgRule, Cftg, CftgRule, StringCfg};
use crate::symbol::{RankedAlphabet, Symbol};
use crate::tree::{Label, Term};

use super::{Names, TransformError, Translation};

/// Reads a string grammar as a monadic tree grammar: letters become unary
/// terminals, nonterminals take the rest of the string as their argument.
///
/// `A -> w1 … wn` becomes `A(x1) -> w1(…wn(x1)…)`, so an empty rule becomes
/// `A(x1) -> x1`, and a new start symbol closes the string with `eps`.
pub fn cfg_to_monadic_cftg(g: &StringCfg) -> Result<Translation<Cftg>, TransformError> {
    let mut names = Names::new(g.nonterminals().iter().chain(g.terminals()));
    let start = names.fresh(&format!("{}'", g.start()));

    let mut terminals = RankedAlphabet::default();
    for v in g.terminals() {
        terminals
            .insert(v.clone(), 1)
            .map_err(crate::grammar::GrammarError::from)?;
    }
    let mut nonterminals = RankedAlphabet::default();
    nonterminals
        .insert(start.clone(), 0)
        .map_err(crate::grammar::GrammarError::from)?;
    for a in g.nonterminals() {
        nonterminals
            .insert(a.clone(), 1)
            .map_err(crate::grammar::GrammarError::from)?;
    }

    let mut rules = vec![CftgRule::new(
        start.clone(),
        Term::app(g.start().clone(), vec![Term::epsilon()]),
    )];
    for r in g.rules() {
        let chain = r
            .rhs
            .iter()
            .rev()
            .fold(Term::var(1), |acc, s| Term::app(s.clone(), vec![acc]));
        rules.push(CftgRule::new(r.lhs.clone(), chain));
    }
    Ok(Translation {
        grammar: Cftg::new(terminals, nonterminals, start.clone(), rules)?,
        notes: vec![format!(
            "{start} is the new start symbol, {start} -> {}(eps)",
            g.start()
        )],
    })
}

/// Reads every root-to-leaf path of every right-hand side as a string rule.
/// Variables and `eps` carry no letters and are dropped.
///
/// Nonterminals of rank above one are kept as they are. The construction is
/// exact for grammars whose reachable nonterminals have rank at most one and
/// whose rules keep their argument.
pub fn monadic_cftg_to_cfg(g: &Cftg) -> Result<Translation<StringCfg>, TransformError> {
    if !classify(g).is_monadic_terminals {
        let (symbol, rank) = g
            .terminals()
            .iter()
            .find(|(s, r)| if s.is_epsilon() { *r != 0 } else { *r != 1 })
            .map(|(s, r)| (s.clone(), r))
            .expect("a non-monadic terminal exists");
        return Err(TransformError::NonMonadic { symbol, rank });
    }
    let mut rules: Vec<CfgRule> = Vec::new();
    for r in g.rules() {
        for path in r.rhs.leaf_paths() {
            let rhs: Vec<Symbol> = path
                .iter()
                .filter_map(|l| match l {
                    Label::Sym(s) if !s.is_epsilon() => Some(s.clone()),
                    _ => None,
                })
                .collect();
            let rule = CfgRule::new(r.lhs.clone(), rhs);
            if !rules.contains(&rule) {
                rules.push(rule);
            }
        }
    }
    let terminals = g.terminals().symbols().filter(|s| !s.is_epsilon()).cloned();
    let grammar = StringCfg::new(
        g.nonterminals().symbols().cloned(),
        terminals,
        g.start().clone(),
        rules,
    )?;
    Ok(Translation {
        grammar,
        notes: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::format::parse_grammar;
    use crate::grammar::Grammar;

    fn rules_of(g: &Cftg) -> Vec<String> {
        g.rules()
            .iter()
            .map(|r| format!("{} -> {}", r.lhs, r.rhs))
            .collect()
    }

    #[test]
    fn balanced_strings() {
        let g = StringCfg::from_compact("S", &["S -> aSb", "S ->"]).unwrap();
        let t = cfg_to_monadic_cftg(&g).unwrap().grammar;
        assert_eq!(
            rules_of(&t),
            ["S' -> S(eps)", "S -> a(S(b(x1)))", "S -> x1"]
        );
        let c = classify(&t);
        assert!(c.is_monadic_terminals && c.all_rules_linear);
        assert_eq!(c.max_nonterminal_rank, 1);
    }

    #[test]
    fn empty_only_and_primed_start() {
        let g = StringCfg::from_compact("S", &["S ->"]).unwrap();
        let t = cfg_to_monadic_cftg(&g).unwrap().grammar;
        assert_eq!(rules_of(&t), ["S' -> S(eps)", "S -> x1"]);

        let g = StringCfg::new(
            [Symbol::new("S"), Symbol::new("S'")],
            [Symbol::new("a")],
            "S",
            vec![
                CfgRule::new("S", vec![Symbol::new("S'")]),
                CfgRule::new("S'", vec![Symbol::new("a")]),
            ],
        )
        .unwrap();
        let t = cfg_to_monadic_cftg(&g).unwrap().grammar;
        assert_eq!(t.start().as_str(), "S''");
    }

    #[test]
    fn paths_become_rules() {
        let src = "%kind cftg
%terminals a:1 b:1
%nonterminals S:0 F:1
%start S
S -> F(eps)
S -> eps
F(x1) -> a(F(b(x1)))
F(x1) -> a(b(x1))
";
        let Grammar::Cftg(g) = parse_grammar(src).unwrap() else {
            panic!()
        };
        let c = monadic_cftg_to_cfg(&g).unwrap().grammar;
        let shown: Vec<String> = c
            .rules()
            .iter()
            .map(|r| {
                let rhs: Vec<&str> = r.rhs.iter().map(Symbol::as_str).collect();
                format!("{} -> {}", r.lhs, rhs.join(" "))
            })
            .collect();
        assert_eq!(shown, ["S -> F", "S -> ", "F -> a F b", "F -> a b"]);
    }

    #[test]
    fn rejects_ranked_terminals() {
        let src = "%kind cftg
%terminals f:2 a:0
%nonterminals S
%start S
S -> f(a, a)
";
        let Grammar::Cftg(g) = parse_grammar(src).unwrap() else {
            panic!()
        };
        assert!(matches!(
            monadic_cftg_to_cfg(&g),
            Err(TransformError::NonMonadic { .. })
        ));
    }
}
