use std::collections::{BTreeSet, HashMap, HashSet};

use crate::grammar::StringCfg;
use crate::symbol::{Symbol, Word};

use super::{BoundedLanguage, Bounds, DEFAULT_MAX_STEPS};

fn nullable(g: &StringCfg) -> HashSet<Symbol> {
    let mut set = HashSet::new();
    loop {
        let before = set.len();
        for r in g.rules() {
            if r.rhs.iter().all(|s| set.contains(s)) {
                set.insert(r.lhs.clone());
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

/// Rules without empty right-hand sides generating the same nonempty strings.
fn epsilon_free(g: &StringCfg, nullable: &HashSet<Symbol>) -> HashMap<Symbol, Vec<Vec<Symbol>>> {
    let mut out: HashMap<Symbol, BTreeSet<Vec<Symbol>>> = HashMap::new();
    for r in g.rules() {
        let mut variants: Vec<Vec<Symbol>> = vec![Vec::new()];
        for s in &r.rhs {
            let mut next = Vec::with_capacity(variants.len() * 2);
            for v in variants {
                if nullable.contains(s) {
                    next.push(v.clone());
                }
                let mut kept = v;
                kept.push(s.clone());
                next.push(kept);
            }
            variants = next;
        }
        let entry = out.entry(r.lhs.clone()).or_default();
        for v in variants {
            if !v.is_empty() && v != [r.lhs.clone()] {
                entry.insert(v);
            }
        }
    }
    out.into_iter()
        .map(|(k, v)| (k, v.into_iter().collect()))
        .collect()
}

/// Exact set of strings of length at most `max_len`.
///
/// After removing empty rules no sentential form shrinks, so leftmost
/// derivations over forms of length at most `max_len` cover every such
/// string and the search always terminates.
pub fn cfg_enumerate(g: &StringCfg, max_len: usize) -> BoundedLanguage<Word> {
    let nullable = nullable(g);
    let rules = epsilon_free(g, &nullable);
    let mut found: BTreeSet<Word> = BTreeSet::new();
    if nullable.contains(g.start()) {
        found.insert(Word::empty());
    }
    let start = vec![g.start().clone()];
    let mut seen: HashSet<Vec<Symbol>> = HashSet::new();
    let mut stack = Vec::new();
    if max_len > 0 {
        seen.insert(start.clone());
        stack.push(start);
    }
    while let Some(form) = stack.pop() {
        let Some(i) = form.iter().position(|s| g.is_nonterminal(s)) else {
            found.insert(Word::new(form));
            continue;
        };
        for rhs in rules.get(&form[i]).into_iter().flatten() {
            if form.len() - 1 + rhs.len() > max_len {
                continue;
            }
            let mut next = Vec::with_capacity(form.len() - 1 + rhs.len());
            next.extend_from_slice(&form[..i]);
            next.extend_from_slice(rhs);
            next.extend_from_slice(&form[i + 1..]);
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    BoundedLanguage {
        items: found.into_iter().collect(),
        bounds: Bounds {
            max_tree_size: max_len,
            max_steps: DEFAULT_MAX_STEPS,
            max_string_len: max_len,
        },
        complete_up_to: Some(max_len),
    }
}
