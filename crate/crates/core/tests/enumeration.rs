//! Enumerators checked against brute-force oracles and against each other.

mod common;

use std::collections::BTreeSet;

use common::*;
use treegram::*;

#[test]
fn cfg_strings_match_membership_oracle() {
    for seed in 0..40 {
        let g = random_cfg(&mut rng(100 + seed));
        let lang = cfg_enumerate(&g, 6);
        assert!(lang.is_complete(), "seed {seed}");
        let rules = cfg_weighted(&g);
        let expected: BTreeSet<String> = all_words(&["a", "b"], 6)
            .into_iter()
            .filter(|w| min_cost(&rules, g.start(), w).is_some())
            .map(|w| Word::new(w).to_string())
            .collect();
        assert_eq!(strings(lang.iter()), expected, "seed {seed}");
    }
}

/// Ground trees reachable by rewriting, keeping forms of at most `size`
/// nodes. Regular rules never shrink a form, so the pruning is exact.
fn rewrite_closure(g: &Rtg, size: usize) -> BTreeSet<Term> {
    let start = Term::sym(g.start().clone());
    let mut seen = BTreeSet::from([start.clone()]);
    let mut todo = vec![start];
    let mut ground = BTreeSet::new();
    while let Some(t) = todo.pop() {
        let next = cftg_step(g.as_cftg(), &t).unwrap();
        if next.is_empty() {
            ground.insert(t);
            continue;
        }
        for n in next {
            if n.size() <= size && seen.insert(n.clone()) {
                todo.push(n);
            }
        }
    }
    ground
        .into_iter()
        .filter(|t| {
            t.nodes()
                .iter()
                .all(|(_, n)| n.symbol().is_none_or(|s| !g.is_nonterminal(s)))
        })
        .collect()
}

#[test]
fn rtg_trees_match_rewriting() {
    for seed in 0..30 {
        let g = random_rtg(&mut rng(200 + seed));
        let lang = rtg_enumerate(&g, Bounds::trees(9));
        assert!(lang.is_complete(), "seed {seed}");
        let found: BTreeSet<Term> = lang.iter().cloned().collect();
        assert_eq!(found, rewrite_closure(&g, 9), "seed {seed}");
    }
}

#[test]
fn tag_string_engines_agree() {
    let mut tags = vec![match corpus("anbncndn.tag") {
        Grammar::Tag(t) => t,
        _ => unreachable!(),
    }];
    for seed in 0..20 {
        let g = random_linear_monadic_cftg(&mut rng(300 + seed));
        tags.push(cftg_to_tag(&g).unwrap().grammar);
    }
    let mut exact = 0;
    for (i, t) in tags.iter().enumerate() {
        let direct = tag_strings(t, 8, DEFAULT_MAX_STEPS);
        assert!(direct.is_complete(), "tag {i}");
        let via_trees = tag_enumerate(t, Bounds::trees(30).with_string_len(8)).strings;
        let direct = strings(direct.iter());
        let via_trees = strings(via_trees.iter());
        assert!(via_trees.is_subset(&direct), "tag {i}");
        if via_trees == direct {
            exact += 1;
        }
    }
    // Most translations are small enough for the tree bound to be harmless.
    assert!(
        exact >= tags.len() / 2,
        "only {exact} of {} agree",
        tags.len()
    );
}

#[test]
fn linear_strings_agree_with_tree_readings() {
    for seed in 0..20 {
        let g = random_linear_monadic_cftg(&mut rng(400 + seed));
        let reading = StringReading::of(&g);
        let direct = cftg_strings(&g, Bounds::trees(1).with_string_len(8), 1);
        assert!(direct.is_complete(), "seed {seed}");
        let trees = cftg_enumerate(&g, Bounds::trees(30).with_string_len(8));
        let read: BTreeSet<String> = trees
            .iter()
            .map(|t| reading.read(t).unwrap().to_string())
            .collect();
        assert!(read.is_subset(&strings(direct.iter())), "seed {seed}");
    }
    let g = match corpus("anbncndn.cftg") {
        Grammar::Cftg(g) => g,
        _ => unreachable!(),
    };
    let direct = cftg_strings(&g, Bounds::trees(1).with_string_len(12), 1);
    let trees = cftg_enumerate(&g, Bounds::trees(19).with_string_len(12));
    let read: Vec<Word> = trees.iter().map(|t| t.yield_word().unwrap()).collect();
    assert_eq!(strings(direct.iter()), strings(read.iter()));
}

#[test]
fn bounded_languages_do_not_depend_on_workers() {
    for seed in 0..10 {
        let g: Grammar = random_rtg(&mut rng(500 + seed)).into();
        let mut opts = StringOptions::new(8);
        let one = bounded_string_language_with(&g, &opts);
        opts.workers = 3;
        assert_eq!(one, bounded_string_language_with(&g, &opts), "seed {seed}");
    }
}
