//! Ranked trees, tree grammars and translations between them.
//!
//! The crate covers string context-free grammars, context-free tree
//! grammars, regular tree grammars and tree adjoining grammars with
//! obligatory and null adjunction constraints. Languages are compared by
//! bounded enumeration.

pub mod cli;
pub mod derive;
pub mod equiv;
pub mod grammar;
pub mod symbol;
pub mod syntax;
pub mod transform;
pub mod tree;

pub use derive::{
    cfg_enumerate, cftg_enumerate, cftg_enumerate_with, cftg_step, cftg_strings, rtg_enumerate,
    rtg_enumerate_with, tag_enumerate, tag_enumerate_with, tag_step, tag_strings, BoundedLanguage,
    Bounds, DeriveError, StringReading, TagLanguages, DEFAULT_MAX_STEPS,
};
pub use equiv::{
    bounded_string_language, bounded_string_language_with, check_weak_equiv, check_weak_equiv_with,
    EquivReport, StringOptions,
};
pub use grammar::format::{parse_grammar, print_grammar, FormatError};
pub use grammar::{
    classify, validate_cftg, validate_tag, CfgRule, Cftg, CftgRule, Constraint, Grammar,
    GrammarClassification, GrammarError, GrammarKind, Rtg, RtgRule, StringCfg, Tag, TagLabel,
    TagTree, TreeRef,
};
pub use symbol::{AlphabetError, MonadicWordAlphabet, RankedAlphabet, Symbol, Word, EPSILON};
pub use syntax::{parse_term, ParseError};
pub use transform::{
    cfg_to_derivation_rtg, cfg_to_monadic_cftg, cftg_to_tag, convert, monadic_cftg_to_cfg,
    monadic_rtg_to_regular_cfg, regular_cfg_to_monadic_rtg, rtg_yield_cfg, tag_to_cftg, CftgToTag,
    TagToCftg, TransformError, Translation,
};
pub use tree::{
    monadic_tree_to_string, string_to_monadic_tree, Label, Path, Term, TermError, Tree, Variable,
};
