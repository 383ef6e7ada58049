//! Hat-guessing games on digraphs: exact search, reductions, classifiers for small
//! families, strategy constructors, prism packings and local-lemma bounds.

pub mod admissible;
pub mod classifiers;
pub mod constructors;
pub mod ease;
pub mod error;
pub mod format;
pub mod game;
pub mod hints;
pub mod lll;
pub mod oracle;
pub mod outcome;
pub mod prisms;

pub use ease::{compare_ease, derive_ease, lift_along, lift_strategy, Ease, EaseStep};
pub use error::{Error, Result};
pub use format::{parse_game, parse_strategy, print_game, print_strategy};
pub use game::{
    Color, ColorSet, Digraph, Game, GameBuilder, PartialColoring, Plan, Rational, Strategy,
};
pub use oracle::{decide_winnable, find_disprover, verify_strategy, win_counts, Verification};
pub use outcome::{Outcome, Rule, SearchBudget, SearchStats, TraceStep, Verdict};
