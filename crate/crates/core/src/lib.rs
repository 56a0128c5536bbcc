//! Rewriting engine and desk-scale verifier for a finitely presented
//! semigroup with zero whose ideal `L·H` is infinite while every `L·XYYZ`
//! vanishes.
//!
//! Module map:
//!
//! * [`word`]: letters, words, the text format, factor and square search.
//! * [`presentation`]: the expanded relations and rule files.
//! * [`invariants`]: conserved counts, shapes, the length potential.
//! * [`engine`]: class enumeration, zero and equivalence decisions.
//! * [`trace`]: derivation certificates and their checker.
//! * [`squarefree`]: generation and enumeration of square-free words.
//! * [`verifier`]: exhaustive suites over bounded word sets.

pub mod engine;
pub mod invariants;
pub mod presentation;
pub mod squarefree;
pub mod trace;
pub mod verifier;
pub mod word;

pub use engine::{ClassReport, Engine, EngineError, EngineOptions, ScanOrder};
pub use invariants::{classify_shape, ivector, potential, pq_s_invariant, InvariantVector, Shape};
pub use presentation::{standard_presentation, Direction, Presentation, Rule, RuleKind, RuleTag};
pub use squarefree::{count_squarefree, enumerate_squarefree, gen_morphism, TernaryWord};
pub use trace::{replay, DerivationStep, DerivationTrace, ReplayError};
pub use word::{find_factor, find_squares, format_word, parse_word, Letter, Word, WordError};
pub use verifier::{run_all, SuiteId, SuiteResult, Verifier, VerifyConfig};
