//! Iterated hairpin completion of words over an involution alphabet.
//!
//! The crate computes single-step and bounded iterated hairpin completion,
//! classifies a word by the occurrences of a primer α and its complement ᾱ,
//! builds finite automata for the classes whose iterated completion is
//! regular, and decides regularity for non-crossing (m,1), (2,2) and (3,2)
//! words. Every automaton can be checked against the breadth-first closure
//! in [`hc::closure`].

pub mod alphabet;
pub mod analysis;
pub mod automata;
pub mod cli;
pub mod constructions;
pub mod decider;
pub mod error;
pub mod hc;
pub mod word;

pub use alphabet::{InvolutionAlphabet, Letter};
pub use analysis::{analyze, decompose_prefix, minimal_factors, PrimerAnalysis, Side};
pub use automata::{Counterexample, Equivalence, Nfa, NfaJson};
pub use constructions::{
    build_22, build_32_regular, build_m1, build_m1_literal, build_mirror, build_one_sided, conditions_32,
    witness_family, witness_language, witness_word, ThreeTwoConditions, WitnessReport,
};
pub use decider::{decide, DecideOptions, Justification, Outcome, Verdict, Witness, WordClass};
pub use error::{Error, Result};
pub use hc::{closure, hc_step, lhc_step, rhc_step, trace, ClosureResult, Direction, HcStep, Sides};
pub use word::{commute, find_occurrences, is_prefix, is_suffix, Primer, Word};
