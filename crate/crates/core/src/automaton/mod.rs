//! Finite automata over determination strings, and the construction of the
//! machine accepting exactly the strings of family-free realizations.

pub mod alphabet;
pub mod build;
pub mod dfa;
pub mod machine;
pub mod nfa;
pub mod partial;
pub mod regex;
pub mod search;
pub mod shape;

pub use alphabet::{alphabet, Alphabet};
pub use build::{build_decision_dfa, build_illformed, build_wellformed, distinct_shapes, family_shapes, mphi_dfa};
pub use dfa::Dfa;
pub use nfa::{Label, Nfa};
pub use partial::{enumerate_partial_inclusions, restrict, PartialInclusion};
pub use regex::regex_to_nfa;
pub use search::{build_md, build_mphi, enumerate_search_data, SearchData};
