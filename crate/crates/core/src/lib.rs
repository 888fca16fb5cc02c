//! Pathographs: graphs with abstract induced-path edges, and the machinery to
//! decide whether every graph avoiding a finite family of them is captured by
//! a regular language of determination strings.

pub mod adj;
pub mod automaton;
pub mod closedcase;
pub mod encodings;
pub mod error;
pub mod format;
pub mod inclusion;
pub mod iso;
pub mod pathograph;
pub mod random;
pub mod realization;
pub mod reductions;
pub mod truemper;
pub mod paths;

pub use error::{Error, Result};
pub use pathograph::{Elem, Pathograph, Urpath};
