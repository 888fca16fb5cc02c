use crate::error::{Error, Result};
use crate::pathograph::Pathograph;
use crate::realization::{DeterminationString, Symbol};

/// The symbols `{1..k} x 2^V(h)` of a rungless pathograph, numbered
/// `(index - 1) * 2^n + mask`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    pub names: Vec<String>,
    pub k: usize,
}

/// Alphabets above this size are refused rather than materialized.
pub const MAX_SYMBOLS: usize = 1 << 16;

impl Alphabet {
    pub fn of(h: &Pathograph) -> Result<Alphabet> {
        if !h.is_rungless() {
            return Err(Error::HasRungs);
        }
        if h.k() > 0 && (h.n() >= 16 || h.k() << h.n() > MAX_SYMBOLS) {
            return Err(Error::BoundExceeded(format!("alphabet of {} x 2^{} symbols", h.k(), h.n())));
        }
        Ok(Alphabet { names: h.vertices.clone(), k: h.k() })
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn len(&self) -> usize {
        if self.k == 0 {
            0
        } else {
            self.k << self.n()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn symbol(&self, id: usize) -> Symbol {
        Symbol { index: (id >> self.n()) + 1, set: (id & ((1 << self.n()) - 1)) as u128 }
    }

    pub fn id(&self, s: Symbol) -> Result<usize> {
        if s.index == 0 || s.index > self.k || s.set >> self.n() != 0 {
            return Err(Error::UnknownSymbol(s.format_with(&self.names)));
        }
        Ok(((s.index - 1) << self.n()) | s.set as usize)
    }

    /// Every symbol in id order.
    pub fn symbols(&self) -> Vec<Symbol> {
        (0..self.len()).map(|i| self.symbol(i)).collect()
    }

    pub fn format(&self, id: usize) -> String {
        self.symbol(id).format_with(&self.names)
    }

    pub fn parse_token(&self, token: &str) -> Result<usize> {
        self.id(Symbol::parse_with(&self.names, self.k, token)?)
    }

    pub fn encode(&self, s: &DeterminationString) -> Result<Vec<usize>> {
        s.0.iter().map(|&x| self.id(x)).collect()
    }

    pub fn decode(&self, ids: &[usize]) -> DeterminationString {
        DeterminationString(ids.iter().map(|&i| self.symbol(i)).collect())
    }

    pub fn format_word(&self, ids: &[usize]) -> String {
        ids.iter().map(|&i| self.format(i)).collect::<Vec<_>>().join(" ")
    }
}

/// All `K * 2^N` symbols of `h` in canonical order.
pub fn alphabet(h: &Pathograph) -> Result<Vec<Symbol>> {
    Ok(Alphabet::of(h)?.symbols())
}
