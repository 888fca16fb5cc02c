//! Bitset adjacency index used by the search routines.
//!
//! Vertices and urpaths are limited to 128 each, which is far beyond what the
//! exhaustive searches can handle anyway.

use crate::pathograph::{Elem, Pathograph};

pub const MAX_ELEMS: usize = 128;

/// A set of elements: one bitmask for vertices, one for urpaths.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet {
    pub v: u128,
    pub u: u128,
}

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet { v: 0, u: 0 };

    pub fn single(e: Elem) -> Self {
        match e {
            Elem::V(i) => ElemSet { v: 1 << i, u: 0 },
            Elem::U(i) => ElemSet { v: 0, u: 1 << i },
        }
    }

    pub fn is_empty(&self) -> bool {
        self.v == 0 && self.u == 0
    }

    pub fn intersects(&self, o: &ElemSet) -> bool {
        self.v & o.v != 0 || self.u & o.u != 0
    }

    pub fn union(&self, o: &ElemSet) -> ElemSet {
        ElemSet { v: self.v | o.v, u: self.u | o.u }
    }

    pub fn insert(&mut self, e: Elem) {
        *self = self.union(&ElemSet::single(e));
    }
}

pub fn bits(mut x: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(i)
        }
    })
}

#[derive(Clone, Debug)]
pub struct AdjIndex {
    pub n: usize,
    pub k: usize,
    /// Edge neighbors of each vertex.
    pub vv: Vec<u128>,
    /// Spoke urpaths of each vertex.
    pub vu: Vec<u128>,
    /// Spoke vertices of each urpath.
    pub uv: Vec<u128>,
    /// Rung neighbors of each urpath.
    pub uu: Vec<u128>,
    /// Urpaths having each vertex as an endpoint.
    pub inc: Vec<u128>,
    pub ends: Vec<(usize, usize)>,
}

impl AdjIndex {
    pub fn new(p: &Pathograph) -> Self {
        let (n, k) = (p.n(), p.k());
        assert!(n <= MAX_ELEMS && k <= MAX_ELEMS, "pathograph too large for search ({n} vertices, {k} urpaths)");
        let mut a = AdjIndex {
            n,
            k,
            vv: vec![0; n],
            vu: vec![0; n],
            uv: vec![0; k],
            uu: vec![0; k],
            inc: vec![0; n],
            ends: p.urpaths.iter().map(|u| (u.left, u.right)).collect(),
        };
        for &(x, y) in &p.edges {
            a.vv[x] |= 1 << y;
            a.vv[y] |= 1 << x;
        }
        for &(v, u) in &p.spokes {
            a.vu[v] |= 1 << u;
            a.uv[u] |= 1 << v;
        }
        for &(x, y) in &p.rungs {
            a.uu[x] |= 1 << y;
            a.uu[y] |= 1 << x;
        }
        for (i, u) in p.urpaths.iter().enumerate() {
            a.inc[u.left] |= 1 << i;
            a.inc[u.right] |= 1 << i;
        }
        a
    }

    /// All elements adjacent to at least one element of `s`.
    pub fn nbr(&self, s: &ElemSet) -> ElemSet {
        let mut out = ElemSet::EMPTY;
        for i in bits(s.v) {
            out.v |= self.vv[i];
            out.u |= self.vu[i];
        }
        for i in bits(s.u) {
            out.v |= self.uv[i];
            out.u |= self.uu[i];
        }
        out
    }

    pub fn sets_adjacent(&self, a: &ElemSet, b: &ElemSet) -> bool {
        self.nbr(a).intersects(b)
    }

    pub fn elem_adjacent(&self, a: Elem, b: Elem) -> bool {
        self.nbr(&ElemSet::single(a)).intersects(&ElemSet::single(b))
    }
}
