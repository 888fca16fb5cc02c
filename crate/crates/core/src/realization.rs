//! Realizations, their enumeration, and determination strings.
//!
//! A realization replaces every urpath `u(a, b)` by an induced path
//! `a x1 ... xm b` with `m >= 1`, where a vertex `v` sees some `xk` exactly
//! when `(v, u)` is a spoke, and internals of two urpaths are joined exactly
//! when the urpaths form a rung. Internal vertices are named `u.k`.

use crate::error::{Error, Result};
use crate::format::RealizationFile;
use crate::inclusion::contains;
use crate::pathograph::Pathograph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub source: Pathograph,
    pub graph: Pathograph,
    /// Graph vertex of each source vertex.
    pub vertex_map: Vec<usize>,
    /// Internal vertices of each urpath, from its left end to its right end.
    pub internal: Vec<Vec<usize>>,
}

impl Realization {
    /// Checks every realization invariant; the error names the first failure.
    pub fn check(&self) -> std::result::Result<(), String> {
        let (h, g) = (&self.source, &self.graph);
        if !g.is_graph() {
            return Err("the realization is not a graph".into());
        }
        if self.vertex_map.len() != h.n() || self.internal.len() != h.k() {
            return Err("map sizes do not match the source".into());
        }
        // owner[x]: None for source vertices, Some(u) for internals of u.
        let mut owner: Vec<Option<Option<usize>>> = vec![None; g.n()];
        for &x in &self.vertex_map {
            if x >= g.n() || owner[x].is_some() {
                return Err("vertex map is not injective".into());
            }
            owner[x] = Some(None);
        }
        for (u, xs) in self.internal.iter().enumerate() {
            if xs.is_empty() {
                return Err(format!("urpath {} has no internal vertex", h.urpaths[u].name));
            }
            for &x in xs {
                if x >= g.n() || owner[x].is_some() {
                    return Err(format!("vertex {x} is used twice"));
                }
                owner[x] = Some(Some(u));
            }
        }
        if let Some(x) = owner.iter().position(|o| o.is_none()) {
            return Err(format!("vertex {} is not accounted for", g.vertices[x]));
        }
        for a in 0..h.n() {
            for b in a + 1..h.n() {
                if h.has_edge(a, b) != g.has_edge(self.vertex_map[a], self.vertex_map[b]) {
                    return Err(format!("edge {} {} differs", h.vertices[a], h.vertices[b]));
                }
            }
        }
        for (u, ur) in h.urpaths.iter().enumerate() {
            let mut path = vec![self.vertex_map[ur.left]];
            path.extend_from_slice(&self.internal[u]);
            path.push(self.vertex_map[ur.right]);
            for i in 0..path.len() {
                for j in i + 1..path.len() {
                    if g.has_edge(path[i], path[j]) != (j == i + 1) {
                        return Err(format!("path of {} is not induced", ur.name));
                    }
                }
            }
            for v in 0..h.n() {
                if ur.has_endpoint(v) {
                    continue;
                }
                let seen = self.internal[u].iter().any(|&x| g.has_edge(self.vertex_map[v], x));
                if seen != h.has_spoke(v, u) {
                    return Err(format!("spoke {} {} not realized exactly", h.vertices[v], ur.name));
                }
            }
            for u2 in u + 1..h.k() {
                let seen = self.internal[u]
                    .iter()
                    .any(|&x| self.internal[u2].iter().any(|&y| g.has_edge(x, y)));
                if seen != h.has_rung(u, u2) {
                    return Err(format!("rung {} {} not realized exactly", ur.name, h.urpaths[u2].name));
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    /// Binds a labeled graph and replacement paths to a source pathograph.
    /// Each path lists an urpath's vertices end to end.
    pub fn from_file(h: &Pathograph, file: &RealizationFile) -> Result<Realization> {
        let g = &file.graph;
        let vertex_map = h
            .vertices
            .iter()
            .map(|v| g.vertex_index(v).ok_or_else(|| Error::UnknownId(v.clone())))
            .collect::<Result<Vec<usize>>>()?;
        let mut internal: Vec<Option<Vec<usize>>> = vec![None; h.k()];
        for (name, verts) in &file.paths {
            let u = h.urpath_index(name).ok_or_else(|| Error::UnknownId(name.clone()))?;
            let idx = verts
                .iter()
                .map(|v| g.vertex_index(v).ok_or_else(|| Error::UnknownId(v.clone())))
                .collect::<Result<Vec<usize>>>()?;
            let ur = &h.urpaths[u];
            let mut idx = idx;
            if idx.first() == Some(&vertex_map[ur.right]) && idx.last() == Some(&vertex_map[ur.left]) {
                idx.reverse();
            }
            if idx.len() < 3 || idx[0] != vertex_map[ur.left] || idx[idx.len() - 1] != vertex_map[ur.right] {
                return Err(Error::NotRealization(format!("path of {name} does not join its ends")));
            }
            if internal[u].is_some() {
                return Err(Error::NotRealization(format!("two paths given for {name}")));
            }
            internal[u] = Some(idx[1..idx.len() - 1].to_vec());
        }
        let internal = internal
            .into_iter()
            .enumerate()
            .map(|(u, p)| p.ok_or_else(|| Error::NotRealization(format!("no path for {}", h.urpaths[u].name))))
            .collect::<Result<Vec<_>>>()?;
        let r = Realization { source: h.clone(), graph: g.clone(), vertex_map, internal };
        r.check().map_err(Error::NotRealization)?;
        Ok(r)
    }

    pub fn to_file(&self) -> RealizationFile {
        let paths = self
            .source
            .urpaths
            .iter()
            .enumerate()
            .map(|(u, ur)| {
                let mut p = vec![self.graph.vertices[self.vertex_map[ur.left]].clone()];
                p.extend(self.internal[u].iter().map(|&x| self.graph.vertices[x].clone()));
                p.push(self.graph.vertices[self.vertex_map[ur.right]].clone());
                (ur.name.clone(), p)
            })
            .collect();
        RealizationFile { graph: self.graph.clone(), paths }
    }

    /// Internal lengths `m_i`.
    pub fn lengths(&self) -> Vec<usize> {
        self.internal.iter().map(Vec::len).collect()
    }

    /// Whether every spoke and rung is realized by exactly one edge, so that
    /// no edge can be deleted.
    pub fn is_minimal(&self) -> bool {
        let (h, g) = (&self.source, &self.graph);
        for &(v, u) in &h.spokes {
            let c = self.internal[u].iter().filter(|&&x| g.has_edge(self.vertex_map[v], x)).count();
            if c != 1 {
                return false;
            }
        }
        for &(u1, u2) in &h.rungs {
            let c: usize = self.internal[u1]
                .iter()
                .map(|&x| self.internal[u2].iter().filter(|&&y| g.has_edge(x, y)).count())
                .sum();
            if c != 1 {
                return false;
            }
        }
        true
    }
}

/// Whether labeled graph `g` with the given replacement paths realizes `h`.
pub fn is_realization(g: &Pathograph, h: &Pathograph, paths: &[(String, Vec<String>)]) -> Result<bool> {
    let file = RealizationFile { graph: g.clone(), paths: paths.to_vec() };
    match Realization::from_file(h, &file) {
        Ok(_) => Ok(true),
        Err(Error::NotRealization(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Internal vertex name for position `k` (1-based) of urpath `u`.
pub fn internal_name(h: &Pathograph, u: usize, k: usize) -> String {
    format!("{}.{}", h.urpaths[u].name, k)
}

/// Builds the canonical realization with the given lengths and constraint
/// edges. `spoke_masks` follows the order of `h.spokes`, `rung_masks` that of
/// `h.rungs`; bit `i * m2 + j` of a rung mask joins `u1.(i+1)` and `u2.(j+1)`.
fn assemble(h: &Pathograph, lengths: &[usize], spoke_masks: &[u64], rung_masks: &[u64]) -> Realization {
    let mut g = Pathograph::new();
    for v in &h.vertices {
        g.add_vertex(v);
    }
    let mut internal = Vec::with_capacity(h.k());
    for (u, &m) in lengths.iter().enumerate() {
        internal.push((1..=m).map(|k| g.add_vertex(&internal_name(h, u, k))).collect::<Vec<usize>>());
    }
    for &(a, b) in &h.edges {
        g.add_edge(a, b);
    }
    for (u, ur) in h.urpaths.iter().enumerate() {
        let xs = &internal[u];
        g.add_edge(ur.left, xs[0]);
        for w in xs.windows(2) {
            g.add_edge(w[0], w[1]);
        }
        g.add_edge(xs[xs.len() - 1], ur.right);
    }
    for (&(v, u), &mask) in h.spokes.iter().zip(spoke_masks) {
        for (k, &x) in internal[u].iter().enumerate() {
            if mask >> k & 1 == 1 {
                g.add_edge(v, x);
            }
        }
    }
    for (&(u1, u2), &mask) in h.rungs.iter().zip(rung_masks) {
        let m2 = internal[u2].len();
        for (i, &x) in internal[u1].iter().enumerate() {
            for (j, &y) in internal[u2].iter().enumerate() {
                if mask >> (i * m2 + j) & 1 == 1 {
                    g.add_edge(x, y);
                }
            }
        }
    }
    Realization { source: h.clone(), graph: g, vertex_map: (0..h.n()).collect(), internal }
}

/// Iterator over all realizations with every `m_i <= max_internal`.
///
/// Length tuples come in lexicographic order; for each, the spoke and rung
/// edge choices run as an odometer whose first constraint is most
/// significant, each choice counting up from mask 1.
pub struct Realizations {
    h: Pathograph,
    max: usize,
    lengths: Vec<usize>,
    masks: Vec<u64>,
    limits: Vec<u64>,
    done: bool,
}

impl Realizations {
    fn reset_masks(&mut self) {
        let mut limits = Vec::new();
        for &(_, u) in &self.h.spokes {
            limits.push(slot_limit(self.lengths[u]));
        }
        for &(u1, u2) in &self.h.rungs {
            limits.push(slot_limit(self.lengths[u1] * self.lengths[u2]));
        }
        self.masks = vec![1; limits.len()];
        self.limits = limits;
    }

    fn advance(&mut self) {
        for i in (0..self.masks.len()).rev() {
            if self.masks[i] < self.limits[i] {
                self.masks[i] += 1;
                return;
            }
            self.masks[i] = 1;
        }
        for i in (0..self.lengths.len()).rev() {
            if self.lengths[i] < self.max {
                self.lengths[i] += 1;
                self.reset_masks();
                return;
            }
            self.lengths[i] = 1;
        }
        self.done = true;
    }
}

fn slot_limit(slots: usize) -> u64 {
    assert!(slots < 64, "too many edge slots for enumeration");
    (1u64 << slots) - 1
}

impl Iterator for Realizations {
    type Item = Realization;

    fn next(&mut self) -> Option<Realization> {
        if self.done {
            return None;
        }
        let s = self.h.spokes.len();
        let r = assemble(&self.h, &self.lengths, &self.masks[..s], &self.masks[s..]);
        self.advance();
        Some(r)
    }
}

/// All realizations of `h` with internal lengths at most `max_internal`.
pub fn enumerate_realizations(h: &Pathograph, max_internal: usize) -> Realizations {
    assert!(max_internal >= 1, "max_internal must be at least 1");
    let mut it = Realizations {
        h: h.clone(),
        max: max_internal,
        lengths: vec![1; h.k()],
        masks: Vec::new(),
        limits: Vec::new(),
        done: false,
    };
    it.reset_masks();
    it
}

/// One letter of a determination string: a 1-based urpath index and a set of
/// source vertices (bit `v` for vertex `v`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub index: usize,
    pub set: u128,
}

impl Symbol {
    pub fn format(&self, h: &Pathograph) -> String {
        self.format_with(&h.vertices)
    }

    /// Parses a `k:{a,b}` token.
    pub fn parse(h: &Pathograph, token: &str) -> Result<Symbol> {
        Symbol::parse_with(&h.vertices, h.k(), token)
    }

    /// Parses a token against explicit vertex names and urpath count.
    pub fn parse_with(names: &[String], k: usize, token: &str) -> Result<Symbol> {
        let bad = || Error::UnknownSymbol(token.to_string());
        let (idx, rest) = token.split_once(':').ok_or_else(bad)?;
        let index: usize = idx.trim().parse().map_err(|_| bad())?;
        if index == 0 || index > k {
            return Err(bad());
        }
        let inner = rest.trim().strip_prefix('{').and_then(|r| r.strip_suffix('}')).ok_or_else(bad)?;
        let mut set = 0u128;
        for name in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let v = names.iter().position(|n| n == name).ok_or_else(bad)?;
            set |= 1 << v;
        }
        Ok(Symbol { index, set })
    }

    pub fn format_with(&self, names: &[String]) -> String {
        let picked: Vec<&str> = (0..names.len()).filter(|&v| self.set >> v & 1 == 1).map(|v| names[v].as_str()).collect();
        format!("{}:{{{}}}", self.index, picked.join(","))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeterminationString(pub Vec<Symbol>);

impl DeterminationString {
    /// Parses space-separated tokens; an empty text is the empty string.
    pub fn parse(h: &Pathograph, text: &str) -> Result<Self> {
        text.split_whitespace().map(|t| Symbol::parse(h, t)).collect::<Result<Vec<_>>>().map(DeterminationString)
    }

    pub fn format(&self, h: &Pathograph) -> String {
        self.0.iter().map(|s| s.format(h)).collect::<Vec<_>>().join(" ")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Checks the well-formedness rules for strings over a rungless `h`: indices
/// never decrease and all appear; the first symbol of index `i` holds the left
/// end `a_i`, the last holds `b_i`, and neither end shows up elsewhere in that
/// run; other vertices appear only through spokes of `u_i`, and every spoke
/// vertex appears at least once.
pub fn check_well_formed(h: &Pathograph, s: &DeterminationString) -> std::result::Result<(), String> {
    let syms = &s.0;
    let mut start = 0;
    for u in 0..h.k() {
        let index = u + 1;
        let end = start + syms[start..].iter().take_while(|x| x.index == index).count();
        if end == start {
            return Err(match syms.get(start) {
                Some(x) if x.index < index => "index decreases".into(),
                _ => format!("index {index} is missing"),
            });
        }
        let ur = &h.urpaths[u];
        let (a, b) = (1u128 << ur.left, 1u128 << ur.right);
        let mut spoke = 0u128;
        for v in 0..h.n() {
            if h.has_spoke(v, u) {
                spoke |= 1 << v;
            }
        }
        let mut seen = 0u128;
        for (i, x) in syms[start..end].iter().enumerate() {
            let first = i == 0;
            let last = start + i + 1 == end;
            if (x.set & a != 0) != first {
                return Err(format!("left end of index {index} misplaced"));
            }
            if (x.set & b != 0) != last {
                return Err(format!("right end of index {index} misplaced"));
            }
            if x.set & !(a | b | spoke) != 0 {
                return Err(format!("non-spoke vertex in index {index}"));
            }
            seen |= x.set;
        }
        if seen & spoke != spoke {
            return Err(format!("spoke of index {index} unrealized"));
        }
        start = end;
    }
    if start != syms.len() {
        return Err("index decreases or exceeds the urpath count".into());
    }
    Ok(())
}

/// The determination string of a realization of a rungless pathograph.
pub fn determination_string(r: &Realization) -> Result<DeterminationString> {
    if !r.source.is_rungless() {
        return Err(Error::HasRungs);
    }
    // One pass over the edges: string position of each internal vertex,
    // source index of each original one.
    let n = r.graph.n();
    let mut slot = vec![usize::MAX; n];
    let mut source = vec![usize::MAX; n];
    let mut out = Vec::new();
    for (u, xs) in r.internal.iter().enumerate() {
        for &x in xs {
            slot[x] = out.len();
            out.push(Symbol { index: u + 1, set: 0 });
        }
    }
    for (v, &gv) in r.vertex_map.iter().enumerate() {
        source[gv] = v;
    }
    for &(a, b) in &r.graph.edges {
        for (x, y) in [(a, b), (b, a)] {
            if slot[x] != usize::MAX && source[y] != usize::MAX {
                out[slot[x]].set |= 1 << source[y];
            }
        }
    }
    Ok(DeterminationString(out))
}

/// Rebuilds the canonical realization encoded by a well-formed string.
pub fn realization_from_string(h: &Pathograph, s: &DeterminationString) -> Result<Realization> {
    if !h.is_rungless() {
        return Err(Error::HasRungs);
    }
    check_well_formed(h, s).map_err(Error::IllFormed)?;
    let mut g = Pathograph::new();
    for v in &h.vertices {
        g.add_vertex(v);
    }
    for &(a, b) in &h.edges {
        g.add_edge(a, b);
    }
    let mut internal = vec![Vec::new(); h.k()];
    for sym in &s.0 {
        let u = sym.index - 1;
        let x = g.add_vertex(&internal_name(h, u, internal[u].len() + 1));
        if let Some(&prev) = internal[u].last() {
            g.add_edge(prev, x);
        }
        for v in 0..h.n() {
            if sym.set >> v & 1 == 1 {
                g.add_edge(v, x);
            }
        }
        internal[u].push(x);
    }
    Ok(Realization { source: h.clone(), graph: g, vertex_map: (0..h.n()).collect(), internal })
}

/// Whether `g` contains no member of `family`.
pub fn is_f_free(g: &Pathograph, family: &[Pathograph]) -> bool {
    family.iter().all(|f| !contains(g, f))
}

/// The first enumerated `family`-free realization within the bound, if any.
pub fn decide_bounded(h: &Pathograph, family: &[Pathograph], max_internal: usize) -> Option<Realization> {
    enumerate_realizations(h, max_internal).find(|r| is_f_free(&r.graph, family))
}
