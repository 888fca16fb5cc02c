//! The pathograph data model.
//!
//! A pathograph has vertices, urpaths (placeholders for induced paths with at
//! least one internal vertex), edges, spokes (vertex to urpath) and rungs
//! (urpath to urpath). Everything is stored by index; names are kept only for
//! I/O. Urpath order is significant: position `i` is urpath index `i + 1` in
//! determination strings, and `(left, right)` is its reading direction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Urpath {
    pub name: String,
    pub left: usize,
    pub right: usize,
}

impl Urpath {
    pub fn has_endpoint(&self, v: usize) -> bool {
        self.left == v || self.right == v
    }

    pub fn other_end(&self, v: usize) -> usize {
        if self.left == v {
            self.right
        } else {
            self.left
        }
    }
}

/// A vertex or an urpath of some pathograph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    V(usize),
    U(usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pathograph {
    pub vertices: Vec<String>,
    pub urpaths: Vec<Urpath>,
    /// Unordered pairs stored as `(min, max)`.
    pub edges: BTreeSet<(usize, usize)>,
    /// `(vertex, urpath)`.
    pub spokes: BTreeSet<(usize, usize)>,
    /// Unordered pairs stored as `(min, max)`.
    pub rungs: BTreeSet<(usize, usize)>,
}

/// One structural problem found by [`Pathograph::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateVertex(String),
    DuplicateUrpath(String),
    LoopEdge(String),
    BadReference(String),
    EqualEndpoints(String),
    EndpointsAdjacent(String),
    EndpointSpoke { vertex: String, urpath: String },
    LoopRung(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertex(v) => write!(f, "duplicate vertex {v}"),
            Violation::DuplicateUrpath(u) => write!(f, "duplicate urpath {u}"),
            Violation::LoopEdge(v) => write!(f, "edge from {v} to itself"),
            Violation::BadReference(s) => write!(f, "reference to missing element: {s}"),
            Violation::EqualEndpoints(u) => write!(f, "urpath {u} has equal endpoints"),
            Violation::EndpointsAdjacent(u) => write!(f, "urpath endpoints adjacent: {u}"),
            Violation::EndpointSpoke { vertex, urpath } => {
                write!(f, "endpoint spoke: {vertex} is an endpoint of {urpath}")
            }
            Violation::LoopRung(u) => write!(f, "rung from {u} to itself"),
        }
    }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Pathograph {
    pub fn new() -> Self {
        Self::default()
    }

    /// A graph on the given vertex names and edges (by name).
    pub fn graph(vertices: &[&str], edges: &[(&str, &str)]) -> Self {
        let mut p = Pathograph::new();
        for v in vertices {
            p.add_vertex(v);
        }
        for (a, b) in edges {
            let (a, b) = (p.vertex_index(a).unwrap(), p.vertex_index(b).unwrap());
            p.add_edge(a, b);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn k(&self) -> usize {
        self.urpaths.len()
    }

    pub fn add_vertex(&mut self, name: &str) -> usize {
        self.vertices.push(name.to_string());
        self.vertices.len() - 1
    }

    pub fn add_urpath(&mut self, name: &str, left: usize, right: usize) -> usize {
        self.urpaths.push(Urpath { name: name.to_string(), left, right });
        self.urpaths.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.edges.insert(ordered(a, b));
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.edges.remove(&ordered(a, b));
    }

    pub fn add_spoke(&mut self, v: usize, u: usize) {
        self.spokes.insert((v, u));
    }

    pub fn add_rung(&mut self, u1: usize, u2: usize) {
        self.rungs.insert(ordered(u1, u2));
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&ordered(a, b))
    }

    pub fn has_spoke(&self, v: usize, u: usize) -> bool {
        self.spokes.contains(&(v, u))
    }

    pub fn has_rung(&self, u1: usize, u2: usize) -> bool {
        self.rungs.contains(&ordered(u1, u2))
    }

    pub fn is_graph(&self) -> bool {
        self.urpaths.is_empty() && self.spokes.is_empty() && self.rungs.is_empty()
    }

    pub fn is_rungless(&self) -> bool {
        self.rungs.is_empty()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn urpath_index(&self, name: &str) -> Option<usize> {
        self.urpaths.iter().position(|u| u.name == name)
    }

    /// Adjacency between two elements: edges, spokes and rungs.
    pub fn adjacent(&self, a: Elem, b: Elem) -> bool {
        match (a, b) {
            (Elem::V(x), Elem::V(y)) => x != y && self.has_edge(x, y),
            (Elem::V(v), Elem::U(u)) | (Elem::U(u), Elem::V(v)) => self.has_spoke(v, u),
            (Elem::U(x), Elem::U(y)) => x != y && self.has_rung(x, y),
        }
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == v {
                out.push(b);
            } else if b == v {
                out.push(a);
            }
        }
        out.sort_unstable();
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Collects every structural problem; an empty list means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.n();
        let k = self.k();
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.as_str()) {
                out.push(Violation::DuplicateVertex(v.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        for u in &self.urpaths {
            if !seen.insert(u.name.as_str()) {
                out.push(Violation::DuplicateUrpath(u.name.clone()));
            }
        }
        for &(a, b) in &self.edges {
            if a >= n || b >= n {
                out.push(Violation::BadReference(format!("edge ({a},{b})")));
            } else if a == b {
                out.push(Violation::LoopEdge(self.vertices[a].clone()));
            }
        }
        for u in &self.urpaths {
            if u.left >= n || u.right >= n {
                out.push(Violation::BadReference(format!("endpoint of {}", u.name)));
            } else if u.left == u.right {
                out.push(Violation::EqualEndpoints(u.name.clone()));
            } else if self.has_edge(u.left, u.right) {
                out.push(Violation::EndpointsAdjacent(u.name.clone()));
            }
        }
        for &(v, u) in &self.spokes {
            if v >= n || u >= k {
                out.push(Violation::BadReference(format!("spoke ({v},{u})")));
            } else if self.urpaths[u].has_endpoint(v) {
                out.push(Violation::EndpointSpoke {
                    vertex: self.vertices[v].clone(),
                    urpath: self.urpaths[u].name.clone(),
                });
            }
        }
        for &(a, b) in &self.rungs {
            if a >= k || b >= k {
                out.push(Violation::BadReference(format!("rung ({a},{b})")));
            } else if a == b {
                out.push(Violation::LoopRung(self.urpaths[a].name.clone()));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Deletes vertices and urpaths by index. Deleting a vertex also deletes
    /// every urpath, edge and spoke incident to it; deleting an urpath deletes
    /// its spokes and rungs but keeps its endpoints.
    pub fn delete(&self, del_vertices: &BTreeSet<usize>, del_urpaths: &BTreeSet<usize>) -> Pathograph {
        let mut vmap = vec![None; self.n()];
        let mut out = Pathograph::new();
        for (i, name) in self.vertices.iter().enumerate() {
            if !del_vertices.contains(&i) {
                vmap[i] = Some(out.add_vertex(name));
            }
        }
        let mut umap = vec![None; self.k()];
        for (i, u) in self.urpaths.iter().enumerate() {
            if del_urpaths.contains(&i) {
                continue;
            }
            if let (Some(l), Some(r)) = (vmap[u.left], vmap[u.right]) {
                umap[i] = Some(out.add_urpath(&u.name, l, r));
            }
        }
        for &(a, b) in &self.edges {
            if let (Some(a), Some(b)) = (vmap[a], vmap[b]) {
                out.add_edge(a, b);
            }
        }
        for &(v, u) in &self.spokes {
            if let (Some(v), Some(u)) = (vmap[v], umap[u]) {
                out.add_spoke(v, u);
            }
        }
        for &(a, b) in &self.rungs {
            if let (Some(a), Some(b)) = (umap[a], umap[b]) {
                out.add_rung(a, b);
            }
        }
        out
    }

    /// Name-based deletion; unknown names are an error.
    pub fn subpathograph(&self, del_vertices: &[&str], del_urpaths: &[&str]) -> Result<Pathograph> {
        let mut dv = BTreeSet::new();
        for v in del_vertices {
            dv.insert(self.vertex_index(v).ok_or_else(|| Error::UnknownId(v.to_string()))?);
        }
        let mut du = BTreeSet::new();
        for u in del_urpaths {
            du.insert(self.urpath_index(u).ok_or_else(|| Error::UnknownId(u.to_string()))?);
        }
        Ok(self.delete(&dv, &du))
    }

    /// Deletes all urpaths (and with them all spokes and rungs).
    pub fn strip_urpaths(&self) -> Pathograph {
        let all: BTreeSet<usize> = (0..self.k()).collect();
        self.delete(&BTreeSet::new(), &all)
    }

    /// The empty pathograph is disconnected by convention.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return false;
        }
        // Union-find over vertices; urpaths live with their endpoints.
        let total = n + self.k();
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        let union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            if ra != rb {
                p[ra] = rb;
            }
        };
        for &(a, b) in &self.edges {
            union(&mut parent, a, b);
        }
        for (i, u) in self.urpaths.iter().enumerate() {
            union(&mut parent, n + i, u.left);
            union(&mut parent, n + i, u.right);
        }
        for &(v, u) in &self.spokes {
            union(&mut parent, v, n + u);
        }
        for &(a, b) in &self.rungs {
            union(&mut parent, n + a, n + b);
        }
        let r = find(&mut parent, 0);
        (1..total).all(|x| find(&mut parent, x) == r)
    }

    /// Vertex, urpath, edge, spoke and rung counts, in that order.
    pub fn counts(&self) -> (usize, usize, usize, usize, usize) {
        (self.n(), self.k(), self.edges.len(), self.spokes.len(), self.rungs.len())
    }

    /// Prefixes every vertex and urpath name; handy before a disjoint union.
    pub fn with_prefix(&self, prefix: &str) -> Pathograph {
        let mut p = self.clone();
        for v in p.vertices.iter_mut() {
            *v = format!("{prefix}{v}");
        }
        for u in p.urpaths.iter_mut() {
            u.name = format!("{prefix}{}", u.name);
        }
        p
    }

    /// Disjoint union; names of `other` must not clash with `self`.
    pub fn disjoint_union(&self, other: &Pathograph) -> Pathograph {
        let mut p = self.clone();
        let n = p.n();
        let k = p.k();
        p.vertices.extend(other.vertices.iter().cloned());
        for u in &other.urpaths {
            p.add_urpath(&u.name, u.left + n, u.right + n);
        }
        for &(a, b) in &other.edges {
            p.add_edge(a + n, b + n);
        }
        for &(v, u) in &other.spokes {
            p.add_spoke(v + n, u + k);
        }
        for &(a, b) in &other.rungs {
            p.add_rung(a + k, b + k);
        }
        p
    }

    /// Urpaths incident to vertex `v` (as an endpoint).
    pub fn incident_urpaths(&self, v: usize) -> Vec<usize> {
        (0..self.k()).filter(|&u| self.urpaths[u].has_endpoint(v)).collect()
    }

    /// Map from urpath index to its spoke vertices.
    pub fn spokes_by_urpath(&self) -> BTreeMap<usize, BTreeSet<usize>> {
        let mut m: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for &(v, u) in &self.spokes {
            m.entry(u).or_default().insert(v);
        }
        m
    }
}
