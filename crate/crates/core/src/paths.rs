//! Paths inside a pathograph.
//!
//! A path is either a single vertex or a sequence `w0 c1 w1 ... cm wm` where
//! each connector `ci` is the edge or an urpath joining `w(i-1)` and `wi`.
//! Because a path is a subpathograph, all host edges among its vertices are
//! kept, so non-consecutive vertices must be nonadjacent; urpaths between path
//! vertices that are not used as connectors are simply deleted. No spoke or
//! rung may join two elements of the path.

use std::collections::BTreeSet;

use crate::adj::{bits, AdjIndex, ElemSet};
use crate::pathograph::{Elem, Pathograph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Link {
    Edge,
    Urpath(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathSub {
    pub vertices: Vec<usize>,
    /// `links[i]` joins `vertices[i]` and `vertices[i + 1]`.
    pub links: Vec<Link>,
}

impl PathSub {
    pub fn single(v: usize) -> Self {
        PathSub { vertices: vec![v], links: Vec::new() }
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    pub fn urpaths(&self) -> impl Iterator<Item = usize> + '_ {
        self.links.iter().filter_map(|l| match l {
            Link::Urpath(u) => Some(*u),
            Link::Edge => None,
        })
    }

    pub fn has_urpath(&self) -> bool {
        self.urpaths().next().is_some()
    }

    /// Number of vertices plus urpaths: the size of the smallest realization.
    pub fn weight(&self) -> usize {
        self.vertices.len() + self.urpaths().count()
    }

    pub fn reversed(&self) -> PathSub {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let mut links = self.links.clone();
        links.reverse();
        PathSub { vertices, links }
    }

    /// Every element of the path.
    pub fn elements(&self) -> ElemSet {
        let mut s = ElemSet::EMPTY;
        for &v in &self.vertices {
            s.insert(Elem::V(v));
        }
        for u in self.urpaths() {
            s.insert(Elem::U(u));
        }
        s
    }

    /// The elements strictly between the two ends: internal vertices and all
    /// urpaths. A single vertex has an empty interior.
    pub fn interior(&self) -> ElemSet {
        let mut s = ElemSet::EMPTY;
        if self.vertices.len() > 2 {
            for &v in &self.vertices[1..self.vertices.len() - 1] {
                s.insert(Elem::V(v));
            }
        }
        for u in self.urpaths() {
            s.insert(Elem::U(u));
        }
        s
    }

    /// Identity as a subpathograph: its vertex and urpath sets.
    pub fn key(&self) -> (Vec<usize>, Vec<usize>) {
        let mut v = self.vertices.clone();
        v.sort_unstable();
        let mut u: Vec<usize> = self.urpaths().collect();
        u.sort_unstable();
        (v, u)
    }

    /// Checks the path conditions against a host pathograph.
    pub fn is_valid_in(&self, p: &Pathograph) -> bool {
        if self.vertices.is_empty() || self.links.len() + 1 != self.vertices.len() {
            return false;
        }
        let distinct: BTreeSet<usize> = self.vertices.iter().copied().collect();
        if distinct.len() != self.vertices.len() || self.vertices.iter().any(|&v| v >= p.n()) {
            return false;
        }
        for (i, link) in self.links.iter().enumerate() {
            let (a, b) = (self.vertices[i], self.vertices[i + 1]);
            match *link {
                Link::Edge => {
                    if !p.has_edge(a, b) {
                        return false;
                    }
                }
                Link::Urpath(u) => {
                    if u >= p.k() {
                        return false;
                    }
                    let ur = &p.urpaths[u];
                    if !(ur.has_endpoint(a) && ur.has_endpoint(b)) {
                        return false;
                    }
                }
            }
        }
        let us: Vec<usize> = self.urpaths().collect();
        let distinct_u: BTreeSet<usize> = us.iter().copied().collect();
        if distinct_u.len() != us.len() {
            return false;
        }
        for i in 0..self.vertices.len() {
            for j in i + 2..self.vertices.len() {
                if p.has_edge(self.vertices[i], self.vertices[j]) {
                    return false;
                }
            }
        }
        for &v in &self.vertices {
            for &u in &us {
                if p.has_spoke(v, u) {
                    return false;
                }
            }
        }
        for (i, &a) in us.iter().enumerate() {
            for &b in &us[i + 1..] {
                if p.has_rung(a, b) {
                    return false;
                }
            }
        }
        true
    }
}

/// Enumerates the paths from `s` to `t` (distinct vertices) whose internal
/// vertices avoid `blocked_v` and whose urpaths avoid `blocked_u`. Results are
/// sorted shortest first (by weight), then lexicographically.
pub fn paths_between(adj: &AdjIndex, s: usize, t: usize, blocked_v: u128, blocked_u: u128) -> Vec<PathSub> {
    let mut out = Vec::new();
    let mut cur = PathSub::single(s);
    let mut on_v: u128 = 1 << s;
    let mut on_u: u128 = 0;
    extend(adj, t, blocked_v & !(1 << t), blocked_u, &mut cur, &mut on_v, &mut on_u, &mut out);
    out.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| a.cmp(b)));
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    adj: &AdjIndex,
    t: usize,
    blocked_v: u128,
    blocked_u: u128,
    cur: &mut PathSub,
    on_v: &mut u128,
    on_u: &mut u128,
    out: &mut Vec<PathSub>,
) {
    let last = cur.end();
    let prev_v = *on_v & !(1 << last);
    // Candidate next steps: edges and urpaths leaving `last`.
    let mut steps: Vec<(usize, Link)> = Vec::new();
    for w in bits(adj.vv[last]) {
        steps.push((w, Link::Edge));
    }
    for u in bits(adj.inc[last]) {
        let (a, b) = adj.ends[u];
        steps.push((if a == last { b } else { a }, Link::Urpath(u)));
    }
    for (w, link) in steps {
        if *on_v & (1 << w) != 0 {
            continue;
        }
        if w != t && blocked_v & (1 << w) != 0 {
            continue;
        }
        // w must not see earlier path vertices nor path urpaths.
        if adj.vv[w] & prev_v != 0 || adj.vu[w] & *on_u != 0 {
            continue;
        }
        if let Link::Urpath(u) = link {
            if blocked_u & (1 << u) != 0 || *on_u & (1 << u) != 0 {
                continue;
            }
            if adj.uv[u] & (*on_v | (1 << w) | (1 << t)) != 0 || adj.uu[u] & *on_u != 0 {
                continue;
            }
        }
        if w != t {
            // The target will join the path later, so w may only touch it
            // if it is the last step before the target.
            if adj.vu[t] & *on_u != 0 {
                continue;
            }
        }
        cur.vertices.push(w);
        cur.links.push(link);
        *on_v |= 1 << w;
        if let Link::Urpath(u) = link {
            *on_u |= 1 << u;
        }
        if w == t {
            out.push(cur.clone());
        } else if adj.vv[w] & (1 << t) != 0 {
            // Only the edge to t may follow.
            if adj.vv[t] & (*on_v & !(1 << w)) == 0 && adj.vu[t] & *on_u == 0 {
                cur.vertices.push(t);
                cur.links.push(Link::Edge);
                out.push(cur.clone());
                cur.vertices.pop();
                cur.links.pop();
            }
        } else {
            extend(adj, t, blocked_v, blocked_u, cur, on_v, on_u, out);
        }
        cur.vertices.pop();
        cur.links.pop();
        *on_v &= !(1 << w);
        if let Link::Urpath(u) = link {
            *on_u &= !(1 << u);
        }
    }
}

/// All paths of `p`, each once up to its element set, single vertices first.
pub fn enumerate_paths(p: &Pathograph) -> Vec<PathSub> {
    let adj = AdjIndex::new(p);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for v in 0..p.n() {
        out.push(PathSub::single(v));
    }
    for s in 0..p.n() {
        for t in s + 1..p.n() {
            for path in paths_between(&adj, s, t, 0, 0) {
                if seen.insert(path.key()) {
                    out.push(path);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_pgf;

    #[test]
    fn triangle_has_six_paths() {
        let k3 = Pathograph::graph(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        assert_eq!(enumerate_paths(&k3).len(), 6);
    }

    #[test]
    fn single_vertex() {
        let k1 = Pathograph::graph(&["a"], &[]);
        assert_eq!(enumerate_paths(&k1), vec![PathSub::single(0)]);
    }

    #[test]
    fn urpath_path_in_square_host() {
        let h = parse_pgf("vertices: a b c d\nedge: a b\nedge: a d\nedge: c b\nedge: c d\nurpath: u a c\nspoke: b u\nspoke: d u\n").unwrap();
        let paths = enumerate_paths(&h);
        let auc = PathSub { vertices: vec![0, 2], links: vec![Link::Urpath(0)] };
        assert!(paths.contains(&auc));
        assert!(paths.iter().all(|q| q.is_valid_in(&h)));
        // a-b-c is induced in the 4-cycle and does not use the urpath
        let abc = PathSub { vertices: vec![0, 1, 2], links: vec![Link::Edge, Link::Edge] };
        assert!(paths.contains(&abc));
    }
}
