//! Coloured and directed variants of pathographs used by the reductions.

use std::collections::BTreeMap;

use crate::format::write_pgf;
use crate::pathograph::Pathograph;

/// A pathograph whose vertices, edges and urpaths carry colours and whose
/// edges are directed. Urpaths run from their left end to their right end,
/// spokes from the vertex to the urpath, and rungs from the lower urpath
/// index to the higher one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiColored {
    pub base: Pathograph,
    pub colors: Vec<String>,
    pub vertex_color: Vec<usize>,
    /// Tail and colour of every edge, keyed like `base.edges`. One entry per
    /// pair, so directed 2-cycles cannot occur.
    pub arcs: BTreeMap<(usize, usize), (usize, usize)>,
    pub urpath_color: Vec<usize>,
}

impl DiColored {
    pub fn new(colors: Vec<String>) -> DiColored {
        DiColored { base: Pathograph::new(), colors, vertex_color: Vec::new(), arcs: BTreeMap::new(), urpath_color: Vec::new() }
    }

    pub fn add_vertex(&mut self, name: &str, color: usize) -> usize {
        self.vertex_color.push(color);
        self.base.add_vertex(name)
    }

    pub fn add_arc(&mut self, from: usize, to: usize, color: usize) {
        self.base.add_edge(from, to);
        self.arcs.insert((from.min(to), from.max(to)), (from, color));
    }

    pub fn add_urpath(&mut self, name: &str, from: usize, to: usize, color: usize) -> usize {
        self.urpath_color.push(color);
        self.base.add_urpath(name, from, to)
    }

    /// `Some((forward, colour))` when `a` and `b` are joined, `forward`
    /// meaning the edge leaves `a`.
    pub fn arc_between(&self, a: usize, b: usize) -> Option<(bool, usize)> {
        self.arcs.get(&(a.min(b), a.max(b))).map(|&(tail, c)| (tail == a, c))
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// Vertices, urpaths, edges, spokes, rungs.
    pub fn counts(&self) -> (usize, usize, usize, usize, usize) {
        self.base.counts()
    }

    /// Whether some vertex subset of `self` induces a copy of `pattern`,
    /// colours and directions included. Both must be free of urpaths and
    /// share one colour list.
    pub fn contains(&self, pattern: &DiColored) -> bool {
        fn extend(g: &DiColored, p: &DiColored, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
            let i = map.len();
            if i == p.n() {
                return true;
            }
            for x in 0..g.n() {
                if used[x] || g.vertex_color[x] != p.vertex_color[i] {
                    continue;
                }
                let same = (0..i).all(|j| p.arc_between(j, i) == g.arc_between(map[j], x));
                if same {
                    map.push(x);
                    used[x] = true;
                    if extend(g, p, map, used) {
                        return true;
                    }
                    map.pop();
                    used[x] = false;
                }
            }
            false
        }
        extend(self, pattern, &mut Vec::new(), &mut vec![false; self.n()])
    }

    /// PGF text of the underlying pathograph followed by `# color:` and
    /// `# dir:` annotations.
    pub fn to_pgf(&self) -> String {
        let b = &self.base;
        let mut s = write_pgf(b);
        for (v, &c) in self.vertex_color.iter().enumerate() {
            s.push_str(&format!("# color: {} {}\n", b.vertices[v], self.colors[c]));
        }
        for (&(x, y), &(tail, c)) in &self.arcs {
            let head = if tail == x { y } else { x };
            s.push_str(&format!("# dir: {} {} {}\n", b.vertices[tail], b.vertices[head], self.colors[c]));
        }
        for (u, &c) in self.urpath_color.iter().enumerate() {
            let ur = &b.urpaths[u];
            s.push_str(&format!("# dir: {} {} {} {}\n", ur.name, b.vertices[ur.left], b.vertices[ur.right], self.colors[c]));
        }
        s
    }
}

/// A pathograph with integer vertex colours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexColored {
    pub base: Pathograph,
    pub color: Vec<i64>,
}

impl VertexColored {
    pub fn new() -> VertexColored {
        VertexColored { base: Pathograph::new(), color: Vec::new() }
    }

    pub fn add_vertex(&mut self, name: &str, color: i64) -> usize {
        self.color.push(color);
        self.base.add_vertex(name)
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn to_pgf(&self) -> String {
        let mut s = write_pgf(&self.base);
        for (v, c) in self.color.iter().enumerate() {
            s.push_str(&format!("# color: {} {}\n", self.base.vertices[v], c));
        }
        s
    }
}

impl Default for VertexColored {
    fn default() -> Self {
        Self::new()
    }
}

/// One numbered kind of forbidden member. Kinds too large to list keep
/// only their size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group<G> {
    pub label: String,
    pub count: u128,
    pub members: Option<Vec<G>>,
}

impl<G> Group<G> {
    pub fn listed(label: &str, members: Vec<G>) -> Group<G> {
        Group { label: label.into(), count: members.len() as u128, members: Some(members) }
    }

    pub fn implicit(label: &str, count: u128) -> Group<G> {
        Group { label: label.into(), count, members: None }
    }
}

/// Total size of a forbidden family.
pub fn family_size<G>(groups: &[Group<G>]) -> u128 {
    groups.iter().map(|g| g.count).sum()
}
