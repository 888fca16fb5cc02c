//! Containment relations and Truemper configurations checked straight from
//! their graph-theoretic definitions, on adjacency bitmasks. Nothing here
//! goes through pathographs.

use pathograph::Pathograph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub adj: Vec<u32>,
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        Graph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::new(n);
        for &(a, b) in edges {
            g.add(a, b);
        }
        g
    }

    pub fn add(&mut self, a: usize, b: usize) {
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    pub fn has(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|a| (a + 1..self.n).map(move |b| (a, b))).filter(|&(a, b)| self.has(a, b)).collect()
    }

    pub fn to_pathograph(&self) -> Pathograph {
        let mut p = Pathograph::new();
        for v in 0..self.n {
            p.add_vertex(&format!("v{v}"));
        }
        for (a, b) in self.edges() {
            p.add_edge(a, b);
        }
        p
    }

    /// Every labeled graph on `n` vertices.
    pub fn all(n: usize) -> Vec<Graph> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        (0u64..1 << pairs.len())
            .map(|mask| {
                let es: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
                Graph::from_edges(n, &es)
            })
            .collect()
    }

    fn deg_in(&self, v: usize, set: u32) -> u32 {
        (self.adj[v] & set).count_ones()
    }

    fn connected_in(&self, set: u32) -> bool {
        if set == 0 {
            return false;
        }
        let mut seen = 1u32 << set.trailing_zeros();
        loop {
            let mut next = seen;
            for v in bits(seen) {
                next |= self.adj[v] & set;
            }
            if next == seen {
                return seen == set;
            }
            seen = next;
        }
    }

    fn components_in(&self, set: u32) -> Vec<u32> {
        let mut out = Vec::new();
        let mut rest = set;
        while rest != 0 {
            let mut comp = 1u32 << rest.trailing_zeros();
            loop {
                let mut next = comp;
                for v in bits(comp) {
                    next |= self.adj[v] & rest;
                }
                if next == comp {
                    break;
                }
                comp = next;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }
}

fn bits(x: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| x >> i & 1 == 1)
}

/// Whether some injective map of `h`'s vertices into `g`'s keeps every edge
/// (and, when `induced`, every non-edge).
fn embeddings(h: &Graph, g: &Graph, induced: bool) -> bool {
    fn go(h: &Graph, g: &Graph, induced: bool, map: &mut Vec<usize>) -> bool {
        let i = map.len();
        if i == h.n {
            return true;
        }
        for x in 0..g.n {
            if map.contains(&x) {
                continue;
            }
            let fits = (0..i).all(|j| {
                let (he, ge) = (h.has(i, j), g.has(x, map[j]));
                if induced {
                    he == ge
                } else {
                    !he || ge
                }
            });
            if fits {
                map.push(x);
                if go(h, g, induced, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    go(h, g, induced, &mut Vec::new())
}

pub fn is_subgraph(h: &Graph, g: &Graph) -> bool {
    embeddings(h, g, false)
}

pub fn is_induced_subgraph(h: &Graph, g: &Graph) -> bool {
    embeddings(h, g, true)
}

/// Branch sets: every vertex of `g` goes to one of `h`'s vertices or is
/// deleted; sets must be connected and nonempty, every edge of `h` needs an
/// edge between its sets, and for induced minors every non-edge needs none.
fn branch_sets(h: &Graph, g: &Graph, induced: bool) -> bool {
    if h.n > g.n {
        return false;
    }
    let mut label = vec![0usize; g.n];
    loop {
        let mut sets = vec![0u32; h.n];
        for (v, &l) in label.iter().enumerate() {
            if l > 0 {
                sets[l - 1] |= 1 << v;
            }
        }
        let ok = sets.iter().all(|&s| g.connected_in(s))
            && (0..h.n).all(|i| {
                (i + 1..h.n).all(|j| {
                    let joined = bits(sets[i]).any(|v| g.adj[v] & sets[j] != 0);
                    if h.has(i, j) {
                        joined
                    } else {
                        !induced || !joined
                    }
                })
            });
        if ok {
            return true;
        }
        // Next labeling in base h.n + 1.
        let mut i = 0;
        loop {
            if i == g.n {
                return false;
            }
            label[i] += 1;
            if label[i] <= h.n {
                break;
            }
            label[i] = 0;
            i += 1;
        }
    }
}

pub fn is_minor(h: &Graph, g: &Graph) -> bool {
    branch_sets(h, g, false)
}

pub fn is_induced_minor(h: &Graph, g: &Graph) -> bool {
    branch_sets(h, g, true)
}

/// A subdivision of `h` in `g`: branch vertices plus internally disjoint
/// paths for the edges of `h`. For the induced variant the vertices used
/// must induce exactly the chosen path edges.
fn subdivision(h: &Graph, g: &Graph, induced: bool) -> bool {
    let hedges = h.edges();
    fn paths(g: &Graph, from: usize, to: usize, blocked: u32) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![vec![from]];
        while let Some(p) = stack.pop() {
            let last = *p.last().unwrap();
            for x in bits(g.adj[last]) {
                if x == to {
                    let mut q = p.clone();
                    q.push(to);
                    out.push(q);
                } else if blocked >> x & 1 == 0 && !p.contains(&x) {
                    let mut q = p.clone();
                    q.push(x);
                    stack.push(q);
                }
            }
        }
        out
    }
    fn go(g: &Graph, hedges: &[(usize, usize)], map: &[usize], k: usize, used: u32, chosen: &mut Vec<(usize, usize)>, induced: bool) -> bool {
        if k == hedges.len() {
            if !induced {
                return true;
            }
            let mut sub = Graph::new(g.n);
            for &(a, b) in chosen.iter() {
                sub.add(a, b);
            }
            return bits(used).all(|v| g.adj[v] & used == sub.adj[v]);
        }
        let (a, b) = hedges[k];
        for p in paths(g, map[a], map[b], used) {
            let inner: u32 = p[1..p.len() - 1].iter().map(|&x| 1u32 << x).sum();
            let before = chosen.len();
            chosen.extend(p.windows(2).map(|w| (w[0], w[1])));
            if go(g, hedges, map, k + 1, used | inner, chosen, induced) {
                return true;
            }
            chosen.truncate(before);
        }
        false
    }
    fn place(h: &Graph, g: &Graph, hedges: &[(usize, usize)], map: &mut Vec<usize>, induced: bool) -> bool {
        if map.len() == h.n {
            let used: u32 = map.iter().map(|&x| 1u32 << x).sum();
            return go(g, hedges, map, 0, used, &mut Vec::new(), induced);
        }
        for x in 0..g.n {
            if !map.contains(&x) && g.adj[x].count_ones() as usize >= h.adj[map.len()].count_ones() as usize {
                map.push(x);
                if place(h, g, hedges, map, induced) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    place(h, g, &hedges, &mut Vec::new(), induced)
}

pub fn is_topological_minor(h: &Graph, g: &Graph) -> bool {
    subdivision(h, g, false)
}

pub fn is_induced_topological_minor(h: &Graph, g: &Graph) -> bool {
    subdivision(h, g, true)
}

fn subsets(g: &Graph, min: usize) -> impl Iterator<Item = u32> + '_ {
    (0u32..1 << g.n).filter(move |s| s.count_ones() as usize >= min)
}

fn is_hole(g: &Graph, set: u32) -> bool {
    set.count_ones() >= 4 && g.connected_in(set) && bits(set).all(|v| g.deg_in(v, set) == 2)
}

/// A hole plus a vertex with at least three neighbours on it.
pub fn has_wheel(g: &Graph) -> bool {
    subsets(g, 5).any(|s| bits(s).any(|hub| is_hole(g, s & !(1 << hub)) && g.deg_in(hub, s) >= 3))
}

/// Two non-adjacent vertices joined by three paths whose pairwise unions are
/// holes.
pub fn has_theta(g: &Graph) -> bool {
    subsets(g, 5).any(|s| {
        let ends: Vec<usize> = bits(s).filter(|&v| g.deg_in(v, s) == 3).collect();
        if ends.len() != 2 || g.has(ends[0], ends[1]) || bits(s).any(|v| !ends.contains(&v) && g.deg_in(v, s) != 2) {
            return false;
        }
        let rest = s & !(1 << ends[0]) & !(1 << ends[1]);
        let comps = g.components_in(rest);
        comps.len() == 3 && comps.iter().all(|&c| g.adj[ends[0]] & c != 0 && g.adj[ends[1]] & c != 0)
    })
}

/// A triangle with three paths to an apex, at most one of length one, and no
/// other edges.
pub fn has_pyramid(g: &Graph) -> bool {
    subsets(g, 6).any(|s| {
        let tris = triangles(g, s);
        tris.into_iter().any(|t| {
            let tset: u32 = t.iter().map(|&v| 1u32 << v).sum();
            if t.iter().any(|&v| g.deg_in(v, s) != 3) {
                return false;
            }
            let apexes: Vec<usize> = bits(s & !tset).filter(|&v| g.deg_in(v, s) == 3).collect();
            if apexes.len() != 1 || bits(s & !tset).any(|v| v != apexes[0] && g.deg_in(v, s) != 2) {
                return false;
            }
            let apex = apexes[0];
            if (g.adj[apex] & tset).count_ones() > 1 {
                return false;
            }
            // Without the triangle edges what remains is a subdivided claw.
            let mut tree = g.clone();
            for &a in &t {
                for &b in &t {
                    tree.adj[a] &= !(1 << b);
                }
            }
            let edges: u32 = bits(s).map(|v| tree.deg_in(v, s)).sum::<u32>() / 2;
            edges + 1 == s.count_ones() && tree.connected_in(s)
        })
    })
}

/// Two vertex-disjoint triangles joined by three disjoint paths with no
/// other edges.
pub fn has_prism(g: &Graph) -> bool {
    subsets(g, 6).any(|s| {
        let three: Vec<usize> = bits(s).filter(|&v| g.deg_in(v, s) == 3).collect();
        if three.len() != 6 || bits(s).any(|v| !three.contains(&v) && g.deg_in(v, s) != 2) {
            return false;
        }
        let tris = triangles(g, s);
        tris.iter().any(|t1| {
            tris.iter().any(|t2| {
                let a: u32 = t1.iter().map(|&v| 1u32 << v).sum();
                let b: u32 = t2.iter().map(|&v| 1u32 << v).sum();
                if a & b != 0 || (a | b).count_ones() != 6 || three.iter().any(|&v| (a | b) >> v & 1 == 0) {
                    return false;
                }
                let mut rest = g.clone();
                for t in [t1, t2] {
                    for &x in t.iter() {
                        for &y in t.iter() {
                            rest.adj[x] &= !(1 << y);
                        }
                    }
                }
                let comps = rest.components_in(s);
                comps.len() == 3 && comps.iter().all(|&c| (c & a).count_ones() == 1 && (c & b).count_ones() == 1)
            })
        })
    })
}

fn triangles(g: &Graph, s: u32) -> Vec<[usize; 3]> {
    let vs: Vec<usize> = bits(s).collect();
    let mut out = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        for (j, &b) in vs.iter().enumerate().skip(i + 1) {
            for &c in &vs[j + 1..] {
                if g.has(a, b) && g.has(b, c) && g.has(a, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// The pattern graphs for the relation check.
pub fn patterns() -> Vec<(&'static str, Graph)> {
    vec![
        ("K2", Graph::from_edges(2, &[(0, 1)])),
        ("P3", Graph::from_edges(3, &[(0, 1), (1, 2)])),
        ("K3", Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)])),
        ("P4", Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)])),
        ("C4", Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])),
        ("paw", Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)])),
        ("K4", Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])),
    ]
}
