//! Partial inclusions of a source pathograph into the host graph `H` of a
//! rungless pathograph: vertices map into `H` or stay undefined, and each
//! urpath keeps the fragments of its image that fall inside `H`.

use crate::adj::bits;
use crate::inclusion::Inclusion;
use crate::pathograph::Pathograph;
use crate::realization::Realization;

/// Adjacency masks of a plain graph.
#[derive(Clone, Debug)]
pub struct HostGraph {
    pub n: usize,
    pub nb: Vec<u128>,
}

impl HostGraph {
    pub fn new(h: &Pathograph) -> HostGraph {
        let mut nb = vec![0u128; h.n()];
        for &(a, b) in &h.edges {
            nb[a] |= 1 << b;
            nb[b] |= 1 << a;
        }
        HostGraph { n: h.n(), nb }
    }

    pub fn adj(&self, a: usize, b: usize) -> bool {
        self.nb[a] >> b & 1 == 1
    }

    /// Whether some vertex of `a` is adjacent to some vertex of `b`.
    pub fn sets_adj(&self, a: u128, b: u128) -> bool {
        bits(a).any(|v| self.nb[v] & b != 0)
    }

    /// Every induced path, listed from its smaller end.
    pub fn induced_paths(&self) -> Vec<Vec<usize>> {
        fn grow(g: &HostGraph, path: &mut Vec<usize>, used: u128, out: &mut Vec<Vec<usize>>) {
            if path[0] <= *path.last().unwrap() {
                out.push(path.clone());
            }
            let last = *path.last().unwrap();
            let before = used & !(1u128 << last);
            for w in bits(g.nb[last] & !used) {
                if g.nb[w] & before == 0 {
                    path.push(w);
                    grow(g, path, used | 1 << w, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        for v in 0..self.n {
            grow(self, &mut vec![v], 1 << v, &mut out);
        }
        out.sort();
        out
    }
}

pub fn mask(vs: &[usize]) -> u128 {
    vs.iter().fold(0, |m, &v| m | 1 << v)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialInclusion {
    pub vertex_map: Vec<Option<usize>>,
    /// Fragments of each urpath image inside `H`, each an induced path listed
    /// from its smaller end, sorted. Empty means undefined.
    pub fragments: Vec<Vec<Vec<usize>>>,
}

impl PartialInclusion {
    /// A completed urpath is a single fragment joining both defined ends.
    pub fn is_completed(&self, f: &Pathograph, u: usize) -> bool {
        let ur = &f.urpaths[u];
        match (self.vertex_map[ur.left], self.vertex_map[ur.right], self.fragments[u].as_slice()) {
            (Some(a), Some(b), [frag]) => {
                let (s, t) = (frag[0], *frag.last().unwrap());
                (s, t) == (a, b) || (s, t) == (b, a)
            }
            _ => false,
        }
    }

    /// Fragment vertices of `u` other than the images of its own ends.
    pub fn interior(&self, f: &Pathograph, u: usize) -> u128 {
        let ur = &f.urpaths[u];
        let mut m = self.fragments[u].iter().fold(0, |m, fr| m | mask(fr));
        for e in [ur.left, ur.right] {
            if let Some(x) = self.vertex_map[e] {
                m &= !(1u128 << x);
            }
        }
        m
    }

    pub fn format(&self, f: &Pathograph, h: &Pathograph) -> String {
        let mut parts = Vec::new();
        for (v, img) in self.vertex_map.iter().enumerate() {
            let t = img.map_or("undefined".to_string(), |x| h.vertices[x].clone());
            parts.push(format!("{}->{}", f.vertices[v], t));
        }
        for (u, frs) in self.fragments.iter().enumerate() {
            let t = if frs.is_empty() {
                "undefined".to_string()
            } else {
                let fs: Vec<String> = frs.iter().map(|fr| fr.iter().map(|&x| h.vertices[x].as_str()).collect::<Vec<_>>().join("")).collect();
                format!("{{{}}}", fs.join(","))
            };
            parts.push(format!("{}->{}", f.urpaths[u].name, t));
        }
        parts.join(" ")
    }
}

/// All sets of disjoint, pairwise nonadjacent induced paths.
pub fn fragment_sets(g: &HostGraph) -> Vec<Vec<Vec<usize>>> {
    fn rec(paths: &[(Vec<usize>, u128)], g: &HostGraph, from: usize, cur: &mut Vec<usize>, used: u128, out: &mut Vec<Vec<Vec<usize>>>) {
        for i in from..paths.len() {
            let m = paths[i].1;
            if used & m != 0 || g.sets_adj(used, m) {
                continue;
            }
            cur.push(i);
            out.push(cur.iter().map(|&j| paths[j].0.clone()).collect());
            rec(paths, g, i + 1, cur, used | m, out);
            cur.pop();
        }
    }
    let paths: Vec<(Vec<usize>, u128)> = g.induced_paths().into_iter().map(|p| {
        let m = mask(&p);
        (p, m)
    }).collect();
    let mut out = Vec::new();
    rec(&paths, g, 0, &mut Vec::new(), 0, &mut out);
    for s in &mut out {
        s.sort();
    }
    out
}

/// Every partial inclusion of `f` into the graph `h` (urpaths of `h` are
/// ignored). Adjacency is compared only between elements that are defined
/// and, for urpaths, completed; the (urpath, own end) pair is exempt.
pub fn enumerate_partial_inclusions(f: &Pathograph, h: &Pathograph) -> Vec<PartialInclusion> {
    let g = HostGraph::new(h);
    let sets = fragment_sets(&g);
    let mut out = Vec::new();
    let mut vm = vec![None; f.n()];
    vertex_maps(f, &g, 0, 0, &mut vm, &mut |vm| {
        let mut frs: Vec<Vec<Vec<usize>>> = vec![Vec::new(); f.k()];
        urpath_maps(f, &g, &sets, vm, 0, &mut frs, &mut out);
    });
    out
}

fn vertex_maps(f: &Pathograph, g: &HostGraph, v: usize, used: u128, vm: &mut Vec<Option<usize>>, visit: &mut dyn FnMut(&[Option<usize>])) {
    if v == f.n() {
        visit(vm);
        return;
    }
    vm[v] = None;
    vertex_maps(f, g, v + 1, used, vm, visit);
    for x in 0..g.n {
        if used >> x & 1 == 1 {
            continue;
        }
        let ok = (0..v).all(|w| match vm[w] {
            Some(y) => f.has_edge(v, w) == g.adj(x, y),
            None => true,
        });
        if ok {
            vm[v] = Some(x);
            vertex_maps(f, g, v + 1, used | 1 << x, vm, visit);
        }
    }
    vm[v] = None;
}

fn ends_of(frs: &[Vec<usize>]) -> u128 {
    frs.iter().fold(0, |m, fr| m | 1 << fr[0] | 1 << fr[fr.len() - 1])
}

fn urpath_maps(
    f: &Pathograph,
    g: &HostGraph,
    sets: &[Vec<Vec<usize>>],
    vm: &[Option<usize>],
    u: usize,
    frs: &mut Vec<Vec<Vec<usize>>>,
    out: &mut Vec<PartialInclusion>,
) {
    if u == f.k() {
        out.push(PartialInclusion { vertex_map: vm.to_vec(), fragments: frs.clone() });
        return;
    }
    let ur = &f.urpaths[u];
    let (a, b) = (vm[ur.left], vm[ur.right]);
    if a.is_none() && b.is_none() {
        frs[u] = Vec::new();
        urpath_maps(f, g, sets, vm, u + 1, frs, out);
    }
    let need = a.map_or(0, |x| 1u128 << x) | b.map_or(0, |x| 1u128 << x);
    for s in sets {
        if ends_of(s) & need != need {
            continue;
        }
        frs[u] = s.clone();
        let cur = PartialInclusion { vertex_map: vm.to_vec(), fragments: frs.clone() };
        if cur.is_completed(f, u) && !completed_pairs_ok(f, g, &cur, u) {
            continue;
        }
        urpath_maps(f, g, sets, vm, u + 1, frs, out);
    }
    frs[u] = Vec::new();
}

/// Adjacency between the completed urpath `u` and every earlier defined
/// element.
fn completed_pairs_ok(f: &Pathograph, g: &HostGraph, phi: &PartialInclusion, u: usize) -> bool {
    let ur = &f.urpaths[u];
    let int = phi.interior(f, u);
    for v in 0..f.n() {
        if v == ur.left || v == ur.right {
            continue;
        }
        if let Some(x) = phi.vertex_map[v] {
            if f.has_spoke(v, u) != (g.nb[x] & int != 0) {
                return false;
            }
        }
    }
    for w in 0..u {
        if phi.is_completed(f, w) && f.has_rung(u, w) != g.sets_adj(int, phi.interior(f, w)) {
            return false;
        }
    }
    true
}

/// Intersects an inclusion into a realization with the host vertices.
pub fn restrict(f: &Pathograph, r: &Realization, psi: &Inclusion) -> PartialInclusion {
    let mut host = vec![None; r.graph.n()];
    for (v, &gv) in r.vertex_map.iter().enumerate() {
        host[gv] = Some(v);
    }
    let vertex_map = psi.vertex_map.iter().map(|&x| host[x]).collect();
    let mut fragments = Vec::new();
    for u in 0..f.k() {
        let mut frs = Vec::new();
        let mut cur: Vec<usize> = Vec::new();
        for &x in &psi.urpath_map[u].vertices {
            match host[x] {
                Some(v) => cur.push(v),
                None => {
                    if !cur.is_empty() {
                        frs.push(std::mem::take(&mut cur));
                    }
                }
            }
        }
        if !cur.is_empty() {
            frs.push(cur);
        }
        for fr in &mut frs {
            if fr[0] > *fr.last().unwrap() {
                fr.reverse();
            }
        }
        frs.sort();
        fragments.push(frs);
    }
    PartialInclusion { vertex_map, fragments }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_pgf;

    fn c4() -> Pathograph {
        parse_pgf("vertices: a b c d\nedge: a b\nedge: b c\nedge: c d\nedge: d a\n").unwrap()
    }

    #[test]
    fn c4_paths_and_sets() {
        let g = HostGraph::new(&c4());
        assert_eq!(g.induced_paths().len(), 12);
        assert_eq!(fragment_sets(&g).len(), 14);
    }

    #[test]
    fn single_vertex_into_c4() {
        let k1 = parse_pgf("vertices: x\n").unwrap();
        assert_eq!(enumerate_partial_inclusions(&k1, &c4()).len(), 5);
    }

    #[test]
    fn worked_phi_is_enumerated() {
        let w1 = parse_pgf("vertices: X Z Y\nedge: X Z\nedge: Z Y\nurpath: u1 X Y\nurpath: u2 X Y\nspoke: Z u2\n").unwrap();
        let all = enumerate_partial_inclusions(&w1, &c4());
        let want = PartialInclusion {
            vertex_map: vec![Some(1), None, Some(3)],
            fragments: vec![vec![vec![1, 0, 3]], vec![vec![1], vec![3]]],
        };
        assert!(all.contains(&want));
        assert!(want.is_completed(&w1, 0));
        assert!(!want.is_completed(&w1, 1));
    }
}
