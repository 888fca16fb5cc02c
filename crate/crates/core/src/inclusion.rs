//! Pathograph inclusions: containment witnesses.
//!
//! An inclusion maps source vertices injectively to target vertices and each
//! source urpath to a target path between the images of its ends. The images
//! of urpaths must be internally disjoint from each other and from all vertex
//! images, and each must contain an urpath or at least three vertices.
//! Adjacency is compared through interiors: a source urpath is adjacent to a
//! source vertex (or urpath) exactly when the interior of its image path is
//! adjacent to the image of the other element (or to its interior). The pair
//! formed by an urpath and one of its own ends is governed by the path
//! condition alone. With this reading, a graph contains a pathograph exactly
//! when some inclusion into the graph exists.

use crate::adj::{AdjIndex, ElemSet};
use crate::pathograph::{Elem, Pathograph};
use crate::paths::{paths_between, Link, PathSub};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inclusion {
    pub vertex_map: Vec<usize>,
    /// Image of each urpath, oriented from the image of its left end.
    pub urpath_map: Vec<PathSub>,
}

impl Inclusion {
    pub fn identity(p: &Pathograph) -> Inclusion {
        Inclusion {
            vertex_map: (0..p.n()).collect(),
            urpath_map: p
                .urpaths
                .iter()
                .enumerate()
                .map(|(i, u)| PathSub { vertices: vec![u.left, u.right], links: vec![Link::Urpath(i)] })
                .collect(),
        }
    }

    fn image(&self, e: Elem) -> ElemSet {
        match e {
            Elem::V(v) => ElemSet::single(Elem::V(self.vertex_map[v])),
            Elem::U(u) => self.urpath_map[u].interior(),
        }
    }

    /// Checks every inclusion condition; the error names the first failure.
    pub fn check(&self, f: &Pathograph, g: &Pathograph) -> Result<(), String> {
        if self.vertex_map.len() != f.n() || self.urpath_map.len() != f.k() {
            return Err("map sizes do not match the source".into());
        }
        let mut used = 0u128;
        for (v, &img) in self.vertex_map.iter().enumerate() {
            if img >= g.n() {
                return Err(format!("vertex {} maps outside the target", f.vertices[v]));
            }
            if used & (1 << img) != 0 {
                return Err("vertex map is not injective".into());
            }
            used |= 1 << img;
        }
        let adj = AdjIndex::new(g);
        let mut interiors = ElemSet { v: used, u: 0 };
        for (i, u) in f.urpaths.iter().enumerate() {
            let path = &self.urpath_map[i];
            if !path.is_valid_in(g) {
                return Err(format!("image of {} is not a path", u.name));
            }
            if path.start() != self.vertex_map[u.left] || path.end() != self.vertex_map[u.right] {
                return Err(format!("image of {} has wrong endpoints", u.name));
            }
            if !path.has_urpath() && path.vertices.len() < 3 {
                return Err(format!("image of {} is too short", u.name));
            }
            let inner = path.interior();
            if inner.intersects(&interiors) {
                return Err(format!("image of {} is not internally disjoint", u.name));
            }
            interiors = interiors.union(&inner);
        }
        let elems: Vec<Elem> = (0..f.n()).map(Elem::V).chain((0..f.k()).map(Elem::U)).collect();
        for (i, &a) in elems.iter().enumerate() {
            for &b in &elems[i + 1..] {
                if let (Elem::V(v), Elem::U(u)) | (Elem::U(u), Elem::V(v)) = (a, b) {
                    if f.urpaths[u].has_endpoint(v) {
                        continue;
                    }
                }
                let want = f.adjacent(a, b);
                let got = adj.sets_adjacent(&self.image(a), &self.image(b));
                if want != got {
                    return Err(format!("adjacency of {a:?} and {b:?} not preserved"));
                }
            }
        }
        Ok(())
    }
}

struct Search<'a> {
    f: &'a Pathograph,
    fadj: AdjIndex,
    gadj: AdjIndex,
    order: Vec<usize>,
    vmap: Vec<usize>,
    used_v: u128,
    upaths: Vec<PathSub>,
    uorder: Vec<usize>,
}

impl<'a> Search<'a> {
    fn assign_vertex(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            self.upaths = vec![PathSub::single(0); self.f.k()];
            let mut cache = std::collections::HashMap::new();
            return self.assign_urpath(0, ElemSet::EMPTY, &mut cache);
        }
        let v = self.order[depth];
        let need_deg = self.fadj.vv[v].count_ones();
        for w in 0..self.gadj.n {
            if self.used_v & (1 << w) != 0 || self.gadj.vv[w].count_ones() < need_deg {
                continue;
            }
            let ok = self.order[..depth].iter().all(|&x| {
                let want = self.fadj.vv[v] & (1 << x) != 0;
                let got = self.gadj.vv[w] & (1 << self.vmap[x]) != 0;
                want == got
            });
            if !ok {
                continue;
            }
            self.vmap[v] = w;
            self.used_v |= 1 << w;
            if self.assign_vertex(depth + 1) {
                return true;
            }
            self.used_v &= !(1 << w);
        }
        false
    }

    fn assign_urpath(
        &mut self,
        depth: usize,
        used: ElemSet,
        cache: &mut std::collections::HashMap<(usize, usize), Vec<PathSub>>,
    ) -> bool {
        if depth == self.uorder.len() {
            return true;
        }
        let u = self.uorder[depth];
        let (l, r) = self.fadj.ends[u];
        let (s, t) = (self.vmap[l], self.vmap[r]);
        let used_v = self.used_v;
        let gadj = &self.gadj;
        let cands = cache
            .entry((s, t))
            .or_insert_with(|| paths_between(gadj, s, t, used_v, 0))
            .clone();
        for path in cands {
            if !path.has_urpath() && path.vertices.len() < 3 {
                continue;
            }
            let inner = path.interior();
            if inner.intersects(&used) {
                continue;
            }
            let near = self.gadj.nbr(&inner);
            // Spokes: vertices other than the ends of u.
            let mut ok = true;
            for v in 0..self.f.n() {
                if v == l || v == r {
                    continue;
                }
                let want = self.fadj.uv[u] & (1 << v) != 0;
                let got = near.v & (1 << self.vmap[v]) != 0;
                if want != got {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            for &u2 in &self.uorder[..depth] {
                let want = self.fadj.uu[u] & (1 << u2) != 0;
                let got = near.intersects(&self.upaths[u2].interior());
                if want != got {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            self.upaths[u] = path;
            if self.assign_urpath(depth + 1, used.union(&inner), cache) {
                return true;
            }
        }
        false
    }
}

/// Finds an inclusion `f -> g` if one exists. Source vertices are placed in
/// decreasing order of how constrained they are; candidate urpath images are
/// tried shortest first. The search is deterministic.
pub fn find_inclusion(f: &Pathograph, g: &Pathograph) -> Option<Inclusion> {
    if f.n() > g.n() {
        return None;
    }
    let fadj = AdjIndex::new(f);
    let gadj = AdjIndex::new(g);
    let mut order: Vec<usize> = (0..f.n()).collect();
    let weight = |v: usize| fadj.vv[v].count_ones() + fadj.inc[v].count_ones() + fadj.vu[v].count_ones();
    order.sort_by(|&a, &b| weight(b).cmp(&weight(a)).then(a.cmp(&b)));
    let mut uorder: Vec<usize> = (0..f.k()).collect();
    let uweight = |u: usize| fadj.uv[u].count_ones() + fadj.uu[u].count_ones();
    uorder.sort_by(|&a, &b| uweight(b).cmp(&uweight(a)).then(a.cmp(&b)));
    let mut s = Search {
        f,
        fadj,
        gadj,
        order,
        vmap: vec![0; f.n()],
        used_v: 0,
        upaths: Vec::new(),
        uorder,
    };
    if s.assign_vertex(0) {
        Some(Inclusion { vertex_map: s.vmap, urpath_map: s.upaths })
    } else {
        None
    }
}

/// Whether graph `g` has an induced subgraph that realizes `f`.
pub fn contains(g: &Pathograph, f: &Pathograph) -> bool {
    find_inclusion(f, g).is_some()
}

/// The composition `psi . phi` of `phi: a -> b` and `psi: b -> c`.
pub fn compose(phi: &Inclusion, psi: &Inclusion) -> Inclusion {
    let vertex_map = phi.vertex_map.iter().map(|&v| psi.vertex_map[v]).collect();
    let urpath_map = phi
        .urpath_map
        .iter()
        .map(|path| {
            let mut out = PathSub::single(psi.vertex_map[path.start()]);
            for (i, link) in path.links.iter().enumerate() {
                let next = psi.vertex_map[path.vertices[i + 1]];
                match *link {
                    Link::Edge => {
                        out.vertices.push(next);
                        out.links.push(Link::Edge);
                    }
                    Link::Urpath(z) => {
                        let mut seg = psi.urpath_map[z].clone();
                        if seg.start() != out.end() {
                            seg = seg.reversed();
                        }
                        debug_assert_eq!(seg.start(), out.end());
                        debug_assert_eq!(seg.end(), next);
                        out.vertices.extend_from_slice(&seg.vertices[1..]);
                        out.links.extend_from_slice(&seg.links);
                    }
                }
            }
            out
        })
        .collect();
    Inclusion { vertex_map, urpath_map }
}

/// Vertices of `g` covered by the inclusion (images and path vertices).
pub fn covered_vertices(phi: &Inclusion) -> u128 {
    let mut c = 0u128;
    for &v in &phi.vertex_map {
        c |= 1 << v;
    }
    for p in &phi.urpath_map {
        for &v in &p.vertices {
            c |= 1 << v;
        }
    }
    c
}
