//! Search shapes: what an inclusion extending a partial inclusion must look
//! like outside `H`.
//!
//! The part of an inclusion lying in the internal vertices `T` consists of
//! sought vertices (images of undefined source vertices) and connectors
//! (maximal runs of an urpath image inside `T`). Every pair (object,
//! `H`-vertex) and (object, object) is either forced adjacent, forced
//! nonadjacent, free, or one term of an at-least-one obligation coming from a
//! spoke or rung. Objects joined by forced adjacencies form components, which
//! must sit as contiguous runs on one internal path. Two components may touch
//! only when the touching pair is not forced nonadjacent.

use std::collections::BTreeMap;

use super::partial::{mask, HostGraph, PartialInclusion};
use crate::adj::bits;
use crate::pathograph::Pathograph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Anchor {
    H(usize),
    Sought(usize),
}

/// A run of an urpath image inside `T`. Anchors are listed in the urpath's
/// own direction, from its left end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Connector {
    pub urpath: usize,
    pub first: Anchor,
    pub second: Anchor,
}

impl Connector {
    pub fn reversed(self) -> Connector {
        Connector { urpath: self.urpath, first: self.second, second: self.first }
    }

    fn h_anchors(&self) -> u128 {
        let mut m = 0;
        for a in [self.first, self.second] {
            if let Anchor::H(x) = a {
                m |= 1 << x;
            }
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Object {
    /// Image of an undefined source vertex.
    Sought(usize),
    Conn(Connector),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Free,
    Fixed(bool),
    /// One term of the open obligation with this number.
    Term(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Piece {
    Frag(Vec<usize>),
    Sought(usize),
    Conn,
}

/// How one object reads its symbols, in a given orientation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ObjPat {
    pub object: usize,
    pub sought: bool,
    /// Connector read against its urpath's direction.
    pub reversed: bool,
    pub must: u128,
    pub forbid: u128,
    /// `(mask, obligation)`: a symbol meeting `mask` discharges the obligation.
    pub ors: Vec<(u128, usize)>,
    /// `H`-anchor seen by the first vertex read, and by the last.
    pub first: Option<usize>,
    pub last: Option<usize>,
}

/// Everything an extension of one partial inclusion with one fragment
/// arrangement must satisfy.
#[derive(Clone, Debug)]
pub struct Shape {
    pub member: usize,
    pub phi: PartialInclusion,
    pub objects: Vec<Object>,
    /// `th[o][x]`: object `o` against `H`-vertex `x`.
    pub th: Vec<Vec<Role>>,
    pub tt: Vec<Vec<Role>>,
    pub open: usize,
    /// `H`-vertices in the image of the inclusion.
    pub image: u128,
    /// Components, each as its reading variants.
    pub comps: Vec<Vec<Vec<ObjPat>>>,
}

struct Store {
    th: Vec<Vec<Role>>,
    tt: Vec<Vec<Role>>,
    ok: bool,
}

impl Store {
    fn set_th(&mut self, o: usize, x: usize, val: bool) {
        match self.th[o][x] {
            Role::Fixed(b) if b != val => self.ok = false,
            _ => self.th[o][x] = Role::Fixed(val),
        }
    }

    fn set_tt(&mut self, a: usize, b: usize, val: bool) {
        match self.tt[a][b] {
            Role::Fixed(x) if x != val => self.ok = false,
            _ => {
                self.tt[a][b] = Role::Fixed(val);
                self.tt[b][a] = Role::Fixed(val);
            }
        }
    }
}

/// Obligation terms before resolution.
#[derive(Default)]
struct Obl {
    th: Vec<(usize, usize)>,
    tt: Vec<(usize, usize)>,
}

fn oriented(fr: &[usize], start: usize) -> Vec<usize> {
    let mut v = fr.to_vec();
    if v[0] != start {
        v.reverse();
    }
    v
}

fn permutations(items: Vec<Vec<usize>>) -> Vec<Vec<Vec<usize>>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.clone();
        let x = rest.remove(i);
        let flips: Vec<Vec<usize>> = if x.len() > 1 {
            let mut r = x.clone();
            r.reverse();
            vec![x, r]
        } else {
            vec![x]
        };
        for tail in permutations(rest) {
            for fx in &flips {
                let mut seq = vec![fx.clone()];
                seq.extend(tail.iter().cloned());
                out.push(seq);
            }
        }
    }
    out
}

/// Possible piece sequences for the image of urpath `u`, from its left end.
fn arrangements(f: &Pathograph, phi: &PartialInclusion, u: usize) -> Vec<Vec<Piece>> {
    let ur = &f.urpaths[u];
    let (a, b) = (phi.vertex_map[ur.left], phi.vertex_map[ur.right]);
    let frs = &phi.fragments[u];
    if phi.is_completed(f, u) {
        let fr = oriented(&frs[0], a.unwrap());
        return if fr.len() >= 3 { vec![vec![Piece::Frag(fr)]] } else { Vec::new() };
    }
    if frs.is_empty() {
        return vec![vec![Piece::Sought(ur.left), Piece::Conn, Piece::Sought(ur.right)]];
    }
    let find = |x: usize| frs.iter().position(|fr| fr[0] == x || *fr.last().unwrap() == x);
    let head = a.map(|x| (find(x), x));
    let tail = b.map(|x| (find(x), x));
    let hi = match head {
        Some((None, _)) => return Vec::new(),
        Some((Some(i), _)) => Some(i),
        None => None,
    };
    let ti = match tail {
        Some((None, _)) => return Vec::new(),
        Some((Some(i), _)) => Some(i),
        None => None,
    };
    if hi.is_some() && hi == ti {
        return Vec::new();
    }
    let middle: Vec<Vec<usize>> = (0..frs.len()).filter(|&i| Some(i) != hi && Some(i) != ti).map(|i| frs[i].clone()).collect();
    let first = hi.map(|i| oriented(&frs[i], a.unwrap()));
    let last = ti.map(|i| {
        let mut v = oriented(&frs[i], b.unwrap());
        v.reverse();
        v
    });
    let prefixes: Vec<Vec<Piece>> = if a.is_some() {
        vec![Vec::new()]
    } else {
        vec![vec![Piece::Sought(ur.left)], vec![Piece::Sought(ur.left), Piece::Conn]]
    };
    let suffixes: Vec<Vec<Piece>> = if b.is_some() {
        vec![Vec::new()]
    } else {
        vec![vec![Piece::Sought(ur.right)], vec![Piece::Conn, Piece::Sought(ur.right)]]
    };
    let mut out = Vec::new();
    for mid in permutations(middle) {
        let mut chain: Vec<Vec<usize>> = Vec::new();
        chain.extend(first.clone());
        chain.extend(mid);
        chain.extend(last.clone());
        for pre in &prefixes {
            for suf in &suffixes {
                let mut seq = pre.clone();
                for (i, fr) in chain.iter().enumerate() {
                    if i > 0 {
                        seq.push(Piece::Conn);
                    }
                    seq.push(Piece::Frag(fr.clone()));
                }
                seq.extend(suf.iter().cloned());
                let size: usize = seq
                    .iter()
                    .map(|p| match p {
                        Piece::Frag(fr) => fr.len(),
                        _ => 1,
                    })
                    .sum();
                if size >= 3 {
                    out.push(seq);
                }
            }
        }
    }
    out
}

/// Every shape for one partial inclusion of `f` (member `member` of the
/// family) into the host graph of `h`.
pub fn shapes_for(f: &Pathograph, h: &Pathograph, member: usize, phi: &PartialInclusion) -> Vec<Shape> {
    let g = HostGraph::new(h);
    let k = f.k();
    let vimg: u128 = phi.vertex_map.iter().flatten().fold(0, |m, &x| m | 1 << x);
    let hint: Vec<u128> = (0..k).map(|u| phi.interior(f, u)).collect();
    for u in 0..k {
        if hint[u] & vimg != 0 || (0..u).any(|w| hint[w] & hint[u] != 0) {
            return Vec::new();
        }
    }
    let per: Vec<Vec<Vec<Piece>>> = (0..k).map(|u| arrangements(f, phi, u)).collect();
    if per.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let choice: Vec<&Vec<Piece>> = (0..k).map(|u| &per[u][idx[u]]).collect();
        if let Some(s) = build_shape(f, &g, member, phi, &hint, vimg, &choice) {
            out.push(s);
        }
        let mut i = 0;
        while i < k {
            idx[i] += 1;
            if idx[i] < per[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    out
}

fn build_shape(
    f: &Pathograph,
    g: &HostGraph,
    member: usize,
    phi: &PartialInclusion,
    hint: &[u128],
    vimg: u128,
    arr: &[&Vec<Piece>],
) -> Option<Shape> {
    let (n, k, hn) = (f.n(), f.k(), g.n);
    let mut objects = Vec::new();
    let mut sought_obj = vec![usize::MAX; n];
    for v in 0..n {
        if phi.vertex_map[v].is_none() {
            sought_obj[v] = objects.len();
            objects.push(Object::Sought(v));
        }
    }
    let mut conns: Vec<Vec<usize>> = vec![Vec::new(); k];
    // Direct H-neighbour of a sought end on its urpath image.
    let mut direct: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k];
    let mut qmask = vec![0u128; k];
    let anchor_of = |p: &Piece, at_end: bool| match p {
        Piece::Frag(fr) => Anchor::H(if at_end { *fr.last().unwrap() } else { fr[0] }),
        Piece::Sought(v) => Anchor::Sought(*v),
        Piece::Conn => unreachable!("connectors never touch"),
    };
    for u in 0..k {
        let seq = arr[u];
        for (i, p) in seq.iter().enumerate() {
            match p {
                Piece::Frag(fr) => qmask[u] |= mask(fr),
                Piece::Conn => {
                    conns[u].push(objects.len());
                    objects.push(Object::Conn(Connector {
                        urpath: u,
                        first: anchor_of(&seq[i - 1], true),
                        second: anchor_of(&seq[i + 1], false),
                    }));
                }
                Piece::Sought(v) => {
                    let nb = if i == 0 { seq.get(1) } else { seq.get(i - 1) };
                    if let Some(Piece::Frag(fr)) = nb {
                        let x = if i == 0 { fr[0] } else { *fr.last().unwrap() };
                        direct[u].push((*v, x));
                    }
                }
            }
        }
    }
    let m = objects.len();
    let image = vimg | qmask.iter().fold(0, |a, &b| a | b);
    let mut st = Store { th: vec![vec![Role::Free; hn]; m], tt: vec![vec![Role::Free; m]; m], ok: true };
    let ends = |u: usize| (f.urpaths[u].left, f.urpaths[u].right);
    let is_end = |v: usize, u: usize| {
        let (a, b) = ends(u);
        v == a || v == b
    };

    for v in 0..n {
        let o = sought_obj[v];
        if o == usize::MAX {
            continue;
        }
        for w in 0..n {
            if let Some(x) = phi.vertex_map[w] {
                st.set_th(o, x, f.has_edge(v, w));
            } else if w != v {
                st.set_tt(o, sought_obj[w], f.has_edge(v, w));
            }
        }
        for u in 0..k {
            if !is_end(v, u) {
                continue;
            }
            for x in bits(qmask[u]) {
                st.set_th(o, x, direct[u].contains(&(v, x)));
            }
            for &p in &conns[u] {
                let Object::Conn(c) = objects[p] else { unreachable!() };
                st.set_tt(o, p, c.first == Anchor::Sought(v) || c.second == Anchor::Sought(v));
            }
        }
    }
    for u in 0..k {
        for &p in &conns[u] {
            let Object::Conn(c) = objects[p] else { unreachable!() };
            for x in bits(qmask[u] & !c.h_anchors()) {
                st.set_th(p, x, false);
            }
            for &q in &conns[u] {
                if q != p {
                    st.set_tt(p, q, false);
                }
            }
        }
    }

    // Spoke and rung obligations.
    let mut obls: Vec<Obl> = Vec::new();
    let mut handle = |st: &mut Store, want: bool, stat: bool, ob: Obl| {
        if !want {
            if stat {
                st.ok = false;
            }
            for (o, x) in ob.th {
                st.set_th(o, x, false);
            }
            for (a, b) in ob.tt {
                st.set_tt(a, b, false);
            }
        } else if !stat {
            obls.push(ob);
        }
    };
    for v in 0..n {
        for u in 0..k {
            if is_end(v, u) {
                continue;
            }
            let mut ob = Obl::default();
            let stat = match phi.vertex_map[v] {
                Some(x) => {
                    ob.th.extend(conns[u].iter().map(|&p| (p, x)));
                    g.nb[x] & hint[u] != 0
                }
                None => {
                    let o = sought_obj[v];
                    ob.th.extend(bits(hint[u]).map(|x| (o, x)));
                    ob.tt.extend(conns[u].iter().map(|&p| (o, p)));
                    false
                }
            };
            handle(&mut st, f.has_spoke(v, u), stat, ob);
        }
    }
    for u in 0..k {
        for w in u + 1..k {
            let mut ob = Obl::default();
            for &p in &conns[u] {
                ob.th.extend(bits(hint[w]).map(|x| (p, x)));
                ob.tt.extend(conns[w].iter().map(|&q| (p, q)));
            }
            for &q in &conns[w] {
                ob.th.extend(bits(hint[u]).map(|x| (q, x)));
            }
            handle(&mut st, f.has_rung(u, w), g.sets_adj(hint[u], hint[w]), ob);
        }
    }
    if !st.ok {
        return None;
    }
    // Resolve: a term forced true discharges its obligation, forced false
    // terms drop out.
    let mut open = 0;
    for ob in obls {
        let th_true = ob.th.iter().any(|&(o, x)| st.th[o][x] == Role::Fixed(true));
        let tt_true = ob.tt.iter().any(|&(a, b)| st.tt[a][b] == Role::Fixed(true));
        if th_true || tt_true {
            continue;
        }
        let th: Vec<_> = ob.th.into_iter().filter(|&(o, x)| st.th[o][x] == Role::Free).collect();
        let tt: Vec<_> = ob.tt.into_iter().filter(|&(a, b)| st.tt[a][b] == Role::Free).collect();
        if th.is_empty() && tt.is_empty() {
            return None;
        }
        for (o, x) in th {
            st.th[o][x] = Role::Term(open);
        }
        for (a, b) in tt {
            st.tt[a][b] = Role::Term(open);
            st.tt[b][a] = Role::Term(open);
        }
        open += 1;
    }
    // A required adjacency of a connector becomes a one-term obligation.
    for o in 0..m {
        if matches!(objects[o], Object::Conn(_)) {
            for x in 0..hn {
                if st.th[o][x] == Role::Fixed(true) {
                    st.th[o][x] = Role::Term(open);
                    open += 1;
                }
            }
        }
    }
    assert!(open <= 64, "more than 64 open obligations in one shape");
    let comps = components(&objects, &st.tt)?;
    assert!(comps.len() <= 32, "more than 32 components in one shape");
    let mut shape = Shape { member, phi: phi.clone(), objects, th: st.th, tt: st.tt, open, image, comps: Vec::new() };
    shape.comps = comps.iter().map(|c| variants(&shape, c)).collect();
    Some(shape)
}

/// Components of the forced-adjacency graph as object sequences; `None` if
/// it is not a disjoint union of paths.
fn components(objects: &[Object], tt: &[Vec<Role>]) -> Option<Vec<Vec<usize>>> {
    let m = objects.len();
    let nbrs: Vec<Vec<usize>> = (0..m).map(|a| (0..m).filter(|&b| tt[a][b] == Role::Fixed(true)).collect()).collect();
    if nbrs.iter().any(|v| v.len() > 2) {
        return None;
    }
    let mut seen = vec![false; m];
    let mut out = Vec::new();
    for s in 0..m {
        if seen[s] || nbrs[s].len() == 2 {
            continue;
        }
        let mut path = vec![s];
        seen[s] = true;
        let mut prev = usize::MAX;
        let mut cur = s;
        while let Some(&nx) = nbrs[cur].iter().find(|&&x| x != prev) {
            if seen[nx] {
                return None;
            }
            seen[nx] = true;
            path.push(nx);
            prev = cur;
            cur = nx;
        }
        out.push(path);
    }
    // Whatever is left lies on cycles.
    if seen.iter().any(|s| !s) {
        return None;
    }
    Some(out)
}

fn pattern(shape: &Shape, o: usize, conn: Option<Connector>) -> ObjPat {
    let reversed = matches!((conn, shape.objects[o]), (Some(c), Object::Conn(orig)) if c != orig);
    let mut p = ObjPat { object: o, sought: conn.is_none(), reversed, must: 0, forbid: 0, ors: Vec::new(), first: None, last: None };
    let mut ors: BTreeMap<usize, u128> = BTreeMap::new();
    for (x, r) in shape.th[o].iter().enumerate() {
        if shape.image >> x & 1 == 0 {
            continue;
        }
        match r {
            Role::Fixed(true) => p.must |= 1 << x,
            Role::Fixed(false) => p.forbid |= 1 << x,
            Role::Term(t) => *ors.entry(*t).or_default() |= 1 << x,
            Role::Free => {}
        }
    }
    p.ors = ors.into_iter().map(|(t, m)| (m, t)).collect();
    if let Some(c) = conn {
        if let Anchor::H(x) = c.first {
            p.first = Some(x);
        }
        if let Anchor::H(x) = c.second {
            p.last = Some(x);
        }
    }
    p
}

/// Reading variants of a component: both directions along the run, and both
/// directions of a lone connector.
fn variants(shape: &Shape, comp: &[usize]) -> Vec<Vec<ObjPat>> {
    let mut out: Vec<Vec<ObjPat>> = Vec::new();
    let dirs: Vec<Vec<usize>> = if comp.len() > 1 {
        let mut r = comp.to_vec();
        r.reverse();
        vec![comp.to_vec(), r]
    } else {
        vec![comp.to_vec()]
    };
    for seq in dirs {
        if seq.len() == 1 {
            if let Object::Conn(c) = shape.objects[seq[0]] {
                for cc in [c, c.reversed()] {
                    let v = vec![pattern(shape, seq[0], Some(cc))];
                    if !out.contains(&v) {
                        out.push(v);
                    }
                }
                continue;
            }
        }
        let mut v = Vec::new();
        for (i, &o) in seq.iter().enumerate() {
            let conn = match shape.objects[o] {
                Object::Sought(_) => None,
                Object::Conn(c) => {
                    // Read in the direction that meets the preceding neighbour first.
                    let before = |a: Anchor| matches!(a, Anchor::Sought(w) if i > 0 && shape.objects[seq[i - 1]] == Object::Sought(w));
                    let after = |a: Anchor| matches!(a, Anchor::Sought(w) if i + 1 < seq.len() && shape.objects[seq[i + 1]] == Object::Sought(w));
                    Some(if before(c.first) || after(c.second) { c } else { c.reversed() })
                }
            };
            v.push(pattern(shape, o, conn));
        }
        out.push(v);
    }
    out
}

impl Shape {
    /// Role of the pair formed by the last object of one component and the
    /// first object of a component read right after it.
    pub fn junction(&self, last: usize, first: usize) -> Role {
        self.tt[last][first]
    }

    /// Everything the shape machine reads from this shape, with objects
    /// renumbered by first appearance. Shapes with equal signatures accept
    /// the same strings.
    pub fn signature(&self) -> String {
        let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
        let mut ends = Vec::new();
        let mut comps = self.comps.clone();
        for var in comps.iter_mut().flatten() {
            ends.push((var[0].object, var.last().unwrap().object));
            for p in var.iter_mut() {
                let next = ids.len();
                p.object = *ids.entry(p.object).or_insert(next);
                p.reversed = false;
            }
        }
        let mut junctions = Vec::new();
        for &(_, last) in &ends {
            for &(first, _) in &ends {
                junctions.push(match self.tt[last][first] {
                    Role::Term(t) => Some(Some(t)),
                    Role::Fixed(false) => None,
                    _ => Some(None),
                });
            }
        }
        format!("{}|{:?}|{:?}", self.open, comps, junctions)
    }
}
