//! Explicit search data: one concrete way of finding the part of an
//! inclusion that lies outside `H`, and the automaton `M_D` looking for it.
//!
//! A shape leaves choices open (where each component goes, in which order,
//! which pairs touch, which term discharges each obligation). Fixing all of
//! them gives a `SearchData`; the union of the `M_D` over those equals the
//! shape machine.

use std::collections::BTreeSet;

use super::alphabet::Alphabet;
use super::nfa::{full, Label, Nfa};
use super::partial::PartialInclusion;
use super::shape::{shapes_for, Anchor, ObjPat, Object, Role, Shape};
use crate::adj::bits;
use crate::error::Result;
use crate::pathograph::Pathograph;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SearchData {
    /// Sought vertices and connectors; connector anchors in reading order.
    pub objects: Vec<Object>,
    /// 1-based urpath index of `h` holding each object.
    pub placement: Vec<usize>,
    /// Objects of each index in reading order.
    pub orders: Vec<Vec<usize>>,
    /// Consecutive objects that touch.
    pub links: BTreeSet<(usize, usize)>,
    /// `H`-vertices each object must see; for a connector, seen by at least
    /// one of its vertices. Anchors are not listed.
    pub required: Vec<u128>,
    /// `H`-vertices whose adjacency to the object does not matter.
    pub unconstrained: Vec<u128>,
}

impl SearchData {
    /// Pairs of adjacent objects, including those forced inside a component.
    pub fn adjacency_pairs(&self) -> Vec<(usize, usize)> {
        self.links.iter().copied().collect()
    }

    /// The same data with every unconstrained adjacency decided, in all ways.
    pub fn expand(&self) -> Vec<SearchData> {
        let mut out = vec![self.clone()];
        for o in 0..self.objects.len() {
            let free: Vec<usize> = bits(self.unconstrained[o]).collect();
            let mut next = Vec::new();
            for d in &out {
                for sub in 0..1u64 << free.len() {
                    let mut e = d.clone();
                    for (i, &x) in free.iter().enumerate() {
                        if sub >> i & 1 == 1 {
                            e.required[o] |= 1 << x;
                        }
                    }
                    e.unconstrained[o] = 0;
                    next.push(e);
                }
            }
            out = next;
        }
        out
    }

    pub fn format(&self, f: &Pathograph, h: &Pathograph) -> String {
        let name = |o: usize| match self.objects[o] {
            Object::Sought(v) => format!("x[{}]", f.vertices[v]),
            Object::Conn(c) => {
                let a = |x: Anchor| match x {
                    Anchor::H(y) => h.vertices[y].clone(),
                    Anchor::Sought(v) => format!("x[{}]", f.vertices[v]),
                };
                format!("p[{}:{},{}]", f.urpaths[c.urpath].name, a(c.first), a(c.second))
            }
        };
        let set = |m: u128| bits(m).map(|x| h.vertices[x].as_str()).collect::<Vec<_>>().join(",");
        let mut parts = Vec::new();
        for (k, ord) in self.orders.iter().enumerate() {
            let mut s = format!("{}:", k + 1);
            for (i, &o) in ord.iter().enumerate() {
                if i > 0 {
                    s.push_str(if self.links.contains(&(ord[i - 1], o)) { "-" } else { " < " });
                }
                s.push_str(&format!("{}{{{}|{}}}", name(o), set(self.required[o]), set(self.unconstrained[o])));
            }
            parts.push(s);
        }
        parts.join("; ")
    }
}

/// Every concrete search data of a shape over `k` urpath indices.
pub fn expand_shape(shape: &Shape, k: usize, n: usize) -> Vec<SearchData> {
    let c = shape.comps.len();
    let mut out = Vec::new();
    if k == 0 && c > 0 {
        return out;
    }
    let mut variant = vec![0usize; c];
    loop {
        let pats: Vec<&Vec<ObjPat>> = (0..c).map(|i| &shape.comps[i][variant[i]]).collect();
        let mut index = vec![0usize; c];
        loop {
            let mut per: Vec<Vec<usize>> = vec![Vec::new(); k];
            for i in 0..c {
                per[index[i]].push(i);
            }
            place(shape, &pats, &per, 0, &mut Vec::new(), k, n, &mut out);
            if !odometer(&mut index, k) {
                break;
            }
        }
        let radix: Vec<usize> = (0..c).map(|i| shape.comps[i].len()).collect();
        if !odometer_mixed(&mut variant, &radix) {
            break;
        }
    }
    out.sort();
    out.dedup();
    out
}

fn odometer(v: &mut [usize], base: usize) -> bool {
    for x in v.iter_mut() {
        *x += 1;
        if *x < base {
            return true;
        }
        *x = 0;
    }
    false
}

fn odometer_mixed(v: &mut [usize], radix: &[usize]) -> bool {
    for (x, &r) in v.iter_mut().zip(radix) {
        *x += 1;
        if *x < r {
            return true;
        }
        *x = 0;
    }
    false
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut t in permutations(&rest) {
            t.insert(0, x);
            out.push(t);
        }
    }
    out
}

/// Chooses an order for the components of each index, then which neighbours
/// touch.
#[allow(clippy::too_many_arguments)]
fn place(shape: &Shape, pats: &[&Vec<ObjPat>], per: &[Vec<usize>], idx: usize, chosen: &mut Vec<Vec<usize>>, k: usize, n: usize, out: &mut Vec<SearchData>) {
    if idx == k {
        touch(shape, pats, chosen, n, out);
        return;
    }
    for perm in permutations(&per[idx]) {
        chosen.push(perm);
        place(shape, pats, per, idx + 1, chosen, k, n, out);
        chosen.pop();
    }
}

fn touch(shape: &Shape, pats: &[&Vec<ObjPat>], orders: &[Vec<usize>], n: usize, out: &mut Vec<SearchData>) {
    // Junctions between consecutive components of one index.
    let mut junctions: Vec<(usize, usize, Role)> = Vec::new();
    for ord in orders {
        for w in ord.windows(2) {
            let a = pats[w[0]].last().unwrap().object;
            let b = pats[w[1]].first().unwrap().object;
            let r = shape.tt[a][b];
            if r != Role::Fixed(false) {
                junctions.push((a, b, r));
            }
        }
    }
    for sub in 0..1u64 << junctions.len() {
        let mut links = BTreeSet::new();
        let mut sat = 0u64;
        for (i, &(a, b, r)) in junctions.iter().enumerate() {
            if sub >> i & 1 == 1 {
                links.insert((a, b));
                if let Role::Term(t) = r {
                    sat |= 1 << t;
                }
            }
        }
        witnesses(shape, pats, orders, &links, sat, n, out);
    }
}

fn witnesses(shape: &Shape, pats: &[&Vec<ObjPat>], orders: &[Vec<usize>], links: &BTreeSet<(usize, usize)>, sat: u64, n: usize, out: &mut Vec<SearchData>) {
    let m = shape.objects.len();
    let mut slot: Vec<Option<&ObjPat>> = vec![None; m];
    for p in pats.iter().flat_map(|v| v.iter()) {
        slot[p.object] = Some(p);
    }
    let all: Vec<&ObjPat> = slot.into_iter().map(|p| p.expect("every object lies in a component")).collect();
    // Candidate witnesses of each obligation not discharged by a junction.
    let mut choices: Vec<Vec<(usize, usize)>> = Vec::new();
    for t in 0..shape.open {
        if sat >> t & 1 == 1 {
            continue;
        }
        let mut c = Vec::new();
        for p in &all {
            for &(mask, tt) in &p.ors {
                if tt == t {
                    c.extend(bits(mask).map(|x| (p.object, x)));
                }
            }
        }
        if c.is_empty() {
            return;
        }
        choices.push(c);
    }
    let mut pick = vec![0usize; choices.len()];
    let mut placement = vec![0usize; m];
    let mut full_orders = Vec::new();
    let mut links_all = links.clone();
    for (k, ord) in orders.iter().enumerate() {
        let mut seq = Vec::new();
        for &ci in ord {
            for (j, p) in pats[ci].iter().enumerate() {
                placement[p.object] = k + 1;
                if j > 0 {
                    links_all.insert((pats[ci][j - 1].object, p.object));
                }
                seq.push(p.object);
            }
        }
        full_orders.push(seq);
    }
    let objects: Vec<Object> = (0..m)
        .map(|o| match shape.objects[o] {
            Object::Conn(c) if all[o].reversed => Object::Conn(c.reversed()),
            x => x,
        })
        .collect();
    loop {
        let mut required: Vec<u128> = all.iter().map(|p| p.must).collect();
        for (c, &i) in choices.iter().zip(&pick) {
            let (o, x) = c[i];
            required[o] |= 1 << x;
        }
        let unconstrained: Vec<u128> = (0..m)
            .map(|o| {
                let p = all[o];
                let anchors = p.first.map_or(0, |a| 1u128 << a) | p.last.map_or(0, |b| 1u128 << b);
                full(n) & !(required[o] | p.forbid | anchors)
            })
            .collect();
        out.push(SearchData {
            objects: objects.clone(),
            placement: placement.clone(),
            orders: full_orders.clone(),
            links: links_all.clone(),
            required,
            unconstrained,
        });
        let radix: Vec<usize> = choices.iter().map(Vec::len).collect();
        if !odometer_mixed(&mut pick, &radix) {
            break;
        }
    }
}

/// All search data for one partial inclusion.
pub fn enumerate_search_data(phi: &PartialInclusion, f: &Pathograph, h: &Pathograph) -> Vec<SearchData> {
    let mut out: Vec<SearchData> = shapes_for(f, h, 0, phi).iter().flat_map(|s| expand_shape(s, h.k(), h.n())).collect();
    out.sort();
    out.dedup();
    out
}

/// The automaton `M_D`: per index a start state looping on any symbol, then
/// each object in order. A connector accumulates the required vertices it
/// has seen in states `s_p^X`; an object not touching its successor is
/// followed by an `after` state looping on any symbol.
pub fn build_md(d: &SearchData, h: &Pathograph) -> Result<Nfa> {
    let al = Alphabet::of(h)?;
    let (n, k) = (h.n(), h.k());
    let mut nfa = Nfa::new(al);
    let name = |o: usize| match d.objects[o] {
        Object::Sought(v) => format!("x{v}"),
        Object::Conn(_) => format!("p{o}"),
    };
    if k == 0 {
        let s = nfa.add_state("accept");
        nfa.start.push(s);
        nfa.accept[s] = d.objects.is_empty();
        return Ok(nfa);
    }
    let starts: Vec<usize> = (1..=k).map(|i| nfa.add_state(format!("start{i}"))).collect();
    let accept = nfa.add_state("accept");
    nfa.accept[accept] = true;
    nfa.start.push(starts[0]);
    nfa.add_edge(accept, Label::any(k), accept);
    for (ki, ord) in d.orders.iter().enumerate() {
        let idx = ki + 1;
        let exit = if idx == k { accept } else { starts[idx] };
        nfa.add_edge(starts[ki], Label::any(idx), starts[ki]);
        if ord.is_empty() {
            nfa.add_eps(starts[ki], exit);
            continue;
        }
        let mut src = starts[ki];
        for (i, &o) in ord.iter().enumerate() {
            let care = full(n) & !d.unconstrained[o];
            let lab = |value: u128| Label { index: idx, care, value };
            let right = nfa.add_state(format!("right.{}", name(o)));
            let req = d.required[o];
            match d.objects[o] {
                Object::Sought(_) => nfa.add_edge(src, lab(req), right),
                Object::Conn(c) => {
                    let a = match c.first {
                        Anchor::H(x) => 1u128 << x,
                        Anchor::Sought(_) => 0,
                    };
                    let b = match c.second {
                        Anchor::H(x) => 1u128 << x,
                        Anchor::Sought(_) => 0,
                    };
                    let subsets: Vec<u128> = subsets_of(req);
                    let acc: Vec<usize> = subsets
                        .iter()
                        .map(|&x| {
                            let set = bits(x).map(|v| h.vertices[v].as_str()).collect::<Vec<_>>().join(",");
                            nfa.add_state(format!("{}.{{{set}}}", name(o)))
                        })
                        .collect();
                    let at = |x: u128| subsets.iter().position(|&s| s == x).unwrap();
                    for (si, &x) in subsets.iter().enumerate() {
                        nfa.add_edge(src, lab(x | a), acc[si]);
                        for &y in &subsets {
                            nfa.add_edge(acc[si], lab(y), acc[at(x | y)]);
                            if x | y == req {
                                nfa.add_edge(acc[si], lab(y | b), right);
                            }
                        }
                    }
                    nfa.add_edge(src, lab(req | a | b), right);
                }
            }
            let last = i + 1 == ord.len();
            let touches = !last && d.links.contains(&(o, ord[i + 1]));
            if touches {
                src = right;
            } else {
                let after = nfa.add_state(format!("after.{}", name(o)));
                nfa.add_edge(right, Label::any(idx), after);
                nfa.add_edge(after, Label::any(idx), after);
                if last {
                    nfa.add_eps(right, exit);
                    nfa.add_eps(after, exit);
                }
                src = after;
            }
        }
    }
    Ok(nfa)
}

fn subsets_of(m: u128) -> Vec<u128> {
    let bs: Vec<usize> = bits(m).collect();
    (0..1u64 << bs.len())
        .map(|s| bs.iter().enumerate().filter(|(i, _)| s >> i & 1 == 1).fold(0, |acc, (_, &b)| acc | 1u128 << b))
        .collect()
}

/// `M_phi`: the union of `M_D` over all search data of `phi`.
pub fn build_mphi(phi: &PartialInclusion, f: &Pathograph, h: &Pathograph) -> Result<Nfa> {
    let parts = enumerate_search_data(phi, f, h).iter().map(|d| build_md(d, h)).collect::<Result<Vec<_>>>()?;
    if parts.is_empty() {
        let mut nfa = Nfa::new(Alphabet::of(h)?);
        let s = nfa.add_state("start");
        nfa.start.push(s);
        return Ok(nfa);
    }
    Nfa::union(&parts)
}
