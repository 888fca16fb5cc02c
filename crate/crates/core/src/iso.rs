//! Isomorphism and canonical keys.
//!
//! Mutual inclusion forces a bijection on vertices, urpaths, edges, spokes and
//! rungs, so two pathographs are isomorphic exactly when they agree up to
//! renaming (urpath order and orientation do not matter). The canonical key is
//! the smallest encoding over all vertex orders compatible with a colour
//! refinement, which keeps the brute force small at desk scale.

use std::collections::BTreeMap;

use crate::pathograph::Pathograph;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonKey(Vec<u32>);

fn ranks<T: Ord + Clone>(sigs: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(s).unwrap() as u32).collect()
}

/// Stable colour refinement of vertices and urpaths.
fn refine(p: &Pathograph) -> (Vec<u32>, Vec<u32>) {
    let (n, k) = (p.n(), p.k());
    let mut nbrs = vec![Vec::new(); n];
    for &(a, b) in &p.edges {
        nbrs[a].push(b);
        nbrs[b].push(a);
    }
    let mut vsp = vec![Vec::new(); n];
    let mut usp = vec![Vec::new(); k];
    for &(v, u) in &p.spokes {
        vsp[v].push(u);
        usp[u].push(v);
    }
    let mut urung = vec![Vec::new(); k];
    for &(a, b) in &p.rungs {
        urung[a].push(b);
        urung[b].push(a);
    }
    let inc: Vec<Vec<usize>> = (0..n).map(|v| p.incident_urpaths(v)).collect();
    let mut vc: Vec<u32> = ranks(&(0..n).map(|v| (nbrs[v].len(), inc[v].len(), vsp[v].len())).collect::<Vec<_>>());
    let mut uc: Vec<u32> = ranks(&(0..k).map(|u| (usp[u].len(), urung[u].len())).collect::<Vec<_>>());
    let classes = |vc: &[u32], uc: &[u32]| {
        let mut a = vc.to_vec();
        a.sort();
        a.dedup();
        let mut b = uc.to_vec();
        b.sort();
        b.dedup();
        a.len() + b.len()
    };
    let mut count = classes(&vc, &uc);
    loop {
        let vsig: Vec<_> = (0..n)
            .map(|v| {
                let mut e: Vec<u32> = nbrs[v].iter().map(|&w| vc[w]).collect();
                e.sort();
                let mut i: Vec<u32> = inc[v].iter().map(|&u| uc[u]).collect();
                i.sort();
                let mut s: Vec<u32> = vsp[v].iter().map(|&u| uc[u]).collect();
                s.sort();
                (vc[v], e, i, s)
            })
            .collect();
        let usig: Vec<_> = (0..k)
            .map(|u| {
                let ur = &p.urpaths[u];
                let mut ends = [vc[ur.left], vc[ur.right]];
                ends.sort();
                let mut s: Vec<u32> = usp[u].iter().map(|&v| vc[v]).collect();
                s.sort();
                let mut r: Vec<u32> = urung[u].iter().map(|&x| uc[x]).collect();
                r.sort();
                (uc[u], ends, s, r)
            })
            .collect();
        let nvc = ranks(&vsig);
        let nuc = ranks(&usig);
        let c = classes(&nvc, &nuc);
        vc = nvc;
        uc = nuc;
        if c == count {
            break;
        }
        count = c;
    }
    (vc, uc)
}

/// Calls `visit` with every ordering that lists the groups in turn, each
/// group in every possible internal order.
fn for_each_class_order(groups: &[Vec<usize>], visit: &mut dyn FnMut(&[usize])) {
    fn perm(rest: &mut Vec<usize>, groups: &[Vec<usize>], cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if rest.is_empty() {
            next_group(groups, cur, visit);
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            perm(rest, groups, cur, visit);
            cur.pop();
            rest.insert(i, x);
        }
    }
    fn next_group(groups: &[Vec<usize>], cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        match groups.split_first() {
            None => visit(cur),
            Some((g, tail)) => perm(&mut g.clone(), tail, cur, visit),
        }
    }
    next_group(groups, &mut Vec::new(), visit);
}

fn group_by<T: Ord + Clone>(colors: &[T]) -> Vec<Vec<usize>> {
    let mut m: BTreeMap<T, Vec<usize>> = BTreeMap::new();
    for (i, c) in colors.iter().enumerate() {
        m.entry(c.clone()).or_default().push(i);
    }
    m.into_values().collect()
}

pub fn canonical_key(p: &Pathograph) -> CanonKey {
    let (vc, uc) = refine(p);
    let vgroups = group_by(&vc);
    let mut best: Option<Vec<u32>> = None;
    let mut pos = vec![0u32; p.n()];
    for_each_class_order(&vgroups, &mut |order: &[usize]| {
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i as u32;
        }
        let mut code: Vec<u32> = vec![p.n() as u32, p.k() as u32, p.edges.len() as u32];
        let mut edges: Vec<(u32, u32)> = p
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (pos[a], pos[b]);
                if x < y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        edges.sort();
        if let Some(b) = &best {
            // Cheap early exit on the edge prefix.
            let mut prefix = code.clone();
            for &(x, y) in &edges {
                prefix.push(x);
                prefix.push(y);
            }
            if prefix.as_slice() > &b[..prefix.len().min(b.len())] {
                return;
            }
        }
        for &(x, y) in &edges {
            code.push(x);
            code.push(y);
        }
        // Urpath descriptors under this vertex order.
        let mut desc: Vec<(u32, u32, u32, Vec<u32>)> = (0..p.k())
            .map(|u| {
                let ur = &p.urpaths[u];
                let (x, y) = (pos[ur.left], pos[ur.right]);
                let mut s: Vec<u32> = p.spokes.iter().filter(|&&(_, w)| w == u).map(|&(v, _)| pos[v]).collect();
                s.sort();
                (uc[u], x.min(y), x.max(y), s)
            })
            .collect();
        let ugroups = group_by(&desc);
        let mut ucode: Option<Vec<u32>> = None;
        let mut upos = vec![0u32; p.k()];
        // Without rungs the order inside a group is irrelevant.
        let ugroups: &[Vec<usize>] = if p.rungs.is_empty() { &[] } else { &ugroups };
        for_each_class_order(ugroups, &mut |uorder: &[usize]| {
            for (i, &u) in uorder.iter().enumerate() {
                upos[u] = i as u32;
            }
            let mut rungs: Vec<(u32, u32)> = p
                .rungs
                .iter()
                .map(|&(a, b)| (upos[a].min(upos[b]), upos[a].max(upos[b])))
                .collect();
            rungs.sort();
            let flat: Vec<u32> = rungs.iter().flat_map(|&(a, b)| [a, b]).collect();
            if ucode.as_ref().map_or(true, |c| flat < *c) {
                ucode = Some(flat);
            }
        });
        desc.sort();
        for (c, x, y, s) in &desc {
            code.push(*c);
            code.push(*x);
            code.push(*y);
            code.push(s.len() as u32);
            code.extend_from_slice(s);
        }
        code.push(p.rungs.len() as u32);
        code.extend(ucode.unwrap_or_default());
        if best.as_ref().map_or(true, |b| code < *b) {
            best = Some(code);
        }
    });
    CanonKey(best.unwrap_or_default())
}

pub fn is_isomorphic(p: &Pathograph, q: &Pathograph) -> bool {
    p.counts() == q.counts() && canonical_key(p) == canonical_key(q)
}

/// Keeps one member per isomorphism class, sorted by canonical key.
pub fn dedup_iso(items: impl IntoIterator<Item = Pathograph>) -> Vec<Pathograph> {
    let mut m: BTreeMap<CanonKey, Pathograph> = BTreeMap::new();
    for p in items {
        m.entry(canonical_key(&p)).or_insert(p);
    }
    m.into_values().collect()
}
