//! Realization for families closed under adding edges, spokes and rungs.
//!
//! For such a family, being free is monotone under deleting edges, so some
//! minimal realization is free whenever any realization is. Eliminating one
//! rung splits `h` into finitely many pathographs with fewer rungs whose
//! minimal realizations are exactly the minimal realizations of `h`; the
//! rungless leaves are decided by the automaton.

use std::collections::HashSet;

use crate::automaton::{build_decision_dfa, Alphabet};
use crate::encodings::{additions, apply, Addition};
use crate::error::{Error, Result};
use crate::iso::{canonical_key, is_isomorphic, CanonKey};
use crate::pathograph::Pathograph;
use crate::realization::{realization_from_string, Realization};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosednessReport {
    pub closed: bool,
    /// A member and one addition whose result is not in the family.
    pub counterexample: Option<(Pathograph, Addition)>,
}

impl ClosednessReport {
    pub fn describe(&self) -> String {
        match &self.counterexample {
            None => "closed".into(),
            Some((f, a)) => format!("not closed: adding {} to a member gives a pathograph outside the family", a.format(f)),
        }
    }
}

/// Checks single additions only; closure follows by induction on the number
/// of additions.
pub fn is_closed(family: &[Pathograph]) -> ClosednessReport {
    for f in family {
        for a in additions(f) {
            let g = apply(f, &a);
            if !family.iter().any(|m| is_isomorphic(m, &g)) {
                return ClosednessReport { closed: false, counterexample: Some((f.clone(), a)) };
            }
        }
    }
    ClosednessReport { closed: true, counterexample: None }
}

/// Where the pieces of the two eliminated urpaths ended up in a member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    /// The eliminated urpaths of the source, `(u1, u2)`.
    pub pair: (usize, usize),
    /// New vertex `c` for each of the two.
    pub centre: [usize; 2],
    /// Urpath from `c` to the left end, if any.
    pub to_left: [Option<usize>; 2],
    /// Urpath from `c` to the right end, if any.
    pub to_right: [Option<usize>; 2],
    /// Member urpath of each surviving source urpath.
    pub urpath_map: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub member: Pathograph,
    pub lift: Lift,
}

impl Branch {
    /// Reads a realization of the member as a realization of the source.
    pub fn lift_realization(&self, source: &Pathograph, r: &Realization) -> Realization {
        let l = &self.lift;
        let mut internal = vec![Vec::new(); source.k()];
        for (u, m) in l.urpath_map.iter().enumerate() {
            if let Some(m) = *m {
                internal[u] = r.internal[m].clone();
            }
        }
        for (s, u) in [l.pair.0, l.pair.1].into_iter().enumerate() {
            let mut path = Vec::new();
            if let Some(a) = l.to_left[s] {
                path.extend(r.internal[a].iter().rev());
            }
            path.push(r.vertex_map[l.centre[s]]);
            if let Some(b) = l.to_right[s] {
                path.extend(&r.internal[b]);
            }
            internal[u] = path;
        }
        Realization {
            source: source.clone(),
            graph: r.graph.clone(),
            vertex_map: r.vertex_map[..source.n()].to_vec(),
            internal,
        }
    }
}

fn fresh(taken: impl Fn(&str) -> bool, base: String) -> String {
    let mut name = base;
    while taken(&name) {
        name.push('\'');
    }
    name
}

/// Cartesian product of option counts, first position most significant.
fn product(counts: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &c in counts {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..c).map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .collect();
    }
    out
}

/// Every member produced by eliminating the rung `(u1, u2)`, with the data
/// needed to lift realizations back. Members are deduplicated exactly.
pub fn eliminate_rung_detailed(h: &Pathograph, rung: (usize, usize)) -> Result<Vec<Branch>> {
    let (x, y) = rung;
    if x == y || !h.has_rung(x, y) {
        return Err(Error::UnknownId(format!("rung ({x},{y})")));
    }
    let pair = [x.min(y), x.max(y)];

    // Skeleton: `h` without the pair, surviving urpaths keep their order.
    let mut base = Pathograph::new();
    for v in &h.vertices {
        base.add_vertex(v);
    }
    let mut urpath_map = vec![None; h.k()];
    for (u, ur) in h.urpaths.iter().enumerate() {
        if !pair.contains(&u) {
            urpath_map[u] = Some(base.add_urpath(&ur.name, ur.left, ur.right));
        }
    }
    base.edges = h.edges.clone();
    for &(v, u) in &h.spokes {
        if let Some(m) = urpath_map[u] {
            base.add_spoke(v, m);
        }
    }
    for &(a, b) in &h.rungs {
        if let (Some(a), Some(b)) = (urpath_map[a], urpath_map[b]) {
            base.add_rung(a, b);
        }
    }
    let mut centre = [0; 2];
    for s in 0..2 {
        let name = fresh(|n| h.vertex_index(n).is_some() || base.vertex_index(n).is_some(), format!("{}_c", h.urpaths[pair[s]].name));
        centre[s] = base.add_vertex(&name);
    }
    base.add_edge(centre[0], centre[1]);

    // Spokes and other rungs attached to each side, in a fixed order.
    let spokes: [Vec<usize>; 2] = [0, 1].map(|s| h.spokes.iter().filter(|&&(_, u)| u == pair[s]).map(|&(v, _)| v).collect());
    let rungs: [Vec<usize>; 2] = [0, 1].map(|s| {
        h.rungs
            .iter()
            .filter_map(|&(a, b)| {
                let other = if a == pair[s] { b } else if b == pair[s] { a } else { return None };
                (other != pair[1 - s]).then_some(other)
            })
            .collect()
    });

    let mut out: Vec<Branch> = Vec::new();
    // Ends option per side: bit 0 = urpath to the left end, bit 1 = to the right end.
    for ends in product(&[4, 4]) {
        let mut g = base.clone();
        let mut to_left = [None; 2];
        let mut to_right = [None; 2];
        for s in 0..2 {
            let ur = &h.urpaths[pair[s]];
            let c = centre[s];
            if ends[s] & 1 == 1 {
                let name = fresh(|n| h.urpath_index(n).is_some() || g.urpath_index(n).is_some(), format!("{}_a", ur.name));
                to_left[s] = Some(g.add_urpath(&name, c, ur.left));
            } else {
                g.add_edge(c, ur.left);
            }
            if ends[s] & 2 == 2 {
                let name = fresh(|n| h.urpath_index(n).is_some() || g.urpath_index(n).is_some(), format!("{}_b", ur.name));
                to_right[s] = Some(g.add_urpath(&name, c, ur.right));
            } else {
                g.add_edge(c, ur.right);
            }
        }
        let halves: [Vec<usize>; 2] = [0, 1].map(|s| to_left[s].into_iter().chain(to_right[s]).collect());
        let mut counts = Vec::new();
        for s in 0..2 {
            let n = 1 + halves[s].len();
            counts.extend(std::iter::repeat(n).take(spokes[s].len() + rungs[s].len()));
        }
        for choice in product(&counts) {
            let mut m = g.clone();
            let mut it = choice.into_iter();
            for s in 0..2 {
                for &v in &spokes[s] {
                    match it.next().unwrap() {
                        0 => m.add_edge(v, centre[s]),
                        i => m.add_spoke(v, halves[s][i - 1]),
                    }
                }
                for &u in &rungs[s] {
                    let u = urpath_map[u].unwrap();
                    match it.next().unwrap() {
                        0 => m.add_spoke(centre[s], u),
                        i => m.add_rung(u, halves[s][i - 1]),
                    }
                }
            }
            if out.iter().all(|b| b.member != m) {
                let lift = Lift { pair: (pair[0], pair[1]), centre, to_left, to_right, urpath_map: urpath_map.clone() };
                out.push(Branch { member: m, lift });
            }
        }
    }
    Ok(out)
}

pub fn eliminate_rung(h: &Pathograph, rung: (usize, usize)) -> Result<Vec<Pathograph>> {
    Ok(eliminate_rung_detailed(h, rung)?.into_iter().map(|b| b.member).collect())
}

/// A free realization of a rungless `h`, from the shortest accepted string.
fn decide_rungless(h: &Pathograph, family: &[Pathograph]) -> Result<Option<Realization>> {
    let dfa = build_decision_dfa(h, family)?;
    match dfa.shortest_accepted() {
        None => Ok(None),
        Some(word) => {
            let s = Alphabet::of(h)?.decode(&word);
            Ok(Some(realization_from_string(h, &s)?))
        }
    }
}

fn search(h: &Pathograph, family: &[Pathograph], refuted: &mut HashSet<CanonKey>) -> Result<Option<Realization>> {
    let key = canonical_key(h);
    if refuted.contains(&key) {
        return Ok(None);
    }
    let found = match h.rungs.iter().next() {
        None => decide_rungless(h, family)?,
        Some(&rung) => {
            let mut found = None;
            for b in eliminate_rung_detailed(h, rung)? {
                if let Some(r) = search(&b.member, family, refuted)? {
                    found = Some(b.lift_realization(h, &r));
                    break;
                }
            }
            found
        }
    };
    if found.is_none() {
        refuted.insert(key);
    }
    Ok(found)
}

/// A `family`-free realization of `h`, or `None` when there is none.
/// `family` must be closed under adding edges, spokes and rungs.
///
/// Only negative answers are memoized: a positive one ends the search.
pub fn decide_closed(h: &Pathograph, family: &[Pathograph]) -> Result<Option<Realization>> {
    let report = is_closed(family);
    if !report.closed {
        return Err(Error::NotClosed(report.describe()));
    }
    search(h, family, &mut HashSet::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_pgf;

    #[test]
    fn simple_rung_gives_sixteen() {
        let h = parse_pgf("vertices: a b c d\nurpath: u a b\nurpath: w c d\nrung: u w\n").unwrap();
        let s = eliminate_rung(&h, (0, 1)).unwrap();
        assert_eq!(s.len(), 16);
        assert!(s.iter().all(|m| m.is_valid() && m.is_rungless()));
    }

    #[test]
    fn unknown_rung_is_an_error() {
        let h = parse_pgf("vertices: a b c d\nurpath: u a b\nurpath: w c d\n").unwrap();
        assert!(eliminate_rung(&h, (0, 1)).is_err());
    }
}
