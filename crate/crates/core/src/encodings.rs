//! Finite pathograph sets encoding classical containment relations.
//!
//! All sets are deduplicated by canonical key and returned in key order. The
//! minor constructions blow up quickly, so they take an optional size bound:
//! members with more than `bound` vertices plus urpaths are dropped. That is
//! lossless for graphs with at most `bound` vertices, because every
//! realization of a pathograph has at least that many vertices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::iso::{canonical_key, CanonKey};
use crate::pathograph::Pathograph;

/// Work limit for the minor constructions (candidate pathographs built).
pub const WORK_LIMIT: usize = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Subgraph,
    InducedSubgraph,
    Minor,
    InducedMinor,
    TopologicalMinor,
    InducedTopologicalMinor,
}

impl Relation {
    pub const ALL: [Relation; 6] = [
        Relation::Subgraph,
        Relation::InducedSubgraph,
        Relation::Minor,
        Relation::InducedMinor,
        Relation::TopologicalMinor,
        Relation::InducedTopologicalMinor,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Relation::Subgraph => "subgraph",
            Relation::InducedSubgraph => "induced_subgraph",
            Relation::Minor => "minor",
            Relation::InducedMinor => "induced_minor",
            Relation::TopologicalMinor => "topological_minor",
            Relation::InducedTopologicalMinor => "induced_topological_minor",
        }
    }
}

impl FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let norm = s.replace('-', "_");
        Relation::ALL
            .into_iter()
            .find(|r| r.name() == norm)
            .ok_or_else(|| format!("unknown relation `{s}`"))
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn size(p: &Pathograph) -> usize {
    p.n() + p.k()
}

fn within(p: &Pathograph, bound: Option<usize>) -> bool {
    bound.map_or(true, |b| size(p) <= b)
}

fn sorted(m: BTreeMap<CanonKey, Pathograph>) -> Vec<Pathograph> {
    m.into_values().collect()
}

/// One edge, spoke or rung that could be added to a pathograph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Addition {
    Edge(usize, usize),
    Spoke(usize, usize),
    Rung(usize, usize),
}

impl Addition {
    pub fn format(&self, p: &Pathograph) -> String {
        match *self {
            Addition::Edge(a, b) => format!("edge {} {}", p.vertices[a], p.vertices[b]),
            Addition::Spoke(v, u) => format!("spoke {} {}", p.vertices[v], p.urpaths[u].name),
            Addition::Rung(a, b) => format!("rung {} {}", p.urpaths[a].name, p.urpaths[b].name),
        }
    }
}

/// Edges, spokes and rungs that could be added to `p`.
pub fn additions(p: &Pathograph) -> Vec<Addition> {
    let mut out = Vec::new();
    for a in 0..p.n() {
        for b in a + 1..p.n() {
            let ends = p.urpaths.iter().any(|u| u.has_endpoint(a) && u.has_endpoint(b));
            if !ends && !p.has_edge(a, b) {
                out.push(Addition::Edge(a, b));
            }
        }
    }
    for v in 0..p.n() {
        for (u, ur) in p.urpaths.iter().enumerate() {
            if !ur.has_endpoint(v) && !p.has_spoke(v, u) {
                out.push(Addition::Spoke(v, u));
            }
        }
    }
    for a in 0..p.k() {
        for b in a + 1..p.k() {
            if !p.has_rung(a, b) {
                out.push(Addition::Rung(a, b));
            }
        }
    }
    out
}

pub fn apply(p: &Pathograph, add: &Addition) -> Pathograph {
    let mut q = p.clone();
    match *add {
        Addition::Edge(a, b) => q.add_edge(a, b),
        Addition::Spoke(v, u) => q.add_spoke(v, u),
        Addition::Rung(a, b) => q.add_rung(a, b),
    }
    q
}

/// Members of `s` with any number of edges, spokes and rungs added.
pub fn cl_sim(s: &[Pathograph]) -> Vec<Pathograph> {
    let mut seen: BTreeMap<CanonKey, Pathograph> = BTreeMap::new();
    let mut frontier: Vec<Pathograph> = Vec::new();
    for p in s {
        if seen.insert(canonical_key(p), p.clone()).is_none() {
            frontier.push(p.clone());
        }
    }
    // Closing under single additions reaches every subset of additions.
    while let Some(p) = frontier.pop() {
        for add in additions(&p) {
            let q = apply(&p, &add);
            let key = canonical_key(&q);
            if !seen.contains_key(&key) {
                seen.insert(key, q.clone());
                frontier.push(q);
            }
        }
    }
    sorted(seen)
}

/// Members of `s` with any subset of their edges replaced by urpaths.
pub fn cl_u(s: &[Pathograph]) -> Vec<Pathograph> {
    let mut seen = BTreeMap::new();
    for p in s {
        let edges: Vec<(usize, usize)> = p.edges.iter().copied().collect();
        assert!(edges.len() < 32, "too many edges to replace");
        for mask in 0u32..1 << edges.len() {
            let mut q = p.clone();
            let mut next = q.k();
            for (i, &(a, b)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    q.remove_edge(a, b);
                    next += 1;
                    let name = fresh_urpath_name(&q, next);
                    q.add_urpath(&name, a, b);
                }
            }
            seen.entry(canonical_key(&q)).or_insert(q);
        }
    }
    sorted(seen)
}

fn fresh_urpath_name(p: &Pathograph, mut i: usize) -> String {
    loop {
        let name = format!("u{i}");
        if p.urpath_index(&name).is_none() {
            return name;
        }
        i += 1;
    }
}

/// Whether deleting any single urpath disconnects `p`.
fn every_urpath_cuts(p: &Pathograph) -> bool {
    (0..p.k()).all(|u| !p.delete(&BTreeSet::new(), &BTreeSet::from([u])).is_connected())
}

/// Connected pathographs with 1 to `k` vertices in which every urpath is a
/// cut. With `plain`, members carrying spokes or rungs are left out, which
/// under-approximates the set.
pub fn conn(k: usize, plain: bool) -> Result<Vec<Pathograph>> {
    if k == 0 {
        return Ok(Vec::new());
    }
    if k > 3 {
        return Err(Error::BoundExceeded(format!("conn({k}) is limited to 3 vertices")));
    }
    let mut seen = BTreeMap::new();
    for n in 1..=k {
        let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        // With at most 3 vertices a parallel twin keeps both ends joined and
        // no spare vertex can hang off only one of the two, so one urpath per
        // pair suffices.
        for umask in 0u32..1 << pairs.len() {
            let upairs: Vec<(usize, usize)> = (0..pairs.len()).filter(|&i| umask >> i & 1 == 1).map(|i| pairs[i]).collect();
            let epairs: Vec<(usize, usize)> = (0..pairs.len()).filter(|&i| umask >> i & 1 == 0).map(|i| pairs[i]).collect();
            let spokes: Vec<(usize, usize)> = if plain {
                Vec::new()
            } else {
                (0..n)
                    .flat_map(|v| (0..upairs.len()).map(move |u| (v, u)))
                    .filter(|&(v, u)| v != upairs[u].0 && v != upairs[u].1)
                    .collect()
            };
            let rungs: Vec<(usize, usize)> = if plain {
                Vec::new()
            } else {
                (0..upairs.len()).flat_map(|a| (a + 1..upairs.len()).map(move |b| (a, b))).collect()
            };
            for emask in 0u32..1 << epairs.len() {
                for smask in 0u32..1 << spokes.len() {
                    for rmask in 0u32..1 << rungs.len() {
                        let mut p = Pathograph::new();
                        for name in &names {
                            p.add_vertex(name);
                        }
                        for (i, &(a, b)) in upairs.iter().enumerate() {
                            p.add_urpath(&format!("u{}", i + 1), a, b);
                        }
                        for (i, &(a, b)) in epairs.iter().enumerate() {
                            if emask >> i & 1 == 1 {
                                p.add_edge(a, b);
                            }
                        }
                        for (i, &(v, u)) in spokes.iter().enumerate() {
                            if smask >> i & 1 == 1 {
                                p.add_spoke(v, u);
                            }
                        }
                        for (i, &(a, b)) in rungs.iter().enumerate() {
                            if rmask >> i & 1 == 1 {
                                p.add_rung(a, b);
                            }
                        }
                        if p.is_connected() && every_urpath_cuts(&p) {
                            seen.entry(canonical_key(&p)).or_insert(p);
                        }
                    }
                }
            }
        }
    }
    Ok(sorted(seen))
}

/// One possible cross item between two components.
#[derive(Clone, Copy)]
enum Cross {
    Edge(usize, usize),
    Spoke(usize, usize),
    Rung(usize, usize),
}

/// Pathographs that split into one component per vertex `v` of `h`, drawn
/// from `conn(max(1, deg v))`, with edges, spokes or rungs between two
/// components exactly when the vertices are adjacent.
pub fn cl_m(h: &Pathograph, bound: Option<usize>, plain: bool) -> Result<Vec<Pathograph>> {
    if !h.is_graph() {
        return Err(Error::Invalid("cl_m expects a graph".into()));
    }
    let mut conn_cache: BTreeMap<usize, Vec<Pathograph>> = BTreeMap::new();
    let mut choices: Vec<Vec<Pathograph>> = Vec::new();
    for v in 0..h.n() {
        let d = h.degree(v).max(1);
        if !conn_cache.contains_key(&d) {
            conn_cache.insert(d, conn(d, plain)?);
        }
        let members: Vec<Pathograph> = conn_cache[&d]
            .iter()
            .filter(|c| within(c, bound))
            .map(|c| c.with_prefix(&format!("{}.", h.vertices[v])))
            .collect();
        choices.push(members);
    }
    let mut seen = BTreeMap::new();
    let mut work = 0usize;
    let mut pick = vec![0usize; h.n()];
    if h.n() == 0 {
        return Ok(vec![Pathograph::new()]);
    }
    if choices.iter().any(Vec::is_empty) {
        return Ok(Vec::new());
    }
    loop {
        let total: usize = pick.iter().enumerate().map(|(i, &j)| size(&choices[i][j])).sum();
        if bound.map_or(true, |b| total <= b) {
            combine(h, &choices, &pick, &mut seen, &mut work)?;
        }
        // Advance the odometer.
        let mut i = h.n();
        loop {
            if i == 0 {
                return Ok(sorted(seen));
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
        }
    }
}

fn combine(
    h: &Pathograph,
    choices: &[Vec<Pathograph>],
    pick: &[usize],
    seen: &mut BTreeMap<CanonKey, Pathograph>,
    work: &mut usize,
) -> Result<()> {
    let mut base = Pathograph::new();
    let mut voff = Vec::new();
    let mut uoff = Vec::new();
    for (i, &j) in pick.iter().enumerate() {
        voff.push(base.n());
        uoff.push(base.k());
        base = base.disjoint_union(&choices[i][j]);
    }
    let comp = |i: usize| &choices[i][pick[i]];
    // Cross items per pair of components; adjacent pairs need at least one.
    let mut groups: Vec<Vec<Cross>> = Vec::new();
    for i in 0..h.n() {
        for j in i + 1..h.n() {
            if !h.has_edge(i, j) {
                continue;
            }
            let (ci, cj) = (comp(i), comp(j));
            let mut items = Vec::new();
            for a in 0..ci.n() {
                for b in 0..cj.n() {
                    items.push(Cross::Edge(voff[i] + a, voff[j] + b));
                }
            }
            for a in 0..ci.n() {
                for u in 0..cj.k() {
                    items.push(Cross::Spoke(voff[i] + a, uoff[j] + u));
                }
            }
            for b in 0..cj.n() {
                for u in 0..ci.k() {
                    items.push(Cross::Spoke(voff[j] + b, uoff[i] + u));
                }
            }
            for u in 0..ci.k() {
                for w in 0..cj.k() {
                    items.push(Cross::Rung(uoff[i] + u, uoff[j] + w));
                }
            }
            assert!(items.len() < 32, "too many cross items");
            groups.push(items);
        }
    }
    let mut masks = vec![1u32; groups.len()];
    loop {
        *work += 1;
        if *work > WORK_LIMIT {
            return Err(Error::BoundExceeded(format!("minor closure needs more than {WORK_LIMIT} candidates")));
        }
        let mut p = base.clone();
        for (items, &mask) in groups.iter().zip(&masks) {
            for (t, item) in items.iter().enumerate() {
                if mask >> t & 1 == 1 {
                    match *item {
                        Cross::Edge(a, b) => p.add_edge(a, b),
                        Cross::Spoke(v, u) => p.add_spoke(v, u),
                        Cross::Rung(a, b) => p.add_rung(a, b),
                    }
                }
            }
        }
        seen.entry(canonical_key(&p)).or_insert(p);
        let mut g = groups.len();
        loop {
            if g == 0 {
                return Ok(());
            }
            g -= 1;
            if masks[g] + 1 < 1 << groups[g].len() {
                masks[g] += 1;
                break;
            }
            masks[g] = 1;
        }
    }
}

/// The pathograph set for `rel` applied to graph `h`.
pub fn encode(h: &Pathograph, rel: Relation, bound: Option<usize>) -> Result<Vec<Pathograph>> {
    if !h.is_graph() {
        return Err(Error::Invalid("encode expects a graph".into()));
    }
    let keep = |v: Vec<Pathograph>| v.into_iter().filter(|p| within(p, bound)).collect::<Vec<_>>();
    Ok(match rel {
        Relation::Subgraph => cl_sim(&[h.clone()]),
        Relation::InducedSubgraph => vec![h.clone()],
        Relation::Minor => cl_sim(&cl_m(h, bound, false)?),
        Relation::InducedMinor => cl_m(h, bound, false)?,
        Relation::TopologicalMinor => cl_sim(&keep(cl_u(&[h.clone()]))),
        Relation::InducedTopologicalMinor => keep(cl_u(&[h.clone()])),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Pathograph {
        Pathograph::graph(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")])
    }

    fn p3() -> Pathograph {
        Pathograph::graph(&["a", "b", "c"], &[("a", "b"), ("b", "c")])
    }

    #[test]
    fn closures_of_small_graphs() {
        assert_eq!(cl_sim(&[k3()]).len(), 1);
        assert_eq!(cl_sim(&[p3()]).len(), 2);
        assert_eq!(cl_u(&[k3()]).len(), 4);
        assert_eq!(cl_u(&[p3()]).len(), 3);
        assert_eq!(cl_u(&[Pathograph::graph(&["v"], &[])]).len(), 1);
    }

    #[test]
    fn conn_small() {
        assert_eq!(conn(1, false).unwrap().len(), 1);
        let c2 = conn(2, false).unwrap();
        assert_eq!(c2.len(), 3);
        assert!(conn(4, false).is_err());
    }

    #[test]
    fn cl_m_of_an_edge() {
        let k2 = Pathograph::graph(&["a", "b"], &[("a", "b")]);
        let m = cl_m(&k2, None, false).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].counts(), (2, 0, 1, 0, 0));
    }

    #[test]
    fn relation_names() {
        for r in Relation::ALL {
            assert_eq!(r.name().parse::<Relation>().unwrap(), r);
        }
        assert_eq!("induced-minor".parse::<Relation>().unwrap(), Relation::InducedMinor);
    }
}
