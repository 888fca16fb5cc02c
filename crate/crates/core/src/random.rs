//! Random small pathographs for property tests and oracle runs.

use rand::Rng;

use crate::pathograph::Pathograph;
use crate::realization::{DeterminationString, Symbol};

#[derive(Clone, Copy, Debug)]
pub struct RandomSpec {
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub min_urpaths: usize,
    pub max_urpaths: usize,
    pub edge_p: f64,
    pub spoke_p: f64,
    pub rung_p: f64,
}

impl RandomSpec {
    /// Hosts for the decision procedure: rungless.
    pub fn host(max_vertices: usize, max_urpaths: usize) -> RandomSpec {
        RandomSpec { min_vertices: 2, max_vertices, min_urpaths: 1, max_urpaths, edge_p: 0.4, spoke_p: 0.3, rung_p: 0.0 }
    }

    pub fn pattern(max_vertices: usize, max_urpaths: usize) -> RandomSpec {
        RandomSpec { min_vertices: 1, max_vertices, min_urpaths: 0, max_urpaths, edge_p: 0.4, spoke_p: 0.3, rung_p: 0.3 }
    }
}

/// A valid pathograph drawn from `spec`. Urpaths join distinct nonadjacent
/// vertices; spokes avoid urpath ends. When urpaths are required the edge
/// draw is repeated until a nonadjacent pair exists.
pub fn random_pathograph<R: Rng>(rng: &mut R, spec: &RandomSpec) -> Pathograph {
    let n = rng.gen_range(spec.min_vertices.max(if spec.min_urpaths > 0 { 2 } else { 0 })..=spec.max_vertices);
    let (mut p, pairs) = loop {
        let mut p = Pathograph::new();
        for i in 0..n {
            p.add_vertex(&format!("v{i}"));
        }
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(spec.edge_p) {
                    p.add_edge(a, b);
                }
            }
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| !p.has_edge(a, b)).collect();
        if spec.min_urpaths == 0 || !pairs.is_empty() {
            break (p, pairs);
        }
    };
    if !pairs.is_empty() {
        let k = rng.gen_range(spec.min_urpaths..=spec.max_urpaths);
        for i in 0..k {
            let (a, b) = pairs[rng.gen_range(0..pairs.len())];
            p.add_urpath(&format!("u{i}"), a, b);
        }
    }
    for u in 0..p.k() {
        for v in 0..n {
            if !p.urpaths[u].has_endpoint(v) && rng.gen_bool(spec.spoke_p) {
                p.add_spoke(v, u);
            }
        }
        for w in u + 1..p.k() {
            if spec.rung_p > 0.0 && rng.gen_bool(spec.rung_p) {
                p.add_rung(u, w);
            }
        }
    }
    debug_assert!(p.is_valid());
    p
}

/// A rungless host with at most 4 vertices and 2 urpaths, and a family of one
/// or two members. Each member is drawn from `pool` with probability 0.3 and
/// is otherwise a random pathograph with at most 4 vertices and 2 urpaths.
pub fn oracle_instance<R: Rng>(rng: &mut R, pool: &[Pathograph]) -> (Pathograph, Vec<Pathograph>) {
    let h = random_pathograph(rng, &RandomSpec::host(4, 2));
    let mut family = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        if !pool.is_empty() && rng.gen_bool(0.3) {
            family.push(pool[rng.gen_range(0..pool.len())].clone());
        } else {
            family.push(random_pathograph(rng, &RandomSpec::pattern(4, 2)));
        }
    }
    (h, family)
}

/// A well-formed determination string of the rungless `h` with 1 to
/// `max_internal` symbols per urpath. Each internal vertex sees each spoke
/// vertex with probability `p`; draws that leave a spoke unrealized are
/// repeated.
pub fn random_string<R: Rng>(rng: &mut R, h: &Pathograph, max_internal: usize, p: f64) -> DeterminationString {
    let mut out = Vec::new();
    for (i, u) in h.urpaths.iter().enumerate() {
        let spokes: Vec<usize> = (0..h.n()).filter(|&v| h.has_spoke(v, i)).collect();
        let m = rng.gen_range(1..=max_internal.max(1));
        loop {
            let mut syms: Vec<u128> = (0..m).map(|_| spokes.iter().filter(|_| rng.gen_bool(p)).fold(0, |s, &v| s | 1 << v)).collect();
            let covered = syms.iter().fold(0, |a, &s| a | s);
            if spokes.iter().all(|&v| covered >> v & 1 == 1) {
                syms[0] |= 1 << u.left;
                syms[m - 1] |= 1 << u.right;
                out.extend(syms.into_iter().map(|set| Symbol { index: i + 1, set }));
                break;
            }
        }
    }
    DeterminationString(out)
}
