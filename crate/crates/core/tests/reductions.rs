use pathograph::reductions::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `s` = (N m, E g, S g, W m), `t` = (N g, E m, S g, W g) over colours g, m.
fn two_tiles() -> WangTileSet {
    parse_tiles("color: g m\ntile: s m g g m\ntile: t g m g g\n").unwrap().0
}

fn group<'a, G>(groups: &'a [Group<G>], label: &str) -> &'a Group<G> {
    groups.iter().find(|g| g.label == label).unwrap()
}

fn random_set<R: Rng>(rng: &mut R, max_tiles: usize) -> WangTileSet {
    loop {
        let n = rng.gen_range(1..=max_tiles);
        let tiles: Vec<WangTile> = (0..n)
            .map(|i| WangTile { name: format!("t{i}"), n: rng.gen_range(0..2), e: rng.gen_range(0..2), s: rng.gen_range(0..2), w: rng.gen_range(0..2) })
            .collect();
        if let Ok(set) = WangTileSet::new(vec!["g".into(), "m".into()], tiles) {
            return set;
        }
    }
}

/// A random patch, or half the time the 3x3 window of some tiling.
fn random_patch<R: Rng>(rng: &mut R, set: &WangTileSet) -> Patch {
    if rng.gen_bool(0.5) {
        if let Some(t) = search_periodic_tiling(set, 4, 4, None) {
            return Patch { cells: (1..=3).map(|i| (1..=3).map(|j| t.at(i, j)).collect()).collect() };
        }
    }
    Patch { cells: (0..3).map(|_| (0..3).map(|_| rng.gen_range(0..set.len())).collect()).collect() }
}

#[test]
fn tiling_search_examples() {
    let t = search_periodic_tiling(&WangTileSet::uniform(), 4, 4, None).unwrap();
    assert_eq!((t.a, t.b), (1, 1));
    // East sides are g, west sides m: no tile fits right of another.
    let set = parse_tiles("color: g m\ntile: a g g g m\ntile: b m g m m\n").unwrap().0;
    assert!(search_periodic_tiling(&set, 4, 4, None).is_none());
    let t = search_periodic_tiling(&WangTileSet::uniform(), 4, 4, Some(&Patch::uniform(0, 3))).unwrap();
    assert!(t.extends(&Patch::uniform(0, 3)));
}

#[test]
fn found_tilings_are_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let set = random_set(&mut rng, 3);
        let patch = random_patch(&mut rng, &set);
        if let Some(t) = search_periodic_tiling(&set, 4, 4, Some(&patch)) {
            t.check(&set).unwrap();
            assert!(t.extends(&patch));
        }
    }
}

#[test]
fn padding_is_neutral() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let set = random_set(&mut rng, 2);
        let patch = random_patch(&mut rng, &set);
        let plain = search_periodic_tiling(&set, 4, 4, Some(&patch));
        for k in [3, 5] {
            assert_eq!(search_periodic_tiling(&set.padded(k), 4, 4, Some(&patch)), plain);
        }
    }
}

#[test]
fn stage1_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let set = random_set(&mut rng, 3);
        let patch = random_patch(&mut rng, &set);
        let s1 = build_stage1(&set, &patch).unwrap();
        assert_eq!(s1.host.counts(), (6, 2, 13, 3, 1));
        assert!(s1.host.base.is_valid());
        let bad_h = (0..set.len()).flat_map(|s| (0..set.len()).map(move |t| (s, t))).filter(|&(s, t)| !set.fits_right(s, t)).count();
        let bad_v = (0..set.len()).flat_map(|s| (0..set.len()).map(move |t| (s, t))).filter(|&(s, t)| !set.fits_above(s, t)).count();
        assert_eq!(family_size(&s1.forbidden), (3 + set.len() + 2 + bad_h + bad_v) as u128);
    }
    let s1 = build_stage1(&WangTileSet::uniform(), &Patch::uniform(0, 3)).unwrap();
    let sizes: Vec<u128> = s1.forbidden.iter().map(|g| g.count).collect();
    assert_eq!(sizes, vec![1, 1, 1, 3, 0, 0]);
}

#[test]
fn two_tile_family() {
    let set = two_tiles();
    let s1 = build_stage1(&set, &Patch::uniform(0, 3)).unwrap();
    let sizes: Vec<(String, u128)> = s1.forbidden.iter().map(|g| (g.label.clone(), g.count)).collect();
    let want = [("1a", 1), ("1b", 1), ("1c", 1), ("1d", 4), ("2", 2), ("3", 2)];
    assert_eq!(sizes, want.iter().map(|(l, c)| (l.to_string(), *c)).collect::<Vec<_>>());
    // Vertical kind: r -> b1 coloured s with r -> b2 coloured s or t.
    let vert = group(&s1.forbidden, "3").members.as_ref().unwrap();
    let pairs: Vec<(usize, usize)> = vert.iter().map(|g| (g.arc_between(2, 0).unwrap().1, g.arc_between(2, 1).unwrap().1)).collect();
    assert_eq!(pairs, vec![(0, 0), (0, 1)]);
    let horiz = group(&s1.forbidden, "2").members.as_ref().unwrap();
    let pairs: Vec<(usize, usize)> = horiz.iter().map(|g| (g.arc_between(0, 2).unwrap().1, g.arc_between(1, 2).unwrap().1)).collect();
    assert_eq!(pairs, vec![(0, 0), (1, 1)]);
}

#[test]
fn uniform_witness_stage1() {
    let set = WangTileSet::uniform();
    let s1 = build_stage1(&set, &Patch::uniform(0, 3)).unwrap();
    let t = search_periodic_tiling(&set, 4, 4, Some(&s1.patch)).unwrap();
    let (w, r) = realize_stage1(&s1, &t).unwrap();
    assert_eq!(r.freeness, Freeness::Free);
    assert_eq!(w.graph.n(), 8);
    assert_eq!(w.graph.vertex_color.iter().filter(|&&c| c == s1.red()).count(), 4);
}

#[test]
fn broken_witness_is_caught() {
    let set = two_tiles();
    let s1 = build_stage1(&set, &Patch::uniform(0, 3)).unwrap();
    let bad = PeriodicTiling { a: 1, b: 1, cells: vec![vec![0]] };
    assert!(realize_stage1(&s1, &bad).is_err());
    let set = WangTileSet::uniform();
    let s1 = build_stage1(&set, &Patch::uniform(0, 3)).unwrap();
    let t = PeriodicTiling { a: 1, b: 1, cells: vec![vec![0]] };
    let mut w = stages::stage1_witness(&s1, &t).unwrap();
    w.graph.arcs.remove(&(0, 4));
    w.graph.base.edges.remove(&(0, 4));
    assert!(stages::verify_stage1(&s1, &w).freeness != Freeness::Free);
    let mut w = stages::stage1_witness(&s1, &t).unwrap();
    w.graph.arcs.insert((0, 4), (4, 0));
    assert!(!stages::verify_stage1(&s1, &w).passed());
}

/// Exhaustive search over first-step realizations with cycle lengths 4..=6
/// (one to three internal vertices per urpath). Each cycle is fixed and every
/// red-blue pair is left free (absent, or either direction in any colour);
/// partial graphs are cut as soon as a forbidden member appears among
/// decided pairs.
fn exhaustive_stage1(s1: &Stage1) -> bool {
    let ncol = s1.host.colors.len();
    for a in 4..=6 {
        for b in 4..=6 {
            let mut g = DiColored::new(s1.host.colors.clone());
            let x: Vec<usize> = (0..a).map(|i| g.add_vertex(&format!("x{}", i + 1), s1.red())).collect();
            let y: Vec<usize> = (0..b).map(|j| g.add_vertex(&format!("y{}", j + 1), s1.blue())).collect();
            for i in 0..a {
                g.add_arc(x[i], x[(i + 1) % a], s1.red());
            }
            for j in 0..b {
                g.add_arc(y[j], y[(j + 1) % b], s1.blue());
            }
            let pairs: Vec<(usize, usize)> = (0..a).flat_map(|i| (0..b).map(move |j| (i, j))).collect();
            let members: Vec<&DiColored> = s1.forbidden.iter().flat_map(|grp| grp.members.as_ref().unwrap()).collect();
            if extend(s1, &mut g, &x, &y, &pairs, 0, ncol, &members) {
                return true;
            }
        }
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn extend(s1: &Stage1, g: &mut DiColored, x: &[usize], y: &[usize], pairs: &[(usize, usize)], pos: usize, ncol: usize, members: &[&DiColored]) -> bool {
    if pos == pairs.len() {
        // Spokes from x1..x3 and the rung need an edge into the blue interior.
        let spokes = (0..3).all(|i| y[3..].iter().any(|&q| g.arc_between(x[i], q).is_some_and(|e| e.0)));
        let rung = x[3..].iter().any(|&p| y[3..].iter().any(|&q| g.arc_between(p, q).is_some_and(|e| e.0)));
        return spokes && rung;
    }
    let (i, j) = pairs[pos];
    let mut options: Vec<Option<(bool, usize)>> = vec![None];
    for c in 0..ncol {
        options.push(Some((true, c)));
        options.push(Some((false, c)));
    }
    if i < 3 && j < 3 {
        options = vec![Some((true, s1.patch.cells[i][j]))];
    }
    let decided = |p: usize, q: usize| -> bool {
        let (r, bl) = if p < x.len() { (p, q) } else { (q, p) };
        if (r < x.len()) == (bl < x.len()) {
            return true;
        }
        let k = r * y.len() + (bl - x.len());
        k <= pos
    };
    for opt in options {
        match opt {
            Some((fwd, c)) => {
                if fwd {
                    g.add_arc(x[i], y[j], c)
                } else {
                    g.add_arc(y[j], x[i], c)
                }
            }
            None => {}
        }
        let bad = members.iter().any(|m| hits(g, m, x[i], y[j], &decided));
        if !bad && extend(s1, g, x, y, pairs, pos + 1, ncol, members) {
            return true;
        }
        let key = (x[i].min(y[j]), x[i].max(y[j]));
        g.arcs.remove(&key);
        g.base.edges.remove(&key);
    }
    false
}

/// Whether `m` embeds in `g` as an induced copy using both `u` and `v`, with
/// every pair of the image decided.
fn hits(g: &DiColored, m: &DiColored, u: usize, v: usize, decided: &dyn Fn(usize, usize) -> bool) -> bool {
    let n = g.n();
    let k = m.n();
    let mut map = vec![0; k];
    fn go(g: &DiColored, m: &DiColored, map: &mut Vec<usize>, i: usize, n: usize, u: usize, v: usize, decided: &dyn Fn(usize, usize) -> bool) -> bool {
        if i == m.n() {
            let img = &map[..];
            return img.contains(&u) && img.contains(&v);
        }
        for t in 0..n {
            if map[..i].contains(&t) || g.vertex_color[t] != m.vertex_color[i] {
                continue;
            }
            if (0..i).all(|j| decided(map[j], t) && m.arc_between(j, i) == g.arc_between(map[j], t)) {
                map[i] = t;
                if go(g, m, map, i + 1, n, u, v, decided) {
                    return true;
                }
            }
        }
        false
    }
    go(g, m, &mut map, 0, n, u, v, decided)
}

#[test]
fn stage1_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut yes, mut no) = (0, 0);
    for trial in 0..40 {
        let set = random_set(&mut rng, 2);
        let patch = random_patch(&mut rng, &set);
        let s1 = build_stage1(&set, &patch).unwrap();
        let tiled = search_periodic_tiling(&set, 4, 4, Some(&patch));
        let exhaustive = exhaustive_stage1(&s1);
        match tiled {
            Some(t) => {
                realize_stage1(&s1, &t).unwrap();
                assert!(exhaustive, "trial {trial}: tiling found but no free realization");
                yes += 1;
            }
            None => {
                assert!(!exhaustive, "trial {trial}: no tiling but a free realization exists");
                no += 1;
            }
        }
    }
    assert!(yes > 0 && no > 0, "{yes} {no}");
}

/// Two red and two blue vertices with edges coloured t1, t1, t2, t3.
#[test]
fn second_step_gadgets() {
    let set = parse_tiles("color: g\ntile: t1 g g g g\n").unwrap().0.padded(3);
    let colors: Vec<String> = set.tiles.iter().map(|t| t.name.clone()).chain(["red".into(), "blue".into()]).collect();
    let (red, blue) = (3, 4);
    let mut g = DiColored::new(colors);
    let x1 = g.add_vertex("x1", red);
    let x2 = g.add_vertex("x2", red);
    let y1 = g.add_vertex("y1", blue);
    let y2 = g.add_vertex("y2", blue);
    g.add_arc(x1, x2, red);
    g.add_arc(y1, y2, blue);
    g.add_arc(x1, y1, 0);
    g.add_arc(x1, y2, 0);
    g.add_arc(x2, y1, 1);
    g.add_arc(x2, y2, 2);
    let t = translate(&g, 3, 3).unwrap();
    assert_eq!(t.n(), 12);
    // Vertices 0..5 are the red copies, 6..11 the blue ones.
    let mut non_edges = Vec::new();
    for a in 0..6 {
        for b in 6..12 {
            if !t.base.has_edge(a, b) {
                non_edges.push((a, b));
            }
        }
    }
    assert_eq!(non_edges, vec![(0, 6), (0, 9), (4, 7), (5, 11)]);
    for a in 0..5 {
        assert!(t.base.has_edge(a, a + 1) && t.base.has_edge(a + 6, a + 7));
    }
    assert_eq!(t.color, vec![1, 2, 3, 1, 2, 3, -1, -2, -3, -1, -2, -3]);
}

#[test]
fn stage2_counts_and_witness() {
    for set in [WangTileSet::uniform(), two_tiles()] {
        let s1 = build_stage1(&set, &Patch::uniform(0, 3)).unwrap();
        let s2 = build_stage2(&s1).unwrap();
        let k = s2.k;
        assert_eq!(k, 3);
        assert_eq!(s2.host.n(), 6 * k);
        assert!(s2.host.base.is_valid());
        assert_eq!(group(&s2.forbidden, "1").count, (1u128 << (k * k)) - k as u128);
        assert_eq!(group(&s2.forbidden, "8").count, (k * (k - 1)) as u128);
        for l in ["4", "5"] {
            assert_eq!(group(&s2.forbidden, l).count, (k * (k - 1) / 2) as u128);
        }
        for l in ["6", "7"] {
            assert_eq!(group(&s2.forbidden, l).count, k as u128);
        }
        for l in ["2", "3"] {
            let src = group(&s2.stage1.forbidden, l);
            let g = group(&s2.forbidden, l);
            assert_eq!(g.count, src.count);
            assert!(g.members.as_ref().unwrap().iter().all(|m| m.n() == 3 * k));
        }
    }
    let set = WangTileSet::uniform();
    let s2 = build_stage2(&build_stage1(&set, &Patch::uniform(0, 3)).unwrap()).unwrap();
    let t = search_periodic_tiling(&set, 4, 4, Some(&s2.stage1.patch)).unwrap();
    let (w, r) = realize_stage2(&s2, &t).unwrap();
    assert_eq!(w.graph.n(), 8 * s2.k);
    assert!(r.passed());
}

#[test]
fn stage3_counts_and_witness() {
    for set in [WangTileSet::uniform(), two_tiles()] {
        let s1 = build_stage1(&set, &Patch::uniform(0, 3)).unwrap();
        let s3 = build_stage3(&build_stage2(&s1).unwrap()).unwrap();
        let k = s3.k;
        assert_eq!(k, 9);
        assert_eq!(s3.host.n(), 11 * k);
        assert!(s3.host.is_valid());
        let n2 = s3.stage2.host.n();
        let selector_spokes = s3.host.spokes.iter().filter(|&&(v, _)| v >= n2 + 3 * k).count();
        assert_eq!(selector_spokes, 4 * k);
        assert_eq!(s3.host.spokes.len(), s3.stage2.host.base.spokes.len() + 4 * k);
        assert_eq!(group(&s3.forbidden, "1").count, (1u128 << 81) - 9);
        assert!(group(&s3.forbidden, "1").members.is_none());
        let nine = group(&s3.forbidden, "9");
        assert_eq!(nine.count, (2 * k * (2 * k - 1) / 2) as u128);
        let m = &nine.members.as_ref().unwrap()[0];
        assert_eq!(m.n(), 3 * k + 3);
        let v = m.n() - 1;
        assert_eq!(m.neighbors(v), vec![3 * k, 3 * k + 1]);
        assert_eq!(group(&s3.forbidden, "10").count, (2 * k) as u128);
    }
    let set = WangTileSet::uniform();
    let s3 = build_stage3(&build_stage2(&build_stage1(&set, &Patch::uniform(0, 3)).unwrap()).unwrap()).unwrap();
    let t = search_periodic_tiling(&set, 4, 4, Some(&s3.stage2.stage1.patch)).unwrap();
    let (w, r) = realize_stage3(&s3, &t).unwrap();
    assert_eq!(w.graph.n(), 8 * s3.k + 5 * s3.k);
    assert!(matches!(r.freeness, Freeness::Skipped(_)));
}
