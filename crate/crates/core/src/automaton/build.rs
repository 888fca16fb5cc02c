//! Well-formedness automata and the decision machine `M`.

use std::collections::{HashMap, HashSet, VecDeque};

use super::alphabet::Alphabet;
use super::dfa::Dfa;
use super::machine::{determinize, meets, ShapeMachine};
use super::nfa::{full, Label, Nfa};
use super::partial::{enumerate_partial_inclusions, PartialInclusion};
use super::shape::{shapes_for, Shape};
use crate::error::Result;
use crate::pathograph::Pathograph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Wf {
    Start,
    /// Reading index `i` (0-based); whether the last symbol held the right
    /// end; spoke vertices seen so far.
    In { i: usize, right: bool, seen: u128 },
    Dead,
}

/// Accepts exactly the well-formed strings over `h`.
pub fn build_wellformed(h: &Pathograph) -> Result<Dfa> {
    let al = Alphabet::of(h)?;
    let k = h.k();
    let ends: Vec<(u128, u128)> = h.urpaths.iter().map(|u| (1u128 << u.left, 1u128 << u.right)).collect();
    let spokes: Vec<u128> = (0..k).map(|u| (0..h.n()).filter(|&v| h.has_spoke(v, u)).fold(0, |m, v| m | 1 << v)).collect();
    let enter = |i: usize, set: u128| -> Wf {
        let (a, b) = ends[i];
        if set & a == 0 || set & !(a | b | spokes[i]) != 0 {
            Wf::Dead
        } else {
            Wf::In { i, right: set & b != 0, seen: set & spokes[i] }
        }
    };
    let delta = |w: Wf, index: usize, set: u128| -> Wf {
        match w {
            Wf::Dead => Wf::Dead,
            Wf::Start => {
                if index == 1 {
                    enter(0, set)
                } else {
                    Wf::Dead
                }
            }
            Wf::In { i, right, seen } => {
                let (a, b) = ends[i];
                if index == i + 1 {
                    if right || set & a != 0 || set & !(b | spokes[i]) != 0 {
                        Wf::Dead
                    } else {
                        Wf::In { i, right: set & b != 0, seen: seen | set & spokes[i] }
                    }
                } else if index == i + 2 && right && seen == spokes[i] {
                    enter(i + 1, set)
                } else {
                    Wf::Dead
                }
            }
        }
    };
    let accepting = |w: Wf| match w {
        Wf::Start => k == 0,
        Wf::In { i, right, seen } => i + 1 == k && right && seen == spokes[i],
        Wf::Dead => false,
    };
    let syms = al.symbols();
    let mut ids: HashMap<Wf, u32> = HashMap::from([(Wf::Start, 0)]);
    let mut order = vec![Wf::Start];
    let mut trans = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for s in &syms {
            let w = delta(order[i], s.index, s.set);
            let id = *ids.entry(w).or_insert_with(|| {
                order.push(w);
                queue.push_back(order.len() - 1);
                (order.len() - 1) as u32
            });
            trans.push(id);
        }
    }
    let accept = order.iter().map(|&w| accepting(w)).collect();
    Ok(Dfa { alphabet: al, trans, start: 0, accept })
}

/// The ill-formed strings: the complement of [`build_wellformed`].
pub fn build_illformed(h: &Pathograph) -> Result<Nfa> {
    Ok(dfa_to_nfa(&build_wellformed(h)?.complement()))
}

pub fn dfa_to_nfa(d: &Dfa) -> Nfa {
    let n = d.alphabet.n();
    let mut nfa = Nfa::new(d.alphabet.clone());
    for q in 0..d.num_states() {
        nfa.add_state(format!("S{q}"));
        nfa.accept[q] = d.accept[q];
    }
    nfa.start.push(d.start as usize);
    for q in 0..d.num_states() {
        for s in 0..d.alphabet.len() {
            let sym = d.alphabet.symbol(s);
            nfa.add_edge(q, Label { index: sym.index, care: full(n), value: sym.set }, d.next(q as u32, s) as usize);
        }
    }
    nfa
}

/// Every shape of every member of the family.
pub fn family_shapes(h: &Pathograph, family: &[Pathograph]) -> Vec<Shape> {
    let mut out = Vec::new();
    for (i, f) in family.iter().enumerate() {
        for phi in enumerate_partial_inclusions(f, h) {
            out.extend(shapes_for(f, h, i, &phi));
        }
    }
    out
}

/// Deterministic `M_phi` built from the shapes of one partial inclusion.
pub fn mphi_dfa(phi: &PartialInclusion, f: &Pathograph, h: &Pathograph) -> Result<Dfa> {
    let al = Alphabet::of(h)?;
    Ok(determinize(&al, &ShapeMachine::new(shapes_for(f, h, 0, phi)), None))
}

/// Shapes of the family with duplicate signatures removed.
pub fn distinct_shapes(h: &Pathograph, family: &[Pathograph]) -> Vec<Shape> {
    let mut seen = HashSet::new();
    family_shapes(h, family).into_iter().filter(|s| seen.insert(s.signature())).collect()
}

/// The minimal automaton accepting exactly the determination strings of the
/// `family`-free realizations of `h`.
///
/// Starts from the well-formed strings and removes the strings matched by
/// each shape in turn, simplest shapes first. A shape that matches no string
/// still free is skipped; otherwise it is determinized against the strings
/// still free, so strings already removed are never explored again.
pub fn build_decision_dfa(h: &Pathograph, family: &[Pathograph]) -> Result<Dfa> {
    let al = Alphabet::of(h)?;
    let mut shapes = distinct_shapes(h, family);
    shapes.sort_by_key(|s| (s.comps.len(), s.open, s.comps.iter().map(|c| c[0].len()).sum::<usize>()));
    let mut free = build_wellformed(h)?.minimize();
    for s in shapes {
        if free.is_empty() {
            break;
        }
        let m = ShapeMachine::new(vec![s]);
        if meets(&al, &m, &free) {
            free = determinize(&al, &m, Some(&free)).minimize();
        }
    }
    Ok(free)
}
