//! The union of shape machines, run as an implicit nondeterministic
//! automaton and determinized on the fly.
//!
//! A shape machine reads a string while guessing where each component sits.
//! Its state records the components already found, the obligations already
//! discharged, and the position inside the component being read. Once every
//! component is found and every obligation discharged the inclusion exists,
//! whatever follows, so the machine moves to an absorbing accepting state.

use std::collections::{HashMap, HashSet, VecDeque};

use super::alphabet::Alphabet;
use super::dfa::Dfa;
use super::shape::{ObjPat, Role, Shape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Phase {
    Idle,
    /// Just finished variant `v` of component `c` on index `k`.
    After { k: u8, c: u8, v: u8 },
    /// Object `j` of the variant must start with the next symbol.
    Next { k: u8, c: u8, v: u8, j: u8 },
    /// Inside connector `j` of the variant.
    Conn { k: u8, c: u8, v: u8, j: u8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MState {
    pub shape: u32,
    pub phase: Phase,
    pub found: u32,
    pub sat: u64,
}

/// The absorbing state reached once some shape is fully matched.
pub const DONE: MState = MState { shape: u32::MAX, phase: Phase::Idle, found: 0, sat: 0 };

pub struct ShapeMachine {
    pub shapes: Vec<Shape>,
}

/// Outcome of one symbol read by an object: discharged obligations, whether
/// the object may end here, whether it may continue.
struct Read {
    sat: u64,
    done: bool,
    cont: bool,
}

fn read(p: &ObjPat, set: u128, first: bool) -> Option<Read> {
    if set & p.forbid != 0 {
        return None;
    }
    let sat = p.ors.iter().filter(|(m, _)| set & m != 0).fold(0u64, |s, &(_, t)| s | 1 << t);
    if p.sought {
        return (set & p.must == p.must).then_some(Read { sat, done: true, cont: false });
    }
    if let Some(a) = p.first {
        if (set >> a & 1 == 1) != first {
            return None;
        }
    }
    Some(match p.last {
        Some(b) if set >> b & 1 == 1 => Read { sat, done: true, cont: false },
        Some(_) => Read { sat, done: false, cont: true },
        None => Read { sat, done: true, cont: true },
    })
}

impl ShapeMachine {
    pub fn new(shapes: Vec<Shape>) -> ShapeMachine {
        ShapeMachine { shapes }
    }

    fn complete(&self, sh: &Shape, found: u32, sat: u64) -> bool {
        found == full32(sh.comps.len()) && sat == full64(sh.open)
    }

    pub fn initial(&self) -> Vec<MState> {
        let mut out = Vec::new();
        for (i, sh) in self.shapes.iter().enumerate() {
            if self.complete(sh, 0, 0) {
                return vec![DONE];
            }
            out.push(MState { shape: i as u32, phase: Phase::Idle, found: 0, sat: 0 });
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn feed(&self, st: MState, sh: &Shape, k: u8, c: u8, v: u8, j: u8, set: u128, first: bool, extra: u64, out: &mut Vec<MState>) {
        let var = &sh.comps[c as usize][v as usize];
        let Some(r) = read(&var[j as usize], set, first) else { return };
        let sat = st.sat | r.sat | extra;
        if r.cont {
            out.push(MState { phase: Phase::Conn { k, c, v, j }, sat, ..st });
        }
        if r.done {
            if (j as usize) + 1 < var.len() {
                out.push(MState { phase: Phase::Next { k, c, v, j: j + 1 }, sat, ..st });
            } else {
                let found = st.found | 1 << c;
                if self.complete(sh, found, sat) {
                    out.push(DONE);
                } else {
                    out.push(MState { phase: Phase::After { k, c, v }, found, sat, ..st });
                }
            }
        }
    }

    /// Successors of `st` on the symbol `(index, set)`.
    pub fn step(&self, st: MState, index: usize, set: u128, out: &mut Vec<MState>) {
        if st == DONE {
            out.push(DONE);
            return;
        }
        let sh = &self.shapes[st.shape as usize];
        let k = index as u8;
        let start_any = |tail: Option<usize>, out: &mut Vec<MState>| {
            out.push(MState { phase: Phase::Idle, ..st });
            for c in 0..sh.comps.len() {
                if st.found >> c & 1 == 1 {
                    continue;
                }
                for (v, var) in sh.comps[c].iter().enumerate() {
                    let extra = match tail.map(|t| sh.tt[t][var[0].object]) {
                        None | Some(Role::Free) => 0,
                        Some(Role::Fixed(false)) => continue,
                        Some(Role::Term(t)) => 1u64 << t,
                        Some(Role::Fixed(true)) => unreachable!("forced pairs share a component"),
                    };
                    self.feed(st, sh, k, c as u8, v as u8, 0, set, true, extra, out);
                }
            }
        };
        match st.phase {
            Phase::Idle => start_any(None, out),
            Phase::After { k: pk, c, v } => {
                if pk == k {
                    let var = &sh.comps[c as usize][v as usize];
                    start_any(Some(var.last().unwrap().object), out);
                } else {
                    start_any(None, out);
                }
            }
            Phase::Next { k: pk, c, v, j } => {
                if pk == k {
                    self.feed(st, sh, k, c, v, j, set, true, 0, out);
                }
            }
            Phase::Conn { k: pk, c, v, j } => {
                if pk == k {
                    self.feed(st, sh, k, c, v, j, set, false, 0, out);
                }
            }
        }
    }
}

impl ShapeMachine {
    /// Whether some shape matches the word, by direct simulation.
    pub fn matches(&self, al: &Alphabet, word: &[usize]) -> bool {
        let mut cur = self.initial();
        normalize(&mut cur);
        for &id in word {
            let sym = al.symbol(id);
            let mut next = Vec::new();
            for &st in &cur {
                self.step(st, sym.index, sym.set, &mut next);
            }
            normalize(&mut next);
            cur = next;
        }
        cur.first() == Some(&DONE)
    }
}

fn full32(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn full64(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Sorts, dedups, and drops states dominated by another state of the same
/// shape, phase and found components with a superset of obligations
/// discharged. Collapses to `[DONE]` when present.
///
/// Found sets must be equal: a found component cannot be matched again, so
/// finding more components earlier can lose obligations a later match of the
/// same component would discharge.
pub fn normalize(states: &mut Vec<MState>) {
    if states.contains(&DONE) {
        states.clear();
        states.push(DONE);
        return;
    }
    states.sort_unstable();
    states.dedup();
    let mut keep = vec![true; states.len()];
    let mut i = 0;
    while i < states.len() {
        let mut j = i;
        while j < states.len() && (states[j].shape, states[j].phase, states[j].found) == (states[i].shape, states[i].phase, states[i].found) {
            j += 1;
        }
        if j - i > 1 {
            for a in i..j {
                for b in i..j {
                    if a != b && keep[b] {
                        let (x, y) = (&states[a], &states[b]);
                        if x.sat & !y.sat == 0 {
                            keep[a] = false;
                            break;
                        }
                    }
                }
            }
        }
        i = j;
    }
    let mut it = keep.iter();
    states.retain(|_| *it.next().unwrap());
}

/// Determinizes the shape union, optionally intersected with the complement
/// of the union and with a well-formedness automaton.
///
/// With `wf = None` the result accepts the strings matched by some shape.
/// With `wf = Some(d)` it accepts the strings accepted by `d` that no shape
/// matches.
pub fn determinize(al: &Alphabet, m: &ShapeMachine, wf: Option<&Dfa>) -> Dfa {
    let sigma = al.len();
    let syms = al.symbols();
    let dead_wf = wf.map(|d| {
        (0..d.num_states())
            .map(|q| !d.accept[q] && (0..sigma).all(|s| d.next(q as u32, s) == q as u32))
            .collect::<Vec<bool>>()
    });
    // Key: (well-formedness state, shape states); the empty-set key with
    // u32::MAX is the rejecting sink.
    type Key = (u32, Vec<MState>);
    let sink: Key = (u32::MAX, Vec::new());
    let canon = |q: u32, mut s: Vec<MState>| -> Key {
        normalize(&mut s);
        match (wf, &dead_wf) {
            (Some(_), Some(dead)) => {
                if dead[q as usize] || s.first() == Some(&DONE) {
                    (u32::MAX, Vec::new())
                } else {
                    (q, s)
                }
            }
            _ => (0, s),
        }
    };
    let init = canon(wf.map_or(0, |d| d.start), m.initial());
    let mut ids: HashMap<Key, u32> = HashMap::new();
    let mut order: Vec<Key> = Vec::new();
    ids.insert(init.clone(), 0);
    order.push(init);
    let mut trans: Vec<u32> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    let mut buf = Vec::new();
    while let Some(i) = queue.pop_front() {
        let (q, cur) = order[i].clone();
        for (s, sym) in syms.iter().enumerate() {
            let key = if order[i] == sink {
                sink.clone()
            } else {
                buf.clear();
                for &st in &cur {
                    m.step(st, sym.index, sym.set, &mut buf);
                }
                let nq = wf.map_or(0, |d| d.next(q, s));
                canon(nq, buf.clone())
            };
            let id = match ids.get(&key) {
                Some(&id) => id,
                None => {
                    let id = order.len() as u32;
                    ids.insert(key.clone(), id);
                    order.push(key);
                    queue.push_back(id as usize);
                    id
                }
            };
            trans.push(id);
        }
    }
    let accept = order
        .iter()
        .map(|(q, s)| match wf {
            None => s.first() == Some(&DONE),
            Some(d) => *q != u32::MAX && d.accept[*q as usize] && s.first() != Some(&DONE),
        })
        .collect();
    Dfa { alphabet: al.clone(), trans, start: 0, accept }
}

/// Whether some string accepted by `d` is matched by a shape of `m`. Runs
/// on pairs of single states, without subset construction.
pub fn meets(al: &Alphabet, m: &ShapeMachine, d: &Dfa) -> bool {
    let live = d.live_states();
    let syms = al.symbols();
    let mut seen: HashSet<(u32, MState)> = HashSet::new();
    let mut stack = Vec::new();
    if live[d.start as usize] {
        for st in m.initial() {
            if seen.insert((d.start, st)) {
                stack.push((d.start, st));
            }
        }
    }
    let mut buf = Vec::new();
    while let Some((q, st)) = stack.pop() {
        if st == DONE {
            return true;
        }
        for (s, sym) in syms.iter().enumerate() {
            let nq = d.next(q, s);
            if !live[nq as usize] {
                continue;
            }
            buf.clear();
            m.step(st, sym.index, sym.set, &mut buf);
            for &nst in &buf {
                if seen.insert((nq, nst)) {
                    stack.push((nq, nst));
                }
            }
        }
    }
    false
}
