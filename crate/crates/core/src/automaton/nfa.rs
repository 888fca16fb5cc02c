use std::collections::{BTreeSet, HashMap, VecDeque};

use super::alphabet::Alphabet;
use super::dfa::Dfa;
use crate::error::{Error, Result};

/// A set of symbols: those with the given index (0 for any index) whose
/// vertex set agrees with `value` on the bits of `care`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub index: usize,
    pub care: u128,
    pub value: u128,
}

impl Label {
    pub fn exact(index: usize, set: u128, n: usize) -> Label {
        Label { index, care: full(n), value: set }
    }

    pub fn any(index: usize) -> Label {
        Label { index, care: 0, value: 0 }
    }

    pub fn matches(&self, index: usize, set: u128) -> bool {
        (self.index == 0 || self.index == index) && set & self.care == self.value
    }
}

pub(crate) fn full(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

#[derive(Clone, Debug)]
pub struct Nfa {
    pub alphabet: Alphabet,
    pub names: Vec<String>,
    pub start: Vec<usize>,
    pub accept: Vec<bool>,
    pub eps: Vec<Vec<usize>>,
    pub edges: Vec<Vec<(Label, usize)>>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet) -> Nfa {
        Nfa { alphabet, names: Vec::new(), start: Vec::new(), accept: Vec::new(), eps: Vec::new(), edges: Vec::new() }
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.accept.push(false);
        self.eps.push(Vec::new());
        self.edges.push(Vec::new());
        self.names.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, label: Label, to: usize) {
        self.edges[from].push((label, to));
    }

    pub fn add_eps(&mut self, from: usize, to: usize) {
        self.eps[from].push(to);
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.eps.iter().map(Vec::len).sum::<usize>() + self.edges.iter().map(Vec::len).sum::<usize>()
    }

    pub fn state(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    pub fn closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for &t in &self.eps[s] {
                if set.insert(t) {
                    stack.push(t);
                }
            }
        }
    }

    fn step(&self, set: &BTreeSet<usize>, sym: usize) -> BTreeSet<usize> {
        let s = self.alphabet.symbol(sym);
        let mut out = BTreeSet::new();
        for &q in set {
            for &(l, t) in &self.edges[q] {
                if l.matches(s.index, s.set) {
                    out.insert(t);
                }
            }
        }
        self.closure(&mut out);
        out
    }

    /// Direct simulation over symbol ids.
    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut cur: BTreeSet<usize> = self.start.iter().copied().collect();
        self.closure(&mut cur);
        for &sym in word {
            cur = self.step(&cur, sym);
            if cur.is_empty() {
                return false;
            }
        }
        cur.iter().any(|&q| self.accept[q])
    }

    /// Disjoint union; the alphabets must agree.
    pub fn union(parts: &[Nfa]) -> Result<Nfa> {
        let first = parts.first().ok_or_else(|| Error::Invalid("union of no automata".into()))?;
        let mut out = Nfa::new(first.alphabet.clone());
        for (i, p) in parts.iter().enumerate() {
            if p.alphabet != out.alphabet {
                return Err(Error::AlphabetMismatch);
            }
            let base = out.num_states();
            for q in 0..p.num_states() {
                out.add_state(format!("{i}.{}", p.names[q]));
                out.accept[base + q] = p.accept[q];
            }
            for q in 0..p.num_states() {
                out.eps[base + q] = p.eps[q].iter().map(|t| t + base).collect();
                out.edges[base + q] = p.edges[q].iter().map(|&(l, t)| (l, t + base)).collect();
            }
            out.start.extend(p.start.iter().map(|s| s + base));
        }
        Ok(out)
    }

    /// Subset construction over the materialized alphabet.
    pub fn determinize(&self) -> Dfa {
        let m = self.alphabet.len();
        let mut init: BTreeSet<usize> = self.start.iter().copied().collect();
        self.closure(&mut init);
        let mut ids: HashMap<BTreeSet<usize>, u32> = HashMap::new();
        let mut order: Vec<BTreeSet<usize>> = Vec::new();
        let mut trans: Vec<u32> = Vec::new();
        ids.insert(init.clone(), 0);
        order.push(init);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let cur = order[i].clone();
            let mut row = Vec::with_capacity(m);
            for sym in 0..m {
                let next = self.step(&cur, sym);
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = order.len() as u32;
                        ids.insert(next.clone(), id);
                        order.push(next);
                        queue.push_back(id as usize);
                        id
                    }
                };
                row.push(id);
            }
            // States are popped in id order, so rows line up.
            trans.extend(row);
        }
        let accept = order.iter().map(|s| s.iter().any(|&q| self.accept[q])).collect();
        Dfa { alphabet: self.alphabet.clone(), trans, start: 0, accept }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_pgf;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn small_alphabet() -> Alphabet {
        Alphabet::of(&parse_pgf("vertices: a b\nurpath: u a b\n").unwrap()).unwrap()
    }

    fn random_nfa(rng: &mut ChaCha8Rng, al: &Alphabet) -> Nfa {
        let mut nfa = Nfa::new(al.clone());
        let n = rng.gen_range(1..6);
        for q in 0..n {
            nfa.add_state(format!("q{q}"));
            nfa.accept[q] = rng.gen_bool(0.3);
        }
        nfa.start.push(0);
        for _ in 0..rng.gen_range(0..12) {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if rng.gen_bool(0.2) {
                nfa.add_eps(a, b);
            } else {
                let care = rng.gen_range(0..4u128);
                let value = rng.gen_range(0..4u128) & care;
                nfa.add_edge(a, Label { index: rng.gen_range(0..2), care, value }, b);
            }
        }
        nfa
    }

    #[test]
    fn determinize_matches_simulation() {
        let al = small_alphabet();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let nfa = random_nfa(&mut rng, &al);
            let dfa = nfa.determinize();
            for _ in 0..30 {
                let len = rng.gen_range(0..6);
                let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..al.len())).collect();
                assert_eq!(nfa.accepts(&w), dfa.accepts(&w).unwrap(), "word {w:?}");
            }
        }
    }

    #[test]
    fn union_rejects_mismatch() {
        let a = Nfa::new(small_alphabet());
        let b = Nfa::new(Alphabet::of(&parse_pgf("vertices: a b c\nurpath: u a b\n").unwrap()).unwrap());
        assert_eq!(Nfa::union(&[a, b]).unwrap_err(), Error::AlphabetMismatch);
    }
}
