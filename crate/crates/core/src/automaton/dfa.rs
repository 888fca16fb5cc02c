use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use super::alphabet::Alphabet;
use crate::error::{Error, Result};

/// A complete deterministic automaton; `trans[state * |alphabet| + symbol]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub alphabet: Alphabet,
    pub trans: Vec<u32>,
    pub start: u32,
    pub accept: Vec<bool>,
}

impl Dfa {
    pub fn num_states(&self) -> usize {
        self.accept.len()
    }

    pub fn next(&self, state: u32, sym: usize) -> u32 {
        self.trans[state as usize * self.alphabet.len() + sym]
    }

    fn check_word(&self, word: &[usize]) -> Result<()> {
        match word.iter().find(|&&s| s >= self.alphabet.len()) {
            Some(&s) => Err(Error::UnknownSymbol(format!("#{s}"))),
            None => Ok(()),
        }
    }

    /// One left-to-right pass; returns the verdict and the number of
    /// transitions taken.
    pub fn run(&self, word: &[usize]) -> Result<(bool, usize)> {
        self.check_word(word)?;
        let mut q = self.start;
        let mut steps = 0;
        for &s in word {
            q = self.next(q, s);
            steps += 1;
        }
        Ok((self.accept[q as usize], steps))
    }

    pub fn accepts(&self, word: &[usize]) -> Result<bool> {
        self.run(word).map(|r| r.0)
    }

    pub fn complement(&self) -> Dfa {
        let mut d = self.clone();
        d.accept.iter_mut().for_each(|a| *a = !*a);
        d
    }

    /// Shortest accepted word, least in symbol order among the shortest.
    pub fn shortest_accepted(&self) -> Option<Vec<usize>> {
        let m = self.alphabet.len();
        let mut parent: Vec<Option<(u32, usize)>> = vec![None; self.num_states()];
        let mut seen = vec![false; self.num_states()];
        seen[self.start as usize] = true;
        let mut queue = VecDeque::from([self.start]);
        while let Some(q) = queue.pop_front() {
            if self.accept[q as usize] {
                let mut word = Vec::new();
                let mut cur = q;
                while let Some((p, s)) = parent[cur as usize] {
                    word.push(s);
                    cur = p;
                }
                word.reverse();
                return Some(word);
            }
            for s in 0..m {
                let t = self.next(q, s);
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    parent[t as usize] = Some((q, s));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_accepted().is_none()
    }

    /// States from which some accepting state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let sigma = self.alphabet.len();
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); self.num_states()];
        for q in 0..self.num_states() {
            for s in 0..sigma {
                rev[self.next(q as u32, s) as usize].push(q as u32);
            }
        }
        let mut live = self.accept.clone();
        let mut stack: Vec<u32> = (0..self.num_states() as u32).filter(|&q| live[q as usize]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q as usize] {
                if !live[p as usize] {
                    live[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    /// Product automaton; `op` combines acceptance.
    pub fn product(&self, other: &Dfa, op: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let m = self.alphabet.len();
        let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
        let mut pairs = vec![(self.start, other.start)];
        ids.insert(pairs[0], 0);
        let mut trans = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (a, b) = pairs[i];
            for s in 0..m {
                let p = (self.next(a, s), other.next(b, s));
                let id = *ids.entry(p).or_insert_with(|| {
                    pairs.push(p);
                    (pairs.len() - 1) as u32
                });
                trans.push(id);
            }
            i += 1;
        }
        let accept = pairs.iter().map(|&(a, b)| op(self.accept[a as usize], other.accept[b as usize])).collect();
        Ok(Dfa { alphabet: self.alphabet.clone(), trans, start: 0, accept })
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && b)
    }

    /// `None` when the languages agree, otherwise a shortest word in their
    /// symmetric difference.
    pub fn difference_witness(&self, other: &Dfa) -> Result<Option<Vec<usize>>> {
        Ok(self.product(other, |a, b| a != b)?.shortest_accepted())
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        Ok(self.difference_witness(other)?.is_none())
    }

    /// Minimal equivalent automaton, states numbered in breadth-first order
    /// from the start.
    pub fn minimize(&self) -> Dfa {
        let m = self.alphabet.len();
        // Reachable part first.
        let mut reach = vec![u32::MAX; self.num_states()];
        let mut order = vec![self.start];
        reach[self.start as usize] = 0;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for s in 0..m {
                let t = self.next(q, s);
                if reach[t as usize] == u32::MAX {
                    reach[t as usize] = order.len() as u32;
                    order.push(t);
                }
            }
            i += 1;
        }
        // Moore refinement on signatures.
        let n = order.len();
        let mut class: Vec<u32> = order.iter().map(|&q| self.accept[q as usize] as u32).collect();
        let mut count = class.iter().collect::<std::collections::HashSet<_>>().len();
        loop {
            let mut sigs: HashMap<Vec<u32>, u32> = HashMap::new();
            let mut next = Vec::with_capacity(n);
            for (idx, &q) in order.iter().enumerate() {
                let mut sig = Vec::with_capacity(m + 1);
                sig.push(class[idx]);
                for s in 0..m {
                    sig.push(class[reach[self.next(q, s) as usize] as usize]);
                }
                let len = sigs.len() as u32;
                next.push(*sigs.entry(sig).or_insert(len));
            }
            let c = sigs.len();
            class = next;
            if c == count {
                break;
            }
            count = c;
        }
        // Canonical renumbering by breadth-first search over classes.
        let mut rep = vec![usize::MAX; count];
        for idx in 0..n {
            if rep[class[idx] as usize] == usize::MAX {
                rep[class[idx] as usize] = idx;
            }
        }
        let mut newid = vec![u32::MAX; count];
        let mut queue = vec![class[0]];
        newid[class[0] as usize] = 0;
        let mut trans = Vec::with_capacity(count * m);
        let mut accept = Vec::with_capacity(count);
        let mut i = 0;
        while i < queue.len() {
            let c = queue[i];
            let q = order[rep[c as usize]];
            accept.push(self.accept[q as usize]);
            for s in 0..m {
                let tc = class[reach[self.next(q, s) as usize] as usize];
                if newid[tc as usize] == u32::MAX {
                    newid[tc as usize] = queue.len() as u32;
                    queue.push(tc);
                }
                trans.push(newid[tc as usize]);
            }
            i += 1;
        }
        Dfa { alphabet: self.alphabet.clone(), trans, start: 0, accept }
    }

    /// A regular expression for the language when every cycle through live
    /// reachable states is a self-loop, `None` otherwise or when the
    /// language is empty. Expressions longer than `max_len` are refused.
    pub fn to_regex(&self, max_len: usize) -> Option<String> {
        let m = self.alphabet.len();
        let live = self.live_states();
        if !live[self.start as usize] {
            return None;
        }
        let n = self.num_states();
        // Out-edges between live states, symbols grouped per target.
        let mut out: Vec<BTreeMap<u32, Vec<usize>>> = vec![BTreeMap::new(); n];
        for q in 0..n {
            if !live[q] {
                continue;
            }
            for s in 0..m {
                let t = self.next(q as u32, s);
                if live[t as usize] {
                    out[q].entry(t).or_default().push(s);
                }
            }
        }
        // 0 unvisited, 1 on stack, 2 done.
        fn visit(q: u32, out: &[BTreeMap<u32, Vec<usize>>], mark: &mut [u8], order: &mut Vec<u32>) -> bool {
            mark[q as usize] = 1;
            for &t in out[q as usize].keys() {
                if t == q {
                    continue;
                }
                let m = mark[t as usize];
                if m == 1 || (m == 0 && !visit(t, out, mark, order)) {
                    return false;
                }
            }
            mark[q as usize] = 2;
            order.push(q);
            true
        }
        let mut mark = vec![0u8; n];
        let mut order = Vec::new();
        if !visit(self.start, &out, &mut mark, &mut order) {
            return None;
        }
        let label = |syms: &[usize]| -> String {
            let toks: Vec<String> = syms.iter().map(|&s| self.alphabet.format(s)).collect();
            if toks.len() == 1 {
                toks[0].clone()
            } else {
                format!("({})", toks.join("|"))
            }
        };
        // Targets come before sources in `order`.
        let mut expr: Vec<String> = vec![String::new(); n];
        for &q in &order {
            let mut alts = Vec::new();
            if self.accept[q as usize] {
                alts.push("()".to_string());
            }
            for (&t, syms) in &out[q as usize] {
                if t != q {
                    let rest = &expr[t as usize];
                    alts.push(if rest == "()" { label(syms) } else { format!("{} {}", label(syms), rest) });
                }
            }
            let body = if alts.len() == 1 { alts.pop().unwrap() } else { format!("({})", alts.join("|")) };
            let e = match out[q as usize].get(&q) {
                Some(syms) if body == "()" => format!("{}*", label(syms)),
                Some(syms) => format!("{}* {}", label(syms), body),
                None => body,
            };
            if e.len() > max_len {
                return None;
            }
            expr[q as usize] = e;
        }
        Some(expr[self.start as usize].clone())
    }

    /// Text form: `alphabet:`, `start:`, `accept:` and one `trans:` line per
    /// transition.
    pub fn to_text(&self) -> String {
        let al = &self.alphabet;
        let mut out = String::new();
        let syms: Vec<String> = (0..al.len()).map(|s| al.format(s)).collect();
        let _ = writeln!(out, "alphabet: {}", syms.join(" "));
        let _ = writeln!(out, "start: S{}", self.start);
        let acc: Vec<String> = (0..self.num_states()).filter(|&q| self.accept[q]).map(|q| format!("S{q}")).collect();
        let _ = writeln!(out, "accept: {}", acc.join(" "));
        for q in 0..self.num_states() {
            for (s, sym) in syms.iter().enumerate() {
                let _ = writeln!(out, "trans: S{q} {sym} S{}", self.next(q as u32, s));
            }
        }
        out
    }

    /// Reads the text form back over a known alphabet.
    pub fn from_text(alphabet: &Alphabet, text: &str) -> Result<Dfa> {
        let m = alphabet.len();
        let mut start = None;
        let mut accepting = Vec::new();
        let mut edges = Vec::new();
        let state = |tok: &str, line: usize| -> Result<usize> {
            tok.strip_prefix('S')
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse { line, msg: format!("bad state `{tok}`") })
        };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let raw = raw.trim();
            if raw.is_empty() || raw.starts_with('#') {
                continue;
            }
            let (key, rest) = raw.split_once(':').ok_or_else(|| Error::Parse { line, msg: "missing `:`".into() })?;
            let toks: Vec<&str> = rest.split_whitespace().collect();
            match key.trim() {
                "alphabet" => {
                    let ids = toks.iter().map(|t| alphabet.parse_token(t)).collect::<Result<Vec<_>>>()?;
                    if ids != (0..m).collect::<Vec<_>>() {
                        return Err(Error::AlphabetMismatch);
                    }
                }
                "start" => start = Some(state(toks.first().copied().unwrap_or(""), line)?),
                "accept" => {
                    for t in toks {
                        accepting.push(state(t, line)?);
                    }
                }
                "trans" => {
                    if toks.len() != 3 {
                        return Err(Error::Parse { line, msg: "expected `trans: S<i> <symbol> S<j>`".into() });
                    }
                    edges.push((state(toks[0], line)?, alphabet.parse_token(toks[1])?, state(toks[2], line)?));
                }
                other => return Err(Error::Parse { line, msg: format!("unknown key `{other}`") }),
            }
        }
        let start = start.ok_or_else(|| Error::Parse { line: 0, msg: "missing start".into() })?;
        let n = edges.iter().map(|e| e.0.max(e.2) + 1).chain(accepting.iter().map(|a| a + 1)).chain([start + 1]).max().unwrap();
        let mut trans = vec![u32::MAX; n * m];
        for (a, s, b) in edges {
            trans[a * m + s] = b as u32;
        }
        if trans.contains(&u32::MAX) {
            return Err(Error::Parse { line: 0, msg: "transition table is not total".into() });
        }
        let mut accept = vec![false; n];
        for a in accepting {
            accept[a] = true;
        }
        Ok(Dfa { alphabet: alphabet.clone(), trans, start: start as u32, accept })
    }
}

#[cfg(test)]
mod tests {
    use super::super::nfa::{Label, Nfa};
    use super::*;
    use crate::format::parse_pgf;

    fn al() -> Alphabet {
        Alphabet::of(&parse_pgf("vertices: a b\nurpath: u a b\n").unwrap()).unwrap()
    }

    /// Words over the 4-symbol alphabet containing symbol 3.
    fn contains_three() -> Dfa {
        let mut nfa = Nfa::new(al());
        let s = nfa.add_state("s");
        let t = nfa.add_state("t");
        nfa.start.push(s);
        nfa.accept[t] = true;
        nfa.add_edge(s, Label::any(0), s);
        nfa.add_edge(s, Label::exact(1, 3, 2), t);
        nfa.add_edge(t, Label::any(0), t);
        nfa.determinize()
    }

    #[test]
    fn double_complement() {
        let d = contains_three();
        assert!(d.complement().complement().equivalent(&d).unwrap());
        assert!(!d.complement().equivalent(&d).unwrap());
    }

    #[test]
    fn minimize_and_witness() {
        let d = contains_three().minimize();
        assert_eq!(d.num_states(), 2);
        assert_eq!(d.shortest_accepted(), Some(vec![3]));
        assert_eq!(d.complement().shortest_accepted(), Some(vec![]));
        let w = d.difference_witness(&d.complement()).unwrap();
        assert_eq!(w, Some(vec![]));
    }

    #[test]
    fn run_counts_transitions() {
        let d = contains_three();
        assert_eq!(d.run(&[0, 1, 3, 2]).unwrap(), (true, 4));
        assert!(d.run(&[4]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let d = contains_three().minimize();
        assert_eq!(Dfa::from_text(&d.alphabet, &d.to_text()).unwrap(), d);
    }
}
