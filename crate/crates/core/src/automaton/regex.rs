//! Regular expressions over `k:{...}` tokens: juxtaposition, `|`, `*`, `+`,
//! `?` and parentheses. `()` is the empty word.

use super::alphabet::Alphabet;
use super::nfa::{Label, Nfa};
use crate::error::{Error, Result};

#[derive(Debug)]
enum Ast {
    Empty,
    Sym(usize),
    Cat(Vec<Ast>),
    Alt(Vec<Ast>),
    Star(Box<Ast>),
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Regex { pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn alt(&mut self) -> Result<Ast> {
        let mut parts = vec![self.cat()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            parts.push(self.cat()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Ast::Alt(parts) })
    }

    fn cat(&mut self) -> Result<Ast> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            parts.push(self.repeat()?);
        }
        Ok(match parts.len() {
            0 => Ast::Empty,
            1 => parts.pop().unwrap(),
            _ => Ast::Cat(parts),
        })
    }

    fn repeat(&mut self) -> Result<Ast> {
        let mut a = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => a = Ast::Star(Box::new(a)),
                Some('+') => a = Ast::Cat(vec![dup(&a), Ast::Star(Box::new(a))]),
                Some('?') => a = Ast::Alt(vec![a, Ast::Empty]),
                _ => return Ok(a),
            }
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<Ast> {
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.alt()?;
                if self.peek() != Some(')') {
                    return self.err(open, "unclosed `(`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let at = self.pos;
                let close = match self.text[at..].find('}') {
                    Some(i) => at + i + 1,
                    None => return self.err(at, "symbol without closing `}`"),
                };
                let token = &self.text[at..close];
                match self.alphabet.parse_token(token) {
                    Ok(id) => {
                        self.pos = close;
                        Ok(Ast::Sym(id))
                    }
                    Err(_) => self.err(at, format!("`{token}` is not a symbol of the alphabet")),
                }
            }
            Some(c) => self.err(self.pos, format!("unexpected `{c}`")),
            None => self.err(start, "unexpected end of expression"),
        }
    }
}

fn dup(a: &Ast) -> Ast {
    match a {
        Ast::Empty => Ast::Empty,
        Ast::Sym(s) => Ast::Sym(*s),
        Ast::Cat(v) => Ast::Cat(v.iter().map(dup).collect()),
        Ast::Alt(v) => Ast::Alt(v.iter().map(dup).collect()),
        Ast::Star(b) => Ast::Star(Box::new(dup(b))),
    }
}

/// Thompson fragment: returns (entry, exit).
fn build(a: &Ast, nfa: &mut Nfa) -> (usize, usize) {
    let n = nfa.alphabet.n();
    let s = nfa.add_state(format!("r{}", nfa.num_states()));
    let t = nfa.add_state(format!("r{}", nfa.num_states()));
    match a {
        Ast::Empty => nfa.add_eps(s, t),
        Ast::Sym(id) => {
            let sym = nfa.alphabet.symbol(*id);
            nfa.add_edge(s, Label::exact(sym.index, sym.set, n), t);
        }
        Ast::Cat(parts) => {
            let mut cur = s;
            for p in parts {
                let (ps, pt) = build(p, nfa);
                nfa.add_eps(cur, ps);
                cur = pt;
            }
            nfa.add_eps(cur, t);
        }
        Ast::Alt(parts) => {
            for p in parts {
                let (ps, pt) = build(p, nfa);
                nfa.add_eps(s, ps);
                nfa.add_eps(pt, t);
            }
        }
        Ast::Star(inner) => {
            let (ps, pt) = build(inner, nfa);
            nfa.add_eps(s, ps);
            nfa.add_eps(pt, ps);
            nfa.add_eps(s, t);
            nfa.add_eps(pt, t);
        }
    }
    (s, t)
}

pub fn regex_to_nfa(alphabet: &Alphabet, text: &str) -> Result<Nfa> {
    let mut p = Parser { text, pos: 0, alphabet };
    let ast = p.alt()?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected `{c}`"));
    }
    let mut nfa = Nfa::new(alphabet.clone());
    let (s, t) = build(&ast, &mut nfa);
    nfa.start.push(s);
    nfa.accept[t] = true;
    Ok(nfa)
}
