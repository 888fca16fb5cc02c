//! Line-based text formats.
//!
//! A pathograph file (PGF) is a list of `key: values` lines:
//!
//! ```text
//! # comments start with '#'
//! vertices: a b c d
//! edge: a b
//! urpath: u a c      # name, left end, right end; listing order is the index
//! spoke: b u
//! rung: u1 u2
//! ```
//!
//! Several pathographs may share one file, separated by `---` lines. A
//! realization file (PGR) is a PGF graph followed by `path: u a x1 x2 c` lines
//! giving each urpath's replacement path, endpoints included.

use crate::error::{Error, Result};
use crate::pathograph::Pathograph;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parses one section; each line carries its 1-based number for errors.
fn parse_section(lines: &[(usize, &str)], allow_paths: bool) -> Result<(Pathograph, Vec<(usize, String, Vec<String>)>)> {
    let mut p = Pathograph::new();
    let mut paths = Vec::new();
    for &(ln, raw) in lines {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| perr(ln, format!("expected `key: values`, got `{line}`")))?;
        let args: Vec<&str> = rest.split_whitespace().collect();
        let vertex = |p: &Pathograph, name: &str| {
            p.vertex_index(name).ok_or_else(|| perr(ln, format!("unknown vertex `{name}`")))
        };
        let urpath = |p: &Pathograph, name: &str| {
            p.urpath_index(name).ok_or_else(|| perr(ln, format!("unknown urpath `{name}`")))
        };
        let arity = |want: usize| {
            if args.len() == want {
                Ok(())
            } else {
                Err(perr(ln, format!("`{}` takes {want} arguments, got {}", key.trim(), args.len())))
            }
        };
        match key.trim() {
            "vertices" => {
                for a in &args {
                    if p.vertex_index(a).is_some() {
                        return Err(perr(ln, format!("duplicate vertex `{a}`")));
                    }
                    p.add_vertex(a);
                }
            }
            "edge" => {
                arity(2)?;
                let (a, b) = (vertex(&p, args[0])?, vertex(&p, args[1])?);
                if a == b {
                    return Err(perr(ln, "edge from a vertex to itself"));
                }
                p.add_edge(a, b);
            }
            "urpath" => {
                arity(3)?;
                if p.urpath_index(args[0]).is_some() {
                    return Err(perr(ln, format!("duplicate urpath `{}`", args[0])));
                }
                let (a, b) = (vertex(&p, args[1])?, vertex(&p, args[2])?);
                p.add_urpath(args[0], a, b);
            }
            "spoke" => {
                arity(2)?;
                let (v, u) = (vertex(&p, args[0])?, urpath(&p, args[1])?);
                p.add_spoke(v, u);
            }
            "rung" => {
                arity(2)?;
                let (a, b) = (urpath(&p, args[0])?, urpath(&p, args[1])?);
                if a == b {
                    return Err(perr(ln, "rung from an urpath to itself"));
                }
                p.add_rung(a, b);
            }
            "path" if allow_paths => {
                if args.len() < 3 {
                    return Err(perr(ln, "`path` needs an urpath name and at least three vertices"));
                }
                paths.push((ln, args[0].to_string(), args[1..].iter().map(|s| s.to_string()).collect()));
            }
            other => return Err(perr(ln, format!("unknown key `{other}`"))),
        }
    }
    Ok((p, paths))
}

fn sections(text: &str) -> Vec<Vec<(usize, &str)>> {
    let mut out = vec![Vec::new()];
    for (i, line) in text.lines().enumerate() {
        if strip_comment(line).trim() == "---" {
            out.push(Vec::new());
        } else {
            out.last_mut().unwrap().push((i + 1, line));
        }
    }
    out
}

fn is_blank(section: &[(usize, &str)]) -> bool {
    section.iter().all(|(_, l)| strip_comment(l).trim().is_empty())
}

pub fn parse_pgf(text: &str) -> Result<Pathograph> {
    let secs = sections(text);
    if secs.len() > 1 {
        let line = text.lines().position(|l| strip_comment(l).trim() == "---").unwrap() + 1;
        return Err(perr(line, "expected a single pathograph"));
    }
    Ok(parse_section(&secs[0], false)?.0)
}

/// Parses `---`-separated pathographs; blank sections are skipped.
pub fn parse_multi_pgf(text: &str) -> Result<Vec<Pathograph>> {
    let mut out = Vec::new();
    for sec in sections(text) {
        if is_blank(&sec) {
            continue;
        }
        out.push(parse_section(&sec, false)?.0);
    }
    Ok(out)
}

pub fn write_pgf(p: &Pathograph) -> String {
    let mut s = String::new();
    s.push_str("vertices:");
    for v in &p.vertices {
        s.push(' ');
        s.push_str(v);
    }
    s.push('\n');
    for &(a, b) in &p.edges {
        s.push_str(&format!("edge: {} {}\n", p.vertices[a], p.vertices[b]));
    }
    for u in &p.urpaths {
        s.push_str(&format!("urpath: {} {} {}\n", u.name, p.vertices[u.left], p.vertices[u.right]));
    }
    for &(v, u) in &p.spokes {
        s.push_str(&format!("spoke: {} {}\n", p.vertices[v], p.urpaths[u].name));
    }
    for &(a, b) in &p.rungs {
        s.push_str(&format!("rung: {} {}\n", p.urpaths[a].name, p.urpaths[b].name));
    }
    s
}

pub fn write_multi_pgf(ps: &[Pathograph]) -> String {
    let blocks: Vec<String> = ps.iter().map(write_pgf).collect();
    blocks.join("---\n")
}

/// A parsed realization file: the graph plus, per urpath name, the full
/// replacement path (endpoints included) as vertex names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationFile {
    pub graph: Pathograph,
    pub paths: Vec<(String, Vec<String>)>,
}

pub fn parse_pgr(text: &str) -> Result<RealizationFile> {
    let secs = sections(text);
    if secs.len() > 1 {
        let line = text.lines().position(|l| strip_comment(l).trim() == "---").unwrap() + 1;
        return Err(perr(line, "expected a single realization"));
    }
    let (graph, raw_paths) = parse_section(&secs[0], true)?;
    if !graph.is_graph() {
        return Err(perr(1, "a realization must be a plain graph"));
    }
    let mut paths = Vec::new();
    for (ln, name, verts) in raw_paths {
        for v in &verts {
            if graph.vertex_index(v).is_none() {
                return Err(perr(ln, format!("unknown vertex `{v}`")));
            }
        }
        paths.push((name, verts));
    }
    Ok(RealizationFile { graph, paths })
}

pub fn write_pgr(r: &RealizationFile) -> String {
    let mut s = write_pgf(&r.graph);
    for (name, verts) in &r.paths {
        s.push_str(&format!("path: {} {}\n", name, verts.join(" ")));
    }
    s
}
