//! Command implementations for the `pathograph` binary.
//!
//! Every command returns an [`Outcome`] (exit code plus standard output) or a
//! [`Failure`] (exit code plus message), so tests can drive the commands
//! without spawning a process.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use pathograph::automaton::{build_decision_dfa, Alphabet, Dfa};
use pathograph::closedcase::{decide_closed, is_closed};
use pathograph::encodings::{encode, Relation};
use pathograph::format::{parse_multi_pgf, parse_pgf, parse_pgr, write_multi_pgf, write_pgf, write_pgr};
use pathograph::realization::{decide_bounded, determination_string, enumerate_realizations, realization_from_string, Realization};
use pathograph::reductions::{
    build_stage1, build_stage2, build_stage3, parse_tiles, realize_stage1, realize_stage2, realize_stage3, search_periodic_tiling,
    write_family, write_tiling, Group, Patch, Report,
};
use pathograph::truemper::{truemper, Truemper};
use pathograph::{Error, Pathograph};

pub mod exit {
    pub const YES: i32 = 0;
    pub const NO: i32 = 1;
    pub const UNKNOWN: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const PRECONDITION: i32 = 4;
    pub const NOT_REALIZATION: i32 = 5;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Failure {
        Failure { code, message: message.into() }
    }
}

/// Library errors mapped onto exit codes.
impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::HasRungs | Error::NotClosed(_) => exit::PRECONDITION,
            Error::NotRealization(_) => exit::NOT_REALIZATION,
            Error::BoundExceeded(_) => exit::UNKNOWN,
            _ => exit::PARSE,
        };
        Failure::new(code, e.to_string())
    }
}

pub type CmdResult = Result<Outcome, Failure>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Auto,
    Rungless,
    Closed,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Dfa,
    Regex,
    Graph,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub mode: Mode,
    pub max_internal: usize,
    pub bounds: (usize, usize),
    pub output: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig { mode: Mode::Auto, max_internal: 4, bounds: (4, 4), output: OutputFormat::Text }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(exit::PARSE, format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: pathograph::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn check_valid(path: &Path, p: &Pathograph) -> Result<(), Failure> {
    match p.validate().first() {
        None => Ok(()),
        Some(v) => Err(Failure::new(exit::PARSE, format!("{}: {v}", path.display()))),
    }
}

pub fn load_pgf(path: &Path) -> Result<Pathograph, Failure> {
    let p = in_file(path, parse_pgf(&read(path)?))?;
    check_valid(path, &p)?;
    Ok(p)
}

/// Members of every family file, then the named Truemper sets.
pub fn load_family(paths: &[PathBuf], configs: &[Truemper]) -> Result<Vec<Pathograph>, Failure> {
    let mut family = Vec::new();
    for path in paths {
        for p in in_file(path, parse_multi_pgf(&read(path)?))? {
            check_valid(path, &p)?;
            family.push(p);
        }
    }
    for &c in configs {
        family.extend(truemper(c));
    }
    Ok(family)
}

fn format_string(h: &Pathograph, r: &Realization) -> Result<String, Failure> {
    let s = determination_string(r)?.format(h);
    Ok(if s.is_empty() { "(empty)".into() } else { s })
}

/// The machine of family-free determination strings for one host, built once
/// and run over any number of realizations.
pub struct Checker {
    pub host: Pathograph,
    pub alphabet: Alphabet,
    pub dfa: Dfa,
}

impl Checker {
    pub fn new(h: &Pathograph, family: &[Pathograph]) -> Result<Checker, Failure> {
        if !h.is_rungless() {
            return Err(Failure::new(exit::PRECONDITION, "the linear check needs a host without rungs"));
        }
        let dfa = build_decision_dfa(h, family)?.minimize();
        Ok(Checker { host: h.clone(), alphabet: Alphabet::of(h)?, dfa })
    }

    /// Verdict (free or not) and the number of transitions taken.
    pub fn check(&self, r: &Realization) -> Result<(bool, usize), Failure> {
        let word = self.alphabet.encode(&determination_string(r)?)?;
        Ok(self.dfa.run(&word)?)
    }

    pub fn report(&self, r: &Realization) -> CmdResult {
        let (free, steps) = self.check(r)?;
        let text = format!("free: {}\ntransitions: {steps}\n", if free { "yes" } else { "no" });
        Ok(Outcome { code: if free { exit::YES } else { exit::NO }, text })
    }
}

pub fn cmd_validate(path: &Path) -> CmdResult {
    let ps = in_file(path, parse_multi_pgf(&read(path)?))?;
    let mut text = String::new();
    let mut ok = true;
    for (i, p) in ps.iter().enumerate() {
        let (n, k, e, s, r) = p.counts();
        let _ = writeln!(text, "block {}: {n} vertices, {k} urpaths, {e} edges, {s} spokes, {r} rungs", i + 1);
        for v in p.validate() {
            ok = false;
            let _ = writeln!(text, "  invalid: {v}");
        }
    }
    let _ = writeln!(text, "{}", if ok { "valid" } else { "invalid" });
    Ok(Outcome { code: if ok { exit::YES } else { exit::NO }, text })
}

fn witness_text(text: &mut String, h: &Pathograph, r: &Realization) -> Result<(), Failure> {
    if h.is_rungless() {
        let _ = writeln!(text, "string: {}", format_string(h, r)?);
    }
    let _ = writeln!(text, "witness:");
    text.push_str(&write_pgr(&r.to_file()));
    Ok(())
}

pub fn cmd_decide(h: &Pathograph, family: &[Pathograph], cfg: &RunConfig) -> CmdResult {
    let mode = match cfg.mode {
        Mode::Auto if h.is_rungless() => Mode::Rungless,
        Mode::Auto if is_closed(family).closed => Mode::Closed,
        Mode::Auto => Mode::Oracle,
        m => m,
    };
    let mut text = String::new();
    let chosen = if cfg.mode == Mode::Auto { " (chosen automatically)" } else { "" };
    let name = match mode {
        Mode::Rungless => "rungless",
        Mode::Closed => "closed",
        _ => "oracle",
    };
    let _ = writeln!(text, "mode: {name}{chosen}");
    let found = match mode {
        Mode::Rungless => {
            if !h.is_rungless() {
                return Err(Failure::new(exit::PRECONDITION, "rungless mode needs a host without rungs"));
            }
            let dfa = build_decision_dfa(h, family)?;
            match dfa.shortest_accepted() {
                Some(w) => Some(realization_from_string(h, &Alphabet::of(h)?.decode(&w))?),
                None => None,
            }
        }
        Mode::Closed => {
            let report = is_closed(family);
            if !report.closed {
                return Err(Failure::new(exit::PRECONDITION, format!("closed mode needs a closed family: {}", report.describe())));
            }
            decide_closed(h, family)?
        }
        _ => match decide_bounded(h, family, cfg.max_internal) {
            Some(r) => Some(r),
            None => {
                let _ = writeln!(text, "answer: unknown at bound {}", cfg.max_internal);
                return Ok(Outcome { code: exit::UNKNOWN, text });
            }
        },
    };
    match found {
        Some(r) => {
            let _ = writeln!(text, "answer: yes");
            witness_text(&mut text, h, &r)?;
            Ok(Outcome { code: exit::YES, text })
        }
        None => {
            let _ = writeln!(text, "answer: no");
            Ok(Outcome { code: exit::NO, text })
        }
    }
}

pub fn cmd_characterize(h: &Pathograph, family: &[Pathograph], output: OutputFormat) -> CmdResult {
    if !h.is_rungless() {
        return Err(Failure::new(exit::PRECONDITION, "characterize needs a host without rungs"));
    }
    let dfa = build_decision_dfa(h, family)?.minimize();
    if dfa.is_empty() {
        return Ok(Outcome { code: exit::NO, text: "empty language\n".into() });
    }
    let regex = dfa.to_regex(1 << 16);
    let text = match output {
        OutputFormat::Dfa => dfa.to_text(),
        OutputFormat::Regex => match regex {
            Some(re) => format!("{re}\n"),
            None => return Err(Failure::new(exit::UNKNOWN, "the minimized machine has longer cycles; no expression of this form")),
        },
        _ => {
            let mut t = format!("# {} states\n", dfa.num_states());
            t.push_str(&dfa.to_text());
            if let Some(re) = regex {
                let _ = writeln!(t, "regex: {re}");
            }
            t
        }
    };
    Ok(Outcome { code: exit::YES, text })
}

/// Reads a realization of `h`; unreadable files are parse errors, files that
/// do not realize `h` are not realizations.
pub fn load_realization(h: &Pathograph, path: &Path) -> Result<Realization, Failure> {
    let file = in_file(path, parse_pgr(&read(path)?))?;
    Realization::from_file(h, &file).map_err(|e| Failure::new(exit::NOT_REALIZATION, format!("{}: {e}", path.display())))
}

pub fn cmd_check(h: &Pathograph, family: &[Pathograph], r: &Realization) -> CmdResult {
    Checker::new(h, family)?.report(r)
}

pub fn cmd_encode(h: &Pathograph, rel: Relation, bound: Option<usize>) -> CmdResult {
    Ok(Outcome { code: exit::YES, text: write_multi_pgf(&encode(h, rel, bound)?) })
}

pub fn cmd_truemper(which: &[Truemper]) -> CmdResult {
    let all: Vec<Pathograph> = which.iter().flat_map(|&c| truemper(c)).collect();
    Ok(Outcome { code: exit::YES, text: write_multi_pgf(&all) })
}

pub fn cmd_enumerate(h: &Pathograph, max_internal: usize, output: OutputFormat) -> CmdResult {
    let strings = h.is_rungless() && output != OutputFormat::Graph;
    let mut blocks = Vec::new();
    for r in enumerate_realizations(h, max_internal) {
        blocks.push(if strings { format!("{}\n", format_string(h, &r)?) } else { write_pgr(&r.to_file()) });
    }
    let mut text = format!("# {} realizations, at most {max_internal} internal vertices per urpath\n", blocks.len());
    text.push_str(&blocks.join(if strings { "" } else { "---\n" }));
    Ok(Outcome { code: exit::YES, text })
}

pub fn cmd_oracle(h: &Pathograph, family: &[Pathograph], max_internal: usize) -> CmdResult {
    let cfg = RunConfig { mode: Mode::Oracle, max_internal, ..RunConfig::default() };
    cmd_decide(h, family, &cfg)
}

fn group_lines<G>(text: &mut String, groups: &[Group<G>]) {
    let total: u128 = groups.iter().map(|g| g.count).sum();
    let _ = writeln!(text, "forbidden: {total}");
    for g in groups {
        let listed = if g.members.is_some() { "" } else { " (not listed)" };
        let _ = writeln!(text, "  type {}: {}{listed}", g.label, g.count);
    }
}

fn counts_line(text: &mut String, p: &Pathograph) {
    let (n, k, e, s, r) = p.counts();
    let _ = writeln!(text, "host: {n} vertices, {k} urpaths, {e} edges, {s} spokes, {r} rungs");
}

fn write_out(dir: Option<&Path>, name: &str, contents: &str) -> Result<(), Failure> {
    if let Some(dir) = dir {
        fs::create_dir_all(dir).map_err(|e| Failure::new(exit::PARSE, format!("{}: {e}", dir.display())))?;
        let path = dir.join(name);
        fs::write(&path, contents).map_err(|e| Failure::new(exit::PARSE, format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

/// Builds the instance of the given step for a tile file, writes it when
/// `out` is set, then searches a periodic tiling within `bounds` and checks
/// the witness built from it.
pub fn cmd_reduce(tiles: &Path, stage: u8, bounds: (usize, usize), out: Option<&Path>) -> CmdResult {
    let (set, patch) = in_file(tiles, parse_tiles(&read(tiles)?))?;
    let mut text = String::new();
    let patch = patch.unwrap_or_else(|| {
        let _ = writeln!(text, "patch: none given, using {} everywhere", set.tiles[0].name);
        Patch::uniform(0, 3)
    });
    let _ = writeln!(text, "stage: {stage}");
    let s1 = build_stage1(&set, &patch)?;
    let tiling = search_periodic_tiling(&set, bounds.0, bounds.1, Some(&patch));
    let report: Option<Report> = match stage {
        1 => {
            counts_line(&mut text, &s1.host.base);
            group_lines(&mut text, &s1.forbidden);
            write_out(out, "host.pgf", &s1.host.to_pgf())?;
            write_out(out, "family.pgf", &write_family(&s1.forbidden, |g| g.to_pgf()))?;
            match &tiling {
                Some(t) => {
                    let (w, r) = realize_stage1(&s1, t)?;
                    write_out(out, "witness.pgf", &w.graph.to_pgf())?;
                    Some(r)
                }
                None => None,
            }
        }
        2 => {
            let s2 = build_stage2(&s1)?;
            let _ = writeln!(text, "K: {}", s2.k);
            counts_line(&mut text, &s2.host.base);
            group_lines(&mut text, &s2.forbidden);
            write_out(out, "host.pgf", &s2.host.to_pgf())?;
            write_out(out, "family.pgf", &write_family(&s2.forbidden, |g| g.to_pgf()))?;
            match &tiling {
                Some(t) => {
                    let (w, r) = realize_stage2(&s2, t)?;
                    write_out(out, "witness.pgf", &w.graph.to_pgf())?;
                    Some(r)
                }
                None => None,
            }
        }
        3 => {
            let s3 = build_stage3(&build_stage2(&s1)?)?;
            let _ = writeln!(text, "K: {}", s3.k);
            counts_line(&mut text, &s3.host);
            group_lines(&mut text, &s3.forbidden);
            write_out(out, "host.pgf", &write_pgf(&s3.host))?;
            write_out(out, "family.pgf", &write_family(&s3.forbidden, write_pgf))?;
            match &tiling {
                Some(t) => {
                    let (w, r) = realize_stage3(&s3, t)?;
                    write_out(out, "witness.pgf", &write_pgf(&w.graph))?;
                    Some(r)
                }
                None => None,
            }
        }
        _ => return Err(Failure::new(exit::PARSE, format!("no step {stage}; use 1, 2 or 3"))),
    };
    match (tiling, report) {
        (Some(t), Some(r)) => {
            let _ = writeln!(text, "tiling: periods {}x{}", t.a, t.b);
            text.push_str(&write_tiling(&set, &t));
            write_out(out, "tiling.txt", &write_tiling(&set, &t))?;
            text.push_str(&r.render());
            let code = if r.passed() { exit::YES } else { exit::NO };
            Ok(Outcome { code, text })
        }
        _ => {
            let _ = writeln!(text, "tiling: none with periods up to {}x{}", bounds.0, bounds.1);
            Ok(Outcome { code: exit::UNKNOWN, text })
        }
    }
}

fn parse_bounds(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected AxB, got `{s}`"))?;
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    Ok((num(a)?, num(b)?))
}

#[derive(Parser, Debug)]
#[command(name = "pathograph", version, about = "Pathograph containment, realization and decision tools")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a PGF file and report structural problems.
    Validate { file: PathBuf },
    /// Decide whether a host has a family-free realization.
    Decide {
        host: PathBuf,
        family: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        mode: Mode,
        /// Oracle bound on internal vertices per urpath.
        #[arg(long, default_value_t = 4)]
        max_internal: usize,
        /// Add a built-in Truemper set to the family (repeatable).
        #[arg(long, value_parser = parse_truemper)]
        truemper: Vec<Truemper>,
    },
    /// Print the minimized machine (and an expression when one exists) of
    /// all family-free determination strings.
    Characterize {
        host: PathBuf,
        family: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        out: OutputFormat,
        #[arg(long, value_parser = parse_truemper)]
        truemper: Vec<Truemper>,
    },
    /// Run a realization's determination string through the machine once.
    Check {
        host: PathBuf,
        realization: PathBuf,
        family: Vec<PathBuf>,
        #[arg(long, value_parser = parse_truemper)]
        truemper: Vec<Truemper>,
    },
    /// Print the pathograph set encoding a containment relation.
    Encode {
        #[arg(long, value_parser = parse_relation)]
        relation: Relation,
        graph: PathBuf,
        /// Drop members with more than this many vertices plus urpaths.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Print the pathograph sets of Truemper configurations.
    Truemper {
        #[arg(value_parser = parse_truemper_or_all, required = true)]
        which: Vec<Vec<Truemper>>,
    },
    /// List every realization up to a length bound.
    Enumerate {
        host: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_internal: usize,
        #[arg(long, value_enum, default_value = "text")]
        out: OutputFormat,
    },
    /// Brute-force search for a family-free realization.
    Oracle {
        host: PathBuf,
        family: Vec<PathBuf>,
        #[arg(long, default_value_t = 4)]
        max_internal: usize,
        #[arg(long, value_parser = parse_truemper)]
        truemper: Vec<Truemper>,
    },
    /// Build a reduction instance from a Wang tile file.
    Reduce {
        tiles: PathBuf,
        #[arg(long, default_value_t = 1)]
        stage: u8,
        #[arg(long, value_parser = parse_bounds, default_value = "4x4")]
        bounds: (usize, usize),
        /// Directory for host, family, witness and tiling files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_truemper(s: &str) -> Result<Truemper, String> {
    s.parse()
}

fn parse_truemper_or_all(s: &str) -> Result<Vec<Truemper>, String> {
    if s == "all" {
        Ok(Truemper::ALL.to_vec())
    } else {
        Ok(vec![s.parse()?])
    }
}

fn parse_relation(s: &str) -> Result<Relation, String> {
    s.parse()
}

pub fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Validate { file } => cmd_validate(file),
        Command::Decide { host, family, mode, max_internal, truemper } => {
            let cfg = RunConfig { mode: *mode, max_internal: *max_internal, ..RunConfig::default() };
            cmd_decide(&load_pgf(host)?, &load_family(family, truemper)?, &cfg)
        }
        Command::Characterize { host, family, out, truemper } => {
            cmd_characterize(&load_pgf(host)?, &load_family(family, truemper)?, *out)
        }
        Command::Check { host, realization, family, truemper } => {
            let h = load_pgf(host)?;
            let checker = Checker::new(&h, &load_family(family, truemper)?)?;
            let r = load_realization(&h, realization)?;
            checker.report(&r)
        }
        Command::Encode { relation, graph, bound } => cmd_encode(&load_pgf(graph)?, *relation, *bound),
        Command::Truemper { which } => cmd_truemper(&which.concat()),
        Command::Enumerate { host, max_internal, out } => cmd_enumerate(&load_pgf(host)?, *max_internal, *out),
        Command::Oracle { host, family, max_internal, truemper } => {
            cmd_oracle(&load_pgf(host)?, &load_family(family, truemper)?, *max_internal)
        }
        Command::Reduce { tiles, stage, bounds, out } => cmd_reduce(tiles, *stage, *bounds, out.as_deref()),
    }
}
