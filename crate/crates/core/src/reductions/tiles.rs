//! Wang tiles and a bounded search for periodic tilings.
//!
//! Tile file format:
//!
//! ```text
//! color: g m
//! tile: s m g g m      # name, then the north, east, south, west colours
//! tile: t g m g g
//! patch: 3 3           # width, height; then one line per row, bottom row first
//! s s t
//! s s t
//! t s s
//! ```

use std::collections::BTreeSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WangTile {
    pub name: String,
    pub n: usize,
    pub e: usize,
    pub s: usize,
    pub w: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WangTileSet {
    pub colors: Vec<String>,
    pub tiles: Vec<WangTile>,
}

impl WangTileSet {
    pub fn new(colors: Vec<String>, tiles: Vec<WangTile>) -> Result<WangTileSet> {
        let mut seen = BTreeSet::new();
        for t in &tiles {
            if [t.n, t.e, t.s, t.w].iter().any(|&c| c >= colors.len()) {
                return Err(Error::Invalid(format!("tile {} uses an unknown colour", t.name)));
            }
            if !seen.insert((t.n, t.e, t.s, t.w)) {
                return Err(Error::Invalid(format!("tile {} repeats another tile", t.name)));
            }
        }
        let names: BTreeSet<&str> = tiles.iter().map(|t| t.name.as_str()).collect();
        if names.len() != tiles.len() {
            return Err(Error::Invalid("tile names repeat".into()));
        }
        Ok(WangTileSet { colors, tiles })
    }

    /// A set of one tile with the same colour on all four sides.
    pub fn uniform() -> WangTileSet {
        let t = WangTile { name: "t".into(), n: 0, e: 0, s: 0, w: 0 };
        WangTileSet { colors: vec!["g".into()], tiles: vec![t] }
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    /// Whether `t` may sit immediately right of `s`.
    pub fn fits_right(&self, s: usize, t: usize) -> bool {
        self.tiles[s].e == self.tiles[t].w
    }

    /// Whether `t` may sit immediately above `s`.
    pub fn fits_above(&self, s: usize, t: usize) -> bool {
        self.tiles[s].n == self.tiles[t].s
    }

    /// Adds tiles with four fresh colours each until there are `k` tiles. A
    /// padding tile matches nothing, itself included.
    pub fn padded(&self, k: usize) -> WangTileSet {
        let mut out = self.clone();
        let mut i = 0;
        while out.tiles.len() < k {
            let base = out.colors.len();
            for side in ["n", "e", "s", "w"] {
                out.colors.push(format!("pad{i}{side}"));
            }
            let mut name = format!("pad{i}");
            while out.tiles.iter().any(|t| t.name == name) {
                name.push('\'');
            }
            out.tiles.push(WangTile { name, n: base, e: base + 1, s: base + 2, w: base + 3 });
            i += 1;
        }
        out
    }

    pub fn tile_index(&self, name: &str) -> Option<usize> {
        self.tiles.iter().position(|t| t.name == name)
    }
}

/// A rectangle of tiles fixed in advance: `cells[i][j]` is the tile at
/// column `i + 1`, row `j + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Patch {
    pub cells: Vec<Vec<usize>>,
}

impl Patch {
    pub fn uniform(tile: usize, size: usize) -> Patch {
        Patch { cells: vec![vec![tile; size]; size] }
    }

    pub fn width(&self) -> usize {
        self.cells.len()
    }

    pub fn height(&self) -> usize {
        self.cells.first().map_or(0, Vec::len)
    }

    pub fn at(&self, i: usize, j: usize) -> usize {
        self.cells[i - 1][j - 1]
    }
}

/// An `(a, b)`-periodic tiling: column `i`, row `j` (1-based, any integer)
/// holds `cells[(i - 1) mod a][(j - 1) mod b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicTiling {
    pub a: usize,
    pub b: usize,
    pub cells: Vec<Vec<usize>>,
}

impl PeriodicTiling {
    pub fn at(&self, i: i64, j: i64) -> usize {
        self.cells[(i - 1).rem_euclid(self.a as i64) as usize][(j - 1).rem_euclid(self.b as i64) as usize]
    }

    /// Checks both matching rules on every cell, cyclically.
    pub fn check(&self, set: &WangTileSet) -> Result<()> {
        if self.a == 0 || self.b == 0 || self.cells.len() != self.a || self.cells.iter().any(|c| c.len() != self.b) {
            return Err(Error::InvalidTiling("periods do not match the cells".into()));
        }
        if self.cells.iter().flatten().any(|&t| t >= set.len()) {
            return Err(Error::InvalidTiling("unknown tile".into()));
        }
        for i in 1..=self.a as i64 {
            for j in 1..=self.b as i64 {
                if !set.fits_right(self.at(i, j), self.at(i + 1, j)) {
                    return Err(Error::InvalidTiling(format!("east side of cell ({i},{j}) does not match")));
                }
                if !set.fits_above(self.at(i, j), self.at(i, j + 1)) {
                    return Err(Error::InvalidTiling(format!("north side of cell ({i},{j}) does not match")));
                }
            }
        }
        Ok(())
    }

    pub fn extends(&self, patch: &Patch) -> bool {
        (1..=patch.width()).all(|i| (1..=patch.height()).all(|j| self.at(i as i64, j as i64) == patch.at(i, j)))
    }

    /// The same tiling with each period below `min` multiplied by `min`.
    pub fn lifted(&self, min: usize) -> PeriodicTiling {
        let a = if self.a < min { self.a * min } else { self.a };
        let b = if self.b < min { self.b * min } else { self.b };
        let cells = (1..=a as i64).map(|i| (1..=b as i64).map(|j| self.at(i, j)).collect()).collect();
        PeriodicTiling { a, b, cells }
    }
}

/// The first periodic tiling with periods at most `(a_max, b_max)`, trying
/// periods by increasing area, then by `a`. With a patch, the tiling must
/// agree with it.
pub fn search_periodic_tiling(set: &WangTileSet, a_max: usize, b_max: usize, patch: Option<&Patch>) -> Option<PeriodicTiling> {
    let mut periods: Vec<(usize, usize)> = (1..=a_max).flat_map(|a| (1..=b_max).map(move |b| (a, b))).collect();
    periods.sort_by_key(|&(a, b)| (a * b, a));
    periods.into_iter().find_map(|(a, b)| tile_torus(set, a, b, patch))
}

fn tile_torus(set: &WangTileSet, a: usize, b: usize, patch: Option<&Patch>) -> Option<PeriodicTiling> {
    if set.is_empty() {
        return None;
    }
    let mut fixed: Vec<Vec<Option<usize>>> = vec![vec![None; b]; a];
    if let Some(p) = patch {
        for i in 0..p.width() {
            for j in 0..p.height() {
                let cell = &mut fixed[i % a][j % b];
                match *cell {
                    Some(t) if t != p.cells[i][j] => return None,
                    _ => *cell = Some(p.cells[i][j]),
                }
            }
        }
    }
    let mut cells = vec![vec![usize::MAX; b]; a];
    // Column-major order: the left, lower and wrap-around neighbours of a
    // cell are assigned before the cell closes them.
    fn fill(set: &WangTileSet, fixed: &[Vec<Option<usize>>], cells: &mut [Vec<usize>], pos: usize) -> bool {
        let (a, b) = (cells.len(), cells[0].len());
        if pos == a * b {
            return true;
        }
        let (i, j) = (pos / b, pos % b);
        let choices: Vec<usize> = match fixed[i][j] {
            Some(t) => vec![t],
            None => (0..set.len()).collect(),
        };
        for t in choices {
            let left = if i > 0 { Some(cells[i - 1][j]) } else if a == 1 { Some(t) } else { None };
            let below = if j > 0 { Some(cells[i][j - 1]) } else if b == 1 { Some(t) } else { None };
            if left.is_some_and(|l| !set.fits_right(l, t)) || below.is_some_and(|d| !set.fits_above(d, t)) {
                continue;
            }
            if i == a - 1 && a > 1 && !set.fits_right(t, cells[0][j]) {
                continue;
            }
            if j == b - 1 && b > 1 && !set.fits_above(t, cells[i][0]) {
                continue;
            }
            cells[i][j] = t;
            if fill(set, fixed, cells, pos + 1) {
                return true;
            }
        }
        false
    }
    if fill(set, &fixed, &mut cells, 0) {
        Some(PeriodicTiling { a, b, cells })
    } else {
        None
    }
}

pub fn parse_tiles(text: &str) -> Result<(WangTileSet, Option<Patch>)> {
    let perr = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
    let mut colors: Vec<String> = Vec::new();
    let mut tiles: Vec<WangTile> = Vec::new();
    let mut patch: Option<Patch> = None;
    let mut rows: Vec<(usize, Vec<String>)> = Vec::new();
    let mut size: Option<(usize, usize, usize)> = None;
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some((w, h, _)) = size {
            if rows.len() < h {
                let names: Vec<String> = line.split_whitespace().map(String::from).collect();
                if names.len() != w {
                    return Err(perr(line_no, &format!("patch row needs {w} tiles")));
                }
                rows.push((line_no, names));
                continue;
            }
        }
        let (key, rest) = line.split_once(':').ok_or_else(|| perr(line_no, "expected `key: values`"))?;
        let vals: Vec<&str> = rest.split_whitespace().collect();
        match key.trim() {
            "color" | "colors" => colors.extend(vals.iter().map(|s| s.to_string())),
            "tile" => {
                if vals.len() != 5 {
                    return Err(perr(line_no, "tile needs a name and four colours"));
                }
                let c = |s: &str| colors.iter().position(|x| x == s).ok_or_else(|| perr(line_no, &format!("unknown colour `{s}`")));
                tiles.push(WangTile { name: vals[0].into(), n: c(vals[1])?, e: c(vals[2])?, s: c(vals[3])?, w: c(vals[4])? });
            }
            "patch" => {
                if vals.len() != 2 || size.is_some() {
                    return Err(perr(line_no, "patch needs a width and a height, once"));
                }
                let n = |s: &str| s.parse::<usize>().map_err(|_| perr(line_no, "bad patch size"));
                size = Some((n(vals[0])?, n(vals[1])?, line_no));
            }
            other => return Err(perr(line_no, &format!("unknown key `{other}`"))),
        }
    }
    let set = WangTileSet::new(colors, tiles).map_err(|e| perr(0, &e.to_string()))?;
    if let Some((w, h, line)) = size {
        if rows.len() != h {
            return Err(perr(line, &format!("patch needs {h} rows")));
        }
        let mut cells = vec![vec![0; h]; w];
        for (j, (line_no, names)) in rows.iter().enumerate() {
            for (i, name) in names.iter().enumerate() {
                cells[i][j] = set.tile_index(name).ok_or_else(|| perr(*line_no, &format!("unknown tile `{name}`")))?;
            }
        }
        patch = Some(Patch { cells });
    }
    Ok((set, patch))
}

pub fn write_tiles(set: &WangTileSet, patch: Option<&Patch>) -> String {
    let mut s = format!("color: {}\n", set.colors.join(" "));
    for t in &set.tiles {
        let c = |i: usize| set.colors[i].as_str();
        s.push_str(&format!("tile: {} {} {} {} {}\n", t.name, c(t.n), c(t.e), c(t.s), c(t.w)));
    }
    if let Some(p) = patch {
        s.push_str(&format!("patch: {} {}\n", p.width(), p.height()));
        for j in 0..p.height() {
            let row: Vec<&str> = (0..p.width()).map(|i| set.tiles[p.cells[i][j]].name.as_str()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
    }
    s
}

pub fn write_tiling(set: &WangTileSet, t: &PeriodicTiling) -> String {
    let mut s = format!("periods: {} {}\n", t.a, t.b);
    for j in (0..t.b).rev() {
        let row: Vec<&str> = (0..t.a).map(|i| set.tiles[t.cells[i][j]].name.as_str()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}
