//! Pathograph sets for the four Truemper configurations.

use std::fmt;
use std::str::FromStr;

use crate::format::parse_pgf;
use crate::pathograph::Pathograph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Truemper {
    Theta,
    Pyramid,
    Prism,
    Wheel,
}

impl Truemper {
    pub const ALL: [Truemper; 4] = [Truemper::Theta, Truemper::Pyramid, Truemper::Prism, Truemper::Wheel];
}

impl FromStr for Truemper {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "theta" => Ok(Truemper::Theta),
            "pyramid" => Ok(Truemper::Pyramid),
            "prism" => Ok(Truemper::Prism),
            "wheel" => Ok(Truemper::Wheel),
            _ => Err(format!("unknown configuration `{s}` (theta, pyramid, prism, wheel)")),
        }
    }
}

impl fmt::Display for Truemper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Truemper::Theta => "theta",
            Truemper::Pyramid => "pyramid",
            Truemper::Prism => "prism",
            Truemper::Wheel => "wheel",
        };
        f.write_str(s)
    }
}

const THETA: &str = "vertices: a b\nurpath: u1 a b\nurpath: u2 a b\nurpath: u3 a b\n";

// Triangle b1 b2 b3, apex a. The b3 leg is an edge in the first member.
const PYRAMID_BASE: &str = "vertices: b1 b2 b3 a\nedge: b1 b2\nedge: b1 b3\nedge: b2 b3\nurpath: u1 b1 a\nurpath: u2 b2 a\n";

// Triangles a1 a2 a3 and b1 b2 b3; legs a1-b1, a2-b2, a3-b3.
const PRISM_BASE: &str = "vertices: a1 a2 a3 b3 b2 b1\nedge: a1 a2\nedge: a1 a3\nedge: a2 a3\nedge: b1 b2\nedge: b1 b3\nedge: b2 b3\n";

// Hole through X and Y made of two urpaths; hub Z sees X, Y and the lower one.
const WHEEL_BASE: &str = "vertices: X Z Y\nedge: X Z\nedge: Z Y\nurpath: u1 X Y\nurpath: u2 X Y\nspoke: Z u2\n";

fn pgf(text: &str) -> Pathograph {
    parse_pgf(text).expect("built-in pathograph")
}

/// The fixed pathograph set whose containment is equivalent to containing
/// the configuration as an induced subgraph.
pub fn truemper(which: Truemper) -> Vec<Pathograph> {
    match which {
        Truemper::Theta => vec![pgf(THETA)],
        Truemper::Pyramid => vec![
            pgf(&format!("{PYRAMID_BASE}edge: b3 a\n")),
            pgf(&format!("{PYRAMID_BASE}urpath: u3 b3 a\n")),
        ],
        Truemper::Prism => vec![
            pgf(&format!("{PRISM_BASE}edge: a3 b3\nedge: a2 b2\nedge: a1 b1\n")),
            pgf(&format!("{PRISM_BASE}edge: a3 b3\nurpath: u2 a2 b2\nedge: a1 b1\n")),
            pgf(&format!("{PRISM_BASE}urpath: u3 a3 b3\nurpath: u2 a2 b2\nedge: a1 b1\n")),
            pgf(&format!("{PRISM_BASE}urpath: u3 a3 b3\nurpath: u2 a2 b2\nurpath: u1 a1 b1\n")),
        ],
        Truemper::Wheel => vec![pgf(WHEEL_BASE), pgf(&format!("{WHEEL_BASE}spoke: Z u1\n"))],
    }
}

/// Union of the sets for several configurations, in the order given.
pub fn truemper_union(which: &[Truemper]) -> Vec<Pathograph> {
    which.iter().flat_map(|&t| truemper(t)).collect()
}
