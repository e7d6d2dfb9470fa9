//! Text reports.
//!
//! One line per term:
//!
//! ```text
//! mu 1 1 0 0 0 0 | L 1 1 | coeff -1 0
//! ```
//!
//! grouped under `level <s>` headers (level view) or `order <k>` headers
//! (phase-order view). Lines follow the multi-index order, so output is
//! deterministic.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::algebra::{CoeffVector, Gvf, MultiIndex, SystemSpec};
use crate::error::Result;
use crate::normalizer;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Emit {
    Levels,
    Orders,
    #[default]
    Both,
}

impl FromStr for Emit {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "levels" => Ok(Emit::Levels),
            "orders" => Ok(Emit::Orders),
            "both" => Ok(Emit::Both),
            other => Err(format!("unknown emit mode `{other}` (levels|orders|both)")),
        }
    }
}

pub fn term_line(spec: &SystemSpec, mu: &MultiIndex, c: &CoeffVector) -> String {
    let mut s = String::from("mu");
    for e in mu.entries() {
        let _ = write!(s, " {e}");
    }
    s.push_str(" | L");
    for e in spec.exponent_map(mu).entries() {
        let _ = write!(s, " {e}");
    }
    s.push_str(" | coeff");
    for x in c.entries() {
        let _ = write!(s, " {x}");
    }
    s
}

fn push_terms(out: &mut String, spec: &SystemSpec, g: &Gvf) {
    for (mu, c) in g {
        out.push_str(&term_line(spec, mu, c));
        out.push('\n');
    }
}

/// Level view: `alpha_1 .. alpha_m`, empty levels omitted.
pub fn levels_section(spec: &SystemSpec, alpha: &Gvf, m: usize) -> String {
    let mut out = String::new();
    for s in 1..=m {
        let slice = alpha.level_slice(s);
        if slice.is_empty() {
            continue;
        }
        let _ = writeln!(out, "level {s}");
        push_terms(&mut out, spec, &slice);
    }
    out
}

/// Order view: `g_k` for every complete order `k <= m + 1`.
pub fn orders_section(spec: &SystemSpec, alpha: &Gvf, m: usize) -> Result<String> {
    let mut out = String::new();
    for (k, g) in normalizer::reconstruct(spec, alpha, m)? {
        if k > m + 1 {
            break;
        }
        let _ = writeln!(out, "order {k}");
        push_terms(&mut out, spec, &g);
    }
    Ok(out)
}

pub fn render(spec: &SystemSpec, alpha: &Gvf, m: usize, emit: Emit) -> Result<String> {
    let mut out = String::new();
    if matches!(emit, Emit::Levels | Emit::Both) {
        out.push_str(&levels_section(spec, alpha, m));
    }
    if matches!(emit, Emit::Orders | Emit::Both) {
        out.push_str(&orders_section(spec, alpha, m)?);
    }
    Ok(out)
}
