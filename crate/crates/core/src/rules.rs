//! Orthant case tables.
//!
//! After stage-1 reduction every coordinate of a point lies in `[-(a+1), a+1]`.
//! A point that sits in the orthant of `v_i` but not between `0` and `v_i` is
//! written `(±r, ±s, ±t, ±u)` with the signs of `v_i`, so `r, s, t, u` are the
//! absolute values of its coordinates. Each [`CaseRule`] constrains those four
//! magnitudes with closed intervals whose endpoints are affine in `a`, lists
//! lattice vectors to add, and names the `±v_j` the result must lie between
//! `0` and.
//!
//! Tables are plain text, one rule per line:
//!
//! ```text
//! even v1 1a   r=2.. s=2.. t=a+1 u=a..a+1   : -v1        => -v7
//! ```
//!
//! `r=lo..hi` bounds a magnitude, `r=..hi` and `r=lo..` leave one end at its
//! box default (`0` or `a+1`), and `r=e` pins it. Omitted variables range over
//! the whole box. Within an orthant the first matching rule wins.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticeStep, Parity, Vec4};

const EVEN_TABLE: &str = include_str!("../rules/even.rules");
const ODD_TABLE: &str = include_str!("../rules/odd.rules");

/// `coeff * a + offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Affine {
    pub coeff: i64,
    pub offset: i64,
}

impl Affine {
    pub const ZERO: Affine = Affine { coeff: 0, offset: 0 };
    pub const BOX: Affine = Affine { coeff: 1, offset: 1 };

    pub fn eval(self, a: i64) -> i64 {
        self.coeff * a + self.offset
    }
}

impl FromStr for Affine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let Some(pos) = s.find('a') else {
            let offset = s.parse().map_err(|_| format!("bad bound `{s}`"))?;
            return Ok(Affine { coeff: 0, offset });
        };
        let (head, tail) = (&s[..pos], &s[pos + 1..]);
        let coeff = if head.is_empty() { 1 } else { head.parse().map_err(|_| format!("bad bound `{s}`"))? };
        let offset = match tail.strip_prefix('+') {
            _ if tail.is_empty() => 0,
            Some(rest) => rest.parse().map_err(|_| format!("bad bound `{s}`"))?,
            None => tail.parse().map_err(|_| format!("bad bound `{s}`"))?,
        };
        Ok(Affine { coeff, offset })
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.coeff, self.offset) {
            (0, c) => write!(f, "{c}"),
            (m, c) => {
                if m != 1 {
                    write!(f, "{m}")?;
                }
                f.write_str("a")?;
                match c {
                    0 => Ok(()),
                    c if c > 0 => write!(f, "+{c}"),
                    c => write!(f, "{c}"),
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Range {
    pub lo: Affine,
    pub hi: Affine,
}

impl Range {
    pub const FULL: Range = Range { lo: Affine::ZERO, hi: Affine::BOX };

    pub fn contains(&self, value: i64, a: i64) -> bool {
        self.lo.eval(a) <= value && value <= self.hi.eval(a)
    }
}

pub const VARS: [char; 4] = ['r', 's', 't', 'u'];

/// Interval constraints on the magnitudes `(r, s, t, u)`, optionally
/// limited to a fixed range of `a` for branches that only exist at small k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guard {
    pub ranges: [Range; 4],
    pub a_range: Option<(i64, i64)>,
}

impl Guard {
    pub fn matches(&self, magnitudes: [i64; 4], a: i64) -> bool {
        self.a_range.is_none_or(|(lo, hi)| lo <= a && a <= hi)
            && self.ranges.iter().zip(magnitudes).all(|(r, m)| r.contains(m, a))
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if let Some((lo, hi)) = self.a_range {
            first = false;
            if lo == hi {
                write!(f, "a={lo}")?;
            } else {
                write!(f, "a={lo}..{hi}")?;
            }
        }
        for (var, r) in VARS.iter().zip(&self.ranges) {
            if *r == Range::FULL {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if r.lo == r.hi {
                write!(f, "{var}={}", r.lo)?;
            } else if r.lo == Affine::ZERO {
                write!(f, "{var}=..{}", r.hi)?;
            } else if r.hi == Affine::BOX {
                write!(f, "{var}={}..", r.lo)?;
            } else {
                write!(f, "{var}={}..{}", r.lo, r.hi)?;
            }
        }
        if first {
            f.write_str("*")?;
        }
        Ok(())
    }
}

/// One terminal branch of an orthant's case analysis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRule {
    pub parity: Parity,
    /// 1-based orthant index: the orthant of `v_orthant`.
    pub orthant: u8,
    /// Case number plus branch letter, e.g. `3k`.
    pub case_id: String,
    pub guard: Guard,
    /// Lattice vectors added to the point, in order.
    pub moves: Vec<LatticeStep>,
    pub anchor: LatticeStep,
    /// Line in the table source, for diagnostics.
    pub line: usize,
}

impl CaseRule {
    pub fn label(&self) -> String {
        format!("{} v{} case {}", self.parity, self.orthant, self.case_id)
    }
}

impl fmt::Display for CaseRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let moves: Vec<String> = self.moves.iter().map(ToString::to_string).collect();
        write!(
            f,
            "{} v{} {} {} : {} => {}",
            self.parity,
            self.orthant,
            self.case_id,
            self.guard,
            moves.join(" "),
            self.anchor
        )
    }
}

fn parse_step(tok: &str) -> std::result::Result<LatticeStep, String> {
    let (negative, rest) = match tok.as_bytes().first() {
        Some(b'+') => (false, &tok[1..]),
        Some(b'-') => (true, &tok[1..]),
        _ => return Err(format!("lattice step `{tok}` needs a sign")),
    };
    let idx: usize = rest
        .strip_prefix('v')
        .and_then(|d| d.parse().ok())
        .filter(|i| (1..=8).contains(i))
        .ok_or_else(|| format!("bad lattice step `{tok}`"))?;
    Ok(LatticeStep { index: idx as u8, negative })
}

fn parse_range(text: &str) -> std::result::Result<Range, String> {
    match text.split_once("..") {
        None => {
            let v: Affine = text.parse()?;
            Ok(Range { lo: v, hi: v })
        }
        Some((lo, hi)) => Ok(Range {
            lo: if lo.is_empty() { Affine::ZERO } else { lo.parse()? },
            hi: if hi.is_empty() { Affine::BOX } else { hi.parse()? },
        }),
    }
}

fn parse_line(line: &str, lineno: usize) -> std::result::Result<CaseRule, String> {
    let (lhs, anchor) = line.split_once("=>").ok_or("missing `=>`")?;
    let (head, moves) = lhs.split_once(':').ok_or("missing `:`")?;
    let mut toks = head.split_whitespace();
    let parity = match toks.next() {
        Some("even") => Parity::Even,
        Some("odd") => Parity::Odd,
        other => return Err(format!("expected parity, got {other:?}")),
    };
    let orthant: u8 = toks
        .next()
        .and_then(|t| t.strip_prefix('v'))
        .and_then(|d| d.parse().ok())
        .filter(|o| (1..=8).contains(o))
        .ok_or("expected orthant `v1`..`v8`")?;
    let case_id = toks.next().ok_or("missing case id")?.to_string();
    let mut ranges = [Range::FULL; 4];
    let mut seen = [false; 4];
    let mut a_range = None;
    for tok in toks {
        let (var, text) = tok.split_once('=').ok_or_else(|| format!("bad guard `{tok}`"))?;
        if var == "a" {
            let int = |t: &str| t.parse::<i64>().map_err(|_| format!("`a` bounds must be integers, got `{t}`"));
            let r = match text.split_once("..") {
                Some((lo, hi)) => (int(lo)?, int(hi)?),
                None => (int(text)?, int(text)?),
            };
            if a_range.replace(r).is_some() {
                return Err("variable `a` constrained twice".into());
            }
            continue;
        }
        let slot = VARS
            .iter()
            .position(|&v| var.len() == 1 && var.starts_with(v))
            .ok_or_else(|| format!("unknown variable `{var}`"))?;
        if std::mem::replace(&mut seen[slot], true) {
            return Err(format!("variable `{var}` constrained twice"));
        }
        ranges[slot] = parse_range(text)?;
    }
    let moves = moves.split_whitespace().map(parse_step).collect::<std::result::Result<Vec<_>, _>>()?;
    let anchor = parse_step(anchor.trim())?;
    Ok(CaseRule { parity, orthant, case_id, guard: Guard { ranges, a_range }, moves, anchor, line: lineno })
}

/// All rules for one parity, grouped by orthant in source order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleTable {
    pub parity: Parity,
    rules: Vec<CaseRule>,
}

impl RuleTable {
    pub fn parse(parity: Parity, text: &str) -> Result<RuleTable> {
        let mut rules = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let rule = parse_line(line, i + 1).map_err(|msg| Error::RuleSyntax { line: i + 1, msg })?;
            if rule.parity != parity {
                return Err(Error::RuleSyntax { line: i + 1, msg: format!("rule is not {parity}") });
            }
            rules.push(rule);
        }
        let labels: std::collections::HashSet<_> = rules.iter().map(|r| (r.orthant, r.case_id.clone())).collect();
        if labels.len() != rules.len() {
            return Err(Error::RuleSyntax { line: 0, msg: "duplicate case id".into() });
        }
        Ok(RuleTable { parity, rules })
    }

    /// The built-in table for `parity`.
    pub fn builtin(parity: Parity) -> &'static RuleTable {
        static EVEN: OnceLock<RuleTable> = OnceLock::new();
        static ODD: OnceLock<RuleTable> = OnceLock::new();
        let (cell, text) = match parity {
            Parity::Even => (&EVEN, EVEN_TABLE),
            Parity::Odd => (&ODD, ODD_TABLE),
        };
        cell.get_or_init(|| RuleTable::parse(parity, text).expect("built-in rule table is well formed"))
    }

    pub fn source(parity: Parity) -> &'static str {
        match parity {
            Parity::Even => EVEN_TABLE,
            Parity::Odd => ODD_TABLE,
        }
    }

    pub fn rules(&self) -> &[CaseRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn for_orthant(&self, orthant: usize) -> impl Iterator<Item = (usize, &CaseRule)> {
        self.rules.iter().enumerate().filter(move |(_, r)| r.orthant as usize == orthant)
    }

    /// First rule of `orthant` whose guard admits `x`, with its table index.
    /// `x` must already be sign-normalised to the orthant of `v_orthant`.
    pub fn dispatch(&self, orthant: usize, x: Vec4, a: i64) -> Option<(usize, &CaseRule)> {
        let magnitudes = x.0.map(i64::abs);
        self.for_orthant(orthant).find(|(_, r)| r.guard.matches(magnitudes, a))
    }
}
