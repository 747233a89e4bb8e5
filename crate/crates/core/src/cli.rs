//! Command-line front end. [`run`] returns the process exit code:
//! 0 pass, 1 failed check, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::audit::{verify_case_coverage, verify_covering};
use crate::error::{Error, MAX_DIAMETER};
use crate::graph::{construct, diameter, shortest_word};
use crate::lattice::build_system;
use crate::quotient::{combo_identities, generator_set, verify_cyclic};
use crate::reduction::{lift_residue, reduce, word_from_certificate, GeneratorWord};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest `k` accepted by `verify --level full`.
pub const FULL_VERIFY_MAX_K: i64 = 8;
/// Largest `k` accepted by `export`.
pub const EXPORT_MAX_K: i64 = 20;

#[derive(Parser, Debug)]
#[command(name = "circulant8", version, about = "Degree-8 circulant graphs of diameter k")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the order and generator set.
    Gen {
        #[arg(short, value_parser = parse_k)]
        k: i64,
    },
    /// Measure the diameter by BFS.
    Diameter {
        #[arg(short, value_parser = parse_k)]
        k: i64,
    },
    /// Print a word of at most k generator steps reaching residue g.
    Route {
        #[arg(short, value_parser = parse_k)]
        k: i64,
        #[arg(short)]
        g: i64,
    },
    /// Check the construction's invariants.
    Verify {
        #[arg(short, value_parser = parse_k)]
        k: i64,
        #[arg(long, value_enum, default_value_t = Level::Fast)]
        level: Level,
        #[arg(long)]
        json: bool,
    },
    /// Audit the case tables over the whole reduced box.
    Coverage {
        #[arg(short, value_parser = parse_k)]
        k: i64,
    },
    /// Write the edge list.
    Export {
        #[arg(short, value_parser = parse_k)]
        k: i64,
        #[arg(short)]
        o: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Fast,
    Full,
}

fn parse_k(s: &str) -> Result<i64, String> {
    let k: i64 = s.parse().map_err(|_| format!("`{s}` is not an integer"))?;
    if (2..=MAX_DIAMETER).contains(&k) {
        Ok(k)
    } else {
        Err(format!("k must be in 2..={MAX_DIAMETER}"))
    }
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub k: i64,
    pub level: Level,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    fn push(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }
}

/// The checks behind `verify`. `Full` requires `k <= 8`.
pub fn verify_report(k: i64, level: Level) -> VerifyReport {
    let mut rep = VerifyReport { k, level, pass: false, checks: Vec::new() };
    let sys = match build_system(k) {
        Ok(s) => s,
        Err(e) => {
            rep.push("lattice", false, e.to_string());
            return rep;
        }
    };
    rep.push("lattice", true, format!("order={} det, norms, bounds and sign patterns hold", sys.order()));
    match generator_set(k) {
        Ok(g) => rep.push("generators", true, format!("n={} gens={}", g.n, g.joined())),
        Err(e) => rep.push("generators", false, e.to_string()),
    }
    let ids = combo_identities(&sys);
    let gens = generator_set(k).ok();
    let basis = sys.basis();
    let ids_ok = ids.iter().all(|id| id.holds(&basis))
        && gens.as_ref().is_some_and(|g| ids.iter().all(|id| id.constant().rem_euclid(g.n) == g.s[id.target - 1]));
    rep.push("identities", ids_ok, ids.iter().map(|id| id.label()).collect::<Vec<_>>().join("; "));
    let cyc = verify_cyclic(&sys);
    rep.push("cyclic", cyc.is_cyclic, cyc.failure.unwrap_or_else(|| format!("Z^4/L_k = Z_{}", cyc.order)));

    if level == Level::Full {
        match verify_covering(k) {
            Ok(r) => rep.push("covering", r.passed(), r.summary()),
            Err(e) => rep.push("covering", false, e.to_string()),
        }
        if sys.has_case_tables() {
            match verify_case_coverage(k) {
                Ok(r) => rep.push("case_coverage", r.passed(), r.summary()),
                Err(e) => rep.push("case_coverage", false, e.to_string()),
            }
        }
        match construct(k).map(|g| diameter(&g)) {
            Ok(Some(d)) => rep.push("diameter", d == k, format!("bfs diameter={d}")),
            Ok(None) => rep.push("diameter", false, "graph is disconnected"),
            Err(e) => rep.push("diameter", false, e.to_string()),
        }
    }
    rep.pass = rep.checks.iter().all(|c| c.pass);
    rep
}

/// A replay-checked word for residue `g`: from the reduction when the case
/// tables apply, from BFS otherwise.
pub fn route_word(k: i64, g: i64) -> crate::Result<GeneratorWord> {
    let sys = build_system(k)?;
    let gens = generator_set(k)?;
    let x = lift_residue(g, gens.n)?;
    let word = if sys.has_case_tables() {
        word_from_certificate(&reduce(x, &sys)?, &gens)?
    } else {
        shortest_word(gens.n, gens.s, g)?
    };
    let reached = word.replay(&gens);
    if reached != g {
        return Err(Error::ReplayMismatch { reached, expected: g });
    }
    Ok(word)
}

/// Header line plus sorted `u v` edges.
pub fn edge_list(k: i64) -> crate::Result<String> {
    let gens = generator_set(k)?;
    let g = construct(k)?;
    let steps = gens.s.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
    let mut out = format!("# circulant n={} steps={steps}\n", gens.n);
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    Ok(out)
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

type Outcome = std::result::Result<i32, (i32, String)>;

fn fail(e: impl ToString) -> (i32, String) {
    (EXIT_FAIL, e.to_string())
}

fn usage(msg: impl Into<String>) -> (i32, String) {
    (EXIT_USAGE, msg.into())
}

fn io(e: std::io::Error) -> (i32, String) {
    (EXIT_FAIL, e.to_string())
}

fn execute(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Gen { k } => {
            let g = generator_set(k).map_err(fail)?;
            writeln!(out, "n={} gens={}", g.n, g.joined()).map_err(io)?;
            Ok(EXIT_PASS)
        }
        Command::Diameter { k } => {
            let g = construct(k).map_err(fail)?;
            match diameter(&g) {
                Some(d) => {
                    writeln!(out, "k={k} n={} diameter={d}", g.n()).map_err(io)?;
                    Ok(if d <= k { EXIT_PASS } else { EXIT_FAIL })
                }
                None => Err(fail("graph is disconnected")),
            }
        }
        Command::Route { k, g } => {
            let n = generator_set(k).map_err(fail)?.n;
            if !(0..n).contains(&g) {
                return Err(usage(format!("g must be in 0..{n}")));
            }
            let word = route_word(k, g).map_err(fail)?;
            writeln!(out, "word={word}").map_err(io)?;
            writeln!(out, "length={}", word.len()).map_err(io)?;
            Ok(if word.len() <= k { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Verify { k, level, json } => {
            if level == Level::Full && k > FULL_VERIFY_MAX_K {
                return Err(usage(format!("--level full needs k <= {FULL_VERIFY_MAX_K}")));
            }
            let rep = verify_report(k, level);
            if json {
                let text = serde_json::to_string_pretty(&rep).map_err(fail)?;
                writeln!(out, "{text}").map_err(io)?;
            } else {
                for c in &rep.checks {
                    writeln!(out, "{} {}: {}", if c.pass { "ok  " } else { "FAIL" }, c.name, c.detail).map_err(io)?;
                }
                writeln!(out, "verify k={k} level={level:?} pass={}", rep.pass).map_err(io)?;
            }
            match rep.first_failure() {
                None => Ok(EXIT_PASS),
                Some(c) => Err(fail(format!("check `{}` failed", c.name))),
            }
        }
        Command::Coverage { k } => {
            let sys = build_system(k).map_err(fail)?;
            if !sys.has_case_tables() {
                return Err(usage(Error::TablesUnavailable { k, min: crate::lattice::min_table_diameter(sys.parity()) }.to_string()));
            }
            let rep = verify_case_coverage(k).map_err(fail)?;
            writeln!(out, "{}", rep.render()).map_err(io)?;
            Ok(if rep.passed() { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Export { k, o } => {
            if k > EXPORT_MAX_K {
                return Err(usage(format!("export needs k <= {EXPORT_MAX_K}")));
            }
            let text = edge_list(k).map_err(fail)?;
            std::fs::write(&o, text).map_err(io)?;
            let n = generator_set(k).map_err(fail)?.n;
            writeln!(out, "wrote {} edges to {}", 4 * n, o.display()).map_err(io)?;
            Ok(EXIT_PASS)
        }
    }
}
