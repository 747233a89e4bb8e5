//! Independent checks: a brute-force closest-vector oracle, the covering
//! claim over every residue, and an exhaustive audit of the case tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, construct};
use crate::lattice::{build_system, combine, lies_between, min_table_diameter, LatticeSystem, Parity, Vec4};
use crate::quotient::generator_set;
use crate::reduction::{apply_table, lift_residue, reduce, word_from_certificate};
use crate::rules::RuleTable;

/// Every point with all coordinates in `[-bound, bound]`, in lexicographic
/// order.
pub fn box_points(bound: i64) -> Vec<Vec4> {
    let r = -bound..=bound;
    let mut out = Vec::with_capacity((2 * bound as usize + 1).pow(4));
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    out.push(Vec4::new(a, b, c, d));
                }
            }
        }
    }
    out
}

/// Closest lattice point to `x` among `Σ c_i v_i` with `|c_i| <= window`.
pub fn cvp_oracle(x: Vec4, sys: &LatticeSystem, window: i64) -> (i64, Vec4) {
    let basis = sys.basis();
    let mut best = (x.l1_norm(), Vec4::ZERO);
    let r = -window..=window;
    for c1 in r.clone() {
        for c2 in r.clone() {
            for c3 in r.clone() {
                for c4 in r.clone() {
                    let w = combine([c1, c2, c3, c4], &basis);
                    let d = (x - w).l1_norm();
                    if d < best.0 || (d == best.0 && w < best.1) {
                        best = (d, w);
                    }
                }
            }
        }
    }
    best
}

fn push_sample(samples: &mut Vec<String>, line: String) {
    const MAX_SAMPLES: usize = 20;
    if samples.len() < MAX_SAMPLES {
        samples.push(line);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringReport {
    pub k: i64,
    pub n: i64,
    /// `"reduce+bfs"` when the case tables apply, `"bfs"` otherwise.
    pub method: String,
    pub bfs_eccentricity: i64,
    pub max_word_length: i64,
    pub worst_residues: Vec<i64>,
    pub failures: Vec<String>,
}

impl CoveringReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.max_word_length <= self.k && self.bfs_eccentricity <= self.k
    }

    pub fn summary(&self) -> String {
        format!(
            "covering k={} n={} method={} bfs_eccentricity={} max_word_length={} failures={} pass={}",
            self.k,
            self.n,
            self.method,
            self.bfs_eccentricity,
            self.max_word_length,
            self.failures.len(),
            self.passed()
        )
    }
}

/// Checks every residue of `Z_n` is within `k` steps of 0: by BFS, and for
/// `k` with case tables also by replaying the reduction's word from the
/// smallest lift `(g, 0, 0, 0)`.
pub fn verify_covering(k: i64) -> Result<CoveringReport> {
    let sys = build_system(k)?;
    let gens = generator_set(k)?;
    let dist = bfs_distances(&construct(k)?);
    let bfs_eccentricity = dist.iter().map(|&d| if d == u32::MAX { i64::MAX } else { i64::from(d) }).max().unwrap_or(0);
    let mut failures = Vec::new();

    let lengths: Vec<std::result::Result<i64, String>> = if sys.has_case_tables() {
        (0..gens.n)
            .into_par_iter()
            .map(|g| {
                let x = lift_residue(g, gens.n).map_err(|e| e.to_string())?;
                let cert = reduce(x, &sys).map_err(|e| format!("residue {g}: {e}"))?;
                let word = word_from_certificate(&cert, &gens).map_err(|e| format!("residue {g}: {e}"))?;
                let bfs = i64::from(dist[g as usize]);
                if word.len() < bfs {
                    return Err(format!("residue {g}: word of length {} beats BFS distance {bfs}", word.len()));
                }
                Ok(word.len())
            })
            .collect()
    } else {
        dist.iter().map(|&d| Ok(i64::from(d))).collect()
    };

    let mut max_word_length = 0;
    let mut worst_residues = Vec::new();
    for (g, r) in lengths.into_iter().enumerate() {
        match r {
            Ok(len) => {
                if len > k {
                    push_sample(&mut failures, format!("residue {g}: length {len} > k"));
                }
                if len > max_word_length {
                    max_word_length = len;
                    worst_residues.clear();
                }
                if len == max_word_length && worst_residues.len() < 8 {
                    worst_residues.push(g as i64);
                }
            }
            Err(msg) => push_sample(&mut failures, msg),
        }
    }
    if bfs_eccentricity > k {
        failures.push(format!("BFS eccentricity {bfs_eccentricity} > k"));
    }
    let method = if sys.has_case_tables() { "reduce+bfs" } else { "bfs" }.to_string();
    Ok(CoveringReport { k, n: gens.n, method, bfs_eccentricity, max_word_length, worst_residues, failures })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleHits {
    pub label: String,
    pub hits: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCoverageReport {
    pub k: i64,
    pub parity: Parity,
    pub box_points: usize,
    /// Per-orthant dispatches: points sign-compatible with `v_i` and not
    /// between 0 and `v_i`, counted once per such orthant.
    pub dispatched: u64,
    pub rule_hits: Vec<RuleHits>,
    pub no_match: u64,
    pub anchor_violations: u64,
    /// Points the end-to-end pipeline could not certify within `k`.
    pub pipeline_failures: u64,
    pub max_word_length: i64,
    pub samples: Vec<String>,
}

impl CaseCoverageReport {
    pub fn passed(&self) -> bool {
        self.no_match == 0 && self.anchor_violations == 0 && self.pipeline_failures == 0 && self.max_word_length <= self.k
    }

    pub fn dead_rules(&self) -> Vec<&str> {
        self.rule_hits.iter().filter(|r| r.hits == 0).map(|r| r.label.as_str()).collect()
    }

    pub fn summary(&self) -> String {
        format!(
            "coverage k={} parity={} points={} dispatched={} rules={} dead_rules={} no_match={} anchor_violations={} pipeline_failures={} max_word_length={} pass={}",
            self.k,
            self.parity,
            self.box_points,
            self.dispatched,
            self.rule_hits.len(),
            self.dead_rules().len(),
            self.no_match,
            self.anchor_violations,
            self.pipeline_failures,
            self.max_word_length,
            self.passed()
        )
    }

    /// Summary line, then one line per sample finding and per dead rule.
    pub fn render(&self) -> String {
        let mut out = self.summary();
        for s in &self.samples {
            let _ = write!(out, "\nfinding {s}");
        }
        for d in self.dead_rules() {
            let _ = write!(out, "\ndead {d}");
        }
        out
    }
}

#[derive(Default)]
struct PointOutcome {
    hits: Vec<usize>,
    dispatched: u64,
    no_match: u64,
    violations: u64,
    pipeline_failed: bool,
    word_length: i64,
    notes: Vec<String>,
}

/// Sweeps the box `|x_i| <= a+1`. Each orthant table is audited on its own
/// domain, and the whole pipeline is run on every point.
pub fn verify_case_coverage(k: i64) -> Result<CaseCoverageReport> {
    let sys = build_system(k)?;
    if !sys.has_case_tables() {
        return Err(Error::TablesUnavailable { k, min: min_table_diameter(sys.parity()) });
    }
    let table = RuleTable::builtin(sys.parity());
    let points = box_points(sys.box_bound());

    let outcomes: Vec<PointOutcome> = points
        .par_iter()
        .map(|&x| {
            let mut out = PointOutcome::default();
            for i in 1..=8 {
                let v = sys.v(i);
                let compatible = (0..4).all(|j| x.0[j] == 0 || x.0[j].signum() == v.0[j].signum());
                if !compatible || lies_between(Vec4::ZERO, x, v) {
                    continue;
                }
                out.dispatched += 1;
                match apply_table(table, i, x, &sys) {
                    Ok((app, rule)) => {
                        out.hits.push(app.rule_index);
                        if !app.anchored {
                            out.violations += 1;
                            out.notes.push(format!(
                                "anchor_violation rule=\"{}\" point={x} reached={} anchor={}",
                                rule.label(),
                                app.reached,
                                rule.anchor
                            ));
                        }
                    }
                    Err(_) => {
                        out.no_match += 1;
                        out.notes.push(format!("no_match orthant=v{i} point={x}"));
                    }
                }
            }
            match reduce(x, &sys).and_then(|c| c.check(&sys).map(|_| c)) {
                Ok(c) => out.word_length = c.word_length,
                Err(e) => {
                    out.pipeline_failed = true;
                    out.notes.push(format!("pipeline point={x} error=\"{e}\""));
                }
            }
            out
        })
        .collect();

    let mut counts = vec![0u64; table.len()];
    let mut report = CaseCoverageReport {
        k,
        parity: sys.parity(),
        box_points: points.len(),
        dispatched: 0,
        rule_hits: Vec::new(),
        no_match: 0,
        anchor_violations: 0,
        pipeline_failures: 0,
        max_word_length: 0,
        samples: Vec::new(),
    };
    for o in outcomes {
        for h in o.hits {
            counts[h] += 1;
        }
        report.dispatched += o.dispatched;
        report.no_match += o.no_match;
        report.anchor_violations += o.violations;
        report.pipeline_failures += u64::from(o.pipeline_failed);
        report.max_word_length = report.max_word_length.max(o.word_length);
        for n in o.notes {
            push_sample(&mut report.samples, n);
        }
    }
    report.rule_hits =
        table.rules().iter().zip(counts).map(|(r, hits)| RuleHits { label: r.label(), hits }).collect();
    Ok(report)
}

/// Labels of rules that fired in none of the given reports.
pub fn dead_across(reports: &[CaseCoverageReport]) -> Vec<String> {
    let mut total: BTreeMap<&str, u64> = BTreeMap::new();
    for r in reports {
        for h in &r.rule_hits {
            *total.entry(h.label.as_str()).or_default() += h.hits;
        }
    }
    total.into_iter().filter(|&(_, h)| h == 0).map(|(l, _)| l.to_string()).collect()
}
