//! Certified reduction of a point of Z^4 to within l1 distance `k` of `L_k`.
//!
//! Stage 1 subtracts sign-matched `±v_i` until every coordinate is at most
//! `a+1` in absolute value. A point between `0` and some `±v_i` is then
//! settled directly; anything else goes through the orthant case tables.
//! Every move is recorded as a lattice vector *added* to the point, so the
//! certified lattice point is `anchor - Σ moves` and the residual is
//! `input + Σ moves - anchor`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{lies_between, LatticeStep, LatticeSystem, Vec4};
use crate::quotient::{project_with, GeneratorSet};
use crate::rules::{CaseRule, RuleTable};

/// Endpoint a reduced point is measured against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Anchor {
    Origin,
    Step(LatticeStep),
}

impl Anchor {
    pub fn endpoint(self, sys: &LatticeSystem) -> Vec4 {
        match self {
            Anchor::Origin => Vec4::ZERO,
            Anchor::Step(s) => sys.step(s),
        }
    }

    pub fn negated(self) -> Anchor {
        match self {
            Anchor::Origin => Anchor::Origin,
            Anchor::Step(s) => Anchor::Step(s.flipped()),
        }
    }
}

impl fmt::Display for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Anchor::Origin => f.write_str("0"),
            Anchor::Step(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub input: Vec4,
    /// Lattice vectors added during stage 1.
    pub stage1_moves: Vec<LatticeStep>,
    /// Label of the case rule used, if stage 2 ran.
    pub stage2_case: Option<String>,
    pub stage2_moves: Vec<LatticeStep>,
    pub anchor: Anchor,
    /// `input - w`.
    pub residual: Vec4,
    pub word_length: i64,
}

impl Certificate {
    pub fn moves(&self) -> impl Iterator<Item = LatticeStep> + '_ {
        self.stage1_moves.iter().chain(&self.stage2_moves).copied()
    }

    pub fn moves_sum(&self, sys: &LatticeSystem) -> Vec4 {
        self.moves().map(|s| sys.step(s)).sum()
    }

    /// The certified lattice point `w`.
    pub fn lattice_point(&self, sys: &LatticeSystem) -> Vec4 {
        self.anchor.endpoint(sys) - self.moves_sum(sys)
    }

    /// Re-checks the certificate's internal bookkeeping and its bound.
    pub fn check(&self, sys: &LatticeSystem) -> Result<()> {
        let invariant = |what: String| Error::Invariant { k: sys.k(), what };
        let y = self.input + self.moves_sum(sys);
        if y - self.anchor.endpoint(sys) != self.residual {
            return Err(invariant(format!("residual {} does not balance for input {}", self.residual, self.input)));
        }
        if self.residual.l1_norm() != self.word_length {
            return Err(invariant(format!("word length {} != |{}|_1", self.word_length, self.residual)));
        }
        if self.word_length > sys.k() {
            return Err(invariant(format!("word length {} exceeds k for input {}", self.word_length, self.input)));
        }
        Ok(())
    }
}

/// `(i, negated)` such that `x` (or `-x`) is sign-compatible with `v_i`.
/// Scans `+v1, -v1, +v2, ...`; zero coordinates match either sign.
pub fn canonical_orthant(x: Vec4, sys: &LatticeSystem) -> (usize, bool) {
    LatticeStep::all()
        .find(|&s| sign_compatible(x, sys.step(s)))
        .map(|s| (s.index as usize, s.negative))
        .expect("the sixteen ±v_i cover every orthant")
}

fn sign_compatible(x: Vec4, v: Vec4) -> bool {
    (0..4).all(|i| x.0[i] == 0 || x.0[i].signum() == v.0[i].signum())
}

/// Sum of `max(0, |x_i| - (a+1))`.
pub fn excess(x: Vec4, sys: &LatticeSystem) -> i64 {
    x.0.iter().map(|c| (c.abs() - sys.box_bound()).max(0)).sum()
}

/// The `±v_i` stage 1 subtracts from `x`: first in scan order whose signs
/// agree with every nonzero coordinate of `x` and whose entries at the zero
/// coordinates of `x` stay within `a+1`.
pub fn stage1_choice(x: Vec4, sys: &LatticeSystem) -> Option<LatticeStep> {
    let bound = sys.box_bound();
    LatticeStep::all().find(|&s| {
        let v = sys.step(s);
        (0..4).all(|i| match x.0[i] {
            0 => v.0[i].abs() <= bound,
            c => c.signum() == v.0[i].signum(),
        })
    })
}

/// Shrinks `x` into the box `|x_i| <= a+1`. Returns the reduced point and
/// the lattice vectors added on the way.
pub fn stage1_reduce(x: Vec4, sys: &LatticeSystem) -> Result<(Vec4, Vec<LatticeStep>)> {
    let cap = usize::try_from(x.l1_norm()).unwrap_or(usize::MAX).saturating_add(8);
    let mut cur = x;
    let mut moves = Vec::new();
    while cur.max_abs() > sys.box_bound() {
        if moves.len() >= cap {
            return Err(Error::Stage1Stalled { input: x, cap });
        }
        let step = stage1_choice(cur, sys).ok_or(Error::Stage1Stalled { input: x, cap })?;
        let next = cur - sys.step(step);
        debug_assert!(excess(next, sys) < excess(cur, sys), "stage-1 excess must strictly drop at {cur}");
        moves.push(step.flipped());
        cur = next;
    }
    Ok((cur, moves))
}

/// Settles a point `y` known to lie between `0` and `v`: whichever endpoint
/// is within `k` becomes the anchor.
fn settle(y: Vec4, v: Anchor, sys: &LatticeSystem) -> (Anchor, Vec4) {
    if y.l1_norm() <= sys.k() {
        (Anchor::Origin, y)
    } else {
        (v, y - v.endpoint(sys))
    }
}

/// Certificate for a reduced `x` lying between `0` and some `±v_i`, if any.
pub fn between_anchor(x: Vec4, sys: &LatticeSystem) -> Option<Certificate> {
    let step = LatticeStep::all().find(|&s| lies_between(Vec4::ZERO, x, sys.step(s)))?;
    let (anchor, residual) = settle(x, Anchor::Step(step), sys);
    Some(Certificate {
        input: x,
        stage1_moves: Vec::new(),
        stage2_case: None,
        stage2_moves: Vec::new(),
        anchor,
        residual,
        word_length: residual.l1_norm(),
    })
}

/// Outcome of applying one case rule to a point already normalised into its
/// orthant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleApplication {
    pub rule_index: usize,
    pub reached: Vec4,
    pub anchored: bool,
}

/// Dispatches `z` (in the orthant of `+v_orthant`) to the first matching rule
/// and applies it.
pub fn apply_table<'t>(
    table: &'t RuleTable,
    orthant: usize,
    z: Vec4,
    sys: &LatticeSystem,
) -> Result<(RuleApplication, &'t CaseRule)> {
    let (idx, rule) = table.dispatch(orthant, z, sys.a()).ok_or(Error::NoMatchingCase { point: z, orthant })?;
    let reached = z + rule.moves.iter().map(|&s| sys.step(s)).sum::<Vec4>();
    let anchored = lies_between(Vec4::ZERO, reached, sys.step(rule.anchor));
    Ok((RuleApplication { rule_index: idx, reached, anchored }, rule))
}

/// Resolves a reduced `x` in the given orthant that is not between `0` and
/// `±v_orthant`. `negated` says whether `x` sits in the orthant of `-v_orthant`.
pub fn stage2_resolve(x: Vec4, orthant: usize, negated: bool, sys: &LatticeSystem) -> Result<Certificate> {
    if !sys.has_case_tables() {
        return Err(Error::TablesUnavailable { k: sys.k(), min: crate::lattice::min_table_diameter(sys.parity()) });
    }
    if x.max_abs() > sys.box_bound() {
        return Err(Error::OutsideBox(x));
    }
    let table = RuleTable::builtin(sys.parity());
    let z = if negated { -x } else { x };
    let (app, rule) = apply_table(table, orthant, z, sys)?;
    if !app.anchored {
        return Err(Error::AnchorViolation {
            rule: rule.label(),
            point: z,
            reached: app.reached,
            anchor: rule.anchor.to_string(),
        });
    }
    let orient = |s: LatticeStep| if negated { s.flipped() } else { s };
    let moves: Vec<LatticeStep> = rule.moves.iter().map(|&s| orient(s)).collect();
    let reached = if negated { -app.reached } else { app.reached };
    let (anchor, residual) = settle(reached, Anchor::Step(orient(rule.anchor)), sys);
    Ok(Certificate {
        input: x,
        stage1_moves: Vec::new(),
        stage2_case: Some(rule.label()),
        stage2_moves: moves,
        anchor,
        residual,
        word_length: residual.l1_norm(),
    })
}

/// Full pipeline: stage 1, then a direct anchor, then the case tables.
pub fn reduce(x: Vec4, sys: &LatticeSystem) -> Result<Certificate> {
    if !sys.has_case_tables() {
        return Err(Error::TablesUnavailable { k: sys.k(), min: crate::lattice::min_table_diameter(sys.parity()) });
    }
    let (y, stage1_moves) = stage1_reduce(x, sys)?;
    let mut cert = match between_anchor(y, sys) {
        Some(c) => c,
        None => {
            let (orthant, negated) = canonical_orthant(y, sys);
            stage2_resolve(y, orthant, negated, sys)?
        }
    };
    cert.input = x;
    cert.stage1_moves = stage1_moves;
    debug_assert!(cert.check(sys).is_ok());
    Ok(cert)
}

/// A word in the generators `s1..s4`: `counts[i]` steps of `s_{i+1}`,
/// negative counts meaning inverse steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorWord {
    pub counts: [i64; 4],
}

impl GeneratorWord {
    pub fn len(&self) -> i64 {
        self.counts.iter().map(|c| c.abs()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Individual signed steps `(generator 1..=4, ±1)` in generator order.
    pub fn steps(&self) -> Vec<(usize, i64)> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n((i + 1, c.signum()), c.unsigned_abs() as usize))
            .collect()
    }

    /// The residue reached from 0.
    pub fn replay(&self, gens: &GeneratorSet) -> i64 {
        project_with(Vec4(self.counts), gens)
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.steps().iter().map(|&(i, sg)| format!("{}s{i}", if sg < 0 { '-' } else { '+' })).collect();
        if parts.is_empty() {
            f.write_str("(empty)")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// Reads the word off the certificate's residual and replays it.
pub fn word_from_certificate(cert: &Certificate, gens: &GeneratorSet) -> Result<GeneratorWord> {
    let word = GeneratorWord { counts: cert.residual.0 };
    let (reached, expected) = (word.replay(gens), project_with(cert.input, gens));
    if reached != expected {
        return Err(Error::ReplayMismatch { reached, expected });
    }
    Ok(word)
}

/// The lift of a residue with the smallest absolute value.
pub fn lift_residue(g: i64, n: i64) -> Result<Vec4> {
    if !(0..n).contains(&g) {
        return Err(Error::ResidueOutOfRange { g, n });
    }
    let g = if 2 * g > n { g - n } else { g };
    Ok(Vec4::new(g, 0, 0, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_system;
    use crate::quotient::generator_set;

    #[test]
    fn orthant_examples() {
        let s = build_system(4).unwrap();
        assert_eq!(canonical_orthant(s.v(1), &s), (1, false));
        assert_eq!(canonical_orthant(-s.v(3), &s), (3, true));
        assert_eq!(canonical_orthant(Vec4::ZERO, &s), (1, false));
    }

    #[test]
    fn stage1_examples() {
        let s = build_system(4).unwrap();
        let inside = Vec4::new(3, -3, 0, 2);
        assert_eq!(stage1_reduce(inside, &s).unwrap(), (inside, vec![]));

        let x = s.v(1) + s.v(8);
        assert_eq!(x, Vec4::new(-1, 5, 4, 2));
        let (y, moves) = stage1_reduce(x, &s).unwrap();
        assert!(y.max_abs() <= 3);
        assert_eq!(y - x, moves.iter().map(|&m| s.step(m)).sum());

        let far = Vec4::new(100, 0, 0, 0);
        let (y, moves) = stage1_reduce(far, &s).unwrap();
        assert!(y.max_abs() <= 3 && moves.len() <= 108);
    }

    #[test]
    fn stage1_even_zero_preferences() {
        let s = build_system(6).unwrap();
        // e3 = 0 with the sign pattern of v5 / v7: v7 would push e3 to a+2.
        assert_eq!(stage1_choice(Vec4::new(-9, 9, 0, 9), &s), Some(LatticeStep::plus(5)));
        // e4 = 0 with the sign pattern of v1 / v5: v5 would push e4 to a+2.
        assert_eq!(stage1_choice(Vec4::new(-9, 9, 9, 0), &s), Some(LatticeStep::plus(1)));
        assert_eq!(stage1_choice(Vec4::new(-9, 9, 0, 0), &s), Some(LatticeStep::plus(1)));
    }

    #[test]
    fn between_examples() {
        let s = build_system(4).unwrap();
        let c = between_anchor(Vec4::ZERO, &s).unwrap();
        assert_eq!((c.anchor, c.word_length), (Anchor::Origin, 0));
        let c = between_anchor(s.v(2), &s).unwrap();
        assert_eq!((c.anchor, c.word_length), (Anchor::Step(LatticeStep::plus(2)), 0));
        let c = between_anchor(Vec4::new(-3, 3, 2, 0), &s).unwrap();
        assert_eq!((c.anchor, c.word_length), (Anchor::Step(LatticeStep::plus(1)), 1));
        // between 0 and v2 = (1,3,3,-2), l1 = 5 > 4
        let c = between_anchor(Vec4::new(0, 0, 3, -2), &s).unwrap();
        assert_eq!((c.anchor, c.word_length), (Anchor::Step(LatticeStep::plus(2)), 4));
        assert!(between_anchor(Vec4::new(3, 3, 3, 3), &s).is_none());
    }

    #[test]
    fn stage2_examples() {
        let s = build_system(4).unwrap();
        let c = stage2_resolve(Vec4::new(0, 0, 3, -2), 1, false, &s).unwrap();
        assert_eq!(c.stage2_case.as_deref(), Some("even v1 case 1c"));
        assert_eq!(c.stage2_moves, vec![LatticeStep::minus(1), LatticeStep::plus(7), LatticeStep::plus(1)]);
        c.check(&s).unwrap();

        let c = stage2_resolve(Vec4::new(3, 3, 3, 0), 8, false, &s).unwrap();
        assert_eq!(c.stage2_case.as_deref(), Some("even v8 case 1b"));
        assert_eq!(c.stage2_moves, vec![LatticeStep::minus(8), LatticeStep::minus(2)]);

        let s5 = build_system(5).unwrap();
        let c = stage2_resolve(Vec4::new(-4, -4, 0, -3), 5, false, &s5).unwrap();
        assert_eq!(c.stage2_case.as_deref(), Some("odd v5 case 1b"));
        assert_eq!(c.stage2_moves, vec![LatticeStep::minus(5), LatticeStep::plus(2)]);
        c.check(&s5).unwrap();
    }

    #[test]
    fn reduce_examples() {
        let s = build_system(4).unwrap();
        assert_eq!(reduce(Vec4::ZERO, &s).unwrap().word_length, 0);
        let s5 = build_system(5).unwrap();
        let c = reduce(Vec4::new(4, 4, -4, -4), &s5).unwrap();
        c.check(&s5).unwrap();
        assert!(c.word_length <= 5);
        assert!(matches!(reduce(Vec4::ZERO, &build_system(3).unwrap()), Err(Error::TablesUnavailable { .. })));
    }

    #[test]
    fn word_examples() {
        let gens = generator_set(4).unwrap();
        let w = GeneratorWord { counts: [1, -1, 0, 2] };
        assert_eq!(w.len(), 4);
        assert_eq!(w.to_string(), "+s1 -s2 +s4 +s4");
        assert_eq!(GeneratorWord { counts: [0; 4] }.to_string(), "(empty)");

        let s = build_system(4).unwrap();
        let c = reduce(Vec4::unit(1), &s).unwrap();
        let w = word_from_certificate(&c, &gens).unwrap();
        assert_eq!(w.counts, [1, 0, 0, 0]);
        for g in 0..gens.n {
            let c = reduce(lift_residue(g, gens.n).unwrap(), &s).unwrap();
            let w = word_from_certificate(&c, &gens).unwrap();
            assert_eq!(w.replay(&gens), g);
            assert!(w.len() <= 4);
        }
    }
}
