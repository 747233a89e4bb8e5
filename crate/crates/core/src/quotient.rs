//! The isomorphism `Z^4 / L_k -> Z_n`.
//!
//! `e1` maps to 1, and three integer combinations of the basis give lattice
//! vectors of the form `c e1 - e_j`, which pins `e2, e3, e4` to the multiples
//! `s2, s3, s4` of `e1`. Together with `|det| = n` this proves the quotient is
//! cyclic of order `n` and yields the circulant's connection set.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{check_diameter, combine, det4, exact_div, order_formula, LatticeSystem, Parity, Vec4};

/// The four generators `1, s2, s3, s4` of `Z_n`, each reduced into `1..n-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSet {
    pub n: i64,
    pub s: [i64; 4],
}

impl GeneratorSet {
    /// The generators sorted ascending, as the circulant's step list.
    pub fn sorted_steps(&self) -> Vec<i64> {
        let mut steps = self.s.to_vec();
        steps.sort_unstable();
        steps
    }

    /// `1,s2,s3,s4` in generator order.
    pub fn joined(&self) -> String {
        self.s.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
    }

    /// No generator is an involution and no two coincide up to sign, so the
    /// Cayley graph is 8-regular.
    pub fn is_degree_eight(&self) -> bool {
        let n = self.n;
        let in_range = self.s.iter().all(|&s| 0 < s && s < n && 2 * s != n);
        let separated = (0..4).all(|i| {
            (i + 1..4).all(|j| {
                let (a, b) = (self.s[i], self.s[j]);
                a != b && (a + b) % n != 0
            })
        });
        self.s[0] == 1 && in_range && separated
    }
}

pub fn generator_set(k: i64) -> Result<GeneratorSet> {
    check_diameter(k)?;
    let n = order_formula(k)?;
    let (k2, k3, k4) = (k * k, k * k * k, k * k * k * k);
    let raw = match Parity::of(k) {
        Parity::Even => [
            exact_div(k3 + 2 * k2 + 6 * k + 2, 2, "(k^3+2k^2+6k+2)/2", k)?,
            exact_div(k4 + 4 * k2 - 8 * k, 4, "(k^4+4k^2-8k)/4", k)?,
            exact_div(k4 + 4 * k2 - 4 * k, 4, "(k^4+4k^2-4k)/4", k)?,
        ],
        Parity::Odd => [
            exact_div(k3 + k2 + 5 * k + 3, 2, "(k^3+k^2+5k+3)/2", k)?,
            exact_div(k4 + 2 * k2 - 8 * k - 11, 4, "(k^4+2k^2-8k-11)/4", k)?,
            exact_div(k4 + 2 * k2 - 4 * k - 7, 4, "(k^4+2k^2-4k-7)/4", k)?,
        ],
    };
    let set = GeneratorSet { n, s: [1, raw[0].rem_euclid(n), raw[1].rem_euclid(n), raw[2].rem_euclid(n)] };
    if !set.is_degree_eight() {
        return Err(Error::Invariant { k, what: format!("generator set {} is degenerate", set.joined()) });
    }
    Ok(set)
}

/// A basis combination that lands on `c e1 - e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComboIdentity {
    /// Which unit vector (2, 3 or 4) this identity expresses through `e1`.
    pub target: usize,
    pub coefficients: [i64; 4],
    pub expected: Vec4,
}

impl ComboIdentity {
    /// The constant `c` in `expected = (c, ..)`.
    pub fn constant(&self) -> i64 {
        self.expected.0[0]
    }

    pub fn holds(&self, basis: &[Vec4; 4]) -> bool {
        combine(self.coefficients, basis) == self.expected
    }

    pub fn label(&self) -> String {
        format!("e{} = {}*e1", self.target, self.constant())
    }
}

/// The three parity-specific combinations, with right-hand sides as closed
/// forms in `a`.
pub fn combo_identities(sys: &LatticeSystem) -> Vec<ComboIdentity> {
    let a = sys.a();
    let (a2, a3, a4) = (a * a, a * a * a, a * a * a * a);
    let rows: [([i64; 4], i64); 3] = match sys.parity() {
        Parity::Even => [
            ([-(2 * a2 + 2 * a + 1), 2 * a2 + a + 2, -(a + 2), 1], 4 * a3 + 4 * a2 + 6 * a + 1),
            ([-(2 * a3 - 1), 2 * a3 - a2 + 2 * a - 2, -(a2 + a - 1), a - 1], 4 * a4 + 4 * a2 - 4 * a),
            ([-2 * a3, 2 * a3 - a2 + 2 * a - 1, -(a2 + a - 1), a - 1], 4 * a4 + 4 * a2 - 2 * a),
        ],
        // Solved from the basis; the constants are the odd generators.
        Parity::Odd => [
            ([-(2 * a2 - 3 * a + 2), 2 * a2 - 2 * a + 1, -a, -1], 4 * a3 - 4 * a2 + 6 * a - 1),
            (
                [-(2 * a3 - 5 * a2 + 4 * a - 2), 2 * a3 - 4 * a2 + 2 * a - 1, -(a2 - a - 1), -(a - 1)],
                4 * a4 - 8 * a3 + 8 * a2 - 8 * a,
            ),
            (
                [-(2 * a3 - 5 * a2 + 4 * a - 1), 2 * a3 - 4 * a2 + 2 * a, -(a2 - a - 1), -(a - 1)],
                4 * a4 - 8 * a3 + 8 * a2 - 6 * a,
            ),
        ],
    };
    rows.iter()
        .enumerate()
        .map(|(j, &(coefficients, c))| {
            let mut expected = Vec4::new(c, 0, 0, 0);
            expected.0[j + 1] = -1;
            ComboIdentity { target: j + 2, coefficients, expected }
        })
        .collect()
}

/// Image of `x` in `Z_n`: `x1 + x2 s2 + x3 s3 + x4 s4 mod n`.
pub fn project(x: Vec4, sys: &LatticeSystem, gens: &GeneratorSet) -> i64 {
    debug_assert_eq!(gens.n, sys.order());
    project_with(x, gens)
}

pub fn project_with(x: Vec4, gens: &GeneratorSet) -> i64 {
    let n = i128::from(gens.n);
    let sum: i128 = x.0.iter().zip(gens.s).map(|(&c, s)| i128::from(c) * i128::from(s)).sum();
    sum.rem_euclid(n) as i64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicReport {
    pub is_cyclic: bool,
    pub order: i64,
    /// The first failed condition, if any.
    pub failure: Option<String>,
}

pub fn verify_cyclic(sys: &LatticeSystem) -> CyclicReport {
    verify_cyclic_basis(sys, &sys.basis())
}

/// Cyclicity check against an explicit basis, which may differ from the
/// system's own (used to confirm a perturbed basis is rejected).
pub fn verify_cyclic_basis(sys: &LatticeSystem, basis: &[Vec4; 4]) -> CyclicReport {
    let order = sys.order();
    let fail = |why: String| CyclicReport { is_cyclic: false, order, failure: Some(why) };

    let det = det4(basis).abs();
    if det != order {
        return fail(format!("|det| = {det}, expected {order}"));
    }
    for id in combo_identities(sys) {
        if !id.holds(basis) {
            return fail(format!("identity {} does not expand to {}", id.label(), id.expected));
        }
    }
    CyclicReport { is_cyclic: true, order, failure: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_system;

    #[test]
    fn generator_examples() {
        assert_eq!(generator_set(2).unwrap(), GeneratorSet { n: 32, s: [1, 15, 4, 6] });
        assert_eq!(generator_set(3).unwrap(), GeneratorSet { n: 104, s: [1, 27, 16, 20] });
        assert_eq!(generator_set(4).unwrap(), GeneratorSet { n: 248, s: [1, 61, 72, 76] });
        assert!(generator_set(1).is_err());
    }

    #[test]
    fn combo_examples() {
        let s4 = build_system(4).unwrap();
        let ids = combo_identities(&s4);
        assert_eq!(ids[0].coefficients, [-13, 12, -4, 1]);
        assert_eq!(ids[0].expected, Vec4::new(61, -1, 0, 0));
        assert!(ids.iter().all(|id| id.holds(&s4.basis())));

        let s3 = build_system(3).unwrap();
        let ids = combo_identities(&s3);
        assert_eq!(ids[0].coefficients, [-4, 5, -2, -1]);
        assert_eq!(ids[0].expected, Vec4::new(27, -1, 0, 0));
        assert!(ids.iter().all(|id| id.holds(&s3.basis())));
    }

    #[test]
    fn odd_coefficients_are_unique() {
        // The basis is invertible, so any other row misses the target.
        let s3 = build_system(3).unwrap();
        assert_eq!(combine([-12, 13, -2, -1], &s3.basis()), Vec4::new(59, -1, 8, -8));
    }

    #[test]
    fn projection_examples() {
        let s4 = build_system(4).unwrap();
        let g4 = generator_set(4).unwrap();
        assert_eq!(project(Vec4::unit(1), &s4, &g4), 1);
        assert_eq!(project(s4.v(1), &s4, &g4), 0);
        let s2 = build_system(2).unwrap();
        let g2 = generator_set(2).unwrap();
        assert_eq!(project(Vec4::new(1, 1, 0, 0), &s2, &g2), 16);
        for id in combo_identities(&s4) {
            let lifted = id.expected + Vec4::unit(id.target);
            assert_eq!(lifted, Vec4::new(id.constant(), 0, 0, 0));
            assert_eq!(project(id.expected, &s4, &g4), 0);
        }
    }

    #[test]
    fn cyclic_reports() {
        let r = verify_cyclic(&build_system(2).unwrap());
        assert_eq!((r.is_cyclic, r.order), (true, 32));
        let r = verify_cyclic(&build_system(5).unwrap());
        assert_eq!((r.is_cyclic, r.order), (true, 528));

        let sys = build_system(6).unwrap();
        let mut basis = sys.basis();
        basis[0].0[2] += 1;
        let r = verify_cyclic_basis(&sys, &basis);
        assert!(!r.is_cyclic);
        assert!(r.failure.unwrap().contains("det"));
    }
}
