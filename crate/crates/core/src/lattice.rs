//! Points of Z^4 under the l1 metric and the two parity families of lattices
//! whose quotients give the degree-8 circulants.
//!
//! Everything here is exact integer arithmetic. A [`LatticeSystem`] bundles the
//! four basis vectors `v1..v4` together with the four derived vectors `v5..v8`;
//! the sixteen vectors `±v1..±v8` are the reduction targets used by
//! [`crate::reduction`].

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, MAX_DIAMETER};

/// A point of Z^4.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vec4(pub [i64; 4]);

impl Vec4 {
    pub const ZERO: Vec4 = Vec4([0; 4]);

    pub const fn new(c1: i64, c2: i64, c3: i64, c4: i64) -> Self {
        Vec4([c1, c2, c3, c4])
    }

    /// The i-th standard unit vector, 1-based.
    pub fn unit(i: usize) -> Self {
        assert!((1..=4).contains(&i), "unit vector index {i} out of range");
        let mut c = [0; 4];
        c[i - 1] = 1;
        Vec4(c)
    }

    pub fn coords(&self) -> [i64; 4] {
        self.0
    }

    pub fn l1_norm(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).sum()
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    /// Coordinatewise signum in {-1, 0, 1}.
    pub fn signs(&self) -> [i64; 4] {
        self.0.map(i64::signum)
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }
}

impl fmt::Display for Vec4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

impl Add for Vec4 {
    type Output = Vec4;
    fn add(self, rhs: Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for Vec4 {
    type Output = Vec4;
    fn sub(self, rhs: Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for Vec4 {
    type Output = Vec4;
    fn neg(self) -> Vec4 {
        Vec4(self.0.map(|c| -c))
    }
}

impl Mul<Vec4> for i64 {
    type Output = Vec4;
    fn mul(self, rhs: Vec4) -> Vec4 {
        Vec4(rhs.0.map(|c| self * c))
    }
}

impl AddAssign for Vec4 {
    fn add_assign(&mut self, rhs: Vec4) {
        *self = *self + rhs;
    }
}

impl SubAssign for Vec4 {
    fn sub_assign(&mut self, rhs: Vec4) {
        *self = *self - rhs;
    }
}

impl std::iter::Sum for Vec4 {
    fn sum<I: Iterator<Item = Vec4>>(iter: I) -> Vec4 {
        iter.fold(Vec4::ZERO, Add::add)
    }
}

/// l1 (Manhattan) norm.
pub fn l1_norm(x: Vec4) -> i64 {
    x.l1_norm()
}

/// l1 distance between two points.
pub fn l1_distance(x: Vec4, y: Vec4) -> i64 {
    (x - y).l1_norm()
}

/// True iff every coordinate of `y` lies in the closed interval spanned by the
/// corresponding coordinates of `x` and `z`. When it holds, the l1 distance is
/// additive through `y`.
pub fn lies_between(x: Vec4, y: Vec4, z: Vec4) -> bool {
    (0..4).all(|i| {
        let (lo, hi) = if x.0[i] <= z.0[i] { (x.0[i], z.0[i]) } else { (z.0[i], x.0[i]) };
        lo <= y.0[i] && y.0[i] <= hi
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(k: i64) -> Parity {
        if k.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub(crate) fn check_diameter(k: i64) -> Result<()> {
    if (2..=MAX_DIAMETER).contains(&k) {
        Ok(())
    } else {
        Err(Error::DiameterOutOfRange(k))
    }
}

/// The half-parameter `a`: `k/2` for even k, `(k+1)/2` for odd k.
pub fn half_param(k: i64) -> Result<i64> {
    check_diameter(k)?;
    Ok((k + 1) / 2)
}

/// The order L(8,k) of the constructed circulant.
pub fn order_formula(k: i64) -> Result<i64> {
    check_diameter(k)?;
    let (k2, k3, k4) = (k * k, k * k * k, k * k * k * k);
    let (numerator, formula) = match Parity::of(k) {
        Parity::Even => (k4 + 2 * k3 + 6 * k2 + 4 * k, "(k^4+2k^3+6k^2+4k)/2"),
        Parity::Odd => (k4 + 2 * k3 + 6 * k2 + 6 * k + 1, "(k^4+2k^3+6k^2+6k+1)/2"),
    };
    exact_div(numerator, 2, formula, k)
}

pub(crate) fn exact_div(num: i64, den: i64, formula: &'static str, k: i64) -> Result<i64> {
    if num % den != 0 {
        return Err(Error::InexactDivision { formula, k });
    }
    Ok(num / den)
}

/// Number of points of Z^4 within l1 distance `k` of the origin:
/// `sum_{i=0..4} 2^i C(4,i) C(k,i)`.
pub fn ball_size(k: i64) -> Result<i64> {
    if k < 0 {
        return Err(Error::NegativeRadius(k));
    }
    let choose = |n: i64, r: i64| -> i64 {
        if r > n {
            return 0;
        }
        (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
    };
    Ok((0..=4).map(|i| (1 << i) * choose(4, i) * choose(k, i)).sum())
}

/// Exact determinant of the 4x4 integer matrix with the given rows, by
/// cofactor expansion along the first row.
pub fn det4(rows: &[Vec4; 4]) -> i64 {
    let m = rows.map(|r| r.0);
    let det3 = |skip: usize| -> i64 {
        let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
        let e = |r: usize, c: usize| m[r][cols[c]];
        e(1, 0) * (e(2, 1) * e(3, 2) - e(2, 2) * e(3, 1)) - e(1, 1) * (e(2, 0) * e(3, 2) - e(2, 2) * e(3, 0))
            + e(1, 2) * (e(2, 0) * e(3, 1) - e(2, 1) * e(3, 0))
    };
    (0..4)
        .map(|c| {
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * m[0][c] * det3(c)
        })
        .sum()
}

/// Integer combination of four vectors.
pub fn combine(coeffs: [i64; 4], rows: &[Vec4; 4]) -> Vec4 {
    coeffs.iter().zip(rows).map(|(&c, &v)| c * v).sum()
}

/// A basis lattice vector `v1..v8` with a sign, written `+v3` / `-v3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeStep {
    /// 1-based index into `v1..v8`.
    pub index: u8,
    pub negative: bool,
}

impl LatticeStep {
    pub fn plus(index: usize) -> Self {
        assert!((1..=8).contains(&index));
        LatticeStep { index: index as u8, negative: false }
    }

    pub fn minus(index: usize) -> Self {
        assert!((1..=8).contains(&index));
        LatticeStep { index: index as u8, negative: true }
    }

    pub fn flipped(self) -> Self {
        LatticeStep { negative: !self.negative, ..self }
    }

    pub fn sign(self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    /// All sixteen `±v_i`, scanning `i = 1..8` with `+v_i` before `-v_i`.
    pub fn all() -> impl Iterator<Item = LatticeStep> {
        (1..=8).flat_map(|i| [LatticeStep::plus(i), LatticeStep::minus(i)])
    }
}

impl fmt::Display for LatticeStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}v{}", if self.negative { '-' } else { '+' }, self.index)
    }
}

/// Parity-resolved lattice data for one diameter `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSystem {
    k: i64,
    a: i64,
    parity: Parity,
    /// `v1..v8`; the first four form the basis.
    vectors: [Vec4; 8],
    order: i64,
}

impl LatticeSystem {
    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn basis(&self) -> [Vec4; 4] {
        [self.vectors[0], self.vectors[1], self.vectors[2], self.vectors[3]]
    }

    pub fn derived(&self) -> [Vec4; 4] {
        [self.vectors[4], self.vectors[5], self.vectors[6], self.vectors[7]]
    }

    pub fn vectors(&self) -> &[Vec4; 8] {
        &self.vectors
    }

    /// `v_i` for `i` in `1..=8`.
    pub fn v(&self, i: usize) -> Vec4 {
        self.vectors[i - 1]
    }

    pub fn step(&self, step: LatticeStep) -> Vec4 {
        step.sign() * self.v(step.index as usize)
    }

    /// Common l1 norm `2k+1` of every `v_i`.
    pub fn target_norm(&self) -> i64 {
        2 * self.k + 1
    }

    /// Bound on every coordinate after stage-1 reduction.
    pub fn box_bound(&self) -> i64 {
        self.a + 1
    }

    /// True when the orthant case tables apply (`a >= 2` even, `a >= 3` odd).
    pub fn has_case_tables(&self) -> bool {
        self.k >= min_table_diameter(self.parity)
    }
}

/// Smallest k of each parity covered by the orthant case tables.
pub fn min_table_diameter(parity: Parity) -> i64 {
    match parity {
        Parity::Even => 4,
        Parity::Odd => 5,
    }
}

/// Coefficients of `v5..v8` over `v1..v4`.
pub fn derived_combinations(parity: Parity) -> [[i64; 4]; 4] {
    match parity {
        Parity::Even => [[1, 0, -1, 1], [1, -1, 0, -1], [1, -1, -1, 0], [0, 1, -1, 1]],
        Parity::Odd => [[1, -1, 0, -1], [0, 1, 1, -1], [1, 0, 1, -1], [1, -1, -1, 0]],
    }
}

fn explicit_vectors(parity: Parity, a: i64) -> [Vec4; 8] {
    let v = Vec4::new;
    match parity {
        Parity::Even => [
            v(-a - 1, a + 1, a, -a + 1),
            v(a - 1, a + 1, a + 1, -a),
            v(-a - 1, -a + 1, a + 1, -a),
            v(-a, -a, a, a + 1),
            v(-a, a, a - 1, a + 2),
            v(-a, a, -a - 1, -a),
            v(-a + 1, a - 1, -a - 2, a + 1),
            v(a, a, a, a + 1),
        ],
        Parity::Odd => [
            v(-a + 1, a + 1, -a + 1, a),
            v(a + 1, a + 1, -a + 2, a - 1),
            v(-a - 1, a - 1, a - 1, -a),
            v(-a, a, a, a - 1),
            v(-a, -a, -a - 1, -a + 2),
            v(a, a, -a + 1, -a),
            v(-a, a, -a, -a + 1),
            v(-a + 1, -a + 1, -a, a + 1),
        ],
    }
}

/// Builds the lattice system for diameter `k` and checks its structural
/// invariants. `v5..v8` are stored as written and re-derived from the basis;
/// any disagreement is an error.
pub fn build_system(k: i64) -> Result<LatticeSystem> {
    let a = half_param(k)?;
    let parity = Parity::of(k);
    let order = order_formula(k)?;
    let vectors = explicit_vectors(parity, a);
    let basis = [vectors[0], vectors[1], vectors[2], vectors[3]];

    for (j, coeffs) in derived_combinations(parity).iter().enumerate() {
        if combine(*coeffs, &basis) != vectors[4 + j] {
            return Err(Error::DerivedMismatch { index: 5 + j, k });
        }
    }

    let sys = LatticeSystem { k, a, parity, vectors, order };
    let invariant = |what: String| Error::Invariant { k, what };

    let det = det4(&basis);
    if det.abs() != order {
        return Err(invariant(format!("|det| = {} but L(8,k) = {order}", det.abs())));
    }
    for (i, v) in vectors.iter().enumerate() {
        if v.l1_norm() != sys.target_norm() {
            return Err(invariant(format!("|v{}|_1 = {} != 2k+1", i + 1, v.l1_norm())));
        }
    }
    let bound_ok = match parity {
        Parity::Even => vectors.iter().enumerate().all(|(i, v)| {
            let big = v.0.iter().filter(|c| c.abs() == a + 2).count();
            v.max_abs() <= a + 2 && big == usize::from(i == 4 || i == 6)
        }),
        Parity::Odd => vectors.iter().all(|v| v.max_abs() <= a + 1),
    };
    if !bound_ok {
        return Err(invariant("coordinate magnitude bound".into()));
    }
    if !distinct_sign_patterns(&sys) {
        return Err(invariant("sign patterns of ±v_i are not distinct".into()));
    }
    if sys.has_case_tables() && !covers_all_orthants(&sys) {
        return Err(invariant("±v_i do not lie strictly inside all 16 orthants".into()));
    }
    Ok(sys)
}

/// The sixteen sign vectors of `±v1..±v8` (zero coordinates keep sign 0) are
/// pairwise distinct.
pub fn distinct_sign_patterns(sys: &LatticeSystem) -> bool {
    let mut pats: Vec<[i64; 4]> = LatticeStep::all().map(|s| sys.step(s).signs()).collect();
    pats.sort_unstable();
    pats.dedup();
    pats.len() == 16
}

/// Every `v_i` has nonzero coordinates and the sixteen `±v_i` hit every
/// orthant of Z^4 exactly once.
pub fn covers_all_orthants(sys: &LatticeSystem) -> bool {
    sys.vectors.iter().all(|v| v.0.iter().all(|&c| c != 0)) && distinct_sign_patterns(sys)
}
