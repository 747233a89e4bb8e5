//! Circulant graphs and breadth-first search from vertex 0.
//!
//! Circulants are vertex-transitive, so the eccentricity of 0 is the
//! diameter. Neighbours are computed arithmetically; only a distance array of
//! length `n` is stored.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::check_diameter;
use crate::quotient::generator_set;
use crate::reduction::GeneratorWord;

/// Undirected circulant `C_n(steps)`: `i ~ i ± s` for every step `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CirculantGraph {
    n: i64,
    /// Sorted connection set; each step's inverse `n - s` is implied.
    connection: Vec<i64>,
}

impl CirculantGraph {
    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn connection(&self) -> &[i64] {
        &self.connection
    }

    pub fn degree(&self) -> usize {
        2 * self.connection.len()
    }

    /// Signed offsets `+s, -s` for each step, in connection order.
    fn offsets(&self) -> Vec<i64> {
        self.connection.iter().flat_map(|&s| [s, self.n - s]).collect()
    }

    /// Undirected edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(i64, i64)> {
        let n = self.n;
        let mut out: Vec<(i64, i64)> = (0..n)
            .flat_map(|u| self.connection.iter().map(move |&s| (u, (u + s) % n)))
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        out.sort_unstable();
        out
    }
}

pub fn build_circulant(n: i64, steps: &[i64]) -> Result<CirculantGraph> {
    let bad = |msg: String| Err(Error::InvalidCirculant(msg));
    if n < 2 {
        return bad(format!("n = {n} is too small"));
    }
    if steps.is_empty() {
        return bad("empty connection set".into());
    }
    let mut connection = steps.to_vec();
    connection.sort_unstable();
    for (i, &s) in connection.iter().enumerate() {
        if !(1..n).contains(&s) {
            return bad(format!("step {s} is outside 1..{n}"));
        }
        if 2 * s == n {
            return bad(format!("step {s} is an involution in Z_{n}"));
        }
        if let Some(&t) = connection[i + 1..].iter().find(|&&t| t == s || t + s == n) {
            return bad(format!("steps {s} and {t} give the same neighbours"));
        }
    }
    Ok(CirculantGraph { n, connection })
}

/// The degree-8 circulant of diameter `k`.
pub fn construct(k: i64) -> Result<CirculantGraph> {
    check_diameter(k)?;
    let gens = generator_set(k)?;
    build_circulant(gens.n, &gens.s)
}

/// BFS distances from vertex 0; `u32::MAX` marks unreachable vertices.
pub fn bfs_distances(g: &CirculantGraph) -> Vec<u32> {
    let n = g.n as usize;
    let offsets = g.offsets();
    let mut dist = vec![u32::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    dist[0] = 0;
    queue.push_back(0i64);
    while let Some(u) = queue.pop_front() {
        let d = dist[u as usize] + 1;
        for &off in &offsets {
            let v = (u + off) % g.n;
            let slot = &mut dist[v as usize];
            if *slot == u32::MAX {
                *slot = d;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Exact diameter, or `None` when the graph is disconnected.
pub fn diameter(g: &CirculantGraph) -> Option<i64> {
    let dist = bfs_distances(g);
    if dist.contains(&u32::MAX) {
        None
    } else {
        dist.iter().max().map(|&d| i64::from(d))
    }
}

/// Number of vertices at each distance from 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceProfile {
    pub histogram: Vec<i64>,
}

impl DistanceProfile {
    pub fn total(&self) -> i64 {
        self.histogram.iter().sum()
    }

    pub fn eccentricity(&self) -> i64 {
        self.histogram.len() as i64 - 1
    }
}

pub fn distance_profile(g: &CirculantGraph) -> DistanceProfile {
    let mut histogram = Vec::new();
    for d in bfs_distances(g).into_iter().filter(|&d| d != u32::MAX) {
        let d = d as usize;
        if histogram.len() <= d {
            histogram.resize(d + 1, 0);
        }
        histogram[d] += 1;
    }
    DistanceProfile { histogram }
}

/// A shortest word reaching `target`, read back along BFS parents. Only the
/// first four steps of the connection set are expressible as a
/// [`GeneratorWord`], in the order given by `gens`.
pub fn shortest_word(n: i64, gens: [i64; 4], target: i64) -> Result<GeneratorWord> {
    if !(0..n).contains(&target) {
        return Err(Error::ResidueOutOfRange { g: target, n });
    }
    let nu = n as usize;
    let mut parent: Vec<Option<(usize, i64)>> = vec![None; nu];
    let mut seen = vec![false; nu];
    let mut queue = VecDeque::from([0i64]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        if u == target {
            break;
        }
        for (i, &s) in gens.iter().enumerate() {
            for sign in [1, -1] {
                let v = (u + sign * s).rem_euclid(n);
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    parent[v as usize] = Some((i, sign));
                    queue.push_back(v);
                }
            }
        }
    }
    let mut counts = [0i64; 4];
    let mut cur = target;
    while cur != 0 {
        let (i, sign) = parent[cur as usize].ok_or(Error::InvalidCirculant(format!("{target} is unreachable")))?;
        counts[i] += sign;
        cur = (cur - sign * gens[i]).rem_euclid(n);
    }
    Ok(GeneratorWord { counts })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_cases() {
        let g = build_circulant(32, &[1, 4, 6, 15]).unwrap();
        assert_eq!(diameter(&g), Some(2));
        assert_eq!(distance_profile(&g).histogram, vec![1, 8, 23]);
        let g = build_circulant(104, &[1, 16, 20, 27]).unwrap();
        assert_eq!(diameter(&g), Some(3));
        assert_eq!(diameter(&build_circulant(13, &[1, 5]).unwrap()), Some(2));
        assert_eq!(distance_profile(&build_circulant(5, &[1]).unwrap()).histogram, vec![1, 2, 2]);
    }

    #[test]
    fn invalid_connection_sets() {
        assert!(build_circulant(10, &[1, 5]).is_err());
        assert!(build_circulant(10, &[1, 1]).is_err());
        assert!(build_circulant(10, &[1, 9]).is_err());
        assert!(build_circulant(10, &[0, 3]).is_err());
        assert!(build_circulant(10, &[11]).is_err());
    }

    #[test]
    fn edges_are_sorted_and_counted() {
        let g = construct(2).unwrap();
        let e = g.edges();
        assert_eq!(e.len(), 128);
        assert!(e.windows(2).all(|w| w[0] < w[1]));
        assert!(e.iter().all(|&(u, v)| u < v));
    }

    #[test]
    fn disconnected_graph_has_no_diameter() {
        assert_eq!(diameter(&build_circulant(12, &[2, 4]).unwrap()), None);
    }

    #[test]
    fn shortest_words_replay() {
        let gens = generator_set(3).unwrap();
        let dist = bfs_distances(&construct(3).unwrap());
        for g in 0..gens.n {
            let w = shortest_word(gens.n, gens.s, g).unwrap();
            assert_eq!(w.replay(&gens), g);
            assert_eq!(w.len(), i64::from(dist[g as usize]));
        }
    }
}
