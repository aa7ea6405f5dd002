//! Digraphs where each pair is unjoined, joined one way, or joined both ways,
//! and the search for `R(K*_m, L_k)`.

use super::canon::canonical_permutation;
use super::{DigraphRamsey, OracleError, RamseyWitness, SearchBudget, WitnessKind};
use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

pub const MAX_SEARCH_VERTICES: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairState {
    None,
    Forward,
    Backward,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Digraph {
    n: usize,
    out: Vec<u32>,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= 32, "digraphs are limited to 32 vertices");
        Digraph { n, out: vec![0; n] }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn add_arc(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.out[u] |= 1 << v;
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u] >> v & 1 == 1
    }

    pub fn state(&self, u: usize, v: usize) -> PairState {
        match (self.has_arc(u, v), self.has_arc(v, u)) {
            (false, false) => PairState::None,
            (true, false) => PairState::Forward,
            (false, true) => PairState::Backward,
            (true, true) => PairState::Both,
        }
    }

    fn all(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    /// Undirected "not joined at all" relation, as adjacency masks.
    fn unjoined(&self) -> Vec<u32> {
        let all = self.all();
        (0..self.n)
            .map(|v| {
                let inn = (0..self.n).filter(|&u| self.has_arc(u, v)).fold(0, |m, u| m | 1 << u);
                all & !(self.out[v] | inn) & !(1 << v)
            })
            .collect()
    }

    pub fn find_independent_set(&self, m: usize) -> Option<RamseyWitness> {
        let mut acc = Vec::new();
        chain(&self.unjoined(), self.all(), m, &mut acc).then_some(RamseyWitness {
            kind: WitnessKind::IndependentSet,
            vertices: acc,
        })
    }

    /// Vertices `v1, ..., vk` with an arc `vi -> vj` whenever `i < j`.
    pub fn find_transitive_tournament(&self, k: usize) -> Option<RamseyWitness> {
        let mut acc = Vec::new();
        chain(&self.out, self.all(), k, &mut acc).then_some(RamseyWitness {
            kind: WitnessKind::TransitiveTournament,
            vertices: acc,
        })
    }

    /// Unpruned check for a transitive tournament: every `k`-subset, every
    /// way of choosing one direction on doubly joined pairs, and a triple-wise
    /// test for directed 3-cycles.
    pub fn naive_has_transitive_tournament(&self, k: usize) -> bool {
        if k <= 1 {
            return k == 0 || self.n >= 1;
        }
        (0..self.n).combinations(k).any(|set| {
            let pairs: Vec<(usize, usize)> = set.iter().copied().tuple_combinations().collect();
            if pairs.iter().any(|&(a, b)| self.state(a, b) == PairState::None) {
                return false;
            }
            let both: Vec<usize> = (0..pairs.len())
                .filter(|&i| self.state(pairs[i].0, pairs[i].1) == PairState::Both)
                .collect();
            (0u64..1 << both.len()).any(|choice| {
                let arc = |a: usize, b: usize| -> bool {
                    let (x, y, flip) = if a < b { (a, b, false) } else { (b, a, true) };
                    let idx = pairs.iter().position(|&p| p == (x, y)).expect("pair in set");
                    let forward = match self.state(x, y) {
                        PairState::Forward => true,
                        PairState::Backward => false,
                        PairState::Both => {
                            let bit = both.iter().position(|&i| i == idx).expect("doubly joined");
                            choice >> bit & 1 == 1
                        }
                        PairState::None => unreachable!(),
                    };
                    forward != flip
                };
                set.iter().copied().tuple_combinations().all(|(a, b, c)| {
                    !(arc(a, b) && arc(b, c) && arc(c, a)) && !(arc(a, c) && arc(c, b) && arc(b, a))
                })
            })
        })
    }

    pub fn naive_has_independent_set(&self, m: usize) -> bool {
        (0..self.n)
            .combinations(m)
            .any(|set| set.iter().tuple_combinations().all(|(&a, &b)| self.state(a, b) == PairState::None))
    }

    fn extended(&self, out_mask: u32, in_mask: u32) -> Digraph {
        let mut g = Digraph {
            n: self.n + 1,
            out: self.out.clone(),
        };
        g.out.push(out_mask);
        for u in 0..self.n {
            if in_mask >> u & 1 == 1 {
                g.out[u] |= 1 << self.n;
            }
        }
        g
    }

    fn canonical(&self) -> Digraph {
        let colors: Vec<u64> = (0..self.n)
            .map(|v| {
                let outd = self.out[v].count_ones() as u64;
                let ind = (0..self.n).filter(|&u| self.has_arc(u, v)).count() as u64;
                let both = (0..self.n)
                    .filter(|&u| self.state(u, v) == PairState::Both)
                    .count() as u64;
                outd << 16 | ind << 8 | both
            })
            .collect();
        let perm = canonical_permutation(&colors, |p| self.encode(p));
        let mut g = Digraph::empty(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && self.has_arc(perm[i], perm[j]) {
                    g.add_arc(i, j);
                }
            }
        }
        g
    }

    fn encode(&self, perm: &[usize]) -> u128 {
        let mut code = 0u128;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    code = code << 1 | self.has_arc(perm[i], perm[j]) as u128;
                }
            }
        }
        code
    }
}

/// Finds `size` vertices `v1, ...` in `cand` with `vj` in `rel[vi]` for `i < j`.
/// With a symmetric relation this is a clique search.
fn chain(rel: &[u32], cand: u32, size: usize, acc: &mut Vec<usize>) -> bool {
    if size == 0 {
        return true;
    }
    if (cand.count_ones() as usize) < size {
        return false;
    }
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        acc.push(v);
        if chain(rel, cand & rel[v] & !(1 << v), size - 1, acc) {
            return true;
        }
        acc.pop();
    }
    false
}

fn is_good(g: &Digraph, m: usize, k: usize) -> bool {
    g.find_independent_set(m).is_none() && g.find_transitive_tournament(k).is_none()
}

/// Level-by-level search over good digraphs, one per isomorphism class.
pub(crate) fn search(m: usize, k: usize, budget: SearchBudget) -> Result<DigraphRamsey, OracleError> {
    let cap = budget.max_vertices.min(MAX_SEARCH_VERTICES);
    let mut level = vec![Digraph::empty(0)];
    let mut explored = 0usize;
    for n in 0..cap {
        explored = explored.saturating_add(level.len().saturating_mul(1usize << (2 * n)));
        if explored > budget.max_graphs {
            return Err(OracleError::BudgetExceeded(budget.max_graphs));
        }
        let full = (1u32 << n) - 1;
        let mut next: Vec<Digraph> = level
            .par_iter()
            .flat_map_iter(|g| {
                let unjoined = g.unjoined();
                (0..1u32 << n).flat_map(move |out_mask| {
                    let unjoined = unjoined.clone();
                    (0..1u32 << n).filter_map(move |in_mask| {
                        let lonely = full & !(out_mask | in_mask);
                        let mut tmp = Vec::new();
                        if m >= 1 && chain(&unjoined, lonely, m - 1, &mut tmp) {
                            return None;
                        }
                        let h = g.extended(out_mask, in_mask);
                        h.find_transitive_tournament(k).is_none().then(|| h.canonical())
                    })
                })
            })
            .collect();
        next.sort();
        next.dedup();
        if next.is_empty() {
            let lower_witness = level.swap_remove(0);
            debug_assert!(is_good(&lower_witness, m, k));
            return Ok(DigraphRamsey {
                m: m as u64,
                k: k as u64,
                value: n as u64 + 1,
                lower_witness,
            });
        }
        level = next;
    }
    Err(OracleError::ExceedsVertexCap {
        m: m as u64,
        k: k as u64,
        max_vertices: cap,
    })
}

/// Whether some digraph on `n` vertices avoids both structures, by listing
/// all `4^(n(n-1)/2)` digraphs with no pruning and the naive detectors.
pub fn exhaustive_good_exists(n: usize, m: usize, k: usize) -> bool {
    assert!(n <= 5, "exhaustive enumeration is limited to 5 vertices");
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    (0u64..1 << (2 * pairs.len())).any(|code| {
        let mut g = Digraph::empty(n);
        for (i, &(a, b)) in pairs.iter().enumerate() {
            match code >> (2 * i) & 3 {
                1 => g.add_arc(a, b),
                2 => g.add_arc(b, a),
                3 => {
                    g.add_arc(a, b);
                    g.add_arc(b, a);
                }
                _ => {}
            }
        }
        !g.naive_has_independent_set(m) && !g.naive_has_transitive_tournament(k)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget(v: usize) -> SearchBudget {
        SearchBudget {
            max_vertices: v,
            ..SearchBudget::default()
        }
    }

    #[test]
    fn small_values() {
        for k in 1..=4 {
            assert_eq!(search(1, k, budget(6)).unwrap().value, 1);
        }
        for m in 1..=4 {
            assert_eq!(search(m, 2, budget(6)).unwrap().value, m as u64);
        }
        let r = search(2, 3, budget(6)).unwrap();
        assert_eq!(r.value, 4);
        assert_eq!(r.lower_witness.order(), 3);
        assert!(r.lower_witness.find_independent_set(2).is_none());
        assert!(!r.lower_witness.naive_has_transitive_tournament(3));
    }

    #[test]
    fn three_cycle_has_no_transitive_triple() {
        let mut g = Digraph::empty(3);
        g.add_arc(0, 1);
        g.add_arc(1, 2);
        g.add_arc(2, 0);
        assert!(g.find_transitive_tournament(3).is_none());
        assert!(!g.naive_has_transitive_tournament(3));
        g.add_arc(0, 2);
        assert_eq!(g.find_transitive_tournament(3).unwrap().vertices, vec![0, 1, 2]);
        assert!(g.naive_has_transitive_tournament(3));
    }

    #[test]
    fn exhaustive_agrees_on_tiny_cases() {
        for n in 1..=4 {
            for (m, k) in [(2, 2), (2, 3), (3, 2)] {
                let pruned_value = search(m, k, budget(6)).unwrap().value as usize;
                assert_eq!(exhaustive_good_exists(n, m, k), n < pruned_value, "n={n} m={m} k={k}");
            }
        }
    }

    #[test]
    fn cap_is_an_error() {
        assert!(matches!(
            search(2, 4, budget(6)),
            Err(OracleError::ExceedsVertexCap { .. })
        ));
    }
}
