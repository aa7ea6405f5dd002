//! Two-colorings of complete graphs, viewed as graphs: red pairs are edges,
//! blue pairs are non-edges.

use super::canon::canonical_permutation;
use super::{OracleError, RamseyWitness, SearchBudget, WitnessKind};
use rayon::prelude::*;
use serde::Serialize;

pub const MAX_SEARCH_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Graph {
    n: usize,
    adj: Vec<u32>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= 32, "graphs are limited to 32 vertices");
        Graph { n, adj: vec![0; n] }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    fn all(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    fn complement_adj(&self) -> Vec<u32> {
        let all = self.all();
        (0..self.n).map(|v| all & !self.adj[v] & !(1 << v)).collect()
    }

    pub fn find_clique(&self, size: usize) -> Option<RamseyWitness> {
        let mut acc = Vec::new();
        find_clique(&self.adj, self.all(), size, &mut acc).then_some(RamseyWitness {
            kind: WitnessKind::Clique,
            vertices: acc,
        })
    }

    pub fn find_independent_set(&self, size: usize) -> Option<RamseyWitness> {
        let mut acc = Vec::new();
        find_clique(&self.complement_adj(), self.all(), size, &mut acc).then_some(RamseyWitness {
            kind: WitnessKind::IndependentSet,
            vertices: acc,
        })
    }

    /// Adds a vertex adjacent to the vertices in `mask`.
    fn extended(&self, mask: u32) -> Graph {
        let mut g = Graph {
            n: self.n + 1,
            adj: self.adj.clone(),
        };
        g.adj.push(mask);
        for u in 0..self.n {
            if mask >> u & 1 == 1 {
                g.adj[u] |= 1 << self.n;
            }
        }
        g
    }

    fn canonical(&self) -> Graph {
        let colors: Vec<u64> = (0..self.n)
            .map(|v| {
                let d = self.adj[v].count_ones() as u64;
                let mut around: Vec<u32> = (0..self.n)
                    .filter(|&u| self.has_edge(u, v))
                    .map(|u| self.adj[u].count_ones())
                    .collect();
                around.sort_unstable();
                around
                    .iter()
                    .fold(d, |h, &x| h.wrapping_mul(31).wrapping_add(x as u64 + 1))
            })
            .collect();
        let perm = canonical_permutation(&colors, |p| self.encode(p));
        self.relabel(&perm)
    }

    fn encode(&self, perm: &[usize]) -> u128 {
        let mut code = 0u128;
        for i in 0..self.n {
            for j in i + 1..self.n {
                code = code << 1 | self.has_edge(perm[i], perm[j]) as u128;
            }
        }
        code
    }

    fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(perm[i], perm[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }
}

fn find_clique(adj: &[u32], cand: u32, size: usize, acc: &mut Vec<usize>) -> bool {
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
        if find_clique(adj, rest & adj[v], size - 1, acc) {
            return true;
        }
        acc.pop();
    }
    false
}

/// `R(m, k)` found by search, with a graph on `value - 1` vertices that has
/// neither a red `K_m` nor a blue `K_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamseySearch {
    pub value: usize,
    pub lower_witness: Graph,
}

/// Builds all `(m, k)`-good graphs vertex by vertex, keeping one
/// representative per isomorphism class, until a level is empty.
pub fn search_ramsey(m: usize, k: usize, budget: SearchBudget) -> Result<RamseySearch, OracleError> {
    let cap = budget.max_vertices.min(MAX_SEARCH_VERTICES);
    let mut level = vec![Graph::empty(0)];
    let mut explored = 0usize;
    for n in 0..cap {
        explored += level.len() << n;
        if explored > budget.max_graphs {
            return Err(OracleError::BudgetExceeded(budget.max_graphs));
        }
        let mut next: Vec<Graph> = level
            .par_iter()
            .flat_map_iter(|g| {
                let cadj = g.complement_adj();
                (0..1u32 << n).filter_map(move |mask| {
                    let mut tmp = Vec::new();
                    let red = m >= 1 && find_clique(&g.adj, mask, m - 1, &mut tmp);
                    let non = ((1u32 << n) - 1) & !mask;
                    let blue = k >= 1 && find_clique(&cadj, non, k - 1, &mut tmp);
                    (!red && !blue).then(|| g.extended(mask).canonical())
                })
            })
            .collect();
        next.sort();
        next.dedup();
        if next.is_empty() {
            return Ok(RamseySearch {
                value: n + 1,
                lower_witness: level.swap_remove(0),
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

/// Every 2-coloring of `K_n`, without pruning: returns one with no red `K_m`
/// and no blue `K_k`, if any exists.
pub fn exhaustive_avoiding(n: usize, m: usize, k: usize) -> Option<Graph> {
    assert!(n <= 7, "exhaustive enumeration is limited to 7 vertices");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    (0u64..1 << pairs.len()).find_map(|bits| {
        let mut g = Graph::empty(n);
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if bits >> b & 1 == 1 {
                g.add_edge(i, j);
            }
        }
        (g.find_clique(m).is_none() && g.find_independent_set(k).is_none()).then_some(g)
    })
}
