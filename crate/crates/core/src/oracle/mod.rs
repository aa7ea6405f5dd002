//! Finite Ramsey numbers: a registry of known values backed by exhaustive
//! search where the search space allows it, and the digraph numbers
//! `R(K*_m, L_k)` by bounded search.

mod canon;
pub mod digraph;
pub mod graph;

pub use digraph::Digraph;
pub use graph::Graph;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("R({m},{k}) is not known to the registry and exceeds the search budget")]
    UnknownRamsey { m: u64, k: u64 },
    #[error("R(K*_{m}, L_{k}) exceeds {max_vertices} vertices; raise the vertex cap to search further")]
    ExceedsVertexCap { m: u64, k: u64, max_vertices: usize },
    #[error("search exceeded its budget of {0} candidate graphs")]
    BudgetExceeded(usize),
    #[error("search found {found} but the registry records {recorded} for R({m},{k})")]
    RegistryMismatch { m: u64, k: u64, recorded: u64, found: u64 },
    #[error("invalid arguments: {0}")]
    InvalidArgument(String),
}

/// Where an oracle value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// A published value taken on record.
    Registry,
    /// Confirmed here by exhaustive search.
    Search,
    /// Immediate from the definition (`R(1,k) = 1`, `R(2,k) = k`).
    Elementary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleValue {
    pub value: u64,
    pub provenance: Provenance,
}

/// Limits for exhaustive searches. Searches never fall back silently: when a
/// limit is hit they return an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SearchBudget {
    pub max_vertices: usize,
    pub max_graphs: usize,
    /// Re-derive registry values by search when they fit under `max_vertices`.
    pub verify_registry: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_vertices: 6,
            max_graphs: 2_000_000,
            verify_registry: false,
        }
    }
}

/// A structure found inside a graph or digraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamseyWitness {
    pub kind: WitnessKind,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    Clique,
    IndependentSet,
    TransitiveTournament,
}

const RAMSEY_TABLE: &[(u64, u64, u64)] = &[
    (3, 3, 6),
    (3, 4, 9),
    (3, 5, 14),
    (3, 6, 18),
    (3, 7, 23),
    (3, 8, 28),
    (3, 9, 36),
    (4, 4, 18),
    (4, 5, 25),
];

fn registry_value(m: u64, k: u64) -> Option<u64> {
    let (a, b) = if m <= k { (m, k) } else { (k, m) };
    match a {
        0 => Some(0),
        1 => Some(1),
        2 => Some(b),
        _ => RAMSEY_TABLE
            .iter()
            .find(|&&(x, y, _)| x == a && y == b)
            .map(|&(_, _, v)| v),
    }
}

/// The two-color Ramsey number `R(m, k)`.
pub fn finite_ramsey(m: u64, k: u64, budget: SearchBudget) -> Result<OracleValue, OracleError> {
    let (a, b) = if m <= k { (m, k) } else { (k, m) };
    if let Some(v) = registry_value(a, b) {
        if a < 3 {
            return Ok(OracleValue {
                value: v,
                provenance: Provenance::Elementary,
            });
        }
        if !budget.verify_registry || v as usize > budget.max_vertices {
            return Ok(OracleValue {
                value: v,
                provenance: Provenance::Registry,
            });
        }
        let found = graph::search_ramsey(a as usize, b as usize, budget)?;
        if found.value as u64 != v {
            return Err(OracleError::RegistryMismatch {
                m: a,
                k: b,
                recorded: v,
                found: found.value as u64,
            });
        }
        return Ok(OracleValue {
            value: v,
            provenance: Provenance::Search,
        });
    }
    match graph::search_ramsey(a as usize, b as usize, budget) {
        Ok(found) => Ok(OracleValue {
            value: found.value as u64,
            provenance: Provenance::Search,
        }),
        Err(_) => Err(OracleError::UnknownRamsey { m: a, k: b }),
    }
}

/// Result of a digraph search: `value` vertices force the structure, and
/// `lower_witness` on `value - 1` vertices avoids it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DigraphRamsey {
    pub m: u64,
    pub k: u64,
    pub value: u64,
    pub lower_witness: Digraph,
}

/// `R(K*_m, L_k)`: the least `p` such that every digraph on `p` vertices has
/// `m` pairwise non-adjacent vertices or a transitive tournament on `k`
/// vertices as a subgraph.
pub fn digraph_ramsey(m: u64, k: u64, budget: SearchBudget) -> Result<DigraphRamsey, OracleError> {
    if m == 0 || k == 0 {
        return Err(OracleError::InvalidArgument(
            "m and k must be positive".into(),
        ));
    }
    digraph::search(m as usize, k as usize, budget)
}

/// Upper bound `R(K*_n, L_3) <= n^2`.
pub fn larson_mitchell_bound(n: u64) -> Result<u64, OracleError> {
    if n < 2 {
        return Err(OracleError::InvalidArgument(
            "the bound is stated for n >= 2".into(),
        ));
    }
    n.checked_mul(n)
        .ok_or_else(|| OracleError::InvalidArgument("n^2 overflows".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_symmetric() {
        let b = SearchBudget::default();
        for (m, k) in [(3, 4), (4, 3), (3, 5), (5, 3), (4, 4)] {
            assert_eq!(
                finite_ramsey(m, k, b).unwrap().value,
                finite_ramsey(k, m, b).unwrap().value
            );
        }
        assert_eq!(finite_ramsey(2, 7, b).unwrap().value, 7);
        assert_eq!(finite_ramsey(3, 3, b).unwrap().value, 6);
        assert_eq!(finite_ramsey(4, 4, b).unwrap().provenance, Provenance::Registry);
    }

    #[test]
    fn unknown_values_error() {
        assert!(matches!(
            finite_ramsey(5, 5, SearchBudget::default()),
            Err(OracleError::UnknownRamsey { .. })
        ));
    }

    #[test]
    fn larson_mitchell() {
        assert_eq!(larson_mitchell_bound(2).unwrap(), 4);
        assert_eq!(larson_mitchell_bound(10).unwrap(), 100);
        assert!(larson_mitchell_bound(1).is_err());
    }
}
