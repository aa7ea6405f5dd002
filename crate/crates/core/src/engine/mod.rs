//! Derivation of lower and upper bounds for ordinal Ramsey numbers
//! `R(alpha, k)`: the least `beta` such that every red/blue coloring of pairs
//! from `beta` has a red copy of `alpha` or a blue `k`-clique.
//!
//! Bounds come from rules (each a proved inequality), and are combined with
//! the ordering between relations and monotonicity in `alpha` and `k`. Every
//! bound carries the derivation that produced it, and replaying the
//! derivation recomputes every intermediate value.

mod catalog;
mod rules;
mod shapes;
mod solve;

pub use catalog::{catalog_alphas, catalog_queries};
pub use rules::{Rule, TransferKind};

use crate::oracle::{OracleError, SearchBudget};
use crate::ordinal::Ordinal;
use crate::pigeonhole::PigeonholeError;
use rules::{Oracles, RuleContext};
use serde::Serialize;
use solve::Solution;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// Copies are order-isomorphic to `alpha`.
    Classical,
    /// Copies are homeomorphic to `alpha`.
    Topological,
    /// Copies are order-homeomorphic and closed in their supremum.
    Closed,
}

impl Relation {
    pub const ALL: [Relation; 3] = [Relation::Classical, Relation::Topological, Relation::Closed];

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Classical => "R",
            Relation::Topological => "R^top",
            Relation::Closed => "R^cl",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Classical => "classical",
            Relation::Topological => "topological",
            Relation::Closed => "closed",
        })
    }
}

impl std::str::FromStr for Relation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "classical" | "cls" => Ok(Relation::Classical),
            "topological" | "top" => Ok(Relation::Topological),
            "closed" | "cl" => Ok(Relation::Closed),
            _ => Err(format!("unknown relation '{s}' (expected cl, top or classical)")),
        }
    }
}

/// `R^rel(alpha, k)`, with `k` the size of the blue clique.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BoundQuery {
    pub relation: Relation,
    pub alpha: Ordinal,
    pub k: u64,
}

impl BoundQuery {
    pub fn new(relation: Relation, alpha: Ordinal, k: u64) -> Self {
        BoundQuery { relation, alpha, k }
    }

    pub fn with_relation(&self, relation: Relation) -> Self {
        BoundQuery {
            relation,
            ..self.clone()
        }
    }

    pub fn with_alpha(&self, alpha: Ordinal) -> Self {
        BoundQuery {
            alpha,
            ..self.clone()
        }
    }

    pub fn with_k(&self, k: u64) -> Self {
        BoundQuery {
            k,
            ..self.clone()
        }
    }

    fn validate(&self) -> Result<(), EngineError> {
        if self.alpha < Ordinal::nat(2u32) || self.k < 2 {
            return Err(EngineError::InvalidQuery(format!(
                "need alpha >= 2 and k >= 2, got alpha = {}, k = {}",
                self.alpha, self.k
            )));
        }
        Ok(())
    }
}

impl fmt::Display for BoundQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {})", self.relation.symbol(), self.alpha, self.k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
    Exact,
}

/// One rule application: `value = rule(inputs)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    #[serde(serialize_with = "serialize_rule_id")]
    pub rule: Rule,
    pub cite: String,
    pub claim: String,
    pub inputs: Vec<Ordinal>,
    pub value: Ordinal,
}

fn serialize_rule_id<S: serde::Serializer>(r: &Rule, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.id())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bound {
    #[serde(skip)]
    pub query: BoundQuery,
    pub kind: BoundKind,
    pub value: Ordinal,
    pub derivation: Vec<Step>,
}

impl Bound {
    /// Re-evaluates every step of the derivation.
    pub fn replay(&self, engine: &Engine) -> Result<(), EngineError> {
        for step in &self.derivation {
            let v = step.rule.evaluate(&step.inputs, &engine.oracles)?;
            if v != step.value {
                return Err(EngineError::Replay(format!(
                    "{} recomputed to {v}, recorded {}",
                    step.claim, step.value
                )));
            }
        }
        match self.derivation.last() {
            Some(last) if last.value == self.value => Ok(()),
            _ => Err(EngineError::Replay(format!(
                "derivation of {} does not end in its value",
                self.query
            ))),
        }
    }

    /// Rule identifiers along the derivation, in order.
    pub fn rules(&self) -> Vec<String> {
        self.derivation.iter().map(|s| s.rule.id()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundInterval {
    pub relation: Relation,
    pub alpha: Ordinal,
    pub k: u64,
    pub lower: Bound,
    pub upper: Option<Bound>,
    pub exact: bool,
}

impl BoundInterval {
    pub fn query(&self) -> BoundQuery {
        BoundQuery::new(self.relation, self.alpha.clone(), self.k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("no rule yields a bound for {0}")]
    NoRule(String),
    #[error("oracle value unavailable: {0}")]
    UnknownOracle(String),
    #[error("inconsistent bounds for {query}: lower {lower} exceeds upper {upper}")]
    Inconsistent {
        query: String,
        lower: Ordinal,
        upper: Ordinal,
    },
    #[error("replay failed: {0}")]
    Replay(String),
    #[error(transparent)]
    Pigeonhole(#[from] PigeonholeError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EngineConfig {
    /// Use `R(K*_n, L_3) <= n^2` when the digraph search has no exact value.
    pub allow_lm_bound: bool,
    /// Include the unpublished improvement for `R^cl(omega*2, 3)`.
    pub include_draft: bool,
    pub digraph_budget: SearchBudget,
    pub ramsey_budget: SearchBudget,
    /// Largest blue-clique size in the precomputed catalog.
    pub catalog_max_k: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            allow_lm_bound: false,
            include_draft: true,
            digraph_budget: SearchBudget {
                max_vertices: 10,
                ..SearchBudget::default()
            },
            ramsey_budget: SearchBudget {
                max_vertices: 9,
                ..SearchBudget::default()
            },
            catalog_max_k: 4,
        }
    }
}

/// Shared, thread-safe bound engine. Results are memoized per engine.
pub struct Engine {
    config: EngineConfig,
    oracles: Oracles,
    catalog: OnceLock<Result<Arc<Solution>, EngineError>>,
    extra: Mutex<HashMap<BoundQuery, Result<BoundInterval, EngineError>>>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(EngineConfig::default())
    }
}

impl Engine {
    pub fn new(config: EngineConfig) -> Self {
        Engine {
            oracles: Oracles::new(config.digraph_budget, config.ramsey_budget),
            config,
            catalog: OnceLock::new(),
            extra: Mutex::new(HashMap::new()),
        }
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    fn ctx(&self) -> RuleContext<'_> {
        RuleContext {
            config: &self.config,
            oracles: &self.oracles,
        }
    }

    fn catalog_solution(&self) -> Result<Arc<Solution>, EngineError> {
        self.catalog
            .get_or_init(|| {
                let seeds = catalog_queries(self.config.catalog_max_k);
                solve::solve(seeds, &self.ctx()).map(Arc::new)
            })
            .clone()
    }

    /// Best interval for `q`: the largest lower and smallest upper bound
    /// reachable from the rules and transfers.
    pub fn best_bounds(&self, q: &BoundQuery) -> Result<BoundInterval, EngineError> {
        q.validate()?;
        let cat = self.catalog_solution()?;
        if cat.contains(q) {
            return cat.interval(q);
        }
        if let Some(r) = self.extra.lock().expect("cache lock").get(q) {
            return r.clone();
        }
        let r = solve::extend(&cat, vec![q.clone()], &self.ctx()).and_then(|s| s.interval(q));
        self.extra
            .lock()
            .expect("cache lock")
            .insert(q.clone(), r.clone());
        r
    }

    /// Runs `best_bounds` over every catalog query, checking lower <= upper.
    pub fn consistency_sweep(&self) -> Result<Vec<BoundInterval>, EngineError> {
        let cat = self.catalog_solution()?;
        cat.queries().iter().map(|q| cat.interval(q)).collect()
    }

    fn sub_upper(&self, q: &BoundQuery) -> Option<Bound> {
        self.best_bounds(q).ok().and_then(|i| i.upper)
    }

    /// `R^rel(alpha, k) >= P^rel(alpha)_(k-1)`.
    pub fn lower_bound_pigeonhole(&self, q: &BoundQuery) -> Result<Bound, EngineError> {
        q.validate()?;
        rules::pigeonhole_lower(q, &self.ctx()).ok_or_else(|| {
            EngineError::NoRule(format!("no pigeonhole value is known for {q}"))
        })
    }

    /// Tabulated exact values.
    pub fn exact_registry(&self, q: &BoundQuery) -> Option<Bound> {
        q.validate().ok()?;
        rules::exact_registry(q, &self.ctx())
    }

    /// Closed step-up through the top point, joint pigeonhole form.
    pub fn step_up_a(&self, q: &BoundQuery) -> Option<Bound> {
        q.validate().ok()?;
        rules::backward_join(q, &self.ctx(), &|s| self.sub_upper(s))
    }

    /// Closed step-up through the top point, colorwise form.
    pub fn step_up_b(&self, q: &BoundQuery) -> Option<Bound> {
        q.validate().ok()?;
        rules::backward_colors(q, &self.ctx(), &|s| self.sub_upper(s))
    }

    /// Closed step-up for `omega*m + n + 1` via an ultrafilter on the last block.
    pub fn step_up_omega_mn(&self, q: &BoundQuery) -> Option<Bound> {
        q.validate().ok()?;
        rules::ultrafilter_step(q, &self.ctx(), &|s| self.sub_upper(s))
    }

    /// Closed step-up for `omega*m + n + 1` splitting off the tail point.
    pub fn step_up_omega_mn_forward(&self, q: &BoundQuery) -> Option<Bound> {
        q.validate().ok()?;
        rules::forward_step(q, &self.ctx(), &|s| self.sub_upper(s))
    }

    /// Upper bound for `R^cl(omega*m + 1, k + 1)` by the digraph recursion.
    pub fn bound_omega_m_plus_1(&self, m: u64, k: u64) -> Result<Bound, EngineError> {
        if m == 0 || k == 0 {
            return Err(EngineError::InvalidQuery("m and k must be positive".into()));
        }
        let q = BoundQuery::new(
            Relation::Closed,
            Ordinal::monomial(Ordinal::one(), m).succ(),
            k + 1,
        );
        if k == 1 {
            return rules::exact_registry(&q, &self.ctx())
                .ok_or_else(|| EngineError::NoRule(q.to_string()));
        }
        rules::digraph_iteration(&q, &self.ctx(), &|s| self.sub_upper(s))
    }

    /// Tabulated bounds, including the draft improvement when enabled.
    pub fn registry_bounds(&self, q: &BoundQuery) -> Vec<Bound> {
        if q.validate().is_err() {
            return Vec::new();
        }
        rules::registry_bounds(q, &self.ctx())
    }

    /// `R(omega^(1+a), k) <= omega^(1 + a*(k-1))`.
    pub fn wtem_classical_chain(&self, a: &Ordinal, k: u64) -> Option<Bound> {
        let q = BoundQuery::new(
            Relation::Classical,
            Ordinal::omega_power(Ordinal::one().add(a)),
            k,
        );
        q.validate().ok()?;
        rules::classical_chain(&q, &self.ctx())
    }

    /// `R^top(omega^(omega^a), k)` and the closed analogue.
    pub fn wtem_topological_chain(&self, relation: Relation, a: &Ordinal, k: u64) -> Option<Bound> {
        let q = BoundQuery::new(relation, Ordinal::omega_power(Ordinal::omega_power(a.clone())), k);
        q.validate().ok()?;
        rules::topological_chain(&q, &self.ctx())
    }

    /// Successor-shaped topological chain bounds for `q`.
    pub fn wtem_successor_bounds(&self, q: &BoundQuery) -> Vec<Bound> {
        if q.validate().is_err() {
            return Vec::new();
        }
        rules::successor_chain(q, &self.ctx())
    }
}
