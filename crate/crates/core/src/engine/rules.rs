//! The individual inequalities. Each rule has a formula (`Rule::evaluate`),
//! used both to produce a bound and to replay it, and an applicability test.

use super::shapes;
use crate::ordinal::build::nat;
use super::{Bound, BoundKind, BoundQuery, EngineConfig, EngineError, Relation, Step};
use crate::oracle::{self, OracleError, SearchBudget};
use crate::ordinal::Ordinal;
use crate::pigeonhole::{classical_p_registry, pcl_number, ptop_registry};
use crate::topology::{least_homeomorphic, order_reinforcing};
use std::collections::HashMap;
use std::sync::Mutex;

/// Why a bound moved from one query to another.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransferKind {
    /// An upper bound for the closed relation bounds the other two.
    ClosedToWeaker,
    /// A lower bound for a weaker relation bounds the closed one.
    WeakerToClosed,
    /// For order-reinforcing targets the topological and closed numbers agree.
    OrderReinforcing,
    /// `R(alpha, k) <= R(alpha, k+1)`.
    MonotoneK,
    /// `R(alpha, k) <= R(alpha', k)` for `alpha <= alpha'`.
    MonotoneAlpha,
    /// Homeomorphic targets have the same topological Ramsey number.
    Homeomorphic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    TargetLower,
    PigeonholeLower(Relation),
    PairExact,
    FiniteRamsey,
    DigraphRamsey,
    LarsonMitchell,
    OmegaPlusOneExact,
    OmegaPlusTwoExact,
    OmegaTimesExact,
    SpeckerExact,
    OmegaSquaredTwoExact,
    BackwardJoin,
    BackwardColors,
    ForwardStep,
    UltrafilterStep,
    DigraphBeta,
    DigraphClose,
    OmegaTimesTwoClosedUpper,
    OmegaTimesTwoTopLower,
    OmegaTimesTwoTopUpper,
    OmegaTimesTwoDraftUpper,
    OmegaSquaredUpper,
    OmegaSquaredPlusOneUpper,
    ClassicalChain,
    TopChain,
    TopChainSuccessor,
    TopChainMultiple,
    Transfer(TransferKind),
}

impl Rule {
    pub fn id(&self) -> String {
        let s = match self {
            Rule::TargetLower => "target-lower",
            Rule::PigeonholeLower(Relation::Closed) => "pigeonhole-lower-closed",
            Rule::PigeonholeLower(Relation::Topological) => "pigeonhole-lower-topological",
            Rule::PigeonholeLower(Relation::Classical) => "pigeonhole-lower-classical",
            Rule::PairExact => "pair-exact",
            Rule::FiniteRamsey => "finite-ramsey",
            Rule::DigraphRamsey => "digraph-ramsey",
            Rule::LarsonMitchell => "larson-mitchell",
            Rule::OmegaPlusOneExact => "omega-plus-one-exact",
            Rule::OmegaPlusTwoExact => "omega-plus-two-exact",
            Rule::OmegaTimesExact => "omega-times-exact",
            Rule::SpeckerExact => "specker-exact",
            Rule::OmegaSquaredTwoExact => "omega-squared-two-exact",
            Rule::BackwardJoin => "step-up-a",
            Rule::BackwardColors => "step-up-b",
            Rule::ForwardStep => "step-up-omega-mn-forward",
            Rule::UltrafilterStep => "step-up-omega-mn",
            Rule::DigraphBeta => "omega-m-plus-1-beta",
            Rule::DigraphClose => "omega-m-plus-1-bound",
            Rule::OmegaTimesTwoClosedUpper => "omega-times-two-closed-upper",
            Rule::OmegaTimesTwoTopLower => "omega-times-two-top-lower",
            Rule::OmegaTimesTwoTopUpper => "omega-times-two-top-upper",
            Rule::OmegaTimesTwoDraftUpper => "omega-times-two-closed-draft",
            Rule::OmegaSquaredUpper => "omega-squared-closed-upper",
            Rule::OmegaSquaredPlusOneUpper => "omega-squared-plus-one-upper",
            Rule::ClassicalChain => "wtem-classical-chain",
            Rule::TopChain => "wtem-topological-chain",
            Rule::TopChainSuccessor => "wtem-successor",
            Rule::TopChainMultiple => "wtem-successor-multiple",
            Rule::Transfer(TransferKind::ClosedToWeaker) => "transfer-closed-to-weaker",
            Rule::Transfer(TransferKind::WeakerToClosed) => "transfer-weaker-to-closed",
            Rule::Transfer(TransferKind::OrderReinforcing) => "transfer-order-reinforcing",
            Rule::Transfer(TransferKind::MonotoneK) => "transfer-monotone-k",
            Rule::Transfer(TransferKind::MonotoneAlpha) => "transfer-monotone-alpha",
            Rule::Transfer(TransferKind::Homeomorphic) => "transfer-homeomorphic",
        };
        s.to_string()
    }

    pub fn cite(&self) -> &'static str {
        match self {
            Rule::TargetLower => "R(a,k) >= a, up to homeomorphism for the topological relation",
            Rule::PigeonholeLower(_) => "pigeonhole lower bound R(a,k+1) >= P(a)_k",
            Rule::PairExact => "R(a,2) = a",
            Rule::FiniteRamsey => "finite Ramsey number",
            Rule::DigraphRamsey => "digraph Ramsey number R(K*_m, L_k) by exhaustive search",
            Rule::LarsonMitchell => "Larson-Mitchell bound R(K*_n, L_3) <= n^2",
            Rule::OmegaPlusOneExact => "exact value R(w+1,k+1) = w^k+1",
            Rule::OmegaPlusTwoExact => "exact value R^cl(w+2,3) = w^2*2+w+2",
            Rule::OmegaTimesExact => "exact value R(w*m,k) = w*R(K*_m, L_k)",
            Rule::SpeckerExact => "Specker: w^2 -> (w^2, k)",
            Rule::OmegaSquaredTwoExact => "exact value R(w^2*2,3) = w^2*10",
            Rule::BackwardJoin => "step-up R^cl(a+1,k+1) <= P^cl(R^cl(a,k+1), R^cl(a+1,k)) + 1",
            Rule::BackwardColors => "step-up R^cl(a+1,k+1) <= P^cl(R^cl(a,k+1))_k + R^cl(a+1,k)",
            Rule::ForwardStep => {
                "step-up R^cl(w*m+n+1,k+1) <= R^cl(w*m+n,k+1) + P^cl(R^cl(w*m+n+1,k))_(2m+n-1)"
            }
            Rule::UltrafilterStep => {
                "step-up R^cl(w*m+n+1,k+1) <= R^cl(w*m+1,k+1) + P^cl((R^cl(w*m+n+1,k))_2m, R(n,k+1))"
            }
            Rule::DigraphBeta => "w*m+1 recursion: b_i = P^cl(R^cl(w*m+1,k), R^cl(w*m+1,k), w^k+1+b_(i-1))",
            Rule::DigraphClose => "w*m+1 recursion: R^cl(w*m+1,k+1) <= w^k+1+b_(N-1), N = R(K*_m, L_(k+1))",
            Rule::OmegaTimesTwoClosedUpper => "upper bound R^cl(w*2,3) <= w^4*2",
            Rule::OmegaTimesTwoTopLower => "lower bound R^top(w*2,3) >= w^2*3",
            Rule::OmegaTimesTwoTopUpper => "upper bound R^top(w*2,3) <= w^3*R(K*_10, L_3)",
            Rule::OmegaTimesTwoDraftUpper => "unpublished draft: R^cl(w*2,3) <= w^3*2",
            Rule::OmegaSquaredUpper => "upper bound R^cl(w^2,k) <= w^w",
            Rule::OmegaSquaredPlusOneUpper => "upper bound R^cl(w^2+1,k+2) <= w^(w*k)+1",
            Rule::ClassicalChain => "weak Erdos-Milner chain R(w^(1+a),k+1) <= w^(1+a*k)",
            Rule::TopChain => "topological Erdos-Milner chain R^top(w^(w^a),k+1) <= w^(w^(a*k))",
            Rule::TopChainSuccessor => "topological Erdos-Milner chain for w^(w^a)+1",
            Rule::TopChainMultiple => "topological Erdos-Milner chain R(w^n*m+1,k+2) <= w^(w^k*n)*R(m,k+2)+1",
            Rule::Transfer(TransferKind::ClosedToWeaker) => "closed partitions imply classical and topological ones",
            Rule::Transfer(TransferKind::WeakerToClosed) => "closed partitions imply classical and topological ones",
            Rule::Transfer(TransferKind::OrderReinforcing) => {
                "order-reinforcing targets: topological and closed numbers coincide"
            }
            Rule::Transfer(TransferKind::MonotoneK) => "monotone in the clique size",
            Rule::Transfer(TransferKind::MonotoneAlpha) => "monotone in the target",
            Rule::Transfer(TransferKind::Homeomorphic) => "homeomorphic targets, equal topological numbers",
        }
    }

    pub(crate) fn evaluate(&self, x: &[Ordinal], oracles: &Oracles) -> Result<Ordinal, EngineError> {
        if let Some(v) = oracles.cached(*self, x) {
            return v;
        }
        let v = self.compute(x, oracles);
        oracles.store(*self, x, v.clone());
        v
    }

    fn compute(&self, x: &[Ordinal], oracles: &Oracles) -> Result<Ordinal, EngineError> {
        let w = Ordinal::omega;
        let w_pow = Ordinal::omega_power;
        Ok(match self {
            Rule::PigeonholeLower(rel) => {
                let targets = vec![arg(x, 0)?.clone(); nat_arg(x, 1)? as usize];
                match rel {
                    Relation::Closed => pcl_number(&targets)?,
                    Relation::Topological => ptop_registry(&targets)
                        .ok_or_else(|| EngineError::NoRule("no topological pigeonhole value".into()))?,
                    Relation::Classical => classical_p_registry(&targets)
                        .ok_or_else(|| EngineError::NoRule("no classical pigeonhole value".into()))?,
                }
            }
            Rule::PairExact | Rule::Transfer(_) => arg(x, 0)?.clone(),
            Rule::TargetLower => arg(x, 0)?.clone(),
            Rule::FiniteRamsey => nat(oracles.ramsey(nat_arg(x, 0)?, nat_arg(x, 1)?)?),
            Rule::DigraphRamsey => nat(oracles.digraph(nat_arg(x, 0)?, nat_arg(x, 1)?)?),
            Rule::LarsonMitchell => nat(oracle::larson_mitchell_bound(nat_arg(x, 0)?)?),
            Rule::OmegaPlusOneExact => w_pow(arg(x, 0)?.clone()).succ(),
            Rule::OmegaPlusTwoExact => sum(&[Ordinal::monomial(nat(2), 2u32), w(), nat(2)]),
            Rule::OmegaTimesExact => Ordinal::monomial(nat(1), nat_arg(x, 0)?),
            Rule::SpeckerExact => w_pow(nat(2)),
            Rule::OmegaSquaredTwoExact => Ordinal::monomial(nat(2), 10u32),
            Rule::BackwardJoin => pcl_number(&[arg(x, 0)?.clone(), arg(x, 1)?.clone()])?.succ(),
            Rule::BackwardColors => {
                let t = vec![arg(x, 0)?.clone(); nat_arg(x, 1)? as usize];
                pcl_number(&t)?.add(arg(x, 2)?)
            }
            Rule::ForwardStep => {
                let t = vec![arg(x, 1)?.clone(); nat_arg(x, 2)? as usize];
                arg(x, 0)?.add(&pcl_number(&t)?)
            }
            Rule::UltrafilterStep => {
                let mut t = vec![arg(x, 1)?.clone(); nat_arg(x, 2)? as usize];
                t.push(arg(x, 3)?.clone());
                arg(x, 0)?.add(&pcl_number(&t)?)
            }
            Rule::DigraphBeta => {
                let s = arg(x, 0)?.clone();
                let third = w_pow(arg(x, 1)?.clone()).succ().add(arg(x, 2)?);
                pcl_number(&[s.clone(), s, third])?
            }
            Rule::DigraphClose => w_pow(arg(x, 0)?.clone()).succ().add(arg(x, 1)?),
            Rule::OmegaTimesTwoClosedUpper => Ordinal::monomial(nat(4), 2u32),
            Rule::OmegaTimesTwoTopLower => Ordinal::monomial(nat(2), 3u32),
            Rule::OmegaTimesTwoTopUpper => Ordinal::monomial(nat(3), nat_arg(x, 0)?),
            Rule::OmegaTimesTwoDraftUpper => Ordinal::monomial(nat(3), 2u32),
            Rule::OmegaSquaredUpper => w_pow(w()),
            Rule::OmegaSquaredPlusOneUpper => w_pow(w().mul(arg(x, 0)?)).succ(),
            Rule::ClassicalChain => w_pow(nat(1).add(&arg(x, 0)?.mul(arg(x, 1)?))),
            Rule::TopChain => w_pow(w_pow(arg(x, 0)?.mul(arg(x, 1)?))),
            Rule::TopChainSuccessor => {
                let a = arg(x, 0)?;
                let c = arg(x, 1)?;
                let e = match a.as_u64() {
                    Some(n) => nat(n + 1)
                        .mul(c)
                        .predecessor()
                        .ok_or_else(|| EngineError::InvalidQuery("chain length must be positive".into()))?,
                    None => a.mul(c),
                };
                w_pow(w_pow(e)).succ()
            }
            Rule::TopChainMultiple => {
                let e = w_pow(arg(x, 1)?.clone()).mul(arg(x, 0)?);
                w_pow(e).mul(arg(x, 2)?).succ()
            }
        })
    }
}

fn sum(parts: &[Ordinal]) -> Ordinal {
    parts.iter().fold(Ordinal::zero(), |acc, p| acc.add(p))
}

fn arg(x: &[Ordinal], i: usize) -> Result<&Ordinal, EngineError> {
    x.get(i)
        .ok_or_else(|| EngineError::Replay(format!("missing rule input {i}")))
}

fn nat_arg(x: &[Ordinal], i: usize) -> Result<u64, EngineError> {
    arg(x, i)?
        .as_u64()
        .ok_or_else(|| EngineError::Replay(format!("rule input {i} must be a small natural")))
}

type EvalKey = (Rule, Vec<Ordinal>);

/// Oracle access and a memo of rule evaluations, shared across threads.
pub(crate) struct Oracles {
    digraph_budget: SearchBudget,
    ramsey_budget: SearchBudget,
    digraph: Mutex<HashMap<(u64, u64), Result<u64, OracleError>>>,
    ramsey: Mutex<HashMap<(u64, u64), Result<u64, OracleError>>>,
    evals: Mutex<HashMap<EvalKey, Result<Ordinal, EngineError>>>,
}

impl Oracles {
    pub(crate) fn new(digraph_budget: SearchBudget, ramsey_budget: SearchBudget) -> Self {
        Oracles {
            digraph_budget,
            ramsey_budget,
            digraph: Mutex::new(HashMap::new()),
            ramsey: Mutex::new(HashMap::new()),
            evals: Mutex::new(HashMap::new()),
        }
    }

    fn cached(&self, rule: Rule, x: &[Ordinal]) -> Option<Result<Ordinal, EngineError>> {
        self.evals
            .lock()
            .expect("eval lock")
            .get(&(rule, x.to_vec()))
            .cloned()
    }

    fn store(&self, rule: Rule, x: &[Ordinal], v: Result<Ordinal, EngineError>) {
        self.evals
            .lock()
            .expect("eval lock")
            .insert((rule, x.to_vec()), v);
    }

    pub(crate) fn digraph(&self, m: u64, k: u64) -> Result<u64, OracleError> {
        if let Some(v) = self.digraph.lock().expect("oracle lock").get(&(m, k)) {
            return v.clone();
        }
        let v = oracle::digraph_ramsey(m, k, self.digraph_budget).map(|r| r.value);
        self.digraph
            .lock()
            .expect("oracle lock")
            .insert((m, k), v.clone());
        v
    }

    pub(crate) fn ramsey(&self, m: u64, k: u64) -> Result<u64, OracleError> {
        if let Some(v) = self.ramsey.lock().expect("oracle lock").get(&(m, k)) {
            return v.clone();
        }
        let v = oracle::finite_ramsey(m, k, self.ramsey_budget).map(|r| r.value);
        self.ramsey
            .lock()
            .expect("oracle lock")
            .insert((m, k), v.clone());
        v
    }
}

pub(crate) struct RuleContext<'a> {
    pub config: &'a EngineConfig,
    pub oracles: &'a Oracles,
}

/// Current best upper bound for a sub-query, if any.
pub(crate) type Subs<'a> = &'a dyn Fn(&BoundQuery) -> Option<Bound>;

impl RuleContext<'_> {
    fn step(&self, rule: Rule, inputs: Vec<Ordinal>, claim: impl FnOnce(&Ordinal) -> String) -> Result<Step, EngineError> {
        let value = rule.evaluate(&inputs, self.oracles)?;
        Ok(Step {
            rule,
            cite: rule.cite().to_string(),
            claim: claim(&value),
            inputs,
            value,
        })
    }

    /// Final step of a bound for `q`, after the steps in `prior`.
    fn conclude(
        &self,
        q: &BoundQuery,
        kind: BoundKind,
        rule: Rule,
        inputs: Vec<Ordinal>,
        prior: Vec<Step>,
    ) -> Result<Bound, EngineError> {
        let step = self.step(rule, inputs, |v| claim(q, kind, v))?;
        let value = step.value.clone();
        let mut derivation = prior;
        derivation.push(step);
        Ok(Bound {
            query: q.clone(),
            kind,
            value,
            derivation,
        })
    }
}

pub(crate) fn claim(q: &BoundQuery, kind: BoundKind, v: &Ordinal) -> String {
    let op = match kind {
        BoundKind::Lower => ">=",
        BoundKind::Upper => "<=",
        BoundKind::Exact => "=",
    };
    format!("{q} {op} {v}")
}

fn k_ord(k: u64) -> Ordinal {
    nat(k)
}

/// `alpha`, or for the topological relation the least ordinal homeomorphic to it.
pub(crate) fn trivial_lower(q: &BoundQuery) -> Ordinal {
    match q.relation {
        Relation::Topological => least_homeomorphic(&q.alpha),
        _ => q.alpha.clone(),
    }
}

/// `R^rel(alpha, k) >= P^rel(alpha)_(k-1)`.
pub(crate) fn pigeonhole_lower(q: &BoundQuery, ctx: &RuleContext) -> Option<Bound> {
    ctx.conclude(
        q,
        BoundKind::Lower,
        Rule::PigeonholeLower(q.relation),
        vec![q.alpha.clone(), k_ord(q.k - 1)],
        Vec::new(),
    )
    .ok()
}

pub(crate) fn exact_registry(q: &BoundQuery, ctx: &RuleContext) -> Option<Bound> {
    exact_registry_all(q, ctx).into_iter().next()
}

fn exact_registry_all(q: &BoundQuery, ctx: &RuleContext) -> Vec<Bound> {
    let mut out = Vec::new();
    let exact = BoundKind::Exact;
    let k = q.k;
    if let Some(n) = shapes::finite(&q.alpha) {
        out.extend(ctx.conclude(q, exact, Rule::FiniteRamsey, vec![nat(n), nat(k)], Vec::new()).ok());
    }
    if k == 2 && (q.relation != Relation::Topological || order_reinforcing(&q.alpha)) {
        out.extend(ctx.conclude(q, exact, Rule::PairExact, vec![q.alpha.clone()], Vec::new()).ok());
    }
    let omega_plus = |n: u64| Ordinal::omega().add(&nat(n));
    if q.relation != Relation::Classical && q.alpha == omega_plus(1) {
        out.extend(ctx.conclude(q, exact, Rule::OmegaPlusOneExact, vec![k_ord(k - 1)], Vec::new()).ok());
    }
    if q.relation == Relation::Closed && q.alpha == omega_plus(2) && k == 3 {
        out.extend(ctx.conclude(q, exact, Rule::OmegaPlusTwoExact, Vec::new(), Vec::new()).ok());
    }
    if q.relation == Relation::Classical {
        if let Some((m, 0)) = shapes::omega_times_plus(&q.alpha) {
            if m >= 2 {
                let p = ctx.step(Rule::DigraphRamsey, vec![nat(m), nat(k)], |v| {
                    format!("R(K*_{m}, L_{k}) = {v}")
                });
                if let Ok(p) = p {
                    let pv = p.value.clone();
                    out.extend(ctx.conclude(q, exact, Rule::OmegaTimesExact, vec![pv], vec![p]).ok());
                }
            }
        }
        if q.alpha == Ordinal::omega_power(nat(2)) {
            out.extend(ctx.conclude(q, exact, Rule::SpeckerExact, Vec::new(), Vec::new()).ok());
        }
        if q.alpha == Ordinal::monomial(nat(2), 2u32) && k == 3 {
            out.extend(ctx.conclude(q, exact, Rule::OmegaSquaredTwoExact, Vec::new(), Vec::new()).ok());
        }
    }
    out
}

pub(crate) fn registry_bounds(q: &BoundQuery, ctx: &RuleContext) -> Vec<Bound> {
    let mut out = Vec::new();
    let omega_two = Ordinal::monomial(nat(1), 2u32);
    let omega_sq = Ordinal::omega_power(nat(2));

    if q.alpha == omega_two && q.k == 3 {
        match q.relation {
            Relation::Topological => {
                out.extend(ctx.conclude(q, BoundKind::Lower, Rule::OmegaTimesTwoTopLower, Vec::new(), Vec::new()).ok());
                if let Ok(lm) = ctx.step(Rule::LarsonMitchell, vec![nat(10)], |v| {
                    format!("R(K*_10, L_3) <= {v}")
                }) {
                    let n = lm.value.clone();
                    out.extend(
                        ctx.conclude(q, BoundKind::Upper, Rule::OmegaTimesTwoTopUpper, vec![n], vec![lm])
                            .ok(),
                    );
                }
            }
            Relation::Closed => {
                out.extend(ctx.conclude(q, BoundKind::Upper, Rule::OmegaTimesTwoClosedUpper, Vec::new(), Vec::new()).ok());
                if ctx.config.include_draft {
                    out.extend(
                        ctx.conclude(q, BoundKind::Upper, Rule::OmegaTimesTwoDraftUpper, Vec::new(), Vec::new())
                            .ok(),
                    );
                }
            }
            Relation::Classical => {}
        }
    }
    if q.relation == Relation::Closed && q.alpha == omega_sq {
        out.extend(ctx.conclude(q, BoundKind::Upper, Rule::OmegaSquaredUpper, Vec::new(), Vec::new()).ok());
    }
    if q.relation == Relation::Closed && q.alpha == omega_sq.succ() && q.k >= 3 {
        out.extend(
            ctx.conclude(q, BoundKind::Upper, Rule::OmegaSquaredPlusOneUpper, vec![k_ord(q.k - 2)], Vec::new())
                .ok(),
        );
    }
    out
}

pub(crate) fn classical_chain(q: &BoundQuery, ctx: &RuleContext) -> Option<Bound> {
    if q.relation != Relation::Classical {
        return None;
    }
    let e = shapes::omega_power(&q.alpha)?;
    let a = Ordinal::one().left_subtract(e).ok()?;
    ctx.conclude(q, BoundKind::Upper, Rule::ClassicalChain, vec![a, k_ord(q.k - 1)], Vec::new())
        .ok()
}

pub(crate) fn topological_chain(q: &BoundQuery, ctx: &RuleContext) -> Option<Bound> {
    if q.relation == Relation::Classical {
        return None;
    }
    let a = shapes::omega_tower(&q.alpha)?.clone();
    ctx.conclude(q, BoundKind::Upper, Rule::TopChain, vec![a, k_ord(q.k - 1)], Vec::new())
        .ok()
}

pub(crate) fn successor_chain(q: &BoundQuery, ctx: &RuleContext) -> Vec<Bound> {
    let mut out = Vec::new();
    if q.relation == Relation::Classical {
        return out;
    }
    if let Some(a) = shapes::omega_tower_plus_one(&q.alpha) {
        out.extend(
            ctx.conclude(q, BoundKind::Upper, Rule::TopChainSuccessor, vec![a, k_ord(q.k - 1)], Vec::new())
                .ok(),
        );
    }
    if let Some((n, m)) = shapes::omega_poly_plus_one(&q.alpha) {
        if q.k >= 3 {
            let k = q.k;
            if let Ok(r) = ctx.step(Rule::FiniteRamsey, vec![nat(m), nat(k)], |v| format!("R({m},{k}) = {v}")) {
                let rv = r.value.clone();
                out.extend(
                    ctx.conclude(
                        q,
                        BoundKind::Upper,
                        Rule::TopChainMultiple,
                        vec![nat(n), k_ord(k - 2), rv],
                        vec![r],
                    )
                    .ok(),
                );
            }
        }
    }
    out
}

fn closed(alpha: Ordinal, k: u64) -> BoundQuery {
    BoundQuery::new(Relation::Closed, alpha, k)
}

fn with_prior(parts: &[&Bound]) -> Vec<Step> {
    parts.iter().flat_map(|b| b.derivation.iter().cloned()).collect()
}

/// Predecessor `alpha` of the target when both the target and `alpha` are
/// successors and `alpha >= 2`.
fn double_successor(q: &BoundQuery) -> Option<Ordinal> {
    let a = q.alpha.predecessor()?;
    (a.is_successor() && a >= nat(2)).then_some(a)
}

pub(crate) fn backward_join(q: &BoundQuery, ctx: &RuleContext, subs: Subs) -> Option<Bound> {
    if q.relation != Relation::Closed || q.k < 3 {
        return None;
    }
    let a = double_successor(q)?;
    let u1 = subs(&closed(a, q.k))?;
    let u2 = subs(&closed(q.alpha.clone(), q.k - 1))?;
    ctx.conclude(
        q,
        BoundKind::Upper,
        Rule::BackwardJoin,
        vec![u1.value.clone(), u2.value.clone()],
        with_prior(&[&u1, &u2]),
    )
    .ok()
}

pub(crate) fn backward_colors(q: &BoundQuery, ctx: &RuleContext, subs: Subs) -> Option<Bound> {
    if q.relation != Relation::Closed || q.k < 3 {
        return None;
    }
    let a = double_successor(q)?;
    let u1 = subs(&closed(a, q.k))?;
    let u2 = subs(&closed(q.alpha.clone(), q.k - 1))?;
    ctx.conclude(
        q,
        BoundKind::Upper,
        Rule::BackwardColors,
        vec![u1.value.clone(), k_ord(q.k - 1), u2.value.clone()],
        with_prior(&[&u1, &u2]),
    )
    .ok()
}

/// `(m, n)` with target `omega*m + n + 1`, `m, n >= 1`.
fn omega_mn_successor(q: &BoundQuery) -> Option<(u64, u64)> {
    let (m, top) = shapes::omega_times_plus(&q.alpha)?;
    (top >= 2).then(|| (m, top - 1))
}

fn omega_mn(m: u64, n: u64) -> Ordinal {
    Ordinal::monomial(nat(1), m).add(&nat(n))
}

pub(crate) fn forward_step(q: &BoundQuery, ctx: &RuleContext, subs: Subs) -> Option<Bound> {
    if q.relation != Relation::Closed || q.k < 3 {
        return None;
    }
    let (m, n) = omega_mn_successor(q)?;
    let u1 = subs(&closed(omega_mn(m, n), q.k))?;
    let u2 = subs(&closed(q.alpha.clone(), q.k - 1))?;
    ctx.conclude(
        q,
        BoundKind::Upper,
        Rule::ForwardStep,
        vec![u1.value.clone(), u2.value.clone(), nat(2 * m + n - 1)],
        with_prior(&[&u1, &u2]),
    )
    .ok()
}

pub(crate) fn ultrafilter_step(q: &BoundQuery, ctx: &RuleContext, subs: Subs) -> Option<Bound> {
    if q.relation != Relation::Closed || q.k < 3 {
        return None;
    }
    let (m, n) = omega_mn_successor(q)?;
    let u1 = subs(&closed(omega_mn(m, 1), q.k))?;
    let u2 = subs(&closed(q.alpha.clone(), q.k - 1))?;
    let k = q.k;
    let r = ctx
        .step(Rule::FiniteRamsey, vec![nat(n), nat(k)], |v| format!("R({n},{k}) = {v}"))
        .ok()?;
    let mut prior = with_prior(&[&u1, &u2]);
    let rv = r.value.clone();
    prior.push(r);
    ctx.conclude(
        q,
        BoundKind::Upper,
        Rule::UltrafilterStep,
        vec![u1.value.clone(), u2.value.clone(), nat(2 * m), rv],
        prior,
    )
    .ok()
}

/// Upper bound for `R^cl(omega*m + 1, k + 1)` from the digraph recursion.
pub(crate) fn digraph_iteration(q: &BoundQuery, ctx: &RuleContext, subs: Subs) -> Result<Bound, EngineError> {
    let no_rule = || EngineError::NoRule(q.to_string());
    if q.relation != Relation::Closed || q.k < 3 {
        return Err(no_rule());
    }
    let Some((m, 1)) = shapes::omega_times_plus(&q.alpha) else {
        return Err(no_rule());
    };
    let kk = q.k;
    let k = kk - 1;
    let count = match ctx.step(Rule::DigraphRamsey, vec![nat(m), nat(kk)], |v| {
        format!("R(K*_{m}, L_{kk}) = {v}")
    }) {
        Ok(s) => s,
        Err(e) => {
            if ctx.config.allow_lm_bound && kk == 3 && m >= 2 {
                ctx.step(Rule::LarsonMitchell, vec![nat(m)], |v| format!("R(K*_{m}, L_3) <= {v}"))?
            } else {
                return Err(EngineError::UnknownOracle(format!(
                    "R(K*_{m}, L_{kk}) is not available ({e}); pass the Larson-Mitchell option to use n^2 when k+1 = 3"
                )));
            }
        }
    };
    let p = count.value.as_u64().ok_or_else(no_rule)?;
    let sub = subs(&closed(q.alpha.clone(), k)).ok_or_else(no_rule)?;
    let mut derivation = sub.derivation.clone();
    derivation.push(count);
    let mut beta = Ordinal::zero();
    for i in 1..p {
        let s = ctx.step(
            Rule::DigraphBeta,
            vec![sub.value.clone(), k_ord(k), beta.clone()],
            |v| format!("b_{i} = {v}"),
        )?;
        beta = s.value.clone();
        derivation.push(s);
    }
    ctx.conclude(q, BoundKind::Upper, Rule::DigraphClose, vec![k_ord(k), beta], derivation)
}

/// Every rule-derived bound for `q` under the current sub-bounds.
pub(crate) fn candidates(q: &BoundQuery, ctx: &RuleContext, subs: Subs) -> Vec<Bound> {
    let mut out = Vec::new();
    out.extend(
        ctx.conclude(q, BoundKind::Lower, Rule::TargetLower, vec![trivial_lower(q)], Vec::new())
            .ok(),
    );
    out.extend(pigeonhole_lower(q, ctx));
    out.extend(exact_registry_all(q, ctx));
    out.extend(registry_bounds(q, ctx));
    out.extend(classical_chain(q, ctx));
    out.extend(topological_chain(q, ctx));
    out.extend(successor_chain(q, ctx));
    out.extend(backward_join(q, ctx, subs));
    out.extend(backward_colors(q, ctx, subs));
    out.extend(forward_step(q, ctx, subs));
    out.extend(ultrafilter_step(q, ctx, subs));
    out.extend(digraph_iteration(q, ctx, subs).ok());
    out
}

/// Sub-queries whose upper bounds the rules for `q` consume.
pub(crate) fn dependencies(q: &BoundQuery) -> Vec<BoundQuery> {
    let mut out = Vec::new();
    if q.relation != Relation::Closed || q.k < 3 {
        return out;
    }
    if let Some(a) = double_successor(q) {
        out.push(closed(a, q.k));
        out.push(closed(q.alpha.clone(), q.k - 1));
    }
    if let Some((m, n)) = omega_mn_successor(q) {
        out.push(closed(omega_mn(m, n), q.k));
        out.push(closed(omega_mn(m, 1), q.k));
        out.push(closed(q.alpha.clone(), q.k - 1));
    }
    if let Some((_, 1)) = shapes::omega_times_plus(&q.alpha) {
        out.push(closed(q.alpha.clone(), q.k - 1));
    }
    out
}
