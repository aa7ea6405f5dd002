//! Fixpoint over a finite set of queries: apply every rule, then every
//! transfer, until no bound improves.

use super::rules::{self, claim, Rule, RuleContext, TransferKind};
use super::{Bound, BoundInterval, BoundKind, BoundQuery, EngineError, Relation, Step};
use crate::topology::{homeo_invariant, order_reinforcing};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet, HashMap};

const MAX_PASSES: usize = 500;

#[derive(Debug, Clone, Default)]
pub(crate) struct Solution {
    queries: Vec<BoundQuery>,
    lower: HashMap<BoundQuery, Bound>,
    upper: HashMap<BoundQuery, Bound>,
}

impl Solution {
    pub(crate) fn contains(&self, q: &BoundQuery) -> bool {
        self.lower.contains_key(q)
    }

    pub(crate) fn queries(&self) -> &[BoundQuery] {
        &self.queries
    }

    pub(crate) fn interval(&self, q: &BoundQuery) -> Result<BoundInterval, EngineError> {
        let lower = self
            .lower
            .get(q)
            .cloned()
            .ok_or_else(|| EngineError::NoRule(q.to_string()))?;
        let upper = self.upper.get(q).cloned();
        let exact = upper.as_ref().is_some_and(|u| u.value == lower.value);
        Ok(BoundInterval {
            relation: q.relation,
            alpha: q.alpha.clone(),
            k: q.k,
            lower,
            upper,
            exact,
        })
    }

    fn offer(&mut self, b: Bound) -> bool {
        let mut changed = false;
        if matches!(b.kind, BoundKind::Lower | BoundKind::Exact)
            && self.lower.get(&b.query).is_none_or(|c| b.value > c.value)
        {
            self.lower.insert(b.query.clone(), b.clone());
            changed = true;
        }
        if matches!(b.kind, BoundKind::Upper | BoundKind::Exact)
            && self.upper.get(&b.query).is_none_or(|c| b.value < c.value)
        {
            self.upper.insert(b.query.clone(), b);
            changed = true;
        }
        changed
    }

    fn transfers(&self) -> Vec<Bound> {
        let mut out = Vec::new();
        for q in &self.queries {
            let lower = self.lower.get(q);
            let upper = self.upper.get(q);
            match q.relation {
                Relation::Closed => {
                    if let Some(u) = upper {
                        for r in [Relation::Topological, Relation::Classical] {
                            out.push(moved(u, &q.with_relation(r), BoundKind::Upper, TransferKind::ClosedToWeaker));
                        }
                    }
                }
                Relation::Topological | Relation::Classical => {
                    if let Some(l) = lower {
                        out.push(moved(
                            l,
                            &q.with_relation(Relation::Closed),
                            BoundKind::Lower,
                            TransferKind::WeakerToClosed,
                        ));
                    }
                }
            }
            if q.relation != Relation::Classical && order_reinforcing(&q.alpha) {
                let other = q.with_relation(match q.relation {
                    Relation::Closed => Relation::Topological,
                    _ => Relation::Closed,
                });
                let t = TransferKind::OrderReinforcing;
                out.extend(lower.map(|l| moved(l, &other, BoundKind::Lower, t)));
                out.extend(upper.map(|u| moved(u, &other, BoundKind::Upper, t)));
            }
            if let Some(l) = lower {
                out.push(moved(l, &q.with_k(q.k + 1), BoundKind::Lower, TransferKind::MonotoneK));
            }
            if let (Some(u), true) = (upper, q.k > 2) {
                out.push(moved(u, &q.with_k(q.k - 1), BoundKind::Upper, TransferKind::MonotoneK));
            }
        }
        out.extend(self.alpha_monotone());
        out.extend(self.homeomorphic());
        out
    }

    fn alpha_monotone(&self) -> Vec<Bound> {
        let mut groups: BTreeMap<(Relation, u64), Vec<&BoundQuery>> = BTreeMap::new();
        for q in &self.queries {
            groups.entry((q.relation, q.k)).or_default().push(q);
        }
        let t = TransferKind::MonotoneAlpha;
        let mut out = Vec::new();
        for qs in groups.values_mut() {
            qs.sort_by(|a, b| a.alpha.cmp(&b.alpha));
            let mut best: Option<&Bound> = None;
            for q in qs.iter() {
                if let Some(b) = best {
                    out.push(moved(b, q, BoundKind::Lower, t));
                }
                if let Some(l) = self.lower.get(*q) {
                    if best.is_none_or(|b| l.value > b.value) {
                        best = Some(l);
                    }
                }
            }
            let mut best: Option<&Bound> = None;
            for q in qs.iter().rev() {
                if let Some(b) = best {
                    out.push(moved(b, q, BoundKind::Upper, t));
                }
                if let Some(u) = self.upper.get(*q) {
                    if best.is_none_or(|b| u.value < b.value) {
                        best = Some(u);
                    }
                }
            }
        }
        out
    }

    fn homeomorphic(&self) -> Vec<Bound> {
        let mut groups: HashMap<_, Vec<&BoundQuery>> = HashMap::new();
        for q in self.queries.iter().filter(|q| q.relation == Relation::Topological) {
            groups.entry((q.k, homeo_invariant(&q.alpha))).or_default().push(q);
        }
        let t = TransferKind::Homeomorphic;
        let mut out = Vec::new();
        for qs in groups.values().filter(|g| g.len() > 1) {
            let best_lower = qs.iter().filter_map(|q| self.lower.get(*q)).max_by(|a, b| a.value.cmp(&b.value));
            let best_upper = qs.iter().filter_map(|q| self.upper.get(*q)).min_by(|a, b| a.value.cmp(&b.value));
            for q in qs {
                out.extend(best_lower.map(|b| moved(b, q, BoundKind::Lower, t)));
                out.extend(best_upper.map(|b| moved(b, q, BoundKind::Upper, t)));
            }
        }
        out
    }

    fn check(&self) -> Result<(), EngineError> {
        for q in &self.queries {
            if let (Some(l), Some(u)) = (self.lower.get(q), self.upper.get(q)) {
                if l.value > u.value {
                    return Err(EngineError::Inconsistent {
                        query: q.to_string(),
                        lower: l.value.clone(),
                        upper: u.value.clone(),
                    });
                }
            }
        }
        Ok(())
    }
}

fn moved(src: &Bound, target: &BoundQuery, kind: BoundKind, t: TransferKind) -> Bound {
    let rule = Rule::Transfer(t);
    let mut derivation = src.derivation.clone();
    derivation.push(Step {
        rule,
        cite: rule.cite().to_string(),
        claim: claim(target, kind, &src.value),
        inputs: vec![src.value.clone()],
        value: src.value.clone(),
    });
    Bound {
        query: target.clone(),
        kind,
        value: src.value.clone(),
        derivation,
    }
}

fn closure(seeds: impl IntoIterator<Item = BoundQuery>) -> Vec<BoundQuery> {
    let mut seen = BTreeSet::new();
    let mut todo: Vec<BoundQuery> = seeds.into_iter().collect();
    while let Some(q) = todo.pop() {
        if q.k < 2 || !seen.insert(q.clone()) {
            continue;
        }
        for r in Relation::ALL {
            todo.push(q.with_relation(r));
        }
        todo.extend(rules::dependencies(&q));
    }
    let mut v: Vec<BoundQuery> = seen.into_iter().collect();
    v.sort_by(|a, b| (a.k, &a.alpha, a.relation).cmp(&(b.k, &b.alpha, b.relation)));
    v
}

fn run(mut sol: Solution, ctx: &RuleContext) -> Result<Solution, EngineError> {
    for _ in 0..MAX_PASSES {
        let upper = &sol.upper;
        let subs = |s: &BoundQuery| upper.get(s).cloned();
        let found: Vec<Bound> = sol
            .queries
            .par_iter()
            .flat_map_iter(|q| rules::candidates(q, ctx, &subs))
            .collect();
        let mut changed = false;
        for b in found {
            changed |= sol.offer(b);
        }
        for b in sol.transfers() {
            if sol.lower.contains_key(&b.query) {
                changed |= sol.offer(b);
            }
        }
        if !changed {
            sol.check()?;
            return Ok(sol);
        }
    }
    Err(EngineError::NoRule(format!(
        "bounds did not settle after {MAX_PASSES} passes"
    )))
}

pub(crate) fn solve(seeds: Vec<BoundQuery>, ctx: &RuleContext) -> Result<Solution, EngineError> {
    let queries = closure(seeds);
    let mut sol = Solution {
        queries,
        ..Solution::default()
    };
    for q in sol.queries.clone() {
        sol.offer(target_lower(&q, ctx)?);
    }
    run(sol, ctx)
}

/// Warm start from an existing solution with additional queries.
pub(crate) fn extend(base: &Solution, extra: Vec<BoundQuery>, ctx: &RuleContext) -> Result<Solution, EngineError> {
    let queries = closure(base.queries.iter().cloned().chain(extra));
    let mut sol = Solution {
        queries,
        lower: base.lower.clone(),
        upper: base.upper.clone(),
    };
    for q in sol.queries.clone() {
        if !sol.lower.contains_key(&q) {
            sol.offer(target_lower(&q, ctx)?);
        }
    }
    run(sol, ctx)
}

/// The trivial lower bound, which marks `q` as part of the universe.
fn target_lower(q: &BoundQuery, ctx: &RuleContext) -> Result<Bound, EngineError> {
    let inputs = vec![rules::trivial_lower(q)];
    let value = Rule::TargetLower.evaluate(&inputs, ctx.oracles)?;
    Ok(Bound {
        query: q.clone(),
        kind: BoundKind::Lower,
        value: value.clone(),
        derivation: vec![Step {
            rule: Rule::TargetLower,
            cite: Rule::TargetLower.cite().to_string(),
            claim: claim(q, BoundKind::Lower, &value),
            inputs,
            value,
        }],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::rules::Oracles;
    use crate::engine::EngineConfig;
    use crate::ordinal::Ordinal;

    fn q(rel: Relation, a: &str, k: u64) -> BoundQuery {
        BoundQuery::new(rel, a.parse().unwrap(), k)
    }

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn closure_adds_relations_and_dependencies() {
        let u = closure([q(Relation::Closed, "w+2", 3)]);
        assert!(u.contains(&q(Relation::Topological, "w+2", 3)));
        assert!(u.contains(&q(Relation::Closed, "w+1", 3)));
        assert!(u.contains(&q(Relation::Closed, "w+2", 2)));
        assert!(u.windows(2).all(|p| p[0].k <= p[1].k));
    }

    #[test]
    fn small_fixpoint() {
        let config = EngineConfig::default();
        let oracles = Oracles::new(config.digraph_budget, config.ramsey_budget);
        let ctx = RuleContext {
            config: &config,
            oracles: &oracles,
        };
        let sol = solve(vec![q(Relation::Closed, "w+3", 3)], &ctx).unwrap();
        let i = sol.interval(&q(Relation::Closed, "w+3", 3)).unwrap();
        assert_eq!(i.upper.unwrap().value, o("w^2*4+w*2+3"));
        let t = sol.interval(&q(Relation::Topological, "w+3", 3)).unwrap();
        assert!(t.exact);
        assert_eq!(t.lower.value, o("w^2+1"));
        assert!(sol.interval(&q(Relation::Closed, "w*9", 3)).is_err());
    }
}
