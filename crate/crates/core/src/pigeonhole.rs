//! Pigeonhole numbers: the least `beta` such that every coloring of `beta`
//! with `k` colors has, for some color `i`, a copy of `alpha_i` in color `i`.
//!
//! The closed version (copies closed in their supremum) is computed exactly by
//! a recursion on normal forms. Topological and classical values come from
//! registries of known shapes.

use crate::ordinal::{milner_rado_sum, Ordinal, OrdinalError};
use crate::topology::{homeo_invariant, order_reinforcing};
use num_bigint::BigUint;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PigeonholeError {
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("splitting recursion exceeded depth {0}")]
    RecursionLimit(usize),
    #[error("splitting recursion exceeded {0} memoized states")]
    StateBudget(usize),
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
}

/// Guards for the splitting recursion.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_depth: usize,
    pub max_states: usize,
    /// Refuse up front when the count of multisets of chain positions, a
    /// bound on the reachable states, exceeds this.
    pub max_state_space: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_depth: 1500,
            max_states: 400_000,
            max_state_space: 400_000,
        }
    }
}

/// `P^cl(alpha_1, ..., alpha_k)` for finitely many colors.
pub fn pcl_number(targets: &[Ordinal]) -> Result<Ordinal, PigeonholeError> {
    pcl_number_with(targets, Limits::default())
}

/// `P^cl` with `k` copies of the same target.
pub fn pcl_uniform(target: &Ordinal, k: usize) -> Result<Ordinal, PigeonholeError> {
    pcl_number(&vec![target.clone(); k])
}

pub fn pcl_number_with(targets: &[Ordinal], limits: Limits) -> Result<Ordinal, PigeonholeError> {
    if targets.is_empty() {
        return Err(PigeonholeError::Unsupported(
            "at least one color is required".into(),
        ));
    }
    let mut solver = Solver {
        chains: Vec::new(),
        memo: HashMap::new(),
        limits,
    };
    let mut state = Vec::with_capacity(targets.len());
    for t in targets {
        let c = match solver.chains.iter().position(|ch| ch[0].value == *t) {
            Some(c) => c,
            None => {
                solver.chains.push(split_chain(t)?);
                solver.chains.len() - 1
            }
        };
        state.push((c as u32, 0u32));
    }
    if solver.state_space(&state) > limits.max_state_space {
        return Err(PigeonholeError::StateBudget(limits.max_states));
    }
    solver.solve(state, 0)
}

/// The part split off a target: 1 for finite targets, `omega^b + 1` otherwise.
fn head(t: &Ordinal) -> Ordinal {
    if t.is_finite() {
        Ordinal::one()
    } else {
        Ordinal::omega_power(t.leading_exponent()).succ()
    }
}

/// A chain entry with the facts the recursion asks about it.
struct Link {
    value: Ordinal,
    head: Ordinal,
    /// Exponent of `omega` in `head` (0 for the head 1).
    head_exponent: Ordinal,
    /// `Some(e)` when `value = omega^e` with `e >= 1`.
    power: Option<Ordinal>,
    /// `Some(b)` when `value = omega^b + 1` with `b >= 1`.
    power_plus_one: Option<Ordinal>,
}

/// `t, g1, g2, ..., 0` where each entry is `head(prev) + next = prev`.
fn split_chain(t: &Ordinal) -> Result<Vec<Link>, OrdinalError> {
    let mut chain = Vec::new();
    let mut cur = t.clone();
    loop {
        let h = head(&cur);
        // Zero and infinite powers end the chain: the recursion never
        // splits them.
        let next = if cur.is_zero() || cur.is_infinite_power() {
            None
        } else {
            Some(h.left_subtract(&cur)?)
        };
        chain.push(Link {
            head_exponent: if cur.is_finite() {
                Ordinal::zero()
            } else {
                cur.leading_exponent()
            },
            power: cur.is_infinite_power().then(|| cur.leading_exponent()),
            power_plus_one: omega_power_plus_one(&cur),
            head: h,
            value: cur,
        });
        match next {
            Some(n) => cur = n,
            None => return Ok(chain),
        }
    }
}

/// A target is a position in one of the split chains.
type Slot = (u32, u32);

struct Solver {
    chains: Vec<Vec<Link>>,
    memo: HashMap<Vec<Slot>, Ordinal>,
    limits: Limits,
}

enum Normal {
    Done(Ordinal),
    Open(Vec<Slot>),
}

/// `Some(b)` when `x = omega^b + 1` with `b >= 1`.
fn omega_power_plus_one(x: &Ordinal) -> Option<Ordinal> {
    match x.terms() {
        [hi, lo]
            if hi.coefficient == BigUint::from(1u32)
                && !hi.exponent.is_zero()
                && lo.exponent.is_zero()
                && lo.coefficient == BigUint::from(1u32) =>
        {
            Some(hi.exponent.clone())
        }
        _ => None,
    }
}

fn mr_fold(exps: &[Ordinal]) -> Result<Ordinal, OrdinalError> {
    let mut acc = exps[0].clone();
    for e in &exps[1..] {
        acc = milner_rado_sum(&acc, e)?;
    }
    Ok(acc)
}

/// `P^cl` of the heads of the given links, each 1 or `omega^b + 1`.
fn heads_value(links: &[&Link]) -> Ordinal {
    let big: Vec<&Link> = links
        .iter()
        .copied()
        .filter(|l| !l.head_exponent.is_zero())
        .collect();
    match big.as_slice() {
        [] => Ordinal::one(),
        [l] => l.head.clone(),
        _ => {
            let nsum = big
                .iter()
                .fold(Ordinal::zero(), |acc, l| acc.natural_sum(&l.head_exponent));
            Ordinal::omega_power(nsum).succ()
        }
    }
}

/// `C(n + k - 1, k)`, saturating.
fn multisets(n: u64, k: u64) -> u64 {
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 + i) / (i + 1);
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

impl Solver {
    /// Number of multisets of positions, per chain, for the targets in `state`.
    fn state_space(&self, state: &[Slot]) -> u64 {
        let mut per_chain: HashMap<u32, u64> = HashMap::new();
        for s in state {
            *per_chain.entry(s.0).or_default() += 1;
        }
        per_chain.into_iter().fold(1u64, |acc, (c, k)| {
            acc.saturating_mul(multisets(self.chains[c as usize].len() as u64, k))
        })
    }

    fn link(&self, s: Slot) -> &Link {
        &self.chains[s.0 as usize][s.1 as usize]
    }

    fn at(&self, s: Slot) -> &Ordinal {
        &self.link(s).value
    }

    fn normalize(&self, mut state: Vec<Slot>) -> Normal {
        if state.iter().any(|&s| self.at(s).is_zero()) {
            return Normal::Done(Ordinal::zero());
        }
        let one = Ordinal::one();
        state.retain(|&s| *self.at(s) != one);
        match state.len() {
            0 => Normal::Done(one),
            1 => Normal::Done(self.at(state[0]).clone()),
            _ => {
                state.sort_unstable();
                Normal::Open(state)
            }
        }
    }

    fn solve(&mut self, state: Vec<Slot>, depth: usize) -> Result<Ordinal, PigeonholeError> {
        let state = match self.normalize(state) {
            Normal::Done(v) => return Ok(v),
            Normal::Open(t) => t,
        };
        if let Some(v) = self.memo.get(&state) {
            return Ok(v.clone());
        }
        if depth > self.limits.max_depth {
            return Err(PigeonholeError::RecursionLimit(self.limits.max_depth));
        }
        if self.memo.len() >= self.limits.max_states {
            return Err(PigeonholeError::StateBudget(self.limits.max_states));
        }
        let value = self.clauses(&state, depth)?;
        self.memo.insert(state, value.clone());
        Ok(value)
    }

    fn clauses(&mut self, state: &[Slot], depth: usize) -> Result<Ordinal, PigeonholeError> {
        let links: Vec<&Link> = state.iter().map(|&s| self.link(s)).collect();
        if links.iter().any(|l| l.power.is_some()) {
            // Every target is either a power of omega already or is rounded
            // up to the least power of omega above it.
            let exps: Vec<Ordinal> = links
                .iter()
                .map(|l| match &l.power {
                    Some(e) => e.clone(),
                    None => l.value.leading_exponent().succ(),
                })
                .collect();
            return Ok(Ordinal::omega_power(mr_fold(&exps)?));
        }
        if links.iter().all(|l| l.power_plus_one.is_some()) {
            let nsum = links.iter().fold(Ordinal::zero(), |acc, l| {
                acc.natural_sum(l.power_plus_one.as_ref().expect("checked"))
            });
            return Ok(Ordinal::omega_power(nsum).succ());
        }
        // Split each target as head + rest and recurse on each rest in turn.
        let base = heads_value(&links);
        let mut best = Ordinal::zero();
        for i in 0..state.len() {
            let mut next = state.to_vec();
            next[i].1 += 1;
            let q = self.solve(next, depth + 1)?;
            if q > best {
                best = q;
            }
        }
        Ok(base.add(&best))
    }
}

/// Known values of the topological pigeonhole number.
///
/// A topological copy only depends on the homeomorphism type of the target,
/// so each target is first replaced by an order-reinforcing ordinal
/// homeomorphic to it when one exists; for order-reinforcing targets the
/// topological and closed numbers coincide. Two copies of `omega*m` are
/// tabulated separately.
pub fn ptop_registry(targets: &[Ordinal]) -> Option<Ordinal> {
    if targets.is_empty() {
        return None;
    }
    if targets.len() == 2 && targets[0] == targets[1] {
        if let [t] = targets[0].terms() {
            if t.exponent == Ordinal::one() {
                let m = t.coefficient.clone();
                let w2 = Ordinal::nat(2u32);
                if m == BigUint::from(2u32) {
                    return Some(Ordinal::monomial(w2, 2u32));
                }
                if m > BigUint::from(2u32) {
                    let c: BigUint = m * 2u32 - 3u32;
                    return Some(Ordinal::monomial(w2, c).succ());
                }
            }
        }
    }
    let reps = targets
        .iter()
        .map(order_reinforcing_representative)
        .collect::<Option<Vec<_>>>()?;
    pcl_number(&reps).ok()
}

/// An order-reinforcing ordinal homeomorphic to `x`, if there is one.
pub fn order_reinforcing_representative(x: &Ordinal) -> Option<Ordinal> {
    if order_reinforcing(x) {
        return Some(x.clone());
    }
    let inv = homeo_invariant(x);
    if inv.purity == Ordinal::one() {
        let rep = Ordinal::monomial(inv.gamma1, inv.m1).succ();
        debug_assert_eq!(homeo_invariant(&rep), homeo_invariant(x));
        return Some(rep);
    }
    None
}

/// Known values of the classical pigeonhole number.
pub fn classical_p_registry(targets: &[Ordinal]) -> Option<Ordinal> {
    let first = targets.first()?;
    if targets.iter().all(Ordinal::is_finite) {
        let total = targets
            .iter()
            .map(|t| t.as_nat().expect("finite"))
            .try_fold(BigUint::from(0u32), |acc, n| {
                if n == BigUint::from(0u32) {
                    None
                } else {
                    Some(acc + n - 1u32)
                }
            });
        return Some(total.map_or(Ordinal::zero(), |s| Ordinal::nat(s + 1u32)));
    }
    if !targets.iter().all(|t| t == first) {
        return None;
    }
    let k = targets.len() as u64;
    if first.is_infinite_power() {
        return Some(first.clone());
    }
    if *first == Ordinal::omega().succ() {
        return Some(Ordinal::monomial(Ordinal::one(), k).succ());
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::build::*;

    #[test]
    fn normalization() {
        assert_eq!(pcl_number(&[nat(0), w()]).unwrap(), Ordinal::zero());
        assert_eq!(pcl_number(&[nat(1), nat(1)]).unwrap(), nat(1));
        assert_eq!(pcl_number(&[nat(1), w()]).unwrap(), w());
        assert!(matches!(pcl_number(&[]), Err(PigeonholeError::Unsupported(_))));
    }

    #[test]
    fn clause_examples() {
        assert_eq!(pcl_number(&[nat(3), nat(4)]).unwrap(), nat(6));
        assert_eq!(
            pcl_number(&[sum(&[w(), nat(1)]), sum(&[w(), nat(1)])]).unwrap(),
            sum(&[wpow(nat(2)), nat(1)])
        );
        assert_eq!(pcl_uniform(&wpow(w()), 3).unwrap(), wpow(w()));
        assert_eq!(
            pcl_number(&[sum(&[w(), nat(1)]), w()]).unwrap(),
            wpow(nat(2))
        );
        assert_eq!(pcl_number(&[w(), nat(3)]).unwrap(), w());
    }

    #[test]
    fn clause_five_examples() {
        let w2 = sum(&[w(), nat(2)]);
        assert_eq!(
            pcl_number(&[w2.clone(), w2]).unwrap(),
            poly(&[(2, 1), (1, 1), (0, 2)])
        );
        let x = mono(nat(1), 2);
        assert_eq!(pcl_number(&[x.clone(), x]).unwrap(), mono(nat(2), 2));
    }

    #[test]
    fn guards_fire() {
        let big = Ordinal::nat(5000u32);
        let r = pcl_number_with(
            &[big.clone(), big],
            Limits {
                max_depth: 100,
                max_states: 1_000_000,
                max_state_space: u64::MAX,
            },
        );
        assert!(matches!(r, Err(PigeonholeError::RecursionLimit(100))));
        let many = vec![sum(&[mono(nat(1), 7), nat(5)]); 17];
        assert!(matches!(pcl_number(&many), Err(PigeonholeError::StateBudget(_))));
    }

    #[test]
    fn ptop_examples() {
        assert_eq!(
            ptop_registry(&[sum(&[w(), nat(3)]), sum(&[w(), nat(2)])]).unwrap(),
            sum(&[wpow(nat(2)), nat(1)])
        );
        assert_eq!(
            ptop_registry(&[mono(nat(1), 3), mono(nat(1), 3)]).unwrap(),
            sum(&[mono(nat(2), 3), nat(1)])
        );
        assert_eq!(
            ptop_registry(&[mono(nat(1), 2), mono(nat(1), 2)]).unwrap(),
            mono(nat(2), 2)
        );
        assert_eq!(ptop_registry(&[wpow(w()), wpow(w())]).unwrap(), wpow(w()));
        assert_eq!(ptop_registry(&[poly(&[(2, 1), (1, 1)]), nat(2)]), None);
    }

    #[test]
    fn classical_examples() {
        let w1 = sum(&[w(), nat(1)]);
        assert_eq!(
            classical_p_registry(&[w1.clone(), w1.clone(), w1]).unwrap(),
            sum(&[mono(nat(1), 3), nat(1)])
        );
        assert_eq!(classical_p_registry(&[wpow(nat(2)), wpow(nat(2))]).unwrap(), wpow(nat(2)));
        assert_eq!(classical_p_registry(&[nat(3), nat(4)]).unwrap(), nat(6));
        assert_eq!(classical_p_registry(&[sum(&[w(), nat(2)]), sum(&[w(), nat(2)])]), None);
    }
}
