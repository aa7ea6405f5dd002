//! Topological structure of ordinal spaces: homeomorphism invariants,
//! derived sets, and the tree order `<*` on ordinals.

use crate::ordinal::{Ordinal, OrdinalError};
use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("{0} is a leaf of the tree (its tail exponent is 0)")]
    Leaf(Ordinal),
    #[error("{0} has a limit tail exponent, so its children do not form an omega-sequence")]
    LimitTail(Ordinal),
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
}

/// Complete invariant of a countable ordinal up to homeomorphism.
///
/// For `x = omega^g1 * m1 + ...`, two ordinals are homeomorphic exactly when
/// `g1`, `m1` and `purity` agree. `purity` is 0 when `x = omega^g1 * m1` with
/// `g1 > 0`, and `omega^CB(x)` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HomeoInvariant {
    pub gamma1: Ordinal,
    #[serde(serialize_with = "serialize_display")]
    pub m1: BigUint,
    pub purity: Ordinal,
}

fn serialize_display<S: serde::Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

pub fn homeo_invariant(x: &Ordinal) -> HomeoInvariant {
    let gamma1 = x.leading_exponent();
    let m1 = x.leading_coefficient();
    let purity = if x.is_zero() || (x.terms().len() == 1 && !gamma1.is_zero()) {
        Ordinal::zero()
    } else {
        Ordinal::omega_power(x.cb_rank())
    };
    HomeoInvariant { gamma1, m1, purity }
}

pub fn homeomorphic(a: &Ordinal, b: &Ordinal) -> bool {
    homeo_invariant(a) == homeo_invariant(b)
}

/// Least ordinal homeomorphic to `x`: `omega^g1 * m1 + purity` for infinite `x`.
pub fn least_homeomorphic(x: &Ordinal) -> Ordinal {
    if x.is_finite() {
        return x.clone();
    }
    let inv = homeo_invariant(x);
    Ordinal::monomial(inv.gamma1, inv.m1).add(&inv.purity)
}

/// Finite, `omega^g * m + 1` with `g > 0`, or `omega^g` with `g > 0`: the
/// ordinals for which every homeomorphic copy contains a closed copy.
pub fn order_reinforcing(a: &Ordinal) -> bool {
    if a.is_finite() {
        return true;
    }
    match a.terms() {
        [t] => t.coefficient == BigUint::from(1u32),
        [_, last] => last.exponent.is_zero() && last.coefficient == BigUint::from(1u32),
        _ => false,
    }
}

/// Order type of the `g`-th derived set of the space `a`.
///
/// For `g = 0` this is `a` itself. For `g > 0` the derived set is
/// `{0 < x < a : CB(x) >= g}`, the nonzero multiples of `omega^g` below `a`.
/// Writing `a = omega^g * q + r` with `r < omega^g`, those multiples are
/// `omega^g * y` for `1 <= y < q` (and `y = q` too when `r > 0`).
pub fn derived_space_type(a: &Ordinal, g: &Ordinal) -> Ordinal {
    if g.is_zero() {
        return a.clone();
    }
    let quotient = left_quotient(a, g);
    let remainder_nonzero = a.terms().last().is_some_and(|t| t.exponent < *g);
    let bound = if remainder_nonzero {
        quotient.succ()
    } else {
        quotient
    };
    if bound.is_zero() {
        return Ordinal::zero();
    }
    Ordinal::one()
        .left_subtract(&bound)
        .expect("bound is at least 1")
}

/// `q` with `a = omega^g * q + r`, `r < omega^g`.
pub fn left_quotient(a: &Ordinal, g: &Ordinal) -> Ordinal {
    a.terms()
        .iter()
        .take_while(|t| t.exponent >= *g)
        .map(|t| {
            let e = g.left_subtract(&t.exponent).expect("exponent at least g");
            Ordinal::monomial(e, t.coefficient.clone())
        })
        .fold(Ordinal::zero(), |acc, m| acc.add(&m))
}

/// Tree order: `a <* b` when `b = eta + omega^gamma` and `a = eta + zeta` with
/// `0 < zeta < omega^gamma`. Since `eta` is a multiple of `omega^gamma`, this is
/// the same as `eta < a < b`.
pub fn less_star(a: &Ordinal, b: &Ordinal) -> bool {
    let Ok((eta, _)) = b.tail_decompose() else {
        return false;
    };
    eta < *a && a < b
}

/// `b` is the immediate `<*`-predecessor of `a`: `b = a + omega^(CB(a)+1)`.
pub fn covers_star(a: &Ordinal, b: &Ordinal) -> bool {
    less_star(a, b) && tree_parent(a) == *b
}

/// The node directly above `x` in the tree.
pub fn tree_parent(x: &Ordinal) -> Ordinal {
    x.add(&Ordinal::omega_power(x.cb_rank().succ()))
}

/// The `n`-th child of `parent = eta + omega^(d+1)`, namely `eta + omega^d * (n+1)`.
pub fn tree_child(parent: &Ordinal, n: u64) -> Result<Ordinal, TopologyError> {
    let (eta, gamma) = parent.tail_decompose()?;
    if gamma.is_zero() {
        return Err(TopologyError::Leaf(parent.clone()));
    }
    let Some(d) = gamma.predecessor() else {
        return Err(TopologyError::LimitTail(parent.clone()));
    };
    Ok(eta.add(&Ordinal::monomial(d, BigUint::from(n) + 1u32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::build::*;

    #[test]
    fn invariant_examples() {
        let inv = homeo_invariant(&sum(&[w(), nat(2)]));
        assert_eq!(inv.gamma1, nat(1));
        assert_eq!(inv.m1, BigUint::from(1u32));
        assert_eq!(inv.purity, nat(1));
        assert_eq!(homeo_invariant(&mono(nat(1), 2)).purity, Ordinal::zero());
        assert!(homeomorphic(&sum(&[w(), nat(1)]), &sum(&[w(), nat(5)])));
        assert!(!homeomorphic(&w(), &sum(&[w(), nat(1)])));
        assert!(!homeomorphic(&nat(3), &nat(4)));
        assert!(!homeomorphic(&poly(&[(2, 1), (1, 1)]), &poly(&[(2, 1), (0, 1)])));
    }

    #[test]
    fn least_homeomorphic_examples() {
        assert_eq!(least_homeomorphic(&sum(&[w(), nat(4)])), sum(&[w(), nat(1)]));
        assert_eq!(least_homeomorphic(&poly(&[(2, 3), (1, 1)])), poly(&[(2, 3), (1, 1)]));
        assert_eq!(least_homeomorphic(&poly(&[(2, 3), (1, 4), (1, 0)])), poly(&[(2, 3), (1, 1)]));
        assert_eq!(least_homeomorphic(&mono(nat(1), 2)), mono(nat(1), 2));
        assert_eq!(least_homeomorphic(&nat(5)), nat(5));
        for x in [sum(&[w(), nat(4)]), poly(&[(3, 2), (1, 5), (0, 2)]), wpow(w())] {
            let y = least_homeomorphic(&x);
            assert!(homeomorphic(&x, &y) && y <= x);
        }
    }

    #[test]
    fn order_reinforcing_examples() {
        assert!(order_reinforcing(&nat(7)));
        assert!(order_reinforcing(&sum(&[mono(nat(1), 3), nat(1)])));
        assert!(order_reinforcing(&wpow(w())));
        assert!(!order_reinforcing(&sum(&[w(), nat(2)])));
        assert!(!order_reinforcing(&mono(nat(1), 2)));
        assert!(!order_reinforcing(&poly(&[(2, 1), (1, 1)])));
    }

    #[test]
    fn derived_examples() {
        let a = sum(&[wpow(nat(2)), nat(1)]);
        assert_eq!(derived_space_type(&a, &nat(1)), sum(&[w(), nat(1)]));
        assert_eq!(derived_space_type(&a, &Ordinal::zero()), a);
        assert_eq!(derived_space_type(&a, &nat(2)), nat(1));
        assert_eq!(derived_space_type(&wpow(nat(2)), &nat(1)), w());
        assert_eq!(derived_space_type(&nat(5), &nat(1)), Ordinal::zero());
        assert_eq!(derived_space_type(&mono(nat(1), 3), &nat(1)), nat(2));
    }

    #[test]
    fn tree_examples() {
        assert!(less_star(&sum(&[wpow(nat(3)), w()]), &mono(nat(3), 2)));
        assert!(!less_star(&sum(&[wpow(nat(3)), w()]), &mono(nat(3), 3)));
        assert_eq!(tree_child(&wpow(nat(2)), 0).unwrap(), w());
        assert_eq!(
            tree_child(&mono(nat(2), 2), 1).unwrap(),
            poly(&[(2, 1), (1, 2)])
        );
        assert!(matches!(tree_child(&nat(3), 0), Err(TopologyError::Leaf(_))));
        assert!(matches!(tree_child(&wpow(w()), 0), Err(TopologyError::LimitTail(_))));
        let c = tree_child(&mono(nat(2), 2), 4).unwrap();
        assert!(covers_star(&c, &mono(nat(2), 2)));
        assert!(!covers_star(&nat(1), &mono(nat(2), 2)));
    }
}
