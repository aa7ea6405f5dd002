//! The Milner-Rado sum: the least ordinal not of the form `a' # b'` with
//! `a' < a` and `b' < b`.

use super::{Ordinal, OrdinalError};
use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// `a (.) b` for nonzero `a`, `b`.
///
/// The set `{a' # b' : a' < a, b' < b}` is downward closed, so the sum is the
/// supremum of `a' # b' + 1`. With a successor operand only its predecessor
/// matters; a limit operand `rho + omega^l` contributes the supremum along its
/// fundamental sequence, which absorbs every digit of the other side below
/// `omega^l`.
pub fn milner_rado_sum(a: &Ordinal, b: &Ordinal) -> Result<Ordinal, OrdinalError> {
    if a.is_zero() || b.is_zero() {
        return Err(OrdinalError::Zero {
            op: "Milner-Rado sum",
        });
    }
    Ok(match (a.predecessor(), b.predecessor()) {
        (Some(pa), Some(pb)) => pa.natural_sum(&pb).succ(),
        (Some(pa), None) => pa.terms_at_least(&b.cb_rank()).natural_sum(b),
        (None, Some(pb)) => pb.terms_at_least(&a.cb_rank()).natural_sum(a),
        (None, None) => {
            let (mu, lambda) = (a.cb_rank(), b.cb_rank());
            if mu >= lambda {
                let (rho, _) = b.tail_decompose()?;
                a.natural_sum(&rho.terms_at_least(&mu))
            } else {
                let (sigma, _) = a.tail_decompose()?;
                b.natural_sum(&sigma.terms_at_least(&lambda))
            }
        }
    })
}

/// Whether `x = a' # b'` for some `a' < a` and `b' < b`, by exhaustive search
/// over the ways of splitting the digits of `x`, pruned once both halves are
/// already known to be strictly smaller.
pub fn is_splittable(x: &Ordinal, a: &Ordinal, b: &Ordinal) -> bool {
    let mut exps: Vec<Ordinal> = x
        .terms()
        .iter()
        .chain(a.terms())
        .chain(b.terms())
        .map(|t| t.exponent.clone())
        .collect();
    exps.sort_by(|p, q| q.cmp(p));
    exps.dedup();
    let digits: Vec<(BigUint, BigUint, BigUint)> = exps
        .iter()
        .map(|e| (x.coefficient_of(e), a.coefficient_of(e), b.coefficient_of(e)))
        .collect();
    split_search(&digits, 0, true, true)
}

fn split_search(digits: &[(BigUint, BigUint, BigUint)], i: usize, a_eq: bool, b_eq: bool) -> bool {
    if !a_eq && !b_eq {
        return true;
    }
    let Some((d, ad, bd)) = digits.get(i) else {
        return false;
    };
    let Some(d) = d.to_u64() else {
        return false;
    };
    for left in 0..=d {
        let left_b = BigUint::from(left);
        let right_b = BigUint::from(d - left);
        let na = if a_eq {
            match left_b.cmp(ad) {
                std::cmp::Ordering::Greater => continue,
                std::cmp::Ordering::Equal => true,
                std::cmp::Ordering::Less => false,
            }
        } else {
            false
        };
        let nb = if b_eq {
            match right_b.cmp(bd) {
                std::cmp::Ordering::Greater => continue,
                std::cmp::Ordering::Equal => true,
                std::cmp::Ordering::Less => false,
            }
        } else {
            false
        };
        if split_search(digits, i + 1, na, nb) {
            return true;
        }
    }
    false
}

/// Independent check that `claimed = a (.) b`: `claimed` itself must not split,
/// while everything below it must. Below a successor it is enough to split
/// the predecessor; below a limit the check walks a prefix of the fundamental
/// sequence long enough that the splitting pattern has stabilized.
pub fn mr_sum_oracle_check(a: &Ordinal, b: &Ordinal, claimed: &Ordinal) -> bool {
    if a.is_zero() || b.is_zero() || is_splittable(claimed, a, b) {
        return false;
    }
    if claimed.is_zero() {
        return false;
    }
    if let Some(p) = claimed.predecessor() {
        return is_splittable(&p, a, b);
    }
    let mass = (a.coefficient_mass() + b.coefficient_mass())
        .to_u64()
        .unwrap_or(u64::MAX)
        .min(48);
    let depth = 4 + mass + (a.terms().len() + b.terms().len()) as u64;
    (0..depth).all(|n| match claimed.fundamental_sequence(n) {
        Ok(x) => is_splittable(&x, a, b),
        Err(_) => false,
    })
}

#[cfg(test)]
mod tests {
    use super::super::build::*;
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(milner_rado_sum(&nat(1), &nat(1)).unwrap(), nat(1));
        assert_eq!(milner_rado_sum(&w(), &w()).unwrap(), w());
        assert_eq!(milner_rado_sum(&nat(2), &nat(2)).unwrap(), nat(3));
        assert_eq!(milner_rado_sum(&nat(1), &nat(2)).unwrap(), nat(2));
        assert_eq!(milner_rado_sum(&nat(2), &w()).unwrap(), w());
        assert_eq!(
            milner_rado_sum(&sum(&[w(), nat(1)]), &w()).unwrap(),
            mono(nat(1), 2)
        );
        assert!(milner_rado_sum(&Ordinal::zero(), &nat(1)).is_err());
    }

    #[test]
    fn mixed_limits() {
        assert_eq!(
            milner_rado_sum(&mono(nat(1), 2), &wpow(nat(2))).unwrap(),
            wpow(nat(2))
        );
        assert_eq!(
            milner_rado_sum(&poly(&[(2, 1), (1, 1)]), &mono(nat(1), 2)).unwrap(),
            poly(&[(2, 1), (1, 2)])
        );
    }

    #[test]
    fn oracle_examples() {
        assert!(mr_sum_oracle_check(&nat(2), &nat(2), &nat(3)));
        assert!(!mr_sum_oracle_check(&nat(2), &nat(2), &nat(2)));
        assert!(!mr_sum_oracle_check(&nat(2), &nat(2), &nat(4)));
        assert!(mr_sum_oracle_check(&w(), &w(), &w()));
        assert!(!mr_sum_oracle_check(&w(), &w(), &mono(nat(1), 2)));
    }
}
