//! Recognizers for the target shapes the rules are stated for.

use crate::ordinal::Ordinal;
use num_traits::{One, ToPrimitive};

pub fn finite(a: &Ordinal) -> Option<u64> {
    a.as_u64()
}

/// `a = omega*m + n` with `m >= 1`.
pub fn omega_times_plus(a: &Ordinal) -> Option<(u64, u64)> {
    let one = Ordinal::one();
    match a.terms() {
        [t] if t.exponent == one => Some((t.coefficient.to_u64()?, 0)),
        [t, u] if t.exponent == one && u.exponent.is_zero() => {
            Some((t.coefficient.to_u64()?, u.coefficient.to_u64()?))
        }
        _ => None,
    }
}

/// `a = omega^e` with `e >= 1`.
pub fn omega_power(a: &Ordinal) -> Option<&Ordinal> {
    a.log_if_power().filter(|e| !e.is_zero())
}

/// `a = omega^(omega^b)` with `b >= 1`.
pub fn omega_tower(a: &Ordinal) -> Option<&Ordinal> {
    omega_power(a).and_then(omega_power)
}

/// `a = omega^(omega^b) + 1` with `b >= 1`.
pub fn omega_tower_plus_one(a: &Ordinal) -> Option<Ordinal> {
    let p = a.predecessor()?;
    omega_tower(&p).cloned()
}

/// `a = omega^n * m + 1` with finite `n >= 1`.
pub fn omega_poly_plus_one(a: &Ordinal) -> Option<(u64, u64)> {
    match a.terms() {
        [t, u] if u.exponent.is_zero() && u.coefficient.is_one() => {
            let n = t.exponent.as_u64().filter(|&n| n >= 1)?;
            Some((n, t.coefficient.to_u64()?))
        }
        _ => None,
    }
}
