//! Ordinals below epsilon_0 in hereditary Cantor normal form.

mod milner_rado;
mod notation;

pub use milner_rado::{is_splittable, milner_rado_sum, mr_sum_oracle_check};
pub use notation::{format_ordinal, parse_ordinal, ParseError};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("left subtraction needs a <= b, got a = {a}, b = {b}")]
    NotLessOrEqual { a: Ordinal, b: Ordinal },
    #[error("{op} is undefined for 0")]
    Zero { op: &'static str },
    #[error("{value} is not a limit ordinal")]
    NotLimit { value: Ordinal },
    #[error("terms must have strictly decreasing exponents and positive coefficients")]
    Malformed,
}

/// One summand `omega^exponent * coefficient` of a normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub exponent: Ordinal,
    pub coefficient: BigUint,
}

/// An ordinal `omega^e1*c1 + ... + omega^en*cn` with `e1 > ... > en`, every
/// `ci > 0`. The empty sum is 0.
///
/// The derived ordering is the ordinal ordering: two normal forms compare
/// lexicographically term by term, and a proper prefix is smaller.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ordinal {
    terms: Vec<Term>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::nat(1u32)
    }

    pub fn nat(n: impl Into<BigUint>) -> Self {
        let n = n.into();
        if n.is_zero() {
            return Self::zero();
        }
        Ordinal {
            terms: vec![Term {
                exponent: Self::zero(),
                coefficient: n,
            }],
        }
    }

    pub fn omega() -> Self {
        Self::omega_power(Self::one())
    }

    /// `omega^e`.
    pub fn omega_power(e: Ordinal) -> Self {
        Self::monomial(e, 1u32)
    }

    /// `omega^e * c`.
    pub fn monomial(e: Ordinal, c: impl Into<BigUint>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        Ordinal {
            terms: vec![Term {
                exponent: e,
                coefficient: c,
            }],
        }
    }

    /// Builds a normal form from `(exponent, coefficient)` pairs, rejecting
    /// anything that is not already normalized.
    pub fn from_terms(terms: Vec<(Ordinal, BigUint)>) -> Result<Self, OrdinalError> {
        for w in terms.windows(2) {
            if w[0].0 <= w[1].0 {
                return Err(OrdinalError::Malformed);
            }
        }
        if terms.iter().any(|(_, c)| c.is_zero()) {
            return Err(OrdinalError::Malformed);
        }
        Ok(Ordinal {
            terms: terms
                .into_iter()
                .map(|(exponent, coefficient)| Term {
                    exponent,
                    coefficient,
                })
                .collect(),
        })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.exponent.is_zero())
    }

    pub fn as_nat(&self) -> Option<BigUint> {
        match self.terms.as_slice() {
            [] => Some(BigUint::zero()),
            [t] if t.exponent.is_zero() => Some(t.coefficient.clone()),
            _ => None,
        }
    }

    pub fn as_u64(&self) -> Option<u64> {
        self.as_nat().and_then(|n| n.to_u64())
    }

    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|t| t.exponent.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        self.terms.last().is_some_and(|t| !t.exponent.is_zero())
    }

    /// Exponent of the leading term; 0 for 0.
    pub fn leading_exponent(&self) -> Ordinal {
        self.terms.first().map(|t| t.exponent.clone()).unwrap_or_default()
    }

    pub fn leading_coefficient(&self) -> BigUint {
        self.terms
            .first()
            .map(|t| t.coefficient.clone())
            .unwrap_or_default()
    }

    /// `Some(e)` when `self = omega^e`. Note `1 = omega^0`.
    pub fn log_if_power(&self) -> Option<&Ordinal> {
        match self.terms.as_slice() {
            [t] if t.coefficient.is_one() => Some(&t.exponent),
            _ => None,
        }
    }

    /// `omega^e` with `e >= 1`.
    pub fn is_infinite_power(&self) -> bool {
        self.log_if_power().is_some_and(|e| !e.is_zero())
    }

    pub fn predecessor(&self) -> Option<Ordinal> {
        if !self.is_successor() {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("successor has a term");
        if last.coefficient.is_one() {
            terms.pop();
        } else {
            last.coefficient -= 1u32;
        }
        Some(Ordinal { terms })
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    /// Ordinal sum `self + rhs`.
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some(lead) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .take_while(|t| t.exponent > lead.exponent)
            .cloned()
            .collect();
        let mut rest = rhs.terms.iter();
        if let Some(t) = self.terms.get(terms.len()) {
            if t.exponent == lead.exponent {
                terms.push(Term {
                    exponent: lead.exponent.clone(),
                    coefficient: &t.coefficient + &lead.coefficient,
                });
                rest.next();
            }
        }
        terms.extend(rest.cloned());
        Ordinal { terms }
    }

    /// Ordinal product `self * rhs`, distributing `self` over the terms of `rhs`.
    pub fn mul(&self, rhs: &Ordinal) -> Ordinal {
        if self.is_zero() || rhs.is_zero() {
            return Ordinal::zero();
        }
        let lead = &self.terms[0].exponent;
        let mut out = Ordinal::zero();
        for t in &rhs.terms {
            let piece = if t.exponent.is_zero() {
                self.mul_nat(&t.coefficient)
            } else {
                Ordinal::monomial(lead.add(&t.exponent), t.coefficient.clone())
            };
            out = out.add(&piece);
        }
        out
    }

    /// `self * n` for a natural `n`.
    pub fn mul_nat(&self, n: &BigUint) -> Ordinal {
        if self.is_zero() || n.is_zero() {
            return Ordinal::zero();
        }
        let mut terms = self.terms.clone();
        terms[0].coefficient *= n;
        Ordinal { terms }
    }

    /// The unique `c` with `self + c = b`.
    pub fn left_subtract(&self, b: &Ordinal) -> Result<Ordinal, OrdinalError> {
        if self > b {
            return Err(OrdinalError::NotLessOrEqual {
                a: self.clone(),
                b: b.clone(),
            });
        }
        for (i, bt) in b.terms.iter().enumerate() {
            match self.terms.get(i) {
                Some(at) if at == bt => continue,
                Some(at) if at.exponent == bt.exponent => {
                    let mut terms = vec![Term {
                        exponent: bt.exponent.clone(),
                        coefficient: &bt.coefficient - &at.coefficient,
                    }];
                    terms.extend(b.terms[i + 1..].iter().cloned());
                    return Ok(Ordinal { terms });
                }
                _ => {
                    return Ok(Ordinal {
                        terms: b.terms[i..].to_vec(),
                    })
                }
            }
        }
        Ok(Ordinal::zero())
    }

    /// Hessenberg natural sum: add coefficients exponent by exponent.
    pub fn natural_sum(&self, rhs: &Ordinal) -> Ordinal {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        let mut terms = Vec::with_capacity(a.len() + b.len());
        while i < a.len() || j < b.len() {
            let pick = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.exponent.cmp(&y.exponent),
                (Some(_), None) => std::cmp::Ordering::Greater,
                _ => std::cmp::Ordering::Less,
            };
            match pick {
                std::cmp::Ordering::Greater => {
                    terms.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    terms.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    terms.push(Term {
                        exponent: a[i].exponent.clone(),
                        coefficient: &a[i].coefficient + &b[j].coefficient,
                    });
                    i += 1;
                    j += 1;
                }
            }
        }
        Ordinal { terms }
    }

    /// Cantor-Bendixson rank of `self` as a point of any ordinal space
    /// containing it: the exponent of the last term, and 0 for 0.
    pub fn cb_rank(&self) -> Ordinal {
        self.terms
            .last()
            .map(|t| t.exponent.clone())
            .unwrap_or_default()
    }

    /// Splits `self = eta + omega^gamma`, returning `(eta, gamma)`.
    pub fn tail_decompose(&self) -> Result<(Ordinal, Ordinal), OrdinalError> {
        let Some(last) = self.terms.last() else {
            return Err(OrdinalError::Zero {
                op: "tail decomposition",
            });
        };
        let gamma = last.exponent.clone();
        let mut terms = self.terms.clone();
        let t = terms.last_mut().expect("nonempty");
        if t.coefficient.is_one() {
            terms.pop();
        } else {
            t.coefficient -= 1u32;
        }
        Ok((Ordinal { terms }, gamma))
    }

    /// The `n`-th element of the canonical fundamental sequence of a limit.
    pub fn fundamental_sequence(&self, n: u64) -> Result<Ordinal, OrdinalError> {
        if !self.is_limit() {
            return Err(if self.is_zero() {
                OrdinalError::Zero {
                    op: "fundamental sequence",
                }
            } else {
                OrdinalError::NotLimit {
                    value: self.clone(),
                }
            });
        }
        let (eta, gamma) = self.tail_decompose()?;
        let tail = match gamma.predecessor() {
            Some(delta) => Ordinal::monomial(delta, BigUint::from(n) + 1u32),
            None => Ordinal::omega_power(gamma.fundamental_sequence(n)?),
        };
        Ok(eta.add(&tail))
    }

    /// Keeps only the terms whose exponent is at least `e`.
    pub fn terms_at_least(&self, e: &Ordinal) -> Ordinal {
        Ordinal {
            terms: self
                .terms
                .iter()
                .take_while(|t| &t.exponent >= e)
                .cloned()
                .collect(),
        }
    }

    /// Coefficient of `omega^e` (0 when absent).
    pub fn coefficient_of(&self, e: &Ordinal) -> BigUint {
        self.terms
            .iter()
            .find(|t| &t.exponent == e)
            .map(|t| t.coefficient.clone())
            .unwrap_or_default()
    }

    /// Sum of all coefficients, a crude size measure.
    pub fn coefficient_mass(&self) -> BigUint {
        self.terms.iter().map(|t| &t.coefficient).sum()
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

impl From<u32> for Ordinal {
    fn from(n: u32) -> Self {
        Ordinal::nat(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_ordinal(self))
    }
}

impl std::str::FromStr for Ordinal {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ordinal(s)
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_ordinal(self))
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_ordinal(&s).map_err(serde::de::Error::custom)
    }
}

/// Terse builders used throughout the crate and its tests.
pub mod build {
    use super::Ordinal;

    pub fn nat(n: u64) -> Ordinal {
        Ordinal::nat(n)
    }

    pub fn w() -> Ordinal {
        Ordinal::omega()
    }

    /// `omega^e`.
    pub fn wpow(e: Ordinal) -> Ordinal {
        Ordinal::omega_power(e)
    }

    /// `omega^e * c`.
    pub fn mono(e: Ordinal, c: u64) -> Ordinal {
        Ordinal::monomial(e, c)
    }

    /// Sum of the given ordinals, left to right.
    pub fn sum(parts: &[Ordinal]) -> Ordinal {
        parts.iter().fold(Ordinal::zero(), |acc, p| acc.add(p))
    }

    /// Ordinal with the given finite exponents and coefficients, highest first.
    pub fn poly(parts: &[(u64, u64)]) -> Ordinal {
        sum(&parts
            .iter()
            .map(|&(e, c)| mono(nat(e), c))
            .collect::<Vec<_>>())
    }
}
