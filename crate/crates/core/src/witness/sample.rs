//! Seeded sampling of finite point sets from a witness space.

use super::{Color, WitnessColoring};
use crate::ordinal::Ordinal;
use itertools::Itertools;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Largest coefficient produced below a free digit.
pub const MAX_SAMPLE_COEFFICIENT: u64 = 50;

/// Violations kept per trial; the count covers all of them.
const KEEP_PER_TRIAL: usize = 8;

/// A random ordinal below `bound`, which must have finite exponents.
///
/// Digits are drawn from the top exponent down. While the prefix equals the
/// bound's, the digit is capped by the bound's digit; afterwards by
/// [`MAX_SAMPLE_COEFFICIENT`]. Zero is drawn with probability 2/5 so that limit
/// points of every rank show up, and the bound's own digit with probability
/// 1/5 while still tight.
pub fn sample_below(bound: &Ordinal, rng: &mut impl Rng) -> Ordinal {
    assert!(!bound.is_zero(), "nothing lies below 0");
    let top = bound
        .leading_exponent()
        .as_u64()
        .expect("sampling needs finite exponents");
    loop {
        let mut tight = true;
        let mut x = Ordinal::zero();
        for e in (0..=top).rev() {
            let b = bound
                .coefficient_of(&Ordinal::nat(e))
                .to_u64()
                .unwrap_or(u64::MAX);
            let cap = if tight { b } else { MAX_SAMPLE_COEFFICIENT };
            let roll: f64 = rng.gen();
            let d = if roll < 0.4 {
                0
            } else if tight && roll < 0.6 {
                b
            } else {
                rng.gen_range(0..=cap)
            };
            if d < b {
                tight = false;
            }
            if d > 0 {
                x = x.add(&Ordinal::monomial(Ordinal::nat(e), d));
            }
        }
        if !tight {
            return x;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// Three sampled points with all pairs blue.
    BlueTriangle,
    /// A point in zero or several classes.
    Partition,
    /// Two points of one class colored blue.
    SameClassBlue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub trial: u64,
    pub kind: ViolationKind,
    pub points: Vec<Ordinal>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    pub witness: String,
    pub trials: u64,
    pub sample_size: usize,
    pub seed: u64,
    pub points_checked: u64,
    pub triples_checked: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    pub verdict: String,
}

struct TrialOutcome {
    points: u64,
    triples: u64,
    count: u64,
    kept: Vec<Violation>,
}

impl WitnessColoring {
    /// Runs `trials` independent trials of `sample_size` points each. Trial
    /// `t` uses stream `t` of a ChaCha8 generator seeded with `seed`, so the
    /// report does not depend on scheduling.
    pub fn sampled_report(&self, sample_size: usize, trials: u64, seed: u64) -> SampleReport {
        let n = self.classes.len();
        let adj: Vec<Vec<bool>> = (0..n)
            .map(|a| (0..n).map(|b| self.class_color(a, b) == Color::Blue).collect())
            .collect();
        let outcomes: Vec<TrialOutcome> = (0..trials)
            .into_par_iter()
            .map(|t| self.trial(t, sample_size, seed, &adj))
            .collect();
        let mut violations = Vec::new();
        let (mut points, mut triples, mut count) = (0, 0, 0);
        for o in outcomes {
            points += o.points;
            triples += o.triples;
            count += o.count;
            violations.extend(o.kept);
        }
        SampleReport {
            witness: self.name.to_string(),
            trials,
            sample_size,
            seed,
            points_checked: points,
            triples_checked: triples,
            violation_count: count,
            violations,
            verdict: if count == 0 { "pass" } else { "fail" }.to_string(),
        }
    }

    fn trial(&self, t: u64, sample_size: usize, seed: u64, adj: &[Vec<bool>]) -> TrialOutcome {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t);
        let mut pts: Vec<Ordinal> = (0..sample_size).map(|_| sample_below(&self.space, &mut rng)).collect();
        pts.sort();
        pts.dedup();
        let mut out = TrialOutcome {
            points: pts.len() as u64,
            triples: 0,
            count: 0,
            kept: Vec::new(),
        };
        let record = |out: &mut TrialOutcome, kind, points: Vec<Ordinal>| {
            out.count += 1;
            if out.kept.len() < KEEP_PER_TRIAL {
                out.kept.push(Violation { trial: t, kind, points });
            }
        };
        let mut cls = Vec::with_capacity(pts.len());
        let mut classified = Vec::with_capacity(pts.len());
        for p in &pts {
            match self.classes_containing(p).as_slice() {
                [i] => {
                    cls.push(*i);
                    classified.push(p.clone());
                }
                _ => record(&mut out, ViolationKind::Partition, vec![p.clone()]),
            }
        }
        for (a, b) in (0..cls.len()).tuple_combinations() {
            if cls[a] == cls[b] && adj[cls[a]][cls[b]] {
                record(
                    &mut out,
                    ViolationKind::SameClassBlue,
                    vec![classified[a].clone(), classified[b].clone()],
                );
            }
        }
        for (a, b, c) in (0..cls.len()).tuple_combinations() {
            out.triples += 1;
            if adj[cls[a]][cls[b]] && adj[cls[b]][cls[c]] && adj[cls[a]][cls[c]] {
                record(
                    &mut out,
                    ViolationKind::BlueTriangle,
                    vec![classified[a].clone(), classified[b].clone(), classified[c].clone()],
                );
            }
        }
        out
    }
}
