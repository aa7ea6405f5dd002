//! The fixed set of targets whose bounds are computed up front.

use super::{BoundQuery, Relation};
use crate::ordinal::build::{mono, nat, poly, sum, w, wpow};
use crate::ordinal::Ordinal;

/// Targets covered by the precomputed catalog, in increasing order.
pub fn catalog_alphas() -> Vec<Ordinal> {
    let mut v: Vec<Ordinal> = (2..=4).map(nat).collect();
    for n in 0..=4 {
        v.push(sum(&[w(), nat(n)]));
    }
    for m in 2..=4u64 {
        for n in 0..=3 {
            v.push(poly(&[(1, m), (0, n)]));
        }
    }
    let sq = wpow(nat(2));
    v.push(sq.clone());
    v.push(sq.succ());
    v.push(mono(nat(2), 2).succ());
    v.push(wpow(nat(3)).succ());
    v.push(mono(nat(3), 2).succ());
    for a in [nat(1), nat(2), w()] {
        let tower = wpow(wpow(a));
        v.push(tower.succ());
        v.push(tower);
    }
    v.sort();
    v.dedup();
    v
}

/// Every catalog target for every relation and `k` in `2..=max_k`.
pub fn catalog_queries(max_k: u64) -> Vec<BoundQuery> {
    let alphas = catalog_alphas();
    let mut out = Vec::new();
    for k in 2..=max_k {
        for a in &alphas {
            for r in Relation::ALL {
                out.push(BoundQuery::new(r, a.clone(), k));
            }
        }
    }
    out
}
