//! Acceptance suite: one line per criterion, nonzero exit when any fails.
//!
//! Run with `cargo test -p ordram --test acceptance`.

use ordram::build::{mono, nat, poly, sum, w, wpow};
use ordram::engine::Rule;
use ordram::oracle::{self, digraph::exhaustive_good_exists, Provenance, SearchBudget};
use ordram::ordinal::{milner_rado_sum, mr_sum_oracle_check};
use ordram::pigeonhole::pcl_number;
use ordram::topology::{derived_space_type, homeomorphic, left_quotient, less_star, order_reinforcing, tree_parent};
use ordram::witness::{all_witnesses, brute_force_full_subtree_exists, finite_full_subtree, Color, FiniteTree, ViolationKind};
use ordram::{format_ordinal, parse_ordinal, Bound, BoundQuery, Engine, EngineConfig, Ordinal, Relation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn eq(what: &str, got: &Ordinal, want: &Ordinal) -> Result<(), String> {
    ensure(got == want, || format!("{what}: got {got}, expected {want}"))
}

fn o(s: &str) -> Ordinal {
    parse_ordinal(s).unwrap()
}

fn upper(b: &ordram::BoundInterval) -> Result<&Bound, String> {
    b.upper.as_ref().ok_or_else(|| format!("{}: no upper bound", BoundQuery::new(b.relation, b.alpha.clone(), b.k)))
}

/// `w*m + n`.
fn wm(m: u64, n: u64) -> Ordinal {
    sum(&[mono(nat(1), m), nat(n)])
}

// 1. Closed pigeonhole table.
fn pigeonhole_table() -> Check {
    let mut n = 0;
    let mut check = |targets: Vec<Ordinal>, want: Ordinal| -> Result<(), String> {
        n += 1;
        let got = pcl_number(&targets).map_err(|e| e.to_string())?;
        let shown: Vec<String> = targets.iter().map(format_ordinal).collect();
        eq(&format!("P^cl({})", shown.join(", ")), &got, &want)
    };
    for m in 1..=5u64 {
        for k in 1..=5u64 {
            check(vec![nat(m), nat(k)], nat(m + k - 1))?;
            // (w+1, k) with k a finite target.
            check(vec![wm(1, 1), nat(k)], wm(k, 1))?;
            if m >= k {
                check(vec![wm(1, m), wm(1, k)], sum(&[wpow(nat(2)), mono(nat(1), m - 1), nat(k)]))?;
            }
            // (w*m + k)_2
            check(vec![wm(m, k), wm(m, k)], sum(&[mono(nat(2), 2 * m - 1), mono(nat(1), k - 1), nat(k)]))?;
        }
        let want = if m == 1 {
            w()
        } else if m == 2 {
            mono(nat(2), 2)
        } else {
            mono(nat(2), 2 * m - 2)
        };
        check(vec![wm(m, 0), wm(m, 0)], want)?;
    }
    check(vec![w(), w()], w())?;
    check(vec![wm(1, 1), w()], wpow(nat(2)))?;
    for k in 1..=5usize {
        check(vec![wm(1, 1); k], sum(&[wpow(nat(k as u64)), nat(1)]))?;
        check(vec![wpow(w()); k], wpow(w()))?;
    }
    Ok(format!("{n} table entries"))
}

fn below_omega_cubed() -> Vec<Ordinal> {
    let mut out = Vec::new();
    for a in 0..=3 {
        for b in 0..=3 {
            for c in 0..=3 {
                let x = poly(&[(2, a), (1, b), (0, c)]);
                if !x.is_zero() {
                    out.push(x);
                }
            }
        }
    }
    out
}

// 2. Milner-Rado sum against the brute-force oracle.
fn milner_rado() -> Check {
    let xs = below_omega_cubed();
    let mut n = 0;
    for a in &xs {
        for b in &xs {
            let s = milner_rado_sum(a, b).map_err(|e| e.to_string())?;
            ensure(mr_sum_oracle_check(a, b, &s), || format!("oracle rejects {a} (.) {b} = {s}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} pairs"))
}

// 3. Exact values.
fn exact_values(engine: &Engine) -> Check {
    let mut cases = Vec::new();
    for k in 1..=4u64 {
        cases.push((Relation::Closed, wm(1, 1), k + 1, sum(&[wpow(nat(k)), nat(1)])));
    }
    cases.push((Relation::Closed, wm(1, 2), 3, o("w^2*2+w+2")));
    cases.push((Relation::Classical, wm(2, 0), 3, o("w*4")));
    for (rel, alpha, k, want) in &cases {
        let q = BoundQuery::new(*rel, alpha.clone(), *k);
        let b = engine.best_bounds(&q).map_err(|e| e.to_string())?;
        ensure(b.exact, || format!("{q} not exact: [{}, {:?}]", b.lower.value, b.upper.as_ref().map(|u| u.value.to_string())))?;
        eq(&q.to_string(), &b.lower.value, want)?;
    }
    Ok(format!("{} queries exact", cases.len()))
}

// 4. Digraph iteration at m = 2, k = 2.
fn digraph_chain(engine: &Engine) -> Check {
    let d = oracle::digraph_ramsey(2, 3, SearchBudget::default()).map_err(|e| e.to_string())?;
    ensure(d.value == 4, || format!("R(K*_2, L_3) = {}", d.value))?;
    ensure(!exhaustive_good_exists(4, 2, 3), || "a good digraph on 4 vertices exists".into())?;
    let b = engine.bound_omega_m_plus_1(2, 2).map_err(|e| e.to_string())?;
    let betas: Vec<&Ordinal> = b
        .derivation
        .iter()
        .filter(|s| matches!(s.rule, Rule::DigraphBeta))
        .map(|s| &s.value)
        .collect();
    let want = [o("w^4*3+1"), o("w^6*5+1"), o("w^8*7+1")];
    ensure(betas.len() == 3 && betas.iter().zip(&want).all(|(a, b)| *a == b), || {
        format!("betas {:?}", betas.iter().map(|x| x.to_string()).collect::<Vec<_>>())
    })?;
    ensure(
        b.derivation.iter().any(|s| matches!(s.rule, Rule::DigraphRamsey) && s.value == nat(4)),
        || "derivation does not consume R(K*_2, L_3) = 4".into(),
    )?;
    eq("final bound", &b.value, &o("w^8*7+1"))?;
    Ok("beta_1..3 = w^4*3+1, w^6*5+1, w^8*7+1".into())
}

// 5. Step-up values.
fn step_up(engine: &Engine) -> Check {
    let cases = [
        (wm(1, 2), 4, o("w^4*3+w^3+w^2+w+2")),
        (wm(1, 3), 3, o("w^2*4+w*2+3")),
    ];
    let mut used = Vec::new();
    for (alpha, k, want) in cases {
        let q = BoundQuery::new(Relation::Closed, alpha, k);
        let b = engine.best_bounds(&q).map_err(|e| e.to_string())?;
        let u = upper(&b)?;
        eq(&q.to_string(), &u.value, &want)?;
        let rules = u.rules();
        ensure(rules.iter().any(|r| r.starts_with("step-up")), || format!("{q}: no step-up rule in {rules:?}"))?;
        let direct = [engine.step_up_a(&q), engine.step_up_omega_mn(&q), engine.step_up_omega_mn_forward(&q)];
        ensure(direct.iter().flatten().any(|d| d.value == want), || {
            format!("{q}: no step-up rule alone gives {want}")
        })?;
        used.push(rules.into_iter().filter(|r| r.starts_with("step-up")).collect::<Vec<_>>().join("+"));
    }
    Ok(format!("via {}", used.join("; ")))
}

// 6. Chains of the Erdos-Milner kind.
fn chains(engine: &Engine) -> Check {
    let mut cases = vec![
        (Relation::Topological, wpow(w()), 3, wpow(wpow(nat(2)))),
        (Relation::Closed, sum(&[wpow(w()), nat(1)]), 3, sum(&[wpow(wpow(nat(3))), nat(1)])),
    ];
    for k in 1..=3u64 {
        cases.push((Relation::Closed, o("w^2+1"), k + 2, sum(&[wpow(mono(nat(1), k)), nat(1)])));
    }
    for (rel, alpha, k, want) in &cases {
        let q = BoundQuery::new(*rel, alpha.clone(), *k);
        let b = engine.best_bounds(&q).map_err(|e| e.to_string())?;
        eq(&q.to_string(), &upper(&b)?.value, want)?;
    }
    let q = BoundQuery::new(Relation::Closed, o("w^2+1"), 3);
    let offered: Vec<Ordinal> = engine.wtem_successor_bounds(&q).into_iter().map(|b| b.value).collect();
    ensure(offered.contains(&o("w^(w*2)+1")), || format!("successor chain offers {offered:?}"))?;
    Ok(format!("{} upper bounds; min(w^w+1, w^(w*2)+1) selected", cases.len()))
}

// 7. Registry interval with and without the draft improvement.
fn registry_interval() -> Check {
    let q = BoundQuery::new(Relation::Topological, wm(2, 0), 3);
    for (draft, want) in [(false, o("w^3*100")), (true, o("w^3*2"))] {
        let e = Engine::new(EngineConfig {
            include_draft: draft,
            ..EngineConfig::default()
        });
        let b = e.best_bounds(&q).map_err(|e| e.to_string())?;
        eq("lower", &b.lower.value, &o("w^2*3"))?;
        eq(&format!("upper (draft {draft})"), &upper(&b)?.value, &want)?;
    }
    Ok("[w^2*3, w^3*100] and [w^2*3, w^3*2]".into())
}

// 8. Finite oracles.
fn finite_oracles() -> Check {
    let t = Instant::now();
    let budget = SearchBudget {
        verify_registry: true,
        ..SearchBudget::default()
    };
    let r = oracle::finite_ramsey(3, 3, budget).map_err(|e| e.to_string())?;
    let t_ramsey = t.elapsed();
    ensure(r.value == 6 && r.provenance == Provenance::Search, || format!("R(3,3): {r:?}"))?;
    ensure(t_ramsey < Duration::from_secs(1), || format!("R(3,3) took {t_ramsey:?}"))?;
    let t = Instant::now();
    let d = oracle::digraph_ramsey(2, 3, SearchBudget::default()).map_err(|e| e.to_string())?;
    let g = &d.lower_witness;
    ensure(d.value == 4 && g.order() == 3, || format!("digraph value {} on {} vertices", d.value, g.order()))?;
    ensure(
        !g.naive_has_independent_set(2) && !g.naive_has_transitive_tournament(3),
        || "lower witness contains a forced structure".into(),
    )?;
    ensure(!exhaustive_good_exists(4, 2, 3), || "4 vertices do not force the structure".into())?;
    let t_digraph = t.elapsed();
    ensure(t_digraph < Duration::from_secs(10), || format!("digraph search took {t_digraph:?}"))?;
    Ok(format!("R(3,3) = 6 by search in {t_ramsey:.2?}; R(K*_2, L_3) = 4 in {t_digraph:.2?}"))
}

// 9. Witness colorings.
fn witnesses() -> Check {
    let mut parts = Vec::new();
    for wc in all_witnesses() {
        ensure(wc.is_triangle_free() && !wc.has_loops(), || format!("{} class graph is not triangle-free", wc.name))?;
        let r = wc.sampled_report(20, 10_000, 20_240_601);
        let bad = r
            .violations
            .iter()
            .filter(|v| matches!(v.kind, ViolationKind::BlueTriangle | ViolationKind::Partition))
            .count();
        ensure(r.violation_count == 0 && bad == 0, || format!("{}: {} violations", wc.name, r.violation_count))?;
        parts.push(format!("{} ({} triples)", wc.name, r.triples_checked));
    }
    Ok(parts.join(", "))
}

// 10. Consistency sweep, timed from a cold engine.
fn sweep() -> Check {
    let engine = &Engine::default();
    let all = engine.consistency_sweep().map_err(|e| e.to_string())?;
    ensure(all.len() >= 250, || format!("catalog has only {} queries", all.len()))?;
    let mut replayed = 0;
    for i in &all {
        if let Some(u) = &i.upper {
            ensure(i.lower.value <= u.value, || format!("{}: lower {} above upper {}", u.query, i.lower.value, u.value))?;
            u.replay(engine).map_err(|e| e.to_string())?;
            replayed += 1;
        }
        i.lower.replay(engine).map_err(|e| e.to_string())?;
        replayed += 1;
    }
    Ok(format!("{} queries, {replayed} derivations replayed", all.len()))
}

fn random_ordinal(rng: &mut impl Rng, depth: u32) -> Ordinal {
    let n = rng.gen_range(0..=3);
    let mut exps: Vec<Ordinal> = (0..n)
        .map(|_| {
            if depth == 0 || rng.gen_bool(0.6) {
                nat(rng.gen_range(0..4))
            } else {
                random_ordinal(rng, depth - 1)
            }
        })
        .collect();
    exps.sort();
    exps.dedup();
    exps.into_iter()
        .rev()
        .map(|e| mono(e, rng.gen_range(1..=4)))
        .fold(Ordinal::zero(), |acc, m| acc.add(&m))
}

/// `(gamma_1, m_1, purity)` read off the normal form.
fn flum_martinez(x: &Ordinal) -> (Ordinal, u64, Ordinal) {
    let t = x.terms();
    let g1 = t[0].exponent.clone();
    let m1 = t[0].coefficient.to_string().parse().unwrap();
    let p = if t.len() == 1 && !g1.is_zero() {
        Ordinal::zero()
    } else {
        wpow(t.last().unwrap().exponent.clone())
    };
    (g1, m1, p)
}

fn reinforcing_shape(x: &Ordinal) -> bool {
    let t = x.terms();
    x.is_finite()
        || (t.len() == 1 && t[0].coefficient == 1u32.into())
        || (t.len() == 2 && !t[0].exponent.is_zero() && t[1].exponent.is_zero() && t[1].coefficient == 1u32.into())
}

// 11. Property suites.
fn properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let xs: Vec<Ordinal> = (0..10_000).map(|_| random_ordinal(&mut rng, 2)).collect();
    for x in &xs {
        let back = parse_ordinal(&format_ordinal(x)).map_err(|e| e.to_string())?;
        eq("round trip", &back, x)?;
    }
    for t in xs.chunks_exact(3).take(2000) {
        let (a, b, c) = (&t[0], &t[1], &t[2]);
        eq("assoc +", &a.add(b).add(c), &a.add(&b.add(c)))?;
        eq("assoc *", &a.mul(b).mul(c), &a.mul(&b.mul(c)))?;
        eq("left distributivity", &a.mul(&b.add(c)), &a.mul(b).add(&a.mul(c)))?;
        eq("# commutes", &a.natural_sum(b), &b.natural_sum(a))?;
        eq("# assoc", &a.natural_sum(b).natural_sum(c), &a.natural_sum(&b.natural_sum(c)))?;
        if a < b {
            ensure(a.natural_sum(c) < b.natural_sum(c), || format!("# not monotone at {a} < {b}, {c}"))?;
        }
        let g = wpow(a.leading_exponent().succ());
        eq("absorption", &a.add(&g), &g)?;
        eq("left subtract", &a.left_subtract(&a.add(b)).map_err(|e| e.to_string())?, b)?;
    }
    let small = below_omega_cubed();
    for a in small.iter().chain(xs.iter().filter(|x| !x.is_zero()).take(300)) {
        for b in &small {
            let (fa, fb) = (flum_martinez(a), flum_martinez(b));
            ensure(homeomorphic(a, b) == (fa == fb), || format!("homeomorphism of {a} and {b}"))?;
        }
        ensure(order_reinforcing(a) == reinforcing_shape(a), || format!("order-reinforcing {a}"))?;
    }
    for k in 1..=6u64 {
        let space = sum(&[wpow(nat(k)), nat(1)]);
        for j in 0..k {
            eq("derived set", &derived_space_type(&space, &nat(j)), &sum(&[wpow(nat(k - j)), nat(1)]))?;
            // Points of rank >= j, listed by the index -1 + x / w^j, are order-embedded below the claimed type.
            let pts: Vec<Ordinal> = small_points(k).into_iter().filter(|x| x.cb_rank() >= nat(j)).collect();
            let idx: Vec<Ordinal> = pts.iter().map(|x| Ordinal::one().left_subtract(&left_quotient(x, &nat(j))).unwrap()).collect();
            ensure(idx.windows(2).all(|p| p[0] < p[1]), || format!("derived set of w^{k}+1 at {j} is not ordered"))?;
            ensure(idx.iter().all(|i| *i <= wpow(nat(k - j))), || format!("derived set of w^{k}+1 at {j} too long"))?;
        }
    }
    for k in 1..=5u64 {
        let root = wpow(nat(k));
        for x in small_points(k).into_iter().filter(|x| *x < root) {
            let mut steps = 0;
            let mut y = x.clone();
            while y != root {
                let p = tree_parent(&y);
                ensure(less_star(&y, &p), || format!("{y} is not below its parent {p}"))?;
                y = p;
                steps += 1;
                ensure(steps <= k, || format!("{x} has more than {k} ancestors"))?;
            }
            let rank = x.cb_rank().as_u64().unwrap();
            ensure(steps == k - rank, || format!("{x}: {steps} ancestors, expected {}", k - rank))?;
        }
    }
    let tree = FiniteTree::new(2, 3);
    for code in 0u32..1 << 9 {
        let leaves: Vec<Color> = (0..9).map(|i| if code >> i & 1 == 1 { Color::Blue } else { Color::Red }).collect();
        ensure(finite_full_subtree(tree, &leaves, 2).is_some(), || format!("coloring {code:09b} has no full subtree"))?;
        ensure(brute_force_full_subtree_exists(tree, &leaves, 2), || format!("brute force disagrees at {code:09b}"))?;
    }
    Ok("round trip, laws, classification, derived sets, tree heights, quorum".into())
}

/// Nonzero points of `w^k + 1` with coefficients at most 2, increasing.
fn small_points(k: u64) -> Vec<Ordinal> {
    let mut out = vec![wpow(nat(k))];
    let mut digits = vec![0u64; k as usize];
    loop {
        let x = poly(&digits.iter().enumerate().map(|(i, &d)| (k - 1 - i as u64, d)).collect::<Vec<_>>());
        if !x.is_zero() {
            out.push(x);
        }
        let mut i = digits.len();
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            if digits[i] < 2 {
                digits[i] += 1;
                digits[i + 1..].iter_mut().for_each(|d| *d = 0);
                break;
            }
        }
    }
}

type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Check + 'a>);

fn main() {
    let engine = Engine::default();
    let criteria: Vec<Criterion> = vec![
        ("closed pigeonhole table", Duration::from_secs(1), Box::new(pigeonhole_table)),
        ("Milner-Rado oracle equivalence", Duration::from_secs(30), Box::new(milner_rado)),
        ("exact Ramsey values", Duration::MAX, Box::new(|| exact_values(&engine))),
        ("digraph iteration at m=2, k=2", Duration::from_secs(5), Box::new(|| digraph_chain(&engine))),
        ("step-up values", Duration::MAX, Box::new(|| step_up(&engine))),
        ("chain upper bounds", Duration::MAX, Box::new(|| chains(&engine))),
        ("registry interval for R^top(w*2, 3)", Duration::MAX, Box::new(registry_interval)),
        ("finite oracles", Duration::from_secs(11), Box::new(finite_oracles)),
        ("witness suite", Duration::from_secs(30), Box::new(witnesses)),
        ("consistency sweep", Duration::from_secs(60), Box::new(sweep)),
        ("property suites", Duration::from_secs(60), Box::new(properties)),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = run();
        let took = t.elapsed();
        let result = result.and_then(|detail| {
            if took > *limit {
                Err(format!("{detail}; took {took:.2?}, limit {limit:?}"))
            } else {
                Ok(detail)
            }
        });
        match result {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({took:.2?}): {detail}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({took:.2?}): {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
