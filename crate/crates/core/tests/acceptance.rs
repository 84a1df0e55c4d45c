//! The ten acceptance criteria. Each prints one PASS/FAIL line; run with
//! `cargo test --test acceptance -- --nocapture` to see them.

mod common;

use std::time::Instant;

use common::*;
use wordmap_lab::bounds;
use wordmap_lab::census::{
    count_solutions_exact, estimate_solutions, verify_commuting_corollary, verify_mann_equivalence,
    verify_theorem, CensusMode, VerifyOptions,
};
use wordmap_lab::familycheck::{adversarial_families, fuzz_instance, verify_lemma};
use wordmap_lab::freeword::{derived_word, Syllable};
use wordmap_lab::homset;
use wordmap_lab::tuples::TupleSpace;
use wordmap_lab::{Budgets, Elem, Rational, Word};

/// Relative tolerance for the floating-point cross-check of the bound table.
const FLOAT_REL_TOL: f64 = 1e-12;
/// Criterion 9: at least this many of `ESTIMATOR_RUNS` intervals must cover.
const ESTIMATOR_RUNS: u64 = 100;
const ESTIMATOR_MIN_COVERED: usize = 90;
const ESTIMATOR_SAMPLES: u64 = 100_000;
/// Criterion 10 runs the naive census up to this many triples.
const ORACLE_TRIPLE_LIMIT: u64 = 100_000;
const LEMMA_FUZZ: u64 = 1000;
const RANDOM_WORDS: usize = 500;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bound_table() -> Outcome {
    let rows = [
        (q(1, 1), q(1, 24), q(1, 6), q(1, 144)),
        (q(1, 2), q(1, 192), q(1, 40), q(1, 7680)),
        (q(1, 3), q(1, 648), q(1, 126), q(1, 81648)),
    ];
    for (rho, f1, f2, f) in rows {
        let t = bounds::f(&rho).map_err(|e| e.to_string())?;
        ensure(t.f1 == f1 && t.f2 == f2 && t.f == f, || format!("rho={rho}: got {t:?}"))?;
        // plain floating point straight from the formulas
        let r = rho.to_f64();
        let c = (2.0 / r).ceil();
        let g1 = (r * r / (12.0 * c)).min(r * r * r / (4.0 * c));
        let g2 = r / (c * (c + 1.0));
        for (exact, float) in [(&t.f1, g1), (&t.f2, g2), (&t.f, g1 * g2)] {
            let rel = (exact.to_f64() - float).abs() / float;
            ensure(rel < FLOAT_REL_TOL, || format!("rho={rho}: float mismatch {exact} vs {float}"))?;
        }
    }
    Ok("3 rows exact, float cross-check agrees".into())
}

fn theorem_cases() -> Vec<(&'static str, &'static str, usize)> {
    let mut cases = Vec::new();
    for &g in BATTERY_GROUPS {
        let n = group(g).order();
        for &w in BATTERY_WORDS {
            let d = word(w).arity();
            if d == 2 && (n > 8 || g == "A4") {
                continue;
            }
            cases.push((g, w, d));
        }
    }
    cases
}

fn theorem_battery() -> Outcome {
    let opts = VerifyOptions { mode: CensusMode::Exact, ..VerifyOptions::default() };
    let cases = theorem_cases();
    for &(gs, ws, d) in &cases {
        let r = verify_theorem(&word(ws), &group(gs), gs, d, &opts).map_err(|e| format!("{gs} {ws}: {e}"))?;
        let chain = r.proof_chain.as_ref().ok_or_else(|| format!("{gs} {ws}: no proof chain"))?;
        let sols = r.solutions.exact_count().ok_or_else(|| format!("{gs} {ws}: not exact"))?;
        let n3 = Rational::from((r.group_order as u64).pow(3 * d as u32));
        let f1f2 = &(&r.bounds.f1 * &r.bounds.f2) * &n3;
        ensure(r.pass, || format!("{gs} {ws}: report failed {:?}", r.checks))?;
        ensure(r.required.le_count(sols), || format!("{gs} {ws}: {sols} < {}", r.required))?;
        ensure(sols as u128 >= chain.triple_count, || format!("{gs} {ws}: solutions < triples"))?;
        ensure(f1f2 <= Rational::from(chain.triple_count as u64), || {
            format!("{gs} {ws}: triples < f1 f2 N^3")
        })?;
    }
    Ok(format!("{} reports pass with full proof chain", cases.len()))
}

fn mann_specialization() -> Outcome {
    let b = Budgets::default();
    let mut n = 0;
    for gs in ["S3", "D4", "Q8", "C6"] {
        for e in [-1, 2, 3] {
            let r = verify_mann_equivalence(e, &group(gs), &b).map_err(|e| e.to_string())?;
            ensure(r.equal, || format!("{gs} e={e}: {} vs {}", r.direct_count, r.derived_count))?;
            n += 1;
        }
    }
    Ok(format!("{n} equal counts"))
}

fn abelian_saturation() -> Outcome {
    let b = Budgets::default();
    let mut n = 0;
    for &gs in BATTERY_GROUPS {
        let g = group(gs);
        if !g.is_abelian() {
            continue;
        }
        for &ws in BATTERY_WORDS {
            let w = word(ws);
            let d = w.arity();
            let rho = homset::best_agreement(&w, &g, d, &b).map_err(|e| e.to_string())?.rho;
            ensure(rho == Rational::one(), || format!("{gs} {ws}: rho = {rho}"))?;
            let c = count_solutions_exact(&w, &g, d, &b).map_err(|e| e.to_string())?;
            let total = (g.order() as u64).pow(3 * d as u32);
            ensure(c.exact_count() == Some(total), || format!("{gs} {ws}: census {c:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} abelian cases saturated"))
}

fn commuting() -> Outcome {
    for (gs, expected) in [("S3", q(1, 2)), ("D4", q(5, 8)), ("Q8", q(5, 8)), ("A4", q(1, 3))] {
        let g = group(gs);
        let mut pairs = 0u64;
        for_each_tuple(g.order(), 2, |t| pairs += (g.mul(t[0], t[1]) == g.mul(t[1], t[0])) as u64);
        let n = g.order() as u64;
        let brute = Rational::new(pairs, n * n);
        let classes = Rational::new(g.conjugacy_class_count() as u64, n);
        ensure(brute == expected && classes == expected, || format!("{gs}: {brute} / {classes}"))?;
        ensure(g.commuting_probability() == expected, || format!("{gs}: library disagrees"))?;
    }
    let b = Budgets::default();
    for &gs in BATTERY_GROUPS {
        let r = verify_commuting_corollary(&group(gs), gs, &b, 1).map_err(|e| e.to_string())?;
        ensure(r.pass, || format!("{gs}: {r:?}"))?;
    }
    Ok(format!("4 exact values, corollary holds on {} groups", BATTERY_GROUPS.len()))
}

fn lemma_fuzz() -> Outcome {
    for k in 0..LEMMA_FUZZ {
        let inst = fuzz_instance(0, k).map_err(|e| e.to_string())?;
        let r = verify_lemma(&inst).map_err(|e| e.to_string())?;
        ensure(r.pass, || format!("fuzz instance {k}: {r:?}"))?;
    }
    let adv = adversarial_families();
    for (i, inst) in adv.iter().enumerate() {
        let r = verify_lemma(inst).map_err(|e| e.to_string())?;
        ensure(r.pass, || format!("adversarial {i}: {r:?}"))?;
    }
    Ok(format!("{LEMMA_FUZZ} fuzz + {} adversarial, zero violations", adv.len()))
}

fn nontriviality() -> Outcome {
    use rand::{Rng, SeedableRng};
    let mut r = rand_xoshiro::Xoshiro256PlusPlus::seed_from_u64(7);
    let mut made = 0;
    while made < RANDOM_WORDS {
        let len = r.gen_range(2..=20);
        let raw = (0..len).map(|_| Syllable::new(r.gen_range(1..=4), if r.gen_bool(0.5) { 1 } else { -1 }));
        let w = Word::reduce(raw.collect::<Vec<_>>());
        if !(2..=20).contains(&w.len()) {
            continue;
        }
        ensure(!derived_word(&w).is_empty(), || format!("{w} has an empty derived word"))?;
        made += 1;
    }
    ensure(derived_word(&word("x1")).is_empty(), || "x1 should give the empty word".into())?;
    Ok(format!("{RANDOM_WORDS} random words nontrivial, x1 trivial"))
}

fn threshold_sanity() -> Outcome {
    let mut groups: Vec<&str> = BATTERY_GROUPS.to_vec();
    groups.extend(["D8", "C16", "C4xC4", "C2xC2xC2xC2"]);
    let limits = [(-1, q(3, 4)), (2, q(1, 2)), (3, q(3, 4))];
    let mut nonabelian = 0;
    for gs in groups {
        let g = group(gs);
        if g.order() > 16 || g.is_abelian() {
            continue;
        }
        nonabelian += 1;
        for (e, limit) in &limits {
            let (p, _) =
                homset::power_agreement_profile(&g, *e, true, u128::MAX).map_err(|e| e.to_string())?;
            ensure(p <= *limit, || format!("{gs} e={e}: {p} > {limit}"))?;
        }
    }
    Ok(format!("{nonabelian} nonabelian groups below all thresholds"))
}

fn estimator() -> Outcome {
    let g = group("S3");
    let w = word("x1*x2");
    let exact = count_solutions_exact(&w, &g, 2, &Budgets::default()).map_err(|e| e.to_string())?;
    let p = exact.proportion();
    ensure(p == q(3, 8), || format!("exact proportion {p}"))?;
    let mut covered = 0;
    for seed in 0..ESTIMATOR_RUNS {
        let est = estimate_solutions(&w, &g, 2, ESTIMATOR_SAMPLES, seed).map_err(|e| e.to_string())?;
        covered += est.covers(&p) as usize;
    }
    ensure(covered >= ESTIMATOR_MIN_COVERED, || format!("{covered}/{ESTIMATOR_RUNS} covered"))?;
    let json = |seed| {
        serde_json::to_string(&estimate_solutions(&w, &g, 2, ESTIMATOR_SAMPLES, seed).unwrap()).unwrap()
    };
    ensure(json(42) == json(42), || "same seed gave different output".into())?;
    Ok(format!("{covered}/{ESTIMATOR_RUNS} intervals cover 3/8, reproducible"))
}

fn oracle_equivalence() -> Outcome {
    let b = Budgets::default();
    let mut census_cases = 0;
    for &gs in BATTERY_GROUPS {
        let g = group(gs);
        for &ws in BATTERY_WORDS {
            let w = word(ws);
            let d = w.arity();
            if (g.order() as u64).pow(3 * d as u32) > ORACLE_TRIPLE_LIMIT {
                continue;
            }
            let fast = count_solutions_exact(&w, &g, d, &b).map_err(|e| e.to_string())?.exact_count();
            let naive = naive_census(&w, &g, d);
            ensure(fast == Some(naive), || format!("{gs} {ws}: {fast:?} vs {naive}"))?;
            census_cases += 1;
        }
    }
    let mut hom_cases = 0;
    for (gs, d) in [("C2", 1), ("C2", 2), ("C3", 1), ("C3", 2), ("C4", 1), ("C2xC2", 1)] {
        let g = group(gs);
        let space = TupleSpace::new(g.order(), d, "t", u128::MAX).map_err(|e| e.to_string())?;
        let mut ours: Vec<Vec<Elem>> = homset::homs_power(&g, d, u128::MAX)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|h| {
                let mut t = vec![0; d];
                (0..space.size())
                    .map(|i| {
                        space.decode(i, &mut t);
                        h.apply(&g, &t)
                    })
                    .collect()
            })
            .collect();
        let mut brute = brute_force_homs(&g, d);
        ours.sort();
        brute.sort();
        ensure(ours == brute, || format!("{gs} d={d}: {} vs {} homs", ours.len(), brute.len()))?;
        hom_cases += 1;
    }
    Ok(format!("{census_cases} census cases, {hom_cases} hom-set cases match"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("bound table", bound_table),
        ("theorem battery", theorem_battery),
        ("power word specialization", mann_specialization),
        ("abelian saturation", abelian_saturation),
        ("commuting probability", commuting),
        ("set family lemma fuzz", lemma_fuzz),
        ("derived word nontriviality", nontriviality),
        ("automorphism thresholds", threshold_sanity),
        ("estimator calibration", estimator),
        ("oracle equivalence", oracle_equivalence),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why} ({secs:.2}s)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
