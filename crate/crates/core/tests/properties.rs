mod common;

use common::*;
use proptest::prelude::*;
use wordmap_lab::bounds::{self, F1Branch};
use wordmap_lab::census::{estimate_solutions, TranslateProfile};
use wordmap_lab::familycheck::{self, verify_lemma};
use wordmap_lab::freeword::{derived_word, Syllable};
use wordmap_lab::homset;
use wordmap_lab::tuples::TupleSpace;
use wordmap_lab::{Budgets, Rational, Word};

fn rho_strategy() -> impl Strategy<Value = Rational> {
    (1i64..10_000).prop_flat_map(|den| (1..=den, Just(den))).prop_map(|(n, d)| Rational::new(n, d))
}

fn raw_syllables(vars: u32, max_len: usize) -> impl Strategy<Value = Vec<Syllable>> {
    prop::collection::vec((1..=vars, -3i64..=3), 0..max_len)
        .prop_map(|v| v.into_iter().map(|(a, e)| Syllable::new(a, e)).collect())
}

fn word_strategy(vars: u32, max_len: usize) -> impl Strategy<Value = Word> {
    raw_syllables(vars, max_len).prop_map(Word::reduce)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn bound_invariants(rho in rho_strategy()) {
        let t = bounds::f(&rho).unwrap();
        prop_assert!(t.f2.is_positive() && t.f2 <= rho);
        prop_assert!(t.f1.is_positive() && t.f1 < rho.pow(2));
        prop_assert!(t.check_invariants());
        let cb = bounds::commuting_bound(&rho).unwrap();
        prop_assert!(cb.is_positive() && cb < Rational::one());
    }

    #[test]
    fn f1_branch_follows_three_rho(rho in rho_strategy()) {
        let branch = bounds::f1_branch(&rho).unwrap();
        let third = Rational::new(1, 3);
        if rho < third {
            prop_assert_eq!(branch, F1Branch::Cube);
        } else {
            prop_assert_eq!(branch, F1Branch::Square);
        }
        let c = Rational::from_int(bounds::ceil_two_over(&rho).unwrap());
        let expected = if rho <= third {
            rho.pow(3) / (Rational::from_int(4) * c)
        } else {
            rho.pow(2) / (Rational::from_int(12) * c)
        };
        prop_assert_eq!(bounds::f1(&rho).unwrap(), expected);
    }

    #[test]
    fn rational_round_trips(an in -10_000i64..10_000, ad in 1i64..10_000, bn in -10_000i64..10_000, bd in 1i64..10_000) {
        let a = Rational::new(an, ad);
        let b = Rational::new(bn, bd);
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a.clone());
        }
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }
}

proptest! {
    #[test]
    fn reduce_is_idempotent_and_shortens(raw in raw_syllables(4, 30)) {
        let raw_len: u64 = raw.iter().map(|s| s.exp.unsigned_abs()).sum();
        let w = Word::reduce(raw);
        prop_assert!(w.len() <= raw_len);
        prop_assert_eq!(Word::reduce(w.syllables().to_vec()), w.clone());
        for pair in w.syllables().windows(2) {
            prop_assert_ne!(pair[0].var, pair[1].var);
        }
    }

    #[test]
    fn word_times_inverse_is_empty(w in word_strategy(4, 20)) {
        prop_assert!(w.concat(&w.invert()).is_empty());
        prop_assert!(w.invert().concat(&w).is_empty());
    }

    #[test]
    fn print_parse_fixed_point(w in word_strategy(5, 20)) {
        let printed = w.to_string();
        let back: Word = printed.parse().unwrap();
        prop_assert_eq!(&back, &w);
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn substitution_composes(
        w in word_strategy(2, 6),
        a in prop::collection::vec(word_strategy(2, 4), 2),
        b in prop::collection::vec(word_strategy(3, 4), 2),
    ) {
        let step = w.substitute(&a).unwrap().substitute(&b).unwrap();
        let composed: Vec<Word> = a.iter().map(|x| x.substitute(&b).unwrap()).collect();
        prop_assert_eq!(step, w.substitute(&composed).unwrap());
    }

    #[test]
    fn derived_word_evaluates_like_the_equation(w in word_strategy(2, 6), seed in 0u64..1000) {
        let g = group("S4");
        let d = w.arity();
        let v = derived_word(&w);
        let mut s = seed;
        let t: Vec<u32> = (0..3 * d).map(|_| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 33) % 24) as u32
        }).collect();
        prop_assert_eq!(naive_eval(&v, &g, &t) == 0, equation_holds(&w, &g, d, &t));
    }

    #[test]
    fn quotient_profile_partitions_pairs(bits in prop::collection::vec(any::<bool>(), 36)) {
        prop_assume!(bits.iter().any(|&b| b));
        let g = group("S3");
        let space = TupleSpace::new(6, 2, "t", u128::MAX).unwrap();
        let p = TranslateProfile::new(&g, space, &bits, u128::MAX).unwrap();
        let s = p.set_size();
        prop_assert_eq!(p.quotients.iter().sum::<u64>(), s * s);
        prop_assert_eq!(p.intersections[0], s);
    }

    #[test]
    fn lemma_pairs_are_symmetric_with_full_diagonal(seed in 0u64..500) {
        let inst = familycheck::fuzz_instance(seed, seed % 20).unwrap();
        let r = verify_lemma(&inst).unwrap();
        let sets = inst.sets();
        let min_meet = r.threshold.ceil();
        let meets = |i: usize, j: usize| {
            num_bigint::BigInt::from(sets[i].intersection_count(&sets[j])) >= min_meet
        };
        for i in 0..sets.len() {
            prop_assert!(meets(i, i));
            for j in 0..i {
                prop_assert_eq!(meets(i, j), meets(j, i));
            }
        }
        prop_assert!(r.pass);
    }
}

#[test]
fn five_hundred_random_words_have_nontrivial_derived_words() {
    use rand::{Rng, SeedableRng};
    let mut r = rand_xoshiro::Xoshiro256PlusPlus::seed_from_u64(500);
    let mut made = 0;
    while made < 500 {
        let len = r.gen_range(2..=20);
        let raw: Vec<Syllable> = (0..len)
            .map(|_| Syllable::new(r.gen_range(1..=4), if r.gen_bool(0.5) { 1 } else { -1 }))
            .collect();
        let w = Word::reduce(raw);
        if w.len() < 2 {
            continue;
        }
        assert!(!derived_word(&w).is_empty(), "{w}");
        made += 1;
    }
}

#[test]
fn best_agreement_is_invariant_under_relabeling() {
    let b = Budgets::default();
    let s3 = group("S3");
    let other = group("perm:(1 2),(1 2 3)");
    let shuffled = s3.relabeled(&[0, 3, 5, 1, 4, 2]).unwrap();
    for ws in ["x1^2", "x1^3", "x1*x2", "x1*x2*x1^-1*x2^-1"] {
        let w = word(ws);
        let base = homset::best_agreement(&w, &s3, w.arity(), &b).unwrap().rho;
        for g in [&other, &shuffled] {
            assert_eq!(homset::best_agreement(&w, g, w.arity(), &b).unwrap().rho, base, "{ws}");
        }
    }
}

#[test]
fn estimator_does_not_depend_on_worker_count() {
    let g = group("S3");
    let w = word("x1*x2");
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| estimate_solutions(&w, &g, 2, 50_000, 9).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn exact_census_does_not_depend_on_worker_count() {
    let g = group("Q8");
    let w = word("x1*x2*x1^-1*x2^-1");
    let run =
        |threads| {
            rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| {
                wordmap_lab::census::count_solutions_exact(&w, &g, 2, &Budgets::default()).unwrap()
            })
        };
    assert_eq!(run(1), run(3));
}
