//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Run with `cargo test -p rcards --test acceptance -- --nocapture` to see
//! the per-criterion lines. Every assertion is exact; there are no
//! tolerances anywhere.

mod common;

use std::collections::BTreeMap;

use num::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use rcards::catalog::{design_8_4_base, strategy_331_m10, strategy_331_m6};
use rcards::design::{
    cyclic_design, design_lambda, orbit_strategy, rotated_family_8_4, strategy_from_designs,
    subsets_of, verify_large_set, Design,
};
use rcards::fileio::{emit_strategy, parse_design_family, parse_strategy};
use rcards::hand;
use rcards::rational::ratio;
use rcards::search::{
    enumerate_designs, max_disjoint_family, min_informative_m, necessary_condition_audit,
};
use rcards::subsets::{binomial, k_subsets};
use rcards::verify::{
    communication_complexity, equitability, is_informative, is_informative_by_definition,
    is_optimal, lower_bound_m, perfect_security_by_definition, perfect_security_check,
    possible_hands, prob_subset_held, weak_security_by_definition, weak_security_check,
};
use rcards::{Announcement, Budget, DealSpec, Hand, Strategy};

/// Criterion 1: the deterministic six-announcement (3,3,1) fixture is
/// informative, 1-equitable, weakly 1-secure, NOT perfectly 1-secure (with
/// a concrete witness), and has m = 6.
#[test]
fn criterion_01_deterministic_331_fixture() {
    let s = parse_strategy(&read_fixture("strategy_331_m6.rc")).unwrap();
    assert_eq!(s, strategy_331_m6());
    assert!(s.is_complete());
    assert!(is_informative(&s).informative);
    assert_eq!(equitability(&s), Some(1));
    assert!(weak_security_check(&s, 1).unwrap().holds);

    let verdict = perfect_security_check(&s, 1).unwrap();
    assert!(!verdict.holds);
    let w = verdict.witness.expect("witness present on failure");
    // Canonically first counterexample; frozen after independent
    // recomputation (announcement 3 in file numbering).
    assert_eq!(w.announcement, 2);
    assert_eq!(w.cathy_hand, hand![0]);
    assert_eq!(w.subset, hand![1]);
    assert_eq!(w.probability, ratio(2, 3));
    // The witness re-checks to the reported probability.
    assert_eq!(
        prob_subset_held(&s, w.announcement, &w.cathy_hand, &w.subset).unwrap(),
        w.probability
    );
    assert_eq!(communication_complexity(&s).m, 6);

    // Through the CLI: exit 1 (perfect security fails) and the report says so.
    let (code, stdout, _) = run_cli(&[
        "verify",
        "--strategy",
        fixture_path("strategy_331_m6.rc").to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert!(stdout.contains("informative: yes"));
    assert!(stdout.contains("equitable: gamma=1"));
    assert!(stdout.contains("weak 1-secure: yes"));
    assert!(stdout.contains("perfect 1-secure: NO"));
    assert!(stdout.contains("witness: announcement 3, cathy {0}, subset {1}, probability 2/3"));
    assert!(stdout.contains("m: 6"));

    println!("ACCEPTANCE 1: PASS - six-announcement (3,3,1) fixture verified");
}

/// Criterion 2: the ten-announcement fixture is informative, 2-equitable,
/// perfectly 1-secure; every announcement is an STS(7); every triple occurs
/// in exactly two announcements; m = 10.
#[test]
fn criterion_02_two_equitable_331_fixture() {
    let s = parse_strategy(&read_fixture("strategy_331_m10.rc")).unwrap();
    assert_eq!(s, strategy_331_m10());
    assert!(is_informative(&s).informative);
    assert_eq!(equitability(&s), Some(2));
    assert!(perfect_security_check(&s, 1).unwrap().holds);
    assert_eq!(communication_complexity(&s).m, 10);

    for ann in s.announcements() {
        let d = Design::new(7, 3, ann.hands().to_vec(), true).unwrap();
        assert_eq!(design_lambda(&d, 2).unwrap(), Some(1), "not an STS(7)");
    }
    for h in k_subsets(7, 3) {
        assert_eq!(
            s.g(&h).len(),
            2,
            "triple {h} not in exactly 2 announcements"
        );
    }

    let (code, stdout, _) = run_cli(&[
        "verify",
        "--strategy",
        fixture_path("strategy_331_m10.rc").to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("perfect 1-secure: yes"));

    println!("ACCEPTANCE 2: PASS - ten-announcement (3,3,1) fixture verified");
}

/// Criterion 3: lower bound 5 for (3,3,1); the exact minimum is 6 with a
/// verified witness; the search with m_max = 5 exhausts with no solution.
#[test]
fn criterion_03_bounds_and_minimum_m() {
    let deal = DealSpec::new(3, 3, 1).unwrap();
    assert_eq!(lower_bound_m(deal).unwrap(), BigUint::from(5u32));

    let found = min_informative_m(deal, 8)
        .unwrap()
        .expect("minimum within 8");
    assert_eq!(found.m, 6);
    assert_eq!(found.witness.m(), 6);
    assert!(found.witness.is_complete());
    assert!(is_informative(&found.witness).informative);

    assert!(min_informative_m(deal, 5).unwrap().is_none());

    let (code, stdout, _) = run_cli(&["lower-bound", "--deal", "3,3,1"]);
    assert_eq!((code, stdout.trim()), (0, "5"));
    let (code, stdout, _) = run_cli(&["search", "min-m", "--deal", "3,3,1", "--max", "8"]);
    assert_eq!((code, stdout.trim()), (0, "6"));
    let (code, stdout, _) = run_cli(&["search", "min-m", "--deal", "3,3,1", "--max", "5"]);
    assert_eq!((code, stdout.trim()), (0, "none"));

    println!("ACCEPTANCE 3: PASS - lower bound 5, exact minimum m = 6 with witness");
}

/// Criterion 4: exactly 30 labeled STS(7); a maximum disjoint family has
/// size 2, certifying that no large set of five exists.
#[test]
fn criterion_04_sts7_census_and_disjointness() {
    let designs = enumerate_designs(2, 7, 3).unwrap();
    assert_eq!(designs.len(), 30);
    for d in &designs {
        assert_eq!(design_lambda(d, 2).unwrap(), Some(1));
    }
    let best = max_disjoint_family(&designs).unwrap();
    assert_eq!(best.size, 2);
    for i in 0..best.family.len() {
        for j in (i + 1)..best.family.len() {
            assert!(!best.family[i].shares_a_block_with(&best.family[j]));
        }
    }
    println!("ACCEPTANCE 4: PASS - 30 STS(7), maximum disjoint family of size 2");
}

/// Criterion 5: the search finds 7 pairwise disjoint STS(9) — a large set
/// (7 = C(9-2, 1)) — and the resulting (3,5,1)-strategy is optimal,
/// informative and perfectly 1-secure with m = 7.
#[test]
fn criterion_05_sts9_large_set_strategy() {
    let designs = enumerate_designs(2, 9, 3).unwrap();
    assert_eq!(designs.len(), 840);
    let best = max_disjoint_family(&designs).unwrap();
    assert_eq!(best.size, 7);
    assert!(verify_large_set(&best.family, 2).unwrap());
    assert_eq!(BigUint::from(best.size), binomial(7, 1));

    let deal = DealSpec::new(3, 5, 1).unwrap();
    let s = strategy_from_designs(&best.family, deal, 1).unwrap();
    assert_eq!(s.m(), 7);
    assert!(is_informative(&s).informative);
    assert!(is_optimal(&s).unwrap());
    assert_eq!(equitability(&s), Some(1));
    assert!(perfect_security_check(&s, 1).unwrap().holds);

    // The committed fixture is such a large set.
    let fixture = parse_design_family(&read_fixture("large_set_sts9.rc")).unwrap();
    assert!(verify_large_set(&fixture, 2).unwrap());

    println!(
        "ACCEPTANCE 5: PASS - large set of 7 STS(9) yields an optimal perfectly 1-secure strategy"
    );
}

/// Criterion 6: the built-in family of ten 3-(8,4,1) designs covers every
/// 4-subset exactly twice, and the induced 2-equitable (4,3,1)-strategy is
/// informative, perfectly 1-secure AND perfectly 2-secure.
#[test]
fn criterion_06_ten_design_family() {
    let family = rotated_family_8_4();
    assert_eq!(family.len(), 10);
    for d in &family {
        assert_eq!(design_lambda(d, 3).unwrap(), Some(1), "not 3-(8,4,1)");
    }
    let mut replication: BTreeMap<Hand, u32> = BTreeMap::new();
    for d in &family {
        for b in d.blocks() {
            *replication.entry(b.clone()).or_insert(0) += 1;
        }
    }
    assert_eq!(replication.len(), 70);
    assert!(replication.values().all(|&c| c == 2));

    let deal = DealSpec::new(4, 3, 1).unwrap();
    let s = strategy_from_designs(&family, deal, 2).unwrap();
    assert_eq!(equitability(&s), Some(2));
    assert!(is_informative(&s).informative);
    assert!(perfect_security_check(&s, 1).unwrap().holds);
    assert!(perfect_security_check(&s, 2).unwrap().holds);

    // The committed fixture holds the same family.
    let fixture = parse_design_family(&read_fixture("family_3_8_4_ten.rc")).unwrap();
    assert_eq!(fixture, family);

    println!(
        "ACCEPTANCE 6: PASS - ten 3-(8,4,1) designs give a perfectly 2-secure (4,3,1)-strategy"
    );
}

/// Criterion 7: the full orbit of the base 3-(8,4,1) design has m = 30
/// announcements with replication gamma = 6 and |Aut| = 1344; the identity
/// m = gamma (n - t) holds; the strategy is informative, perfectly 1- and
/// 2-secure; and the CLI report flags the alternative formula reading.
#[test]
fn criterion_07_orbit_construction() {
    let outcome = orbit_strategy(&design_8_4_base(), false).unwrap();
    assert_eq!(outcome.m, 30);
    assert_eq!(outcome.gamma, 6);
    assert_eq!(outcome.aut_order, BigUint::from(1344u32));
    assert!(outcome.identity_holds()); // 30 = 6 * (8 - 3)

    let s = &outcome.strategy;
    assert_eq!(s.deal(), DealSpec::new(4, 3, 1).unwrap());
    assert!(is_informative(s).informative);
    assert!(perfect_security_check(s, 1).unwrap().holds);
    assert!(perfect_security_check(s, 2).unwrap().holds);

    // CLI report flags the (gamma = n!/|Aut|, m = gamma(n-t)) reading.
    let base = fixture_path("family_3_8_4_ten.rc");
    let text = std::fs::read_to_string(&base).unwrap();
    let first_design: String = text
        .lines()
        .take(16) // header + design header + 14 blocks
        .collect::<Vec<_>>()
        .join("\n")
        + "\n";
    let tmp = std::env::temp_dir().join("rcards_orbit_seed.rc");
    std::fs::write(&tmp, first_design).unwrap();
    let out = std::env::temp_dir().join("rcards_orbit_out.rc");
    let (code, stdout, _) = run_cli(&[
        "construct",
        "orbit",
        "--design",
        tmp.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("orbit: m=30"));
    assert!(stdout.contains("gamma=6"));
    assert!(stdout.contains("|Aut| = n!/m = 1344"));
    assert!(stdout.contains("30 = 6*5 holds"));
    assert!(stdout.contains("disagrees with the enumerated orbit"));

    println!(
        "ACCEPTANCE 7: PASS - orbit has (m, gamma, |Aut|) = (30, 6, 1344); discrepancy flagged"
    );
}

/// Criterion 8: the cyclic 2-(13,4,1) design as a deterministic
/// announcement: for Cathy holding two cards of a block, |P| = 6, the two
/// block-mates have probability 1/2 and the nine outsiders 1/3. A supplied
/// 55-design large-set file additionally passes the full checks.
#[test]
fn criterion_08_four_seven_two_probabilities() {
    let design = cyclic_design(&[hand![0, 1, 3, 9]], 13).unwrap();
    assert_eq!(design_lambda(&design, 2).unwrap(), Some(1));
    let fixture = parse_design_family(&read_fixture("design_2_13_4_cyclic.rc")).unwrap();
    assert_eq!(fixture, vec![design.clone()]);

    let deal = DealSpec::new(4, 7, 2).unwrap();
    let s = Strategy::partial(
        deal,
        vec![design.to_announcement().unwrap()],
        BTreeMap::new(),
    )
    .unwrap();

    for block in design.blocks() {
        for cathy in subsets_of(block, 2) {
            let mates = block.difference(&cathy);
            let possible = possible_hands(s.announcement(0), &cathy);
            assert_eq!(possible.len(), 6);
            for &w in mates.cards() {
                assert_eq!(
                    prob_subset_held(&s, 0, &cathy, &Hand::new([w]).unwrap()).unwrap(),
                    ratio(1, 2)
                );
            }
            let outsiders = block.complement(13).difference(&cathy);
            assert_eq!(outsiders.len(), 9);
            for &u in outsiders.cards() {
                assert_eq!(
                    prob_subset_held(&s, 0, &cathy, &Hand::new([u]).unwrap()).unwrap(),
                    ratio(1, 3)
                );
            }
        }
    }

    // Same answer through the CLI design pathway.
    let (code, stdout, _) = run_cli(&[
        "prob",
        "--design",
        fixture_path("design_2_13_4_cyclic.rc").to_str().unwrap(),
        "--deal",
        "4,7,2",
        "--announcement",
        "1",
        "--cathy",
        "1,9",
        "--subset",
        "0",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("possible hands: 6"));
    assert!(stdout.contains("= 1/2"));

    // If a 55-design large set is supplied, run the full checks on it.
    let large_set = fixture_path("large_set_2_13_4.rc");
    if large_set.exists() {
        let family = parse_design_family(&std::fs::read_to_string(&large_set).unwrap()).unwrap();
        assert_eq!(family.len(), 55);
        assert!(verify_large_set(&family, 2).unwrap());
        let full = strategy_from_designs(&family, deal, 1).unwrap();
        assert!(is_informative(&full).informative);
        assert!(is_optimal(&full).unwrap());
        println!("ACCEPTANCE 8: PASS - cyclic probabilities exact; 55-design large set verified");
    } else {
        println!(
            "ACCEPTANCE 8: PASS - cyclic probabilities exact (no user-supplied 55-design large set; checked pathway with the STS(9) large set in criterion 5)"
        );
    }
}

/// Criterion 9: criterion-equivalence property suite. The counting
/// criteria agree with the definitional probabilities triple-for-triple,
/// and the two informativeness criteria agree, on all fixtures plus
/// randomized small strategies at n <= 9. Exact equality throughout.
#[test]
fn criterion_09_criterion_equivalence() {
    // Fixtures.
    let m6 = strategy_331_m6();
    let m10 = strategy_331_m10();
    let ten =
        strategy_from_designs(&rotated_family_8_4(), DealSpec::new(4, 3, 1).unwrap(), 2).unwrap();
    for (s, delta) in [(&m6, 2u32), (&m10, 2), (&ten, 2)] {
        assert_counting_matches_probabilities(s, delta);
        assert_posteriors_sum_to_one(s);
        for d in 1..=delta {
            let fast = weak_security_check(s, d).unwrap();
            let slow = weak_security_by_definition(s, d, Budget::default()).unwrap();
            assert_eq!(fast.holds, slow.holds);
            let fast = perfect_security_check(s, d).unwrap();
            let slow = perfect_security_by_definition(s, d, Budget::default()).unwrap();
            assert_eq!(fast.holds, slow.holds);
        }
        assert_eq!(
            is_informative(s).informative,
            is_informative_by_definition(s).informative
        );
    }

    // Randomized strategies over small deals, deterministic seed.
    let mut rng = ChaCha8Rng::seed_from_u64(20130331);
    let deals = [
        DealSpec::new(3, 3, 1).unwrap(),
        DealSpec::new(2, 2, 1).unwrap(),
        DealSpec::new(3, 4, 2).unwrap(),
        DealSpec::new(2, 5, 2).unwrap(),
    ];
    for deal in deals {
        let delta = 2.min(deal.a());
        for round in 0..6 {
            let classes = 2 + (round % 3);
            let det = random_partition_strategy(deal, classes, &mut rng);
            assert_counting_matches_probabilities(&det, delta);
            let eq2 = random_two_equitable_strategy(deal, classes, &mut rng);
            assert_counting_matches_probabilities(&eq2, delta);
            let biased = random_biased_strategy(deal, classes, &mut rng);
            assert_posteriors_sum_to_one(&biased);

            for s in [&det, &eq2, &biased] {
                // Informativeness: local pairwise test vs the definition.
                let a = is_informative(s);
                let b = is_informative_by_definition(s);
                assert_eq!(a.informative, b.informative);
                // Security verdicts: automatic route vs definitional route.
                for d in 1..=delta {
                    let fast = weak_security_check(s, d).unwrap();
                    let slow = weak_security_by_definition(s, d, Budget::default()).unwrap();
                    assert_eq!(fast.holds, slow.holds, "weak verdict mismatch");
                    let fast = perfect_security_check(s, d).unwrap();
                    let slow = perfect_security_by_definition(s, d, Budget::default()).unwrap();
                    assert_eq!(fast.holds, slow.holds, "perfect verdict mismatch");
                }
            }
        }
    }

    println!(
        "ACCEPTANCE 9: PASS - counting and probabilistic criteria agree exactly everywhere tested"
    );
}

/// Criterion 10: the audit reports zero violations on the fixtures of
/// criteria 2 and 6, and at least one violation on every synthetic
/// strategy with a <= c+1 claiming weak 1-security.
#[test]
fn criterion_10_audit_suite() {
    let report = necessary_condition_audit(&strategy_331_m10(), 1, Budget::default());
    assert!(report.passes(), "fixture 2 audit: {:?}", report.entries);
    assert_eq!(report.d, 2);

    let ten =
        strategy_from_designs(&rotated_family_8_4(), DealSpec::new(4, 3, 1).unwrap(), 2).unwrap();
    let report = necessary_condition_audit(&ten, 2, Budget::default());
    assert!(report.passes(), "fixture 6 audit: {:?}", report.entries);
    assert_eq!(report.d, 3);

    // Synthetic strategies with a <= c+1.
    let synthetics: Vec<(&str, Strategy)> = vec![
        (
            "(1,1,1) singletons",
            singleton_cover(DealSpec::new(1, 1, 1).unwrap()),
        ),
        (
            "(2,2,2) singletons",
            singleton_cover(DealSpec::new(2, 2, 2).unwrap()),
        ),
        ("(2,3,1) one-factorization", one_factorization_k6()),
        (
            "(2,1,1) matchings",
            min_informative_m(DealSpec::new(2, 1, 1).unwrap(), 4)
                .unwrap()
                .unwrap()
                .witness,
        ),
    ];
    for (name, s) in synthetics {
        let deal = s.deal();
        assert!(deal.a() <= deal.c() + 1, "synthetic {name} out of range");
        let report = necessary_condition_audit(&s, 1, Budget::default());
        assert!(
            report.violations() >= 1,
            "audit missed the impossibility on {name}"
        );
    }

    // Fixture audits through the CLI.
    let (code, stdout, _) = run_cli(&[
        "audit",
        "--strategy",
        fixture_path("strategy_331_m10.rc").to_str().unwrap(),
        "--delta",
        "1",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("violations: 0"));

    println!("ACCEPTANCE 10: PASS - audits clean on fixtures, violations reported for a <= c+1");
}

/// Every a-subset as its own announcement: the trivial full cover.
fn singleton_cover(deal: DealSpec) -> Strategy {
    let anns = k_subsets(deal.n(), deal.a())
        .into_iter()
        .map(|h| Announcement::new(vec![h]).unwrap())
        .collect();
    Strategy::new(deal, anns).unwrap()
}

/// The five one-factors of K6 as announcements of a (2,3,1)-strategy:
/// informative (members are disjoint) but necessarily insecure.
fn one_factorization_k6() -> Strategy {
    let deal = DealSpec::new(2, 3, 1).unwrap();
    let factors: [[[u32; 2]; 3]; 5] = [
        [[0, 5], [1, 4], [2, 3]],
        [[1, 5], [2, 0], [3, 4]],
        [[2, 5], [3, 1], [4, 0]],
        [[3, 5], [4, 2], [0, 1]],
        [[4, 5], [0, 3], [1, 2]],
    ];
    let anns = factors
        .iter()
        .map(|f| Announcement::new(f.iter().map(|p| Hand::new(*p).unwrap()).collect()).unwrap())
        .collect();
    Strategy::new(deal, anns).unwrap()
}

/// Canonical emit/parse round trip on all committed fixtures.
#[test]
fn fixtures_round_trip_byte_exactly() {
    for name in ["strategy_331_m6.rc", "strategy_331_m10.rc"] {
        let text = read_fixture(name);
        let parsed = parse_strategy(&text).unwrap();
        assert_eq!(emit_strategy(&parsed), text, "{name} is not canonical");
    }
    for name in [
        "design_2_13_4_cyclic.rc",
        "family_3_8_4_ten.rc",
        "design_sts_9.rc",
        "large_set_sts9.rc",
    ] {
        let text = read_fixture(name);
        let parsed = parse_design_family(&text).unwrap();
        assert_eq!(
            rcards::fileio::emit_design_family(&parsed),
            text,
            "{name} is not canonical"
        );
    }
}
