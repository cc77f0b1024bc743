//! Shared helpers for the integration and acceptance suites.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;

use num::BigUint;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use rcards::design::subsets_of;
use rcards::rational::{ratio, Rational};
use rcards::subsets::{binomial, k_subsets};
use rcards::verify::{equitability, perfect_target, possible_hands, prob_subset_held};
use rcards::{Announcement, DealSpec, Hand, Strategy};

#[allow(dead_code)]
pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

#[allow(dead_code)]
pub fn read_fixture(name: &str) -> String {
    let path = fixture_path(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("fixture {}: {e}", path.display()))
}

/// Runs the rcards binary; returns (exit code, stdout, stderr).
#[allow(dead_code)]
pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rcards"))
        .args(args)
        .output()
        .expect("spawn rcards");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

/// Random partition of all a-subsets into at most `classes` nonempty
/// announcements: a random deterministic (1-equitable) strategy.
#[allow(dead_code)]
pub fn random_partition_strategy(deal: DealSpec, classes: usize, rng: &mut ChaCha8Rng) -> Strategy {
    let mut hands = k_subsets(deal.n(), deal.a());
    hands.shuffle(rng);
    let mut buckets: Vec<Vec<Hand>> = vec![Vec::new(); classes];
    for (i, h) in hands.into_iter().enumerate() {
        if i < classes {
            buckets[i].push(h); // every class nonempty
        } else {
            buckets[rng.random_range(0..classes)].push(h);
        }
    }
    let announcements = buckets
        .into_iter()
        .map(|b| Announcement::new(b).expect("nonempty class"))
        .collect();
    Strategy::new(deal, announcements).expect("partition covers the deck")
}

/// Union of two independent random partitions: a 2-equitable strategy.
#[allow(dead_code)]
pub fn random_two_equitable_strategy(
    deal: DealSpec,
    classes: usize,
    rng: &mut ChaCha8Rng,
) -> Strategy {
    let first = random_partition_strategy(deal, classes, rng);
    let second = random_partition_strategy(deal, classes, rng);
    let mut announcements: Vec<Announcement> = first.announcements().to_vec();
    announcements.extend_from_slice(second.announcements());
    Strategy::new(deal, announcements).expect("double cover")
}

/// Random biased (generally non-equitable) strategy: a 2-cover with random
/// positive rational distributions.
#[allow(dead_code)]
pub fn random_biased_strategy(deal: DealSpec, classes: usize, rng: &mut ChaCha8Rng) -> Strategy {
    let base = random_two_equitable_strategy(deal, classes, rng);
    let mut dists: BTreeMap<Hand, Vec<(usize, Rational)>> = BTreeMap::new();
    for hand in base.covered_hands() {
        let g = base.g(hand);
        let weights: Vec<i64> = g.iter().map(|_| rng.random_range(1..=5)).collect();
        let total: i64 = weights.iter().sum();
        dists.insert(
            hand.clone(),
            g.iter()
                .zip(&weights)
                .map(|(&i, &w)| (i, ratio(w, total)))
                .collect(),
        );
    }
    Strategy::with_distributions(deal, base.announcements().to_vec(), dists)
        .expect("valid distributions")
}

/// Exhaustive per-triple agreement of the counting criteria with the
/// definitional probabilities, for an equitable strategy: over every
/// announcement, compatible Cathy hand and subset of size `1..=delta`,
/// the count-based weak/perfect predicates must coincide exactly with the
/// probability-based ones.
#[allow(dead_code)]
pub fn assert_counting_matches_probabilities(s: &Strategy, delta: u32) {
    assert!(
        equitability(s).is_some(),
        "counting criteria require an equitable strategy"
    );
    let deal = s.deal();
    let n = deal.n();
    let one = ratio(1, 1);
    let zero = ratio(0, 1);
    for (i, ann) in s.announcements().iter().enumerate() {
        for cathy in k_subsets(n, deal.c()) {
            let possible = possible_hands(ann, &cathy);
            if possible.is_empty() {
                continue;
            }
            let np = possible.len();
            let unseen = cathy.complement(n);
            for level in 1..=delta {
                let target_prob = perfect_target(deal, level);
                let target_count = Rational::new(
                    (binomial(deal.a() as u64, level as u64) * BigUint::from(np)).into(),
                    binomial((deal.a() + deal.b()) as u64, level as u64).into(),
                );
                for subset in subsets_of(&unseen, level) {
                    let count = possible.iter().filter(|h| h.contains_all(&subset)).count();
                    let p = prob_subset_held(s, i, &cathy, &subset).unwrap();
                    // Equitable: the probability is literally count / |P|.
                    assert_eq!(p, ratio(count as i64, np as i64));
                    // Weak predicate, both routes.
                    assert_eq!(
                        (1..np).contains(&count),
                        p > zero && p < one,
                        "weak disagree at i={i} H_C={cathy} T={subset}"
                    );
                    // Perfect predicate, both routes.
                    assert_eq!(
                        Rational::from_integer(count.into()) == target_count,
                        p == target_prob,
                        "perfect disagree at i={i} H_C={cathy} T={subset}"
                    );
                }
            }
        }
    }
}

/// Posteriors over `P(H_C, i)` sum to exactly one whenever nonempty.
#[allow(dead_code)]
pub fn assert_posteriors_sum_to_one(s: &Strategy) {
    let deal = s.deal();
    for (i, ann) in s.announcements().iter().enumerate() {
        for cathy in k_subsets(deal.n(), deal.c()) {
            let possible = possible_hands(ann, &cathy);
            if possible.is_empty() {
                continue;
            }
            let sum: Rational = possible
                .iter()
                .map(|h| rcards::verify::posterior_hand_prob(s, i, &cathy, h).unwrap())
                .sum();
            assert_eq!(sum, ratio(1, 1), "posteriors at i={i} H_C={cathy}");
        }
    }
}
