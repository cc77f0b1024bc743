//! Announcements and announcement strategies.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::deal::DealSpec;
use crate::hand::Hand;
use crate::rational::Rational;
use crate::subsets::k_subsets;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StrategyError {
    #[error("announcement {index} is empty")]
    EmptyAnnouncement { index: usize },
    #[error("a strategy needs at least one announcement")]
    NoAnnouncements,
    #[error("announcement {index} contains {hand} twice")]
    DuplicateHand { index: usize, hand: Hand },
    #[error("announcement {index}: hand {hand} has {got} cards, expected {expected}")]
    HandSizeMismatch {
        index: usize,
        hand: Hand,
        got: usize,
        expected: u32,
    },
    #[error("announcement {index}: hand {hand} uses cards outside the deck of {n}")]
    CardOutOfDeck { index: usize, hand: Hand, n: u32 },
    #[error("hand {hand} occurs in no announcement, so the strategy never lets Alice announce it")]
    HandNotCovered { hand: Hand },
    #[error("distribution given for {hand}, which occurs in no announcement")]
    DistributionForUnknownHand { hand: Hand },
    #[error(
        "distribution for {hand} must put positive probability on exactly the announcements containing it (expected indices {expected:?}, got {got:?})"
    )]
    SupportMismatch {
        hand: Hand,
        expected: Vec<usize>,
        got: Vec<usize>,
    },
    #[error(
        "distribution for {hand}: probability of announcement {index} is not strictly positive"
    )]
    NonPositiveProbability { hand: Hand, index: usize },
    #[error("distribution for {hand} sums to {sum}, not 1")]
    DistributionSum { hand: Hand, sum: String },
}

/// One of Alice's possible announcements: a nonempty set of distinct,
/// equal-sized hands, stored in colexicographic order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Announcement {
    hands: Vec<Hand>,
    hand_size: u32,
}

impl Announcement {
    pub fn new(hands: Vec<Hand>) -> Result<Announcement, StrategyError> {
        Self::new_at(hands, 0)
    }

    fn new_at(mut hands: Vec<Hand>, index: usize) -> Result<Announcement, StrategyError> {
        if hands.is_empty() {
            return Err(StrategyError::EmptyAnnouncement { index });
        }
        let hand_size = hands[0].len() as u32;
        if let Some(h) = hands.iter().find(|h| h.len() as u32 != hand_size) {
            return Err(StrategyError::HandSizeMismatch {
                index,
                hand: h.clone(),
                got: h.len(),
                expected: hand_size,
            });
        }
        hands.sort();
        if let Some(w) = hands.windows(2).find(|w| w[0] == w[1]) {
            return Err(StrategyError::DuplicateHand {
                index,
                hand: w[0].clone(),
            });
        }
        Ok(Announcement { hands, hand_size })
    }

    pub fn hands(&self) -> &[Hand] {
        &self.hands
    }

    pub fn hand_size(&self) -> u32 {
        self.hand_size
    }

    pub fn len(&self) -> usize {
        self.hands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hands.is_empty()
    }

    pub fn contains(&self, h: &Hand) -> bool {
        self.hands.binary_search(h).is_ok()
    }
}

impl fmt::Debug for Announcement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.hands.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{h}")?;
        }
        Ok(())
    }
}

/// Alice's announcement strategy: a fixed, public list of announcements
/// `A_1, …, A_m` together with, for every hand, an exact probability
/// distribution over the announcements that contain it.
///
/// [`Strategy::new`] and friends enforce the full contract: every hand of
/// the deck occurs in at least one announcement, each distribution's support
/// is exactly `g(H_A) = { i : H_A ∈ A_i }`, probabilities are strictly
/// positive and sum to one. [`Strategy::partial`] relaxes only the coverage
/// requirement so that a standalone announcement (say, a single design) can
/// be analysed through the same machinery; [`Strategy::is_complete`] tells
/// the two apart.
///
/// Announcement indices are `0`-based throughout the library; files and
/// reports render them `1`-based.
#[derive(Clone, PartialEq, Eq)]
pub struct Strategy {
    deal: DealSpec,
    announcements: Vec<Announcement>,
    distributions: BTreeMap<Hand, Vec<(usize, Rational)>>,
    complete: bool,
}

impl Strategy {
    /// Strategy with uniform distributions over `g(H_A)`; requires full
    /// deck coverage.
    pub fn new(
        deal: DealSpec,
        announcements: Vec<Announcement>,
    ) -> Result<Strategy, StrategyError> {
        Self::build(deal, announcements, BTreeMap::new(), true)
    }

    /// Strategy with explicit distributions; hands without an entry default
    /// to the uniform distribution over `g(H_A)`. Requires full coverage.
    pub fn with_distributions(
        deal: DealSpec,
        announcements: Vec<Announcement>,
        distributions: BTreeMap<Hand, Vec<(usize, Rational)>>,
    ) -> Result<Strategy, StrategyError> {
        Self::build(deal, announcements, distributions, true)
    }

    /// Like [`Strategy::with_distributions`] but without the requirement
    /// that every hand of the deck occurs in an announcement.
    pub fn partial(
        deal: DealSpec,
        announcements: Vec<Announcement>,
        distributions: BTreeMap<Hand, Vec<(usize, Rational)>>,
    ) -> Result<Strategy, StrategyError> {
        Self::build(deal, announcements, distributions, false)
    }

    fn build(
        deal: DealSpec,
        announcements: Vec<Announcement>,
        given: BTreeMap<Hand, Vec<(usize, Rational)>>,
        require_coverage: bool,
    ) -> Result<Strategy, StrategyError> {
        if announcements.is_empty() {
            return Err(StrategyError::NoAnnouncements);
        }
        let n = deal.n();
        let a = deal.a();
        let mut rebuilt = Vec::with_capacity(announcements.len());
        for (index, ann) in announcements.into_iter().enumerate() {
            let ann = Announcement::new_at(ann.hands, index)?;
            if ann.hand_size() != a {
                let hand = ann.hands()[0].clone();
                return Err(StrategyError::HandSizeMismatch {
                    index,
                    got: hand.len(),
                    hand,
                    expected: a,
                });
            }
            if let Some(h) = ann.hands().iter().find(|h| !h.within_deck(n)) {
                return Err(StrategyError::CardOutOfDeck {
                    index,
                    hand: h.clone(),
                    n,
                });
            }
            rebuilt.push(ann);
        }

        // g(H_A) for every hand that occurs somewhere.
        let mut g: BTreeMap<Hand, Vec<usize>> = BTreeMap::new();
        for (i, ann) in rebuilt.iter().enumerate() {
            for h in ann.hands() {
                g.entry(h.clone()).or_default().push(i);
            }
        }

        if require_coverage {
            for h in k_subsets(n, a) {
                if !g.contains_key(&h) {
                    return Err(StrategyError::HandNotCovered { hand: h });
                }
            }
        }

        for hand in given.keys() {
            if !g.contains_key(hand) {
                return Err(StrategyError::DistributionForUnknownHand { hand: hand.clone() });
            }
        }

        let mut distributions = BTreeMap::new();
        for (hand, support) in &g {
            let dist = match given.get(hand) {
                Some(entries) => {
                    let mut entries = entries.clone();
                    entries.sort_by_key(|(i, _)| *i);
                    let got: Vec<usize> = entries.iter().map(|(i, _)| *i).collect();
                    if got != *support {
                        return Err(StrategyError::SupportMismatch {
                            hand: hand.clone(),
                            expected: support.clone(),
                            got,
                        });
                    }
                    if let Some((i, _)) = entries.iter().find(|(_, p)| !p.is_positive()) {
                        return Err(StrategyError::NonPositiveProbability {
                            hand: hand.clone(),
                            index: *i,
                        });
                    }
                    let sum: Rational = entries.iter().map(|(_, p)| p.clone()).sum();
                    if !sum.is_one() {
                        return Err(StrategyError::DistributionSum {
                            hand: hand.clone(),
                            sum: crate::rational::render(&sum),
                        });
                    }
                    entries
                }
                None => {
                    let gamma = Rational::from_integer(support.len().into());
                    support
                        .iter()
                        .map(|&i| (i, Rational::one() / gamma.clone()))
                        .collect()
                }
            };
            distributions.insert(hand.clone(), dist);
        }

        let complete = if require_coverage {
            true
        } else {
            let expected = crate::subsets::binomial(n as u64, a as u64);
            num::BigUint::from(g.len()) == expected
        };

        Ok(Strategy {
            deal,
            announcements: rebuilt,
            distributions,
            complete,
        })
    }

    pub fn deal(&self) -> DealSpec {
        self.deal
    }

    pub fn announcements(&self) -> &[Announcement] {
        &self.announcements
    }

    pub fn announcement(&self, i: usize) -> &Announcement {
        &self.announcements[i]
    }

    /// Number of announcements, `m`.
    pub fn m(&self) -> usize {
        self.announcements.len()
    }

    /// Does every a-subset of the deck occur in at least one announcement?
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// The distribution for `hand`: `(announcement index, probability)`
    /// pairs, ascending by index. Empty if the hand occurs nowhere.
    pub fn distribution(&self, hand: &Hand) -> &[(usize, Rational)] {
        self.distributions
            .get(hand)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// `g(H_A)`: indices of the announcements containing `hand`.
    pub fn g(&self, hand: &Hand) -> Vec<usize> {
        self.distribution(hand).iter().map(|(i, _)| *i).collect()
    }

    /// `p_{H_A}(i)`, or zero when `hand ∉ A_i`.
    pub fn prob(&self, hand: &Hand, i: usize) -> Rational {
        self.distribution(hand)
            .iter()
            .find(|(j, _)| *j == i)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Hands occurring in at least one announcement, in colex order.
    pub fn covered_hands(&self) -> impl Iterator<Item = &Hand> {
        self.distributions.keys()
    }
}

impl fmt::Debug for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Strategy{{deal: {}, m: {}, complete: {}}}",
            self.deal,
            self.m(),
            self.complete
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hand;
    use crate::rational::ratio;

    fn deal331() -> DealSpec {
        DealSpec::new(3, 3, 1).unwrap()
    }

    fn ann(hands: &[&[u32]]) -> Announcement {
        Announcement::new(
            hands
                .iter()
                .map(|h| Hand::new(h.iter().copied()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn announcement_sorts_and_rejects_duplicates() {
        let a = ann(&[&[2, 5, 6], &[0, 1, 2]]);
        assert_eq!(a.hands()[0], hand![0, 1, 2]);
        assert!(a.contains(&hand![2, 5, 6]));
        let dup = Announcement::new(vec![hand![0, 1, 2], hand![0, 1, 2]]);
        assert!(matches!(dup, Err(StrategyError::DuplicateHand { .. })));
        let sizes = Announcement::new(vec![hand![0, 1, 2], hand![0, 1]]);
        assert!(matches!(sizes, Err(StrategyError::HandSizeMismatch { .. })));
    }

    #[test]
    fn coverage_is_enforced_with_a_named_hand() {
        let err = Strategy::new(deal331(), vec![ann(&[&[0, 1, 2]])]).unwrap_err();
        assert_eq!(
            err,
            StrategyError::HandNotCovered {
                hand: hand![0, 1, 3]
            }
        );
        let partial =
            Strategy::partial(deal331(), vec![ann(&[&[0, 1, 2]])], BTreeMap::new()).unwrap();
        assert!(!partial.is_complete());
        assert_eq!(partial.g(&hand![0, 1, 2]), vec![0]);
        assert_eq!(partial.prob(&hand![0, 1, 2], 0), ratio(1, 1));
    }

    #[test]
    fn distribution_validation_names_the_offender() {
        let anns = vec![ann(&[&[0, 1, 2], &[3, 4, 5]]), ann(&[&[0, 1, 2]])];
        let mut bad = BTreeMap::new();
        bad.insert(hand![0, 1, 2], vec![(0, ratio(1, 2)), (1, ratio(1, 3))]);
        let err = Strategy::partial(deal331(), anns.clone(), bad).unwrap_err();
        assert!(matches!(err, StrategyError::DistributionSum { .. }));

        let mut wrong_support = BTreeMap::new();
        wrong_support.insert(hand![3, 4, 5], vec![(0, ratio(1, 2)), (1, ratio(1, 2))]);
        let err = Strategy::partial(deal331(), anns.clone(), wrong_support).unwrap_err();
        assert!(matches!(err, StrategyError::SupportMismatch { .. }));

        let mut unknown = BTreeMap::new();
        unknown.insert(hand![0, 1, 3], vec![(0, ratio(1, 1))]);
        let err = Strategy::partial(deal331(), anns, unknown).unwrap_err();
        assert!(matches!(
            err,
            StrategyError::DistributionForUnknownHand { .. }
        ));
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Strategy>();
        assert_send_sync::<Announcement>();
        assert_send_sync::<Hand>();
        assert_send_sync::<DealSpec>();
    }

    #[test]
    fn default_distributions_are_uniform_over_g() {
        let anns = vec![ann(&[&[0, 1, 2], &[3, 4, 5]]), ann(&[&[0, 1, 2]])];
        let s = Strategy::partial(deal331(), anns, BTreeMap::new()).unwrap();
        assert_eq!(s.g(&hand![0, 1, 2]), vec![0, 1]);
        assert_eq!(s.prob(&hand![0, 1, 2], 0), ratio(1, 2));
        assert_eq!(s.prob(&hand![3, 4, 5], 1), ratio(0, 1));
    }
}
