//! Card subsets.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// A card is an index into the deck `{0, …, n-1}`.
pub type Card = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HandError {
    #[error("duplicate card {card} in hand")]
    DuplicateCard { card: Card },
}

/// A duplicate-free set of cards, stored strictly increasing.
///
/// Hands order colexicographically (largest differing card decides), in
/// agreement with [`crate::subsets::k_subsets`]; that makes sorted
/// collections of hands canonical everywhere.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hand(Vec<Card>);

impl Hand {
    /// Builds a hand from cards in any order; duplicates are an error.
    pub fn new(cards: impl IntoIterator<Item = Card>) -> Result<Hand, HandError> {
        let mut v: Vec<Card> = cards.into_iter().collect();
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(HandError::DuplicateCard { card: w[0] });
        }
        Ok(Hand(v))
    }

    pub fn empty() -> Hand {
        Hand(Vec::new())
    }

    /// `cards` must already be strictly increasing.
    pub(crate) fn from_sorted_unchecked(cards: Vec<Card>) -> Hand {
        debug_assert!(cards.windows(2).all(|w| w[0] < w[1]));
        Hand(cards)
    }

    pub fn cards(&self) -> &[Card] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, card: Card) -> bool {
        self.0.binary_search(&card).is_ok()
    }

    /// All cards strictly below `n`?
    pub fn within_deck(&self, n: u32) -> bool {
        self.0.last().is_none_or(|&c| c < n)
    }

    pub fn is_disjoint(&self, other: &Hand) -> bool {
        self.intersection_size(other) == 0
    }

    /// `other ⊆ self`?
    pub fn contains_all(&self, other: &Hand) -> bool {
        self.intersection_size(other) == other.len()
    }

    pub fn intersection_size(&self, other: &Hand) -> usize {
        let (mut i, mut j, mut k) = (0, 0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    k += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        k
    }

    pub fn union(&self, other: &Hand) -> Hand {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        v.dedup();
        Hand(v)
    }

    /// `self ∖ other`.
    pub fn difference(&self, other: &Hand) -> Hand {
        Hand(
            self.0
                .iter()
                .copied()
                .filter(|&c| !other.contains(c))
                .collect(),
        )
    }

    /// `{0, …, n-1} ∖ self`.
    pub fn complement(&self, n: u32) -> Hand {
        Hand((0..n).filter(|&c| !self.contains(c)).collect())
    }

    /// Image under a permutation of the deck (`perm[x]` is where `x` goes).
    pub fn permute(&self, perm: &[Card]) -> Hand {
        let mut v: Vec<Card> = self.0.iter().map(|&c| perm[c as usize]).collect();
        v.sort_unstable();
        Hand(v)
    }
}

impl Ord for Hand {
    fn cmp(&self, other: &Self) -> Ordering {
        // Colex: compare from the largest card down; a missing card is
        // smaller than any present one.
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (a.len(), b.len());
        loop {
            match (i, j) {
                (0, 0) => return Ordering::Equal,
                (0, _) => return Ordering::Less,
                (_, 0) => return Ordering::Greater,
                _ => {
                    i -= 1;
                    j -= 1;
                    match a[i].cmp(&b[j]) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
            }
        }
    }
}

impl PartialOrd for Hand {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Hand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Hand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[macro_export]
/// Shorthand for a hand literal: `hand![0, 1, 3]`.
macro_rules! hand {
    ($($c:expr),* $(,)?) => {
        $crate::hand::Hand::new([$($c as $crate::hand::Card),*]).expect("valid hand literal")
    };
}
