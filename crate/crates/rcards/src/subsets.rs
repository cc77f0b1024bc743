//! Binomial coefficients and canonical subset enumeration.
//!
//! Colexicographic order is the one canonical order for card subsets in this
//! crate: `S < T` iff the largest card where they differ is smaller in `S`.
//! Every operation that lists, ranks or sorts subsets agrees with
//! [`k_subsets`], so ranks double as stable identifiers in files and
//! reports.

use num::{BigUint, Zero};
use thiserror::Error;

use crate::hand::{Card, Hand};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubsetError {
    #[error("rank {rank} out of range: there are only {count} {k}-subsets of {n} cards")]
    RankOutOfRange {
        rank: BigUint,
        n: u32,
        k: u32,
        count: BigUint,
    },
    #[error("card {card} out of range for a deck of {n} cards")]
    CardOutOfRange { card: Card, n: u32 },
}

/// Exact binomial coefficient `C(n, k)`; `0` when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num::integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// `C(n, k)` as `usize`, for callers that are about to materialize that many
/// values. `None` on overflow.
pub fn binomial_exact_usize(n: u64, k: u64) -> Option<usize> {
    use num::ToPrimitive;
    binomial(n, k).to_usize()
}

/// All `C(n, k)` k-subsets of `{0, …, n-1}` in colexicographic order.
pub fn k_subsets(n: u32, k: u32) -> Vec<Hand> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(Hand::empty());
        return out;
    }
    let mut cur: Vec<Card> = (0..k).collect();
    loop {
        out.push(Hand::from_sorted_unchecked(cur.clone()));
        // Colex successor: bump the leftmost card that has room before its
        // right neighbour, then collapse everything below it.
        let mut i = 0;
        loop {
            let limit = if i + 1 < k as usize { cur[i + 1] } else { n };
            if cur[i] + 1 < limit {
                cur[i] += 1;
                for (j, c) in cur.iter_mut().enumerate().take(i) {
                    *c = j as Card;
                }
                break;
            }
            i += 1;
            if i == k as usize {
                return out;
            }
        }
    }
}

/// Colexicographic rank of `h` among the `|h|`-subsets of `{0, …, n-1}`.
///
/// Inverse of [`subset_unrank`]; consistent with [`k_subsets`] order.
pub fn subset_rank(h: &Hand, n: u32) -> Result<BigUint, SubsetError> {
    if let Some(&card) = h.cards().iter().find(|&&c| c >= n) {
        return Err(SubsetError::CardOutOfRange { card, n });
    }
    Ok(rank_unchecked(h))
}

pub(crate) fn rank_unchecked(h: &Hand) -> BigUint {
    let mut r = BigUint::zero();
    for (i, &c) in h.cards().iter().enumerate() {
        r += binomial(c as u64, i as u64 + 1);
    }
    r
}

/// The k-subset of `{0, …, n-1}` with colexicographic rank `r`.
pub fn subset_unrank(r: &BigUint, n: u32, k: u32) -> Result<Hand, SubsetError> {
    let count = binomial(n as u64, k as u64);
    if *r >= count {
        return Err(SubsetError::RankOutOfRange {
            rank: r.clone(),
            n,
            k,
            count,
        });
    }
    let mut rest = r.clone();
    let mut cards = vec![0 as Card; k as usize];
    let mut upper = n;
    for i in (1..=k).rev() {
        // Largest c with C(c, i) <= rest.
        let mut c = i - 1;
        let mut best = c;
        while c < upper {
            if binomial(c as u64, i as u64) <= rest {
                best = c;
                c += 1;
            } else {
                break;
            }
        }
        rest -= binomial(best as u64, i as u64);
        cards[(i - 1) as usize] = best;
        upper = best;
    }
    Ok(Hand::from_sorted_unchecked(cards))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h(cards: &[Card]) -> Hand {
        Hand::new(cards.iter().copied()).unwrap()
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 1), BigUint::from(5u32));
        assert_eq!(binomial(11, 2), BigUint::from(55u32));
        assert_eq!(binomial(7, 3), BigUint::from(35u32));
        assert_eq!(binomial(4, 0), BigUint::from(1u32));
        assert_eq!(binomial(3, 7), BigUint::zero());
    }

    #[test]
    fn k_subsets_listing() {
        let s = k_subsets(3, 2);
        assert_eq!(s, vec![h(&[0, 1]), h(&[0, 2]), h(&[1, 2])]);
        assert_eq!(k_subsets(7, 3).len(), 35);
        assert_eq!(k_subsets(4, 0), vec![Hand::empty()]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(subset_rank(&h(&[0, 1]), 3).unwrap(), BigUint::zero());
        assert_eq!(
            subset_unrank(&BigUint::from(34u32), 7, 3).unwrap(),
            h(&[4, 5, 6])
        );
        assert!(matches!(
            subset_unrank(&BigUint::from(35u32), 7, 3),
            Err(SubsetError::RankOutOfRange { .. })
        ));
        assert!(matches!(
            subset_rank(&h(&[0, 9]), 5),
            Err(SubsetError::CardOutOfRange { card: 9, .. })
        ));
    }

    #[test]
    fn rank_unrank_inverse_on_5_2() {
        for (i, s) in k_subsets(5, 2).iter().enumerate() {
            let r = subset_rank(s, 5).unwrap();
            assert_eq!(r, BigUint::from(i));
            assert_eq!(&subset_unrank(&r, 5, 2).unwrap(), s);
        }
    }

    proptest! {
        // Pascal recurrence as an independent route to the product formula.
        #[test]
        fn binomial_matches_pascal(n in 0u64..25, k in 0u64..25) {
            let pascal = {
                let mut row = vec![BigUint::from(1u32)];
                for _ in 0..n {
                    let mut next = vec![BigUint::from(1u32)];
                    for i in 1..row.len() {
                        next.push(&row[i - 1] + &row[i]);
                    }
                    next.push(BigUint::from(1u32));
                    row = next;
                }
                row
            };
            let expected = pascal.get(k as usize).cloned().unwrap_or_default();
            prop_assert_eq!(binomial(n, k), expected);
        }

        #[test]
        fn k_subsets_are_canonical(n in 0u32..10, k in 0u32..10) {
            prop_assume!(k <= n);
            let subs = k_subsets(n, k);
            prop_assert_eq!(BigUint::from(subs.len()), binomial(n as u64, k as u64));
            for w in subs.windows(2) {
                prop_assert!(w[0] < w[1]); // strictly increasing colex
            }
            for (i, s) in subs.iter().enumerate() {
                prop_assert_eq!(subset_rank(s, n).unwrap(), BigUint::from(i));
                prop_assert_eq!(&subset_unrank(&BigUint::from(i), n, k).unwrap(), s);
            }
        }
    }
}
