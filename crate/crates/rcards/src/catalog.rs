//! Built-in example strategies and designs.
//!
//! These are the classical small solutions for `(3,3,1)`- and `(4,3,1)`-deals
//! that the test suite and the command-line tool use as fixtures. All of them
//! live on decks of at most eight cards, so every property about them can be
//! checked exhaustively.

use crate::deal::DealSpec;
use crate::design::Design;
use crate::hand::Hand;
use crate::strategy::{Announcement, Strategy};

fn announcement(hands: &[&[u32]]) -> Announcement {
    Announcement::new(
        hands
            .iter()
            .map(|h| Hand::new(h.iter().copied()).expect("catalog hand"))
            .collect(),
    )
    .expect("catalog announcement")
}

/// Deterministic `(3,3,1)`-strategy with six announcements: a partition of
/// all 35 triples of a 7-card deck into classes whose members pairwise share
/// at most one card. Informative for Bob, weakly but not perfectly 1-secure
/// against Cathy, and of minimum `m` among informative `(3,3,1)`-strategies.
pub fn strategy_331_m6() -> Strategy {
    let rows: [&[&[u32]]; 6] = [
        &[
            &[0, 1, 3],
            &[1, 2, 4],
            &[2, 3, 5],
            &[3, 4, 6],
            &[0, 4, 5],
            &[1, 5, 6],
            &[0, 2, 6],
        ],
        &[
            &[0, 2, 3],
            &[1, 3, 4],
            &[2, 4, 5],
            &[3, 5, 6],
            &[0, 4, 6],
            &[0, 1, 5],
            &[1, 2, 6],
        ],
        &[
            &[0, 2, 4],
            &[0, 3, 5],
            &[1, 2, 3],
            &[0, 1, 6],
            &[1, 4, 5],
            &[2, 5, 6],
        ],
        &[&[0, 1, 2], &[2, 3, 4], &[4, 5, 6], &[1, 3, 5], &[0, 3, 6]],
        &[&[1, 2, 5], &[0, 5, 6], &[1, 4, 6], &[0, 3, 4], &[2, 3, 6]],
        &[&[3, 4, 5], &[0, 1, 4], &[0, 2, 5], &[2, 4, 6], &[1, 3, 6]],
    ];
    let deal = DealSpec::new(3, 3, 1).expect("deal");
    Strategy::new(deal, rows.iter().map(|r| announcement(r)).collect()).expect("strategy")
}

/// 2-equitable `(3,3,1)`-strategy with ten announcements, each a Steiner
/// triple system of order 7; every triple of the deck occurs in exactly two
/// announcements. Informative for Bob and perfectly 1-secure against Cathy.
pub fn strategy_331_m10() -> Strategy {
    let deal = DealSpec::new(3, 3, 1).expect("deal");
    Strategy::new(
        deal,
        sts7_family()
            .into_iter()
            .map(|r| announcement(&r))
            .collect(),
    )
    .expect("strategy")
}

/// The ten STS(7) block lists behind [`strategy_331_m10`].
pub fn sts7_family() -> Vec<Vec<&'static [u32]>> {
    let rows: [[&[u32]; 7]; 10] = [
        [
            &[2, 5, 6],
            &[2, 3, 4],
            &[1, 4, 5],
            &[1, 3, 6],
            &[0, 4, 6],
            &[0, 3, 5],
            &[0, 1, 2],
        ],
        [
            &[2, 5, 6],
            &[2, 3, 4],
            &[1, 4, 6],
            &[1, 3, 5],
            &[0, 4, 5],
            &[0, 3, 6],
            &[0, 1, 2],
        ],
        [
            &[3, 4, 5],
            &[2, 4, 6],
            &[1, 3, 6],
            &[1, 2, 5],
            &[0, 5, 6],
            &[0, 2, 3],
            &[0, 1, 4],
        ],
        [
            &[3, 4, 5],
            &[2, 4, 6],
            &[1, 5, 6],
            &[1, 2, 3],
            &[0, 3, 6],
            &[0, 2, 5],
            &[0, 1, 4],
        ],
        [
            &[3, 4, 6],
            &[2, 3, 5],
            &[1, 4, 5],
            &[1, 2, 6],
            &[0, 5, 6],
            &[0, 2, 4],
            &[0, 1, 3],
        ],
        [
            &[3, 4, 6],
            &[2, 3, 5],
            &[1, 5, 6],
            &[1, 2, 4],
            &[0, 4, 5],
            &[0, 2, 6],
            &[0, 1, 3],
        ],
        [
            &[3, 5, 6],
            &[2, 4, 5],
            &[1, 3, 4],
            &[1, 2, 6],
            &[0, 4, 6],
            &[0, 2, 3],
            &[0, 1, 5],
        ],
        [
            &[3, 5, 6],
            &[2, 4, 5],
            &[1, 4, 6],
            &[1, 2, 3],
            &[0, 3, 4],
            &[0, 2, 6],
            &[0, 1, 5],
        ],
        [
            &[4, 5, 6],
            &[2, 3, 6],
            &[1, 3, 4],
            &[1, 2, 5],
            &[0, 3, 5],
            &[0, 2, 4],
            &[0, 1, 6],
        ],
        [
            &[4, 5, 6],
            &[2, 3, 6],
            &[1, 3, 5],
            &[1, 2, 4],
            &[0, 3, 4],
            &[0, 2, 5],
            &[0, 1, 6],
        ],
    ];
    rows.iter().map(|r| r.to_vec()).collect()
}

/// The ten announcements of [`strategy_331_m10`] as designs on 7 points.
pub fn sts7_family_designs() -> Vec<Design> {
    sts7_family()
        .into_iter()
        .map(|blocks| {
            Design::new(
                7,
                3,
                blocks
                    .iter()
                    .map(|b| Hand::new(b.iter().copied()).expect("catalog hand"))
                    .collect(),
                true,
            )
            .expect("catalog design")
        })
        .collect()
}

/// A 3-(8,4,1) design with 14 blocks; its automorphism group has order 1344.
///
/// Seed for [`crate::design::rotated_family_8_4`] and
/// [`crate::design::orbit_strategy`].
pub fn design_8_4_base() -> Design {
    let blocks: [&[u32]; 14] = [
        &[3, 4, 5, 6],
        &[2, 5, 6, 7],
        &[2, 3, 4, 7],
        &[1, 4, 5, 7],
        &[1, 3, 6, 7],
        &[1, 2, 4, 6],
        &[1, 2, 3, 5],
        &[0, 4, 6, 7],
        &[0, 3, 5, 7],
        &[0, 2, 4, 5],
        &[0, 2, 3, 6],
        &[0, 1, 5, 6],
        &[0, 1, 3, 4],
        &[0, 1, 2, 7],
    ];
    Design::new(
        8,
        4,
        blocks
            .iter()
            .map(|b| Hand::new(b.iter().copied()).expect("catalog hand"))
            .collect(),
        true,
    )
    .expect("catalog design")
}
