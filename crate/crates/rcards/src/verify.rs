//! Exact verification of strategies: informativeness for Bob, equitability,
//! optimality, and weak/perfect δ-security against Cathy.
//!
//! Security has two interchangeable routes. The *definitional* route
//! computes, for every announcement `i`, Cathy hand `H_C` and card subset
//! `T`, the exact posterior `Prob[T ⊆ H_A | i, H_C]` from the strategy's
//! distributions. For equitable strategies a *counting* route decides the
//! same predicates from block counts inside `P(H_C, i)` alone. The two agree
//! triple by triple (the test suites check this exhaustively on small
//! decks); the public checks pick the counting route automatically whenever
//! the strategy is equitable.
//!
//! All verdict witnesses are canonical: the first counterexample in
//! `(announcement, Cathy hand, subset size, subset)` order, hands and
//! subsets ordered colexicographically.

use num::BigUint;
use thiserror::Error;

use crate::deal::DealSpec;
use crate::design::subsets_of;
use crate::hand::Hand;
use crate::rational::{self, Rational};
use crate::strategy::{Announcement, Strategy};
use crate::subsets::{binomial, k_subsets};
use crate::Budget;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("delta={delta} out of range: need 1 <= delta <= a = {a}")]
    DeltaOutOfRange { delta: u32, a: u32 },
    #[error("enumeration of {required} (Cathy hands x subsets) exceeds budget {budget}; raise RCARDS_BUDGET or the budget argument")]
    BudgetExceeded { required: BigUint, budget: u64 },
    #[error("no informative strategy exists when a <= c (a={a}, c={c})")]
    NoInformativeStrategy { a: u32, c: u32 },
    #[error("strategy is not informative for Bob, which this operation requires")]
    NotInformative,
    #[error("announcement index {index} out of range (m={m})")]
    AnnouncementOutOfRange { index: usize, m: usize },
    #[error("hand {hand} is not a possible hand given Cathy's {cathy} and announcement {index}")]
    HandNotPossible {
        hand: Hand,
        cathy: Hand,
        index: usize,
    },
    #[error("announcement {index} is not compatible with Cathy hand {cathy}: no possible hands")]
    NoPossibleHands { cathy: Hand, index: usize },
    #[error("subset {subset} overlaps Cathy's hand {cathy}")]
    SubsetOverlapsCathy { subset: Hand, cathy: Hand },
    #[error("subset size {size} out of range: need 1 <= size <= a = {a}")]
    SubsetSizeOutOfRange { size: usize, a: u32 },
}

/// `P(H, i)`: the hands of an announcement disjoint from `h`.
///
/// With `h` a Bob hand this is what Bob must narrow to one hand; with a
/// Cathy hand it is her residual uncertainty set. Empty results are
/// legitimate (the announcement is simply incompatible with holding `h`).
pub fn possible_hands(announcement: &Announcement, h: &Hand) -> Vec<Hand> {
    announcement
        .hands()
        .iter()
        .filter(|hand| hand.is_disjoint(h))
        .cloned()
        .collect()
}

/// Why a strategy fails to be informative for Bob.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InformativeFailure {
    /// `a <= c`: no informative strategy exists for such deals.
    AliceNotLargerThanCathy { a: u32, c: u32 },
    /// Two distinct hands of one announcement intersect in at least `a-c`
    /// cards; `bob_hand` is disjoint from both, so `|P(bob_hand, i)| >= 2`.
    Collision {
        announcement: usize,
        first: Hand,
        second: Hand,
        bob_hand: Hand,
    },
}

/// Verdict of the informativeness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InformativeReport {
    pub informative: bool,
    pub failure: Option<InformativeFailure>,
}

impl InformativeReport {
    fn ok() -> Self {
        InformativeReport {
            informative: true,
            failure: None,
        }
    }

    fn fail(failure: InformativeFailure) -> Self {
        InformativeReport {
            informative: false,
            failure: Some(failure),
        }
    }
}

/// Is the strategy informative for Bob?
///
/// Decided by the pairwise criterion: no announcement may contain two
/// distinct hands meeting in `a-c` or more cards. On failure the witness
/// names the first colliding pair and a Bob hand disjoint from both.
pub fn is_informative(strategy: &Strategy) -> InformativeReport {
    let deal = strategy.deal();
    if deal.a() <= deal.c() {
        return InformativeReport::fail(InformativeFailure::AliceNotLargerThanCathy {
            a: deal.a(),
            c: deal.c(),
        });
    }
    let threshold = (deal.a() - deal.c()) as usize;
    for (i, ann) in strategy.announcements().iter().enumerate() {
        let hands = ann.hands();
        for x in 0..hands.len() {
            for y in (x + 1)..hands.len() {
                if hands[x].intersection_size(&hands[y]) >= threshold {
                    let union = hands[x].union(&hands[y]);
                    let free = union.complement(deal.n());
                    let bob_hand = Hand::new(free.cards().iter().copied().take(deal.b() as usize))
                        .expect("complement cards are distinct");
                    return InformativeReport::fail(InformativeFailure::Collision {
                        announcement: i,
                        first: hands[x].clone(),
                        second: hands[y].clone(),
                        bob_hand,
                    });
                }
            }
        }
    }
    InformativeReport::ok()
}

/// Same verdict as [`is_informative`], decided straight from the
/// definition: `|P(H_B, i)| <= 1` for every Bob hand and announcement.
pub fn is_informative_by_definition(strategy: &Strategy) -> InformativeReport {
    let deal = strategy.deal();
    if deal.a() <= deal.c() {
        return InformativeReport::fail(InformativeFailure::AliceNotLargerThanCathy {
            a: deal.a(),
            c: deal.c(),
        });
    }
    for (i, ann) in strategy.announcements().iter().enumerate() {
        for bob_hand in k_subsets(deal.n(), deal.b()) {
            let possible = possible_hands(ann, &bob_hand);
            if possible.len() >= 2 {
                return InformativeReport::fail(InformativeFailure::Collision {
                    announcement: i,
                    first: possible[0].clone(),
                    second: possible[1].clone(),
                    bob_hand,
                });
            }
        }
    }
    InformativeReport::ok()
}

/// Least possible number of announcements for an informative strategy:
/// `C(n-a+c, c)`.
pub fn lower_bound_m(deal: DealSpec) -> Result<BigUint, VerifyError> {
    if deal.a() <= deal.c() {
        return Err(VerifyError::NoInformativeStrategy {
            a: deal.a(),
            c: deal.c(),
        });
    }
    Ok(binomial(
        (deal.n() - deal.a() + deal.c()) as u64,
        deal.c() as u64,
    ))
}

/// Does an informative strategy meet the lower bound `m = C(n-a+c, c)`?
pub fn is_optimal(strategy: &Strategy) -> Result<bool, VerifyError> {
    if !is_informative(strategy).informative {
        return Err(VerifyError::NotInformative);
    }
    Ok(BigUint::from(strategy.m()) == lower_bound_m(strategy.deal())?)
}

/// `Some(γ)` when every hand occurs in exactly `γ` announcements and every
/// distribution is uniform; `None` otherwise. Deterministic strategies are
/// exactly the 1-equitable ones.
pub fn equitability(strategy: &Strategy) -> Option<u64> {
    let mut gamma: Option<u64> = None;
    for hand in strategy.covered_hands() {
        let dist = strategy.distribution(hand);
        let g = dist.len() as u64;
        match gamma {
            None => gamma = Some(g),
            Some(prev) if prev != g => return None,
            _ => {}
        }
        let uniform = Rational::new(1.into(), (g as i64).into());
        if dist.iter().any(|(_, p)| *p != uniform) {
            return None;
        }
    }
    gamma
}

fn check_announcement_index(strategy: &Strategy, index: usize) -> Result<(), VerifyError> {
    if index >= strategy.m() {
        return Err(VerifyError::AnnouncementOutOfRange {
            index,
            m: strategy.m(),
        });
    }
    Ok(())
}

/// `Prob[H_A | H_C, i]`: the chance Alice holds `h_a` from Cathy's point of
/// view, given announcement `i` and Cathy's hand.
///
/// Equal to `p_{H_A}(i) / Σ_{H'_A ∈ P(H_C,i)} p_{H'_A}(i)`, which reduces to
/// `1 / |P(H_C,i)|` for equitable strategies.
pub fn posterior_hand_prob(
    strategy: &Strategy,
    index: usize,
    cathy: &Hand,
    h_a: &Hand,
) -> Result<Rational, VerifyError> {
    check_announcement_index(strategy, index)?;
    let possible = possible_hands(strategy.announcement(index), cathy);
    if possible.is_empty() {
        return Err(VerifyError::NoPossibleHands {
            cathy: cathy.clone(),
            index,
        });
    }
    if !possible.contains(h_a) {
        return Err(VerifyError::HandNotPossible {
            hand: h_a.clone(),
            cathy: cathy.clone(),
            index,
        });
    }
    let total: Rational = possible.iter().map(|h| strategy.prob(h, index)).sum();
    Ok(strategy.prob(h_a, index) / total)
}

/// `Prob[T ⊆ H_A | i, H_C]`: the chance Alice holds all of `subset`, from
/// Cathy's point of view.
pub fn prob_subset_held(
    strategy: &Strategy,
    index: usize,
    cathy: &Hand,
    subset: &Hand,
) -> Result<Rational, VerifyError> {
    check_announcement_index(strategy, index)?;
    let a = strategy.deal().a();
    if subset.is_empty() || subset.len() > a as usize {
        return Err(VerifyError::SubsetSizeOutOfRange {
            size: subset.len(),
            a,
        });
    }
    if subset.intersection_size(cathy) > 0 {
        return Err(VerifyError::SubsetOverlapsCathy {
            subset: subset.clone(),
            cathy: cathy.clone(),
        });
    }
    let possible = possible_hands(strategy.announcement(index), cathy);
    if possible.is_empty() {
        return Err(VerifyError::NoPossibleHands {
            cathy: cathy.clone(),
            index,
        });
    }
    let total: Rational = possible.iter().map(|h| strategy.prob(h, index)).sum();
    let held: Rational = possible
        .iter()
        .filter(|h| h.contains_all(subset))
        .map(|h| strategy.prob(h, index))
        .sum();
    Ok(held / total)
}

/// Outcome of a security check. `witness` is present exactly when the
/// property fails, and re-checking the witness triple reproduces the
/// reported probability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecurityVerdict {
    pub holds: bool,
    pub witness: Option<SecurityWitness>,
}

/// First counterexample in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecurityWitness {
    /// 0-based announcement index.
    pub announcement: usize,
    pub cathy_hand: Hand,
    pub subset: Hand,
    /// The offending `Prob[subset ⊆ H_A | i, H_C]`.
    pub probability: Rational,
}

impl SecurityVerdict {
    fn ok() -> Self {
        SecurityVerdict {
            holds: true,
            witness: None,
        }
    }

    fn fail(witness: SecurityWitness) -> Self {
        SecurityVerdict {
            holds: false,
            witness: Some(witness),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SecurityKind {
    Weak,
    Perfect,
}

fn check_delta_and_budget(
    strategy: &Strategy,
    delta: u32,
    budget: Budget,
) -> Result<(), VerifyError> {
    let deal = strategy.deal();
    if delta < 1 || delta > deal.a() {
        return Err(VerifyError::DeltaOutOfRange { delta, a: deal.a() });
    }
    let required = binomial(deal.n() as u64, deal.c() as u64)
        * binomial((deal.a() + deal.b()) as u64, delta as u64);
    if required > BigUint::from(budget.0) {
        return Err(VerifyError::BudgetExceeded {
            required,
            budget: budget.0,
        });
    }
    Ok(())
}

/// Weak δ-security: from Cathy's view, every subset of at most δ unseen
/// cards has probability strictly between 0 and 1 of being held by Alice.
///
/// Equitable strategies are decided by the counting criterion
/// `1 <= |{H_A ∈ P : T ⊆ H_A}| <= |P| - 1`; the general case computes the
/// posterior probabilities.
pub fn weak_security_check(
    strategy: &Strategy,
    delta: u32,
) -> Result<SecurityVerdict, VerifyError> {
    weak_security_check_with_budget(strategy, delta, Budget::default())
}

pub fn weak_security_check_with_budget(
    strategy: &Strategy,
    delta: u32,
    budget: Budget,
) -> Result<SecurityVerdict, VerifyError> {
    check_delta_and_budget(strategy, delta, budget)?;
    if equitability(strategy).is_some() {
        Ok(counting_security(strategy, delta, SecurityKind::Weak))
    } else {
        Ok(definitional_security(strategy, delta, SecurityKind::Weak))
    }
}

/// [`weak_security_check`] forced down the definitional (probabilistic)
/// route, for cross-checking the counting criterion.
pub fn weak_security_by_definition(
    strategy: &Strategy,
    delta: u32,
    budget: Budget,
) -> Result<SecurityVerdict, VerifyError> {
    check_delta_and_budget(strategy, delta, budget)?;
    Ok(definitional_security(strategy, delta, SecurityKind::Weak))
}

/// Perfect δ-security: every such probability equals
/// `C(a,δ') / C(a+b,δ')` exactly, for all `δ' <= δ`.
///
/// For equitable strategies only the δ-level counting criterion
/// `|{H_A ∈ P : T ⊆ H_A}| = C(a,δ) |P| / C(a+b,δ)` is checked; the lower
/// levels follow because constant δ-subset counts force constant δ'-subset
/// counts for δ' < δ.
pub fn perfect_security_check(
    strategy: &Strategy,
    delta: u32,
) -> Result<SecurityVerdict, VerifyError> {
    perfect_security_check_with_budget(strategy, delta, Budget::default())
}

pub fn perfect_security_check_with_budget(
    strategy: &Strategy,
    delta: u32,
    budget: Budget,
) -> Result<SecurityVerdict, VerifyError> {
    check_delta_and_budget(strategy, delta, budget)?;
    if equitability(strategy).is_some() {
        Ok(counting_security(strategy, delta, SecurityKind::Perfect))
    } else {
        Ok(definitional_security(
            strategy,
            delta,
            SecurityKind::Perfect,
        ))
    }
}

/// [`perfect_security_check`] forced down the definitional route.
pub fn perfect_security_by_definition(
    strategy: &Strategy,
    delta: u32,
    budget: Budget,
) -> Result<SecurityVerdict, VerifyError> {
    check_delta_and_budget(strategy, delta, budget)?;
    Ok(definitional_security(
        strategy,
        delta,
        SecurityKind::Perfect,
    ))
}

/// Target value of perfect security at level `delta`:
/// `C(a,δ') / C(a+b,δ')`.
pub fn perfect_target(deal: DealSpec, delta: u32) -> Rational {
    let num = binomial(deal.a() as u64, delta as u64);
    let den = binomial((deal.a() + deal.b()) as u64, delta as u64);
    Rational::new(num.into(), den.into())
}

fn definitional_security(strategy: &Strategy, delta: u32, kind: SecurityKind) -> SecurityVerdict {
    let deal = strategy.deal();
    let n = deal.n();
    let cathy_hands = k_subsets(n, deal.c());
    for (index, ann) in strategy.announcements().iter().enumerate() {
        for cathy in &cathy_hands {
            let possible = possible_hands(ann, cathy);
            if possible.is_empty() {
                continue; // announcement incompatible with this Cathy hand
            }
            let total: Rational = possible.iter().map(|h| strategy.prob(h, index)).sum();
            let unseen = cathy.complement(n);
            for level in 1..=delta {
                let target = perfect_target(deal, level);
                for subset in subsets_of(&unseen, level) {
                    let held: Rational = possible
                        .iter()
                        .filter(|h| h.contains_all(&subset))
                        .map(|h| strategy.prob(h, index))
                        .sum();
                    let p = held / total.clone();
                    let bad = match kind {
                        SecurityKind::Weak => !rational::is_strictly_between_zero_and_one(&p),
                        SecurityKind::Perfect => p != target,
                    };
                    if bad {
                        return SecurityVerdict::fail(SecurityWitness {
                            announcement: index,
                            cathy_hand: cathy.clone(),
                            subset,
                            probability: p,
                        });
                    }
                }
            }
        }
    }
    SecurityVerdict::ok()
}

fn counting_security(strategy: &Strategy, delta: u32, kind: SecurityKind) -> SecurityVerdict {
    let deal = strategy.deal();
    let n = deal.n();
    let cathy_hands = k_subsets(n, deal.c());
    let levels: Vec<u32> = match kind {
        SecurityKind::Weak => (1..=delta).collect(),
        SecurityKind::Perfect => vec![delta],
    };
    for (index, ann) in strategy.announcements().iter().enumerate() {
        for cathy in &cathy_hands {
            let possible = possible_hands(ann, cathy);
            if possible.is_empty() {
                continue;
            }
            let np = possible.len() as u64;
            let unseen = cathy.complement(n);
            for &level in &levels {
                // Perfect target as a count: C(a,δ) |P| / C(a+b,δ).
                let target_count = Rational::new(
                    (binomial(deal.a() as u64, level as u64) * BigUint::from(np)).into(),
                    binomial((deal.a() + deal.b()) as u64, level as u64).into(),
                );
                for subset in subsets_of(&unseen, level) {
                    let count = possible.iter().filter(|h| h.contains_all(&subset)).count() as u64;
                    let bad = match kind {
                        SecurityKind::Weak => count == 0 || count == np,
                        SecurityKind::Perfect => {
                            Rational::from_integer(count.into()) != target_count
                        }
                    };
                    if bad {
                        return SecurityVerdict::fail(SecurityWitness {
                            announcement: index,
                            cathy_hand: cathy.clone(),
                            subset,
                            probability: Rational::new(count.into(), np.into()),
                        });
                    }
                }
            }
        }
    }
    SecurityVerdict::ok()
}

/// Number of announcements and the bits Alice broadcasts.
#[derive(Debug, Clone, PartialEq)]
pub struct CommunicationCost {
    pub m: usize,
    /// `log2(m)`; a decimal approximation except when `m` is a power of two.
    pub bits_approx: f64,
}

/// The protocol broadcasts one index out of `m`, i.e. `log2 m` bits.
pub fn communication_complexity(strategy: &Strategy) -> CommunicationCost {
    let m = strategy.m();
    CommunicationCost {
        m,
        bits_approx: (m as f64).log2(),
    }
}
