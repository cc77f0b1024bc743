//! Combinatorial designs: verification, constructions, and conversions
//! between design families and announcement strategies.

use std::collections::BTreeMap;
use std::fmt;

use num::BigUint;
use thiserror::Error;

use crate::deal::DealSpec;
use crate::hand::{Card, Hand};
use crate::strategy::{Announcement, Strategy, StrategyError};
use crate::subsets::{binomial, k_subsets};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DesignError {
    #[error("block {block} does not fit {v} points with block size {k}")]
    MalformedBlock { block: Hand, v: u32, k: u32 },
    #[error("design declared simple but block {block} repeats")]
    RepeatedBlock { block: Hand },
    #[error("strength t={t} must satisfy 1 <= t <= k <= v (k={k}, v={v})")]
    BadStrength { t: u32, k: u32, v: u32 },
    #[error(
        "no Steiner triple system of order {v}: such systems exist iff v = 1 or 3 (mod 6), v >= 7"
    )]
    NoSuchSteinerOrder { v: u32 },
    #[error("base blocks must share one size (saw {first} and {second})")]
    MixedBaseBlockSizes { first: usize, second: usize },
    #[error("family members disagree on parameters: expected v={v} k={k}, member {index} has v={got_v} k={got_k}")]
    MismatchedFamily {
        index: usize,
        v: u32,
        k: u32,
        got_v: u32,
        got_k: u32,
    },
    #[error("family is not {gamma}-replicate: {hand} occurs as a block in {got} members")]
    ReplicationMismatch { hand: Hand, gamma: u64, got: u64 },
    #[error("deal {deal} does not match designs on {v} points with block size {k}")]
    DealMismatch { deal: DealSpec, v: u32, k: u32 },
    #[error("orbit enumeration over {v}! permutations needs the explicit large-orbit override (limit is 8 points)")]
    OrbitTooLarge { v: u32 },
    #[error("input is not a t-(n,a,1) design with t = a-1 (design_lambda({t}) = {found})")]
    NotSteinerStrength { t: u32, found: String },
    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

/// A block design: `blocks` are k-subsets of `{0, …, v-1}`. With
/// `simple = true` repeated blocks are rejected; otherwise the block list is
/// a multiset.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Design {
    v: u32,
    k: u32,
    blocks: Vec<Hand>,
    simple: bool,
}

impl Design {
    pub fn new(v: u32, k: u32, mut blocks: Vec<Hand>, simple: bool) -> Result<Design, DesignError> {
        for b in &blocks {
            if b.len() as u32 != k || !b.within_deck(v) {
                return Err(DesignError::MalformedBlock {
                    block: b.clone(),
                    v,
                    k,
                });
            }
        }
        blocks.sort();
        if simple {
            if let Some(w) = blocks.windows(2).find(|w| w[0] == w[1]) {
                return Err(DesignError::RepeatedBlock {
                    block: w[0].clone(),
                });
            }
        }
        Ok(Design {
            v,
            k,
            blocks,
            simple,
        })
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn blocks(&self) -> &[Hand] {
        &self.blocks
    }

    pub fn is_simple(&self) -> bool {
        self.simple
    }

    /// The block list as an announcement (blocks must be simple).
    pub fn to_announcement(&self) -> Result<Announcement, StrategyError> {
        Announcement::new(self.blocks.clone())
    }

    /// Image of the design under a deck permutation.
    pub fn permute(&self, perm: &[Card]) -> Design {
        let mut blocks: Vec<Hand> = self.blocks.iter().map(|b| b.permute(perm)).collect();
        blocks.sort();
        Design {
            v: self.v,
            k: self.k,
            blocks,
            simple: self.simple,
        }
    }

    pub fn shares_a_block_with(&self, other: &Design) -> bool {
        self.blocks
            .iter()
            .any(|b| other.blocks.binary_search(b).is_ok())
    }
}

impl fmt::Debug for Design {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Design({}, {}; {} blocks)",
            self.v,
            self.k,
            self.blocks.len()
        )
    }
}

/// If every t-subset of the `v` points occurs in exactly λ blocks, returns
/// `Some(λ)`; otherwise `None`.
///
/// For a constant λ the standard counting identities are re-checked on the
/// way out: `b = λ C(v,t) / C(k,t)` blocks in total and, at `t = 2`, every
/// point in exactly `λ(v-1)/(k-1)` blocks.
pub fn design_lambda(design: &Design, t: u32) -> Result<Option<u64>, DesignError> {
    let (v, k) = (design.v, design.k);
    if t < 1 || t > k || k > v {
        return Err(DesignError::BadStrength { t, k, v });
    }
    let mut coverage: BTreeMap<Hand, u64> = BTreeMap::new();
    for block in &design.blocks {
        for sub in subsets_of(block, t) {
            *coverage.entry(sub).or_insert(0) += 1;
        }
    }
    let expected = crate::subsets::binomial_exact_usize(v as u64, t as u64)
        .expect("t-subset count fits usize");
    if coverage.len() != expected {
        return Ok(None); // some t-subset uncovered
    }
    let lambda = *coverage.values().next().unwrap();
    if coverage.values().any(|&c| c != lambda) {
        return Ok(None);
    }

    // Counting identities; failure would mean the count above is wrong.
    let b = BigUint::from(design.blocks.len());
    debug_assert_eq!(
        &b * binomial(k as u64, t as u64),
        BigUint::from(lambda) * binomial(v as u64, t as u64)
    );
    if t == 2 {
        let mut per_point = vec![0u64; v as usize];
        for block in &design.blocks {
            for &x in block.cards() {
                per_point[x as usize] += 1;
            }
        }
        let r = lambda * (v as u64 - 1) / (k as u64 - 1);
        debug_assert!(per_point.iter().all(|&c| c == r));
    }
    Ok(Some(lambda))
}

/// All t-subsets of a hand, colex order.
pub fn subsets_of(h: &Hand, t: u32) -> Vec<Hand> {
    let cards = h.cards();
    k_subsets(cards.len() as u32, t)
        .into_iter()
        .map(|idx| {
            Hand::from_sorted_unchecked(idx.cards().iter().map(|&i| cards[i as usize]).collect())
        })
        .collect()
}

/// Builds a Steiner triple system of order `v` (a 2-(v,3,1) design).
///
/// Orders `v ≡ 3 (mod 6)` use the Bose construction over an idempotent
/// commutative quasigroup on `Z_{2t+1}`; orders `v ≡ 1 (mod 6)` use the
/// Skolem construction over a half-idempotent one on `Z_{2t}`. The result is
/// re-verified with [`design_lambda`] before being returned.
pub fn sts_construct(v: u32) -> Result<Design, DesignError> {
    if v < 7 || (v % 6 != 1 && v % 6 != 3) {
        return Err(DesignError::NoSuchSteinerOrder { v });
    }
    let blocks = if v % 6 == 3 {
        bose_blocks(v)
    } else {
        skolem_blocks(v)
    };
    let design = Design::new(v, 3, blocks, true)?;
    let lambda = design_lambda(&design, 2)?;
    assert_eq!(
        lambda,
        Some(1),
        "construction must yield a 2-({v},3,1) design"
    );
    Ok(design)
}

/// Bose: v = 6t+3, points Z_{2t+1} x {0,1,2} with (x,j) -> x + (2t+1) j.
fn bose_blocks(v: u32) -> Vec<Hand> {
    let g = v / 3; // 2t+1
    let point = |x: u32, j: u32| -> Card { x + g * (j % 3) };
    // (g+1)/2 is the inverse of 2 mod g, so x∘y is the midpoint of x and y.
    let half = g.div_ceil(2);
    let mul = |x: u32, y: u32| -> u32 { ((x + y) * half) % g };
    let mut blocks = Vec::new();
    for x in 0..g {
        blocks.push(Hand::new([point(x, 0), point(x, 1), point(x, 2)]).unwrap());
    }
    for j in 0..3 {
        for x in 0..g {
            for y in (x + 1)..g {
                blocks
                    .push(Hand::new([point(x, j), point(y, j), point(mul(x, y), j + 1)]).unwrap());
            }
        }
    }
    blocks
}

/// Skolem: v = 6t+1, points (Z_{2t} x {0,1,2}) ∪ {∞} with ∞ -> v-1.
fn skolem_blocks(v: u32) -> Vec<Hand> {
    let g = (v - 1) / 3; // 2t
    let t = g / 2;
    let inf: Card = v - 1;
    let point = |x: u32, j: u32| -> Card { x + g * (j % 3) };
    // Half-idempotent commutative quasigroup: relabel sums so the diagonal
    // hits 0..t-1 twice.
    let sigma = |s: u32| -> u32 {
        if s.is_multiple_of(2) {
            s / 2
        } else {
            t + (s - 1) / 2
        }
    };
    let mul = |x: u32, y: u32| -> u32 { sigma((x + y) % g) };
    let mut blocks = Vec::new();
    for x in 0..t {
        blocks.push(Hand::new([point(x, 0), point(x, 1), point(x, 2)]).unwrap());
    }
    for j in 0..3 {
        for i in 0..t {
            blocks.push(Hand::new([inf, point(t + i, j), point(i, j + 1)]).unwrap());
        }
    }
    for j in 0..3 {
        for x in 0..g {
            for y in (x + 1)..g {
                blocks
                    .push(Hand::new([point(x, j), point(y, j), point(mul(x, y), j + 1)]).unwrap());
            }
        }
    }
    blocks
}

/// All distinct translates `B + j (mod v)` of the base blocks.
///
/// The caller decides what strength to expect and validates it with
/// [`design_lambda`].
pub fn cyclic_design(base_blocks: &[Hand], v: u32) -> Result<Design, DesignError> {
    let k = base_blocks.first().map(Hand::len).unwrap_or(0);
    let mut blocks = Vec::new();
    for base in base_blocks {
        if base.len() != k {
            return Err(DesignError::MixedBaseBlockSizes {
                first: k,
                second: base.len(),
            });
        }
        if !base.within_deck(v) {
            return Err(DesignError::MalformedBlock {
                block: base.clone(),
                v,
                k: k as u32,
            });
        }
        for j in 0..v {
            let translate =
                Hand::new(base.cards().iter().map(|&x| (x + j) % v)).expect("translate");
            blocks.push(translate);
        }
    }
    blocks.sort();
    blocks.dedup();
    Design::new(v, k as u32, blocks, true)
}

/// Is `family` a large set of t-(v,k,1) designs?
///
/// True iff every member is a t-(v,k,1) design, the block lists partition
/// all of `C(v,k)` k-subsets, and the family has exactly `C(v-t, k-t)`
/// members.
pub fn verify_large_set(family: &[Design], t: u32) -> Result<bool, DesignError> {
    let Some(first) = family.first() else {
        return Ok(false);
    };
    let (v, k) = (first.v, first.k);
    for (index, d) in family.iter().enumerate() {
        if d.v != v || d.k != k {
            return Err(DesignError::MismatchedFamily {
                index,
                v,
                k,
                got_v: d.v,
                got_k: d.k,
            });
        }
    }
    if BigUint::from(family.len()) != binomial((v - t) as u64, (k - t) as u64) {
        return Ok(false);
    }
    for d in family {
        if design_lambda(d, t)? != Some(1) {
            return Ok(false);
        }
    }
    let mut seen: BTreeMap<Hand, u32> = BTreeMap::new();
    for d in family {
        for b in &d.blocks {
            *seen.entry(b.clone()).or_insert(0) += 1;
        }
    }
    if seen.values().any(|&c| c != 1) {
        return Ok(false);
    }
    let expected =
        crate::subsets::binomial_exact_usize(v as u64, k as u64).expect("k-subset count");
    Ok(seen.len() == expected)
}

/// Turns a design family in which every a-subset of the deck occurs as a
/// block in exactly `gamma` members into the equitable strategy whose
/// announcements are the members' block lists.
pub fn strategy_from_designs(
    family: &[Design],
    deal: DealSpec,
    gamma: u64,
) -> Result<Strategy, DesignError> {
    let Some(first) = family.first() else {
        return Err(DesignError::DealMismatch { deal, v: 0, k: 0 });
    };
    let (v, k) = (first.v, first.k);
    for (index, d) in family.iter().enumerate() {
        if d.v != v || d.k != k {
            return Err(DesignError::MismatchedFamily {
                index,
                v,
                k,
                got_v: d.v,
                got_k: d.k,
            });
        }
    }
    if v != deal.n() || k != deal.a() {
        return Err(DesignError::DealMismatch { deal, v, k });
    }
    let mut replication: BTreeMap<Hand, u64> = BTreeMap::new();
    for d in family {
        for b in &d.blocks {
            *replication.entry(b.clone()).or_insert(0) += 1;
        }
    }
    for h in k_subsets(v, k) {
        let got = replication.get(&h).copied().unwrap_or(0);
        if got != gamma {
            return Err(DesignError::ReplicationMismatch {
                hand: h,
                gamma,
                got,
            });
        }
    }
    let announcements = family
        .iter()
        .map(Design::to_announcement)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Strategy::new(deal, announcements)?)
}

/// Result of [`orbit_strategy`]: the strategy plus the orbit statistics.
#[derive(Debug, Clone)]
pub struct OrbitOutcome {
    pub strategy: Strategy,
    /// Number of distinct images of the seed design, `m`.
    pub m: usize,
    /// Replication: every a-subset occurs in exactly this many images.
    pub gamma: u64,
    /// `n! / m` by orbit–stabilizer.
    pub aut_order: BigUint,
    /// Strength of the seed, `t = a - 1`.
    pub t: u32,
}

impl OrbitOutcome {
    /// `m = γ (n - t)` — holds for every orbit of a t-(n,a,1) design with
    /// `t = a-1`, whatever the automorphism group.
    pub fn identity_holds(&self) -> bool {
        self.m as u64 == self.gamma * (self.strategy.deal().n() - self.t) as u64
    }
}

/// Lets the full symmetric group act on a t-(n,a,1) design with `t = a-1`
/// and returns the set of distinct images as an equitable strategy.
///
/// The sweep over all `n!` permutations is accepted up to `n = 8`; larger
/// decks need `allow_large_orbit`. Images are deduplicated by canonical
/// block-list form, the per-hand replication is counted directly and
/// verified constant, and `|Aut| = n!/m` comes from orbit–stabilizer.
pub fn orbit_strategy(
    design: &Design,
    allow_large_orbit: bool,
) -> Result<OrbitOutcome, DesignError> {
    let n = design.v;
    let a = design.k;
    let t = a - 1;
    if n > 8 && !allow_large_orbit {
        return Err(DesignError::OrbitTooLarge { v: n });
    }
    match design_lambda(design, t)? {
        Some(1) => {}
        other => {
            return Err(DesignError::NotSteinerStrength {
                t,
                found: match other {
                    Some(l) => format!("{l}"),
                    None => "not constant".to_string(),
                },
            })
        }
    }

    let mut images: std::collections::BTreeSet<Vec<Hand>> = std::collections::BTreeSet::new();
    let mut perm: Vec<Card> = (0..n).collect();
    permute_all(&mut perm, 0, &mut |p| {
        images.insert(design.permute(p).blocks.clone());
    });

    let m = images.len();
    let mut replication: BTreeMap<Hand, u64> = BTreeMap::new();
    for blocks in &images {
        for b in blocks {
            *replication.entry(b.clone()).or_insert(0) += 1;
        }
    }
    let gamma = *replication.values().next().expect("orbit nonempty");
    for h in k_subsets(n, a) {
        let got = replication.get(&h).copied().unwrap_or(0);
        if got != gamma {
            return Err(DesignError::ReplicationMismatch {
                hand: h,
                gamma,
                got,
            });
        }
    }
    let factorial = (1..=n as u64).map(BigUint::from).product::<BigUint>();
    let aut_order = factorial / BigUint::from(m);

    let deal = DealSpec::new(a, n - a - 1, 1).expect("orbit deal");
    let announcements = images
        .iter()
        .map(|blocks| Announcement::new(blocks.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let strategy = Strategy::new(deal, announcements)?;

    let outcome = OrbitOutcome {
        strategy,
        m,
        gamma,
        aut_order,
        t,
    };
    assert!(
        outcome.identity_holds(),
        "orbit must satisfy m = gamma (n - t)"
    );
    Ok(outcome)
}

fn permute_all(perm: &mut Vec<Card>, at: usize, f: &mut impl FnMut(&[Card])) {
    if at == perm.len() {
        f(perm);
        return;
    }
    for i in at..perm.len() {
        perm.swap(at, i);
        permute_all(perm, at + 1, f);
        perm.swap(at, i);
    }
}

/// The built-in family of ten 3-(8,4,1) designs: the images of
/// [`crate::catalog::design_8_4_base`] under the powers of the deck
/// permutation `(0 1)(3 4 6 7 5)`, which has order ten. Every 4-subset of
/// the 8-card deck occurs as a block in exactly two members.
pub fn rotated_family_8_4() -> Vec<Design> {
    let base = crate::catalog::design_8_4_base();
    let pi: [Card; 8] = [1, 0, 2, 4, 6, 3, 7, 5];
    let mut family = Vec::with_capacity(10);
    let mut current = base;
    for _ in 0..10 {
        family.push(current.clone());
        current = current.permute(&pi);
    }
    family
}

/// Blocks of the announcement containing all of `t_set`, plus the other
/// cards those blocks cover: `B_T = { H_A ∈ A : T ⊆ H_A }` and
/// `N(T) = (∪ B_T) ∖ T`.
pub fn block_neighborhood(announcement: &Announcement, t_set: &Hand) -> (Vec<Hand>, Hand) {
    assert!(
        !t_set.is_empty(),
        "block neighborhood needs a nonempty subset"
    );
    let blocks: Vec<Hand> = announcement
        .hands()
        .iter()
        .filter(|h| h.contains_all(t_set))
        .cloned()
        .collect();
    let mut union = Hand::empty();
    for b in &blocks {
        union = union.union(b);
    }
    (blocks, union.difference(t_set))
}
