//! Exact-arithmetic toolkit for announcement strategies in the generalized
//! Russian cards problem.
//!
//! Three players, Alice, Bob and Cathy, are dealt `a`, `b` and `c` cards from
//! a deck of `n = a + b + c` cards. Alice publishes one of `m` pre-agreed
//! announcements (sets of possible hands) so that Bob can deduce her hand
//! while Cathy, holding `c` cards, learns nothing about who holds any
//! particular card she cannot see.
//!
//! The crate provides:
//!
//! * domain types for deals, hands, announcements and strategies
//!   ([`DealSpec`], [`Hand`], [`Announcement`], [`Strategy`]), all immutable
//!   after construction and safe to share across threads;
//! * exact verification of informativeness, equitability, optimality and
//!   weak/perfect δ-security, with counterexample witnesses
//!   ([`verify`]) — every probability is an exact [`Rational`], never a float;
//! * combinatorial designs: t-design verification, Steiner triple system
//!   and cyclic constructions, large sets, and conversions between design
//!   families and strategies ([`design`]);
//! * exhaustive search engines: design enumeration, maximum disjoint
//!   families, the minimum number of announcements for a deal, and a
//!   necessary-condition audit ([`search`]);
//! * a line-oriented text format for strategies and designs ([`fileio`])
//!   used by the `rcards` command-line tool.
//!
//! The `book/` directory of the repository contains a guide built around the
//! same API; its code snippets are compiled as doc-tests below.

pub mod catalog;
pub mod deal;
pub mod design;
pub mod fileio;
pub mod hand;
pub mod rational;
pub mod search;
pub mod strategy;
pub mod subsets;
pub mod verify;

pub use deal::DealSpec;
pub use design::Design;
pub use hand::{Card, Hand};
pub use rational::{ratio, Rational};
pub use strategy::{Announcement, Strategy};

/// Cap on the size of exhaustive enumerations.
///
/// Definition-level security checks walk `C(n,c)` Cathy hands times
/// `C(a+b,δ)` card subsets, and the search engines count backtracking nodes;
/// both refuse to start (or abort) with an explicit error once the cap is
/// exceeded, rather than running unbounded. The `RCARDS_BUDGET` environment
/// variable overrides the default in the command-line tool.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(100_000_000);

    /// Reads `RCARDS_BUDGET`, falling back to [`Budget::DEFAULT`] when the
    /// variable is unset or unparsable.
    pub fn from_env() -> Budget {
        std::env::var("RCARDS_BUDGET")
            .ok()
            .and_then(|v| v.parse::<u64>().ok())
            .map(Budget)
            .unwrap_or(Budget::DEFAULT)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

// Book chapters double as doc-tests so the guide can never drift from the
// API. mdbook itself cannot run snippets against the crate; `cargo test`
// can.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/deals-and-strategies.md")]
    pub struct DealsAndStrategies;
    #[doc = include_str!("../../../book/src/informative.md")]
    pub struct Informative;
    #[doc = include_str!("../../../book/src/security.md")]
    pub struct Security;
    #[doc = include_str!("../../../book/src/designs.md")]
    pub struct Designs;
    #[doc = include_str!("../../../book/src/search.md")]
    pub struct Search;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
