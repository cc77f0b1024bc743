//! Deal parameters.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DealError {
    #[error("every player must hold at least one card (got a={a}, b={b}, c={c})")]
    EmptyHand { a: u32, b: u32, c: u32 },
}

/// An `(a,b,c)`-deal: Alice holds `a` cards, Bob `b`, Cathy `c`, from a deck
/// of `n = a + b + c` cards labelled `0, …, n-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DealSpec {
    a: u32,
    b: u32,
    c: u32,
}

impl DealSpec {
    pub fn new(a: u32, b: u32, c: u32) -> Result<DealSpec, DealError> {
        if a == 0 || b == 0 || c == 0 {
            return Err(DealError::EmptyHand { a, b, c });
        }
        Ok(DealSpec { a, b, c })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    /// Deck size `a + b + c`.
    pub fn n(&self) -> u32 {
        self.a + self.b + self.c
    }
}

impl fmt::Display for DealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}
