//! Line-oriented text format for strategies and designs.
//!
//! Both file kinds are UTF-8 with `#` comments and begin with the header
//! line `rcards v1`.
//!
//! Strategy files:
//!
//! ```text
//! rcards v1
//! deal 3 3 1
//! announcement 1
//! 0 1 2
//! 2 3 4
//! announcement 2
//! ...
//! probs
//! 0 1 2 : 1=1/2 2=1/2
//! ```
//!
//! Hands are space-separated ascending card indices, one per line.
//! Announcement headers number consecutively from 1. The trailing `probs`
//! section is optional; hands without an entry use the uniform distribution
//! over the announcements containing them. Parsing is syntax-only: a file
//! whose announcements do not cover every a-subset of the deck still
//! parses (and [`crate::Strategy::is_complete`] reports the gap).
//!
//! Design files:
//!
//! ```text
//! rcards v1
//! design 7 3
//! 0 1 3
//! ...
//! design 7 3     # a file may hold a whole family
//! ```
//!
//! [`emit_strategy`] and [`emit_design_family`] write canonical form: hands
//! sorted colexicographically inside each announcement and probabilities as
//! `num/den`. Canonical files round-trip byte-exactly through
//! parse-then-emit.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::BigInt;
use thiserror::Error;

use crate::deal::DealSpec;
use crate::design::Design;
use crate::hand::{Card, Hand};
use crate::rational::{self, Rational};
use crate::strategy::{Announcement, Strategy};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// A line with its 1-based number and the column of its first token.
struct Line<'a> {
    number: usize,
    column: usize,
    text: &'a str,
}

fn meaningful_lines(text: &str) -> Vec<Line<'_>> {
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let without_comment = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let trimmed = without_comment.trim_end();
        let column = trimmed.len() - trimmed.trim_start().len() + 1;
        let content = trimmed.trim_start();
        if content.is_empty() {
            continue;
        }
        lines.push(Line {
            number: idx + 1,
            column,
            text: content,
        });
    }
    lines
}

fn parse_cards(line: &Line<'_>) -> Result<Vec<Card>, ParseError> {
    let mut cards = Vec::new();
    let mut column = line.column;
    for token in line.text.split_whitespace() {
        let card: Card = token.parse().map_err(|_| {
            ParseError::new(
                line.number,
                column,
                format!("expected a card index, got `{token}`"),
            )
        })?;
        if let Some(&prev) = cards.last() {
            if card <= prev {
                return Err(ParseError::new(
                    line.number,
                    column,
                    format!("cards must be strictly ascending; {card} follows {prev}"),
                ));
            }
        }
        cards.push(card);
        column += token.len() + 1;
    }
    Ok(cards)
}

fn expect_header(lines: &[Line<'_>]) -> Result<(), ParseError> {
    match lines.first() {
        Some(l) if l.text == "rcards v1" => Ok(()),
        Some(l) => Err(ParseError::new(
            l.number,
            l.column,
            format!("expected header `rcards v1`, got `{}`", l.text),
        )),
        None => Err(ParseError::new(
            1,
            1,
            "empty file; expected header `rcards v1`",
        )),
    }
}

/// Parses a strategy file.
///
/// Structural validation only: hand cardinalities against the deal,
/// duplicate hands within an announcement, distributions whose support is
/// not exactly the announcements containing the hand, probabilities not
/// summing to one, and probability lines for hands in no announcement are
/// all reported with line and column. Deck coverage is not required here.
pub fn parse_strategy(text: &str) -> Result<Strategy, ParseError> {
    let lines = meaningful_lines(text);
    expect_header(&lines)?;
    let mut it = lines.iter().skip(1).peekable();

    let deal_line = it
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "missing `deal <a> <b> <c>` line"))?;
    let deal = parse_deal_line(deal_line)?;

    let mut announcements: Vec<(usize, Vec<Hand>)> = Vec::new();
    let mut probs_lines: Vec<&Line<'_>> = Vec::new();
    let mut in_probs = false;
    for line in it {
        if in_probs {
            probs_lines.push(line);
            continue;
        }
        if line.text == "probs" {
            in_probs = true;
            continue;
        }
        if let Some(rest) = line.text.strip_prefix("announcement") {
            let idx: usize = rest.trim().parse().map_err(|_| {
                ParseError::new(
                    line.number,
                    line.column,
                    "announcement header needs a number",
                )
            })?;
            if idx != announcements.len() + 1 {
                return Err(ParseError::new(
                    line.number,
                    line.column,
                    format!(
                        "announcement numbers must be consecutive from 1; expected {}, got {idx}",
                        announcements.len() + 1
                    ),
                ));
            }
            announcements.push((line.number, Vec::new()));
            continue;
        }
        let cards = parse_cards(line)?;
        let hand = Hand::new(cards)
            .map_err(|e| ParseError::new(line.number, line.column, e.to_string()))?;
        if hand.len() != deal.a() as usize {
            return Err(ParseError::new(
                line.number,
                line.column,
                format!(
                    "hand {hand} has {} cards; deal {deal} requires hands of {}",
                    hand.len(),
                    deal.a()
                ),
            ));
        }
        if !hand.within_deck(deal.n()) {
            return Err(ParseError::new(
                line.number,
                line.column,
                format!("hand {hand} uses cards outside the deck of {}", deal.n()),
            ));
        }
        match announcements.last_mut() {
            Some((_, hands)) => {
                if hands.contains(&hand) {
                    return Err(ParseError::new(
                        line.number,
                        line.column,
                        format!("duplicate hand {hand} in this announcement"),
                    ));
                }
                hands.push(hand);
            }
            None => {
                return Err(ParseError::new(
                    line.number,
                    line.column,
                    "hand line before the first `announcement` header",
                ));
            }
        }
    }

    let mut anns = Vec::with_capacity(announcements.len());
    for (header_line, hands) in announcements {
        let ann =
            Announcement::new(hands).map_err(|e| ParseError::new(header_line, 1, e.to_string()))?;
        anns.push(ann);
    }

    let mut g: BTreeMap<Hand, Vec<usize>> = BTreeMap::new();
    for (i, ann) in anns.iter().enumerate() {
        for h in ann.hands() {
            g.entry(h.clone()).or_default().push(i);
        }
    }

    let mut dists: BTreeMap<Hand, Vec<(usize, Rational)>> = BTreeMap::new();
    for line in probs_lines {
        let (hand, mut entries) = parse_probs_line(line, anns.len())?;
        if dists.contains_key(&hand) {
            return Err(ParseError::new(
                line.number,
                line.column,
                format!("second probability line for hand {hand}"),
            ));
        }
        let Some(support) = g.get(&hand) else {
            return Err(ParseError::new(
                line.number,
                line.column,
                format!("hand {hand} occurs in no announcement"),
            ));
        };
        entries.sort_by_key(|(i, _)| *i);
        let got: Vec<usize> = entries.iter().map(|(i, _)| *i).collect();
        if &got != support {
            let render = |v: &[usize]| -> Vec<usize> { v.iter().map(|i| i + 1).collect() };
            return Err(ParseError::new(
                line.number,
                line.column,
                format!(
                    "distribution for {hand} must cover exactly the announcements containing it: expected {:?}, got {:?}",
                    render(support),
                    render(&got)
                ),
            ));
        }
        use num::Signed;
        if let Some((i, _)) = entries.iter().find(|(_, p)| !p.is_positive()) {
            return Err(ParseError::new(
                line.number,
                line.column,
                format!(
                    "probability of announcement {} must be strictly positive",
                    i + 1
                ),
            ));
        }
        let sum: Rational = entries.iter().map(|(_, p)| p.clone()).sum();
        if sum != crate::rational::one() {
            return Err(ParseError::new(
                line.number,
                line.column,
                format!(
                    "probabilities for {hand} sum to {}, not 1",
                    rational::render(&sum)
                ),
            ));
        }
        dists.insert(hand, entries);
    }

    Strategy::partial(deal, anns, dists).map_err(|e| ParseError::new(1, 1, e.to_string()))
}

fn parse_deal_line(line: &Line<'_>) -> Result<DealSpec, ParseError> {
    let mut parts = line.text.split_whitespace();
    if parts.next() != Some("deal") {
        return Err(ParseError::new(
            line.number,
            line.column,
            format!("expected `deal <a> <b> <c>`, got `{}`", line.text),
        ));
    }
    let nums: Vec<u32> = parts
        .map(|p| {
            p.parse().map_err(|_| {
                ParseError::new(line.number, line.column, format!("bad deal number `{p}`"))
            })
        })
        .collect::<Result<_, _>>()?;
    if nums.len() != 3 {
        return Err(ParseError::new(
            line.number,
            line.column,
            "deal line needs exactly three numbers",
        ));
    }
    DealSpec::new(nums[0], nums[1], nums[2])
        .map_err(|e| ParseError::new(line.number, line.column, e.to_string()))
}

/// `<cards> : <i>=<num>/<den> …`
fn parse_probs_line(
    line: &Line<'_>,
    m: usize,
) -> Result<(Hand, Vec<(usize, Rational)>), ParseError> {
    let Some((left, right)) = line.text.split_once(':') else {
        return Err(ParseError::new(
            line.number,
            line.column,
            "probability line needs the form `<cards> : <i>=<num>/<den> ...`",
        ));
    };
    let left_line = Line {
        number: line.number,
        column: line.column,
        text: left.trim(),
    };
    let cards = parse_cards(&left_line)?;
    let hand =
        Hand::new(cards).map_err(|e| ParseError::new(line.number, line.column, e.to_string()))?;
    let mut entries = Vec::new();
    for token in right.split_whitespace() {
        let Some((idx, frac)) = token.split_once('=') else {
            return Err(ParseError::new(
                line.number,
                line.column,
                format!("expected `<i>=<num>/<den>`, got `{token}`"),
            ));
        };
        let index: usize = idx.parse().map_err(|_| {
            ParseError::new(
                line.number,
                line.column,
                format!("bad announcement number `{idx}`"),
            )
        })?;
        if index == 0 || index > m {
            return Err(ParseError::new(
                line.number,
                line.column,
                format!("announcement number {index} out of range 1..={m}"),
            ));
        }
        let (num, den) = match frac.split_once('/') {
            Some((n, d)) => (n, d),
            None => (frac, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| {
            ParseError::new(line.number, line.column, format!("bad numerator `{num}`"))
        })?;
        let den: BigInt = den.parse().map_err(|_| {
            ParseError::new(line.number, line.column, format!("bad denominator `{den}`"))
        })?;
        if den == BigInt::from(0) {
            return Err(ParseError::new(
                line.number,
                line.column,
                "zero denominator",
            ));
        }
        entries.push((index - 1, Rational::new(num, den)));
    }
    Ok((hand, entries))
}

fn write_hand_line(out: &mut String, hand: &Hand) {
    for (i, c) in hand.cards().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{c}");
    }
    out.push('\n');
}

/// Canonical strategy text: header, deal, announcements with hands in colex
/// order, and a `probs` section only when some distribution is non-uniform.
pub fn emit_strategy(strategy: &Strategy) -> String {
    let mut out = String::from("rcards v1\n");
    let deal = strategy.deal();
    let _ = writeln!(out, "deal {} {} {}", deal.a(), deal.b(), deal.c());
    for (i, ann) in strategy.announcements().iter().enumerate() {
        let _ = writeln!(out, "announcement {}", i + 1);
        for hand in ann.hands() {
            write_hand_line(&mut out, hand);
        }
    }
    let needs_probs = strategy.covered_hands().any(|h| {
        let dist = strategy.distribution(h);
        let gamma = dist.len() as i64;
        dist.iter()
            .any(|(_, p)| *p != crate::rational::ratio(1, gamma))
    });
    if needs_probs {
        out.push_str("probs\n");
        for hand in strategy.covered_hands() {
            let dist = strategy.distribution(hand);
            for (i, c) in hand.cards().iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{c}");
            }
            out.push_str(" :");
            for (idx, p) in dist {
                let _ = write!(out, " {}={}", idx + 1, rational::render(p));
            }
            out.push('\n');
        }
    }
    out
}

/// Parses a design file into the family of designs it holds.
pub fn parse_design_family(text: &str) -> Result<Vec<Design>, ParseError> {
    let lines = meaningful_lines(text);
    expect_header(&lines)?;
    let mut designs: Vec<(usize, u32, u32, Vec<Hand>)> = Vec::new();
    for line in lines.iter().skip(1) {
        if let Some(rest) = line.text.strip_prefix("design") {
            let nums: Vec<u32> = rest
                .split_whitespace()
                .map(|p| {
                    p.parse().map_err(|_| {
                        ParseError::new(
                            line.number,
                            line.column,
                            format!("bad design number `{p}`"),
                        )
                    })
                })
                .collect::<Result<_, _>>()?;
            if nums.len() != 2 {
                return Err(ParseError::new(
                    line.number,
                    line.column,
                    "design header needs the form `design <v> <k>`",
                ));
            }
            designs.push((line.number, nums[0], nums[1], Vec::new()));
            continue;
        }
        let cards = parse_cards(line)?;
        let hand = Hand::new(cards)
            .map_err(|e| ParseError::new(line.number, line.column, e.to_string()))?;
        match designs.last_mut() {
            Some((_, v, k, blocks)) => {
                if hand.len() != *k as usize || !hand.within_deck(*v) {
                    return Err(ParseError::new(
                        line.number,
                        line.column,
                        format!("block {hand} does not fit design {v} {k}"),
                    ));
                }
                blocks.push(hand);
            }
            None => {
                return Err(ParseError::new(
                    line.number,
                    line.column,
                    "block line before the first `design` header",
                ));
            }
        }
    }
    if designs.is_empty() {
        return Err(ParseError::new(1, 1, "no `design <v> <k>` section found"));
    }
    designs
        .into_iter()
        .map(|(header_line, v, k, blocks)| {
            Design::new(v, k, blocks, true)
                .map_err(|e| ParseError::new(header_line, 1, e.to_string()))
        })
        .collect()
}

/// Canonical design-family text.
pub fn emit_design_family(family: &[Design]) -> String {
    let mut out = String::from("rcards v1\n");
    for d in family {
        let _ = writeln!(out, "design {} {}", d.v(), d.k());
        for b in d.blocks() {
            write_hand_line(&mut out, b);
        }
    }
    out
}
