//! Minimum number of announcements for an informative strategy, by exact
//! colouring of the hand conflict graph.
//!
//! Two hands conflict when they meet in `a-c` or more cards; a partition of
//! all a-subsets into conflict-free classes is exactly a deterministic
//! informative strategy, and no strategy (deterministic or not) can use
//! fewer announcements than the chromatic number of this graph, because
//! announcements are themselves conflict-free sets that together cover
//! every hand.

use num::ToPrimitive;

use crate::deal::DealSpec;
use crate::hand::Hand;
use crate::strategy::{Announcement, Strategy};
use crate::subsets::k_subsets;
use crate::verify::lower_bound_m;
use crate::Budget;

use super::{NodeBudget, SearchError};

/// Result of [`min_informative_m`]: the minimum together with a witness
/// strategy realizing it.
#[derive(Debug, Clone)]
pub struct MinimumM {
    pub m: usize,
    pub witness: Strategy,
}

/// Least `m <= m_max` such that the a-subsets of the deck split into `m`
/// announcements each free of conflicts (pairwise intersections below
/// `a-c`), plus one witness partition as a deterministic strategy. `None`
/// when even `m_max` colours do not suffice — by then every smaller count
/// has an exhausted search tree.
pub fn min_informative_m(deal: DealSpec, m_max: usize) -> Result<Option<MinimumM>, SearchError> {
    min_informative_m_with_budget(deal, m_max, Budget::default())
}

pub fn min_informative_m_with_budget(
    deal: DealSpec,
    m_max: usize,
    budget: Budget,
) -> Result<Option<MinimumM>, SearchError> {
    if deal.a() <= deal.c() {
        return Err(SearchError::NoInformativeStrategy {
            a: deal.a(),
            c: deal.c(),
        });
    }
    let hands = k_subsets(deal.n(), deal.a());
    let nv = hands.len();
    let threshold = (deal.a() - deal.c()) as usize;
    let adj: Vec<Vec<bool>> = (0..nv)
        .map(|i| {
            (0..nv)
                .map(|j| i != j && hands[i].intersection_size(&hands[j]) >= threshold)
                .collect()
        })
        .collect();

    // The hands through a fixed (a-c)-subset pairwise conflict: a clique of
    // size C(n-a+c, c), which is also the strategy lower bound. Pre-colour
    // it to break colour symmetry.
    let anchor: Hand = Hand::new(0..(deal.a() - deal.c())).expect("anchor");
    let clique: Vec<usize> = (0..nv)
        .filter(|&i| hands[i].contains_all(&anchor))
        .collect();
    let lower = lower_bound_m(deal)
        .expect("a > c")
        .to_usize()
        .unwrap_or(usize::MAX);
    debug_assert_eq!(clique.len(), lower);

    let mut nodes = NodeBudget::new(budget);
    for m in lower..=m_max {
        if let Some(classes) = try_color(&adj, &clique, m, &mut nodes)? {
            let mut announcements: Vec<Vec<Hand>> = vec![Vec::new(); m];
            for (vertex, color) in classes.iter().enumerate() {
                announcements[*color].push(hands[vertex].clone());
            }
            let mut announcements: Vec<Announcement> = announcements
                .into_iter()
                .map(Announcement::new)
                .collect::<Result<_, _>>()?;
            announcements.sort();
            let witness = Strategy::new(deal, announcements)?;
            return Ok(Some(MinimumM { m, witness }));
        }
    }
    Ok(None)
}

/// Exact m-colourability with a pre-coloured clique; returns one colouring.
fn try_color(
    adj: &[Vec<bool>],
    clique: &[usize],
    m: usize,
    nodes: &mut NodeBudget,
) -> Result<Option<Vec<usize>>, SearchError> {
    let nv = adj.len();
    if clique.len() > m {
        return Ok(None);
    }
    const UNSET: usize = usize::MAX;
    let mut colors = vec![UNSET; nv];
    let mut max_used = 0usize;
    for (c, &vtx) in clique.iter().enumerate() {
        colors[vtx] = c;
        max_used = c + 1;
    }
    if saturate(adj, &mut colors, max_used, m, nodes)? {
        Ok(Some(colors))
    } else {
        Ok(None)
    }
}

/// DSATUR-style backtracking: branch on the most saturated uncoloured
/// vertex; a fresh colour may only be introduced as the next unused index.
fn saturate(
    adj: &[Vec<bool>],
    colors: &mut Vec<usize>,
    max_used: usize,
    m: usize,
    nodes: &mut NodeBudget,
) -> Result<bool, SearchError> {
    nodes.spend()?;
    const UNSET: usize = usize::MAX;
    let nv = adj.len();

    let mut pick: Option<(usize, usize, usize)> = None; // (vertex, saturation, degree)
    for v in 0..nv {
        if colors[v] != UNSET {
            continue;
        }
        let mut seen = vec![false; m];
        let mut sat = 0;
        let mut deg = 0;
        for w in 0..nv {
            if adj[v][w] {
                deg += 1;
                if colors[w] != UNSET && !seen[colors[w]] {
                    seen[colors[w]] = true;
                    sat += 1;
                }
            }
        }
        if sat == m {
            return Ok(false); // dead vertex: no colour can work
        }
        let better = match pick {
            None => true,
            Some((_, best_sat, best_deg)) => sat > best_sat || (sat == best_sat && deg > best_deg),
        };
        if better {
            pick = Some((v, sat, deg));
        }
    }
    let Some((v, _, _)) = pick else {
        return Ok(true); // everything coloured
    };

    let limit = (max_used + 1).min(m);
    for color in 0..limit {
        if (0..nv).any(|w| adj[v][w] && colors[w] == color) {
            continue;
        }
        colors[v] = color;
        let next_max = max_used.max(color + 1);
        if saturate(adj, colors, next_max, m, nodes)? {
            return Ok(true);
        }
        colors[v] = UNSET;
    }
    Ok(false)
}
