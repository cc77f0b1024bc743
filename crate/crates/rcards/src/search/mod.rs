//! Exhaustive, deterministic search engines.
//!
//! Everything here is exact: enumeration returns *all* solutions, the clique
//! and colouring searches prove optimality by exhausting their trees, and
//! node budgets turn runaway instances into explicit errors instead of
//! silent truncation.

mod audit;
mod clique;
mod coloring;

pub use audit::{necessary_condition_audit, AuditCheck, AuditEntry, AuditReport, AuditStatus};
pub use clique::{max_disjoint_family, max_disjoint_family_with_budget, DisjointFamily};
pub use coloring::{min_informative_m, min_informative_m_with_budget, MinimumM};

use num::BigUint;
use thiserror::Error;

use crate::design::{subsets_of, Design, DesignError};
use crate::hand::Hand;
use crate::subsets::{binomial, binomial_exact_usize, k_subsets};
use crate::Budget;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("search needs {required} candidates, over budget {budget}; raise RCARDS_BUDGET or the budget argument")]
    CandidatesOverBudget { required: BigUint, budget: u64 },
    #[error("search tree exceeded the node budget of {budget}")]
    NodeBudgetExceeded { budget: u64 },
    #[error("no informative strategy exists when a <= c (a={a}, c={c})")]
    NoInformativeStrategy { a: u32, c: u32 },
    #[error("family members disagree on (v,k): member {index} has ({got_v},{got_k}), expected ({v},{k})")]
    MismatchedFamily {
        index: usize,
        v: u32,
        k: u32,
        got_v: u32,
        got_k: u32,
    },
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Strategy(#[from] crate::strategy::StrategyError),
}

struct NodeBudget {
    left: u64,
    limit: u64,
}

impl NodeBudget {
    fn new(budget: Budget) -> Self {
        NodeBudget {
            left: budget.0,
            limit: budget.0,
        }
    }

    fn spend(&mut self) -> Result<(), SearchError> {
        if self.left == 0 {
            return Err(SearchError::NodeBudgetExceeded { budget: self.limit });
        }
        self.left -= 1;
        Ok(())
    }
}

/// Every t-(v,k,1) design on the points `{0, …, v-1}`, in canonical order.
///
/// Backtracking over an exact cover of the t-subsets: branch on the
/// lowest-rank uncovered t-subset and try candidate blocks in rank order.
/// Symmetry breaking fixes the block through `{0,…,t-1}` to the minimum-rank
/// block `{0,…,k-1}` and re-expands afterwards, so the returned count is of
/// labeled designs.
pub fn enumerate_designs(t: u32, v: u32, k: u32) -> Result<Vec<Design>, SearchError> {
    enumerate_designs_with_budget(t, v, k, Budget::default())
}

pub fn enumerate_designs_with_budget(
    t: u32,
    v: u32,
    k: u32,
    budget: Budget,
) -> Result<Vec<Design>, SearchError> {
    if t < 1 || t > k || k > v {
        return Err(DesignError::BadStrength { t, k, v }.into());
    }
    let candidates_count = binomial(v as u64, k as u64);
    if candidates_count > BigUint::from(budget.0) {
        return Err(SearchError::CandidatesOverBudget {
            required: candidates_count,
            budget: budget.0,
        });
    }
    let t_subsets = k_subsets(v, t);
    let t_index: std::collections::BTreeMap<Hand, usize> = t_subsets
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, h)| (h, i))
        .collect();
    let blocks = k_subsets(v, k);
    let block_covers: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| subsets_of(b, t).iter().map(|s| t_index[s]).collect())
        .collect();
    // For each t-subset, the blocks containing it, ascending by rank.
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); t_subsets.len()];
    for (bi, covers) in block_covers.iter().enumerate() {
        for &s in covers {
            containing[s].push(bi);
        }
    }

    let mut covered = vec![false; t_subsets.len()];
    let mut chosen: Vec<usize> = Vec::new();
    let mut class0: Vec<Vec<usize>> = Vec::new();
    let mut nodes = NodeBudget::new(budget);

    // Pre-place the canonical first block {0, …, k-1} (always rank 0).
    place(0, &block_covers, &mut covered);
    chosen.push(0);
    search_designs(
        &block_covers,
        &containing,
        &mut covered,
        &mut chosen,
        &mut class0,
        &mut nodes,
    )?;

    // Orbit re-expansion: each design has exactly one block through
    // {0,…,t-1}; mapping its tail onto every (k-t)-subset of the remaining
    // points reproduces every labeled design exactly once.
    let tails = k_subsets(v - t, k - t);
    let mut result: Vec<Design> = Vec::with_capacity(
        class0.len() * binomial_exact_usize((v - t) as u64, (k - t) as u64).unwrap_or(0),
    );
    for tail in &tails {
        let target: Vec<u32> = tail.cards().iter().map(|&x| x + t).collect();
        let perm = tail_permutation(v, t, k, &target);
        for sel in &class0 {
            let design_blocks: Vec<Hand> =
                sel.iter().map(|&bi| blocks[bi].permute(&perm)).collect();
            result.push(Design::new(v, k, design_blocks, true)?);
        }
    }
    result.sort();
    debug_assert!(result.windows(2).all(|w| w[0] != w[1]));
    Ok(result)
}

/// Permutation fixing `{0,…,t-1}` pointwise, sending `{t,…,k-1}` to
/// `target` monotonically, and the remaining points to the remaining slots
/// monotonically.
fn tail_permutation(v: u32, t: u32, k: u32, target: &[u32]) -> Vec<u32> {
    let mut perm: Vec<u32> = vec![u32::MAX; v as usize];
    for x in 0..t {
        perm[x as usize] = x;
    }
    for (i, &y) in target.iter().enumerate() {
        perm[(t as usize) + i] = y;
    }
    let used: std::collections::BTreeSet<u32> = target.iter().copied().collect();
    let mut rest = (t..v).filter(|x| !used.contains(x));
    for x in k..v {
        perm[x as usize] = rest.next().expect("slot for every point");
    }
    perm
}

fn place(block: usize, block_covers: &[Vec<usize>], covered: &mut [bool]) {
    for &s in &block_covers[block] {
        covered[s] = true;
    }
}

fn unplace(block: usize, block_covers: &[Vec<usize>], covered: &mut [bool]) {
    for &s in &block_covers[block] {
        covered[s] = false;
    }
}

fn search_designs(
    block_covers: &[Vec<usize>],
    containing: &[Vec<usize>],
    covered: &mut Vec<bool>,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    nodes: &mut NodeBudget,
) -> Result<(), SearchError> {
    nodes.spend()?;
    let Some(next) = covered.iter().position(|&c| !c) else {
        out.push(chosen.clone());
        return Ok(());
    };
    for &block in &containing[next] {
        if block_covers[block].iter().any(|&s| covered[s]) {
            continue;
        }
        place(block, block_covers, covered);
        chosen.push(block);
        search_designs(block_covers, containing, covered, chosen, out, nodes)?;
        chosen.pop();
        unplace(block, block_covers, covered);
    }
    Ok(())
}
