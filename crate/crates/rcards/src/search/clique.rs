//! Maximum pairwise-disjoint subfamilies of a design family, by exact
//! branch-and-bound clique search on the disjointness graph.

use crate::design::Design;
use crate::subsets::binomial_exact_usize;
use crate::Budget;

use super::{NodeBudget, SearchError};

/// A certified maximum family: `family` is pairwise block-disjoint and the
/// search proved no larger one exists.
#[derive(Debug, Clone)]
pub struct DisjointFamily {
    pub size: usize,
    /// Indices into the input family, ascending; the lexicographically first
    /// maximum clique in canonical (input) order.
    pub indices: Vec<usize>,
    pub family: Vec<Design>,
}

/// Finds a maximum-cardinality subfamily with pairwise disjoint block sets.
///
/// Two passes: a branch-and-bound pass establishes the exact maximum size,
/// then a lexicographic pass extracts the first maximum family in canonical
/// order, so ties break deterministically.
pub fn max_disjoint_family(family: &[Design]) -> Result<DisjointFamily, SearchError> {
    max_disjoint_family_with_budget(family, Budget::default())
}

pub fn max_disjoint_family_with_budget(
    family: &[Design],
    budget: Budget,
) -> Result<DisjointFamily, SearchError> {
    if family.is_empty() {
        return Ok(DisjointFamily {
            size: 0,
            indices: Vec::new(),
            family: Vec::new(),
        });
    }
    let (v, k) = (family[0].v(), family[0].k());
    for (index, d) in family.iter().enumerate() {
        if d.v() != v || d.k() != k {
            return Err(SearchError::MismatchedFamily {
                index,
                v,
                k,
                got_v: d.v(),
                got_k: d.k(),
            });
        }
    }

    let n = family.len();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i != j && !family[i].shares_a_block_with(&family[j]))
                .collect()
        })
        .collect();

    // Any pairwise-disjoint subfamily packs distinct blocks into the
    // C(v,k) available k-subsets.
    let total_blocks = binomial_exact_usize(v as u64, k as u64).unwrap_or(usize::MAX);
    let min_blocks = family
        .iter()
        .map(|d| d.blocks().len())
        .min()
        .unwrap_or(1)
        .max(1);
    let packing_cap = total_blocks / min_blocks;

    let mut nodes = NodeBudget::new(budget);
    let mut best: Vec<usize> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    let all: Vec<usize> = (0..n).collect();
    grow_best(
        &adj,
        min_blocks,
        total_blocks,
        packing_cap,
        &mut current,
        &all,
        &mut best,
        &mut nodes,
    )?;
    let size = best.len();

    // Lexicographic extraction of the first clique of the proven size.
    let mut lex: Vec<usize> = Vec::new();
    let mut found = false;
    extract_lex(
        &adj,
        size,
        &mut Vec::new(),
        &all,
        &mut lex,
        &mut found,
        &mut nodes,
    )?;
    debug_assert!(found);

    Ok(DisjointFamily {
        size,
        family: lex.iter().map(|&i| family[i].clone()).collect(),
        indices: lex,
    })
}

/// Greedy colouring of the candidate set: any clique within `cand` has at
/// most as many members as colour classes.
fn coloring_bound(adj: &[Vec<bool>], cand: &[usize]) -> usize {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &u in cand {
        match classes
            .iter_mut()
            .find(|class| class.iter().all(|&w| !adj[u][w]))
        {
            Some(class) => class.push(u),
            None => classes.push(vec![u]),
        }
    }
    classes.len()
}

#[allow(clippy::too_many_arguments)]
fn grow_best(
    adj: &[Vec<bool>],
    min_blocks: usize,
    total_blocks: usize,
    packing_cap: usize,
    current: &mut Vec<usize>,
    cand: &[usize],
    best: &mut Vec<usize>,
    nodes: &mut NodeBudget,
) -> Result<(), SearchError> {
    nodes.spend()?;
    if current.len() > best.len() {
        *best = current.clone();
    }
    if cand.is_empty() || best.len() >= packing_cap {
        return Ok(());
    }
    if current.len() + cand.len() <= best.len() {
        return Ok(());
    }
    // Packing: the current members already consumed distinct blocks.
    let used: usize = current.len() * min_blocks;
    let pack = (total_blocks.saturating_sub(used)) / min_blocks;
    if current.len() + pack <= best.len() {
        return Ok(());
    }
    if current.len() + coloring_bound(adj, cand) <= best.len() {
        return Ok(());
    }
    for (pos, &u) in cand.iter().enumerate() {
        if current.len() + (cand.len() - pos) <= best.len() {
            break;
        }
        let rest: Vec<usize> = cand[pos + 1..]
            .iter()
            .copied()
            .filter(|&w| adj[u][w])
            .collect();
        current.push(u);
        grow_best(
            adj,
            min_blocks,
            total_blocks,
            packing_cap,
            current,
            &rest,
            best,
            nodes,
        )?;
        current.pop();
    }
    Ok(())
}

fn extract_lex(
    adj: &[Vec<bool>],
    target: usize,
    current: &mut Vec<usize>,
    cand: &[usize],
    out: &mut Vec<usize>,
    found: &mut bool,
    nodes: &mut NodeBudget,
) -> Result<(), SearchError> {
    if *found {
        return Ok(());
    }
    nodes.spend()?;
    if current.len() == target {
        *out = current.clone();
        *found = true;
        return Ok(());
    }
    if current.len() + cand.len() < target {
        return Ok(());
    }
    if current.len() + coloring_bound(adj, cand) < target {
        return Ok(());
    }
    for (pos, &u) in cand.iter().enumerate() {
        if current.len() + (cand.len() - pos) < target {
            break;
        }
        let rest: Vec<usize> = cand[pos + 1..]
            .iter()
            .copied()
            .filter(|&w| adj[u][w])
            .collect();
        current.push(u);
        extract_lex(adj, target, current, &rest, out, found, nodes)?;
        current.pop();
        if *found {
            return Ok(());
        }
    }
    Ok(())
}
