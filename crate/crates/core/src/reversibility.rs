//! Reversible sets of incomparable pairs.
//!
//! A set `R` of incomparable pairs is reversible when one linear extension
//! puts `y` below `x` for every `(x, y)` in `R`. That fails exactly when `R`
//! holds an alternating cycle `(x_1, y_1), ..., (x_k, y_k)` with
//! `x_i <= y_{i+1}` cyclically. Cycles are found as directed cycles in the
//! digraph on pairs with an arc `(x, y) -> (x', y')` whenever `x <= y'`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use crate::error::ReversalError;
use crate::poset::{IncPair, LinearExtension, Poset};

/// A set of incomparable pairs proposed for simultaneous reversal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReversibleCandidate {
    pairs: Vec<IncPair>,
}

impl ReversibleCandidate {
    /// Checks every pair is incomparable in `p`; drops repeats, keeping the
    /// first occurrence.
    pub fn new(
        p: &Poset,
        pairs: impl IntoIterator<Item = IncPair>,
    ) -> Result<Self, ReversalError> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for pair in pairs {
            let ok = pair.x < p.len() && pair.y < p.len() && p.incomparable(pair.x, pair.y);
            if !ok {
                return Err(ReversalError::NotIncomparable(pair));
            }
            if seen.insert(pair) {
                out.push(pair);
            }
        }
        Ok(ReversibleCandidate { pairs: out })
    }

    pub fn pairs(&self) -> &[IncPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Pairs `(x_i, y_i)` listed so that `x_i <= y_{i+1}`, indices cyclic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingCycle {
    pub pairs: Vec<IncPair>,
}

impl AlternatingCycle {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Direct check of the defining inequalities.
    pub fn is_valid_in(&self, p: &Poset) -> bool {
        let k = self.pairs.len();
        k >= 2
            && self.pairs.iter().all(|q| p.incomparable(q.x, q.y))
            && (0..k).all(|i| p.le(self.pairs[i].x, self.pairs[(i + 1) % k].y))
    }
}

/// Returns an alternating cycle contained in `r`, if any. The search is a
/// depth-first traversal in pair order, so the witness is deterministic but
/// not necessarily shortest.
pub fn find_alternating_cycle(p: &Poset, r: &ReversibleCandidate) -> Option<AlternatingCycle> {
    const WHITE: u8 = 0;
    const GREY: u8 = 1;
    const BLACK: u8 = 2;

    let pairs = r.pairs();
    let m = pairs.len();
    let arc = |i: usize, j: usize| p.le(pairs[i].x, pairs[j].y);
    let mut color = vec![WHITE; m];
    // (node, next successor to try)
    let mut stack: Vec<(usize, usize)> = Vec::new();

    for start in 0..m {
        if color[start] != WHITE {
            continue;
        }
        color[start] = GREY;
        stack.push((start, 0));
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if *next == m {
                color[node] = BLACK;
                stack.pop();
                continue;
            }
            let succ = *next;
            *next += 1;
            if !arc(node, succ) {
                continue;
            }
            match color[succ] {
                WHITE => {
                    color[succ] = GREY;
                    stack.push((succ, 0));
                }
                GREY => {
                    let from = stack
                        .iter()
                        .position(|&(v, _)| v == succ)
                        .expect("grey nodes are on the stack");
                    let cycle = stack[from..].iter().map(|&(v, _)| pairs[v]).collect();
                    return Some(AlternatingCycle { pairs: cycle });
                }
                _ => {}
            }
        }
    }
    None
}

pub fn is_reversible(p: &Poset, r: &ReversibleCandidate) -> bool {
    find_alternating_cycle(p, r).is_none()
}

/// A linear extension of `p` placing `y` below `x` for every `(x, y)` in
/// `r`: a topological sort of the covers plus the arcs `y -> x`, taking the
/// smallest available index first.
pub fn reverse_extension(
    p: &Poset,
    r: &ReversibleCandidate,
) -> Result<LinearExtension, ReversalError> {
    let n = p.len();
    let mut succ: Vec<Vec<usize>> = (0..n).map(|a| p.upper_covers(a).to_vec()).collect();
    for q in r.pairs() {
        succ[q.y].push(q.x);
    }
    let mut indeg = vec![0usize; n];
    for list in &succ {
        for &b in list {
            indeg[b] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = ready.pop() {
        order.push(v);
        for &w in &succ[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(Reverse(w));
            }
        }
    }
    if order.len() < n {
        let cycle = find_alternating_cycle(p, r).map(|c| c.pairs).unwrap_or_default();
        return Err(ReversalError::NotReversible(cycle));
    }
    Ok(LinearExtension(order))
}
