//! From block realizers to a realizer of the whole poset.
//!
//! Blocks `B_0, ..., B_(t-1)` are taken in the order of a
//! [`BlockDecomposition`]. For each `j` the `j`-th extensions of the block
//! realizers are glued one block at a time with the merge rule
//! `[A < w < B] + [C < w < D] = [A < C < w < D < B]` at the root `w` of the
//! new block. The resulting `d` extensions `L_1..L_d` restrict to the block
//! extensions on every block, and every tail is an interval in each of them.
//!
//! The pairs `(x, y)` with `x` below `y` in every `L_j` are then split into
//! two reversible sets, each turned into one more extension placing `x`
//! above `y`.

use crate::blocks::{block_decomposition, BlockDecomposition};
use crate::error::MergeError;
use crate::poset::{verify_realizer, IncPair, LinearExtension, Poset, Realizer, Verdict};
use crate::reversibility::{reverse_extension, ReversibleCandidate};
use crate::solver::{exact_dimension, is_dim_at_most, Decision, SolverConfig};

/// Merges `m_new`, an extension of a poset meeting the old one only in `w`,
/// into `m_old`: `[A < w < B] + [C < w < D] = [A < C < w < D < B]`.
pub fn merge_rule(
    m_old: &LinearExtension,
    m_new: &LinearExtension,
    w: usize,
) -> Result<LinearExtension, MergeError> {
    let old = m_old.order();
    let new = m_new.order();
    let shared = new.iter().filter(|v| old.contains(v)).count();
    if shared != 1 {
        return Err(MergeError::SharedElements(shared));
    }
    let (Some(a), Some(c)) = (old.iter().position(|&v| v == w), new.iter().position(|&v| v == w))
    else {
        return Err(MergeError::MissingMergePoint);
    };
    let mut out = Vec::with_capacity(old.len() + new.len() - 1);
    out.extend_from_slice(&old[..a]);
    out.extend_from_slice(&new[..c]);
    out.push(w);
    out.extend_from_slice(&new[c + 1..]);
    out.extend_from_slice(&old[a + 1..]);
    Ok(LinearExtension(out))
}

/// `d` extensions of the whole poset together with the block extensions
/// they were glued from.
#[derive(Clone, Debug)]
pub struct MergedFamily {
    pub d: usize,
    pub extensions: Vec<LinearExtension>,
    /// `block_realizers[i][j]` is the `j`-th extension of block `i`, in
    /// global element indices, padded to length `d`.
    pub block_realizers: Vec<Vec<LinearExtension>>,
}

fn check_block_realizer(
    p: &Poset,
    dec: &BlockDecomposition,
    i: usize,
    r: &Realizer,
) -> Result<(), MergeError> {
    let invalid = |reason: String| MergeError::InvalidBlockRealizer { block: i, reason };
    let block = dec.block(i);
    let mut local = vec![usize::MAX; p.len()];
    for (k, &v) in block.iter().enumerate() {
        local[v] = k;
    }
    let mut exts = Vec::with_capacity(r.len());
    for ext in r.extensions() {
        let mut order = Vec::with_capacity(ext.len());
        for &v in ext.order() {
            match local.get(v) {
                Some(&k) if k != usize::MAX => order.push(k),
                _ => return Err(invalid(format!("element {v} is not in the block"))),
            }
        }
        exts.push(LinearExtension(order));
    }
    let sub = p.subposet(block)?;
    let verdict = verify_realizer(&sub, &Realizer::new(exts)?).map_err(|e| invalid(e.to_string()))?;
    match verdict {
        Verdict::Valid => Ok(()),
        Verdict::Invalid(c) => Err(invalid(format!("{c:?}"))),
    }
}

/// Glues the block realizers (global indices, one per block of `dec`) into
/// `d` extensions of `p`, where `d` is the largest realizer size. Shorter
/// realizers repeat their last extension.
pub fn build_family(
    p: &Poset,
    dec: &BlockDecomposition,
    block_realizers: &[Realizer],
) -> Result<MergedFamily, MergeError> {
    assert_eq!(block_realizers.len(), dec.len(), "one realizer per block");
    for (i, r) in block_realizers.iter().enumerate() {
        check_block_realizer(p, dec, i, r)?;
    }
    let d = block_realizers.iter().map(Realizer::len).max().unwrap_or(1);
    let padded: Vec<Vec<LinearExtension>> = block_realizers
        .iter()
        .map(|r| {
            let exts = r.extensions();
            (0..d).map(|j| exts[j.min(exts.len() - 1)].clone()).collect()
        })
        .collect();

    let mut extensions = Vec::with_capacity(d);
    for j in 0..d {
        let mut m = padded[0][j].clone();
        for (i, block_exts) in padded.iter().enumerate().skip(1) {
            let w = dec.root(i).expect("later blocks have roots");
            m = merge_rule(&m, &block_exts[j], w)?;
        }
        extensions.push(m);
    }
    let fam = MergedFamily { d, extensions, block_realizers: padded };
    check_block_property(dec, &fam)?;
    check_interval_property(dec, &fam)?;
    Ok(fam)
}

/// Each `L_j` restricted to `B_i` is the `j`-th extension of `B_i`.
pub fn check_block_property(dec: &BlockDecomposition, fam: &MergedFamily) -> Result<(), MergeError> {
    for i in 0..dec.len() {
        let set = dec.block_set(i);
        for (j, ext) in fam.extensions.iter().enumerate() {
            if ext.restrict(&set) != fam.block_realizers[i][j].order() {
                return Err(MergeError::BlockProperty { extension: j, block: i });
            }
        }
    }
    Ok(())
}

/// Every tail `T(u, B_i)` occupies consecutive positions in every `L_j`.
pub fn check_interval_property(
    dec: &BlockDecomposition,
    fam: &MergedFamily,
) -> Result<(), MergeError> {
    let positions: Vec<Vec<usize>> = fam.extensions.iter().map(|e| e.positions()).collect();
    for i in 0..dec.len() {
        for &u in dec.block(i) {
            if !dec.is_cut_vertex(u) {
                continue;
            }
            let tail = dec.tail(u, i)?;
            for (j, pos) in positions.iter().enumerate() {
                let (lo, hi) = tail
                    .members
                    .iter()
                    .fold((usize::MAX, 0), |(lo, hi), &v| (lo.min(pos[v]), hi.max(pos[v])));
                if hi - lo + 1 != tail.members.len() {
                    return Err(MergeError::IntervalProperty { extension: j, anchor: u, block: i });
                }
            }
        }
    }
    Ok(())
}

/// Which extra extension reverses a residual pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Everything above `x` lies in `T(u, B_i)` and below `y` in every `L_j`.
    First,
    /// Everything below `y` lies in `T(v, B_i)` and above `x` in every `L_j`.
    Second,
}

/// An incomparable pair left unreversed by the merged family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidualPair {
    pub pair: IncPair,
    /// Lowest-indexed block every `x`-`y` path meets twice.
    pub block_index: usize,
    /// Where paths from `x` enter that block.
    pub u: usize,
    /// Where paths towards `y` leave it.
    pub v: usize,
    pub side: Side,
}

/// Classifies every pair `(x, y)` of `Inc(p)` with `x` below `y` in all
/// extensions of `fam`. Both sides are checked directly; the first side
/// wins when both apply.
pub fn residual_pairs(
    p: &Poset,
    dec: &BlockDecomposition,
    fam: &MergedFamily,
) -> Result<Vec<ResidualPair>, MergeError> {
    let n = p.len();
    let positions: Vec<Vec<usize>> = fam.extensions.iter().map(|e| e.positions()).collect();
    let before = |a: usize, b: usize| positions.iter().all(|pos| pos[a] < pos[b]);
    let closed_up = |x: usize| {
        let mut s = p.up_set(x).clone();
        s.insert(x);
        s
    };
    let closed_down = |y: usize| {
        let mut s = p.down_set(y).clone();
        s.insert(y);
        s
    };
    let mut out = Vec::new();
    for x in 0..n {
        let up = closed_up(x);
        for y in 0..n {
            if !p.incomparable(x, y) || !before(x, y) {
                continue;
            }
            let pair = IncPair::new(x, y);
            let violation = |reason: &str| MergeError::ClaimViolation { pair, reason: reason.into() };
            let c = dec.crossing(x, y).ok_or_else(|| violation("no crossing block"))?;
            let (i, u, v) = (c.block, c.entry, c.exit);
            if u == v {
                return Err(violation("entry and exit coincide"));
            }
            if !(dec.in_tail(x, u, i) && !dec.in_tail(y, u, i)) {
                return Err(violation("x and y are not separated by the tail of u"));
            }
            if !(dec.in_tail(y, v, i) && !dec.in_tail(x, v, i)) {
                return Err(violation("x and y are not separated by the tail of v"));
            }
            if !p.lt(u, v) {
                return Err(violation("u < v fails"));
            }
            let first = up.ones().all(|z| dec.in_tail(z, u, i) && before(z, y));
            let side = if first {
                Side::First
            } else if closed_down(y).ones().all(|z| dec.in_tail(z, v, i) && before(x, z)) {
                Side::Second
            } else {
                return Err(violation("neither side applies"));
            };
            out.push(ResidualPair { pair, block_index: i, u, v, side });
        }
    }
    Ok(out)
}

/// The family plus one extension per non-empty side, each reversing all
/// residual pairs on that side. The result is verified.
pub fn complete_realizer(
    p: &Poset,
    fam: &MergedFamily,
    residual: &[ResidualPair],
) -> Result<Realizer, MergeError> {
    let mut exts = fam.extensions.clone();
    for side in [Side::First, Side::Second] {
        let pairs: Vec<IncPair> =
            residual.iter().filter(|r| r.side == side).map(|r| r.pair).collect();
        if pairs.is_empty() {
            continue;
        }
        // reverse_extension puts y below x; residual pairs need x above y.
        let cand = ReversibleCandidate::new(p, pairs)?;
        exts.push(reverse_extension(p, &cand)?);
    }
    let r = Realizer::new(exts)?;
    match verify_realizer(p, &r)? {
        Verdict::Valid => Ok(r),
        Verdict::Invalid(_) => Err(MergeError::Unsound),
    }
}

#[derive(Clone, Debug, Default)]
pub struct BoundOptions {
    /// Decide every block at this level instead of computing its exact
    /// dimension; a block that needs more fails with `ExceedsMax`.
    pub block_dim_override: Option<usize>,
    pub solver: SolverConfig,
}

#[derive(Clone, Debug)]
pub struct UpperBound {
    /// Size of the witness.
    pub bound: usize,
    /// Size of the largest block realizer used.
    pub d: usize,
    /// Realizer size used for each block.
    pub block_dims: Vec<usize>,
    pub residual: Vec<ResidualPair>,
    pub witness: Realizer,
}

/// A verified realizer of `p` of size at most `d + 2`, where `d` bounds
/// the dimension of every block. The cover graph must be connected.
pub fn dimension_upper_bound(p: &Poset, opts: &BoundOptions) -> Result<UpperBound, MergeError> {
    if p.len() <= 1 {
        let witness = Realizer::new(vec![LinearExtension((0..p.len()).collect())])?;
        return Ok(UpperBound { bound: 1, d: 1, block_dims: vec![1; p.len()], residual: vec![], witness });
    }
    let dec = block_decomposition(p)?;
    dimension_upper_bound_with(p, &dec, opts)
}

/// [`dimension_upper_bound`] for a given block labeling.
pub fn dimension_upper_bound_with(
    p: &Poset,
    dec: &BlockDecomposition,
    opts: &BoundOptions,
) -> Result<UpperBound, MergeError> {
    let mut realizers = Vec::with_capacity(dec.len());
    for block in dec.blocks() {
        let sub = p.subposet(block)?;
        let local = match opts.block_dim_override {
            Some(d) => match is_dim_at_most(&sub, d, opts.solver.timeout)? {
                Decision::Yes(r) => r,
                Decision::No => return Err(crate::error::SolverError::ExceedsMax(d).into()),
            },
            None => exact_dimension(&sub, &opts.solver)?.witness,
        };
        let global = local
            .into_extensions()
            .into_iter()
            .map(|e| LinearExtension(e.0.into_iter().map(|k| block[k]).collect()))
            .collect();
        realizers.push(Realizer::new(global)?);
    }
    let block_dims = realizers.iter().map(Realizer::len).collect();
    let fam = build_family(p, dec, &realizers)?;
    let residual = residual_pairs(p, dec, &fam)?;
    let witness = complete_realizer(p, &fam, &residual)?;
    Ok(UpperBound { bound: witness.len(), d: fam.d, block_dims, residual, witness })
}
