//! Exact order dimension by covering the critical pairs with reversible
//! classes.
//!
//! Level `d` asks whether the critical pairs split into `d` classes that can
//! each be reversed by one linear extension. Each class keeps the transitive
//! closure of the order plus its reversed pairs as bit rows; a pair fits a
//! class unless the closure already forces `x` below `y`, and a pair whose
//! reversal the closure already forces is covered for free. Branching is
//! fail-first over the remaining pairs, and only one unused class is ever
//! tried since unused classes are interchangeable.

use std::thread;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::error::SolverError;
use crate::poset::{verify_realizer, IncPair, LinearExtension, Poset, Realizer};
use crate::reversibility::{is_reversible, reverse_extension, ReversibleCandidate};

pub const DEFAULT_LEVEL_TIMEOUT: Duration = Duration::from_secs(300);

/// Largest poset [`brute_force_dimension`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 8;

#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Highest level tried before giving up with `ExceedsMax`.
    pub max_dim: usize,
    /// Budget per decision level; `None` means unbounded.
    pub timeout: Option<Duration>,
    /// Number of levels probed concurrently.
    pub jobs: usize,
    /// Shuffles the branching order of critical pairs when set.
    pub shuffle_seed: Option<u64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_dim: 16,
            timeout: Some(DEFAULT_LEVEL_TIMEOUT),
            jobs: 1,
            shuffle_seed: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct DimResult {
    pub dim: usize,
    pub witness: Realizer,
    pub stats: SearchStats,
}

#[derive(Clone, Debug)]
pub enum Decision {
    Yes(Realizer),
    No,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }
}

/// Incomparable pairs `(x, y)` with `D(x) ⊆ D(y)` and `U(y) ⊆ U(x)`.
/// Reversing all of them forces every incomparable pair to be reversed.
pub fn critical_pairs(p: &Poset) -> Vec<IncPair> {
    p.incomparable_pairs()
        .into_iter()
        .filter(|q| p.down_set(q.x).is_subset(p.down_set(q.y)) && p.up_set(q.y).is_subset(p.up_set(q.x)))
        .collect()
}

/// The least `d` for which `p` has a realizer of size `d`.
pub fn exact_dimension(p: &Poset, config: &SolverConfig) -> Result<DimResult, SolverError> {
    let start = Instant::now();
    let pairs = search_order(critical_pairs(p), config.shuffle_seed);
    let mut nodes = 0;
    if pairs.is_empty() {
        if config.max_dim < 1 {
            return Err(SolverError::ExceedsMax(config.max_dim));
        }
        let witness = Realizer::new(vec![p.a_linear_extension()]).expect("one extension");
        return Ok(DimResult {
            dim: 1,
            witness,
            stats: SearchStats { nodes: 0, elapsed: start.elapsed() },
        });
    }
    let jobs = config.jobs.max(1);
    let mut level = 2;
    while level <= config.max_dim {
        let hi = (level + jobs).min(config.max_dim + 1);
        let outcomes: Vec<(usize, Result<Option<Realizer>, SolverError>, u64)> = if hi - level == 1 {
            let (res, n) = decide(p, &pairs, level, config.timeout);
            vec![(level, res, n)]
        } else {
            thread::scope(|s| {
                let handles: Vec<_> = (level..hi)
                    .map(|d| {
                        let pairs = &pairs;
                        s.spawn(move || {
                            let (res, n) = decide(p, pairs, d, config.timeout);
                            (d, res, n)
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("solver thread panicked")).collect()
            })
        };
        for (d, res, n) in outcomes {
            nodes += n;
            match res? {
                Some(witness) => {
                    return Ok(DimResult {
                        dim: d,
                        witness,
                        stats: SearchStats { nodes, elapsed: start.elapsed() },
                    })
                }
                None => continue,
            }
        }
        level = hi;
    }
    Err(SolverError::ExceedsMax(config.max_dim))
}

/// Whether `p` has a realizer of size `d`.
pub fn is_dim_at_most(p: &Poset, d: usize, timeout: Option<Duration>) -> Result<Decision, SolverError> {
    is_dim_at_most_ordered(p, d, timeout, None)
}

/// [`is_dim_at_most`] with the critical pairs shuffled by `seed` before the
/// search; the answer must not depend on it.
pub fn is_dim_at_most_ordered(
    p: &Poset,
    d: usize,
    timeout: Option<Duration>,
    seed: Option<u64>,
) -> Result<Decision, SolverError> {
    assert!(d >= 1, "dimension levels start at 1");
    let pairs = search_order(critical_pairs(p), seed);
    let (res, _) = decide(p, &pairs, d, timeout);
    Ok(match res? {
        Some(r) => Decision::Yes(r),
        None => Decision::No,
    })
}

fn search_order(mut pairs: Vec<IncPair>, seed: Option<u64>) -> Vec<IncPair> {
    if let Some(seed) = seed {
        pairs.shuffle(&mut StdRng::seed_from_u64(seed));
    }
    pairs
}

/// Searches below this many pairs skip the prefix passes.
const PREFIX_MIN_PAIRS: usize = 64;

enum Outcome {
    Found(Vec<usize>),
    Infeasible,
    TimedOut,
}

fn run_search(p: &Poset, pairs: &[IncPair], d: usize, deadline: Option<Instant>) -> (Outcome, u64) {
    let mut search = Search::new(p, pairs, d, deadline);
    let found = search.solve();
    let outcome = if search.timed_out {
        Outcome::TimedOut
    } else if found {
        Outcome::Found(search.assign.iter().map(|a| a.expect("complete assignment")).collect())
    } else {
        Outcome::Infeasible
    };
    (outcome, search.nodes)
}

/// Decides level `d`. Large instances first try the pairs inside growing
/// prefixes of the elements: covering a subset of the pairs is a
/// relaxation, so failing on a prefix settles the level.
fn decide(
    p: &Poset,
    pairs: &[IncPair],
    d: usize,
    timeout: Option<Duration>,
) -> (Result<Option<Realizer>, SolverError>, u64) {
    if pairs.is_empty() {
        let r = Realizer::new(vec![p.a_linear_extension(); d]).expect("d >= 1");
        return (Ok(Some(r)), 0);
    }
    if d == 1 {
        return (Ok(None), 0);
    }
    let deadline = timeout.map(|t| Instant::now() + t);
    let timed_out = || Err(SolverError::Timeout { level: d, budget: timeout.unwrap_or_default(), lower_bound: d });
    let mut nodes = 0;
    if pairs.len() >= PREFIX_MIN_PAIRS {
        let n = p.len();
        let step = (n / 8).max(4);
        let mut last = 0;
        for k in (step..n).step_by(step) {
            let sub: Vec<IncPair> = pairs.iter().copied().filter(|q| q.x.max(q.y) < k).collect();
            if sub.len() == last {
                continue;
            }
            last = sub.len();
            let (outcome, used) = run_search(p, &sub, d, deadline);
            nodes += used;
            match outcome {
                Outcome::Found(_) => {}
                Outcome::Infeasible => return (Ok(None), nodes),
                Outcome::TimedOut => return (timed_out(), nodes),
            }
        }
    }
    let (outcome, used) = run_search(p, pairs, d, deadline);
    nodes += used;
    let assign = match outcome {
        Outcome::Found(a) => a,
        Outcome::Infeasible => return (Ok(None), nodes),
        Outcome::TimedOut => return (timed_out(), nodes),
    };
    let mut classes = vec![Vec::new(); d];
    for (i, &k) in assign.iter().enumerate() {
        classes[k].push(pairs[i]);
    }
    let extensions: Vec<LinearExtension> = classes
        .into_iter()
        .map(|c| {
            let cand = ReversibleCandidate::new(p, c).expect("critical pairs are incomparable");
            reverse_extension(p, &cand).expect("search classes are reversible")
        })
        .collect();
    let r = Realizer::new(extensions).expect("d >= 1");
    assert!(
        verify_realizer(p, &r).expect("extensions are permutations").is_valid(),
        "reversing every critical pair must give a realizer"
    );
    (Ok(Some(r)), nodes)
}

struct Search<'a> {
    words: usize,
    pairs: &'a [IncPair],
    d: usize,
    used: usize,
    /// Per class, `n * words` words: row `a` of `up` is `{b : a < b}`.
    up: Vec<Vec<u64>>,
    down: Vec<Vec<u64>>,
    assign: Vec<Option<usize>>,
    /// Saved rows: (class, is_up, row, offset into `saved`).
    trail: Vec<(usize, bool, usize, usize)>,
    saved: Vec<u64>,
    scratch_up: Vec<u64>,
    scratch_down: Vec<u64>,
    nodes: u64,
    deadline: Option<Instant>,
    timed_out: bool,
}

#[inline]
fn has(row: &[u64], b: usize) -> bool {
    row[b / 64] >> (b % 64) & 1 == 1
}

#[inline]
fn set(row: &mut [u64], b: usize) {
    row[b / 64] |= 1 << (b % 64);
}

fn ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &bits)| {
        let mut bits = bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let t = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(w * 64 + t)
        })
    })
}

impl<'a> Search<'a> {
    fn new(p: &Poset, pairs: &'a [IncPair], d: usize, deadline: Option<Instant>) -> Self {
        let n = p.len();
        let words = n.div_ceil(64).max(1);
        let mut up = vec![0u64; n * words];
        let mut down = vec![0u64; n * words];
        for (a, b) in p.relations() {
            set(&mut up[a * words..(a + 1) * words], b);
            set(&mut down[b * words..(b + 1) * words], a);
        }
        Search {
            words,
            pairs,
            d,
            used: 0,
            up: vec![up; d],
            down: vec![down; d],
            assign: vec![None; pairs.len()],
            trail: Vec::new(),
            saved: Vec::new(),
            scratch_up: vec![0; words],
            scratch_down: vec![0; words],
            nodes: 0,
            deadline,
            timed_out: false,
        }
    }

    #[inline]
    fn row(&self, k: usize, is_up: bool, a: usize) -> &[u64] {
        let m = if is_up { &self.up[k] } else { &self.down[k] };
        &m[a * self.words..(a + 1) * self.words]
    }

    /// `x` is forced below `y` in class `k`, so `(x, y)` cannot go there.
    #[inline]
    fn blocked(&self, k: usize, q: IncPair) -> bool {
        has(self.row(k, true, q.x), q.y)
    }

    /// Class `k` already places `y` below `x`.
    #[inline]
    fn covers(&self, k: usize, q: IncPair) -> bool {
        has(self.row(k, true, q.y), q.x)
    }

    /// Adds the arc `y -> x` to class `k` and closes it.
    fn reverse_in(&mut self, k: usize, q: IncPair) {
        let w = self.words;
        // scratch_up = U(x) + x, scratch_down = D(y) + y
        let ux = self.row(k, true, q.x).to_vec();
        let dy = self.row(k, false, q.y).to_vec();
        self.scratch_up.copy_from_slice(&ux);
        set(&mut self.scratch_up, q.x);
        self.scratch_down.copy_from_slice(&dy);
        set(&mut self.scratch_down, q.y);
        let lows: Vec<usize> = ones(&self.scratch_down).collect();
        let highs: Vec<usize> = ones(&self.scratch_up).collect();
        for a in lows {
            let row = &mut self.up[k][a * w..(a + 1) * w];
            if row.iter().zip(&self.scratch_up).any(|(r, s)| s & !r != 0) {
                self.trail.push((k, true, a, self.saved.len()));
                self.saved.extend_from_slice(row);
                for (r, s) in row.iter_mut().zip(&self.scratch_up) {
                    *r |= s;
                }
            }
        }
        for b in highs {
            let row = &mut self.down[k][b * w..(b + 1) * w];
            if row.iter().zip(&self.scratch_down).any(|(r, s)| s & !r != 0) {
                self.trail.push((k, false, b, self.saved.len()));
                self.saved.extend_from_slice(row);
                for (r, s) in row.iter_mut().zip(&self.scratch_down) {
                    *r |= s;
                }
            }
        }
    }

    fn undo_to(&mut self, mark: usize) {
        let w = self.words;
        while self.trail.len() > mark {
            let (k, is_up, a, off) = self.trail.pop().expect("non-empty");
            let m = if is_up { &mut self.up[k] } else { &mut self.down[k] };
            m[a * w..(a + 1) * w].copy_from_slice(&self.saved[off..off + w]);
            self.saved.truncate(off);
        }
    }

    fn out_of_time(&mut self) -> bool {
        if self.nodes % 1024 == 1 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.timed_out = true;
                }
            }
        }
        self.timed_out
    }

    fn solve(&mut self) -> bool {
        self.nodes += 1;
        if self.out_of_time() {
            return false;
        }
        let fresh = usize::from(self.used < self.d);
        let mut covered_now = Vec::new();
        let mut best: Option<(usize, usize)> = None;
        for i in 0..self.pairs.len() {
            if self.assign[i].is_some() {
                continue;
            }
            let q = self.pairs[i];
            if let Some(k) = (0..self.used).find(|&k| self.covers(k, q)) {
                self.assign[i] = Some(k);
                covered_now.push(i);
                continue;
            }
            let dom = (0..self.used).filter(|&k| !self.blocked(k, q)).count() + fresh;
            if dom == 0 {
                best = None;
                covered_now.push(usize::MAX);
                break;
            }
            if best.is_none_or(|(_, b)| dom < b) {
                best = Some((i, dom));
            }
        }
        let failed = covered_now.last() == Some(&usize::MAX);
        if failed {
            covered_now.pop();
        }
        let found = if failed {
            false
        } else if let Some((i, _)) = best {
            self.branch(i)
        } else {
            true
        };
        if !found {
            for i in covered_now {
                self.assign[i] = None;
            }
        }
        found
    }

    fn branch(&mut self, i: usize) -> bool {
        let q = self.pairs[i];
        let candidates: Vec<usize> = (0..self.used)
            .filter(|&k| !self.blocked(k, q))
            .chain((self.used < self.d).then_some(self.used))
            .collect();
        for k in candidates {
            let mark = self.trail.len();
            let used_before = self.used;
            if k == self.used {
                self.used += 1;
            }
            self.assign[i] = Some(k);
            self.reverse_in(k, q);
            if self.solve() {
                return true;
            }
            self.undo_to(mark);
            self.used = used_before;
            self.assign[i] = None;
            if self.timed_out {
                return false;
            }
        }
        false
    }
}

/// A realizer built first-fit: each critical pair joins the first class
/// that stays reversible. Fast, and an upper bound on the dimension.
pub fn greedy_realizer(p: &Poset) -> Realizer {
    let mut classes: Vec<Vec<IncPair>> = Vec::new();
    for q in critical_pairs(p) {
        let fits = |class: &Vec<IncPair>| {
            let mut trial = class.clone();
            trial.push(q);
            let cand = ReversibleCandidate::new(p, trial).expect("critical pairs are incomparable");
            is_reversible(p, &cand)
        };
        match classes.iter().position(fits) {
            Some(k) => classes[k].push(q),
            None => classes.push(vec![q]),
        }
    }
    let exts = if classes.is_empty() {
        vec![p.a_linear_extension()]
    } else {
        classes
            .into_iter()
            .map(|c| {
                let cand = ReversibleCandidate::new(p, c).expect("critical pairs are incomparable");
                reverse_extension(p, &cand).expect("classes are reversible")
            })
            .collect()
    };
    Realizer::new(exts).expect("at least one extension")
}

/// Smallest `k` such that some `k` linear extensions realize `p`, found by
/// enumerating every linear extension and solving the set cover of the
/// incomparable pairs exactly. Independent of critical pairs and of the
/// class search above.
pub fn brute_force_dimension(p: &Poset) -> Result<usize, SolverError> {
    let n = p.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(SolverError::TooLarge { n, limit: BRUTE_FORCE_LIMIT });
    }
    let inc = p.incomparable_pairs();
    if inc.is_empty() {
        return Ok(1);
    }
    let full: u64 = if inc.len() == 64 { u64::MAX } else { (1 << inc.len()) - 1 };
    let mut masks: Vec<u64> = p
        .linear_extensions()
        .iter()
        .map(|e| {
            let pos = e.positions();
            inc.iter()
                .enumerate()
                .filter(|(_, q)| pos[q.y] < pos[q.x])
                .fold(0u64, |m, (i, _)| m | 1 << i)
        })
        .collect();
    masks.sort_unstable();
    masks.dedup();
    if masks.len() <= 5000 {
        let all = masks.clone();
        masks.retain(|&m| !all.iter().any(|&o| o != m && o & m == m));
    }
    fn cover(masks: &[u64], full: u64, covered: u64, k: usize) -> bool {
        if covered == full {
            return true;
        }
        if k == 0 {
            return false;
        }
        let missing = full & !covered;
        let e = missing.trailing_zeros();
        if k == 1 {
            return masks.iter().any(|&m| m & missing == missing);
        }
        masks
            .iter()
            .filter(|&&m| m >> e & 1 == 1)
            .any(|&m| cover(masks, full, covered | m, k - 1))
    }
    Ok((1..=masks.len())
        .find(|&k| cover(&masks, full, 0, k))
        .expect("all extensions together realize the poset"))
}
