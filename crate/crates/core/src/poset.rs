//! Finite posets stored as dense strict-order matrices with bitset rows.
//!
//! Elements are named by strings at the boundary and addressed by dense
//! indices `0..n` everywhere else. Every constructor closes the input
//! relation transitively and rejects anything that is not a strict order.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::PosetError;

/// How a relation list given to [`Poset::from_relations`] should be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    /// The pairs are cover pairs (a Hasse diagram).
    Cover,
    /// The pairs are arbitrary comparabilities; they need not be closed.
    Order,
}

/// An ordered pair of distinct, incomparable elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IncPair {
    pub x: usize,
    pub y: usize,
}

impl IncPair {
    pub fn new(x: usize, y: usize) -> Self {
        IncPair { x, y }
    }

    pub fn flipped(self) -> Self {
        IncPair { x: self.y, y: self.x }
    }
}

impl From<(usize, usize)> for IncPair {
    fn from((x, y): (usize, usize)) -> Self {
        IncPair { x, y }
    }
}

#[derive(Clone)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    /// `up[a]` holds every `b` with `a < b`.
    up: Vec<FixedBitSet>,
    /// `down[b]` holds every `a` with `a < b`.
    down: Vec<FixedBitSet>,
    /// Upper covers of each element, ascending.
    upper_covers: Vec<Vec<usize>>,
}

impl Poset {
    /// Builds a poset from named elements and named pairs, closing the
    /// relation transitively.
    pub fn from_relations<S, T>(
        elements: &[S],
        relations: &[(T, T)],
        kind: RelationKind,
    ) -> Result<Poset, PosetError>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(name.clone()));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| PosetError::UnknownElement(s.to_string()))
        };
        let mut pairs = Vec::with_capacity(relations.len());
        for (a, b) in relations {
            pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        // Both kinds close the same way; the distinction only matters to
        // callers that serialize the relation back out.
        let _ = kind;
        Self::build(names, index, &pairs)
    }

    /// Builds a poset on `0..n` from index pairs. Elements are named by
    /// their decimal index.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Poset, PosetError> {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Self::from_named_pairs(names, pairs)
    }

    /// Builds a poset from element names and index pairs.
    pub fn from_named_pairs(
        names: Vec<String>,
        pairs: &[(usize, usize)],
    ) -> Result<Poset, PosetError> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(name.clone()));
            }
        }
        for &(a, b) in pairs {
            for v in [a, b] {
                if v >= names.len() {
                    return Err(PosetError::UnknownIndex(v));
                }
            }
        }
        Self::build(names, index, pairs)
    }

    fn build(
        names: Vec<String>,
        index: HashMap<String, usize>,
        pairs: &[(usize, usize)],
    ) -> Result<Poset, PosetError> {
        let n = names.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &(a, b) in pairs {
            if a == b {
                return Err(PosetError::Cycle(names[a].clone()));
            }
            up[a].insert(b);
        }
        // Warshall over bitset rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        if let Some(a) = (0..n).find(|&a| up[a].contains(a)) {
            return Err(PosetError::Cycle(names[a].clone()));
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in up.iter().enumerate() {
            for b in row.ones() {
                down[b].insert(a);
            }
        }
        let upper_covers = (0..n)
            .map(|a| {
                up[a]
                    .ones()
                    .filter(|&b| up[a].intersection(&down[b]).next().is_none())
                    .collect()
            })
            .collect();
        Ok(Poset {
            names,
            index,
            up,
            down,
            upper_covers,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// `a < b`.
    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    /// `a <= b`.
    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.up[a].contains(b)
    }

    #[inline]
    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.lt(b, a)
    }

    #[inline]
    pub fn incomparable(&self, a: usize, b: usize) -> bool {
        !self.comparable(a, b)
    }

    /// Strict up-set of `a`.
    pub fn up_set(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    /// Strict down-set of `a`.
    pub fn down_set(&self, a: usize) -> &FixedBitSet {
        &self.down[a]
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper_covers[a]
    }

    /// Number of strict comparabilities `a < b`.
    pub fn relation_count(&self) -> usize {
        self.up.iter().map(|r| r.count_ones(..)).sum()
    }

    /// All strict comparabilities `(a, b)` with `a < b`, row-major.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.ones().map(move |b| (a, b)))
            .collect()
    }

    /// Pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn cover_relation(&self) -> Vec<(usize, usize)> {
        self.upper_covers
            .iter()
            .enumerate()
            .flat_map(|(a, cs)| cs.iter().map(move |&b| (a, b)))
            .collect()
    }

    /// Every ordered incomparable pair, row-major.
    pub fn incomparable_pairs(&self) -> Vec<IncPair> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x != y && self.incomparable(x, y) {
                    out.push(IncPair { x, y });
                }
            }
        }
        out
    }

    pub fn is_chain(&self) -> bool {
        let n = self.len();
        2 * self.relation_count() == n * n.saturating_sub(1)
    }

    /// Restriction of the order to `subset`, keeping element names. The
    /// new poset indexes elements in the order they appear in `subset`.
    pub fn subposet(&self, subset: &[usize]) -> Result<Poset, PosetError> {
        let mut seen = FixedBitSet::with_capacity(self.len());
        for &v in subset {
            if v >= self.len() {
                return Err(PosetError::UnknownIndex(v));
            }
            if seen.put(v) {
                return Err(PosetError::DuplicateElement(self.names[v].clone()));
            }
        }
        let names = subset.iter().map(|&v| self.names[v].clone()).collect();
        let mut pairs = Vec::new();
        for (i, &a) in subset.iter().enumerate() {
            for (j, &b) in subset.iter().enumerate() {
                if self.lt(a, b) {
                    pairs.push((i, j));
                }
            }
        }
        Poset::from_named_pairs(names, &pairs)
    }

    /// True iff no element outside `subset` lies strictly between two
    /// elements inside it.
    pub fn is_convex(&self, subset: &[usize]) -> bool {
        let mut inside = FixedBitSet::with_capacity(self.len());
        for &v in subset {
            inside.insert(v);
        }
        subset.iter().all(|&x| {
            self.up[x].ones().filter(|&y| !inside.contains(y)).all(|y| {
                // y is above x and outside; nothing above y may be inside.
                self.up[y].intersection(&inside).next().is_none()
            })
        })
    }

    /// Whether `order` is a permutation of the elements compatible with `<`.
    pub fn is_linear_extension(&self, order: &[usize]) -> bool {
        match positions(self.len(), order) {
            Some(pos) => self
                .up
                .iter()
                .enumerate()
                .all(|(a, row)| row.ones().all(|b| pos[a] < pos[b])),
            None => false,
        }
    }

    /// Some linear extension, preferring lower indices first.
    pub fn a_linear_extension(&self) -> LinearExtension {
        crate::reversibility::reverse_extension(self, &Default::default())
            .expect("the empty candidate set is always reversible")
    }

    /// Enumerates every linear extension. Only sensible for small posets.
    pub fn linear_extensions(&self) -> Vec<LinearExtension> {
        let n = self.len();
        let mut out = Vec::new();
        let mut indeg: Vec<usize> = (0..n).map(|b| self.down[b].count_ones(..)).collect();
        let mut prefix = Vec::with_capacity(n);
        let mut used = vec![false; n];
        self.extend_all(&mut indeg, &mut used, &mut prefix, &mut out);
        out
    }

    fn extend_all(
        &self,
        indeg: &mut [usize],
        used: &mut [bool],
        prefix: &mut Vec<usize>,
        out: &mut Vec<LinearExtension>,
    ) {
        let n = self.len();
        if prefix.len() == n {
            out.push(LinearExtension(prefix.clone()));
            return;
        }
        for v in 0..n {
            if used[v] || indeg[v] != 0 {
                continue;
            }
            used[v] = true;
            prefix.push(v);
            for w in self.up[v].ones() {
                indeg[w] -= 1;
            }
            self.extend_all(indeg, used, prefix, out);
            for w in self.up[v].ones() {
                indeg[w] += 1;
            }
            prefix.pop();
            used[v] = false;
        }
    }
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.up == other.up
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<(&str, &str)> = self
            .cover_relation()
            .into_iter()
            .map(|(a, b)| (self.name(a), self.name(b)))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.names)
            .field("covers", &rels)
            .finish()
    }
}

/// Inverse permutation of `order` over `0..n`, or `None` if `order` is not
/// a permutation of `0..n`.
pub fn positions(n: usize, order: &[usize]) -> Option<Vec<usize>> {
    if order.len() != n {
        return None;
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return None;
        }
        pos[v] = i;
    }
    Some(pos)
}

/// A total order of the ground set, listed from bottom to top.
///
/// The wrapper does not enforce compatibility with any particular poset;
/// [`verify_realizer`] and [`Poset::is_linear_extension`] check that.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearExtension(pub Vec<usize>);

impl LinearExtension {
    pub fn order(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Position of each element; panics if the order is not a permutation
    /// of `0..len`.
    pub fn positions(&self) -> Vec<usize> {
        positions(self.0.len(), &self.0).expect("linear extension is not a permutation")
    }

    /// The order restricted to the elements of `subset`, kept in this
    /// extension's relative order.
    pub fn restrict(&self, subset: &FixedBitSet) -> Vec<usize> {
        self.0.iter().copied().filter(|&v| subset.contains(v)).collect()
    }
}

impl From<Vec<usize>> for LinearExtension {
    fn from(v: Vec<usize>) -> Self {
        LinearExtension(v)
    }
}

/// A non-empty family of linear extensions; repetition allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realizer {
    extensions: Vec<LinearExtension>,
}

impl Realizer {
    pub fn new(extensions: Vec<LinearExtension>) -> Result<Realizer, PosetError> {
        if extensions.is_empty() {
            return Err(PosetError::EmptyRealizer);
        }
        Ok(Realizer { extensions })
    }

    pub fn extensions(&self) -> &[LinearExtension] {
        &self.extensions
    }

    pub fn len(&self) -> usize {
        self.extensions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extensions.is_empty()
    }

    pub fn into_extensions(self) -> Vec<LinearExtension> {
        self.extensions
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Counterexample {
    /// `x < y` in the poset but extension `extension` puts `y` first.
    BrokenComparability { x: usize, y: usize, extension: usize },
    /// `x` and `y` are incomparable but no extension puts `y` before `x`.
    NotReversed { x: usize, y: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Counterexample),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Checks that the intersection of the extensions is exactly the order of
/// `p`. Comparabilities are checked first, extension by extension; then
/// incomparable pairs in row-major order.
pub fn verify_realizer(p: &Poset, r: &Realizer) -> Result<Verdict, PosetError> {
    let n = p.len();
    let mut all_pos = Vec::with_capacity(r.len());
    for (i, ext) in r.extensions().iter().enumerate() {
        let pos = positions(n, ext.order()).ok_or(PosetError::ExtensionMismatch {
            extension: i,
            expected: n,
            found: ext.len(),
        })?;
        all_pos.push(pos);
    }
    for (i, pos) in all_pos.iter().enumerate() {
        for (x, y) in p.relations() {
            if pos[y] < pos[x] {
                return Ok(Verdict::Invalid(Counterexample::BrokenComparability {
                    x,
                    y,
                    extension: i,
                }));
            }
        }
    }
    for IncPair { x, y } in p.incomparable_pairs() {
        if !all_pos.iter().any(|pos| pos[y] < pos[x]) {
            return Ok(Verdict::Invalid(Counterexample::NotReversed { x, y }));
        }
    }
    Ok(Verdict::Valid)
}
