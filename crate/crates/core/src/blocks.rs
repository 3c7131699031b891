//! Cover graphs, their blocks, and tails relative to a block labeling.
//!
//! Blocks are listed as `B_0, B_1, ...` such that each block after the first
//! meets the union of the earlier ones in exactly one vertex, its root.
//! Every vertex then has a home block (the first block containing it), and
//! the roots link each block to an earlier one, which turns the block-cut
//! tree into a tree rooted at `B_0` with indices increasing away from it.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::BlockError;
use crate::poset::Poset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverGraph {
    adj: Vec<Vec<usize>>,
}

impl CoverGraph {
    pub fn new(p: &Poset) -> Self {
        let mut adj = vec![Vec::new(); p.len()];
        for (a, b) in p.cover_relation() {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        CoverGraph { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Undirected edges `(a, b)` with `a < b`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }
}

pub fn cover_graph(p: &Poset) -> CoverGraph {
    CoverGraph::new(p)
}

/// Vertex sets of the connected components, each ascending, ordered by
/// smallest vertex.
pub fn component_sets(g: &CoverGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &CoverGraph) -> bool {
    component_sets(g).len() <= 1
}

/// The components of `p` as convex subposets.
pub fn components(p: &Poset) -> Vec<Poset> {
    component_sets(&cover_graph(p))
        .iter()
        .map(|c| p.subposet(c).expect("component vertices are valid"))
        .collect()
}

/// Vertex sets of the biconnected components, each ascending. Bridges come
/// out as two-vertex blocks and isolated vertices as singletons. Lowpoint
/// DFS with an explicit stack.
pub fn biconnected_components(g: &CoverGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    // (vertex, parent, next neighbour offset)
    let mut frames: Vec<(usize, usize, usize)> = Vec::new();
    let mut mark = vec![false; n];

    for s in 0..n {
        if disc[s] != usize::MAX {
            continue;
        }
        disc[s] = timer;
        low[s] = timer;
        timer += 1;
        if g.neighbors(s).is_empty() {
            out.push(vec![s]);
            continue;
        }
        frames.push((s, usize::MAX, 0));
        while let Some(frame) = frames.last_mut() {
            let (v, parent, next) = *frame;
            if next < g.neighbors(v).len() {
                frame.2 += 1;
                let w = g.neighbors(v)[next];
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    frames.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            frames.pop();
            if parent == usize::MAX {
                continue;
            }
            low[parent] = low[parent].min(low[v]);
            if low[v] >= disc[parent] {
                let mut comp = Vec::new();
                while let Some((a, b)) = edge_stack.pop() {
                    for x in [a, b] {
                        if !mark[x] {
                            mark[x] = true;
                            comp.push(x);
                        }
                    }
                    if (a, b) == (parent, v) {
                        break;
                    }
                }
                for &x in &comp {
                    mark[x] = false;
                }
                comp.sort_unstable();
                out.push(comp);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockCutNode {
    Block(usize),
    Cut(usize),
}

/// The bipartite incidence tree of blocks and cut vertices.
#[derive(Clone, Debug)]
pub struct BlockCutTree {
    pub nodes: Vec<BlockCutNode>,
    pub adj: Vec<Vec<usize>>,
}

impl BlockCutTree {
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }
}

/// The set `T(u, B_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tail {
    pub anchor: usize,
    pub block: usize,
    /// Ascending.
    pub members: Vec<usize>,
}

/// Where every path between two vertices crosses the lowest-indexed block
/// it must use at least two vertices of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub block: usize,
    /// First vertex of the block met on the way from the first endpoint.
    pub entry: usize,
    /// Last vertex of the block met before the second endpoint.
    pub exit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Each block's vertices, ascending.
    blocks: Vec<Vec<usize>>,
    roots: Vec<Option<usize>>,
    cut_vertices: Vec<usize>,
    /// Index of the first block containing each vertex.
    home: Vec<usize>,
    /// Blocks containing each vertex, ascending.
    vertex_blocks: Vec<Vec<usize>>,
    /// Blocks rooted at each vertex, ascending.
    rooted_at: Vec<Vec<usize>>,
}

/// Blocks of the cover graph of `p`, labeled breadth-first over the
/// block-cut tree. The first block is the lexicographically smallest block
/// containing vertex 0; each later layer is sorted by vertex list.
pub fn block_decomposition(p: &Poset) -> Result<BlockDecomposition, BlockError> {
    let g = cover_graph(p);
    if !is_connected(&g) {
        return Err(BlockError::Disconnected);
    }
    let n = p.len();
    let mut raw = biconnected_components(&g);
    raw.sort();
    let mut vertex_blocks = vec![Vec::new(); n];
    for (b, verts) in raw.iter().enumerate() {
        for &v in verts {
            vertex_blocks[v].push(b);
        }
    }
    let mut order = Vec::with_capacity(raw.len());
    if !raw.is_empty() {
        // `raw` is sorted, so the first block holding vertex 0 is the
        // smallest one.
        let mut placed = vec![false; raw.len()];
        let mut layer = vec![vertex_blocks[0][0]];
        placed[layer[0]] = true;
        while !layer.is_empty() {
            order.extend_from_slice(&layer);
            let mut next = Vec::new();
            for &b in &layer {
                for &v in &raw[b] {
                    for &c in &vertex_blocks[v] {
                        if !placed[c] {
                            placed[c] = true;
                            next.push(c);
                        }
                    }
                }
            }
            next.sort_by(|&a, &b| raw[a].cmp(&raw[b]));
            layer = next;
        }
    }
    let blocks: Vec<Vec<usize>> = order.iter().map(|&b| raw[b].clone()).collect();
    let dec = BlockDecomposition::from_ordered_blocks(n, blocks)?;
    for (i, b) in dec.blocks.iter().enumerate() {
        if !p.is_convex(b) {
            return Err(BlockError::NotConvex(i));
        }
    }
    Ok(dec)
}

impl BlockDecomposition {
    /// Validates the labeling property and derives roots, homes and cut
    /// vertices from an ordered list of blocks.
    pub fn from_ordered_blocks(
        n: usize,
        mut blocks: Vec<Vec<usize>>,
    ) -> Result<Self, BlockError> {
        for b in &mut blocks {
            b.sort_unstable();
        }
        let mut home = vec![usize::MAX; n];
        let mut roots = Vec::with_capacity(blocks.len());
        let mut vertex_blocks = vec![Vec::new(); n];
        let mut rooted_at = vec![Vec::new(); n];
        for (i, b) in blocks.iter().enumerate() {
            let old: Vec<usize> = b.iter().copied().filter(|&v| home[v] != usize::MAX).collect();
            match (i, old.as_slice()) {
                (0, []) => roots.push(None),
                (i, [r]) if i > 0 => {
                    roots.push(Some(*r));
                    rooted_at[*r].push(i);
                }
                _ => return Err(BlockError::BadLabeling(i)),
            }
            for &v in b {
                if home[v] == usize::MAX {
                    home[v] = i;
                }
                vertex_blocks[v].push(i);
            }
        }
        if home.contains(&usize::MAX) {
            return Err(BlockError::BadLabeling(blocks.len()));
        }
        let cut_vertices = (0..n).filter(|&v| vertex_blocks[v].len() > 1).collect();
        Ok(BlockDecomposition {
            blocks,
            roots,
            cut_vertices,
            home,
            vertex_blocks,
            rooted_at,
        })
    }

    /// The same blocks relabeled so that new block `k` is old block
    /// `order[k]`.
    pub fn with_order(&self, order: &[usize]) -> Result<Self, BlockError> {
        let mut seen = vec![false; self.blocks.len()];
        if order.len() != self.blocks.len() {
            return Err(BlockError::BadLabeling(order.len().min(self.blocks.len())));
        }
        for (k, &b) in order.iter().enumerate() {
            if b >= seen.len() || std::mem::replace(&mut seen[b], true) {
                return Err(BlockError::BadLabeling(k));
            }
        }
        let blocks = order.iter().map(|&b| self.blocks[b].clone()).collect();
        Self::from_ordered_blocks(self.home.len(), blocks)
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.home.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    /// Root of block `i`; `None` for the first block.
    pub fn root(&self, i: usize) -> Option<usize> {
        self.roots[i]
    }

    pub fn cut_vertices(&self) -> &[usize] {
        &self.cut_vertices
    }

    pub fn is_cut_vertex(&self, v: usize) -> bool {
        self.vertex_blocks[v].len() > 1
    }

    pub fn home(&self, v: usize) -> usize {
        self.home[v]
    }

    pub fn blocks_of(&self, v: usize) -> &[usize] {
        &self.vertex_blocks[v]
    }

    pub fn contains(&self, i: usize, v: usize) -> bool {
        self.blocks[i].binary_search(&v).is_ok()
    }

    pub fn block_set(&self, i: usize) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.vertex_count());
        for &v in &self.blocks[i] {
            s.insert(v);
        }
        s
    }

    pub fn block_cut_tree(&self) -> BlockCutTree {
        let t = self.blocks.len();
        let mut nodes: Vec<BlockCutNode> = (0..t).map(BlockCutNode::Block).collect();
        let mut adj = vec![Vec::new(); t];
        for &c in &self.cut_vertices {
            let id = nodes.len();
            nodes.push(BlockCutNode::Cut(c));
            adj.push(self.vertex_blocks[c].clone());
            for &b in &self.vertex_blocks[c] {
                adj[b].push(id);
            }
        }
        BlockCutTree { nodes, adj }
    }

    /// Membership in `T(u, B_i)` by climbing home blocks from `v`: `v` is in
    /// the tail iff the climb reaches `u` as the root of a block indexed
    /// above `i` before dropping to index `i` or below.
    pub fn in_tail(&self, v: usize, u: usize, i: usize) -> bool {
        let mut cur = v;
        loop {
            if cur == u {
                return true;
            }
            let k = self.home[cur];
            if k <= i {
                return false;
            }
            cur = self.roots[k].expect("only the first block lacks a root");
        }
    }

    /// `T(u, B_i)`: `u` together with everything glued on at `u`, directly
    /// or transitively, by blocks after `B_i`.
    pub fn tail(&self, u: usize, i: usize) -> Result<Tail, BlockError> {
        if i >= self.blocks.len() || !self.contains(i, u) {
            return Err(BlockError::NotInBlock { element: u, block: i });
        }
        let mut members = vec![u];
        let mut stack: Vec<usize> = self.rooted_at[u].iter().copied().filter(|&k| k > i).collect();
        while let Some(k) = stack.pop() {
            for &w in &self.blocks[k] {
                if w == u || self.roots[k] == Some(w) {
                    continue;
                }
                members.push(w);
                stack.extend_from_slice(&self.rooted_at[w]);
            }
        }
        members.sort_unstable();
        Ok(Tail { anchor: u, block: i, members })
    }

    pub fn tail_set(&self, u: usize, i: usize) -> Result<FixedBitSet, BlockError> {
        let tail = self.tail(u, i)?;
        let mut s = FixedBitSet::with_capacity(self.vertex_count());
        for v in tail.members {
            s.insert(v);
        }
        Ok(s)
    }

    /// Home blocks met climbing from `v` towards `B_0`, each with the vertex
    /// through which the climb entered it.
    fn climb(&self, v: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut cur = v;
        loop {
            let b = self.home[cur];
            out.push((b, cur));
            match self.roots[b] {
                Some(r) => cur = r,
                None => return out,
            }
        }
    }

    /// The lowest-indexed block that every `x`-`y` path meets in at least
    /// two vertices, with the entry and exit vertices of such paths. `None`
    /// when `x == y`.
    pub fn crossing(&self, x: usize, y: usize) -> Option<Crossing> {
        if x == y {
            return None;
        }
        let cx = self.climb(x);
        let cy = self.climb(y);
        let y_at: HashMap<usize, usize> = cy.iter().enumerate().map(|(k, &(b, _))| (b, k)).collect();
        let (ix, iy) = cx
            .iter()
            .enumerate()
            .find_map(|(k, (b, _))| y_at.get(b).map(|&l| (k, l)))
            .expect("climbs meet at the first block");
        let (top, ex) = cx[ix];
        let ey = cy[iy].1;
        if ex != ey {
            return Some(Crossing { block: top, entry: ex, exit: ey });
        }
        // Both sides hang off the same cut vertex of `top`; the path never
        // enters `top`, and the lowest block is just below it on one side.
        let below_x = ix.checked_sub(1).map(|k| cx[k]);
        let below_y = iy.checked_sub(1).map(|k| cy[k]);
        match (below_x, below_y) {
            (Some((bx, entry)), Some((by, _))) if bx < by => Some(Crossing {
                block: bx,
                entry,
                exit: ex,
            }),
            (Some((bx, entry)), None) => Some(Crossing { block: bx, entry, exit: ex }),
            (_, Some((by, exit))) => Some(Crossing { block: by, entry: ey, exit }),
            (None, None) => unreachable!("distinct vertices cannot both be the shared cut vertex"),
        }
    }
}

/// `T(u, B_i)` for the decomposition of `p`.
pub fn tail(dec: &BlockDecomposition, u: usize, i: usize) -> Result<Tail, BlockError> {
    dec.tail(u, i)
}
