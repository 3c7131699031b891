use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::poset::Poset;

/// Closure of a random DAG on `0..n` where each `i < j` is related with
/// probability `density`.
pub fn random_poset(seed: u64, n: usize, density: f64) -> Poset {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_pairs(n, &pairs).expect("forward edges cannot close a cycle")
}

/// Random poset whose cover graph is a tree on `n` vertices.
pub fn random_tree_poset(seed: u64, n: usize) -> Poset {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        if rng.random_bool(0.5) {
            pairs.push((u, v));
        } else {
            pairs.push((v, u));
        }
    }
    Poset::from_pairs(n, &pairs).expect("tree orientations are acyclic")
}

/// Random connected pieces of `2..=max_piece` elements, each glued onto one
/// element of what was built so far. Blocks stay inside pieces, so block
/// dimensions are bounded by the dimension of the pieces.
pub fn random_glued_poset(seed: u64, pieces: usize, max_piece: usize) -> Poset {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut n = 1;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for _ in 0..pieces {
        let size = rng.random_range(2..=max_piece);
        let piece = loop {
            let q = random_poset(rng.random(), size, 0.5);
            if crate::blocks::is_connected(&crate::blocks::cover_graph(&q)) {
                break q;
            }
        };
        let anchor = rng.random_range(0..n);
        let glued = rng.random_range(0..size);
        let map = |v: usize| {
            if v == glued {
                anchor
            } else if v < glued {
                n + v
            } else {
                n + v - 1
            }
        };
        pairs.extend(piece.cover_relation().into_iter().map(|(a, b)| (map(a), map(b))));
        n += size - 1;
    }
    Poset::from_pairs(n, &pairs).expect("gluing at a single element keeps the order acyclic")
}
