#![allow(dead_code)]

use posetdim::blocks::{cover_graph, is_connected, BlockDecomposition};
use posetdim::Poset;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn random_poset(rng: &mut StdRng, n: usize, density: f64) -> Poset {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_pairs(n, &pairs).unwrap()
}

pub fn random_tree_poset(rng: &mut StdRng, n: usize) -> Poset {
    let pairs: Vec<(usize, usize)> = (1..n)
        .map(|v| {
            let u = rng.random_range(0..v);
            if rng.random_bool(0.5) { (u, v) } else { (v, u) }
        })
        .collect();
    Poset::from_pairs(n, &pairs).unwrap()
}

/// Connected pieces glued to the structure built so far at one element
/// each. A piece is one of `fixed` with probability 1/4 (when given), and
/// otherwise random with `2..=max_piece` elements.
pub fn random_glued_poset(rng: &mut StdRng, pieces: usize, max_piece: usize, fixed: &[Poset]) -> Poset {
    let mut n = 1;
    let mut pairs = Vec::new();
    for _ in 0..pieces {
        let piece = if !fixed.is_empty() && rng.random_bool(0.25) {
            fixed[rng.random_range(0..fixed.len())].clone()
        } else {
            let size = rng.random_range(2..=max_piece);
            let density = rng.random_range(0.3..0.8);
            loop {
                let q = random_poset(rng, size, density);
                if is_connected(&cover_graph(&q)) {
                    break q;
                }
            }
        };
        let size = piece.len();
        let anchor = rng.random_range(0..n);
        let glued = rng.random_range(0..size);
        let map = |v: usize| match v.cmp(&glued) {
            std::cmp::Ordering::Equal => anchor,
            std::cmp::Ordering::Less => n + v,
            std::cmp::Ordering::Greater => n + v - 1,
        };
        pairs.extend(piece.cover_relation().into_iter().map(|(a, b)| (map(a), map(b))));
        n += size - 1;
    }
    Poset::from_pairs(n, &pairs).unwrap()
}

/// Random first block, then random blocks among those touching the ones
/// already placed.
pub fn random_labeling(rng: &mut StdRng, dec: &BlockDecomposition) -> BlockDecomposition {
    let t = dec.len();
    let mut placed = vec![false; t];
    let mut covered = vec![false; dec.vertex_count()];
    let mut order = Vec::with_capacity(t);
    while order.len() < t {
        let frontier: Vec<usize> = (0..t)
            .filter(|&b| !placed[b] && (order.is_empty() || dec.block(b).iter().any(|&v| covered[v])))
            .collect();
        let b = frontier[rng.random_range(0..frontier.len())];
        placed[b] = true;
        order.push(b);
        dec.block(b).iter().for_each(|&v| covered[v] = true);
    }
    dec.with_order(&order).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
