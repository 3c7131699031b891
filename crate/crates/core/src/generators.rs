//! Constructors for the poset families used throughout the crate.
//!
//! Element names are fixed so that serialized output is stable:
//!
//! | family            | names                                             |
//! |-------------------|---------------------------------------------------|
//! | chain             | `0`, `1`, ...                                     |
//! | standard example  | `a1..ad` (minimal), `b1..bd` (maximal)            |
//! | grid              | `g(i,j,...)`, coordinates in `0..n`               |
//! | block grid        | grid names, then `x@g(..)`, `y@g(..)`, `z@g(..)`  |
//! | fig1 left         | `a`, `b1..bn`, `c1..cn`, `d`, `e`                 |
//! | fig1 right        | `a`, `b1..b(n+1)`, `c1..c(n+1)`, `d1..dn`         |
//! | fig3 trees        | `a`, `b1..b4`, `c1`, `c2` / `x1..x4`, `y1..y3`    |
//! | fig4 diamonds     | `x`, then `a_i`, `b_i`, `c_i` for each `i`        |

use crate::error::GeneratorError;
use crate::poset::Poset;

/// Largest ground set a generator will build. Posets are stored as dense
/// matrices, so this bounds memory rather than integer overflow.
pub const ELEMENT_LIMIT: u128 = 20_000;

fn build(names: Vec<String>, covers: &[(usize, usize)]) -> Poset {
    Poset::from_named_pairs(names, covers).expect("generated relations are acyclic")
}

fn at_least(
    family: &'static str,
    param: &'static str,
    value: usize,
    min: usize,
) -> Result<(), GeneratorError> {
    if value < min {
        return Err(GeneratorError::BelowMinimum { family, param, value, min });
    }
    Ok(())
}

fn check_size(family: &'static str, size: u128) -> Result<usize, GeneratorError> {
    if size > ELEMENT_LIMIT {
        return Err(GeneratorError::TooLarge { family, size, limit: ELEMENT_LIMIT });
    }
    Ok(size as usize)
}

/// The chain `0 < 1 < ... < n-1`.
pub fn gen_chain(n: usize) -> Result<Poset, GeneratorError> {
    at_least("chain", "n", n, 1)?;
    check_size("chain", n as u128)?;
    let names = (0..n).map(|i| i.to_string()).collect();
    let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(build(names, &covers))
}

/// `S_d`: `a_i < b_j` exactly when `i != j`.
pub fn gen_standard_example(d: usize) -> Result<Poset, GeneratorError> {
    at_least("standard-example", "d", d, 2)?;
    check_size("standard-example", 2 * d as u128)?;
    let names = (1..=d)
        .map(|i| format!("a{i}"))
        .chain((1..=d).map(|i| format!("b{i}")))
        .collect();
    let mut covers = Vec::with_capacity(d * (d - 1));
    for i in 0..d {
        for j in 0..d {
            if i != j {
                covers.push((i, d + j));
            }
        }
    }
    Ok(build(names, &covers))
}

pub fn grid_name(coords: &[usize]) -> String {
    let parts: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
    format!("g({})", parts.join(","))
}

/// Coordinates of grid point `index`, first coordinate most significant.
fn grid_coords(mut index: usize, n: usize, d: usize) -> Vec<usize> {
    let mut coords = vec![0; d];
    for c in coords.iter_mut().rev() {
        *c = index % n;
        index /= n;
    }
    coords
}

fn grid_size(family: &'static str, n: usize, d: usize, copies: u128) -> Result<usize, GeneratorError> {
    let size = (0..d).try_fold(copies, |acc, _| acc.checked_mul(n as u128)).unwrap_or(u128::MAX);
    check_size(family, size)
}

/// Grid covers on indices `0..n^d`: one step up in a single coordinate.
fn grid_covers(n: usize, d: usize) -> Vec<(usize, usize)> {
    let total = n.pow(d as u32);
    let mut covers = Vec::new();
    for u in 0..total {
        let coords = grid_coords(u, n, d);
        let mut stride = 1;
        for k in (0..d).rev() {
            if coords[k] + 1 < n {
                covers.push((u, u + stride));
            }
            stride *= n;
        }
    }
    covers
}

/// The product of `d` copies of the `n`-element chain, ordered
/// componentwise.
pub fn gen_grid(n: usize, d: usize) -> Result<Poset, GeneratorError> {
    at_least("grid", "n", n, 1)?;
    at_least("grid", "d", d, 1)?;
    let total = grid_size("grid", n, d, 1)?;
    let names = (0..total).map(|u| grid_name(&grid_coords(u, n, d))).collect();
    Ok(build(names, &grid_covers(n, d)))
}

/// The grid `n^d` with a diamond hung on every point `w`: a chain
/// `x_w < y_w < z_w` with `x_w < w < z_w` and `w` incomparable to `y_w`.
/// The grid is one block, each diamond another, and the grid points are
/// exactly the cut vertices.
pub fn gen_block_grid(n: usize, d: usize) -> Result<Poset, GeneratorError> {
    at_least("block-grid", "n", n, 2)?;
    at_least("block-grid", "d", d, 2)?;
    let total = grid_size("block-grid", n, d, 4)? / 4;
    let base: Vec<String> = (0..total).map(|u| grid_name(&grid_coords(u, n, d))).collect();
    let mut names = base.clone();
    let mut covers = grid_covers(n, d);
    for (w, g) in base.iter().enumerate() {
        let x = names.len();
        names.push(format!("x@{g}"));
        names.push(format!("y@{g}"));
        names.push(format!("z@{g}"));
        let (y, z) = (x + 1, x + 2);
        covers.extend_from_slice(&[(x, w), (w, z), (x, y), (y, z)]);
    }
    Ok(build(names, &covers))
}

/// The 3-irreducible family with two cut vertices: `a` below `b_1..b_(n-1)`,
/// `d` above `c_2..c_n`, each `b_i` below `c_i` and `c_(i+1)`, and a
/// separate chain `a < e < d`. `c_1` and `b_n` hang off `b_1` and `c_n`.
pub fn gen_fig1_left(n: usize) -> Result<Poset, GeneratorError> {
    at_least("fig1-left", "n", n, 2)?;
    check_size("fig1-left", 2 * n as u128 + 3)?;
    let a = 0;
    let b = |i: usize| i; // 1..=n
    let c = |i: usize| n + i; // 1..=n
    let d = 2 * n + 1;
    let e = 2 * n + 2;
    let mut names = vec!["a".to_string()];
    names.extend((1..=n).map(|i| format!("b{i}")));
    names.extend((1..=n).map(|i| format!("c{i}")));
    names.push("d".into());
    names.push("e".into());
    let mut covers = vec![(a, e), (e, d)];
    for i in 1..=n {
        if i < n {
            covers.push((a, b(i)));
            covers.push((b(i), c(i + 1)));
        }
        if i > 1 {
            covers.push((c(i), d));
        }
        covers.push((b(i), c(i)));
    }
    Ok(build(names, &covers))
}

/// The second family: a standard example on `c_1..c_n` / `d_1..d_n`, each
/// `c_i` above `b_i`, all `b_i` under a common `c_(n+1)`, a bottom `a` under
/// `b_1..b_n`, and `b_(n+1)` hanging below `c_(n+1)` alone.
pub fn gen_fig1_right(n: usize) -> Result<Poset, GeneratorError> {
    at_least("fig1-right", "n", n, 3)?;
    check_size("fig1-right", 3 * n as u128 + 3)?;
    let a = 0;
    let b = |i: usize| i; // 1..=n+1
    let c = |i: usize| n + 1 + i; // 1..=n+1
    let d = |i: usize| 2 * n + 2 + i; // 1..=n
    let mut names = vec!["a".to_string()];
    names.extend((1..=n + 1).map(|i| format!("b{i}")));
    names.extend((1..=n + 1).map(|i| format!("c{i}")));
    names.extend((1..=n).map(|i| format!("d{i}")));
    let mut covers = Vec::new();
    for i in 1..=n {
        covers.push((a, b(i)));
        covers.push((b(i), c(i)));
        for k in 1..=n {
            if k != i {
                covers.push((c(i), d(k)));
            }
        }
    }
    for i in 1..=n + 1 {
        covers.push((b(i), c(n + 1)));
    }
    Ok(build(names, &covers))
}

/// The two seven-element trees of dimension 3.
pub fn gen_fig3_trees() -> (Poset, Poset) {
    let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    // a b1 b2 b3 b4 c1 c2
    let left = build(
        names(&["a", "b1", "b2", "b3", "b4", "c1", "c2"]),
        &[(0, 2), (0, 4), (1, 5), (2, 5), (2, 6), (3, 6)],
    );
    // x1 x2 x3 x4 y1 y2 y3
    let right = build(
        names(&["x1", "x2", "x3", "x4", "y1", "y2", "y3"]),
        &[(0, 4), (0, 5), (0, 6), (1, 4), (2, 5), (3, 6)],
    );
    (left, right)
}

/// `n` diamonds `a_i < x < c_i`, `a_i < b_i < c_i` sharing the cut vertex
/// `x`.
pub fn gen_fig4_diamonds(n: usize) -> Result<Poset, GeneratorError> {
    at_least("fig4-diamonds", "n", n, 1)?;
    check_size("fig4-diamonds", 3 * n as u128 + 1)?;
    let mut names = vec!["x".to_string()];
    let mut covers = Vec::new();
    for i in 1..=n {
        let a = names.len();
        names.push(format!("a{i}"));
        names.push(format!("b{i}"));
        names.push(format!("c{i}"));
        let (b, c) = (a + 1, a + 2);
        covers.extend_from_slice(&[(a, 0), (0, c), (a, b), (b, c)]);
    }
    Ok(build(names, &covers))
}

/// Points of a block grid attached to one sub-grid `T_1 x ... x T_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridWitnesses {
    /// `a_i` takes `max T_i` in coordinate `i` and `min T_j` elsewhere.
    pub a: Vec<usize>,
    /// `b_i` takes `min T_i` in coordinate `i` and `max T_j` elsewhere.
    pub b: Vec<usize>,
    /// All minima.
    pub c: usize,
    /// All maxima.
    pub d: usize,
    /// All middle values, when the sub-grid uses 3-element sets.
    pub e: Option<usize>,
}

/// Locates the embedded standard example and the special points `c`, `d`
/// (and `e` for 3-element sets) of the sub-grid picked by `subsets` inside
/// a poset built by [`gen_block_grid`], and checks their relations.
///
/// `a_i <= b_j` holds exactly when `i != j`. For `d = 2` the points `a_1`
/// and `b_2` coincide, so only the satellites `x@a_i`, `z@b_j` form a proper
/// standard example; from `d = 3` on the base points do as well.
pub fn gen_section5_antichains(
    p: &Poset,
    subsets: &[Vec<usize>],
) -> Result<GridWitnesses, GeneratorError> {
    let malformed = |m: String| Err(GeneratorError::MalformedGrid(m));
    let dim = subsets.len();
    if dim < 2 {
        return malformed(format!("need at least 2 coordinate sets, got {dim}"));
    }
    let k = subsets[0].len();
    if !(k == 2 || k == 3) {
        return malformed(format!("coordinate sets must have 2 or 3 values, got {k}"));
    }
    let mut sorted = Vec::with_capacity(dim);
    for (j, t) in subsets.iter().enumerate() {
        let mut t = t.clone();
        t.sort_unstable();
        t.dedup();
        if t.len() != k {
            return malformed(format!("coordinate set {j} must have {k} distinct values"));
        }
        sorted.push(t);
    }
    let point = |coords: &[usize]| {
        let name = grid_name(coords);
        p.index_of(&name)
            .ok_or_else(|| GeneratorError::MalformedGrid(format!("no grid point {name}")))
    };
    let sat = |prefix: &str, w: usize| {
        let name = format!("{prefix}@{}", p.name(w));
        p.index_of(&name)
            .ok_or_else(|| GeneratorError::MalformedGrid(format!("no satellite {name}")))
    };
    let lo = |j: usize| sorted[j][0];
    let hi = |j: usize| sorted[j][k - 1];

    let mut a = Vec::with_capacity(dim);
    let mut b = Vec::with_capacity(dim);
    for i in 0..dim {
        let ca: Vec<usize> = (0..dim).map(|j| if i == j { hi(j) } else { lo(j) }).collect();
        let cb: Vec<usize> = (0..dim).map(|j| if i == j { lo(j) } else { hi(j) }).collect();
        a.push(point(&ca)?);
        b.push(point(&cb)?);
    }
    let c = point(&(0..dim).map(lo).collect::<Vec<_>>())?;
    let d = point(&(0..dim).map(hi).collect::<Vec<_>>())?;
    let e = if k == 3 {
        Some(point(&(0..dim).map(|j| sorted[j][1]).collect::<Vec<_>>())?)
    } else {
        None
    };

    let fail = |m: String| Err(GeneratorError::WitnessCheck(m));
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            if p.le(ai, bj) != (i != j) {
                return fail(format!("a{} <= b{} should be {}", i + 1, j + 1, i != j));
            }
            let (xa, zb) = (sat("x", ai)?, sat("z", bj)?);
            if p.lt(xa, zb) != (i != j) {
                return fail(format!("x@a{} < z@b{} should be {}", i + 1, j + 1, i != j));
            }
        }
    }
    let (xc, yc) = (sat("x", c)?, sat("y", c)?);
    let (yd, zd) = (sat("y", d)?, sat("z", d)?);
    if !(p.lt(xc, c) && p.lt(c, d) && p.lt(d, zd)) {
        return fail("x_c < c < d < z_d does not hold".into());
    }
    if !p.incomparable(xc, yd) || !p.incomparable(yc, zd) {
        return fail("(x_c, y_d) and (y_c, z_d) must be incomparable".into());
    }
    if let Some(e) = e {
        if !(p.lt(c, e) && p.lt(e, d)) {
            return fail("c < e < d does not hold".into());
        }
    }
    Ok(GridWitnesses { a, b, c, d, e })
}
