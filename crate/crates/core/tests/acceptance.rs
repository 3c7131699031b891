//! Acceptance suite. One line per criterion:
//!
//! ```text
//! [PASS] 3 trees .......... detail (elapsed / budget)
//! ```
//!
//! Budgets are wall-clock limits on each criterion; exceeding one fails
//! the criterion even if every check passed.
//!
//! Non-gating lines are printed but do not affect the exit status: the
//! stretch check, and criteria listed in `KNOWN_UNATTAINABLE` whose
//! expected values contradict an independent oracle.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use posetdim::blocks::block_decomposition;
use posetdim::generators::{
    gen_block_grid, gen_fig1_left, gen_fig3_trees, gen_fig4_diamonds, gen_grid, gen_standard_example,
};
use posetdim::merge::{
    build_family, check_block_property, check_interval_property, dimension_upper_bound,
    dimension_upper_bound_with, residual_pairs, BoundOptions,
};
use posetdim::reversibility::{is_reversible, ReversibleCandidate};
use posetdim::solver::{brute_force_dimension, exact_dimension, SolverConfig};
use posetdim::{verify_realizer, IncPair, Poset, Realizer};
use rand::Rng;

use common::{random_glued_poset, random_labeling, random_poset, random_tree_poset, rng};

const STANDARD_EXAMPLE_BUDGET: Duration = Duration::from_secs(4 * 60);
const STANDARD_EXAMPLE_EACH: Duration = Duration::from_secs(60);
const GRID_BUDGET: Duration = Duration::from_secs(5 * 60);
const TREE_BUDGET: Duration = Duration::from_secs(2 * 60);
const BLOCK_GRID_BUDGET: Duration = Duration::from_secs(2 * 60);
const TIGHTNESS_BUDGET: Duration = Duration::from_secs(10 * 60);
const DIAMOND_BUDGET: Duration = Duration::from_secs(5 * 60);
const DIAMOND_EXACT_BUDGET: Duration = Duration::from_secs(60);
const STRETCH_BUDGET: Duration = Duration::from_secs(2 * 60 * 60);
const REVERSIBILITY_BUDGET: Duration = Duration::from_secs(2 * 60);
const STRUCTURE_BUDGET: Duration = Duration::from_secs(2 * 60);
const ORACLE_BUDGET: Duration = Duration::from_secs(5 * 60);
const IRREDUCIBLE_BUDGET: Duration = Duration::from_secs(2 * 60);

type Outcome = Result<String, String>;

fn config() -> SolverConfig {
    SolverConfig { timeout: None, ..SolverConfig::default() }
}

fn dim(p: &Poset) -> Result<usize, String> {
    let res = exact_dimension(p, &config()).map_err(|e| e.to_string())?;
    if !verify_realizer(p, &res.witness).map_err(|e| e.to_string())?.is_valid() {
        return Err("solver witness is not a realizer".into());
    }
    Ok(res.dim)
}

fn verified(p: &Poset, r: &Realizer) -> bool {
    verify_realizer(p, r).map(|v| v.is_valid()).unwrap_or(false)
}

fn standard_examples() -> Outcome {
    let mut times = Vec::new();
    for d in 2..=5 {
        let start = Instant::now();
        let got = dim(&gen_standard_example(d).unwrap())?;
        let took = start.elapsed();
        if got != d {
            return Err(format!("dim(S_{d}) = {got}"));
        }
        if took > STANDARD_EXAMPLE_EACH {
            return Err(format!("S_{d} took {took:.1?}"));
        }
        times.push(format!("S_{d}={got} in {took:.2?}"));
    }
    Ok(times.join(", "))
}

fn grids() -> Outcome {
    let mut out = Vec::new();
    for d in 2..=4 {
        let got = dim(&gen_grid(2, d).unwrap())?;
        if got != d {
            return Err(format!("dim(2^{d}) = {got}"));
        }
        out.push(format!("2^{d}={got}"));
    }
    Ok(out.join(", "))
}

fn trees() -> Outcome {
    let (l, r) = gen_fig3_trees();
    for (name, p) in [("left", &l), ("right", &r)] {
        let got = dim(p)?;
        if got != 3 {
            return Err(format!("{name} tree has dimension {got}"));
        }
    }
    let mut rng = rng(0x7265_6573);
    let mut sizes = [0usize; 4];
    for k in 0..100 {
        let n = rng.random_range(2..=40);
        let p = random_tree_poset(&mut rng, n);
        let b = dimension_upper_bound(&p, &BoundOptions::default()).map_err(|e| format!("tree {k}: {e}"))?;
        if b.bound > 3 || !verified(&p, &b.witness) {
            return Err(format!("tree {k} (n={n}): size {} or invalid", b.bound));
        }
        sizes[b.bound] += 1;
    }
    Ok(format!(
        "both figure trees have dimension 3; 100 random trees, realizer sizes 1/2/3 = {}/{}/{}",
        sizes[1], sizes[2], sizes[3]
    ))
}

fn block_grids() -> Outcome {
    let mut out = Vec::new();
    for (n, d) in [(2, 2), (3, 2), (4, 2), (2, 3)] {
        let p = gen_block_grid(n, d).unwrap();
        let b = dimension_upper_bound(&p, &BoundOptions::default()).map_err(|e| e.to_string())?;
        if b.bound > d + 2 || !verified(&p, &b.witness) {
            return Err(format!("P({n}) with d={d}: size {}", b.bound));
        }
        out.push(format!("({n},{d}): {} <= {}", b.bound, d + 2));
    }
    Ok(out.join(", "))
}

fn tightness_probe() -> Outcome {
    let mut out = Vec::new();
    for n in 2..=3 {
        let p = gen_block_grid(n, 2).unwrap();
        let dec = block_decomposition(&p).map_err(|e| e.to_string())?;
        let mut max_block = 1;
        for block in dec.blocks() {
            max_block = max_block.max(dim(&p.subposet(block).unwrap())?);
        }
        let got = dim(&p)?;
        if got < max_block || got > max_block + 2 {
            return Err(format!("n={n}: dim {got} outside [{max_block}, {}]", max_block + 2));
        }
        out.push(format!("dim P({n}) = {got}, blocks {max_block}"));
    }
    Ok(out.join("; "))
}

fn diamond_bound() -> Outcome {
    let mut worst = 0;
    for n in 1..=50 {
        let p = gen_fig4_diamonds(n).unwrap();
        let b = dimension_upper_bound(&p, &BoundOptions::default()).map_err(|e| e.to_string())?;
        if b.d != 2 || b.bound > 4 || !verified(&p, &b.witness) {
            return Err(format!("n={n}: d={} size={}", b.d, b.bound));
        }
        worst = worst.max(b.bound);
    }
    Ok(format!("blocks have dimension 2, realizer size <= {worst} for n=1..50"))
}

/// Expects dimension 3 for every `n <= 4`. A single diamond has dimension
/// 2 and so do two diamonds (brute force agrees), so this cannot pass; the
/// line reports the computed values.
fn diamond_exact() -> Outcome {
    let mut values = Vec::new();
    let mut wrong = Vec::new();
    for n in 1..=4 {
        let p = gen_fig4_diamonds(n).unwrap();
        let got = dim(&p)?;
        if p.len() <= 8 {
            let brute = brute_force_dimension(&p).map_err(|e| e.to_string())?;
            if brute != got {
                return Err(format!("n={n}: solver {got} vs brute force {brute}"));
            }
        }
        if got != 3 {
            wrong.push(n);
        }
        values.push(format!("n={n}: {got}"));
    }
    let values = values.join(", ");
    if wrong.is_empty() {
        Ok(values)
    } else {
        Err(format!("expected 3 for n<=4, got {values} (n=1,2 confirmed by brute force)"))
    }
}

fn diamonds_stretch() -> Outcome {
    let p = gen_fig4_diamonds(17).unwrap();
    let cfg = SolverConfig { timeout: Some(STRETCH_BUDGET), ..SolverConfig::default() };
    match exact_dimension(&p, &cfg) {
        Ok(r) if r.dim == 4 => Ok(format!("dim = 4 ({} nodes)", r.stats.nodes)),
        Ok(r) => Err(format!("dim = {}", r.dim)),
        Err(e) => Err(e.to_string()),
    }
}

fn reversible_by_enumeration(p: &Poset, pairs: &[IncPair]) -> bool {
    p.linear_extensions().iter().any(|e| {
        let pos = e.positions();
        pairs.iter().all(|q| pos[q.y] < pos[q.x])
    })
}

fn reversibility() -> Outcome {
    let mut rng = rng(0x6c65_6d6d);
    let (mut yes, mut no) = (0, 0);
    for k in 0..1200 {
        let n = rng.random_range(1..=8);
        let density = rng.random_range(0.0..0.7);
        let p = random_poset(&mut rng, n, density);
        let inc = p.incomparable_pairs();
        let keep = rng.random_range(0.05..0.6);
        let pairs: Vec<IncPair> = inc.into_iter().filter(|_| rng.random_bool(keep)).collect();
        let cand = ReversibleCandidate::new(&p, pairs.clone()).unwrap();
        let fast = is_reversible(&p, &cand);
        if fast != reversible_by_enumeration(&p, &pairs) {
            return Err(format!("disagreement on poset {k}: {:?}, pairs {pairs:?}", p.relations()));
        }
        if fast { yes += 1 } else { no += 1 }
    }
    Ok(format!("1200 posets, 0 disagreements ({yes} reversible, {no} not)"))
}

fn structure() -> Outcome {
    let mut rng = rng(0x626c_6f63);
    let fixed = [gen_standard_example(3).unwrap(), gen_grid(2, 3).unwrap()];
    let mut residual = 0;
    let mut by_d = [0usize; 4];
    for k in 0..200 {
        let pieces = rng.random_range(1..=8);
        let p = random_glued_poset(&mut rng, pieces, 6, &fixed);
        let base = block_decomposition(&p).map_err(|e| e.to_string())?;
        for l in 0..3 {
            let dec = if l == 0 { base.clone() } else { random_labeling(&mut rng, &base) };
            let b = dimension_upper_bound_with(&p, &dec, &BoundOptions::default())
                .map_err(|e| format!("poset {k} labeling {l}: {e}"))?;
            if b.d > 3 {
                return Err(format!("poset {k} has a block of dimension {}", b.d));
            }
            let blocks: Vec<Realizer> = (0..dec.len())
                .map(|i| {
                    let exts = b.witness.extensions()[..b.d]
                        .iter()
                        .map(|e| e.restrict(&dec.block_set(i)).into())
                        .collect();
                    Realizer::new(exts).unwrap()
                })
                .collect();
            let fam = build_family(&p, &dec, &blocks).map_err(|e| format!("poset {k}: {e}"))?;
            check_block_property(&dec, &fam).map_err(|e| e.to_string())?;
            check_interval_property(&dec, &fam).map_err(|e| e.to_string())?;
            let res = residual_pairs(&p, &dec, &fam).map_err(|e| format!("poset {k}: {e}"))?;
            if b.bound > b.d + 2 || !verified(&p, &b.witness) {
                return Err(format!("poset {k} labeling {l}: bad final realizer"));
            }
            residual += res.len();
            if l == 0 {
                by_d[b.d] += 1;
            }
        }
    }
    Ok(format!(
        "200 posets x 3 labelings, block dims 1/2/3 = {}/{}/{}, {residual} residual pairs classified",
        by_d[1], by_d[2], by_d[3]
    ))
}

fn oracle() -> Outcome {
    let mut checked = 0;
    let check = |p: &Poset| -> Result<(), String> {
        let fast = dim(p)?;
        let slow = brute_force_dimension(p).map_err(|e| e.to_string())?;
        if fast != slow {
            return Err(format!("solver {fast} vs brute force {slow} on {:?}", p.relations()));
        }
        Ok(())
    };
    for n in 1..=4usize {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        for mask in 0u32..1 << slots.len() {
            let pairs: Vec<_> = slots.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &s)| s).collect();
            check(&Poset::from_pairs(n, &pairs).unwrap())?;
            checked += 1;
        }
    }
    let exhaustive = checked;
    let mut rng = rng(0x6f72_6163);
    for _ in 0..600 {
        let n = rng.random_range(5..=8);
        let density = rng.random_range(0.1..0.7);
        check(&random_poset(&mut rng, n, density))?;
        checked += 1;
    }
    for d in 2..=4 {
        check(&gen_standard_example(d).unwrap())?;
        checked += 1;
    }
    Ok(format!("{checked} posets ({exhaustive} exhaustive up to 4 elements), 0 disagreements"))
}

fn irreducible() -> Outcome {
    let mut out = Vec::new();
    for n in [2, 3] {
        let p = gen_fig1_left(n).unwrap();
        let got = dim(&p)?;
        if got != 3 {
            return Err(format!("n={n}: dimension {got}"));
        }
        for v in 0..p.len() {
            let rest: Vec<usize> = (0..p.len()).filter(|&u| u != v).collect();
            let sub = dim(&p.subposet(&rest).unwrap())?;
            if sub >= 3 {
                return Err(format!("n={n}: removing {} leaves dimension {sub}", p.name(v)));
            }
        }
        out.push(format!("n={n}: 3, all {} deletions < 3", p.len()));
    }
    Ok(out.join("; "))
}

/// Criteria whose stated values are refuted by the solver and by brute
/// force. They still run and print FAIL.
const KNOWN_UNATTAINABLE: &[&str] = &["6b"];

struct Criterion {
    id: &'static str,
    name: &'static str,
    budget: Duration,
    gating: bool,
    run: fn() -> Outcome,
}

const fn gate(id: &'static str, name: &'static str, budget: Duration, run: fn() -> Outcome) -> Criterion {
    Criterion { id, name, budget, gating: true, run }
}

fn main() -> ExitCode {
    let criteria = [
        gate("1", "standard examples", STANDARD_EXAMPLE_BUDGET, standard_examples),
        gate("2", "grids", GRID_BUDGET, grids),
        gate("3", "trees", TREE_BUDGET, trees),
        gate("4", "block grids, constructive bound", BLOCK_GRID_BUDGET, block_grids),
        gate("5", "block grids, tightness probe", TIGHTNESS_BUDGET, tightness_probe),
        gate("6a", "diamond family, bound", DIAMOND_BUDGET, diamond_bound),
        gate("6b", "diamond family, exact n<=4", DIAMOND_EXACT_BUDGET, diamond_exact),
        Criterion {
            id: "6s",
            name: "diamond family, n=17 (stretch)",
            budget: STRETCH_BUDGET,
            gating: false,
            run: diamonds_stretch,
        },
        gate("7", "alternating cycles vs enumeration", REVERSIBILITY_BUDGET, reversibility),
        gate("8", "block and interval properties", STRUCTURE_BUDGET, structure),
        gate("9", "solver vs brute force", ORACLE_BUDGET, oracle),
        gate("10", "3-irreducibility", IRREDUCIBLE_BUDGET, irreducible),
    ];
    let mut passed = 0;
    let mut blocking = Vec::new();
    let mut known = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if took <= c.budget => (true, d),
            Ok(d) => (false, format!("over budget: {d}")),
            Err(e) => (false, e),
        };
        let note = match (ok, c.gating, KNOWN_UNATTAINABLE.contains(&c.id)) {
            (true, _, _) => "",
            (false, false, _) => " [non-gating]",
            (false, true, true) => " [known unattainable]",
            (false, true, false) => "",
        };
        if ok {
            passed += 1;
        } else if c.gating && KNOWN_UNATTAINABLE.contains(&c.id) {
            known.push(c.id);
        } else if c.gating {
            blocking.push(c.id);
        }
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("[{tag}] {:>2} {}: {detail} ({took:.2?} / {:?}){note}", c.id, c.name, c.budget);
    }
    println!(
        "{passed} of {} passed; known unattainable failing: {:?}; blocking failures: {:?}",
        criteria.len(),
        known,
        blocking
    );
    if blocking.is_empty() { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
