//! End-to-end acceptance checks, one line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use probe_witness::cellprobe::{
    answers_exceed_cell_states, audit_layout, kwise_rank_check, vandermonde_problem, witness_threshold, AuditVerdict,
    LinearProblem, ProbeLayout,
};
use probe_witness::dense::dense_size_bound_holds;
use probe_witness::field::next_prime;
use probe_witness::gap::gap_size_bound_holds;
use probe_witness::graph::{spanned_edges, EdgeList};
use probe_witness::hyper::{find_hyper_dense, surplus_meets_target, Mode};
use probe_witness::oracle::{brute_force_best_gap, smallest_connected_dense_set, verify_witness, DEFAULT_BUDGET};
use probe_witness::tightness::{run_tightness_experiment, sample_uniform_hypergraph, TrialParams};
use probe_witness::{find_dense_set, find_gap_set, find_tadpole, DensityParams, Multigraph, THypergraph};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn random_multigraph(rng: &mut ChaCha8Rng, s: usize, m: usize) -> Multigraph {
    Multigraph::new(s, (0..m).map(|_| (rng.gen_range(0..s), rng.gen_range(0..s)))).unwrap()
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let choices = [Rational64::new(1, 1), Rational64::new(1, 2), Rational64::new(1, 5)];
    let mut tested = 0;
    while tested < 10_000 {
        let s = rng.gen_range(2..=10);
        let params = DensityParams::new(choices[rng.gen_range(0..3)]).unwrap();
        let m = rng.gen_range(0..=14);
        if !params.dense_enough(s, m) {
            continue;
        }
        let g = random_multigraph(&mut rng, s, m);
        let w = find_dense_set(&g, params).map_err(|e| format!("{e} on {g:?}"))?;
        ensure!(w.spanned.len() > w.size(), "surplus {} on {g:?}", w.surplus());
        ensure!(dense_size_bound_holds(w.size(), s, params), "|S| = {} too large on {g:?}", w.size());
        ensure!(verify_witness(&g, &w).is_valid(), "witness rejected on {g:?}");
        let best = brute_force_best_gap(&g, s, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure!(best.gap >= 1, "oracle finds no surplus on {g:?}");
        tested += 1;
    }
    Ok(format!("{tested} graphs, all witnesses valid"))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1_000 {
        let s = rng.gen_range(2..=10);
        let target: u64 = rng.gen_range(1..=3);
        let least = 2 * s + target as usize + 1;
        let m = rng.gen_range(least..=least + 6);
        let g = random_multigraph(&mut rng, s, m);
        let w = find_gap_set(&g, target).map_err(|e| format!("{e} on {g:?}"))?;
        ensure!(w.surplus() >= target as i64, "surplus {} < {target} on {g:?}", w.surplus());
        ensure!(gap_size_bound_holds(w.size(), s, target), "|S| = {} too large on {g:?}", w.size());
        ensure!(verify_witness(&g, &w).is_valid(), "witness rejected on {g:?}");
    }
    Ok("1000 graphs, all witnesses valid".into())
}

fn near_cubic(rng: &mut ChaCha8Rng, s: usize) -> Multigraph {
    let mut edges = Vec::new();
    let mut deg = vec![0usize; s];
    for v in 0..s {
        let need = if v == 0 { 1 } else { 3 };
        while deg[v] < need {
            let u = rng.gen_range(0..s);
            edges.push((v, u));
            deg[v] += 1;
            deg[u] += 1;
        }
    }
    Multigraph::new(s, edges).unwrap()
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut longest = 0;
    for _ in 0..1_000 {
        let s = rng.gen_range(2..=64);
        let g = near_cubic(&mut rng, s);
        let t = find_tadpole(&g, 0).map_err(|e| format!("{e} on {g:?}"))?;
        t.validate(&g, 0).map_err(|e| format!("{e} on {g:?}"))?;
        longest = longest.max(t.length());
    }
    Ok(format!("1000 graphs, longest k + l = {longest}"))
}

fn criterion_4() -> Outcome {
    let (s, t, k, m) = (256, 3, 256, 393_216);
    let g = sample_uniform_hypergraph(s, m, t, 4).map_err(|e| e.to_string())?;
    let w = find_hyper_dense(&g, k, Mode::Strict)
        .map_err(|e| e.to_string())?
        .ok_or("strict mode returned no witness")?;
    let recount = spanned_edges(&g, &w.vertices).map_err(|e| e.to_string())?;
    ensure!(recount == w.spanned, "recount differs from the listed edges");
    let surplus = recount.len() as i64 - w.size() as i64;
    ensure!(w.size() <= k, "|S| = {} > {k}", w.size());
    ensure!(surplus >= 2, "surplus {surplus} < 2");
    ensure!(surplus_meets_target(surplus, s, t, k), "surplus below k / (2^(t+1) log2 s)");
    ensure!(verify_witness(&g, &w).is_valid(), "witness rejected");
    Ok(format!("|S| = {}, spanned = {}, surplus = {surplus}", w.size(), recount.len()))
}

fn criterion_5() -> Outcome {
    let r = run_tightness_experiment(161, 16, 3, 4, 1_000, 5).map_err(|e| e.to_string())?;
    let direct = (5f64.exp() * 16.0 * 4.0 / (161.0f64 * 161.0)).powi(4);
    ensure!(r.condition_satisfied, "condition not satisfied");
    ensure!(
        (r.analytic_bound - direct).abs() <= 1e-9 * direct,
        "bound {} differs from {direct}",
        r.analytic_bound
    );
    ensure!((r.analytic_bound - 0.0180).abs() < 5e-5, "bound {} is not about 0.0180", r.analytic_bound);
    ensure!(r.analytic_bound <= (-4f64).exp(), "bound {} exceeds e^-4", r.analytic_bound);
    ensure!(r.fraction <= 0.05, "observed fraction {} > 0.05", r.fraction);
    Ok(format!(
        "bound = {:.6}, e^-4 = {:.6}, failures = {}/1000",
        r.analytic_bound,
        (-4f64).exp(),
        r.failures
    ))
}

fn criterion_6() -> Outcome {
    let mut checks = 0;
    for p in [11u64, 13] {
        for n in 1..=5 {
            for m in n..=8 {
                let v = vandermonde_problem(n, m, p).map_err(|e| e.to_string())?;
                for k in 0..=n {
                    ensure!(
                        kwise_rank_check(&v, k, DEFAULT_BUDGET).map_err(|e| e.to_string())?,
                        "Vandermonde n={n} m={m} p={p} fails at k={k}"
                    );
                    checks += 1;
                }
            }
        }
    }
    let dup = LinearProblem::new(11, vec![vec![1, 2, 2], vec![3, 5, 5]]).map_err(|e| e.to_string())?;
    ensure!(!kwise_rank_check(&dup, 2, DEFAULT_BUDGET).unwrap(), "duplicated columns pass at k=2");
    Ok(format!("{checks} rank checks pass, duplicate columns fail"))
}

/// Largest `p^cells` the counting check enumerates.
const CELL_STATE_LIMIT: u128 = 1 << 20;

/// `p^cells` for the field used on a core of `cells` cells.
fn cell_states(cells: usize) -> u128 {
    (next_prime(cells as u64 + 1) as u128).saturating_pow(cells as u32)
}

/// Smallest set of witness cells that still spans more witness queries
/// than it has cells.
fn witness_core(layout: &ProbeLayout, cells: &[usize], queries: &[usize]) -> Option<Vec<usize>> {
    let at = |c: &usize| cells.binary_search(c).unwrap();
    let sub = Multigraph::new(
        cells.len(),
        queries.iter().map(|&q| {
            let probes = layout.probes(q);
            (at(&probes[0]), at(probes.last().unwrap()))
        }),
    )
    .unwrap();
    let core = smallest_connected_dense_set(&sub, 1, cells.len())?;
    Some(core.iter().map(|&v| cells[v]).collect())
}

fn criterion_7() -> Outcome {
    let (s, m, k) = (100, 200, 200);
    ensure!(witness_threshold(s, m, 2, k).holds, "threshold does not hold");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut core_sizes = Vec::new();
    let mut from_layout = 0;
    for i in 0..100 {
        let layout = ProbeLayout::new(s, 2, (0..m).map(|_| vec![rng.gen_range(0..s), rng.gen_range(0..s)])).unwrap();
        let report = audit_layout(&layout, k).map_err(|e| format!("layout {i}: {e}"))?;
        ensure!(report.verdict == AuditVerdict::Violation, "layout {i}: verdict {}", report.verdict);
        let (cells, queries) = (&report.witness_cells, &report.witness_queries);
        ensure!(queries.len() > cells.len(), "layout {i}: too few queries");
        ensure!(layout.is_violation(cells, queries), "layout {i}: violation does not re-check");

        // Smallest violating set of cells inside the witness; when filling
        // it takes more than CELL_STATE_LIMIT states, the smallest one in
        // the whole layout.
        let mut core_cells = witness_core(&layout, cells, queries).ok_or(format!("layout {i}: no core"))?;
        if cell_states(core_cells.len()) > CELL_STATE_LIMIT {
            let whole = layout.multigraph().unwrap();
            let core = smallest_connected_dense_set(&whole, 1, core_cells.len()).ok_or(format!("layout {i}: no core"))?;
            core_cells = core;
            from_layout += 1;
        }
        let core_queries: Vec<usize> = (0..layout.queries())
            .filter(|&q| layout.probes(q).iter().all(|c| core_cells.contains(c)))
            .take(core_cells.len() + 1)
            .collect();
        ensure!(layout.is_violation(&core_cells, &core_queries), "layout {i}: core is not a violation");

        let q = core_queries.len();
        let p = next_prime(q as u64);
        let problem = vandermonde_problem(q, q, p).map_err(|e| e.to_string())?;
        ensure!(kwise_rank_check(&problem, q, DEFAULT_BUDGET).unwrap(), "layout {i}: problem not {q}-wise");
        // Column j of the problem answers core query j.
        let columns: Vec<usize> = (0..q).collect();
        let check = answers_exceed_cell_states(&problem, &columns, core_cells.len(), CELL_STATE_LIMIT)
            .map_err(|e| format!("layout {i}: core of {} cells over GF({p}): {e}", core_cells.len()))?;
        ensure!(check.refuted, "layout {i}: cell contents could answer the core queries");
        core_sizes.push(core_cells.len());
    }
    core_sizes.sort_unstable();
    Ok(format!(
        "100 layouts violate; counting check refutes cores of {}..={} cells ({} inside the witness)",
        core_sizes[0],
        core_sizes[core_sizes.len() - 1],
        100 - from_layout
    ))
}

fn criterion_8() -> Outcome {
    fn twice<T: PartialEq + std::fmt::Debug>(what: &str, f: impl Fn() -> T) -> Result<(), String> {
        let (a, b) = (f(), f());
        ensure!(a == b, "{what} differs between runs");
        Ok(())
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let g = random_multigraph(&mut rng, 10, 24);
    let unit = DensityParams::new(Rational64::from_integer(1)).unwrap();
    twice("find_dense_set", || find_dense_set(&g, unit).map(|w| w.to_string()))?;
    twice("find_gap_set", || find_gap_set(&g, 3).map(|w| w.to_string()))?;
    let cubic = near_cubic(&mut rng, 40);
    twice("find_tadpole", || find_tadpole(&cubic, 0))?;
    let h: THypergraph = sample_uniform_hypergraph(12, 30, 3, 8).unwrap();
    twice("sample_uniform_hypergraph", || sample_uniform_hypergraph(12, 30, 3, 8).map(|h| h.to_string()))?;
    twice("find_hyper_dense", || find_hyper_dense(&h, 6, Mode::BestEffort).map(|w| w.map(|w| w.to_string())))?;
    twice("brute_force_best_gap", || brute_force_best_gap(&h, 12, DEFAULT_BUDGET))?;
    twice("TrialReport", || run_tightness_experiment(60, 16, 3, 4, 50, 8).map(|r| r.to_string()))?;
    let params = TrialParams {
        s: 161,
        m: 16,
        t: 3,
        k: 4,
        trials: 0,
        seed: 0,
    };
    twice("analytic bound", || params.analytic_bound().to_bits())?;
    let layout = ProbeLayout::new(30, 2, (0..60).map(|_| vec![rng.gen_range(0..30), rng.gen_range(0..30)])).unwrap();
    twice("AuditReport", || audit_layout(&layout, 60).map(|r| r.to_string()))?;
    ensure!(h.edge_count() == 30, "sampler produced {} edges", h.edge_count());
    Ok("finders, samplers and reports repeat byte for byte".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("dense sets in random multigraphs", Duration::from_secs(60), criterion_1),
        ("gap sets in random multigraphs", Duration::from_secs(60), criterion_2),
        ("tadpoles in near-cubic multigraphs", Duration::from_secs(30), criterion_3),
        ("strict hypergraph instance t=3, s=k=256", Duration::from_secs(120), criterion_4),
        ("random hypergraph tightness at s=161", Duration::from_secs(600), criterion_5),
        ("rank argument for Vandermonde problems", Duration::from_secs(10), criterion_6),
        ("layout audits at s=100, m=200, t=2", Duration::from_secs(120), criterion_7),
        ("determinism", Duration::from_secs(60), criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > limit => Err(format!("took {elapsed:.1?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("[PASS] criterion {}: {name}: {detail} ({elapsed:.1?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name}: {why} ({elapsed:.1?})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
