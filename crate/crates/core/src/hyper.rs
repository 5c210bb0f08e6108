//! Dense sets in t-hypergraphs, by induction on the arity.
//!
//! Each level pads every hyperedge to exactly `t` vertices, picks the `l`
//! highest-degree vertices `L`, removes one vertex of `L` from every
//! hyperedge touching `L` and recurses on the resulting (t-1)-hypergraph
//! with budget `k - l`. At `t = 2` the gap finder takes over. The answer is
//! the recursive set together with `L`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::gap::{find_gap_set, gap_search_best_effort};
use crate::graph::{DenseWitness, EdgeId, EdgeList, THypergraph, VertexId};
use crate::log2::Log2;

/// Largest arity accepted; keeps `2^(t+3)` inside a `u64`.
pub const MAX_ARITY: usize = 56;

/// The `l` vertices of highest degree and the hyperedges touching them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeavySet {
    /// Ascending.
    pub vertices: Vec<VertexId>,
    /// Ascending edge ids with at least one vertex in `vertices`.
    pub touched: Vec<EdgeId>,
}

impl HeavySet {
    /// `|touched| >= l * m / s`, exactly.
    pub fn meets_guarantee(&self, s: usize, m: usize) -> bool {
        self.touched.len() as u128 * s as u128 >= self.vertices.len() as u128 * m as u128
    }
}

/// For each peeled edge: the edge it came from and the vertex removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelMap {
    pub entries: Vec<(EdgeId, VertexId)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Checks the density hypotheses first and treats any failure of the
    /// construction as a bug.
    Strict,
    /// Runs the same recursion on any input and reports what it finds.
    BestEffort,
}

/// Fills every hyperedge up to `t` vertices with the smallest ids it lacks.
pub fn pad_to_uniform(g: &THypergraph) -> Result<THypergraph> {
    let (s, t) = (g.vertex_count(), g.arity());
    if s < t {
        return Err(Error::precondition(format!("cannot pad to t = {t} vertices with only s = {s}")));
    }
    let edges = g.edges().iter().map(|e| {
        let mut padded = e.clone();
        let mut fill = (0..s).filter(|v| e.binary_search(v).is_err());
        while padded.len() < t {
            padded.push(fill.next().expect("s >= t leaves enough vertices"));
        }
        padded
    });
    THypergraph::with_arity(s, t, edges.collect::<Vec<_>>())
}

/// The `l` highest-degree vertices, ties going to the lower id.
pub fn select_heavy_set(g: &THypergraph, l: usize) -> Result<HeavySet> {
    let s = g.vertex_count();
    if l == 0 || l > s {
        return Err(Error::precondition(format!("heavy set size {l} is outside 1..={s}")));
    }
    let deg = g.degrees();
    let mut order: Vec<VertexId> = (0..s).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
    let mut vertices = order[..l].to_vec();
    vertices.sort_unstable();
    let touched = (0..g.edge_count())
        .filter(|&e| g.edge(e).iter().any(|v| vertices.binary_search(v).is_ok()))
        .collect();
    Ok(HeavySet { vertices, touched })
}

/// Removes from each touched edge its lowest vertex in `L`.
pub fn peel(g: &THypergraph, heavy: &HeavySet) -> Result<(THypergraph, PeelMap)> {
    let mut edges = Vec::with_capacity(heavy.touched.len());
    let mut entries = Vec::with_capacity(heavy.touched.len());
    for &e in &heavy.touched {
        let edge = g
            .edges()
            .get(e)
            .ok_or_else(|| Error::invalid(format!("touched edge {e} does not exist")))?;
        let v = *edge
            .iter()
            .find(|v| heavy.vertices.binary_search(v).is_ok())
            .ok_or_else(|| Error::invalid(format!("edge {e} does not meet the heavy set")))?;
        let rest: Vec<VertexId> = edge.iter().copied().filter(|&u| u != v).collect();
        if rest.is_empty() {
            return Err(Error::invalid(format!("peeling edge {e} leaves it empty")));
        }
        edges.push(rest);
        entries.push((e, v));
    }
    let peeled = THypergraph::with_arity(g.vertex_count(), g.arity().saturating_sub(1).max(1), edges)?;
    Ok((peeled, PeelMap { entries }))
}

fn pow2(exp: usize) -> BigInt {
    BigInt::one() << exp
}

/// `m >= 3s (2^(t+3) s log2(s) / k)^(t-2)`, exactly.
pub fn density_condition(s: usize, m: usize, t: usize, k: usize) -> bool {
    if s < 2 || k == 0 || t < 2 {
        return false;
    }
    let j = (t - 2) as u32;
    // log2(s)^j <= m k^j / (3 s (2^(t+3) s)^j)
    let num = BigInt::from(m) * Pow::pow(BigInt::from(k), j);
    let den = BigInt::from(3u32) * BigInt::from(s) * Pow::pow(pow2(t + 3) * BigInt::from(s), j);
    Log2::of(s as u64).pow_cmp(j, &BigRational::new(num, den)) != Ordering::Greater
}

/// `2^(t+2) log2(s) <= k`.
pub fn budget_condition(s: usize, t: usize, k: usize) -> bool {
    s >= 2 && Log2::of(s as u64).at_most(BigInt::from(k), pow2(t + 2))
}

/// `surplus >= k / (2^(t+1) log2 s)`, exactly.
pub fn surplus_meets_target(surplus: i64, s: usize, t: usize, k: usize) -> bool {
    if k == 0 {
        return surplus >= 0;
    }
    surplus > 0 && s >= 2 && Log2::of(s as u64).at_least(BigInt::from(k), pow2(t + 1) * BigInt::from(surplus))
}

/// Checks `s >= 2`, `2^(t+2) log2(s) <= k <= s` and the density condition,
/// naming the first one that fails.
pub fn check_strict_preconditions(g: &THypergraph, k: usize) -> Result<()> {
    let (s, m, t) = (g.vertex_count(), g.edge_count(), g.arity());
    if t > MAX_ARITY {
        return Err(Error::precondition(format!("arity t = {t} exceeds {MAX_ARITY}")));
    }
    if s < 2 {
        return Err(Error::precondition(format!("need s >= 2, graph has s = {s}")));
    }
    if k > s {
        return Err(Error::precondition(format!("k = {k} > s = {s}")));
    }
    if !budget_condition(s, t, k) {
        return Err(Error::precondition(format!(
            "k = {k} < 2^{} * log2({s}) = {:.4}",
            t + 2,
            (1u64 << (t + 2)) as f64 * Log2::of(s as u64).approx()
        )));
    }
    if !density_condition(s, m, t, k) {
        return Err(Error::precondition(format!(
            "m = {m} < 3s(2^{} s log2(s) / k)^{} = {:.4}",
            t + 3,
            t - 2,
            3.0 * s as f64
                * ((1u64 << (t + 3)) as f64 * s as f64 * Log2::of(s as u64).approx() / k as f64).powi(t as i32 - 2)
        )));
    }
    Ok(())
}

/// A set of at most `k` vertices spanning at least
/// `|S| + k / (2^(t+1) log2 s)` hyperedges of `g`.
///
/// The witness lists every hyperedge of `g` the set spans and claims its
/// full surplus. In best-effort mode `None` means the recursion ended
/// without a set spanning more hyperedges than it has vertices.
pub fn find_hyper_dense(g: &THypergraph, k: usize, mode: Mode) -> Result<Option<DenseWitness>> {
    let (s, t) = (g.vertex_count(), g.arity());
    match mode {
        Mode::Strict => check_strict_preconditions(g, k)?,
        Mode::BestEffort => {
            if t > MAX_ARITY {
                return Err(Error::precondition(format!("arity t = {t} exceeds {MAX_ARITY}")));
            }
            if s < t {
                return Err(Error::precondition(format!("cannot pad to t = {t} vertices with only s = {s}")));
            }
            if s < 2 || k == 0 {
                return Ok(None);
            }
        }
    }
    let Some(set) = recurse(g, k, mode)? else {
        return Ok(None);
    };
    let witness = DenseWitness::spanning(g, set)?;
    match mode {
        Mode::Strict => {
            if witness.size() > k {
                return Err(Error::internal(format!("witness has {} > k = {k} vertices", witness.size())));
            }
            if !surplus_meets_target(witness.surplus(), s, t, k) {
                return Err(Error::internal(format!(
                    "surplus {} is below k / (2^{} log2 s)",
                    witness.surplus(),
                    t + 1
                )));
            }
            Ok(Some(witness))
        }
        Mode::BestEffort => Ok((witness.surplus() >= 1).then_some(witness)),
    }
}

fn strict_check(mode: Mode, ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if mode == Mode::Strict && !ok {
        Err(Error::internal(what()))
    } else {
        Ok(())
    }
}

fn recurse(g: &THypergraph, k: usize, mode: Mode) -> Result<Option<Vec<VertexId>>> {
    let (s, t) = (g.vertex_count(), g.arity());
    let log = Log2::of(s as u64);
    if s < t {
        return match mode {
            Mode::Strict => Err(Error::internal(format!("s = {s} < t = {t} inside the recursion"))),
            Mode::BestEffort => Ok(None),
        };
    }
    let padded = pad_to_uniform(g)?;
    if t == 2 {
        let graph = padded.to_multigraph()?;
        let target = log.ceil_quotient(k as u64, 8);
        return match mode {
            Mode::Strict => {
                let w = find_gap_set(&graph, target).map_err(|e| match e {
                    Error::Precondition(why) => Error::internal(format!("base case precondition failed: {why}")),
                    other => other,
                })?;
                strict_check(mode, w.size() <= k, || {
                    format!("gap set of size {} exceeds the budget k = {k}", w.size())
                })?;
                Ok(Some(w.vertices))
            }
            Mode::BestEffort => Ok(gap_search_best_effort(&graph, target)?.map(|w| w.vertices)),
        };
    }
    let mut l = log.ceil_quotient(k as u64, 1 << (t + 3)) as usize;
    match mode {
        Mode::Strict => {
            strict_check(mode, 4 * l <= k, || format!("l = {l} > k / 4 = {k} / 4"))?;
            strict_check(mode, 2 * (k - l) >= k, || format!("k - l = {} < k / 2", k - l))?;
            strict_check(mode, log.at_most(BigInt::from(k), pow2(t + 2) * BigInt::from(l)), || {
                format!("l = {l} > k / (2^{} log2 s)", t + 2)
            })?;
        }
        Mode::BestEffort => {
            if k < 2 {
                return Ok(None);
            }
            l = l.min(s).min(k - 1);
        }
    }
    let heavy = select_heavy_set(&padded, l)?;
    let m = padded.edge_count();
    strict_check(mode, heavy.meets_guarantee(s, m), || {
        format!("heavy set touches {} < l m / s edges", heavy.touched.len())
    })?;
    strict_check(mode, density_condition(s, heavy.touched.len(), t - 1, k - l), || {
        format!("peeled graph fails the density condition at t = {}", t - 1)
    })?;
    let (peeled, _) = peel(&padded, &heavy)?;
    let Some(mut set) = recurse(&peeled, k - l, mode)? else {
        return Ok(None);
    };
    set.extend(heavy.vertices);
    set.sort_unstable();
    set.dedup();
    Ok(Some(set))
}
