//! Vertex sets spanning at least `|S| + g` edges when `m >= 2s + g + 1`.
//!
//! Built up one unit of gap at a time: contract the current set into a
//! single vertex (dropping the edges it spans), find a dense set of the
//! contracted graph with `eps = 1`, and merge it back.

use num_rational::Rational64;

use crate::dense::{find_dense_set, search_any_dense_set, DensityParams};
use crate::error::{Error, Result};
use crate::graph::{contract, DenseWitness, EdgeList, Multigraph, VertexId};
use crate::log2::Log2;

fn check_preconditions(g: &Multigraph, target: u64) -> Result<()> {
    let (s, m) = (g.vertex_count() as u128, g.edge_count() as u128);
    if target == 0 {
        return Err(Error::precondition("gap must be at least 1"));
    }
    if s < 2 {
        return Err(Error::precondition(format!("need s >= 2, graph has s = {s}")));
    }
    if m < 2 * s + target as u128 + 1 {
        return Err(Error::precondition(format!(
            "m = {m} < 2s + g + 1 = {}",
            2 * s + target as u128 + 1
        )));
    }
    Ok(())
}

/// `|S| <= 8 g log2(s)`.
pub fn gap_size_bound_holds(size: usize, s: usize, target: u64) -> bool {
    Log2::of(s.max(1) as u64).bounds(size as u64, 8 * target)
}

/// A set of at most `8 g log2(s)` vertices spanning at least `|S| + g`
/// edges. The returned witness lists every spanned edge and claims gap `g`.
pub fn find_gap_set(g: &Multigraph, target: u64) -> Result<DenseWitness> {
    let mut trace = find_gap_set_trace(g, target)?;
    let mut last = trace.pop().expect("trace is never empty");
    last.gap = Rational64::from_integer(target as i64);
    Ok(last)
}

/// Every intermediate set of [`find_gap_set`], in order. Each witness
/// claims its own full surplus, and the surpluses strictly increase.
pub fn find_gap_set_trace(g: &Multigraph, target: u64) -> Result<Vec<DenseWitness>> {
    check_preconditions(g, target)?;
    let unit = DensityParams::new(Rational64::from_integer(1))?;
    let mut current = DenseWitness::spanning(g, find_dense_set(g, unit)?.vertices)?;
    let mut trace = vec![current.clone()];
    while (current.surplus() as u64) < target {
        let merged = contract(g, &current.vertices, true)?;
        let found = find_dense_set(&merged.graph, unit).map_err(|e| match e {
            Error::Precondition(why) => Error::internal(format!("contracted graph is too sparse: {why}")),
            other => other,
        })?;
        let mut vertices: Vec<VertexId> = current.vertices.clone();
        for &w in &found.vertices {
            if w != merged.vertices.merged() {
                vertices.extend(merged.vertices.preimage(w));
            }
        }
        let next = DenseWitness::spanning(g, vertices)?;
        if next.surplus() <= current.surplus() {
            return Err(Error::internal("merging a dense set did not raise the surplus"));
        }
        current = next;
        trace.push(current.clone());
    }
    if !gap_size_bound_holds(current.size(), g.vertex_count(), target) {
        return Err(Error::internal(format!(
            "gap set of size {} exceeds 8 * {target} * log2({})",
            current.size(),
            g.vertex_count()
        )));
    }
    Ok(trace)
}

/// Repeats the construction without the density precondition, using
/// [`search_any_dense_set`] at every step. Returns the last set reached,
/// or `None` when not even a unit surplus is found.
pub fn gap_search_best_effort(g: &Multigraph, target: u64) -> Result<Option<DenseWitness>> {
    if g.vertex_count() == 0 {
        return Ok(None);
    }
    let Some(first) = search_any_dense_set(g)? else {
        return Ok(None);
    };
    let mut current = DenseWitness::spanning(g, first.vertices)?;
    while (current.surplus().max(0) as u64) < target {
        let merged = contract(g, &current.vertices, true)?;
        if merged.graph.vertex_count() < 2 {
            break;
        }
        let Some(found) = search_any_dense_set(&merged.graph)? else {
            break;
        };
        let mut vertices = current.vertices.clone();
        for &w in &found.vertices {
            if w != merged.vertices.merged() {
                vertices.extend(merged.vertices.preimage(w));
            }
        }
        let next = DenseWitness::spanning(g, vertices)?;
        if next.surplus() <= current.surplus() {
            break;
        }
        current = next;
    }
    Ok(Some(current))
}
