//! Vertex sets spanning more edges than vertices in multigraphs with
//! `m >= s(1 + eps)`.
//!
//! The search runs in three stages:
//!
//! 1. [`reduce_to_min_degree_three`] strips isolated vertices, pendant
//!    vertices, vertices carrying only a self-loop and long chains of
//!    degree-two vertices, then contracts every remaining (short) chain into
//!    a single edge. None of the removals lowers `m / s` while `m / s >= 1 + eps`.
//! 2. In the reduced graph a BFS tadpole from the lowest vertex yields a
//!    cycle `C`. If `C` is a whole component it already spans `|C| + 1`
//!    edges. Otherwise `C` is merged into one vertex and a second tadpole
//!    from the merged vertex gives two cycles joined by a path.
//! 3. [`expand_witness`] maps the set back, re-inserting the chain vertices
//!    of `|S'| + 1` spanned edges. Every re-inserted chain adds as many
//!    edges as vertices, so the surplus survives.

use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::graph::{contract, spanned_edges, DenseWitness, EdgeId, EdgeList, Multigraph, VertexId};
use crate::log2::Log2;
use crate::tadpole::find_tadpole;

/// The density slack `eps`, a rational in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensityParams {
    epsilon: Rational64,
}

impl DensityParams {
    pub fn new(epsilon: Rational64) -> Result<Self> {
        let zero = Rational64::from_integer(0);
        let one = Rational64::from_integer(1);
        if epsilon <= zero || epsilon > one {
            return Err(Error::precondition(format!("epsilon = {epsilon} is outside (0, 1]")));
        }
        Ok(DensityParams { epsilon })
    }

    pub fn epsilon(&self) -> Rational64 {
        self.epsilon
    }

    /// `ceil(1 / eps)`.
    pub fn ceil_inverse(&self) -> usize {
        let inv = self.epsilon.recip();
        inv.ceil().to_integer() as usize
    }

    /// `m >= s(1 + eps)`, exactly.
    pub fn dense_enough(&self, s: usize, m: usize) -> bool {
        let (n, d) = (*self.epsilon.numer() as i128, *self.epsilon.denom() as i128);
        m as i128 * d >= s as i128 * (d + n)
    }
}

/// One rewrite performed by [`reduce_to_min_degree_three`]. Vertex ids are
/// original ids; edge ids below the original edge count are original edges,
/// larger ids name edges created by [`ReductionStep::ContractPath`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ReductionStep {
    RemoveIsolated { vertex: VertexId },
    RemoveDegreeOne { vertex: VertexId, edge: EdgeId },
    RemoveLoopOnly { vertex: VertexId, edge: EdgeId },
    /// Internal vertices and edges of a maximal degree-two chain with at
    /// least `ceil(1/eps)` internal vertices, or of a component that is a
    /// bare cycle.
    RemoveLongPath { vertices: Vec<VertexId>, edges: Vec<EdgeId> },
    /// Replaces the chain `ends[0] - vertices... - ends[1]` by `edge`.
    ContractPath {
        edge: EdgeId,
        ends: [VertexId; 2],
        vertices: Vec<VertexId>,
        edges: Vec<EdgeId>,
    },
}

/// Replayable record of a reduction, plus the index maps from the reduced
/// graph back to the original.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionLog {
    params: DensityParams,
    original_vertices: usize,
    original_edges: usize,
    steps: Vec<ReductionStep>,
    reduced: Multigraph,
    vertex_origin: Vec<VertexId>,
    edge_origin: Vec<EdgeId>,
}

impl ContractionLog {
    pub fn steps(&self) -> &[ReductionStep] {
        &self.steps
    }

    pub fn params(&self) -> DensityParams {
        self.params
    }

    pub fn reduced(&self) -> &Multigraph {
        &self.reduced
    }

    /// Original vertex behind reduced vertex `v`.
    pub fn vertex_origin(&self, v: VertexId) -> VertexId {
        self.vertex_origin[v]
    }

    /// Original chain vertices and original edges behind reduced edge `e`.
    pub fn expansion(&self, e: EdgeId) -> (&[VertexId], Vec<EdgeId>) {
        let working = self.edge_origin[e];
        if working < self.original_edges {
            return (&[], vec![working]);
        }
        for step in &self.steps {
            if let ReductionStep::ContractPath { edge, vertices, edges, .. } = step {
                if *edge == working {
                    return (vertices, edges.clone());
                }
            }
        }
        unreachable!("contracted edge {working} has no ContractPath step")
    }

    /// Replays the steps on `original`, returning the reduced graph and the
    /// `(s, m)` counts after each step.
    pub fn replay(&self, original: &Multigraph) -> Result<(Multigraph, Vec<(usize, usize)>)> {
        if original.vertex_count() != self.original_vertices || original.edge_count() != self.original_edges {
            return Err(Error::invalid("log was recorded on a graph of a different size"));
        }
        let mut w = Working::new(original);
        let mut counts = Vec::with_capacity(self.steps.len());
        for step in &self.steps {
            w.apply(step)?;
            counts.push((w.live_vertices, w.live_edges));
        }
        let (reduced, vertex_origin, edge_origin) = w.finish()?;
        if vertex_origin != self.vertex_origin || edge_origin != self.edge_origin {
            return Err(Error::invalid("replay produced different index maps"));
        }
        Ok((reduced, counts))
    }
}

/// Mutable graph with tombstones, used while reducing.
struct Working {
    ends: Vec<[VertexId; 2]>,
    edge_alive: Vec<bool>,
    vertex_alive: Vec<bool>,
    incident: Vec<Vec<EdgeId>>,
    degree: Vec<usize>,
    live_vertices: usize,
    live_edges: usize,
}

/// A maximal chain of degree-two vertices.
struct Chain {
    internal: Vec<VertexId>,
    edges: Vec<EdgeId>,
    /// `None` when the chain closes on itself (a bare cycle component).
    ends: Option<[VertexId; 2]>,
}

impl Working {
    fn new(g: &Multigraph) -> Self {
        Working {
            ends: g.edges().to_vec(),
            edge_alive: vec![true; g.edge_count()],
            vertex_alive: vec![true; g.vertex_count()],
            incident: g.incidence(),
            degree: g.degrees(),
            live_vertices: g.vertex_count(),
            live_edges: g.edge_count(),
        }
    }

    fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [a, b] = self.ends[e];
        if a == v {
            b
        } else {
            a
        }
    }

    fn live_incident(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.incident[v].iter().copied().filter(|&e| self.edge_alive[e])
    }

    fn remove_edge(&mut self, e: EdgeId) -> Result<()> {
        if e >= self.ends.len() || !self.edge_alive[e] {
            return Err(Error::invalid(format!("edge {e} is not present")));
        }
        self.edge_alive[e] = false;
        let [a, b] = self.ends[e];
        self.degree[a] -= 1;
        self.degree[b] -= 1;
        self.live_edges -= 1;
        Ok(())
    }

    fn remove_vertex(&mut self, v: VertexId) -> Result<()> {
        if v >= self.vertex_alive.len() || !self.vertex_alive[v] {
            return Err(Error::invalid(format!("vertex {v} is not present")));
        }
        if self.degree[v] != 0 {
            return Err(Error::invalid(format!("vertex {v} still has degree {}", self.degree[v])));
        }
        self.vertex_alive[v] = false;
        self.live_vertices -= 1;
        Ok(())
    }

    fn add_edge(&mut self, a: VertexId, b: VertexId) -> EdgeId {
        let e = self.ends.len();
        self.ends.push([a.min(b), a.max(b)]);
        self.edge_alive.push(true);
        self.incident[a].push(e);
        if a != b {
            self.incident[b].push(e);
        }
        self.degree[a] += 1;
        self.degree[b] += 1;
        self.live_edges += 1;
        e
    }

    /// Follows degree-two vertices from `start` along `via`; returns the
    /// internal vertices passed, the edges used and where the walk stopped.
    fn walk(&self, start: VertexId, via: EdgeId) -> (Vec<VertexId>, Vec<EdgeId>, VertexId) {
        let (mut internal, mut edges) = (Vec::new(), Vec::new());
        let (mut cur, mut e) = (start, via);
        loop {
            edges.push(e);
            let next = self.other_end(e, cur);
            if next == start || self.degree[next] != 2 {
                return (internal, edges, next);
            }
            internal.push(next);
            e = self
                .live_incident(next)
                .find(|&f| f != e)
                .expect("degree-two vertex has a second edge");
            cur = next;
        }
    }

    /// The maximal chain through the degree-two, loop-free vertex `v`.
    fn chain(&self, v: VertexId) -> Chain {
        let mut around = self.live_incident(v);
        let (first, second) = (around.next().unwrap(), around.next().unwrap());
        let (fwd_internal, fwd_edges, fwd_end) = self.walk(v, first);
        if fwd_end == v {
            let mut internal = vec![v];
            internal.extend(fwd_internal);
            return Chain {
                internal,
                edges: fwd_edges,
                ends: None,
            };
        }
        let (back_internal, back_edges, back_end) = self.walk(v, second);
        let mut internal: Vec<VertexId> = back_internal.into_iter().rev().collect();
        internal.push(v);
        internal.extend(fwd_internal);
        let mut edges: Vec<EdgeId> = back_edges.into_iter().rev().collect();
        edges.extend(fwd_edges);
        Chain {
            internal,
            edges,
            ends: Some([back_end, fwd_end]),
        }
    }

    fn has_loop(&self, v: VertexId) -> Option<EdgeId> {
        self.live_incident(v).find(|&e| self.ends[e] == [v, v])
    }

    /// Next removal by priority isolated > degree-one > loop-only >
    /// long chain, lowest vertex id first within each class.
    fn next_removal(&self, min_internal: usize) -> Option<ReductionStep> {
        let live = || (0..self.vertex_alive.len()).filter(|&v| self.vertex_alive[v]);
        if let Some(vertex) = live().find(|&v| self.degree[v] == 0) {
            return Some(ReductionStep::RemoveIsolated { vertex });
        }
        if let Some(vertex) = live().find(|&v| self.degree[v] == 1) {
            let edge = self.live_incident(vertex).next().unwrap();
            return Some(ReductionStep::RemoveDegreeOne { vertex, edge });
        }
        for v in live().filter(|&v| self.degree[v] == 2) {
            if let Some(edge) = self.has_loop(v) {
                return Some(ReductionStep::RemoveLoopOnly { vertex: v, edge });
            }
        }
        for v in live().filter(|&v| self.degree[v] == 2) {
            let chain = self.chain(v);
            if chain.ends.is_none() || chain.internal.len() >= min_internal {
                let mut vertices = chain.internal;
                vertices.sort_unstable();
                return Some(ReductionStep::RemoveLongPath {
                    vertices,
                    edges: chain.edges,
                });
            }
        }
        None
    }

    fn apply(&mut self, step: &ReductionStep) -> Result<()> {
        match step {
            ReductionStep::RemoveIsolated { vertex } => self.remove_vertex(*vertex),
            ReductionStep::RemoveDegreeOne { vertex, edge } | ReductionStep::RemoveLoopOnly { vertex, edge } => {
                self.remove_edge(*edge)?;
                self.remove_vertex(*vertex)
            }
            ReductionStep::RemoveLongPath { vertices, edges } => {
                for &e in edges {
                    self.remove_edge(e)?;
                }
                vertices.iter().try_for_each(|&v| self.remove_vertex(v))
            }
            ReductionStep::ContractPath {
                edge,
                ends,
                vertices,
                edges,
            } => {
                for &e in edges {
                    self.remove_edge(e)?;
                }
                vertices.iter().try_for_each(|&v| self.remove_vertex(v))?;
                let created = self.add_edge(ends[0], ends[1]);
                if created != *edge {
                    return Err(Error::invalid(format!("step names edge {edge}, replay created {created}")));
                }
                Ok(())
            }
        }
    }

    /// Compacts the surviving vertices and edges into a fresh multigraph.
    fn finish(&self) -> Result<(Multigraph, Vec<VertexId>, Vec<EdgeId>)> {
        let vertex_origin: Vec<VertexId> = (0..self.vertex_alive.len()).filter(|&v| self.vertex_alive[v]).collect();
        let mut new_id = vec![usize::MAX; self.vertex_alive.len()];
        for (i, &v) in vertex_origin.iter().enumerate() {
            new_id[v] = i;
        }
        let edge_origin: Vec<EdgeId> = (0..self.ends.len()).filter(|&e| self.edge_alive[e]).collect();
        let edges = edge_origin.iter().map(|&e| {
            let [a, b] = self.ends[e];
            (new_id[a], new_id[b])
        });
        let graph = Multigraph::new(vertex_origin.len(), edges)?;
        Ok((graph, vertex_origin, edge_origin))
    }
}

/// Applies the four removal rules until none applies, then contracts every
/// maximal chain of degree-two vertices into one edge. The result has
/// minimum degree three (or is empty), and every contracted chain has at
/// most `ceil(1/eps)` edges.
pub fn reduce_to_min_degree_three(g: &Multigraph, params: DensityParams) -> Result<(Multigraph, ContractionLog)> {
    let min_internal = params.ceil_inverse();
    let mut w = Working::new(g);
    let mut steps = Vec::new();
    while let Some(step) = w.next_removal(min_internal) {
        w.apply(&step)?;
        steps.push(step);
    }
    for v in 0..g.vertex_count() {
        if !w.vertex_alive[v] || w.degree[v] != 2 {
            continue;
        }
        let chain = w.chain(v);
        let ends = chain.ends.expect("bare cycles were removed");
        let step = ReductionStep::ContractPath {
            edge: w.ends.len(),
            ends,
            vertices: chain.internal,
            edges: chain.edges,
        };
        w.apply(&step)?;
        steps.push(step);
    }
    let (reduced, vertex_origin, edge_origin) = w.finish()?;
    let log = ContractionLog {
        params,
        original_vertices: g.vertex_count(),
        original_edges: g.edge_count(),
        steps,
        reduced: reduced.clone(),
        vertex_origin,
        edge_origin,
    };
    Ok((reduced, log))
}

/// Lifts a set of reduced vertices and reduced edges it spans back to the
/// original graph. Each listed edge that came from a contracted chain
/// contributes its chain vertices and all chain edges.
pub fn expand_witness(log: &ContractionLog, vertices: &[VertexId], edges: &[EdgeId]) -> Result<DenseWitness> {
    let reduced = &log.reduced;
    let spanned = spanned_edges(reduced, vertices)
        .map_err(|e| Error::invalid(format!("witness does not fit the reduced graph: {e}")))?;
    let mut seen = vec![false; reduced.edge_count()];
    for &e in edges {
        if e >= reduced.edge_count() || spanned.binary_search(&e).is_err() {
            return Err(Error::invalid(format!("reduced edge {e} is not spanned by the witness")));
        }
        if std::mem::replace(&mut seen[e], true) {
            return Err(Error::invalid(format!("reduced edge {e} is listed twice")));
        }
    }
    let mut out_vertices: Vec<VertexId> = vertices.iter().map(|&v| log.vertex_origin(v)).collect();
    let mut out_edges = Vec::new();
    for &e in edges {
        let (chain, originals) = log.expansion(e);
        out_vertices.extend_from_slice(chain);
        out_edges.extend(originals);
    }
    out_vertices.sort_unstable();
    out_vertices.dedup();
    out_edges.sort_unstable();
    let gap = Rational64::from_integer(out_edges.len() as i64 - out_vertices.len() as i64);
    Ok(DenseWitness {
        vertices: out_vertices,
        spanned: out_edges,
        gap,
    })
}

/// The size bound `8 * log2(s) * ceil(1/eps)`.
pub fn dense_size_bound_holds(size: usize, s: usize, params: DensityParams) -> bool {
    Log2::of(s.max(1) as u64).bounds(size as u64, 8 * params.ceil_inverse() as u64)
}

fn check_preconditions(g: &Multigraph, params: DensityParams) -> Result<()> {
    let (s, m) = (g.vertex_count(), g.edge_count());
    if s < 2 {
        return Err(Error::precondition(format!("need s >= 2, graph has s = {s}")));
    }
    if !params.dense_enough(s, m) {
        return Err(Error::precondition(format!(
            "m = {m} < s(1 + eps) = {}",
            Rational64::from_integer(s as i64) * (Rational64::from_integer(1) + params.epsilon())
        )));
    }
    Ok(())
}

/// A set `S` with `|S| <= 8 log2(s) ceil(1/eps)` spanning at least `|S| + 1`
/// edges, for `s >= 2` and `m >= s(1 + eps)`.
pub fn find_dense_set(g: &Multigraph, params: DensityParams) -> Result<DenseWitness> {
    check_preconditions(g, params)?;
    let witness = search_dense_set(g, params)?
        .ok_or_else(|| Error::internal("reduction removed every vertex of a graph with m >= s(1 + eps)"))?;
    if !dense_size_bound_holds(witness.size(), g.vertex_count(), params) {
        return Err(Error::internal(format!(
            "witness of size {} exceeds 8 log2({}) ceil(1/eps)",
            witness.size(),
            g.vertex_count()
        )));
    }
    Ok(witness)
}

/// Runs the construction without the density precondition. Returns `None`
/// when the reduction leaves nothing behind.
///
/// With `eps <= 1/(s+1)` no chain is ever long enough to be removed, and
/// the search then succeeds exactly when some component has more edges
/// than vertices.
pub fn search_dense_set(g: &Multigraph, params: DensityParams) -> Result<Option<DenseWitness>> {
    let (reduced, log) = reduce_to_min_degree_three(g, params)?;
    if reduced.vertex_count() == 0 {
        return Ok(None);
    }
    let set = dense_set_in_reduced(&reduced)?;
    let spanned = spanned_edges(&reduced, &set)?;
    let chosen = &spanned[..set.len() + 1];
    let lifted = expand_witness(&log, &set, chosen)?;
    let witness = DenseWitness::spanning(g, lifted.vertices)?;
    if witness.surplus() < 1 {
        return Err(Error::internal("lifted witness lost its surplus"));
    }
    Ok(Some(witness))
}

/// Convenience: [`search_dense_set`] with no chain removal at all.
pub fn search_any_dense_set(g: &Multigraph) -> Result<Option<DenseWitness>> {
    let params = DensityParams::new(Rational64::new(1, g.vertex_count() as i64 + 1))?;
    search_dense_set(g, params)
}

/// The two-case cycle argument on a graph of minimum degree three. The
/// returned set spans at least `|S| + 1` edges of `reduced`.
fn dense_set_in_reduced(reduced: &Multigraph) -> Result<Vec<VertexId>> {
    let s1 = reduced.vertex_count();
    if s1 == 1 {
        // A lone vertex of degree >= 3 carries at least two loops.
        return Ok(vec![0]);
    }
    let first = find_tadpole(reduced, 0)?;
    let cycle = first.cycle;
    let mut inside = vec![false; s1];
    for &v in &cycle {
        inside[v] = true;
    }
    let leaves = reduced.edges().iter().any(|&[u, v]| inside[u] != inside[v]);
    if !leaves {
        return Ok(sorted(cycle));
    }
    let merged = contract(reduced, &cycle, true)?;
    let v2 = merged.vertices.merged();
    let second = find_tadpole(&merged.graph, v2)?;
    let mut set = cycle;
    for w in second.path.iter().chain(&second.cycle) {
        if *w != v2 {
            set.extend(merged.vertices.preimage(*w));
        }
    }
    let set = sorted(set);
    if spanned_edges(reduced, &set)?.len() < set.len() + 1 {
        return Err(Error::internal("two cycles joined by a path span too few edges"));
    }
    Ok(set)
}

fn sorted(mut v: Vec<VertexId>) -> Vec<VertexId> {
    v.sort_unstable();
    v.dedup();
    v
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionStep::RemoveIsolated { vertex } => write!(f, "remove-isolated {vertex}"),
            ReductionStep::RemoveDegreeOne { vertex, edge } => write!(f, "remove-degree-one {vertex} edge {edge}"),
            ReductionStep::RemoveLoopOnly { vertex, edge } => write!(f, "remove-loop-only {vertex} edge {edge}"),
            ReductionStep::RemoveLongPath { vertices, edges } => {
                write!(f, "remove-long-path vertices {vertices:?} edges {edges:?}")
            }
            ReductionStep::ContractPath {
                edge,
                ends,
                vertices,
                edges,
            } => write!(
                f,
                "contract-path {}-{} into edge {edge} vertices {vertices:?} edges {edges:?}",
                ends[0], ends[1]
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::verify_witness;

    fn eps(n: i64, d: i64) -> DensityParams {
        DensityParams::new(Rational64::new(n, d)).unwrap()
    }

    fn k4() -> Multigraph {
        Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// Vertices 0 and 1 joined by three paths through 2, 3 and 4.
    fn theta() -> Multigraph {
        Multigraph::new(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(DensityParams::new(Rational64::from_integer(0)).is_err());
        assert!(DensityParams::new(Rational64::new(3, 2)).is_err());
        assert_eq!(eps(1, 5).ceil_inverse(), 5);
        assert_eq!(eps(2, 5).ceil_inverse(), 3);
        assert!(eps(1, 5).dense_enough(5, 6));
        assert!(!eps(1, 4).dense_enough(5, 6));
    }

    #[test]
    fn isolated_vertex_and_triangle() {
        let g = Multigraph::new(4, [(1, 2), (2, 3), (3, 1)]).unwrap();
        let (reduced, log) = reduce_to_min_degree_three(&g, eps(1, 1)).unwrap();
        assert_eq!(reduced.vertex_count(), 0);
        assert_eq!(log.steps()[0], ReductionStep::RemoveIsolated { vertex: 0 });
        assert_eq!(
            log.steps()[1],
            ReductionStep::RemoveLongPath {
                vertices: vec![1, 2, 3],
                edges: vec![0, 1, 2]
            }
        );
        assert_eq!(log.steps().len(), 2);
    }

    #[test]
    fn pendant_edge_on_k4() {
        // Vertex 0 hangs off vertex 1 of a K4 on {1, 2, 3, 4}.
        let g = Multigraph::new(5, [(0, 1), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        let (reduced, log) = reduce_to_min_degree_three(&g, eps(1, 1)).unwrap();
        assert_eq!(log.steps(), &[ReductionStep::RemoveDegreeOne { vertex: 0, edge: 0 }]);
        assert_eq!(reduced, k4());
        assert!(reduced.degrees().iter().all(|&d| d >= 3));
    }

    #[test]
    fn triple_edge_needs_no_reduction() {
        let g = Multigraph::new(2, [(0, 1), (0, 1), (0, 1)]).unwrap();
        let (reduced, log) = reduce_to_min_degree_three(&g, eps(1, 2)).unwrap();
        assert!(log.steps().is_empty());
        assert_eq!(reduced, g);
    }

    #[test]
    fn theta_contracts_and_expands() {
        let g = theta();
        let (reduced, log) = reduce_to_min_degree_three(&g, eps(1, 5)).unwrap();
        assert_eq!(reduced.vertex_count(), 2);
        assert_eq!(reduced.edges(), &[[0, 1]; 3]);
        assert_eq!(log.steps().len(), 3);
        let w = expand_witness(&log, &[0, 1], &[0, 1, 2]).unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(w.spanned, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(w.surplus(), 1);
        let (replayed, _) = log.replay(&g).unwrap();
        assert_eq!(replayed, reduced);
    }

    #[test]
    fn expand_single_chain_keeps_gap() {
        // Two vertices of degree 3 joined by a triple edge, one strand subdivided.
        let g = Multigraph::new(3, [(0, 1), (0, 1), (0, 2), (2, 1)]).unwrap();
        let (reduced, log) = reduce_to_min_degree_three(&g, eps(1, 2)).unwrap();
        assert_eq!(reduced.edge_count(), 3);
        let before = 3 - 2;
        let w = expand_witness(&log, &[0, 1], &[0, 1, 2]).unwrap();
        assert_eq!(w.size(), 3);
        assert_eq!(w.spanned.len(), 4);
        assert_eq!(w.surplus(), before);
    }

    #[test]
    fn expand_with_empty_log_is_identity() {
        let g = k4();
        let (_, log) = reduce_to_min_degree_three(&g, eps(1, 1)).unwrap();
        assert!(log.steps().is_empty());
        let w = expand_witness(&log, &[0, 1, 2, 3], &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2, 3]);
        assert_eq!(w.spanned, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn expand_rejects_mismatch() {
        let (_, log) = reduce_to_min_degree_three(&k4(), eps(1, 1)).unwrap();
        assert!(expand_witness(&log, &[0, 1], &[5]).is_err());
        assert!(expand_witness(&log, &[9], &[]).is_err());
        assert!(expand_witness(&log, &[0, 1], &[0, 0]).is_err());
    }

    #[test]
    fn find_dense_examples() {
        let g = Multigraph::new(2, [(0, 1), (0, 1), (0, 1)]).unwrap();
        let w = find_dense_set(&g, eps(1, 2)).unwrap();
        assert_eq!(w.vertices, vec![0, 1]);
        assert_eq!(w.spanned.len(), 3);

        let w = find_dense_set(&theta(), eps(1, 5)).unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(w.surplus(), 1);

        let w = find_dense_set(&k4(), eps(1, 2)).unwrap();
        assert!(w.size() <= 16 && w.surplus() >= 1);
        assert!(verify_witness(&k4(), &w).is_valid());
    }

    #[test]
    fn find_dense_precondition_errors() {
        let tri = Multigraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(matches!(find_dense_set(&tri, eps(1, 1)), Err(Error::Precondition(_))));
        let lone = Multigraph::new(1, [(0, 0), (0, 0)]).unwrap();
        assert!(matches!(find_dense_set(&lone, eps(1, 1)), Err(Error::Precondition(_))));
    }

    #[test]
    fn two_cycles_joined_by_path() {
        // Triangles {0,1,2} and {3,4,5} joined by the edge 2-3.
        let g = Multigraph::new(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
        let w = search_any_dense_set(&g).unwrap().unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(w.surplus(), 1);
        assert!(search_any_dense_set(&Multigraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap())
            .unwrap()
            .is_none());
    }

    #[test]
    fn second_tadpole_case_in_reduced_graph() {
        // K4 plus a disjoint triple edge: the first cycle from vertex 0 is
        // not a component; contracting it leaves a vertex with three edges.
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        edges.extend([(4, 5), (4, 5), (4, 5)]);
        let g = Multigraph::new(6, edges).unwrap();
        let w = find_dense_set(&g, eps(1, 2)).unwrap();
        assert!(w.surplus() >= 1);
        assert!(w.vertices.iter().all(|&v| v < 4));
    }
}
