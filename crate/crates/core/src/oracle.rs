//! Brute-force ground truth for small instances.
//!
//! Nothing here shares code with the finders beyond the graph types; the
//! point is to be obviously correct, not fast.

use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::graph::{membership, EdgeId, EdgeList, Multigraph, VertexId};

/// Default cap on subset evaluations.
pub const DEFAULT_BUDGET: u128 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(String),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => write!(f, "valid"),
            Verdict::Invalid(reason) => write!(f, "invalid: {reason}"),
        }
    }
}

/// Valid iff every listed edge is spanned by the listed vertices, nothing is
/// listed twice and `|spanned| - |vertices| >= gap`.
pub fn verify_witness<G: EdgeList + ?Sized>(g: &G, w: &crate::graph::DenseWitness) -> Verdict {
    let inside = match membership(g.vertex_count(), &w.vertices) {
        Ok(inside) => inside,
        Err(e) => return Verdict::Invalid(e.to_string()),
    };
    if inside.iter().filter(|&&x| x).count() != w.vertices.len() {
        return Verdict::Invalid("a vertex is listed twice".into());
    }
    let mut listed = vec![false; g.edge_count()];
    for &e in &w.spanned {
        if e >= g.edge_count() {
            return Verdict::Invalid(format!("edge {e} does not exist"));
        }
        if std::mem::replace(&mut listed[e], true) {
            return Verdict::Invalid(format!("edge {e} is listed twice"));
        }
        if let Some(v) = g.edge(e).iter().find(|&&v| !inside[v]) {
            return Verdict::Invalid(format!("edge {e} is not spanned: vertex {v} is outside the set"));
        }
    }
    let surplus = Rational64::from_integer(w.spanned.len() as i64 - w.vertices.len() as i64);
    if surplus < w.gap {
        return Verdict::Invalid(format!("surplus {surplus} is below the claimed gap {}", w.gap));
    }
    Verdict::Valid
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

fn check_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::Budget { needed, budget })
    } else {
        Ok(())
    }
}

/// Distinct vertices of each edge, and the edges touching each vertex.
fn incidence<G: EdgeList + ?Sized>(g: &G) -> (Vec<usize>, Vec<Vec<EdgeId>>) {
    let mut sizes = Vec::with_capacity(g.edge_count());
    let mut touching = vec![Vec::new(); g.vertex_count()];
    for e in 0..g.edge_count() {
        let mut vs = g.edge(e).to_vec();
        vs.sort_unstable();
        vs.dedup();
        sizes.push(vs.len());
        for v in vs {
            touching[v].push(e);
        }
    }
    (sizes, touching)
}

/// Incremental span counter: how many vertices of each edge are selected.
struct SpanCounter {
    sizes: Vec<usize>,
    touching: Vec<Vec<EdgeId>>,
    hits: Vec<usize>,
    spanned: usize,
    selected: usize,
}

impl SpanCounter {
    fn new<G: EdgeList + ?Sized>(g: &G) -> Self {
        let (sizes, touching) = incidence(g);
        SpanCounter {
            hits: vec![0; sizes.len()],
            sizes,
            touching,
            spanned: 0,
            selected: 0,
        }
    }

    fn insert(&mut self, v: VertexId) {
        self.selected += 1;
        for &e in &self.touching[v] {
            self.hits[e] += 1;
            if self.hits[e] == self.sizes[e] {
                self.spanned += 1;
            }
        }
    }

    fn remove(&mut self, v: VertexId) {
        self.selected -= 1;
        for &e in &self.touching[v] {
            if self.hits[e] == self.sizes[e] {
                self.spanned -= 1;
            }
            self.hits[e] -= 1;
        }
    }

    fn surplus(&self) -> i64 {
        self.spanned as i64 - self.selected as i64
    }
}

/// Maximum of `|spanned(S)| - |S|` over all `S` with `|S| <= k_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestGap {
    pub vertices: Vec<VertexId>,
    pub gap: i64,
}

/// Enumerates every vertex subset in Gray-code order, updating the span
/// count by one vertex per step. Ties go to the smaller set, then to the
/// lexicographically smaller one. The empty set (gap 0) takes part.
pub fn brute_force_best_gap<G: EdgeList + ?Sized>(g: &G, k_max: usize, budget: u128) -> Result<BestGap> {
    let s = g.vertex_count();
    if s >= 63 {
        return Err(Error::Budget {
            needed: u128::MAX,
            budget,
        });
    }
    check_budget(1u128 << s, budget)?;
    let mut counter = SpanCounter::new(g);
    let mut mask: u64 = 0;
    let (mut best_mask, mut best_gap, mut best_size) = (0u64, 0i64, 0usize);
    for i in 1u64..(1u64 << s) {
        let v = i.trailing_zeros() as usize;
        mask ^= 1 << v;
        if mask & (1 << v) != 0 {
            counter.insert(v);
        } else {
            counter.remove(v);
        }
        let size = counter.selected;
        if size > k_max {
            continue;
        }
        let gap = counter.surplus();
        let better = gap > best_gap
            || gap == best_gap && (size < best_size || size == best_size && lex_smaller(mask, best_mask));
        if better {
            (best_mask, best_gap, best_size) = (mask, gap, size);
        }
    }
    Ok(BestGap {
        vertices: (0..s).filter(|&v| best_mask & (1 << v) != 0).collect(),
        gap: best_gap,
    })
}

/// For equal-size sets, is the sorted list of `a` lexicographically before `b`?
fn lex_smaller(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a & diff & diff.wrapping_neg() != 0
}

/// Which side of the search space [`exists_k_spanning_k`] walks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// All `k`-subsets of vertices.
    Vertices,
    /// All sets of `k` edges whose union has at most `k` vertices.
    Edges,
}

/// Is there a set of exactly `k` vertices spanning at least `k` edges?
///
/// Such a set exists iff `k <= s` and some `k` edges together touch at most
/// `k` vertices, so the search may walk either vertex subsets or edge
/// subsets; the cheaper route is taken.
pub fn exists_k_spanning_k<G: EdgeList + ?Sized>(g: &G, k: usize, budget: u128) -> Result<bool> {
    let by_vertices = binomial(g.vertex_count() as u64, k as u64);
    let by_edges = binomial(g.edge_count() as u64, k as u64);
    let route = if by_edges < by_vertices { Route::Edges } else { Route::Vertices };
    exists_k_spanning_k_via(g, k, route, budget)
}

pub fn exists_k_spanning_k_via<G: EdgeList + ?Sized>(g: &G, k: usize, route: Route, budget: u128) -> Result<bool> {
    let s = g.vertex_count();
    if k > s {
        return Ok(false);
    }
    if k == 0 {
        return Ok(true);
    }
    match route {
        Route::Vertices => {
            check_budget(binomial(s as u64, k as u64), budget)?;
            let mut counter = SpanCounter::new(g);
            Ok(vertex_search(&mut counter, 0, s, k))
        }
        Route::Edges => {
            check_budget(binomial(g.edge_count() as u64, k as u64), budget)?;
            let (sizes, _) = incidence(g);
            let mut covered = vec![0u32; s];
            Ok(edge_search(g, &sizes, &mut covered, 0, 0, 0, k))
        }
    }
}

fn vertex_search(counter: &mut SpanCounter, from: usize, s: usize, k: usize) -> bool {
    if counter.selected == k {
        return counter.spanned >= k;
    }
    let remaining = k - counter.selected;
    for v in from..=s - remaining {
        counter.insert(v);
        let found = vertex_search(counter, v + 1, s, k);
        counter.remove(v);
        if found {
            return true;
        }
    }
    false
}

fn edge_search<G: EdgeList + ?Sized>(
    g: &G,
    sizes: &[usize],
    covered: &mut [u32],
    from: EdgeId,
    chosen: usize,
    union: usize,
    k: usize,
) -> bool {
    if chosen == k {
        return true;
    }
    for e in from..g.edge_count() {
        if g.edge_count() - e < k - chosen {
            break;
        }
        if sizes[e] > k {
            continue;
        }
        let edge = g.edge(e);
        let fresh = edge
            .iter()
            .enumerate()
            .filter(|&(i, &v)| covered[v] == 0 && !edge[..i].contains(&v))
            .count();
        for &v in edge {
            covered[v] += 1;
        }
        let found = union + fresh <= k && edge_search(g, sizes, covered, e + 1, chosen + 1, union + fresh, k);
        for &v in g.edge(e) {
            covered[v] -= 1;
        }
        if found {
            return true;
        }
    }
    false
}

/// The lexicographically first smallest set spanning at least
/// `|S| + min_surplus` edges, if any.
pub fn smallest_dense_set<G: EdgeList + ?Sized>(g: &G, min_surplus: i64, budget: u128) -> Result<Option<Vec<VertexId>>> {
    let s = g.vertex_count();
    let mut counter = SpanCounter::new(g);
    let mut spent: u128 = 0;
    for size in 0..=s {
        spent = spent.saturating_add(binomial(s as u64, size as u64));
        check_budget(spent, budget)?;
        let mut chosen = Vec::new();
        if sized_search(&mut counter, &mut chosen, 0, s, size, min_surplus) {
            return Ok(Some(chosen));
        }
    }
    Ok(None)
}

fn sized_search(
    counter: &mut SpanCounter,
    chosen: &mut Vec<VertexId>,
    from: usize,
    s: usize,
    size: usize,
    min_surplus: i64,
) -> bool {
    if chosen.len() == size {
        return counter.surplus() >= min_surplus;
    }
    let remaining = size - chosen.len();
    for v in from..=s - remaining {
        counter.insert(v);
        chosen.push(v);
        if sized_search(counter, chosen, v + 1, s, size, min_surplus) {
            counter.remove(v);
            return true;
        }
        chosen.pop();
        counter.remove(v);
    }
    false
}

/// A smallest set of at most `max_size` vertices spanning at least
/// `|S| + min_surplus` edges, for `min_surplus >= 1`.
///
/// A smallest such set is connected (otherwise one of its components
/// would do), so only connected sets are enumerated, size by size.
pub fn smallest_connected_dense_set<G: EdgeList + ?Sized>(
    g: &G,
    min_surplus: i64,
    max_size: usize,
) -> Option<Vec<VertexId>> {
    assert!(min_surplus >= 1);
    let s = g.vertex_count();
    let mut nbrs = vec![Vec::new(); s];
    for e in 0..g.edge_count() {
        for &u in g.edge(e) {
            for &v in g.edge(e) {
                if u != v {
                    nbrs[u].push(v);
                }
            }
        }
    }
    for list in &mut nbrs {
        list.sort_unstable();
        list.dedup();
    }
    let mut search = Connected {
        nbrs,
        counter: SpanCounter::new(g),
        cover: vec![0; s],
        set: Vec::new(),
        min_surplus,
    };
    for size in 1..=max_size.min(s) {
        for v in 0..s {
            search.push(v);
            let ext: Vec<VertexId> = search.nbrs[v].iter().copied().filter(|&u| u > v).collect();
            let found = search.extend(v, ext, size);
            if found {
                let mut set = search.set.clone();
                set.sort_unstable();
                return Some(set);
            }
            search.pop();
        }
    }
    None
}

/// Enumeration of connected vertex sets in which each set is produced
/// once, grown from its smallest vertex.
struct Connected {
    nbrs: Vec<Vec<VertexId>>,
    counter: SpanCounter,
    /// How many members of `set` are equal or adjacent to each vertex.
    cover: Vec<u32>,
    set: Vec<VertexId>,
    min_surplus: i64,
}

impl Connected {
    fn push(&mut self, w: VertexId) {
        self.set.push(w);
        self.counter.insert(w);
        self.cover[w] += 1;
        for &u in &self.nbrs[w] {
            self.cover[u] += 1;
        }
    }

    fn pop(&mut self) {
        let w = self.set.pop().expect("nonempty");
        self.counter.remove(w);
        self.cover[w] -= 1;
        for &u in &self.nbrs[w] {
            self.cover[u] -= 1;
        }
    }

    /// Leaves the found set in `self.set` on success.
    fn extend(&mut self, root: VertexId, mut ext: Vec<VertexId>, size: usize) -> bool {
        if self.set.len() == size {
            return self.counter.surplus() >= self.min_surplus;
        }
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            next.extend(self.nbrs[w].iter().copied().filter(|&u| u > root && self.cover[u] == 0));
            self.push(w);
            if self.extend(root, next, size) {
                return true;
            }
            self.pop();
        }
        false
    }
}

/// Length `k + l` of the shortest path-plus-cycle from `start`, by
/// enumerating every simple path and every simple cycle at its end.
pub fn shortest_tadpole(g: &Multigraph, start: VertexId) -> Option<usize> {
    let adj = g.adjacency();
    let mut on_path = vec![false; g.vertex_count()];
    let mut used = vec![false; g.edge_count()];
    on_path[start] = true;
    let mut best = None;
    extend_path(&adj, start, 1, &mut on_path, &mut used, &mut best);
    best
}

fn extend_path(
    adj: &[Vec<(VertexId, EdgeId)>],
    end: VertexId,
    k: usize,
    on_path: &mut [bool],
    used: &mut [bool],
    best: &mut Option<usize>,
) {
    if let Some(l) = shortest_cycle_at(adj, end, on_path, used) {
        if best.is_none_or(|b| k + l < b) {
            *best = Some(k + l);
        }
    }
    for &(w, e) in &adj[end] {
        if on_path[w] || used[e] {
            continue;
        }
        on_path[w] = true;
        used[e] = true;
        extend_path(adj, w, k + 1, on_path, used, best);
        on_path[w] = false;
        used[e] = false;
    }
}

/// Shortest simple cycle through `at` that avoids the other path vertices
/// and the path edges.
fn shortest_cycle_at(adj: &[Vec<(VertexId, EdgeId)>], at: VertexId, on_path: &[bool], used: &[bool]) -> Option<usize> {
    let mut in_cycle = vec![false; adj.len()];
    in_cycle[at] = true;
    let mut best = None;
    cycle_walk(adj, at, at, None, 1, on_path, used, &mut in_cycle, &mut best);
    best
}

#[allow(clippy::too_many_arguments)]
fn cycle_walk(
    adj: &[Vec<(VertexId, EdgeId)>],
    origin: VertexId,
    cur: VertexId,
    first_edge: Option<EdgeId>,
    len: usize,
    on_path: &[bool],
    used: &[bool],
    in_cycle: &mut [bool],
    best: &mut Option<usize>,
) {
    for &(w, e) in &adj[cur] {
        if used[e] {
            continue;
        }
        if w == origin {
            // Going back along the first edge is not a cycle.
            if first_edge != Some(e) && best.is_none_or(|b| len < b) {
                *best = Some(len);
            }
            continue;
        }
        if in_cycle[w] || on_path[w] {
            continue;
        }
        in_cycle[w] = true;
        cycle_walk(adj, origin, w, first_edge.or(Some(e)), len + 1, on_path, used, in_cycle, best);
        in_cycle[w] = false;
    }
}
