//! Short path-plus-cycle structures found by breadth-first search.
//!
//! In a multigraph where the start vertex has degree at least one and every
//! other vertex has degree at least three, the BFS tree from the start grows
//! at least geometrically, so the first level at which a non-tree edge
//! appears is below `log2(s) + 2`. That non-tree edge closes a cycle through
//! its two tree paths; walking up from the cycle's highest vertex gives the
//! path. Together they satisfy `k + l <= 4 * log2(s)`.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeList, Multigraph, VertexId};
use crate::log2::Log2;

/// A path `p_1..p_k` from the start vertex ending at `c_1`, and a cycle
/// `c_1..c_l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tadpole {
    pub path: Vec<VertexId>,
    /// `path_edges[i]` joins `path[i]` and `path[i + 1]`.
    pub path_edges: Vec<EdgeId>,
    pub cycle: Vec<VertexId>,
    /// `cycle_edges[i]` joins `cycle[i]` and `cycle[(i + 1) % l]`.
    pub cycle_edges: Vec<EdgeId>,
}

impl Tadpole {
    /// `k + l`.
    pub fn length(&self) -> usize {
        self.path.len() + self.cycle.len()
    }

    /// Checks every structural property against `g`, including the
    /// `4 * log2(s)` length bound.
    pub fn validate(&self, g: &Multigraph, start: VertexId) -> std::result::Result<(), String> {
        let (k, l) = (self.path.len(), self.cycle.len());
        if k == 0 || l == 0 {
            return Err("path and cycle must both be nonempty".into());
        }
        if self.path[0] != start {
            return Err(format!("path starts at {}, not {start}", self.path[0]));
        }
        if self.path[k - 1] != self.cycle[0] {
            return Err("path does not end at the first cycle vertex".into());
        }
        if self.path_edges.len() != k - 1 || self.cycle_edges.len() != l {
            return Err("edge counts do not match vertex counts".into());
        }
        let joins = |e: EdgeId, a: VertexId, b: VertexId| {
            e < g.edge_count() && {
                let (u, v) = g.endpoints(e);
                (u, v) == (a.min(b), a.max(b))
            }
        };
        for (i, &e) in self.path_edges.iter().enumerate() {
            if !joins(e, self.path[i], self.path[i + 1]) {
                return Err(format!("path edge {e} does not join {} and {}", self.path[i], self.path[i + 1]));
            }
        }
        for (i, &e) in self.cycle_edges.iter().enumerate() {
            let (a, b) = (self.cycle[i], self.cycle[(i + 1) % l]);
            if !joins(e, a, b) {
                return Err(format!("cycle edge {e} does not join {a} and {b}"));
            }
        }
        let mut vertices: Vec<VertexId> = self.path.iter().chain(&self.cycle).copied().collect();
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.len() != k + l - 1 {
            return Err("path and cycle vertices are not distinct apart from the meeting point".into());
        }
        let mut edges: Vec<EdgeId> = self.path_edges.iter().chain(&self.cycle_edges).copied().collect();
        edges.sort_unstable();
        edges.dedup();
        if edges.len() != k - 1 + l {
            return Err("an edge is used twice".into());
        }
        if !Log2::of(g.vertex_count() as u64).bounds((k + l) as u64, 4) {
            return Err(format!("k + l = {} exceeds 4 * log2({})", k + l, g.vertex_count()));
        }
        Ok(())
    }
}

/// Checks the degree hypotheses: `s >= 2`, `deg(start) >= 1` and
/// `deg(u) >= 3` for every other vertex.
pub fn check_tadpole_preconditions(g: &Multigraph, start: VertexId) -> Result<()> {
    let s = g.vertex_count();
    if s < 2 {
        return Err(Error::precondition(format!("need at least 2 vertices, graph has {s}")));
    }
    if start >= s {
        return Err(Error::invalid(format!("start vertex {start} is not below s = {s}")));
    }
    let deg = g.degrees();
    if deg[start] == 0 {
        return Err(Error::precondition(format!("start vertex {start} is isolated")));
    }
    if let Some(u) = (0..s).find(|&u| u != start && deg[u] < 3) {
        return Err(Error::precondition(format!("vertex {u} has degree {} < 3", deg[u])));
    }
    Ok(())
}

/// BFS tadpole from `start`; see the module docs.
pub fn find_tadpole(g: &Multigraph, start: VertexId) -> Result<Tadpole> {
    check_tadpole_preconditions(g, start)?;
    let tadpole = bfs_tadpole(g, start)
        .ok_or_else(|| Error::internal("BFS exhausted the component without closing a cycle"))?;
    if let Err(why) = tadpole.validate(g, start) {
        return Err(Error::internal(format!("BFS tadpole failed validation: {why}")));
    }
    Ok(tadpole)
}

struct Tree {
    level: Vec<usize>,
    parent: Vec<Option<(VertexId, EdgeId)>>,
}

impl Tree {
    fn is_tree_edge(&self, e: EdgeId, a: VertexId, b: VertexId) -> bool {
        self.parent[a].is_some_and(|(_, pe)| pe == e) || self.parent[b].is_some_and(|(_, pe)| pe == e)
    }

    /// Cycle closed by the non-tree edge `e = {a, b}`, starting at the
    /// highest vertex.
    fn cycle(&self, e: EdgeId, a: VertexId, b: VertexId) -> (Vec<VertexId>, Vec<EdgeId>) {
        if a == b {
            return (vec![a], vec![e]);
        }
        let (mut x, mut y) = (a, b);
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        while x != y {
            if self.level[x] >= self.level[y] {
                let (p, pe) = self.parent[x].expect("non-root has a parent");
                xs.push((x, pe));
                x = p;
            } else {
                let (p, pe) = self.parent[y].expect("non-root has a parent");
                ys.push((y, pe));
                y = p;
            }
        }
        let top = x;
        let mut vertices = vec![top];
        let mut edges = Vec::new();
        for &(v, pe) in xs.iter().rev() {
            vertices.push(v);
            edges.push(pe);
        }
        edges.push(e);
        for &(v, pe) in &ys {
            vertices.push(v);
            edges.push(pe);
        }
        (vertices, edges)
    }

    fn path_to(&self, v: VertexId) -> (Vec<VertexId>, Vec<EdgeId>) {
        let mut vertices = vec![v];
        let mut edges = Vec::new();
        let mut cur = v;
        while let Some((p, pe)) = self.parent[cur] {
            vertices.push(p);
            edges.push(pe);
            cur = p;
        }
        vertices.reverse();
        edges.reverse();
        (vertices, edges)
    }
}

/// Level-synchronous BFS. After each new level is attached, every non-tree
/// edge touching that level closes a cycle inside the levels seen so far;
/// the cycle with the smallest top vertex wins, then the shorter one, then
/// the smaller closing edge id. Returns `None` if the component of `start`
/// is a tree.
/// Top vertex, cycle length, closing edge.
type CycleKey = (VertexId, usize, EdgeId);

fn bfs_tadpole(g: &Multigraph, start: VertexId) -> Option<Tadpole> {
    const UNSEEN: usize = usize::MAX;
    let adj = g.adjacency();
    let mut tree = Tree {
        level: vec![UNSEEN; g.vertex_count()],
        parent: vec![None; g.vertex_count()],
    };
    tree.level[start] = 1;
    let mut frontier = vec![start];
    loop {
        let mut best: Option<(CycleKey, Vec<VertexId>, Vec<EdgeId>)> = None;
        for &u in &frontier {
            for &(w, e) in &adj[u] {
                if tree.level[w] == UNSEEN || tree.is_tree_edge(e, u, w) {
                    continue;
                }
                // An edge inside the frontier is seen from both ends.
                if tree.level[w] == tree.level[u] && w < u {
                    continue;
                }
                let (cycle, cycle_edges) = tree.cycle(e, u, w);
                let key = (cycle[0], cycle.len(), e);
                if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                    best = Some((key, cycle, cycle_edges));
                }
            }
        }
        if let Some((_, cycle, cycle_edges)) = best {
            let (path, path_edges) = tree.path_to(cycle[0]);
            return Some(Tadpole {
                path,
                path_edges,
                cycle,
                cycle_edges,
            });
        }
        let mut next = Vec::new();
        for &u in &frontier {
            for &(w, e) in &adj[u] {
                if tree.level[w] == UNSEEN {
                    tree.level[w] = tree.level[u] + 1;
                    tree.parent[w] = Some((u, e));
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        frontier = next;
    }
}
