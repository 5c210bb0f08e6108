//! Edge-list multigraphs and t-hypergraphs, the text format, span counting
//! and vertex-set contraction.
//!
//! Vertices are dense ids `0..s`. Edge ids are positions in the edge list
//! and never change once a graph is built; algorithms that shrink a graph
//! carry explicit maps back to the ids of the graph they started from.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Read access shared by both graph kinds.
pub trait EdgeList {
    fn vertex_count(&self) -> usize;
    fn edge_count(&self) -> usize;
    /// Vertices of edge `e`, ascending. A multigraph self-loop at `v` is `[v, v]`.
    fn edge(&self, e: EdgeId) -> &[VertexId];
}

/// Undirected multigraph; parallel edges and parallel self-loops allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    s: usize,
    edges: Vec<[VertexId; 2]>,
}

impl Multigraph {
    pub fn new(s: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        let mut list = Vec::new();
        for (i, (u, v)) in edges.into_iter().enumerate() {
            if u >= s || v >= s {
                return Err(Error::invalid(format!(
                    "edge {i} = ({u}, {v}) has an endpoint outside 0..{s}"
                )));
            }
            list.push([u.min(v), u.max(v)]);
        }
        Ok(Multigraph { s, edges: list })
    }

    pub fn edges(&self) -> &[[VertexId; 2]] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let [u, v] = self.edges[e];
        (u, v)
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        self.edges[e][0] == self.edges[e][1]
    }

    /// Degrees with every self-loop counted twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.s];
        for &[u, v] in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .map(|&[a, b]| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    /// Incident edge ids per vertex, ascending; a self-loop is listed once.
    pub fn incidence(&self) -> Vec<Vec<EdgeId>> {
        let mut inc = vec![Vec::new(); self.s];
        for (e, &[u, v]) in self.edges.iter().enumerate() {
            inc[u].push(e);
            if u != v {
                inc[v].push(e);
            }
        }
        inc
    }

    /// `(neighbour, edge)` pairs per vertex sorted by neighbour then edge id.
    /// A self-loop at `v` appears once as `(v, e)`.
    pub fn adjacency(&self) -> Vec<Vec<(VertexId, EdgeId)>> {
        let mut adj = vec![Vec::new(); self.s];
        for (e, &[u, v]) in self.edges.iter().enumerate() {
            adj[u].push((v, e));
            if u != v {
                adj[v].push((u, e));
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// The same edges viewed as a 2-hypergraph; self-loops become singletons.
    pub fn to_hypergraph(&self) -> THypergraph {
        THypergraph {
            s: self.s,
            t: 2,
            edges: self
                .edges
                .iter()
                .map(|&[u, v]| if u == v { vec![u] } else { vec![u, v] })
                .collect(),
        }
    }
}

impl EdgeList for Multigraph {
    fn vertex_count(&self) -> usize {
        self.s
    }
    fn edge_count(&self) -> usize {
        self.edges.len()
    }
    fn edge(&self, e: EdgeId) -> &[VertexId] {
        &self.edges[e]
    }
}

/// Hypergraph whose edges hold between 1 and `t` distinct vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct THypergraph {
    s: usize,
    t: usize,
    edges: Vec<Vec<VertexId>>,
}

impl THypergraph {
    pub fn new(s: usize, t: usize, edges: impl IntoIterator<Item = Vec<VertexId>>) -> Result<Self> {
        if t < 2 {
            return Err(Error::invalid(format!("arity bound t = {t} must be at least 2")));
        }
        Self::with_arity(s, t, edges)
    }

    /// Like [`THypergraph::new`] but admits `t = 1`, which only appears as
    /// the result of peeling a 2-hypergraph.
    pub(crate) fn with_arity(
        s: usize,
        t: usize,
        edges: impl IntoIterator<Item = Vec<VertexId>>,
    ) -> Result<Self> {
        let mut list = Vec::new();
        for (i, mut e) in edges.into_iter().enumerate() {
            e.sort_unstable();
            if e.is_empty() {
                return Err(Error::invalid(format!("hyperedge {i} is empty")));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("hyperedge {i} repeats a vertex")));
            }
            if e.len() > t {
                return Err(Error::invalid(format!(
                    "hyperedge {i} has {} vertices, more than t = {t}",
                    e.len()
                )));
            }
            if let Some(&v) = e.last().filter(|&&v| v >= s) {
                return Err(Error::invalid(format!(
                    "hyperedge {i} contains vertex {v} outside 0..{s}"
                )));
            }
            list.push(e);
        }
        Ok(THypergraph { s, t, edges: list })
    }

    pub fn arity(&self) -> usize {
        self.t
    }

    pub fn edges(&self) -> &[Vec<VertexId>] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.s];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    pub fn is_uniform(&self) -> bool {
        self.edges.iter().all(|e| e.len() == self.t)
    }

    /// Multigraph view of a hypergraph whose edges have at most two vertices.
    pub fn to_multigraph(&self) -> Result<Multigraph> {
        let pairs = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| match e.as_slice() {
                [v] => Ok((*v, *v)),
                [u, v] => Ok((*u, *v)),
                _ => Err(Error::invalid(format!(
                    "hyperedge {i} has {} vertices; a multigraph edge has at most two",
                    e.len()
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Multigraph::new(self.s, pairs)
    }
}

impl EdgeList for THypergraph {
    fn vertex_count(&self) -> usize {
        self.s
    }
    fn edge_count(&self) -> usize {
        self.edges.len()
    }
    fn edge(&self, e: EdgeId) -> &[VertexId] {
        &self.edges[e]
    }
}

/// Result of [`parse_graph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Graph {
    Multi(Multigraph),
    Hyper(THypergraph),
}

impl EdgeList for Graph {
    fn vertex_count(&self) -> usize {
        match self {
            Graph::Multi(g) => g.vertex_count(),
            Graph::Hyper(h) => h.vertex_count(),
        }
    }
    fn edge_count(&self) -> usize {
        match self {
            Graph::Multi(g) => g.edge_count(),
            Graph::Hyper(h) => h.edge_count(),
        }
    }
    fn edge(&self, e: EdgeId) -> &[VertexId] {
        match self {
            Graph::Multi(g) => g.edge(e),
            Graph::Hyper(h) => h.edge(e),
        }
    }
}

/// Lines of `text` with comments removed, paired with 1-based line numbers;
/// blank lines are skipped.
pub(crate) fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

pub(crate) fn parse_number(line: usize, field: &str, what: &str) -> Result<usize> {
    field
        .parse::<usize>()
        .map_err(|_| Error::parse(line, format!("{what}: expected a non-negative integer, found {field:?}")))
}

/// Parses the `g <s> <m>` / `h <s> <t> <m>` edge-list format.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = records(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "empty input: missing header"))?;
    let (kind, s, t, m) = match header.as_slice() {
        ["g", s, m] => ('g', parse_number(hline, s, "s")?, 2, parse_number(hline, m, "m")?),
        ["h", s, t, m] => (
            'h',
            parse_number(hline, s, "s")?,
            parse_number(hline, t, "t")?,
            parse_number(hline, m, "m")?,
        ),
        _ => {
            return Err(Error::parse(
                hline,
                format!("malformed header {:?}; expected \"g <s> <m>\" or \"h <s> <t> <m>\"", header.join(" ")),
            ))
        }
    };
    if kind == 'h' && t < 2 {
        return Err(Error::parse(hline, format!("arity bound t = {t} must be at least 2")));
    }
    let mut edges: Vec<Vec<VertexId>> = Vec::with_capacity(m);
    for (line, fields) in lines {
        if fields[0] != "e" {
            return Err(Error::parse(line, format!("unknown record {:?}", fields[0])));
        }
        if edges.len() == m {
            return Err(Error::parse(line, format!("more than the declared {m} edges")));
        }
        let ids = fields[1..]
            .iter()
            .map(|f| parse_number(line, f, "vertex id"))
            .collect::<Result<Vec<_>>>()?;
        if let Some(&v) = ids.iter().find(|&&v| v >= s) {
            return Err(Error::parse(line, format!("vertex id {v} is not below s = {s}")));
        }
        if kind == 'g' {
            if ids.len() != 2 {
                return Err(Error::parse(line, format!("multigraph edge needs 2 ids, found {}", ids.len())));
            }
        } else {
            if ids.is_empty() {
                return Err(Error::parse(line, "empty hyperedge"));
            }
            if ids.len() > t {
                return Err(Error::parse(line, format!("hyperedge of size {} exceeds t = {t}", ids.len())));
            }
            let distinct: BTreeSet<_> = ids.iter().collect();
            if distinct.len() != ids.len() {
                return Err(Error::parse(line, "duplicate vertex in hyperedge"));
            }
        }
        edges.push(ids);
    }
    if edges.len() != m {
        return Err(Error::parse(0, format!("header declares {m} edges, found {}", edges.len())));
    }
    Ok(match kind {
        'g' => Graph::Multi(Multigraph::new(s, edges.into_iter().map(|e| (e[0], e[1])))?),
        _ => Graph::Hyper(THypergraph::new(s, t, edges)?),
    })
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "g {} {}", self.s, self.edges.len())?;
        for [u, v] in &self.edges {
            writeln!(f, "e {u} {v}")?;
        }
        Ok(())
    }
}

impl fmt::Display for THypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "h {} {} {}", self.s, self.t, self.edges.len())?;
        for e in &self.edges {
            write!(f, "e")?;
            for v in e {
                write!(f, " {v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Graph::Multi(g) => g.fmt(f),
            Graph::Hyper(h) => h.fmt(f),
        }
    }
}

/// Membership table for a vertex set, checked against the vertex count.
pub(crate) fn membership(s: usize, set: &[VertexId]) -> Result<Vec<bool>> {
    let mut inside = vec![false; s];
    for &v in set {
        if v >= s {
            return Err(Error::invalid(format!("vertex {v} is not below s = {s}")));
        }
        inside[v] = true;
    }
    Ok(inside)
}

/// Ids of the edges whose every vertex lies in `set`, ascending.
pub fn spanned_edges<G: EdgeList + ?Sized>(g: &G, set: &[VertexId]) -> Result<Vec<EdgeId>> {
    let inside = membership(g.vertex_count(), set)?;
    Ok((0..g.edge_count())
        .filter(|&e| g.edge(e).iter().all(|&v| inside[v]))
        .collect())
}

/// A vertex set together with edges it spans and the surplus it claims.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DenseWitness {
    /// Ascending, no repeats.
    pub vertices: Vec<VertexId>,
    /// Edge ids, ascending.
    pub spanned: Vec<EdgeId>,
    /// Claimed lower bound on `spanned.len() - vertices.len()`.
    pub gap: Rational64,
}

impl DenseWitness {
    /// Witness listing every edge `vertices` spans in `g`, claiming the full surplus.
    pub fn spanning<G: EdgeList + ?Sized>(g: &G, vertices: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let vertices: Vec<VertexId> = vertices.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let spanned = spanned_edges(g, &vertices)?;
        let gap = Rational64::from_integer(spanned.len() as i64 - vertices.len() as i64);
        Ok(DenseWitness { vertices, spanned, gap })
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    /// `|spanned| - |vertices|`.
    pub fn surplus(&self) -> i64 {
        self.spanned.len() as i64 - self.vertices.len() as i64
    }
}

impl fmt::Display for DenseWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S:")?;
        for v in &self.vertices {
            write!(f, " {v}")?;
        }
        write!(f, "\nedges:")?;
        for e in &self.spanned {
            write!(f, " {e}")?;
        }
        writeln!(f, "\ngap: {}", self.gap)
    }
}

/// Parses the `S:` / `edges:` / `gap:` block written by `Display`.
pub fn parse_witness(text: &str) -> Result<DenseWitness> {
    let (mut vertices, mut spanned, mut gap) = (None, None, None);
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body
            .split_once(':')
            .ok_or_else(|| Error::parse(line, format!("expected \"key: value\", found {body:?}")))?;
        let ids = || {
            value
                .split_whitespace()
                .map(|f| parse_number(line, f, key.trim()))
                .collect::<Result<Vec<usize>>>()
        };
        match key.trim() {
            "S" => vertices = Some(ids()?),
            "edges" => spanned = Some(ids()?),
            "gap" => gap = Some(parse_rational(value.trim()).map_err(|e| Error::parse(line, e))?),
            other => return Err(Error::parse(line, format!("unknown witness key {other:?}"))),
        }
    }
    let vertices = vertices.ok_or_else(|| Error::parse(0, "witness has no \"S:\" line"))?;
    let spanned = spanned.ok_or_else(|| Error::parse(0, "witness has no \"edges:\" line"))?;
    Ok(DenseWitness {
        vertices,
        spanned,
        gap: gap.unwrap_or_else(|| Rational64::from_integer(0)),
    })
}

/// Parses `a/b`, an integer, or a decimal such as `0.25`, exactly.
pub fn parse_rational(text: &str) -> std::result::Result<Rational64, String> {
    let bad = || format!("not a rational number: {text:?}");
    if let Some((n, d)) = text.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(format!("zero denominator in {text:?}"));
        }
        return Ok(Rational64::new(n, d));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
        || frac.len() > 18
    {
        return Err(bad());
    }
    let scale = 10i64.pow(frac.len() as u32);
    let int: i64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
    let frac: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    let numer = int
        .checked_mul(scale)
        .and_then(|x| x.checked_add(frac))
        .ok_or_else(bad)?;
    Ok(Rational64::new(if negative { -numer } else { numer }, scale))
}

/// Maps vertices of a graph onto the vertices of its contraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    forward: Vec<VertexId>,
    merged: VertexId,
}

impl VertexMap {
    pub fn get(&self, v: VertexId) -> VertexId {
        self.forward[v]
    }

    /// The vertex the contracted set became.
    pub fn merged(&self) -> VertexId {
        self.merged
    }

    /// Original vertices mapped onto `w`, ascending.
    pub fn preimage(&self, w: VertexId) -> Vec<VertexId> {
        (0..self.forward.len()).filter(|&v| self.forward[v] == w).collect()
    }
}

/// Output of [`contract`].
#[derive(Debug, Clone)]
pub struct Contraction {
    pub graph: Multigraph,
    pub vertices: VertexMap,
    /// Original id of each edge of `graph`.
    pub edge_origin: Vec<EdgeId>,
}

/// Merges `set` into one vertex. Vertices keep their relative order; the
/// merged vertex takes the place of the smallest member of `set`. Edges
/// inside `set` are dropped when `drop_internal` is set and become
/// self-loops on the merged vertex otherwise.
pub fn contract(g: &Multigraph, set: &[VertexId], drop_internal: bool) -> Result<Contraction> {
    if set.is_empty() {
        return Err(Error::invalid("cannot contract an empty vertex set"));
    }
    let inside = membership(g.s, set)?;
    let mut forward = vec![0; g.s];
    let mut next = 0;
    let mut merged = None;
    for v in 0..g.s {
        if inside[v] {
            if let Some(m) = merged {
                forward[v] = m;
                continue;
            }
            merged = Some(next);
        }
        forward[v] = next;
        next += 1;
    }
    let mut edges = Vec::new();
    let mut edge_origin = Vec::new();
    for (e, &[u, v]) in g.edges.iter().enumerate() {
        if drop_internal && inside[u] && inside[v] {
            continue;
        }
        edges.push((forward[u], forward[v]));
        edge_origin.push(e);
    }
    Ok(Contraction {
        graph: Multigraph::new(next, edges)?,
        vertices: VertexMap {
            forward,
            merged: merged.expect("set is nonempty"),
        },
        edge_origin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Multigraph {
        Multigraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn parses_parallel_edges() {
        let g = parse_graph("g 2 3\ne 0 1\ne 0 1\ne 0 1").unwrap();
        let Graph::Multi(g) = g else { panic!("expected multigraph") };
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges(), &[[0, 1]; 3]);
    }

    #[test]
    fn parses_hyperedge() {
        let Graph::Hyper(h) = parse_graph("h 4 3 1\ne 0 1 2").unwrap() else {
            panic!("expected hypergraph")
        };
        assert_eq!((h.vertex_count(), h.arity()), (4, 3));
        assert_eq!(h.edges(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn rejects_bad_input() {
        let err = |text: &str| parse_graph(text).unwrap_err().to_string();
        assert!(err("h 4 3 1\ne 0 0 2").contains("duplicate vertex"));
        assert!(err("h 4 3 1\ne 0 1 2 3").contains("exceeds t"));
        assert!(err("g 2 1\ne 0 2").contains("not below s"));
        assert!(err("g 2\ne 0 1").contains("malformed header"));
        assert!(err("g 2 2\ne 0 1").contains("declares 2 edges"));
        assert!(err("g 2 1\ne 0").contains("needs 2 ids"));
        assert!(err("x 1 1").contains("malformed header"));
        assert!(err("# only a comment\n").contains("missing header"));
        assert!(err("g 2 1\nf 0 1").contains("unknown record"));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a loop and an edge\n\ng 2 2 # header\ne 1 1\n  e 1 0  # reversed\n";
        let Graph::Multi(g) = parse_graph(text).unwrap() else { panic!() };
        assert_eq!(g.edges(), &[[1, 1], [0, 1]]);
        assert_eq!(g.to_string(), "g 2 2\ne 1 1\ne 0 1\n");
    }

    #[test]
    fn spanned_edge_examples() {
        let g = triangle();
        assert_eq!(spanned_edges(&g, &[0, 1]).unwrap(), vec![0]);
        assert_eq!(spanned_edges(&g, &[0, 1, 2]).unwrap(), vec![0, 1, 2]);
        let looped = Multigraph::new(2, [(0, 0), (0, 1)]).unwrap();
        assert_eq!(spanned_edges(&looped, &[0]).unwrap(), vec![0]);
        assert!(spanned_edges(&g, &[3]).is_err());
    }

    #[test]
    fn degree_counts_loops_twice() {
        let g = Multigraph::new(2, [(0, 0), (0, 0), (0, 1)]).unwrap();
        assert_eq!(g.degrees(), vec![5, 1]);
        assert_eq!(g.degree(0), 5);
        assert_eq!(g.incidence()[0], vec![0, 1, 2]);
    }

    #[test]
    fn contract_triangle_pair() {
        let c = contract(&triangle(), &[0, 1], true).unwrap();
        assert_eq!(c.graph.vertex_count(), 2);
        assert_eq!(c.graph.edges(), &[[0, 1], [0, 1]]);
        assert_eq!(c.edge_origin, vec![1, 2]);
        assert_eq!(c.vertices.merged(), 0);
        assert_eq!(c.vertices.preimage(0), vec![0, 1]);
        assert_eq!(c.vertices.get(2), 1);
    }

    #[test]
    fn contract_singleton_is_renaming() {
        let path = Multigraph::new(3, [(0, 1), (1, 2)]).unwrap();
        for drop in [false, true] {
            let c = contract(&path, &[0], drop).unwrap();
            assert_eq!(c.graph, path);
            assert_eq!(c.edge_origin, vec![0, 1]);
        }
    }

    #[test]
    fn contract_keeps_internal_as_loops() {
        let g = Multigraph::new(2, [(0, 1), (0, 1)]).unwrap();
        let c = contract(&g, &[0, 1], false).unwrap();
        assert_eq!(c.graph.vertex_count(), 1);
        assert_eq!(c.graph.edges(), &[[0, 0], [0, 0]]);
        assert!(contract(&g, &[], true).is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/5").unwrap(), Rational64::new(1, 5));
        assert_eq!(parse_rational("0.25").unwrap(), Rational64::new(1, 4));
        assert_eq!(parse_rational("2").unwrap(), Rational64::from_integer(2));
        assert_eq!(parse_rational("-1.5").unwrap(), Rational64::new(-3, 2));
        assert_eq!(parse_rational(".5").unwrap(), Rational64::new(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn witness_text_round_trip() {
        let w = DenseWitness::spanning(&triangle(), [2, 0, 1]).unwrap();
        assert_eq!(w.to_string(), "S: 0 1 2\nedges: 0 1 2\ngap: 0\n");
        assert_eq!(parse_witness(&w.to_string()).unwrap(), w);
    }
}
