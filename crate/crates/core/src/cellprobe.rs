//! Linear problems over prime fields and audits of non-adaptive probe
//! layouts.
//!
//! A layout assigns each query a set of at most `t` memory cells. Queries
//! become (hyper)edges on the cells, and any cell set spanning more queries
//! than it has cells is a violation: if the problem is k-wise independent
//! for `k` at least the number of those queries, their answers take more
//! values than the cells can hold.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::Rational64;

use crate::dense::{find_dense_set, search_any_dense_set, DensityParams};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::graph::{parse_number, records, DenseWitness, Multigraph, THypergraph};
use crate::hyper::{budget_condition, density_condition, find_hyper_dense, Mode};
use crate::log2::Log2;
use crate::oracle::binomial;

/// The map `x -> x^T M` for an `n x m` matrix `M` over `GF(p)`; column `j`
/// is query `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProblem {
    field: PrimeField,
    n: usize,
    m: usize,
    rows: Vec<Vec<u64>>,
}

impl LinearProblem {
    pub fn new(p: u64, rows: Vec<Vec<u64>>) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if n == 0 || m == 0 {
            return Err(Error::invalid("a problem needs at least one input and one query"));
        }
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::invalid("matrix rows differ in length"));
        }
        if let Some(&x) = rows.iter().flatten().find(|&&x| x >= p) {
            return Err(Error::invalid(format!("entry {x} is not below p = {p}")));
        }
        Ok(LinearProblem { field, n, m, rows })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn inputs(&self) -> usize {
        self.n
    }

    pub fn queries(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Answer to query `j` on input `x`.
    pub fn answer(&self, x: &[u64], j: usize) -> u64 {
        let f = self.field;
        x.iter().zip(&self.rows).fold(0, |acc, (&xi, row)| f.add(acc, f.mul(xi, row[j])))
    }
}

impl fmt::Display for LinearProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "problem {} {} {}", self.field.modulus(), self.n, self.m)?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Parses `problem <p> <n> <m>` followed by `n` rows of `m` entries.
pub fn parse_problem(text: &str) -> Result<LinearProblem> {
    let mut lines = records(text);
    let (line, header) = lines.next().ok_or_else(|| Error::parse(1, "empty problem file"))?;
    if header.len() != 4 || header[0] != "problem" {
        return Err(Error::parse(line, "expected header `problem <p> <n> <m>`"));
    }
    let p: u64 = header[1]
        .parse()
        .map_err(|_| Error::parse(line, format!("bad modulus `{}`", header[1])))?;
    let n = parse_number(line, header[2], "input count")?;
    let m = parse_number(line, header[3], "query count")?;
    let mut rows = Vec::with_capacity(n);
    for (line, fields) in lines {
        if rows.len() == n {
            return Err(Error::parse(line, format!("more than {n} rows")));
        }
        if fields.len() != m {
            return Err(Error::parse(line, format!("expected {m} entries, found {}", fields.len())));
        }
        let row = fields
            .iter()
            .map(|x| x.parse::<u64>().map_err(|_| Error::parse(line, format!("bad entry `{x}`"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::parse(0, format!("expected {n} rows, found {}", rows.len())));
    }
    LinearProblem::new(p, rows)
}

/// `M[i][j] = (j + 1)^i` over `GF(p)`, for `p > m >= n >= 1`.
pub fn vandermonde_problem(n: usize, m: usize, p: u64) -> Result<LinearProblem> {
    if n == 0 || m < n {
        return Err(Error::precondition(format!("need m >= n >= 1, got n = {n}, m = {m}")));
    }
    if p <= m as u64 {
        return Err(Error::precondition(format!("need p > m, got p = {p}, m = {m}")));
    }
    let field = PrimeField::new(p)?;
    let rows = (0..n)
        .map(|i| (0..m).map(|j| field.pow(j as u64 + 1, i as u64)).collect())
        .collect();
    LinearProblem::new(p, rows)
}

/// True iff every `k` columns are linearly independent, which for a
/// linear map means any `k` answers are uniform on uniform inputs.
pub fn kwise_rank_check(problem: &LinearProblem, k: usize, budget: u128) -> Result<bool> {
    if k > problem.n {
        return Err(Error::precondition(format!("k = {k} exceeds n = {}", problem.n)));
    }
    let needed = binomial(problem.m as u64, k as u64);
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    if k == 0 {
        return Ok(true);
    }
    let mut cols: Vec<usize> = (0..k).collect();
    loop {
        let sub: Vec<Vec<u64>> = problem.rows.iter().map(|r| cols.iter().map(|&j| r[j]).collect()).collect();
        if problem.field.rank(&sub) < k {
            return Ok(false);
        }
        // Next k-combination in lexicographic order.
        let Some(i) = (0..k).rev().find(|&i| cols[i] < problem.m - k + i) else {
            return Ok(true);
        };
        cols[i] += 1;
        for j in i + 1..k {
            cols[j] = cols[j - 1] + 1;
        }
    }
}

/// For each query, the set of cells it reads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeLayout {
    s: usize,
    t: usize,
    probes: Vec<Vec<usize>>,
}

impl ProbeLayout {
    /// Repeated cells within a query collapse to one.
    pub fn new(s: usize, t: usize, probes: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        if t == 0 {
            return Err(Error::invalid("probe bound t must be at least 1"));
        }
        let mut list = Vec::new();
        for (q, mut cells) in probes.into_iter().enumerate() {
            cells.sort_unstable();
            cells.dedup();
            if cells.is_empty() {
                return Err(Error::invalid(format!("query {q} probes no cell")));
            }
            if cells.len() > t {
                return Err(Error::invalid(format!("query {q} probes {} > t = {t} cells", cells.len())));
            }
            if let Some(&c) = cells.last().filter(|&&c| c >= s) {
                return Err(Error::invalid(format!("query {q} probes cell {c} outside 0..{s}")));
            }
            list.push(cells);
        }
        Ok(ProbeLayout { s, t, probes: list })
    }

    pub fn cells(&self) -> usize {
        self.s
    }

    pub fn queries(&self) -> usize {
        self.probes.len()
    }

    pub fn probe_bound(&self) -> usize {
        self.t
    }

    pub fn probes(&self, q: usize) -> &[usize] {
        &self.probes[q]
    }

    /// Cells as vertices, queries as edges; a one-cell query is a loop.
    pub fn multigraph(&self) -> Result<Multigraph> {
        let pairs = self.probes.iter().enumerate().map(|(q, c)| match c.as_slice() {
            [a] => Ok((*a, *a)),
            [a, b] => Ok((*a, *b)),
            _ => Err(Error::invalid(format!("query {q} probes {} cells", c.len()))),
        });
        Multigraph::new(self.s, pairs.collect::<Result<Vec<_>>>()?)
    }

    /// Cells as vertices, queries as hyperedges of arity `max(t, 2)`.
    pub fn hypergraph(&self) -> Result<THypergraph> {
        THypergraph::new(self.s, self.t.max(2), self.probes.clone())
    }

    /// Whether `queries` only read cells in `cells` and outnumber them.
    pub fn is_violation(&self, cells: &[usize], queries: &[usize]) -> bool {
        let mut inside = vec![false; self.s];
        for &c in cells {
            if c >= self.s || std::mem::replace(&mut inside[c], true) {
                return false;
            }
        }
        let distinct: HashSet<usize> = queries.iter().copied().collect();
        distinct.len() == queries.len()
            && queries.len() > cells.len()
            && queries
                .iter()
                .all(|&q| q < self.probes.len() && self.probes[q].iter().all(|&c| inside[c]))
    }
}

impl fmt::Display for ProbeLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "layout {} {} {}", self.s, self.probes.len(), self.t)?;
        for cells in &self.probes {
            let list: Vec<String> = cells.iter().map(usize::to_string).collect();
            writeln!(f, "q {}", list.join(" "))?;
        }
        Ok(())
    }
}

/// Parses `layout <s> <m> <t>` followed by `m` lines `q c1 [c2 ...]`.
pub fn parse_layout(text: &str) -> Result<ProbeLayout> {
    let mut lines = records(text);
    let (line, header) = lines.next().ok_or_else(|| Error::parse(1, "empty layout file"))?;
    if header.len() != 4 || header[0] != "layout" {
        return Err(Error::parse(line, "expected header `layout <s> <m> <t>`"));
    }
    let s = parse_number(line, header[1], "cell count")?;
    let m = parse_number(line, header[2], "query count")?;
    let t = parse_number(line, header[3], "probe bound")?;
    let mut probes = Vec::with_capacity(m);
    for (line, fields) in lines {
        if fields[0] != "q" {
            return Err(Error::parse(line, format!("unknown record `{}`", fields[0])));
        }
        if probes.len() == m {
            return Err(Error::parse(line, format!("more than {m} queries")));
        }
        let cells = fields[1..]
            .iter()
            .map(|c| parse_number(line, c, "cell"))
            .collect::<Result<Vec<_>>>()?;
        if cells.is_empty() {
            return Err(Error::parse(line, "query probes no cell"));
        }
        probes.push(cells);
    }
    if probes.len() != m {
        return Err(Error::parse(0, format!("expected {m} queries, found {}", probes.len())));
    }
    ProbeLayout::new(s, t, probes)
}

/// Outcome of [`witness_threshold`] with every inequality it evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Threshold {
    pub holds: bool,
    pub trace: Vec<String>,
}

/// Whether `(s, m, t, k)` is in the range where a violation is guaranteed.
///
/// For `t = 2`: `k > 8 log2 s` and `m >= s(1 + eps)` with
/// `eps = min(16 log2(s) / k, 1)`. For `t >= 3`: `2^(t+2) log2 s <= k <= s`
/// and `m >= 3s (2^(t+3) s log2(s) / k)^(t-2)`.
pub fn witness_threshold(s: usize, m: usize, t: usize, k: usize) -> Threshold {
    let mut trace = Vec::new();
    fn check(trace: &mut Vec<String>, ok: bool, line: String) -> bool {
        trace.push(format!("{line}: {ok}"));
        ok
    }
    if !check(&mut trace, s >= 2 && t >= 2 && k >= 1, format!("s = {s} >= 2, t = {t} >= 2, k = {k} >= 1")) {
        return Threshold { holds: false, trace };
    }
    let log = Log2::of(s as u64);
    let l = log.approx();
    let holds = if t == 2 {
        let guard = check(&mut trace, !log.at_least(k as u64, 8u64), format!("k = {k} > 8 log2 s = {:.6}", 8.0 * l));
        let capped = log.at_least(k as u64, 16u64);
        let eps = if capped { 1.0 } else { 16.0 * l / k as f64 };
        trace.push(format!("eps = min(16 log2(s) / k, 1) = {eps:.6}"));
        let dense = if capped {
            check(&mut trace, m >= 2 * s, format!("m = {m} >= 2s = {}", 2 * s))
        } else {
            // m >= s + 16 s log2(s) / k  <=>  log2(s) <= k (m - s) / (16 s)
            let ok = m > s && log.at_most(BigInt::from(k) * BigInt::from(m - s), BigInt::from(16 * s));
            check(&mut trace, ok, format!("m = {m} >= s(1 + eps) = {:.6}", s as f64 * (1.0 + eps)))
        };
        guard && dense
    } else {
        let budget = check(&mut trace, 
            budget_condition(s, t, k),
            format!("2^{} log2 s = {:.6} <= k = {k}", t + 2, (t as f64 + 2.0).exp2() * l),
        );
        let fits = check(&mut trace, k <= s, format!("k = {k} <= s = {s}"));
        let rhs = 3.0 * s as f64 * ((t as f64 + 3.0).exp2() * s as f64 * l / k as f64).powi(t as i32 - 2);
        let dense = check(&mut trace, 
            density_condition(s, m, t, k),
            format!("m = {m} >= 3s(2^{} s log2(s) / k)^{} = {rhs:.6}", t + 3, t - 2),
        );
        budget && fits && dense
    };
    Threshold { holds, trace }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditVerdict {
    Violation,
    NoWitnessFound,
    PreconditionsUnmet,
}

impl fmt::Display for AuditVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AuditVerdict::Violation => "violation",
            AuditVerdict::NoWitnessFound => "no_witness_found",
            AuditVerdict::PreconditionsUnmet => "preconditions_unmet",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub s: usize,
    pub m: usize,
    pub t: usize,
    pub k: usize,
    pub verdict: AuditVerdict,
    pub threshold: bool,
    /// `strict` when the threshold held, `best_effort` otherwise.
    pub route: &'static str,
    pub witness_cells: Vec<usize>,
    pub witness_queries: Vec<usize>,
    pub trace: Vec<String>,
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[usize]| xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        writeln!(f, "s = {}", self.s)?;
        writeln!(f, "m = {}", self.m)?;
        writeln!(f, "t = {}", self.t)?;
        writeln!(f, "k = {}", self.k)?;
        writeln!(f, "threshold = {}", self.threshold)?;
        writeln!(f, "route = {}", self.route)?;
        writeln!(f, "verdict = {}", self.verdict)?;
        writeln!(f, "witness_cells = {}", join(&self.witness_cells))?;
        writeln!(f, "witness_queries = {}", join(&self.witness_queries))?;
        for (i, line) in self.trace.iter().enumerate() {
            writeln!(f, "trace.{i} = {line}")?;
        }
        Ok(())
    }
}

/// Looks for a set of cells read by more queries than it contains.
///
/// When [`witness_threshold`] holds, the guaranteed construction runs and
/// must succeed: for `t <= 2` the dense-set finder with
/// `eps = min(1, (m - s) / s)`, for `t >= 3` the strict hypergraph finder.
/// Otherwise the same constructions run without their hypotheses.
pub fn audit_layout(layout: &ProbeLayout, k: usize) -> Result<AuditReport> {
    let (s, m) = (layout.cells(), layout.queries());
    let t = layout.probe_bound().max(2);
    let threshold = witness_threshold(s, m, t, k);
    let mut report = AuditReport {
        s,
        m,
        t: layout.probe_bound(),
        k,
        verdict: AuditVerdict::PreconditionsUnmet,
        threshold: threshold.holds,
        route: if threshold.holds { "strict" } else { "best_effort" },
        witness_cells: Vec::new(),
        witness_queries: Vec::new(),
        trace: threshold.trace,
    };
    if s < 2 || k == 0 {
        return Ok(report);
    }
    let found = if t == 2 {
        let g = layout.multigraph()?;
        if threshold.holds {
            let eps = Rational64::new(m as i64 - s as i64, s as i64).min(Rational64::from_integer(1));
            report.trace.push(format!("dense-set slack eps = {eps}"));
            Some(find_dense_set(&g, DensityParams::new(eps)?)?)
        } else {
            search_any_dense_set(&g)?
        }
    } else {
        let g = layout.hypergraph()?;
        let mode = if threshold.holds { Mode::Strict } else { Mode::BestEffort };
        match find_hyper_dense(&g, k, mode) {
            Ok(found) => found,
            Err(Error::Precondition(why)) if mode == Mode::BestEffort => {
                report.trace.push(format!("best-effort search not applicable: {why}"));
                return Ok(report);
            }
            Err(e) => return Err(e),
        }
    };
    match found {
        Some(DenseWitness { vertices, spanned, .. }) => {
            if !layout.is_violation(&vertices, &spanned) {
                return Err(Error::internal("reported violation does not re-check against the layout"));
            }
            report.verdict = AuditVerdict::Violation;
            report.witness_cells = vertices;
            report.witness_queries = spanned;
        }
        None => report.verdict = AuditVerdict::NoWitnessFound,
    }
    Ok(report)
}

/// Result of [`answers_exceed_cell_states`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountingCheck {
    /// `p^cells`: the number of ways to fill the cells.
    pub cell_states: u128,
    /// Distinct answer vectors seen before stopping.
    pub distinct_answers: u128,
    /// True when more answer vectors than cell states were found, so no
    /// table on `cells` cells can answer the queries.
    pub refuted: bool,
}

/// Enumerates inputs of `problem` and collects the answer vectors of
/// `queries`, stopping once they outnumber the `p^cells` possible contents
/// of `cells` memory cells. Every table stored in those cells answers the
/// queries with one fixed vector per content, so exceeding the count means
/// no assignment of cell contents answers them all.
pub fn answers_exceed_cell_states(
    problem: &LinearProblem,
    queries: &[usize],
    cells: usize,
    budget: u128,
) -> Result<CountingCheck> {
    let p = problem.field.modulus() as u128;
    if let Some(&q) = queries.iter().find(|&&q| q >= problem.m) {
        return Err(Error::invalid(format!("query {q} is not a column of the problem")));
    }
    let cell_states = p
        .checked_pow(cells as u32)
        .filter(|&x| x <= budget)
        .ok_or(Error::Budget {
            needed: p.saturating_pow(cells as u32),
            budget,
        })?;
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut x = vec![0u64; problem.n];
    let mut steps: u128 = 0;
    loop {
        seen.insert(queries.iter().map(|&j| problem.answer(&x, j)).collect());
        if seen.len() as u128 > cell_states {
            break;
        }
        steps += 1;
        if steps > budget.saturating_mul(4) {
            return Err(Error::Budget {
                needed: steps,
                budget,
            });
        }
        // Next input in counting order.
        let Some(i) = x.iter().position(|&xi| (xi as u128) < p - 1) else {
            break;
        };
        x[i] += 1;
        x[..i].iter_mut().for_each(|xi| *xi = 0);
    }
    Ok(CountingCheck {
        cell_states,
        distinct_answers: seen.len() as u128,
        refuted: seen.len() as u128 > cell_states,
    })
}
