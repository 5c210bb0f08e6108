//! Monte-Carlo check that sparse random t-uniform hypergraphs have no `k`
//! vertices spanning `k` hyperedges.

use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::THypergraph;
use crate::oracle::{exists_k_spanning_k, DEFAULT_BUDGET};

/// Name of the generator recorded in every report.
pub const RNG_ID: &str = "ChaCha8Rng";

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn sample_with(rng: &mut ChaCha8Rng, s: usize, m: usize, t: usize) -> Result<THypergraph> {
    if s < t {
        return Err(Error::precondition(format!("cannot sample {t}-subsets of {s} vertices")));
    }
    let edges = (0..m).map(|_| {
        let mut e = sample(rng, s, t).into_vec();
        e.sort_unstable();
        e
    });
    THypergraph::new(s, t, edges.collect::<Vec<_>>())
}

/// `m` independent uniform `t`-subsets of `0..s`, repeats allowed.
pub fn sample_uniform_hypergraph(s: usize, m: usize, t: usize, seed: u64) -> Result<THypergraph> {
    sample_with(&mut rng_for(seed, 0), s, m, t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialParams {
    pub s: usize,
    pub m: usize,
    pub t: usize,
    pub k: usize,
    pub trials: u64,
    pub seed: u64,
}

impl TrialParams {
    /// `e^3 k (m/k)^(1/(t-1))`.
    pub fn threshold(&self) -> f64 {
        let (m, t, k) = (self.m as f64, self.t as f64, self.k as f64);
        (3.0 + k.ln() + (m / k).ln() / (t - 1.0)).exp()
    }

    /// `s >= e^3 k (m/k)^(1/(t-1))`, compared in log space.
    pub fn condition_satisfied(&self) -> bool {
        let (m, t, k) = (self.m as f64, self.t as f64, self.k as f64);
        (self.s as f64).ln() >= 3.0 + k.ln() + (m / k).ln() / (t - 1.0)
    }

    /// `(e^(t+2) m k^(t-2) / s^(t-1))^k`.
    pub fn analytic_bound(&self) -> f64 {
        let (s, m, t, k) = (self.s as f64, self.m as f64, self.t as f64, self.k as f64);
        if self.m == 0 {
            return 0.0;
        }
        (k * ((t + 2.0) + m.ln() + (t - 2.0) * k.ln() - (t - 1.0) * s.ln())).exp()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialReport {
    pub params: TrialParams,
    pub rng: &'static str,
    pub condition_satisfied: bool,
    pub threshold: f64,
    pub analytic_bound: f64,
    pub exp_minus_k: f64,
    pub failures: u64,
    pub fraction: f64,
}

impl fmt::Display for TrialReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        writeln!(f, "s = {}", p.s)?;
        writeln!(f, "m = {}", p.m)?;
        writeln!(f, "t = {}", p.t)?;
        writeln!(f, "k = {}", p.k)?;
        writeln!(f, "trials = {}", p.trials)?;
        writeln!(f, "seed = {}", p.seed)?;
        writeln!(f, "rng = {}", self.rng)?;
        writeln!(f, "condition_satisfied = {}", self.condition_satisfied)?;
        writeln!(f, "threshold = {:.14e}", self.threshold)?;
        writeln!(f, "analytic_bound = {:.14e}", self.analytic_bound)?;
        writeln!(f, "exp_minus_k = {:.14e}", self.exp_minus_k)?;
        writeln!(f, "failures = {}", self.failures)?;
        writeln!(f, "fraction = {:.14e}", self.fraction)
    }
}

/// Samples `trials` hypergraphs (trial `i` uses stream `i` of the seeded
/// generator) and counts those with `k` vertices spanning `k` hyperedges.
pub fn run_tightness_experiment(s: usize, m: usize, t: usize, k: usize, trials: u64, seed: u64) -> Result<TrialReport> {
    run_tightness_experiment_with_budget(
        TrialParams {
            s,
            m,
            t,
            k,
            trials,
            seed,
        },
        DEFAULT_BUDGET,
    )
}

pub fn run_tightness_experiment_with_budget(params: TrialParams, budget: u128) -> Result<TrialReport> {
    let TrialParams { s, m, t, k, trials, seed } = params;
    if t < 2 || k == 0 {
        return Err(Error::precondition(format!("need t >= 2 and k >= 1, got t = {t}, k = {k}")));
    }
    let mut failures = 0;
    for trial in 0..trials {
        let g = sample_with(&mut rng_for(seed, trial), s, m, t)?;
        if exists_k_spanning_k(&g, k, budget)? {
            failures += 1;
        }
    }
    Ok(TrialReport {
        params,
        rng: RNG_ID,
        condition_satisfied: params.condition_satisfied(),
        threshold: params.threshold(),
        analytic_bound: params.analytic_bound(),
        exp_minus_k: (-(k as f64)).exp(),
        failures,
        fraction: if trials == 0 { 0.0 } else { failures as f64 / trials as f64 },
    })
}
