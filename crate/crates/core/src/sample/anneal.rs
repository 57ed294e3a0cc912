use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::Adjacency;
use crate::error::{Error, Result};
use crate::qubo::QuboModel;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleResult {
    pub assignment: Vec<bool>,
    pub energy: f64,
    /// Restarts executed.
    pub restarts_used: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnnealConfig {
    pub seed: u64,
    pub restarts: usize,
    pub sweeps: usize,
    /// Defaults to the largest coefficient magnitude.
    pub t_initial: Option<f64>,
    /// Defaults to `1e-3` times the smallest nonzero coefficient magnitude.
    pub t_final: Option<f64>,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        AnnealConfig { seed: 0, restarts: 64, sweeps: 2000, t_initial: None, t_final: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnnealOutcome {
    pub best: SampleResult,
    /// Distinct zero-energy assignments, in order of the restart that found them.
    pub zero_hits: Vec<Vec<bool>>,
}

struct RestartResult {
    best: Vec<bool>,
    energy: f64,
    zero: bool,
}

fn temperatures(model: &QuboModel, config: &AnnealConfig) -> Result<(f64, f64)> {
    let mags: Vec<f64> = model.linear().values().chain(model.quadratic().values()).map(|v| v.abs()).collect();
    let max = mags.iter().copied().fold(0.0, f64::max);
    let min = mags.iter().copied().filter(|v| *v > 0.0).fold(f64::INFINITY, f64::min);
    let t0 = config.t_initial.unwrap_or(if max > 0.0 { max } else { 1.0 });
    let t1 = config.t_final.unwrap_or(if min.is_finite() { 1e-3 * min } else { 1e-3 });
    if !(t0 > 0.0 && t1 > 0.0 && t0.is_finite() && t1.is_finite()) {
        return Err(Error::InvalidParameter(format!("temperatures must be positive, got {t0} -> {t1}")));
    }
    Ok((t0, t1))
}

fn run_restart(model: &QuboModel, adj: &Adjacency, config: &AnnealConfig, restart: usize, t0: f64, t1: f64) -> Result<RestartResult> {
    let q = model.len();
    let tol = model.zero_tolerance();
    let slack = tol + 1e-9 * model.magnitude();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(restart as u64);

    let mut x: Vec<bool> = (0..q).map(|_| rng.random::<bool>()).collect();
    let mut field = adj.linear.clone();
    for (k, _) in x.iter().enumerate().filter(|(_, &on)| on) {
        for &(j, w) in &adj.neighbors[k] {
            field[j] += w;
        }
    }
    let mut energy = model.energy(&x)?;
    let mut best = x.clone();
    let mut best_energy = energy;
    let ratio = t1 / t0;

    for sweep in 0..config.sweeps {
        let frac = if config.sweeps > 1 { sweep as f64 / (config.sweeps - 1) as f64 } else { 1.0 };
        let temp = t0 * ratio.powf(frac);
        for k in 0..q {
            let delta = if x[k] { -field[k] } else { field[k] };
            if delta <= 0.0 || rng.random::<f64>() < (-delta / temp).exp() {
                x[k] = !x[k];
                energy += delta;
                let sign = if x[k] { 1.0 } else { -1.0 };
                for &(j, w) in &adj.neighbors[k] {
                    field[j] += sign * w;
                }
                if energy < best_energy {
                    best_energy = energy;
                    best.copy_from_slice(&x);
                }
            }
        }
        if best_energy <= slack {
            let exact = model.energy(&best)?;
            if exact <= tol {
                return Ok(RestartResult { best, energy: exact, zero: true });
            }
            best_energy = exact;
        }
    }
    let exact = model.energy(&best)?;
    Ok(RestartResult { zero: exact <= tol, best, energy: exact })
}

/// Seeded simulated annealing with single-bit Metropolis moves and a
/// geometric temperature schedule.
///
/// Restart `r` draws from a ChaCha8 stream keyed by `(seed, r)`, so results
/// do not depend on thread scheduling. A restart stops early once it reaches
/// zero energy.
pub fn anneal(model: &QuboModel, config: &AnnealConfig) -> Result<AnnealOutcome> {
    if model.is_empty() {
        return Err(Error::InvalidParameter("cannot anneal a model with no variables".into()));
    }
    if config.restarts == 0 || config.sweeps == 0 {
        return Err(Error::InvalidParameter("restarts and sweeps must be at least 1".into()));
    }
    let (t0, t1) = temperatures(model, config)?;
    let adj = Adjacency::new(model);
    let results = (0..config.restarts)
        .into_par_iter()
        .map(|r| run_restart(model, &adj, config, r, t0, t1))
        .collect::<Result<Vec<_>>>()?;

    let (best_idx, _) = results
        .iter()
        .enumerate()
        .min_by(|(ia, a), (ib, b)| a.energy.total_cmp(&b.energy).then(ia.cmp(ib)))
        .expect("at least one restart");
    let mut seen = HashSet::new();
    let zero_hits = results
        .iter()
        .filter(|r| r.zero && seen.insert(r.best.clone()))
        .map(|r| r.best.clone())
        .collect();
    let best = &results[best_idx];
    Ok(AnnealOutcome {
        best: SampleResult {
            assignment: best.best.clone(),
            energy: best.energy,
            restarts_used: config.restarts,
            seed: config.seed,
        },
        zero_hits,
    })
}
