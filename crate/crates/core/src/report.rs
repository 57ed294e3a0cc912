//! Per-instance statistics and symmetry detection reports.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mip::MipInstance;
use crate::qubo::{build_reduced, PenaltyWeights, QuboModel};
use crate::reasonability::ReasonabilityPartition;
use crate::resources::{count_terms, zephyr_estimate};
use crate::sample::{anneal, enumerate_exact, zero_set_search, AnnealConfig, DEFAULT_EXACT_LIMIT};
use crate::symmetry::{brute_force_symmetries, decode, orbits, Permutation, DEFAULT_BRUTE_FORCE_LIMIT};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceStats {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub nu: usize,
    pub mu: usize,
    pub q_full: usize,
    pub q_reduced: usize,
    pub ratio_reduced: f64,
    pub max_class_size: usize,
    pub q_maxdecomp: usize,
    pub ratio_maxdecomp: f64,
    pub zephyr_g: usize,
    pub qubit_bound: usize,
    /// Absent when the reduced model exceeds the size limit.
    pub n_terms_reduced: Option<usize>,
}

/// Size statistics. `n_terms_reduced` requires building the reduced model,
/// which is skipped when `q_reduced` exceeds `term_limit`.
pub fn instance_stats(
    mip: &MipInstance,
    partition: &ReasonabilityPartition,
    term_limit: Option<usize>,
) -> Result<InstanceStats> {
    let (n, m) = (mip.n(), mip.m());
    if n == 0 {
        return Err(Error::Degenerate("instance has no variables".into()));
    }
    let q_full = n * n + m * m;
    let q_reduced = partition.nu() + partition.mu();
    let (class_id, max_class_size) = partition.max_decomp_class()?;
    let q_maxdecomp = partition.decomposed_size(class_id)?;
    let zephyr = zephyr_estimate(q_reduced)?;
    let n_terms_reduced = match term_limit {
        Some(limit) if q_reduced > limit => None,
        _ => Some(count_terms(&build_reduced(mip, partition, &PenaltyWeights::default())?).total),
    };
    Ok(InstanceStats {
        name: mip.name().to_string(),
        n,
        m,
        nu: partition.nu(),
        mu: partition.mu(),
        q_full,
        q_reduced,
        ratio_reduced: q_reduced as f64 / q_full as f64,
        max_class_size,
        q_maxdecomp,
        ratio_maxdecomp: q_maxdecomp as f64 / q_full as f64,
        zephyr_g: zephyr.g,
        qubit_bound: zephyr.qubit_bound,
        n_terms_reduced,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DetectMethod {
    /// Exhaustive enumeration within the exact limit, annealing beyond it.
    #[default]
    Auto,
    /// Exhaustive enumeration within the exact limit, zero-set search beyond it.
    Exact,
    Anneal,
    /// Direct enumeration of class-preserving permutations; no QUBO involved.
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectConfig {
    pub method: DetectMethod,
    pub exact_limit: usize,
    pub brute_limit: u128,
    pub anneal: AnnealConfig,
}

impl Default for DetectConfig {
    fn default() -> Self {
        DetectConfig {
            method: DetectMethod::Auto,
            exact_limit: DEFAULT_EXACT_LIMIT,
            brute_limit: DEFAULT_BRUTE_FORCE_LIMIT,
            anneal: AnnealConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Generator {
    pub pi: Permutation,
    pub sigma: Permutation,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryReport {
    pub instance: String,
    pub formulation: String,
    /// `exact`, `search`, `anneal` or `brute`.
    pub source: &'static str,
    pub zero_solutions: usize,
    /// Zero-energy assignments that failed to decode to a verified symmetry.
    pub rejected: usize,
    pub generators: Vec<Generator>,
    pub orbits: Vec<Vec<usize>>,
    pub orbit_names: Vec<Vec<String>>,
    pub verified: bool,
}

fn finish(
    mip: &MipInstance,
    formulation: String,
    source: &'static str,
    zero_solutions: usize,
    rejected: usize,
    mut pairs: Vec<(Permutation, Permutation)>,
) -> Result<SymmetryReport> {
    pairs.sort();
    pairs.dedup_by(|a, b| a.0 == b.0);
    let generators: Vec<Generator> = pairs.into_iter().map(|(pi, sigma)| Generator { pi, sigma, verified: true }).collect();
    let pis: Vec<Permutation> = generators.iter().map(|g| g.pi.clone()).collect();
    let orbits = orbits(mip.n(), &pis)?;
    let orbit_names = orbits.iter().map(|o| o.iter().map(|&j| mip.var_names()[j].clone()).collect()).collect();
    Ok(SymmetryReport {
        instance: mip.name().to_string(),
        formulation,
        source,
        zero_solutions,
        rejected,
        generators,
        orbits,
        orbit_names,
        verified: rejected == 0,
    })
}

/// Finds zero-energy assignments of `model`, decodes and verifies each one,
/// and reports the distinct verified variable permutations and their orbits.
/// Only verified permutations are listed. The `Brute` method ignores
/// `model` apart from its name.
pub fn detect_symmetries(
    mip: &MipInstance,
    partition: &ReasonabilityPartition,
    model: &QuboModel,
    config: &DetectConfig,
) -> Result<SymmetryReport> {
    let form = model.formulation().to_string();
    let fits = model.len() <= config.exact_limit;
    let (source, zeros) = match config.method {
        DetectMethod::Brute => {
            let set = brute_force_symmetries(mip, partition, config.brute_limit)?;
            let count = set.pairs.len();
            return finish(mip, "none".into(), "brute", count, 0, set.pairs);
        }
        DetectMethod::Auto | DetectMethod::Exact if fits => ("exact", enumerate_exact(model, config.exact_limit, 0.0)?),
        DetectMethod::Exact => ("search", zero_set_search(model)?),
        DetectMethod::Auto | DetectMethod::Anneal => ("anneal", anneal(model, &config.anneal)?.zero_hits),
    };
    let mut rejected = 0;
    let mut pairs = Vec::new();
    for x in &zeros {
        let d = decode(mip, partition.config(), model.registry(), x)?;
        match (d.is_symmetry, d.pi, d.sigma) {
            (true, Some(pi), Some(sigma)) => pairs.push((pi, sigma)),
            _ => {
                log::warn!("zero-energy assignment did not decode to a symmetry");
                rejected += 1;
            }
        }
    }
    finish(mip, form, source, zeros.len(), rejected, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reasonability::{build_partition, SignatureConfig};
    use crate::synth::example_knapsack;

    fn knapsack() -> (MipInstance, ReasonabilityPartition) {
        let mip = example_knapsack();
        let p = build_partition(&mip, &SignatureConfig { sharpen_var_coeffs: true, ..Default::default() });
        (mip, p)
    }

    #[test]
    fn knapsack_stats() {
        let (mip, p) = knapsack();
        let s = instance_stats(&mip, &p, None).unwrap();
        assert_eq!((s.n, s.m, s.nu, s.mu, s.q_full, s.q_reduced), (7, 1, 15, 1, 50, 16));
        assert_eq!(s.ratio_reduced, 0.32);
        assert_eq!((s.max_class_size, s.q_maxdecomp), (3, 14));
        assert_eq!((s.zephyr_g, s.qubit_bound), (2, 96));
        assert_eq!(s.n_terms_reduced, Some(38));
        assert_eq!(instance_stats(&mip, &p, Some(15)).unwrap().n_terms_reduced, None);
    }

    #[test]
    fn knapsack_detection_methods_agree() {
        let (mip, p) = knapsack();
        let model = build_reduced(&mip, &p, &PenaltyWeights::default()).unwrap();
        let expected = vec![vec![0, 1], vec![2], vec![3, 4, 5], vec![6]];
        for method in [DetectMethod::Exact, DetectMethod::Brute] {
            let r = detect_symmetries(&mip, &p, &model, &DetectConfig { method, ..Default::default() }).unwrap();
            assert_eq!(r.generators.len(), 12, "{method:?}");
            assert_eq!(r.orbits, expected);
            assert!(r.verified);
        }
        let r = detect_symmetries(&mip, &p, &model, &DetectConfig { method: DetectMethod::Exact, exact_limit: 4, ..Default::default() }).unwrap();
        assert_eq!(r.source, "search");
        assert_eq!(r.generators.len(), 12);
        assert_eq!(r.orbit_names[0], vec!["x1".to_string(), "x2".to_string()]);
    }
}
