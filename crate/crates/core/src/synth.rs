//! Small random instances with planted structure.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::mip::{MipBuilder, MipInstance, ObjectiveSense, Sense};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    pub max_n: usize,
    pub max_m: usize,
    /// Coefficients are drawn from `1..=max_coeff` with a random sign.
    pub max_coeff: i32,
    /// Probability that a matrix entry is nonzero.
    pub density: f64,
    /// Probability that a row is copied from an earlier one.
    pub row_copy: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig { max_n: 5, max_m: 3, max_coeff: 2, density: 0.6, row_copy: 0.3 }
    }
}

struct Template {
    objective: f64,
    integer: bool,
    bounds: (f64, f64),
    column: Vec<f64>,
}

const BOUNDS: [(f64, f64); 3] = [(0.0, 1.0), (0.0, 3.0), (-1.0, 1.0)];

/// A random MIP whose variables are drawn from a handful of column
/// templates, so equal columns (and hence symmetries) are common. Variable
/// order is shuffled afterwards.
pub fn random_mip<R: Rng + ?Sized>(rng: &mut R, cfg: &SynthConfig) -> MipInstance {
    let n = rng.random_range(1..=cfg.max_n.max(1));
    let m = rng.random_range(1..=cfg.max_m.max(1));
    let coeff = |rng: &mut R| {
        if rng.random_bool(cfg.density) {
            let v = rng.random_range(1..=cfg.max_coeff.max(1)) as f64;
            if rng.random_bool(0.2) {
                -v
            } else {
                v
            }
        } else {
            0.0
        }
    };
    let n_templates = rng.random_range(1..=n);
    let templates: Vec<Template> = (0..n_templates)
        .map(|_| Template {
            objective: rng.random_range(0..=2) as f64,
            integer: rng.random_bool(0.8),
            bounds: BOUNDS[rng.random_range(0..BOUNDS.len())],
            column: (0..m).map(|_| coeff(rng)).collect(),
        })
        .collect();
    let mut picks: Vec<usize> = (0..n).map(|_| rng.random_range(0..n_templates)).collect();
    picks.shuffle(rng);

    let mut matrix: Vec<Vec<f64>> = (0..m).map(|i| picks.iter().map(|&t| templates[t].column[i]).collect()).collect();
    let mut rows: Vec<(Sense, f64)> = Vec::with_capacity(m);
    for i in 0..m {
        if i > 0 && rng.random_bool(cfg.row_copy) {
            let src = rng.random_range(0..i);
            matrix[i] = matrix[src].clone();
            rows.push(rows[src]);
        } else {
            let sense = [Sense::Le, Sense::Eq, Sense::Ge][rng.random_range(0..3)];
            rows.push((sense, rng.random_range(0..=3) as f64));
        }
    }

    let mut b = MipBuilder::new("synthetic");
    for (j, &t) in picks.iter().enumerate() {
        let tpl = &templates[t];
        b.add_variable(format!("x{j}"), tpl.objective, tpl.bounds.0, tpl.bounds.1, tpl.integer)
            .expect("distinct names");
    }
    for (i, (&(sense, rhs), row)) in rows.iter().zip(&matrix).enumerate() {
        let coeffs: Vec<(usize, f64)> = row.iter().copied().enumerate().collect();
        b.add_constraint(format!("c{i}"), &coeffs, sense, rhs).expect("valid row");
    }
    b.build()
}

/// `max x1+x2+x3+2x4+2x5+2x6+3x7` subject to
/// `x1+x2+2x3+x4+x5+x6+x7 <= 100`, all variables nonnegative integers.
pub fn example_knapsack() -> MipInstance {
    let mut b = MipBuilder::new("knapsack");
    b.objective_sense(ObjectiveSense::Maximize);
    let profit = [1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 3.0];
    let weight = [1.0, 1.0, 2.0, 1.0, 1.0, 1.0, 1.0];
    for (j, &c) in profit.iter().enumerate() {
        b.add_variable(format!("x{}", j + 1), c, 0.0, f64::INFINITY, true).expect("distinct names");
    }
    let row: Vec<(usize, f64)> = weight.iter().copied().enumerate().collect();
    b.add_constraint("cap", &row, Sense::Le, 100.0).expect("valid row");
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn respects_size_limits() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let cfg = SynthConfig::default();
        for _ in 0..200 {
            let mip = random_mip(&mut rng, &cfg);
            assert!((1..=5).contains(&mip.n()));
            assert!((1..=3).contains(&mip.m()));
        }
    }

    #[test]
    fn knapsack_matches_file() {
        let parsed = crate::mps::parse_mps(include_str!("../tests/data/knapsack.mps")).unwrap();
        let built = example_knapsack();
        assert_eq!(parsed.objective(), built.objective());
        assert_eq!(parsed.row(0), built.row(0));
        assert_eq!(parsed.rhs(), built.rhs());
        assert_eq!(parsed.upper(), built.upper());
    }
}
