use serde::Serialize;

use super::{Entry, Formulation, LinearConstraint, PenaltyTerm, PenaltyWeights, QuboModel, QuboPlusModel, Slot, VarRegistry};
use crate::error::{Error, Result};
use crate::mip::MipInstance;
use crate::reasonability::{CoeffKey, ReasonabilityPartition};

/// How off-class diagonal entries of a decomposition are pinned to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum FixMode {
    /// Substituted by the constant 1 and removed from the model.
    #[default]
    Constants,
    /// Kept as variables with a `(1 - π_jj)^2` penalty.
    Penalty,
}

fn check_inputs(mip: &MipInstance, partition: &ReasonabilityPartition, weights: &PenaltyWeights) -> Result<()> {
    if mip.n() == 0 {
        return Err(Error::Degenerate("instance has no variables".into()));
    }
    if partition.n() != mip.n() || partition.m() != mip.m() {
        return Err(Error::InvalidParameter("partition does not match instance".into()));
    }
    weights.validate()
}

fn full_registry(n: usize, m: usize) -> Result<VarRegistry> {
    let pi = (0..n).flat_map(|j| (0..n).map(move |k| Entry::Pi(j, k)));
    let sigma = (0..m).flat_map(|i| (0..m).map(move |k| Entry::Sigma(i, k)));
    VarRegistry::new(n, m, pi.chain(sigma).collect(), Vec::new())
}

fn sigma_reasonable(p: &ReasonabilityPartition) -> impl Iterator<Item = Entry> + '_ {
    (0..p.m()).flat_map(move |i| p.con_class_members(i).iter().map(move |&k| Entry::Sigma(i, k)))
}

fn reduced_registry(p: &ReasonabilityPartition) -> Result<VarRegistry> {
    let pi = (0..p.n()).flat_map(|j| p.var_class_members(j).iter().map(move |&k| Entry::Pi(j, k)));
    VarRegistry::new(p.n(), p.m(), pi.chain(sigma_reasonable(p)).collect(), Vec::new())
}

fn decomposed_registry(p: &ReasonabilityPartition, class_id: usize, fix_mode: FixMode) -> Result<VarRegistry> {
    let class = p.var_classes().get(class_id).ok_or(Error::InvalidClass(class_id))?;
    let mut live: Vec<Entry> = class.iter().flat_map(|&j| class.iter().map(move |&k| Entry::Pi(j, k))).collect();
    let off_diagonal = (0..p.n()).filter(|&j| p.var_class_of(j) != class_id).map(|j| Entry::Pi(j, j));
    let fixed = match fix_mode {
        FixMode::Constants => off_diagonal.collect(),
        FixMode::Penalty => {
            live.extend(off_diagonal);
            Vec::new()
        }
    };
    live.extend(sigma_reasonable(p));
    VarRegistry::new(p.n(), p.m(), live, fixed)
}

/// Sum over the given slots equal to one; constant members shift the rhs.
fn slot_sum(slots: &[(usize, Slot)]) -> LinearConstraint {
    let ones = slots.iter().filter(|(_, s)| *s == Slot::One).count() as f64;
    let coeffs = slots
        .iter()
        .filter_map(|&(_, s)| match s {
            Slot::Live(k) => Some((k, 1.0)),
            Slot::One => None,
        })
        .collect();
    LinearConstraint { coeffs, rhs: 1.0 - ones }
}

/// Row sums then column sums of `π` over `lines`, then the same for `σ`.
fn assignment_constraints(reg: &VarRegistry, pi_lines: &[usize]) -> Vec<LinearConstraint> {
    let mut out = Vec::with_capacity(2 * pi_lines.len() + 2 * reg.m());
    out.extend(pi_lines.iter().map(|&j| slot_sum(reg.pi_row(j))));
    out.extend(pi_lines.iter().map(|&j| slot_sum(reg.pi_col(j))));
    out.extend((0..reg.m()).map(|i| slot_sum(reg.sigma_row(i))));
    out.extend((0..reg.m()).map(|i| slot_sum(reg.sigma_col(i))));
    out
}

fn squared(weight: f64, c: LinearConstraint) -> PenaltyTerm {
    PenaltyTerm::Squared { weight, coeffs: c.coeffs, rhs: c.rhs }
}

/// Doubly-stochastic penalties: each constraint from
/// [`assignment_constraints`] squared, with `w_bpi` on the `π` part.
fn assignment_penalties(reg: &VarRegistry, pi_lines: &[usize], w: &PenaltyWeights) -> Vec<PenaltyTerm> {
    let n_pi = 2 * pi_lines.len();
    assignment_constraints(reg, pi_lines)
        .into_iter()
        .enumerate()
        .map(|(k, c)| squared(if k < n_pi { w.w_bpi } else { w.w_bsigma }, c))
        .collect()
}

fn product(weight: f64, a: Slot, b: Slot) -> PenaltyTerm {
    match (a, b) {
        (Slot::Live(a), Slot::Live(b)) => PenaltyTerm::Product { weight, a, b },
        (Slot::Live(var), Slot::One) | (Slot::One, Slot::Live(var)) => PenaltyTerm::Linear { weight, var },
        (Slot::One, Slot::One) => PenaltyTerm::Squared { weight, coeffs: Vec::new(), rhs: 1.0 },
    }
}

/// Coefficient-mismatch products `σ_ii' π_jj'` with `A_ij != A_i'j'`.
///
/// For each registered `σ_ii'`, only `π` entries touching the support of
/// row `i` (by row) or row `i'` (by column) can mismatch; pairs where both
/// coefficients are implicit zeros never do.
fn mismatch_products(mip: &MipInstance, p: &ReasonabilityPartition, reg: &VarRegistry, weight: f64) -> Vec<PenaltyTerm> {
    let mode = p.config().coeff_mode;
    let zero = mode.key(0.0);
    let mut src: Vec<Option<CoeffKey>> = vec![None; mip.n()];
    let mut dst: Vec<Option<CoeffKey>> = vec![None; mip.n()];
    let mut out = Vec::new();
    for i in 0..reg.m() {
        for &(k, sigma) in reg.sigma_row(i) {
            for &(j, v) in mip.row(i) {
                src[j] = Some(mode.key(v));
            }
            for &(j, v) in mip.row(k) {
                dst[j] = Some(mode.key(v));
            }
            for &(j, a) in mip.row(i) {
                let a = mode.key(a);
                for &(jj, pi) in reg.pi_row(j) {
                    if dst[jj].unwrap_or(zero) != a {
                        out.push(product(weight, sigma, pi));
                    }
                }
            }
            for &(jj, b) in mip.row(k) {
                let b = mode.key(b);
                for &(j, pi) in reg.pi_col(jj) {
                    if src[j].is_none() && b != zero {
                        out.push(product(weight, sigma, pi));
                    }
                }
            }
            for &(j, _) in mip.row(i) {
                src[j] = None;
            }
            for &(j, _) in mip.row(k) {
                dst[j] = None;
            }
        }
    }
    out
}

fn unreasonable_entries(p: &ReasonabilityPartition, reg: &VarRegistry, w: &PenaltyWeights) -> Vec<PenaltyTerm> {
    reg.entries()
        .iter()
        .enumerate()
        .filter_map(|(var, e)| match *e {
            Entry::Pi(a, b) if !p.vars_reasonable(a, b) => Some(PenaltyTerm::Linear { weight: w.w_pi, var }),
            Entry::Sigma(a, b) if !p.cons_reasonable(a, b) => Some(PenaltyTerm::Linear { weight: w.w_sigma, var }),
            _ => None,
        })
        .collect()
}

/// Off-class diagonal fixing penalties `(1 - π_jj)^2` for live diagonals.
fn fixing_constraints(p: &ReasonabilityPartition, reg: &VarRegistry, class_id: usize) -> Vec<LinearConstraint> {
    (0..p.n())
        .filter(|&j| p.var_class_of(j) != class_id)
        .filter_map(|j| reg.index_of(&Entry::Pi(j, j)))
        .map(|k| LinearConstraint { coeffs: vec![(k, 1.0)], rhs: 1.0 })
        .collect()
}

/// Full formulation over all `n^2 + m^2` entries.
pub fn build_full(mip: &MipInstance, partition: &ReasonabilityPartition, weights: &PenaltyWeights) -> Result<QuboModel> {
    check_inputs(mip, partition, weights)?;
    let reg = full_registry(mip.n(), mip.m())?;
    let all: Vec<usize> = (0..mip.n()).collect();
    let mut terms = assignment_penalties(&reg, &all, weights);
    terms.extend(unreasonable_entries(partition, &reg, weights));
    terms.extend(mismatch_products(mip, partition, &reg, weights.w_a));
    QuboModel::from_terms(reg, Formulation::Full, *weights, terms)
}

/// Reduced formulation over the `ν + μ` reasonable entries.
pub fn build_reduced(mip: &MipInstance, partition: &ReasonabilityPartition, weights: &PenaltyWeights) -> Result<QuboModel> {
    check_inputs(mip, partition, weights)?;
    let reg = reduced_registry(partition)?;
    let all: Vec<usize> = (0..mip.n()).collect();
    let mut terms = assignment_penalties(&reg, &all, weights);
    terms.extend(mismatch_products(mip, partition, &reg, weights.w_a));
    QuboModel::from_terms(reg, Formulation::Reduced, *weights, terms)
}

/// Decomposition over variable class `class_id`: permutations act only
/// inside that class, every other variable stays in place.
///
/// Row/column sums of `π` are imposed for class members only; off-class
/// diagonals are pinned either as constants or by the fixing penalty.
pub fn build_decomposed(
    mip: &MipInstance,
    partition: &ReasonabilityPartition,
    class_id: usize,
    weights: &PenaltyWeights,
    fix_mode: FixMode,
) -> Result<QuboModel> {
    check_inputs(mip, partition, weights)?;
    let reg = decomposed_registry(partition, class_id, fix_mode)?;
    let class = &partition.var_classes()[class_id];
    let mut terms = assignment_penalties(&reg, class, weights);
    terms.extend(mismatch_products(mip, partition, &reg, weights.w_a));
    terms.extend(fixing_constraints(partition, &reg, class_id).into_iter().map(|c| squared(weights.w_fix, c)));
    QuboModel::from_terms(reg, Formulation::Decomposed { class_id, fix_mode }, *weights, terms)
}

pub fn build_quboplus_full(
    mip: &MipInstance,
    partition: &ReasonabilityPartition,
    weights: &PenaltyWeights,
) -> Result<QuboPlusModel> {
    check_inputs(mip, partition, weights)?;
    let reg = full_registry(mip.n(), mip.m())?;
    let all: Vec<usize> = (0..mip.n()).collect();
    let constraints = assignment_constraints(&reg, &all);
    let mut terms = unreasonable_entries(partition, &reg, weights);
    terms.extend(mismatch_products(mip, partition, &reg, weights.w_a));
    let objective = QuboModel::from_terms(reg, Formulation::PlusFull, *weights, terms)?;
    Ok(QuboPlusModel { objective, constraints })
}

pub fn build_quboplus_reduced(
    mip: &MipInstance,
    partition: &ReasonabilityPartition,
    weights: &PenaltyWeights,
) -> Result<QuboPlusModel> {
    check_inputs(mip, partition, weights)?;
    let reg = reduced_registry(partition)?;
    let all: Vec<usize> = (0..mip.n()).collect();
    let constraints = assignment_constraints(&reg, &all);
    let terms = mismatch_products(mip, partition, &reg, weights.w_a);
    let objective = QuboModel::from_terms(reg, Formulation::PlusReduced, *weights, terms)?;
    Ok(QuboPlusModel { objective, constraints })
}

pub fn build_quboplus_decomposed(
    mip: &MipInstance,
    partition: &ReasonabilityPartition,
    class_id: usize,
    weights: &PenaltyWeights,
) -> Result<QuboPlusModel> {
    check_inputs(mip, partition, weights)?;
    let reg = decomposed_registry(partition, class_id, FixMode::Penalty)?;
    let class = &partition.var_classes()[class_id];
    let mut constraints = assignment_constraints(&reg, class);
    constraints.extend(fixing_constraints(partition, &reg, class_id));
    let terms = mismatch_products(mip, partition, &reg, weights.w_a);
    let objective = QuboModel::from_terms(reg, Formulation::PlusDecomposed { class_id }, *weights, terms)?;
    Ok(QuboPlusModel { objective, constraints })
}

/// Moves every equality constraint into the objective as
/// `penalty * (Σ c x - rhs)^2`.
pub fn quboplus_to_qubo(model: &QuboPlusModel, penalty: f64) -> Result<QuboModel> {
    if !(penalty.is_finite() && penalty > 0.0) {
        return Err(Error::InvalidParameter(format!("penalty must be positive, got {penalty}")));
    }
    let obj = &model.objective;
    let mut terms = obj.terms().to_vec();
    terms.extend(model.constraints.iter().cloned().map(|c| squared(penalty, c)));
    let weights = PenaltyWeights { w_bpi: penalty, w_bsigma: penalty, w_fix: penalty, ..*obj.weights() };
    QuboModel::from_terms(obj.registry().clone(), obj.formulation(), weights, terms)
}
