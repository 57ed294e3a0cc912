//! Symmetry-detecting QUBO and QUBO-Plus models.
//!
//! A model is assembled from nonnegative [`PenaltyTerm`]s over binary
//! permutation-matrix entries and expanded (using `x^2 = x`) into an offset,
//! linear and quadratic coefficients. The expanded form is what samplers and
//! file writers consume; the term list is kept so the zero level set can be
//! searched structurally.

mod build;
pub mod format;

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};

pub use build::{
    build_decomposed, build_full, build_quboplus_decomposed, build_quboplus_full, build_quboplus_reduced,
    build_reduced, quboplus_to_qubo, FixMode,
};

/// A permutation-matrix entry: `Pi(j, k)` is 1 iff variable `j` maps to `k`;
/// `Sigma(i, k)` likewise for constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Entry {
    Pi(usize, usize),
    Sigma(usize, usize),
}

impl Entry {
    pub fn kind(&self) -> &'static str {
        match self {
            Entry::Pi(..) => "pi",
            Entry::Sigma(..) => "sigma",
        }
    }

    pub fn pair(&self) -> (usize, usize) {
        match *self {
            Entry::Pi(a, b) | Entry::Sigma(a, b) => (a, b),
        }
    }
}

/// Where an entry lives: a dense model variable, or the constant 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Live(usize),
    One,
}

/// The set of permutation entries a model is defined over.
///
/// Live entries are ordered with all `Pi` before all `Sigma`, each
/// lexicographically; the position in that order is the dense index.
#[derive(Debug, Clone, PartialEq)]
pub struct VarRegistry {
    n: usize,
    m: usize,
    entries: Vec<Entry>,
    index: HashMap<Entry, usize>,
    fixed_ones: Vec<Entry>,
    pi_rows: Vec<Vec<(usize, Slot)>>,
    pi_cols: Vec<Vec<(usize, Slot)>>,
    sigma_rows: Vec<Vec<(usize, Slot)>>,
    sigma_cols: Vec<Vec<(usize, Slot)>>,
}

impl VarRegistry {
    pub fn new(n: usize, m: usize, mut live: Vec<Entry>, mut fixed_ones: Vec<Entry>) -> Result<Self> {
        live.sort_unstable();
        fixed_ones.sort_unstable();
        let in_range = |e: &Entry| match *e {
            Entry::Pi(a, b) => a < n && b < n,
            Entry::Sigma(a, b) => a < m && b < m,
        };
        if let Some(bad) = live.iter().chain(&fixed_ones).find(|e| !in_range(e)) {
            return Err(Error::InvalidParameter(format!("registry entry {bad:?} out of range")));
        }
        if live.windows(2).any(|w| w[0] == w[1]) || fixed_ones.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter("duplicate registry entry".into()));
        }
        let index: HashMap<Entry, usize> = live.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        if fixed_ones.iter().any(|e| index.contains_key(e)) {
            return Err(Error::InvalidParameter("entry both live and fixed".into()));
        }
        let mut reg = VarRegistry {
            n,
            m,
            pi_rows: vec![Vec::new(); n],
            pi_cols: vec![Vec::new(); n],
            sigma_rows: vec![Vec::new(); m],
            sigma_cols: vec![Vec::new(); m],
            entries: live,
            index,
            fixed_ones,
        };
        let slots: Vec<(Entry, Slot)> = reg
            .entries
            .iter()
            .enumerate()
            .map(|(k, &e)| (e, Slot::Live(k)))
            .chain(reg.fixed_ones.iter().map(|&e| (e, Slot::One)))
            .collect();
        for (e, slot) in slots {
            match e {
                Entry::Pi(a, b) => {
                    reg.pi_rows[a].push((b, slot));
                    reg.pi_cols[b].push((a, slot));
                }
                Entry::Sigma(a, b) => {
                    reg.sigma_rows[a].push((b, slot));
                    reg.sigma_cols[b].push((a, slot));
                }
            }
        }
        for list in reg.pi_rows.iter_mut().chain(&mut reg.pi_cols).chain(&mut reg.sigma_rows).chain(&mut reg.sigma_cols) {
            list.sort_unstable_by_key(|&(k, _)| k);
        }
        Ok(reg)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of live (model) variables.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn fixed_ones(&self) -> &[Entry] {
        &self.fixed_ones
    }

    pub fn index_of(&self, e: &Entry) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn slot(&self, e: &Entry) -> Option<Slot> {
        match self.index.get(e) {
            Some(&k) => Some(Slot::Live(k)),
            None => self.fixed_ones.binary_search(e).ok().map(|_| Slot::One),
        }
    }

    /// Live `Pi` entries.
    pub fn pi_count(&self) -> usize {
        self.entries.partition_point(|e| matches!(e, Entry::Pi(..)))
    }

    /// Live `Sigma` entries.
    pub fn sigma_count(&self) -> usize {
        self.len() - self.pi_count()
    }

    /// Entries of row `j` of `π` as `(column, slot)`.
    pub fn pi_row(&self, j: usize) -> &[(usize, Slot)] {
        &self.pi_rows[j]
    }

    pub fn pi_col(&self, k: usize) -> &[(usize, Slot)] {
        &self.pi_cols[k]
    }

    pub fn sigma_row(&self, i: usize) -> &[(usize, Slot)] {
        &self.sigma_rows[i]
    }

    pub fn sigma_col(&self, k: usize) -> &[(usize, Slot)] {
        &self.sigma_cols[k]
    }
}

/// Multipliers for the individual penalty families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PenaltyWeights {
    /// Row/column sums of `π`.
    pub w_bpi: f64,
    /// Row/column sums of `σ`.
    pub w_bsigma: f64,
    /// Unreasonable `π` entries (Full only).
    pub w_pi: f64,
    /// Unreasonable `σ` entries (Full only).
    pub w_sigma: f64,
    /// Coefficient-mismatch products.
    pub w_a: f64,
    /// Fixing of off-class diagonal entries (Decomposed, penalty mode).
    pub w_fix: f64,
}

impl Default for PenaltyWeights {
    fn default() -> Self {
        PenaltyWeights { w_bpi: 1.0, w_bsigma: 1.0, w_pi: 1.0, w_sigma: 1.0, w_a: 1.0, w_fix: 1.0 }
    }
}

impl PenaltyWeights {
    pub fn validate(&self) -> Result<()> {
        let all = [self.w_bpi, self.w_bsigma, self.w_pi, self.w_sigma, self.w_a, self.w_fix];
        if all.iter().all(|w| w.is_finite() && *w > 0.0) {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("penalty weights must be positive and finite: {self:?}")))
        }
    }
}

/// One nonnegative summand of a model, over dense variable indices.
#[derive(Debug, Clone, PartialEq)]
pub enum PenaltyTerm {
    /// `weight * (Σ c_k x_k - rhs)^2`
    Squared { weight: f64, coeffs: Vec<(usize, f64)>, rhs: f64 },
    /// `weight * x_a * x_b`
    Product { weight: f64, a: usize, b: usize },
    /// `weight * x`
    Linear { weight: f64, var: usize },
}

impl PenaltyTerm {
    pub fn evaluate(&self, x: &[bool]) -> f64 {
        match self {
            PenaltyTerm::Squared { weight, coeffs, rhs } => {
                let s: f64 = coeffs.iter().filter(|(k, _)| x[*k]).map(|(_, c)| c).sum();
                weight * (s - rhs) * (s - rhs)
            }
            PenaltyTerm::Product { weight, a, b } => {
                if x[*a] && x[*b] {
                    *weight
                } else {
                    0.0
                }
            }
            PenaltyTerm::Linear { weight, var } => {
                if x[*var] {
                    *weight
                } else {
                    0.0
                }
            }
        }
    }

    pub fn variables(&self) -> Vec<usize> {
        match self {
            PenaltyTerm::Squared { coeffs, .. } => coeffs.iter().map(|&(k, _)| k).collect(),
            PenaltyTerm::Product { a, b, .. } => vec![*a, *b],
            PenaltyTerm::Linear { var, .. } => vec![*var],
        }
    }
}

/// Which construction produced a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Formulation {
    Full,
    Reduced,
    Decomposed { class_id: usize, fix_mode: FixMode },
    PlusFull,
    PlusReduced,
    PlusDecomposed { class_id: usize },
}

impl std::fmt::Display for Formulation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Formulation::Full => write!(f, "full"),
            Formulation::Reduced => write!(f, "reduced"),
            Formulation::Decomposed { class_id, fix_mode: FixMode::Constants } => write!(f, "decomp:{class_id}"),
            Formulation::Decomposed { class_id, fix_mode: FixMode::Penalty } => write!(f, "decomp:{class_id}:penalty"),
            Formulation::PlusFull => write!(f, "plus-full"),
            Formulation::PlusReduced => write!(f, "plus-reduced"),
            Formulation::PlusDecomposed { class_id } => write!(f, "plus-decomp:{class_id}"),
        }
    }
}

/// Expanded QUBO: `offset + Σ linear_k x_k + Σ_{a<b} quadratic_ab x_a x_b`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboModel {
    registry: VarRegistry,
    formulation: Formulation,
    weights: PenaltyWeights,
    offset: f64,
    linear: BTreeMap<usize, f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
    terms: Vec<PenaltyTerm>,
}

#[derive(Default)]
struct Expansion {
    offset: f64,
    linear: BTreeMap<usize, f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
}

impl Expansion {
    fn add_linear(&mut self, k: usize, v: f64) {
        *self.linear.entry(k).or_insert(0.0) += v;
    }

    fn add_quadratic(&mut self, a: usize, b: usize, v: f64) {
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => self.add_linear(a, v),
            std::cmp::Ordering::Less => *self.quadratic.entry((a, b)).or_insert(0.0) += v,
            std::cmp::Ordering::Greater => *self.quadratic.entry((b, a)).or_insert(0.0) += v,
        }
    }

    fn add_term(&mut self, term: &PenaltyTerm) {
        match term {
            PenaltyTerm::Squared { weight, coeffs, rhs } => {
                for (p, &(k, c)) in coeffs.iter().enumerate() {
                    self.add_linear(k, weight * c * (c - 2.0 * rhs));
                    for &(l, d) in &coeffs[p + 1..] {
                        self.add_quadratic(k, l, 2.0 * weight * c * d);
                    }
                }
                self.offset += weight * rhs * rhs;
            }
            PenaltyTerm::Product { weight, a, b } => self.add_quadratic(*a, *b, *weight),
            PenaltyTerm::Linear { weight, var } => self.add_linear(*var, *weight),
        }
    }
}

impl QuboModel {
    pub fn from_terms(
        registry: VarRegistry,
        formulation: Formulation,
        weights: PenaltyWeights,
        terms: Vec<PenaltyTerm>,
    ) -> Result<Self> {
        let q = registry.len();
        if let Some(t) = terms.iter().find(|t| t.variables().iter().any(|&k| k >= q)) {
            return Err(Error::InvalidParameter(format!("term {t:?} refers past registry size {q}")));
        }
        let mut ex = Expansion::default();
        for t in &terms {
            ex.add_term(t);
        }
        ex.linear.retain(|_, v| *v != 0.0);
        ex.quadratic.retain(|_, v| *v != 0.0);
        Ok(QuboModel {
            registry,
            formulation,
            weights,
            offset: ex.offset,
            linear: ex.linear,
            quadratic: ex.quadratic,
            terms,
        })
    }

    pub fn registry(&self) -> &VarRegistry {
        &self.registry
    }

    pub fn formulation(&self) -> Formulation {
        self.formulation
    }

    pub fn weights(&self) -> &PenaltyWeights {
        &self.weights
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn linear(&self) -> &BTreeMap<usize, f64> {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.quadratic
    }

    pub fn terms(&self) -> &[PenaltyTerm] {
        &self.terms
    }

    /// Number of model variables.
    pub fn len(&self) -> usize {
        self.registry.len()
    }

    pub fn is_empty(&self) -> bool {
        self.registry.is_empty()
    }

    /// True when offset and all coefficient maps are identical.
    pub fn same_coefficients(&self, other: &QuboModel) -> bool {
        self.registry.entries == other.registry.entries
            && self.registry.fixed_ones == other.registry.fixed_ones
            && self.offset == other.offset
            && self.linear == other.linear
            && self.quadratic == other.quadratic
    }

    pub fn energy(&self, x: &[bool]) -> Result<f64> {
        if x.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), got: x.len() });
        }
        let mut e = self.offset;
        for (&k, &v) in &self.linear {
            if x[k] {
                e += v;
            }
        }
        for (&(a, b), &v) in &self.quadratic {
            if x[a] && x[b] {
                e += v;
            }
        }
        Ok(e)
    }

    /// Energy as the sum of the unexpanded penalty terms.
    pub fn symbolic_energy(&self, x: &[bool]) -> Result<f64> {
        if x.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), got: x.len() });
        }
        Ok(self.terms.iter().map(|t| t.evaluate(x)).sum())
    }

    /// Sum of absolute values of all coefficients including the offset.
    pub fn magnitude(&self) -> f64 {
        self.offset.abs() + self.linear.values().map(|v| v.abs()).sum::<f64>()
            + self.quadratic.values().map(|v| v.abs()).sum::<f64>()
    }

    /// Energies at or below this value count as zero.
    pub fn zero_tolerance(&self) -> f64 {
        1e-10 * self.magnitude().max(1.0)
    }

    /// The assignment that encodes identity permutations (all diagonal
    /// entries set).
    pub fn identity_assignment(&self) -> Vec<bool> {
        self.registry
            .entries()
            .iter()
            .map(|e| {
                let (a, b) = e.pair();
                a == b
            })
            .collect()
    }
}

/// Linear equality `Σ coeffs · x = rhs` over dense indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearConstraint {
    pub coeffs: Vec<(usize, f64)>,
    pub rhs: f64,
}

impl LinearConstraint {
    pub fn is_satisfied(&self, x: &[bool]) -> bool {
        let s: f64 = self.coeffs.iter().filter(|(k, _)| x[*k]).map(|(_, c)| c).sum();
        s == self.rhs
    }
}

/// Quadratic objective plus linear equality constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboPlusModel {
    pub objective: QuboModel,
    pub constraints: Vec<LinearConstraint>,
}

impl QuboPlusModel {
    pub fn registry(&self) -> &VarRegistry {
        self.objective.registry()
    }

    pub fn is_feasible(&self, x: &[bool]) -> bool {
        self.constraints.iter().all(|c| c.is_satisfied(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_penalty_expansion() {
        let reg = VarRegistry::new(2, 0, vec![Entry::Pi(0, 0), Entry::Pi(0, 1)], vec![]).unwrap();
        let term = PenaltyTerm::Squared { weight: 1.0, coeffs: vec![(0, 1.0), (1, 1.0)], rhs: 1.0 };
        let model = QuboModel::from_terms(reg, Formulation::Reduced, PenaltyWeights::default(), vec![term]).unwrap();
        assert_eq!(model.offset(), 1.0);
        assert_eq!(model.linear().values().copied().collect::<Vec<_>>(), vec![-1.0, -1.0]);
        assert_eq!(model.quadratic().get(&(0, 1)), Some(&2.0));
        for x in [[false, false], [true, false], [false, true], [true, true]] {
            assert_eq!(model.energy(&x).unwrap(), model.symbolic_energy(&x).unwrap());
        }
        assert!(model.energy(&[true]).is_err());
    }

    #[test]
    fn registry_orders_pi_before_sigma() {
        let reg = VarRegistry::new(
            2,
            1,
            vec![Entry::Sigma(0, 0), Entry::Pi(1, 1), Entry::Pi(0, 1)],
            vec![Entry::Pi(0, 0)],
        )
        .unwrap();
        assert_eq!(reg.entries(), &[Entry::Pi(0, 1), Entry::Pi(1, 1), Entry::Sigma(0, 0)]);
        assert_eq!((reg.pi_count(), reg.sigma_count()), (2, 1));
        assert_eq!(reg.slot(&Entry::Pi(0, 0)), Some(Slot::One));
        assert_eq!(reg.slot(&Entry::Pi(1, 0)), None);
        assert_eq!(reg.pi_row(0), &[(0, Slot::One), (1, Slot::Live(0))]);
        assert!(VarRegistry::new(1, 0, vec![Entry::Pi(0, 0), Entry::Pi(0, 0)], vec![]).is_err());
        assert!(VarRegistry::new(1, 0, vec![Entry::Pi(0, 1)], vec![]).is_err());
    }

    #[test]
    fn nonpositive_weights_rejected() {
        let w = PenaltyWeights { w_a: 0.0, ..Default::default() };
        assert!(w.validate().is_err());
        assert!(PenaltyWeights::default().validate().is_ok());
    }
}
