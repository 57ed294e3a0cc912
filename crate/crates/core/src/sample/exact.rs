use super::{cmp_bit_pattern, Adjacency};
use crate::error::{Error, Result};
use crate::qubo::{Entry, PenaltyTerm, QuboModel};

pub const DEFAULT_EXACT_LIMIT: usize = 24;

/// Every assignment with `energy <= target` (up to the model's zero
/// tolerance), in ascending bit-pattern order.
pub fn enumerate_exact(model: &QuboModel, limit: usize, target: f64) -> Result<Vec<Vec<bool>>> {
    let q = model.len();
    if q > limit || q >= 63 {
        return Err(Error::TooLarge { size: q, limit });
    }
    let tol = model.zero_tolerance();
    // Incremental sums drift; candidates are re-evaluated exactly.
    let slack = tol + 1e-9 * model.magnitude();
    let adj = Adjacency::new(model);
    let mut x = vec![false; q];
    let mut field = adj.linear.clone();
    let mut energy = model.offset();
    let mut hits: Vec<(u64, Vec<bool>)> = Vec::new();
    let mut code: u64 = 0;
    let total: u64 = 1 << q;
    for step in 0..total {
        if step > 0 {
            let bit = step.trailing_zeros() as usize;
            let on = !x[bit];
            energy += if on { field[bit] } else { -field[bit] };
            x[bit] = on;
            code ^= 1 << bit;
            let sign = if on { 1.0 } else { -1.0 };
            for &(j, w) in &adj.neighbors[bit] {
                field[j] += sign * w;
            }
        }
        if energy <= target + slack && model.energy(&x)? <= target + tol {
            hits.push((code, x.clone()));
        }
    }
    hits.sort_unstable_by_key(|(c, _)| *c);
    Ok(hits.into_iter().map(|(_, x)| x).collect())
}

enum TermState {
    Squared { rhs: f64, assigned: f64, free_min: f64, free_max: f64 },
    Product { ones: u8 },
    Linear { ones: u8 },
}

impl TermState {
    fn forced_positive(&self) -> bool {
        match *self {
            TermState::Squared { rhs, assigned, free_min, free_max } => {
                let eps = 1e-9 * (1.0 + rhs.abs() + free_max - free_min);
                rhs < assigned + free_min - eps || rhs > assigned + free_max + eps
            }
            TermState::Product { ones } => ones == 2,
            TermState::Linear { ones } => ones == 1,
        }
    }

    /// Moves a variable with coefficient `c` out of the free set.
    fn assign(&mut self, c: f64, value: bool, undo: bool) {
        let s = if undo { -1.0 } else { 1.0 };
        match self {
            TermState::Squared { assigned, free_min, free_max, .. } => {
                if c < 0.0 {
                    *free_min -= s * c;
                } else {
                    *free_max -= s * c;
                }
                if value {
                    *assigned += s * c;
                }
            }
            TermState::Product { ones } | TermState::Linear { ones } => {
                if value {
                    if undo {
                        *ones -= 1;
                    } else {
                        *ones += 1;
                    }
                }
            }
        }
    }
}

struct Search<'a> {
    model: &'a QuboModel,
    order: Vec<usize>,
    incidence: Vec<Vec<(usize, f64)>>,
    states: Vec<TermState>,
    x: Vec<bool>,
    tol: f64,
    found: Vec<Vec<bool>>,
}

impl Search<'_> {
    fn try_assign(&mut self, var: usize, value: bool) -> bool {
        let mut ok = true;
        for &(t, c) in &self.incidence[var] {
            self.states[t].assign(c, value, false);
            ok &= !self.states[t].forced_positive();
        }
        ok
    }

    fn unassign(&mut self, var: usize, value: bool) {
        for &(t, c) in &self.incidence[var] {
            self.states[t].assign(c, value, true);
        }
    }

    fn descend(&mut self, depth: usize) -> Result<()> {
        if depth == self.order.len() {
            if self.model.energy(&self.x)? <= self.tol {
                self.found.push(self.x.clone());
            }
            return Ok(());
        }
        let var = self.order[depth];
        for value in [false, true] {
            self.x[var] = value;
            if self.try_assign(var, value) {
                self.descend(depth + 1)?;
            }
            self.unassign(var, value);
        }
        self.x[var] = false;
        Ok(())
    }
}

/// The complete zero-energy set of a model built from positive-weight
/// penalty terms, in ascending bit-pattern order.
///
/// Every term is nonnegative, so any partial assignment that forces one
/// term above zero can be discarded. `Sigma` entries are branched on first
/// so mismatch products prune as soon as a `Pi` entry is set.
pub fn zero_set_search(model: &QuboModel) -> Result<Vec<Vec<bool>>> {
    let q = model.len();
    let mut incidence: Vec<Vec<(usize, f64)>> = vec![Vec::new(); q];
    let mut states = Vec::with_capacity(model.terms().len());
    for (t, term) in model.terms().iter().enumerate() {
        let state = match term {
            PenaltyTerm::Squared { weight, coeffs, rhs } => {
                if *weight <= 0.0 || weight.is_nan() {
                    return Err(Error::InvalidParameter("zero-set search needs positive term weights".into()));
                }
                for &(k, c) in coeffs {
                    incidence[k].push((t, c));
                }
                TermState::Squared {
                    rhs: *rhs,
                    assigned: 0.0,
                    free_min: coeffs.iter().map(|&(_, c)| c.min(0.0)).sum(),
                    free_max: coeffs.iter().map(|&(_, c)| c.max(0.0)).sum(),
                }
            }
            PenaltyTerm::Product { weight, a, b } => {
                if *weight <= 0.0 || weight.is_nan() {
                    return Err(Error::InvalidParameter("zero-set search needs positive term weights".into()));
                }
                incidence[*a].push((t, 1.0));
                incidence[*b].push((t, 1.0));
                TermState::Product { ones: 0 }
            }
            PenaltyTerm::Linear { weight, var } => {
                if *weight <= 0.0 || weight.is_nan() {
                    return Err(Error::InvalidParameter("zero-set search needs positive term weights".into()));
                }
                incidence[*var].push((t, 1.0));
                TermState::Linear { ones: 0 }
            }
        };
        if state.forced_positive() {
            return Ok(Vec::new());
        }
        states.push(state);
    }
    let entries = model.registry().entries();
    let mut order: Vec<usize> = (0..q).filter(|&k| matches!(entries[k], Entry::Sigma(..))).collect();
    order.extend((0..q).filter(|&k| matches!(entries[k], Entry::Pi(..))));
    let mut search = Search { model, order, incidence, states, x: vec![false; q], tol: model.zero_tolerance(), found: Vec::new() };
    search.descend(0)?;
    let mut found = search.found;
    found.sort_by(|a, b| cmp_bit_pattern(a, b));
    Ok(found)
}
