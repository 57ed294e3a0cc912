//! Reasonable-permutation classes.
//!
//! Two variables may be exchanged by a symmetry only if they agree on
//! objective coefficient and integrality (and, optionally, bounds and
//! further structural invariants). Constraints likewise must agree on the
//! right-hand side (and optionally sense, size and coefficients). The
//! classes of these one-shot signatures define which permutation-matrix
//! entries a formulation needs to carry.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mip::{MipInstance, Sense};

/// How floating-point data is compared when building signatures and
/// checking symmetries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum CoeffMode {
    /// Bit-exact equality (with `-0.0 == 0.0`).
    #[default]
    Exact,
    /// Values are rounded to the given number of significant decimal digits
    /// before comparison.
    Digits(u32),
}

/// Hashable comparison key for a coefficient under a [`CoeffMode`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffKey(u64);

impl CoeffMode {
    pub fn key(self, v: f64) -> CoeffKey {
        let v = if v == 0.0 { 0.0 } else { v };
        match self {
            CoeffMode::Exact => CoeffKey(v.to_bits()),
            CoeffMode::Digits(k) if v.is_finite() => {
                let k = k.clamp(1, 17) as usize;
                let rounded: f64 = format!("{:.*e}", k - 1, v).parse().unwrap_or(v);
                let rounded = if rounded == 0.0 { 0.0 } else { rounded };
                CoeffKey(rounded.to_bits())
            }
            CoeffMode::Digits(_) => CoeffKey(v.to_bits()),
        }
    }

    pub fn same(self, a: f64, b: f64) -> bool {
        self.key(a) == self.key(b)
    }
}

/// Which features enter the variable and constraint signatures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SignatureConfig {
    /// Variables must share lower and upper bounds.
    pub use_bounds: bool,
    /// Constraints must share their sense.
    pub use_sense: bool,
    /// Variables must appear in the same number of constraints.
    pub sharpen_var_degree: bool,
    /// Constraints must contain the same number of variables.
    pub sharpen_con_size: bool,
    /// Variables must have the same multiset of nonzero column coefficients.
    pub sharpen_var_coeffs: bool,
    /// Constraints must have the same multiset of nonzero row coefficients.
    pub sharpen_con_coeffs: bool,
    pub coeff_mode: CoeffMode,
}

impl Default for SignatureConfig {
    fn default() -> Self {
        SignatureConfig {
            use_bounds: true,
            use_sense: true,
            sharpen_var_degree: false,
            sharpen_con_size: false,
            sharpen_var_coeffs: false,
            sharpen_con_coeffs: false,
            coeff_mode: CoeffMode::Exact,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableSignature {
    objective: CoeffKey,
    integer: bool,
    bounds: Option<(CoeffKey, CoeffKey)>,
    degree: Option<usize>,
    coeffs: Option<Vec<CoeffKey>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstraintSignature {
    rhs: CoeffKey,
    sense: Option<Sense>,
    size: Option<usize>,
    coeffs: Option<Vec<CoeffKey>>,
}

fn coeff_multiset(entries: &[(usize, f64)], mode: CoeffMode) -> Vec<CoeffKey> {
    let mut keys: Vec<CoeffKey> = entries.iter().map(|&(_, v)| mode.key(v)).collect();
    keys.sort_unstable();
    keys
}

pub fn variable_signature(mip: &MipInstance, j: usize, config: &SignatureConfig) -> Result<VariableSignature> {
    if j >= mip.n() {
        return Err(Error::IndexOutOfRange { index: j, len: mip.n() });
    }
    let mode = config.coeff_mode;
    Ok(VariableSignature {
        objective: mode.key(mip.objective()[j]),
        integer: mip.is_integer()[j],
        bounds: config.use_bounds.then(|| (mode.key(mip.lower()[j]), mode.key(mip.upper()[j]))),
        degree: config.sharpen_var_degree.then(|| mip.column(j).len()),
        coeffs: config.sharpen_var_coeffs.then(|| coeff_multiset(mip.column(j), mode)),
    })
}

pub fn constraint_signature(mip: &MipInstance, i: usize, config: &SignatureConfig) -> Result<ConstraintSignature> {
    if i >= mip.m() {
        return Err(Error::IndexOutOfRange { index: i, len: mip.m() });
    }
    let mode = config.coeff_mode;
    Ok(ConstraintSignature {
        rhs: mode.key(mip.rhs()[i]),
        sense: config.use_sense.then(|| mip.senses()[i]),
        size: config.sharpen_con_size.then(|| mip.row(i).len()),
        coeffs: config.sharpen_con_coeffs.then(|| coeff_multiset(mip.row(i), mode)),
    })
}

/// Signature classes over variables and constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReasonabilityPartition {
    var_class_of: Vec<usize>,
    var_classes: Vec<Vec<usize>>,
    con_class_of: Vec<usize>,
    con_classes: Vec<Vec<usize>>,
    nu: usize,
    mu: usize,
    config: SignatureConfig,
}

/// Groups `0..len` by signature; class ids follow first appearance.
fn group<S: std::hash::Hash + Eq>(signatures: Vec<S>) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut ids: HashMap<S, usize> = HashMap::with_capacity(signatures.len());
    let mut class_of = Vec::with_capacity(signatures.len());
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (idx, sig) in signatures.into_iter().enumerate() {
        let next = classes.len();
        let id = *ids.entry(sig).or_insert(next);
        if id == next {
            classes.push(Vec::new());
        }
        classes[id].push(idx);
        class_of.push(id);
    }
    (class_of, classes)
}

fn sum_of_squares(classes: &[Vec<usize>]) -> usize {
    classes.iter().map(|c| c.len() * c.len()).sum()
}

pub fn build_partition(mip: &MipInstance, config: &SignatureConfig) -> ReasonabilityPartition {
    let var_sigs = (0..mip.n()).map(|j| variable_signature(mip, j, config).expect("index in range")).collect();
    let con_sigs = (0..mip.m()).map(|i| constraint_signature(mip, i, config).expect("index in range")).collect();
    let (var_class_of, var_classes) = group(var_sigs);
    let (con_class_of, con_classes) = group(con_sigs);
    ReasonabilityPartition {
        nu: sum_of_squares(&var_classes),
        mu: sum_of_squares(&con_classes),
        var_class_of,
        var_classes,
        con_class_of,
        con_classes,
        config: *config,
    }
}

impl ReasonabilityPartition {
    pub fn n(&self) -> usize {
        self.var_class_of.len()
    }

    pub fn m(&self) -> usize {
        self.con_class_of.len()
    }

    /// `|Π| = Σ_j |r(j)|`.
    pub fn nu(&self) -> usize {
        self.nu
    }

    /// `|Σ| = Σ_i |r(i)|`.
    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn config(&self) -> &SignatureConfig {
        &self.config
    }

    pub fn var_class_of(&self, j: usize) -> usize {
        self.var_class_of[j]
    }

    pub fn con_class_of(&self, i: usize) -> usize {
        self.con_class_of[i]
    }

    pub fn var_classes(&self) -> &[Vec<usize>] {
        &self.var_classes
    }

    pub fn con_classes(&self) -> &[Vec<usize>] {
        &self.con_classes
    }

    /// Members of `r(j)`, ascending.
    pub fn var_class_members(&self, j: usize) -> &[usize] {
        &self.var_classes[self.var_class_of[j]]
    }

    /// Members of `r(i)`, ascending.
    pub fn con_class_members(&self, i: usize) -> &[usize] {
        &self.con_classes[self.con_class_of[i]]
    }

    pub fn vars_reasonable(&self, j: usize, k: usize) -> bool {
        self.var_class_of[j] == self.var_class_of[k]
    }

    pub fn cons_reasonable(&self, i: usize, k: usize) -> bool {
        self.con_class_of[i] == self.con_class_of[k]
    }

    /// Largest variable class, ties going to the class holding the smallest
    /// variable index. Returns `(class id, size)`.
    pub fn max_decomp_class(&self) -> Result<(usize, usize)> {
        // Class ids follow first appearance, so the lowest id wins ties.
        self.var_classes
            .iter()
            .enumerate()
            .fold(None, |best: Option<(usize, usize)>, (id, c)| match best {
                Some((_, size)) if size >= c.len() => best,
                _ => Some((id, c.len())),
            })
            .ok_or_else(|| Error::Degenerate("instance has no variables".into()))
    }

    /// `|r(j)|^2 + (n - |r(j)|) + μ` for the given class.
    pub fn decomposed_size(&self, class_id: usize) -> Result<usize> {
        let size = self.var_classes.get(class_id).ok_or(Error::InvalidClass(class_id))?.len();
        Ok(size * size + (self.n() - size) + self.mu)
    }
}
