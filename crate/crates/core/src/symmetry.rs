//! Decoding permutation matrices, checking formulation symmetries directly
//! against the instance data, exhaustive symmetry enumeration for small
//! instances, and orbit computation.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mip::{lookup, MipInstance};
use crate::qubo::{Entry, VarRegistry};
use crate::reasonability::{ReasonabilityPartition, SignatureConfig};

/// A bijection on `0..len`; `p[j]` is the image of `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &k in &images {
            if k >= images.len() || std::mem::replace(&mut seen[k], true) {
                return Err(Error::NotBijection(format!("{images:?}")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(len: usize) -> Self {
        Permutation((0..len).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn image(&self, j: usize) -> usize {
        self.0[j]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(j, &k)| j == k)
    }
}

/// The first condition found violated by a candidate symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum SymmetryViolation {
    Integrality { var: usize },
    Objective { var: usize },
    Bounds { var: usize },
    Rhs { row: usize },
    Sense { row: usize },
    Coefficient { row: usize, var: usize },
}

/// Checks the formulation-symmetry conditions for `(pi, sigma)`: integer
/// variables map to integer variables, `c`, `b` are preserved and
/// `A[σ(i)][π(j)] == A[i][j]` everywhere. Bounds and senses are compared
/// when the corresponding signature flags are on.
pub fn check_formulation_symmetry(
    mip: &MipInstance,
    pi: &Permutation,
    sigma: &Permutation,
    config: &SignatureConfig,
) -> Result<Option<SymmetryViolation>> {
    if pi.len() != mip.n() || sigma.len() != mip.m() {
        return Err(Error::NotBijection(format!(
            "permutation sizes ({}, {}) do not match instance ({}, {})",
            pi.len(),
            sigma.len(),
            mip.n(),
            mip.m()
        )));
    }
    let mode = config.coeff_mode;
    for j in 0..mip.n() {
        let k = pi.image(j);
        if mip.is_integer()[j] != mip.is_integer()[k] {
            return Ok(Some(SymmetryViolation::Integrality { var: j }));
        }
        if !mode.same(mip.objective()[j], mip.objective()[k]) {
            return Ok(Some(SymmetryViolation::Objective { var: j }));
        }
        if config.use_bounds && !(mode.same(mip.lower()[j], mip.lower()[k]) && mode.same(mip.upper()[j], mip.upper()[k])) {
            return Ok(Some(SymmetryViolation::Bounds { var: j }));
        }
    }
    for i in 0..mip.m() {
        let k = sigma.image(i);
        if !mode.same(mip.rhs()[i], mip.rhs()[k]) {
            return Ok(Some(SymmetryViolation::Rhs { row: i }));
        }
        if config.use_sense && mip.senses()[i] != mip.senses()[k] {
            return Ok(Some(SymmetryViolation::Sense { row: i }));
        }
        let (src, dst) = (mip.row(i), mip.row(k));
        for &(j, v) in src {
            if !mode.same(v, lookup(dst, pi.image(j))) {
                return Ok(Some(SymmetryViolation::Coefficient { row: i, var: j }));
            }
        }
        // Nonzeros map injectively onto nonzeros; equal counts leave no
        // zero of row i facing a nonzero of row σ(i).
        if src.len() != dst.len() {
            let j = (0..mip.n()).find(|&j| lookup(src, j) == 0.0 && lookup(dst, pi.image(j)) != 0.0).unwrap_or(0);
            return Ok(Some(SymmetryViolation::Coefficient { row: i, var: j }));
        }
    }
    Ok(None)
}

pub fn is_formulation_symmetry(
    mip: &MipInstance,
    pi: &Permutation,
    sigma: &Permutation,
    config: &SignatureConfig,
) -> Result<bool> {
    Ok(check_formulation_symmetry(mip, pi, sigma, config)?.is_none())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecodedSymmetry {
    pub pi: Option<Permutation>,
    pub sigma: Option<Permutation>,
    /// Both matrices are permutation matrices.
    pub valid_permutation: bool,
    pub is_symmetry: bool,
    pub violation: Option<SymmetryViolation>,
}

fn matrix_to_permutation(size: usize, ones: impl Iterator<Item = (usize, usize)>) -> Option<Permutation> {
    let mut row_image = vec![None; size];
    let mut col_hit = vec![false; size];
    for (a, b) in ones {
        if row_image[a].replace(b).is_some() || std::mem::replace(&mut col_hit[b], true) {
            return None;
        }
    }
    let images: Option<Vec<usize>> = row_image.into_iter().collect();
    images.map(Permutation)
}

/// Reads `π` and `σ` from an assignment. Fixed entries count as set bits and
/// unregistered entries as zero. Returns `None` for a matrix that is not a
/// permutation matrix.
pub fn decode_permutations(registry: &VarRegistry, x: &[bool]) -> Result<(Option<Permutation>, Option<Permutation>)> {
    if x.len() != registry.len() {
        return Err(Error::LengthMismatch { expected: registry.len(), got: x.len() });
    }
    let set = || {
        registry
            .entries()
            .iter()
            .zip(x)
            .filter(|(_, &bit)| bit)
            .map(|(e, _)| *e)
            .chain(registry.fixed_ones().iter().copied())
    };
    let pi = matrix_to_permutation(
        registry.n(),
        set().filter_map(|e| match e {
            Entry::Pi(a, b) => Some((a, b)),
            _ => None,
        }),
    );
    let sigma = matrix_to_permutation(
        registry.m(),
        set().filter_map(|e| match e {
            Entry::Sigma(a, b) => Some((a, b)),
            _ => None,
        }),
    );
    Ok((pi, sigma))
}

/// Decodes an assignment and verifies the result against the instance.
pub fn decode(mip: &MipInstance, config: &SignatureConfig, registry: &VarRegistry, x: &[bool]) -> Result<DecodedSymmetry> {
    let (pi, sigma) = decode_permutations(registry, x)?;
    let (valid_permutation, violation) = match (&pi, &sigma) {
        (Some(p), Some(s)) => (true, check_formulation_symmetry(mip, p, s, config)?),
        _ => (false, None),
    };
    Ok(DecodedSymmetry { is_symmetry: valid_permutation && violation.is_none(), pi, sigma, valid_permutation, violation })
}

/// The assignment over `registry` that encodes `(pi, sigma)`, or `None` if
/// some required entry is not registered or a fixed entry would be 0.
pub fn encode(registry: &VarRegistry, pi: &Permutation, sigma: &Permutation) -> Option<Vec<bool>> {
    let needed = (0..pi.len()).map(|j| Entry::Pi(j, pi.image(j))).chain((0..sigma.len()).map(|i| Entry::Sigma(i, sigma.image(i))));
    let mut x = vec![false; registry.len()];
    let mut fixed_hit = 0;
    for e in needed {
        match registry.slot(&e)? {
            crate::qubo::Slot::Live(k) => x[k] = true,
            crate::qubo::Slot::One => fixed_hit += 1,
        }
    }
    (fixed_hit == registry.fixed_ones().len()).then_some(x)
}

pub const DEFAULT_BRUTE_FORCE_LIMIT: u128 = 1_000_000;

/// All `(π, σ)` pairs found by exhaustive search.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SymmetrySet {
    pub pairs: Vec<(Permutation, Permutation)>,
}

impl SymmetrySet {
    /// Distinct variable permutations, sorted.
    pub fn distinct_pis(&self) -> Vec<Permutation> {
        let mut pis: Vec<Permutation> = self.pairs.iter().map(|(p, _)| p.clone()).collect();
        pis.sort();
        pis.dedup();
        pis
    }
}

fn factorial_product(classes: &[Vec<usize>]) -> u128 {
    classes.iter().fold(1u128, |acc, c| {
        let f = (1..=c.len() as u128).try_fold(1u128, |a, k| a.checked_mul(k)).unwrap_or(u128::MAX);
        acc.saturating_mul(f)
    })
}

/// Lexicographic next permutation in place; false once wrapped to sorted.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        v.sort_unstable();
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Every permutation of `0..size` mapping each class onto itself.
fn class_preserving(size: usize, classes: &[Vec<usize>]) -> Vec<Permutation> {
    let mut arrangement: Vec<Vec<usize>> = classes.to_vec();
    let mut out = Vec::new();
    loop {
        let mut images = vec![0; size];
        for (class, arr) in classes.iter().zip(&arrangement) {
            for (&from, &to) in class.iter().zip(arr) {
                images[from] = to;
            }
        }
        out.push(Permutation(images));
        // Odometer over classes.
        let mut advanced = false;
        for arr in arrangement.iter_mut() {
            if next_permutation(arr) {
                advanced = true;
                break;
            }
        }
        if !advanced {
            return out;
        }
    }
}

/// Enumerates all reasonable `(π, σ)` and keeps those that are formulation
/// symmetries. Errors if the number of candidate pairs exceeds `limit`.
pub fn brute_force_symmetries(mip: &MipInstance, partition: &ReasonabilityPartition, limit: u128) -> Result<SymmetrySet> {
    let size = factorial_product(partition.var_classes()).saturating_mul(factorial_product(partition.con_classes()));
    if size > limit {
        return Err(Error::SearchSpace { size, limit });
    }
    let pis = class_preserving(mip.n(), partition.var_classes());
    let sigmas = class_preserving(mip.m(), partition.con_classes());
    let config = partition.config();
    let per_pi: Vec<Vec<(Permutation, Permutation)>> = pis
        .par_iter()
        .map(|pi| {
            let mut found = Vec::new();
            for sigma in &sigmas {
                if is_formulation_symmetry(mip, pi, sigma, config)? {
                    found.push((pi.clone(), sigma.clone()));
                }
            }
            Ok(found)
        })
        .collect::<Result<_>>()?;
    Ok(SymmetrySet { pairs: per_pi.into_iter().flatten().collect() })
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Orbits of `0..n` under the group generated by `generators`, each sorted,
/// listed by smallest member.
pub fn orbits(n: usize, generators: &[Permutation]) -> Result<Vec<Vec<usize>>> {
    let mut uf = UnionFind::new(n);
    for g in generators {
        if g.len() != n {
            return Err(Error::NotBijection(format!("generator of length {} on {n} points", g.len())));
        }
        for j in 0..n {
            uf.union(j, g.image(j));
        }
    }
    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
    for j in 0..n {
        let r = uf.find(j);
        by_root[r].push(j);
    }
    let mut out: Vec<Vec<usize>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
    out.sort_by_key(|c| c[0]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mps::parse_mps;
    use crate::reasonability::build_partition;

    fn knapsack() -> (MipInstance, ReasonabilityPartition) {
        let mip = parse_mps(include_str!("../tests/data/knapsack.mps")).unwrap();
        let p = build_partition(&mip, &SignatureConfig { sharpen_var_coeffs: true, ..Default::default() });
        (mip, p)
    }

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn knapsack_conditions() {
        let (mip, p) = knapsack();
        let cfg = p.config();
        let id = Permutation::identity(1);
        assert!(is_formulation_symmetry(&mip, &Permutation::identity(7), &id, cfg).unwrap());
        assert!(is_formulation_symmetry(&mip, &perm(&[1, 0, 2, 3, 4, 5, 6]), &id, cfg).unwrap());
        assert_eq!(
            check_formulation_symmetry(&mip, &perm(&[2, 1, 0, 3, 4, 5, 6]), &id, cfg).unwrap(),
            Some(SymmetryViolation::Coefficient { row: 0, var: 0 })
        );
        assert_eq!(
            check_formulation_symmetry(&mip, &perm(&[3, 1, 2, 0, 4, 5, 6]), &id, cfg).unwrap(),
            Some(SymmetryViolation::Objective { var: 0 })
        );
        assert!(is_formulation_symmetry(&mip, &Permutation::identity(6), &id, cfg).is_err());
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![2, 0]).is_err());
        assert!(Permutation::new(vec![1, 0]).is_ok());
    }

    #[test]
    fn knapsack_brute_force() {
        let (mip, p) = knapsack();
        let set = brute_force_symmetries(&mip, &p, DEFAULT_BRUTE_FORCE_LIMIT).unwrap();
        assert_eq!(set.pairs.len(), 12);
        assert_eq!(set.distinct_pis().len(), 12);
        assert!(matches!(brute_force_symmetries(&mip, &p, 11), Err(Error::SearchSpace { size: 12, .. })));
    }

    #[test]
    fn knapsack_orbits() {
        let gens = [perm(&[1, 0, 2, 3, 4, 5, 6]), perm(&[0, 1, 2, 4, 5, 3, 6])];
        assert_eq!(orbits(7, &gens).unwrap(), vec![vec![0, 1], vec![2], vec![3, 4, 5], vec![6]]);
        assert_eq!(orbits(3, &[]).unwrap(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(orbits(4, &[perm(&[1, 2, 3, 0])]).unwrap(), vec![vec![0, 1, 2, 3]]);
        assert!(orbits(4, &[perm(&[1, 0])]).is_err());
    }

    #[test]
    fn decode_rejects_double_row() {
        let reg = VarRegistry::new(
            2,
            1,
            vec![Entry::Pi(0, 0), Entry::Pi(0, 1), Entry::Pi(1, 0), Entry::Pi(1, 1), Entry::Sigma(0, 0)],
            vec![],
        )
        .unwrap();
        let (pi, sigma) = decode_permutations(&reg, &[true, true, false, false, true]).unwrap();
        assert!(pi.is_none());
        assert_eq!(sigma, Some(Permutation::identity(1)));
        let (pi, _) = decode_permutations(&reg, &[false, true, true, false, true]).unwrap();
        assert_eq!(pi, Some(perm(&[1, 0])));
        assert!(decode_permutations(&reg, &[true]).is_err());
    }

    #[test]
    fn encode_round_trips() {
        let (mip, p) = knapsack();
        let model = crate::qubo::build_reduced(&mip, &p, &Default::default()).unwrap();
        let pi = perm(&[1, 0, 2, 5, 3, 4, 6]);
        let x = encode(model.registry(), &pi, &Permutation::identity(1)).unwrap();
        let d = decode(&mip, p.config(), model.registry(), &x).unwrap();
        assert_eq!(d.pi, Some(pi));
        assert!(d.is_symmetry);
        assert_eq!(model.energy(&x).unwrap(), 0.0);
        assert!(encode(model.registry(), &perm(&[2, 1, 0, 3, 4, 5, 6]), &Permutation::identity(1)).is_none());
    }

    #[test]
    fn next_permutation_cycles() {
        let mut v = vec![0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 6);
        assert_eq!(v, vec![0, 1, 2]);
    }
}
