#![allow(clippy::needless_range_loop)]

//! Reference implementations used only by tests. Nothing here calls the
//! library's builders or verifiers; they work from dense instance data.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symqubo::synth::{random_mip, SynthConfig};
use symqubo::{Entry, MipInstance, PenaltyWeights, QuboModel, ReasonabilityPartition};

pub type Pair = (Vec<usize>, Vec<usize>);

pub fn dense(mip: &MipInstance) -> Vec<Vec<f64>> {
    (0..mip.m()).map(|i| (0..mip.n()).map(|j| mip.coefficient(i, j).unwrap()).collect()).collect()
}

/// Direct check of the symmetry conditions, bounds and senses included.
pub fn oracle_is_symmetry(mip: &MipInstance, a: &[Vec<f64>], pi: &[usize], sigma: &[usize]) -> bool {
    let vars_ok = (0..mip.n()).all(|j| {
        let k = pi[j];
        mip.is_integer()[j] == mip.is_integer()[k]
            && mip.objective()[j] == mip.objective()[k]
            && mip.lower()[j] == mip.lower()[k]
            && mip.upper()[j] == mip.upper()[k]
    });
    let rows_ok = (0..mip.m()).all(|i| mip.rhs()[i] == mip.rhs()[sigma[i]] && mip.senses()[i] == mip.senses()[sigma[i]]);
    vars_ok && rows_ok && (0..mip.m()).all(|i| (0..mip.n()).all(|j| a[sigma[i]][pi[j]] == a[i][j]))
}

/// Every formulation symmetry, by scanning all of `S_n x S_m`.
pub fn oracle_symmetries(mip: &MipInstance) -> BTreeSet<Pair> {
    let a = dense(mip);
    let sigmas: Vec<Vec<usize>> = (0..mip.m()).permutations(mip.m()).collect();
    let mut out = BTreeSet::new();
    for pi in (0..mip.n()).permutations(mip.n()) {
        for sigma in &sigmas {
            if oracle_is_symmetry(mip, &a, &pi, sigma) {
                out.insert((pi.clone(), sigma.clone()));
            }
        }
    }
    out
}

/// Which penalty blocks a formulation carries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    Full,
    Reduced,
    /// Permutation rows/columns only for the given class; off-class
    /// diagonals pinned by a fixing penalty when live.
    Decomposed(usize),
}

/// Energy computed straight from the penalty definitions over the entries
/// the model registers. Fixed entries count as 1.
pub fn oracle_energy(
    mip: &MipInstance,
    p: &ReasonabilityPartition,
    shape: Shape,
    w: &PenaltyWeights,
    model: &QuboModel,
    x: &[bool],
) -> f64 {
    let (n, m) = (mip.n(), mip.m());
    let a = dense(mip);
    let reg = model.registry();
    let mut pi = vec![vec![None::<f64>; n]; n];
    let mut sigma = vec![vec![None::<f64>; m]; m];
    let mut set = |e: &Entry, v: f64| match *e {
        Entry::Pi(j, k) => pi[j][k] = Some(v),
        Entry::Sigma(i, k) => sigma[i][k] = Some(v),
    };
    for (e, &bit) in reg.entries().iter().zip(x) {
        set(e, if bit { 1.0 } else { 0.0 });
    }
    for e in reg.fixed_ones() {
        set(e, 1.0);
    }
    let sq = |v: f64| v * v;
    let sum = |it: &mut dyn Iterator<Item = Option<f64>>| it.flatten().sum::<f64>();

    let rows: Vec<usize> = match shape {
        Shape::Decomposed(c) => p.var_classes()[c].clone(),
        _ => (0..n).collect(),
    };
    let mut e = 0.0;
    for &j in &rows {
        e += w.w_bpi * sq(sum(&mut pi[j].iter().copied()) - 1.0);
        e += w.w_bpi * sq(sum(&mut (0..n).map(|r| pi[r][j])) - 1.0);
    }
    for i in 0..m {
        e += w.w_bsigma * sq(sum(&mut sigma[i].iter().copied()) - 1.0);
        e += w.w_bsigma * sq(sum(&mut (0..m).map(|r| sigma[r][i])) - 1.0);
    }
    if shape == Shape::Full {
        for j in 0..n {
            for k in 0..n {
                if p.var_class_of(j) != p.var_class_of(k) {
                    e += w.w_pi * pi[j][k].unwrap();
                }
            }
        }
        for i in 0..m {
            for k in 0..m {
                if p.con_class_of(i) != p.con_class_of(k) {
                    e += w.w_sigma * sigma[i][k].unwrap();
                }
            }
        }
    }
    if let Shape::Decomposed(c) = shape {
        for j in (0..n).filter(|&j| p.var_class_of(j) != c) {
            let live = reg.entries().contains(&Entry::Pi(j, j));
            if live {
                e += w.w_fix * sq(1.0 - pi[j][j].unwrap());
            }
        }
    }
    for i in 0..m {
        for i2 in 0..m {
            let Some(s) = sigma[i][i2] else { continue };
            for j in 0..n {
                for j2 in 0..n {
                    if let Some(t) = pi[j][j2] {
                        if a[i][j] != a[i2][j2] {
                            e += w.w_a * s * t;
                        }
                    }
                }
            }
        }
    }
    e
}

/// Decodes an assignment by reading the registered matrix entries densely.
pub fn oracle_decode(model: &QuboModel, x: &[bool]) -> Option<Pair> {
    let reg = model.registry();
    let (n, m) = (reg.n(), reg.m());
    let mut pi = vec![Vec::new(); n];
    let mut sigma = vec![Vec::new(); m];
    let set = reg.entries().iter().zip(x).filter(|(_, &b)| b).map(|(e, _)| *e).chain(reg.fixed_ones().iter().copied());
    for e in set {
        match e {
            Entry::Pi(j, k) => pi[j].push(k),
            Entry::Sigma(i, k) => sigma[i].push(k),
        }
    }
    let single = |v: Vec<Vec<usize>>| -> Option<Vec<usize>> {
        let out: Option<Vec<usize>> = v.into_iter().map(|r| if r.len() == 1 { Some(r[0]) } else { None }).collect();
        out.filter(|o| o.iter().collect::<BTreeSet<_>>().len() == o.len())
    };
    Some((single(pi)?, single(sigma)?))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_suite(seed: u64, count: usize, cfg: &SynthConfig) -> Vec<MipInstance> {
    let mut r = rng(seed);
    (0..count).map(|_| random_mip(&mut r, cfg)).collect()
}
