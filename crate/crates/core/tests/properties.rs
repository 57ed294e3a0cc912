mod common;

use common::{oracle_decode, oracle_energy, oracle_symmetries, random_suite, Shape};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use symqubo::synth::{random_mip, SynthConfig};
use symqubo::*;

fn any_mip() -> impl Strategy<Value = MipInstance> {
    any::<u64>().prop_map(|seed| random_mip(&mut common::rng(seed), &SynthConfig::default()))
}

/// Rebuilds `mip` with variables and rows listed in the given orders.
fn reorder(mip: &MipInstance, var_order: &[usize], row_order: &[usize]) -> MipInstance {
    let mut b = MipBuilder::new(mip.name());
    let mut new_index = vec![0; mip.n()];
    for (pos, &j) in var_order.iter().enumerate() {
        new_index[j] = pos;
        b.add_variable(mip.var_names()[j].clone(), mip.objective()[j], mip.lower()[j], mip.upper()[j], mip.is_integer()[j])
            .unwrap();
    }
    for &i in row_order {
        let row: Vec<(usize, f64)> = mip.row(i).iter().map(|&(j, v)| (new_index[j], v)).collect();
        b.add_constraint(mip.row_names()[i].clone(), &row, mip.senses()[i], mip.rhs()[i]).unwrap();
    }
    b.build()
}

fn random_assignment(q: usize, seed: u64) -> Vec<bool> {
    let mut r = common::rng(seed);
    (0..q).map(|_| r.random_bool(0.5)).collect()
}

fn shapes(p: &ReasonabilityPartition) -> Vec<Shape> {
    let mut v = vec![Shape::Full, Shape::Reduced];
    v.extend((0..p.var_classes().len()).map(Shape::Decomposed));
    v
}

fn build(mip: &MipInstance, p: &ReasonabilityPartition, shape: Shape, w: &PenaltyWeights, fix: FixMode) -> QuboModel {
    match shape {
        Shape::Full => build_full(mip, p, w),
        Shape::Reduced => build_reduced(mip, p, w),
        Shape::Decomposed(c) => build_decomposed(mip, p, c, w, fix),
    }
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mps_round_trip(mip in any_mip()) {
        let text = write_mps(&mip).unwrap();
        prop_assert_eq!(parse_mps(&text).unwrap(), mip);
    }

    #[test]
    fn class_sizes_invariant_under_reordering(mip in any_mip(), seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let mut vars: Vec<usize> = (0..mip.n()).collect();
        let mut rows: Vec<usize> = (0..mip.m()).collect();
        vars.shuffle(&mut r);
        rows.shuffle(&mut r);
        let shuffled = reorder(&mip, &vars, &rows);
        for cfg in [SignatureConfig::default(), SignatureConfig { sharpen_var_degree: true, sharpen_con_size: true, sharpen_var_coeffs: true, sharpen_con_coeffs: true, ..Default::default() }] {
            let a = build_partition(&mip, &cfg);
            let b = build_partition(&shuffled, &cfg);
            prop_assert_eq!((a.nu(), a.mu()), (b.nu(), b.mu()));
            prop_assert!(mip.n() <= a.nu() && a.nu() <= mip.n() * mip.n());
            prop_assert!(mip.m() <= a.mu() && a.mu() <= mip.m() * mip.m());
        }
    }

    #[test]
    fn expanded_energy_matches_definition(mip in any_mip(), seed in any::<u64>(), penalty_fix in any::<bool>()) {
        let p = build_partition(&mip, &SignatureConfig::default());
        let mut r = common::rng(seed);
        let w = PenaltyWeights {
            w_bpi: r.random_range(0.5..4.0), w_bsigma: r.random_range(0.5..4.0), w_pi: r.random_range(0.5..4.0),
            w_sigma: r.random_range(0.5..4.0), w_a: r.random_range(0.5..4.0), w_fix: r.random_range(0.5..4.0),
        };
        let fix = if penalty_fix { FixMode::Penalty } else { FixMode::Constants };
        for shape in shapes(&p) {
            let model = build(&mip, &p, shape, &w, fix);
            for t in 0..8 {
                let x = random_assignment(model.len(), seed ^ t);
                let expected = oracle_energy(&mip, &p, shape, &w, &model, &x);
                let got = model.energy(&x).unwrap();
                prop_assert!((got - expected).abs() <= 1e-9 * expected.abs().max(1.0), "{:?}: {} vs {}", shape, got, expected);
                prop_assert!(got >= -model.zero_tolerance());
                prop_assert!((model.symbolic_energy(&x).unwrap() - expected).abs() <= 1e-9 * expected.abs().max(1.0));
            }
        }
    }

    #[test]
    fn registry_sizes(mip in any_mip()) {
        let p = build_partition(&mip, &SignatureConfig::default());
        let (n, m) = (mip.n(), mip.m());
        let w = PenaltyWeights::default();
        prop_assert_eq!(build_full(&mip, &p, &w).unwrap().len(), n * n + m * m);
        let reduced = build_reduced(&mip, &p, &w).unwrap();
        prop_assert_eq!(reduced.len(), p.nu() + p.mu());
        prop_assert_eq!(reduced.registry().pi_count(), p.nu());
        for (c, class) in p.var_classes().iter().enumerate() {
            let pen = build_decomposed(&mip, &p, c, &w, FixMode::Penalty).unwrap();
            prop_assert_eq!(pen.len(), p.decomposed_size(c).unwrap());
            let con = build_decomposed(&mip, &p, c, &w, FixMode::Constants).unwrap();
            prop_assert_eq!(con.len(), class.len() * class.len() + p.mu());
            prop_assert_eq!(con.registry().fixed_ones().len(), n - class.len());
        }
    }

    #[test]
    fn orbits_refine_classes(mip in any_mip()) {
        let p = build_partition(&mip, &SignatureConfig::default());
        let pis: Vec<Permutation> = oracle_symmetries(&mip).into_iter().map(|(pi, _)| Permutation::new(pi).unwrap()).collect();
        for orbit in orbits(mip.n(), &pis).unwrap() {
            prop_assert!(orbit.iter().all(|&j| p.var_class_of(j) == p.var_class_of(orbit[0])));
        }
    }
}

#[test]
fn structural_search_equals_enumeration() {
    let cfg = SynthConfig { max_n: 4, max_m: 2, ..Default::default() };
    for mip in random_suite(11, 40, &cfg) {
        let p = build_partition(&mip, &SignatureConfig::default());
        for shape in shapes(&p) {
            for fix in [FixMode::Constants, FixMode::Penalty] {
                let model = build(&mip, &p, shape, &PenaltyWeights::default(), fix);
                if model.len() > 20 {
                    continue;
                }
                assert_eq!(zero_set_search(&model).unwrap(), enumerate_exact(&model, 20, 0.0).unwrap(), "{shape:?}");
            }
        }
    }
}

#[test]
fn library_decode_agrees_with_oracle() {
    let cfg = SynthConfig { max_n: 4, max_m: 2, ..Default::default() };
    for (s, mip) in random_suite(5, 30, &cfg).into_iter().enumerate() {
        let p = build_partition(&mip, &SignatureConfig::default());
        let model = build_reduced(&mip, &p, &PenaltyWeights::default()).unwrap();
        for t in 0..50u64 {
            let mut x = model.identity_assignment();
            let mut r = common::rng(s as u64 * 1000 + t);
            for bit in x.iter_mut() {
                if r.random_bool(0.15) {
                    *bit = !*bit;
                }
            }
            let (pi, sigma) = symmetry::decode_permutations(model.registry(), &x).unwrap();
            let ours = pi.zip(sigma).map(|(a, b)| (a.as_slice().to_vec(), b.as_slice().to_vec()));
            assert_eq!(ours, oracle_decode(&model, &x));
        }
    }
}

#[test]
fn brute_force_matches_oracle() {
    for mip in random_suite(23, 60, &SynthConfig::default()) {
        let p = build_partition(&mip, &SignatureConfig::default());
        let ours: std::collections::BTreeSet<_> = brute_force_symmetries(&mip, &p, 1_000_000)
            .unwrap()
            .pairs
            .into_iter()
            .map(|(a, b)| (a.as_slice().to_vec(), b.as_slice().to_vec()))
            .collect();
        assert_eq!(ours, oracle_symmetries(&mip));
    }
}

#[test]
fn count_terms_small_cases() {
    let mut b = MipBuilder::new("t");
    b.add_variable("x", 0.0, 0.0, 1.0, true).unwrap();
    let mip = b.build();
    let p = build_partition(&mip, &SignatureConfig::default());
    // One variable, no rows: the single entry has row and column penalties
    // (x - 1)^2 each, so one linear term and no couplers.
    let model = build_full(&mip, &p, &PenaltyWeights::default()).unwrap();
    assert_eq!(count_terms(&model), TermCounts { linear: 1, quadratic: 0, total: 1 });

    // (x1 + x2 - 1)^2 alone.
    let reg = VarRegistry::new(2, 0, vec![Entry::Pi(0, 0), Entry::Pi(0, 1)], vec![]).unwrap();
    let term = PenaltyTerm::Squared { weight: 1.0, coeffs: vec![(0, 1.0), (1, 1.0)], rhs: 1.0 };
    let model = QuboModel::from_terms(reg, Formulation::Reduced, PenaltyWeights::default(), vec![term]).unwrap();
    assert_eq!(count_terms(&model), TermCounts { linear: 2, quadratic: 1, total: 3 });
}

#[test]
fn knapsack_reduced_term_count_by_hand() {
    // Classes {1,2},{3},{4,5,6},{7}; one row. Linear terms: every entry.
    // Couplers from the assignment squares: a class of size s has s rows
    // and s columns with C(s,2) pairs each, so 2*(2*1 + 3*3) = 22. No
    // mismatch couplers: coefficients agree inside every class.
    let mip = symqubo::synth::example_knapsack();
    let p = build_partition(&mip, &SignatureConfig { sharpen_var_coeffs: true, ..Default::default() });
    let model = build_reduced(&mip, &p, &PenaltyWeights::default()).unwrap();
    // Linear coefficient of each entry is -2 (row and column), sigma too.
    assert!(model.linear().values().all(|&v| v == -2.0));
    assert_eq!(count_terms(&model), TermCounts { linear: 16, quadratic: 22, total: 38 });
}
