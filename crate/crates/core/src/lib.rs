//! Formulation symmetries of mixed-integer programs as zero-energy states of
//! QUBO models.
//!
//! A pair of permutations `(π, σ)` of the variables and constraints is
//! encoded by 0/1 permutation matrices. Penalties force each matrix to be a
//! permutation and charge every pair of matrix entries that would move a
//! coefficient of `A` onto a different value, so the zero-energy
//! assignments are exactly the formulation symmetries. Restricting the
//! matrices to entries between variables (constraints) with equal
//! signatures gives the reduced and decomposed models.
//!
//! ```
//! use symqubo::{build_partition, build_reduced, enumerate_exact, PenaltyWeights, SignatureConfig};
//!
//! let mip = symqubo::synth::example_knapsack();
//! let config = SignatureConfig { sharpen_var_coeffs: true, ..Default::default() };
//! let partition = build_partition(&mip, &config);
//! assert_eq!((partition.nu(), partition.mu()), (15, 1));
//! let model = build_reduced(&mip, &partition, &PenaltyWeights::default()).unwrap();
//! assert_eq!(enumerate_exact(&model, 20, 0.0).unwrap().len(), 12);
//! ```

pub mod error;
pub mod mip;
pub mod mps;
pub mod qubo;
pub mod reasonability;
pub mod report;
pub mod resources;
pub mod sample;
pub mod symmetry;
pub mod synth;

pub use error::{Error, MpsError, Result};
pub use mip::{MipBuilder, MipInstance, ObjectiveSense, Sense};
pub use mps::{parse_mps, parse_mps_with, write_mps, MpsFormat};
pub use qubo::{
    build_decomposed, build_full, build_quboplus_decomposed, build_quboplus_full, build_quboplus_reduced,
    build_reduced, quboplus_to_qubo, Entry, FixMode, Formulation, LinearConstraint, PenaltyTerm, PenaltyWeights,
    QuboModel, QuboPlusModel, Slot, VarRegistry,
};
pub use reasonability::{build_partition, CoeffMode, ReasonabilityPartition, SignatureConfig};
pub use report::{detect_symmetries, instance_stats, DetectConfig, DetectMethod, Generator, InstanceStats, SymmetryReport};
pub use resources::{count_terms, linear_fit_zero_intercept, power_fit, zephyr_estimate, TermCounts, ZephyrEstimate};
pub use sample::{anneal, enumerate_exact, zero_set_search, AnnealConfig, AnnealOutcome, SampleResult};
pub use symmetry::{
    brute_force_symmetries, decode, is_formulation_symmetry, orbits, DecodedSymmetry, Permutation, SymmetrySet,
    SymmetryViolation,
};
