//! Fixed instances for the benchmarks.

use symqubo::{MipBuilder, MipInstance, Sense};

/// `n` variables in `n / 4` objective groups, `m` rows with coefficients
/// `(i + j) mod 3`. Deterministic, with nontrivial reasonability classes.
pub fn banded(n: usize, m: usize) -> MipInstance {
    let mut b = MipBuilder::new(format!("banded-{n}x{m}"));
    for j in 0..n {
        b.add_variable(format!("x{j}"), (j % 4) as f64, 0.0, 1.0, true).expect("distinct names");
    }
    for i in 0..m {
        let row: Vec<(usize, f64)> = (0..n).map(|j| (j, ((i + j) % 3) as f64)).collect();
        b.add_constraint(format!("r{i}"), &row, Sense::Le, (n / 2) as f64).expect("valid row");
    }
    b.build()
}
