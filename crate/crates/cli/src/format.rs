use symqubo::InstanceStats;

pub const STATS_HEADER: [&str; 15] = [
    "name",
    "n",
    "m",
    "nu",
    "mu",
    "q_full",
    "q_reduced",
    "ratio_reduced",
    "max_class_size",
    "q_maxdecomp",
    "ratio_maxdecomp",
    "zephyr_g",
    "qubit_bound",
    "n_terms_reduced",
    "error",
];

/// `v` with six significant digits, in scientific notation outside
/// `[1e-4, 1e15)`.
pub fn sig6(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    if (-4..15).contains(&mag) {
        format!("{:.*}", (5 - mag).max(0) as usize, v)
    } else {
        format!("{v:.5e}")
    }
}

pub fn ratio(v: f64) -> String {
    format!("{v:.4}")
}

pub fn stats_record(s: &InstanceStats) -> Vec<String> {
    vec![
        s.name.clone(),
        s.n.to_string(),
        s.m.to_string(),
        s.nu.to_string(),
        s.mu.to_string(),
        s.q_full.to_string(),
        s.q_reduced.to_string(),
        ratio(s.ratio_reduced),
        s.max_class_size.to_string(),
        s.q_maxdecomp.to_string(),
        ratio(s.ratio_maxdecomp),
        s.zephyr_g.to_string(),
        s.qubit_bound.to_string(),
        s.n_terms_reduced.map(|t| t.to_string()).unwrap_or_default(),
        String::new(),
    ]
}

pub fn error_record(name: &str, error: &str) -> Vec<String> {
    let mut r = vec![String::new(); STATS_HEADER.len()];
    r[0] = name.to_string();
    r[STATS_HEADER.len() - 1] = error.to_string();
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig6(1.764), "1.76400");
        assert_eq!(sig6(123456.7), "123457");
        assert_eq!(sig6(0.0012345678), "0.00123457");
        assert_eq!(sig6(2.0), "2.00000");
        assert_eq!(sig6(1e20), "1.00000e20");
        assert_eq!(ratio(0.32), "0.3200");
    }
}
