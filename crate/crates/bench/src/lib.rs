//! Benchmark inputs shared by the criterion targets.

use grushin_core::{Covector, Point};

/// Deterministic spread of base points and covectors inside the injectivity domain.
pub fn sample_inputs(n: usize) -> Vec<(Point, Covector)> {
    (0..n)
        .map(|i| {
            let s = i as f64 / n as f64;
            let q = Point::new(0.2 + 2.5 * s, -1.0 + 2.0 * ((7.0 * s) % 1.0));
            let lam = Covector::new(
                -2.0 + 4.0 * ((3.0 * s) % 1.0),
                -3.0 + 6.0 * ((11.0 * s) % 1.0),
            );
            (q, lam)
        })
        .collect()
}
