//! Fixed-order Gauss-Legendre rule used by the numeric diffraction oracle
//! and by the optional finite-pixel detector average.

use std::sync::OnceLock;

const ORDER: usize = 16;

/// Nodes and weights of the 16-point Gauss-Legendre rule on [-1, 1].
///
/// Computed once by Newton iteration on the Legendre recurrence; accurate
/// to machine precision, so repeated composite application converges to
/// the analytic integral for smooth integrands.
pub fn gl16() -> &'static [(f64, f64); ORDER] {
    static NODES: OnceLock<[(f64, f64); ORDER]> = OnceLock::new();
    NODES.get_or_init(|| {
        let n = ORDER;
        let mut out = [(0.0, 0.0); ORDER];
        for k in 0..n.div_ceil(2) {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    let (_, d) = legendre_with_derivative(n, x);
                    dp = d;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            out[k] = (-x, w);
            out[n - 1 - k] = (x, w);
        }
        out
    })
}

/// Value and derivative of the Legendre polynomial P_n at x.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for j in 2..=n {
        let jf = j as f64;
        let p_next = ((2.0 * jf - 1.0) * x * p - (jf - 1.0) * p_prev) / jf;
        p_prev = p;
        p = p_next;
    }
    let dp = (n as f64) * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Composite 16-point Gauss-Legendre integral of a real function over
/// [lo, hi], split into `panels` equal panels.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, panels: usize) -> f64 {
    let panels = panels.max(1);
    let width = (hi - lo) / panels as f64;
    let rule = gl16();
    let mut total = 0.0;
    for p in 0..panels {
        let a = lo + p as f64 * width;
        let mid = a + 0.5 * width;
        let half = 0.5 * width;
        let mut acc = 0.0;
        for &(t, w) in rule.iter() {
            acc += w * f(mid + half * t);
        }
        total += acc * half;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn nodes_are_symmetric_and_weights_sum_to_two() {
        let rule = gl16();
        let wsum: f64 = rule.iter().map(|&(_, w)| w).sum();
        assert_relative_eq!(wsum, 2.0, max_relative = 1e-15);
        for k in 0..8 {
            assert_relative_eq!(rule[k].0, -rule[15 - k].0, max_relative = 1e-15);
            assert_relative_eq!(rule[k].1, rule[15 - k].1, max_relative = 1e-15);
        }
    }

    #[test]
    fn first_node_matches_published_value() {
        // Largest abscissa of the 16-point rule.
        let rule = gl16();
        assert_relative_eq!(rule[15].0, 0.989_400_934_991_649_9, epsilon = 1e-14);
        assert_relative_eq!(rule[15].1, 0.027_152_459_411_754_1, epsilon = 1e-13);
    }

    #[test]
    fn exact_for_high_degree_polynomials() {
        // GL16 integrates degree <= 31 exactly.
        let int = integrate(|x| x.powi(30), -1.0, 1.0, 1);
        assert_relative_eq!(int, 2.0 / 31.0, max_relative = 1e-13);
    }

    #[test]
    fn oscillatory_integral_converges() {
        let f = |x: f64| (40.0 * x).cos();
        let exact = 2.0 * (40.0f64).sin() / 40.0;
        let got = integrate(f, -1.0, 1.0, 8);
        assert_relative_eq!(got, exact, epsilon = 1e-12);
    }
}
