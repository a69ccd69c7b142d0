//! Generalized Laguerre polynomials `L^a_m(x)`.

/// `L^a_m(x)` by the three-term recurrence
/// `(j+1) L_{j+1} = (2j + 1 + a − x) L_j − (j + a) L_{j−1}`.
pub fn laguerre(a: f64, m: u32, x: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + a - x;
    for j in 1..m {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + a - x) * cur - (jf + a) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `d/dx L^a_m = −L^{a+1}_{m−1}`.
pub fn laguerre_derivative(a: f64, m: u32, x: f64) -> f64 {
    if m == 0 {
        0.0
    } else {
        -laguerre(a + 1.0, m - 1, x)
    }
}

/// `d²/dx² L^a_m = L^{a+2}_{m−2}`.
pub fn laguerre_second_derivative(a: f64, m: u32, x: f64) -> f64 {
    if m < 2 {
        0.0
    } else {
        laguerre(a + 2.0, m - 2, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// `Σ_{i=0}^{m} (−1)^i C(m+a, m−i) xⁱ / i!`, with the generalized
    /// binomial evaluated as a product. Also returns the sum of absolute
    /// terms, which bounds the oracle's own cancellation error.
    fn explicit_sum(a: f64, m: u32, x: f64) -> (f64, f64) {
        let gbinom = |top: f64, k: u32| (0..k).fold(1.0, |acc, j| acc * (top - j as f64) / (j as f64 + 1.0));
        (0..=m)
            .map(|i| {
                let fact: f64 = (1..=i).map(|j| j as f64).product();
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                sign * gbinom(m as f64 + a, m - i) * x.powi(i as i32) / fact
            })
            .fold((0.0, 0.0), |(s, abs), t| (s + t, abs + t.abs()))
    }

    #[test]
    fn low_order_values() {
        assert_eq!(laguerre(3.5, 0, 7.0), 1.0);
        assert_eq!(laguerre(2.0, 1, 1.0), 2.0);
        // L^0_2(x) = (x² − 4x + 2)/2
        assert!((laguerre(0.0, 2, 3.0) - (9.0 - 12.0 + 2.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn recurrence_matches_explicit_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..300 {
            let m = rng.gen_range(0..=8);
            let a = rng.gen_range(0.0..12.0);
            let x = rng.gen_range(0.0..10.0);
            let r = laguerre(a, m, x);
            let (e, mass) = explicit_sum(a, m, x);
            assert!(
                (r - e).abs() < 1e-12 * mass.max(1.0),
                "a={a} m={m} x={x}: {r} vs {e}"
            );
        }
    }

    #[test]
    fn derivative_identity_against_central_difference() {
        let h = 1e-5;
        for (a, m, x) in [(3.0, 4, 1.7), (5.0, 6, 4.2), (7.0, 2, 0.3)] {
            let fd = (laguerre(a, m, x + h) - laguerre(a, m, x - h)) / (2.0 * h);
            assert!((fd - laguerre_derivative(a, m, x)).abs() < 1e-6);
            let fd2 = (laguerre(a, m, x + h) - 2.0 * laguerre(a, m, x) + laguerre(a, m, x - h)) / (h * h);
            assert!((fd2 - laguerre_second_derivative(a, m, x)).abs() < 1e-3);
        }
    }
}
