//! Eighth-order central differences.

const FIRST: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
const SECOND_CENTER: f64 = -205.0 / 72.0;
const SECOND: [f64; 4] = [8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0];

pub fn first_derivative(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    FIRST
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let s = (i + 1) as f64 * h;
            c * (f(x + s) - f(x - s))
        })
        .sum::<f64>()
        / h
}

pub fn second_derivative(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let side: f64 = SECOND
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let s = (i + 1) as f64 * h;
            c * (f(x + s) + f(x - s))
        })
        .sum();
    (side + SECOND_CENTER * f(x)) / (h * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_low_degree_polynomials() {
        let f = |x: f64| x.powi(7) - 3.0 * x.powi(4) + x;
        let x: f64 = 0.9;
        let d1 = 7.0 * x.powi(6) - 12.0 * x.powi(3) + 1.0;
        let d2 = 42.0 * x.powi(5) - 36.0 * x * x;
        assert!((first_derivative(f, x, 0.05) - d1).abs() < 1e-11);
        assert!((second_derivative(f, x, 0.05) - d2).abs() < 1e-9);
    }

    #[test]
    fn high_accuracy_on_smooth_functions() {
        let x = 1.1;
        assert!((first_derivative(f64::sin, x, 0.02) - x.cos()).abs() < 1e-13);
        assert!((second_derivative(f64::exp, x, 0.02) - x.exp()).abs() < 1e-10);
    }
}
