use std::ops::Mul;

/// Value with its first and second derivative at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Jet {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub fn new(v: f64, d1: f64, d2: f64) -> Self {
        Self { v, d1, d2 }
    }

    /// `x^p` at `x > 0`.
    pub fn power(x: f64, p: f64) -> Self {
        let v = x.powf(p);
        Self::new(v, p * v / x, p * (p - 1.0) * v / (x * x))
    }

    /// `exp(c·x^e)` for `e ∈ {1, 2}`.
    pub fn exp_poly(x: f64, c: f64, e: u32) -> Self {
        match e {
            1 => {
                let v = (c * x).exp();
                Self::new(v, c * v, c * c * v)
            }
            2 => {
                let v = (c * x * x).exp();
                let g1 = 2.0 * c * x;
                Self::new(v, g1 * v, (2.0 * c + g1 * g1) * v)
            }
            _ => unreachable!("only linear and quadratic exponents are used"),
        }
    }
}

impl Mul for Jet {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.v * o.v,
            self.d1 * o.v + self.v * o.d1,
            self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule_matches_closed_form() {
        // x² · e^{−x} at x = 1.3
        let x = 1.3;
        let j = Jet::power(x, 2.0) * Jet::exp_poly(x, -1.0, 1);
        let e = (-x).exp();
        assert!((j.v - x * x * e).abs() < 1e-15);
        assert!((j.d1 - (2.0 * x - x * x) * e).abs() < 1e-15);
        assert!((j.d2 - (2.0 - 4.0 * x + x * x) * e).abs() < 1e-15);
    }

    #[test]
    fn gaussian_jet() {
        let x = 0.8;
        let j = Jet::exp_poly(x, -0.5, 2);
        let e = (-0.5 * x * x).exp();
        assert!((j.d1 + x * e).abs() < 1e-15);
        assert!((j.d2 - (x * x - 1.0) * e).abs() < 1e-15);
    }
}
