use serde::{Deserialize, Serialize};

use super::Scalar;

/// Transfer function of a layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActivationKind {
    Linear,
    TanSig,
}

impl ActivationKind {
    #[inline]
    pub fn apply<T: Scalar>(self, x: T) -> T {
        match self {
            ActivationKind::Linear => x,
            ActivationKind::TanSig => tansig(x),
        }
    }

    /// Derivative expressed through the unit's output.
    #[inline]
    pub fn deriv_from_output<T: Scalar>(self, y: T) -> T {
        match self {
            ActivationKind::Linear => T::one(),
            ActivationKind::TanSig => tansig_deriv_from_output(y),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ActivationKind::Linear => "linear",
            ActivationKind::TanSig => "tansig",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "linear" => Some(ActivationKind::Linear),
            "tansig" => Some(ActivationKind::TanSig),
            _ => None,
        }
    }
}

/// Hyperbolic tangent sigmoid, `2 / (1 + e^(-2x)) - 1`, evaluated as `tanh`.
#[inline]
pub fn tansig<T: Scalar>(x: T) -> T {
    x.tanh()
}

/// `1 - y^2`, the tansig derivative at the point whose output is `y`.
#[inline]
pub fn tansig_deriv_from_output<T: Scalar>(y: T) -> T {
    T::one() - y * y
}

#[cfg(test)]
mod tests {
    use super::*;

    /// tanh(x) = (e^{2x} - 1) / (e^{2x} + 1) with e^{2x} summed as a
    /// Taylor series in extended steps; independent of `f64::tanh`.
    fn tanh_series(x: f64) -> f64 {
        let z = 2.0 * x;
        let mut term = 1.0f64;
        let mut sum = 1.0f64;
        for k in 1..60 {
            term *= z / k as f64;
            sum += term;
        }
        (sum - 1.0) / (sum + 1.0)
    }

    #[test]
    fn tansig_reference_values() {
        assert_eq!(tansig(0.0f64), 0.0);
        assert!((tanh_series(1.0) - 0.7615941559557649).abs() < 1e-15);
        assert!((tansig(1.0f64) - 0.7615941559557649).abs() < 1e-15);
    }

    #[test]
    fn tansig_closed_forms_agree() {
        for i in -40..=40 {
            let x = i as f64 * 0.1;
            let logistic = 2.0 / (1.0 + (-2.0 * x).exp()) - 1.0;
            assert!((tansig(x) - logistic).abs() < 1e-15);
            assert!((tansig(x) - tanh_series(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn tansig_odd_monotone_bounded() {
        let mut prev = -1.0f64;
        for i in -200..=200 {
            let x = i as f64 * 0.05;
            let y = tansig(x);
            assert_eq!(tansig(-x), -y);
            assert!(y > prev || (i == -200));
            assert!(y.abs() <= 1.0);
            if x.abs() < 15.0 {
                assert!(y.abs() < 1.0);
            }
            prev = y;
        }
    }

    #[test]
    fn derivative_endpoints() {
        assert_eq!(tansig_deriv_from_output(0.0f64), 1.0);
        assert_eq!(tansig_deriv_from_output(1.0f64), 0.0);
        assert_eq!(tansig_deriv_from_output(-1.0f64), 0.0);
    }

    #[test]
    fn derivative_matches_central_difference() {
        let h = 1e-5;
        for i in -40..=40 {
            let x = i as f64 * 0.1;
            let fd = (tansig(x + h) - tansig(x - h)) / (2.0 * h);
            let analytic = tansig_deriv_from_output(tansig(x));
            assert!((fd - analytic).abs() < 1e-7);
            let rel = (fd - analytic).abs() / analytic.abs().max(1e-8);
            assert!(rel <= 1e-6, "x={x} rel={rel}");
        }
    }

    #[test]
    fn names_round_trip() {
        for k in [ActivationKind::Linear, ActivationKind::TanSig] {
            assert_eq!(ActivationKind::from_name(k.name()), Some(k));
        }
    }
}
