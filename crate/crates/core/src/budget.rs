//! Privacy budgets and group-privacy arithmetic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An (epsilon, delta) differential-privacy budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrivacyBudget {
    epsilon: f64,
    delta: f64,
}

impl PrivacyBudget {
    pub fn new(epsilon: f64, delta: f64) -> Result<Self> {
        if !epsilon.is_finite() || epsilon < 0.0 {
            return Err(Error::invalid("epsilon", format!("must be >= 0, got {epsilon}")));
        }
        if !delta.is_finite() || !(0.0..=1.0).contains(&delta) {
            return Err(Error::invalid("delta", format!("must be in [0, 1], got {delta}")));
        }
        Ok(PrivacyBudget { epsilon, delta })
    }

    /// Pure-epsilon budget (delta = 0).
    pub fn pure(epsilon: f64) -> Result<Self> {
        PrivacyBudget::new(epsilon, 0.0)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Budget after degrading to datasets differing in `k` elements:
    /// `(k*eps, min(1, k * e^(eps*(k-1)) * delta))`.
    pub fn group_privacy(&self, k: u32) -> PrivacyBudget {
        assert!(k >= 1, "group size must be at least 1");
        let kf = f64::from(k);
        let epsilon = kf * self.epsilon;
        let delta = (kf * (self.epsilon * (kf - 1.0)).exp() * self.delta).min(1.0);
        PrivacyBudget { epsilon, delta }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_privacy_identity_at_k1() {
        let b = PrivacyBudget::new(0.5, 0.0).unwrap();
        let g = b.group_privacy(1);
        assert_eq!(g.epsilon(), 0.5);
        assert_eq!(g.delta(), 0.0);
    }

    #[test]
    fn group_privacy_formula() {
        let b = PrivacyBudget::new(0.5, 0.01).unwrap();
        let g = b.group_privacy(3);
        assert!((g.epsilon() - 1.5).abs() < 1e-12);
        // 3 * e^(0.5*2) * 0.01
        assert!((g.delta() - 3.0 * 1.0f64.exp() * 0.01).abs() < 1e-12);
        assert!((g.delta() - 0.081548).abs() < 1e-6);
    }

    #[test]
    fn group_privacy_zero_epsilon() {
        let b = PrivacyBudget::new(0.0, 0.1).unwrap();
        let g = b.group_privacy(5);
        assert_eq!(g.epsilon(), 0.0);
        assert!((g.delta() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn group_privacy_delta_caps_at_one() {
        let b = PrivacyBudget::new(2.0, 0.5).unwrap();
        assert_eq!(b.group_privacy(10).delta(), 1.0);
    }

    #[test]
    fn group_privacy_monotone_in_k() {
        let b = PrivacyBudget::new(0.3, 0.02).unwrap();
        let mut prev = b.group_privacy(1);
        for k in 2..=12 {
            let cur = b.group_privacy(k);
            assert!(cur.epsilon() >= prev.epsilon());
            assert!(cur.delta() >= prev.delta());
            prev = cur;
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(PrivacyBudget::new(-0.1, 0.0).is_err());
        assert!(PrivacyBudget::new(1.0, -0.2).is_err());
        assert!(PrivacyBudget::new(1.0, 1.5).is_err());
        assert!(PrivacyBudget::new(f64::NAN, 0.0).is_err());
    }
}
