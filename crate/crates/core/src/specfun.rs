//! Special functions used by the closed-form results.

use crate::error::{require_positive, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

// Below this argument the recurrence shifts upward before the asymptotic series is used.
const ASYMPTOTIC_THRESHOLD: f64 = 10.0;

/// Digamma function ψ(u) for u > 0.
///
/// Upward recurrence ψ(u) = ψ(u + 1) − 1/u until u ≥ 10, then the
/// Bernoulli asymptotic series through the u⁻¹² term. Truncation error at
/// the switch point is below 1e-15.
pub fn digamma(u: f64) -> Result<f64> {
    require_positive("digamma argument", u)?;
    let mut shift = 0.0;
    let mut u = u;
    while u < ASYMPTOTIC_THRESHOLD {
        shift += 1.0 / u;
        u += 1.0;
    }
    let inv2 = 1.0 / (u * u);
    // Horner form of 1/12 u⁻² − 1/120 u⁻⁴ + 1/252 u⁻⁶ − 1/240 u⁻⁸ + 1/132 u⁻¹⁰ − 691/32760 u⁻¹².
    let series = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * 691.0 / 32760.0)))));
    Ok(u.ln() - 0.5 / u - series - shift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    #[test]
    fn known_values() {
        assert!((digamma(1.0).unwrap() + EULER_GAMMA).abs() < 1e-13);
        assert!((digamma(0.5).unwrap() - (-EULER_GAMMA - 2.0 * LN_2)).abs() < 1e-13);
        assert!((digamma(2.0).unwrap() - (1.0 - EULER_GAMMA)).abs() < 1e-13);
        let quarter = -EULER_GAMMA - PI / 2.0 - 3.0 * LN_2;
        assert!((digamma(0.25).unwrap() - quarter).abs() < 1e-13);
        let third = -EULER_GAMMA - PI / (2.0 * 3f64.sqrt()) - 1.5 * 3f64.ln();
        assert!((digamma(1.0 / 3.0).unwrap() - third).abs() < 1e-13);
    }

    #[test]
    fn recurrence_holds() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..100 {
            let u: f64 = rng.gen_range(0.01..50.0);
            let lhs = digamma(u + 1.0).unwrap() - digamma(u).unwrap();
            assert!((lhs - 1.0 / u).abs() < 1e-12 * (1.0 + 1.0 / u), "u = {u}");
        }
    }

    #[test]
    fn tiny_argument_dominated_by_pole() {
        // ψ(u) = −1/u − γ + (π²/6)u + O(u²)
        let u = 1e-6;
        let expected = -1.0 / u - EULER_GAMMA + PI * PI / 6.0 * u;
        assert!(((digamma(u).unwrap() - expected) / expected).abs() < 1e-14);
    }

    #[test]
    fn monotone_and_approaches_log() {
        let mut prev = f64::NEG_INFINITY;
        for k in 0..200 {
            let u = 1e-3 * 1.1f64.powi(k);
            let d = digamma(u).unwrap();
            assert!(d > prev);
            prev = d;
        }
        assert!((digamma(1e6).unwrap() - 1e6f64.ln()).abs() < 1e-6);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(digamma(0.0).is_err());
        assert!(digamma(-1.5).is_err());
        assert!(digamma(f64::NAN).is_err());
    }
}
