//! Mean degrees and continued-fraction geometric means.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::cf::rational_to_cf;
use crate::error::Result;
use crate::rational::Rational;

pub use crate::graph::{geometric_mean_degree, mean_degree};

/// The Thomae value `4 - 2/q` of `x = p/q`.
pub fn thomae(x: &Rational) -> BigRational {
    let q = BigInt::from(x.denom().clone());
    BigRational::from_integer(BigInt::from(4)) - BigRational::new(BigInt::from(2), q)
}

/// Geometric mean of the canonical continued fraction terms of `x`.
pub fn cf_geometric_mean(x: &Rational) -> Result<f64> {
    let cf = rational_to_cf(x)?;
    let terms = cf.terms();
    let log_sum: f64 = terms
        .iter()
        .map(|a| a.to_f64().unwrap_or(f64::INFINITY).ln())
        .sum();
    Ok((log_sum / terms.len() as f64).exp())
}

/// Khinchin's constant `Π_r (1 + 1/(r(r+2)))^{log2 r}`.
///
/// The product is taken exactly up to `r = 10⁶`; the remainder uses the
/// Euler-Maclaurin estimate of `Σ_{r>R} log2(r) (1/r² - 2/r³)`.
pub fn khinchin_constant() -> f64 {
    const R: u64 = 1_000_000;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for r in (2..=R).rev() {
        let rf = r as f64;
        let term = rf.log2() * (1.0 / (rf * (rf + 2.0))).ln_1p();
        // Kahan summation, smallest terms first
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    let rf = R as f64;
    let ln_r = rf.ln();
    // ∫_R^∞ ln r / r² = (ln R + 1)/R, ∫_R^∞ ln r / r³ = (2 ln R + 1)/(4R²)
    let integral = ((ln_r + 1.0) / rf - 2.0 * (2.0 * ln_r + 1.0) / (4.0 * rf * rf)) / std::f64::consts::LN_2;
    let f_r = rf.log2() * (1.0 / (rf * (rf + 2.0))).ln_1p();
    let tail = integral - f_r / 2.0;
    (sum + tail).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_rational;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn cf_means() {
        assert!((cf_geometric_mean(&r("8/13")).unwrap() - 2f64.powf(0.2)).abs() < 1e-14);
        assert!((cf_geometric_mean(&r("1/5")).unwrap() - 5.0).abs() < 1e-14);
        assert!(cf_geometric_mean(&r("0/1")).is_err());
    }

    #[test]
    fn khinchin() {
        assert!((khinchin_constant() - 2.685_452_001_065_3).abs() < 1e-9);
    }

    #[test]
    fn thomae_values() {
        for x in ["1/2", "2/5", "3/7", "0/1", "13/31"] {
            let x = r(x);
            assert_eq!(mean_degree(&build_rational(&x).degree_distribution()), thomae(&x));
        }
    }
}
