//! Exact reduced fractions in the closed unit interval.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{HarosError, Result};

/// A reduced fraction `p/q` with `0 <= p/q <= 1` and unbounded numerator and
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    numer: BigUint,
    denom: BigUint,
}

impl Rational {
    /// Builds `p/q`, reducing it. Fails when `q == 0` or `p > q`.
    pub fn new(numer: impl Into<BigUint>, denom: impl Into<BigUint>) -> Result<Self> {
        let numer = numer.into();
        let denom = denom.into();
        if denom.is_zero() {
            return Err(HarosError::InvalidInput("zero denominator".into()));
        }
        if numer > denom {
            return Err(HarosError::OutOfRange(format!("{numer}/{denom} exceeds 1")));
        }
        Ok(Self::reduce(numer, denom))
    }

    /// Builds from machine integers. Panics on an invalid fraction; intended
    /// for literals and tests.
    pub fn from_u64(numer: u64, denom: u64) -> Self {
        Self::new(numer, denom).expect("valid fraction in [0,1]")
    }

    pub(crate) fn reduce(numer: BigUint, denom: BigUint) -> Self {
        let g = numer.gcd(&denom);
        if g.is_one() {
            Self { numer, denom }
        } else {
            Self {
                numer: numer / &g,
                denom: denom / &g,
            }
        }
    }

    /// `numer/denom` already known to be reduced and in range.
    pub(crate) fn from_reduced(numer: BigUint, denom: BigUint) -> Self {
        debug_assert!(numer.gcd(&denom).is_one() && numer <= denom && !denom.is_zero());
        Self { numer, denom }
    }

    pub fn zero() -> Self {
        Self::from_reduced(BigUint::zero(), BigUint::one())
    }

    pub fn one() -> Self {
        Self::from_reduced(BigUint::one(), BigUint::one())
    }

    pub fn numer(&self) -> &BigUint {
        &self.numer
    }

    pub fn denom(&self) -> &BigUint {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.numer == self.denom
    }

    /// True for the two endpoints `0/1` and `1/1`.
    pub fn is_endpoint(&self) -> bool {
        self.is_zero() || self.is_one()
    }

    /// `1 - x`.
    pub fn complement(&self) -> Self {
        Self::from_reduced(&self.denom - &self.numer, self.denom.clone())
    }

    /// Returns `min(x, 1-x)`, the representative in `[0, 1/2]`.
    pub fn fold_half(&self) -> Self {
        if self.is_above_half() {
            self.complement()
        } else {
            self.clone()
        }
    }

    /// Strictly greater than one half.
    pub fn is_above_half(&self) -> bool {
        (&self.numer << 1u32) > self.denom
    }

    pub fn is_half(&self) -> bool {
        (&self.numer << 1u32) == self.denom
    }

    /// `|p q' - p' q|`; equals one exactly for Farey neighbours.
    pub fn determinant(&self, other: &Self) -> BigUint {
        let a = &self.numer * &other.denom;
        let b = &other.numer * &self.denom;
        if a >= b {
            a - b
        } else {
            b - a
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_ratio().to_f64().unwrap_or(f64::NAN)
    }

    /// Signed arbitrary-precision view for arithmetic that leaves `[0,1]`.
    pub fn to_ratio(&self) -> BigRational {
        Ratio::new_raw(BigInt::from(self.numer.clone()), BigInt::from(self.denom.clone()))
    }

    /// Converts back from a signed ratio; fails outside `[0,1]`.
    pub fn from_ratio(r: &BigRational) -> Result<Self> {
        let (n, d) = (r.numer(), r.denom());
        let (Some(n), Some(d)) = (n.to_biguint(), d.to_biguint()) else {
            return Err(HarosError::OutOfRange(format!("{r} is negative")));
        };
        Self::new(n, d)
    }

    /// Numerator and denominator as `u64`, when they fit.
    pub fn to_u64_pair(&self) -> Option<(u64, u64)> {
        Some((self.numer.to_u64()?, self.denom.to_u64()?))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.numer * &other.denom).cmp(&(&other.numer * &self.denom))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = HarosError;

    /// Parses `"p/q"`; a bare `"0"` or `"1"` is accepted as an endpoint.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |tok: &str| {
            tok.trim()
                .parse::<BigUint>()
                .map_err(|_| HarosError::Parse(tok.to_string()))
        };
        match s.split_once('/') {
            Some((n, d)) => Self::new(parse(n)?, parse(d)?),
            None => Self::new(parse(s)?, 1u32),
        }
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The mediant `(p+p')/(q+q')`, reduced.
///
/// Farey neighbours produce an already irreducible result; other inputs are
/// reduced so the output is always canonical.
pub fn mediant(a: &Rational, b: &Rational) -> Rational {
    Rational::reduce(&a.numer + &b.numer, &a.denom + &b.denom)
}

/// Mediant of two fractions known to be Farey neighbours (no gcd needed).
pub(crate) fn neighbour_mediant(a: &Rational, b: &Rational) -> Rational {
    Rational::from_reduced(&a.numer + &b.numer, &a.denom + &b.denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn mediant_examples() {
        assert_eq!(mediant(&r("0/1"), &r("1/1")), r("1/2"));
        assert_eq!(mediant(&r("1/3"), &r("1/2")), r("2/5"));
        assert_eq!(mediant(&r("0/1"), &r("0/1")), r("0/1"));
    }

    #[test]
    fn parse_reduces_and_rejects() {
        assert_eq!(r("4/8").to_string(), "1/2");
        assert_eq!(r("1"), Rational::one());
        assert!("3/2".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("a/3".parse::<Rational>().is_err());
    }

    #[test]
    fn ordering_and_folding() {
        assert!(r("1/3") < r("2/5"));
        assert_eq!(r("3/5").fold_half(), r("2/5"));
        assert!(r("1/2").is_half());
        assert!(!r("1/2").is_above_half());
        assert_eq!(r("2/5").determinant(&r("1/2")), BigUint::one());
    }

    #[test]
    fn float_conversion_of_huge_values() {
        let big = BigUint::from(10u32).pow(40);
        let x = Rational::new(big.clone(), big * 3u32).unwrap();
        assert!((x.to_f64() - 1.0 / 3.0).abs() < 1e-16);
    }
}
