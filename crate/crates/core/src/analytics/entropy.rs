//! Graph entropy `S(x)`, reduced entropy `H(x)` and their sweeps.
//!
//! Logarithms are natural throughout.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{HarosError, Result};
use crate::graph::{build_rational, geometric_mean_degree, mean_degree, DegreeDistribution, DegreeProfile};
use crate::rational::Rational;
use crate::sweep::sweep_order;

fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// `S = -Σ P(k) ln P(k)`, with `0 ln 0 = 0`.
pub fn entropy_s(dist: &DegreeDistribution) -> f64 {
    let q = dist.node_count().to_f64().unwrap_or(f64::INFINITY);
    let ln_q = ln_big(dist.node_count());
    -dist
        .counts()
        .values()
        .map(|c| {
            let c_f = c.to_f64().unwrap_or(f64::INFINITY);
            let p = c_f / q;
            // p ln p = p (ln c - ln q), exact in the logs even for huge q
            p * (ln_big(c) - ln_q)
        })
        .sum::<f64>()
}

fn ln_big(n: &num_bigint::BigUint) -> f64 {
    match n.to_f64() {
        Some(f) if f.is_finite() => f.ln(),
        _ => {
            let shift = n.bits().saturating_sub(64);
            (n >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
}

/// `H(x) = S + 2x ln x + (1-2x) ln(1-2x)` for `x <= 1/2`, with `x` replaced
/// by `1 - x` above one half.
pub fn reduced_h(x: f64, s: f64) -> f64 {
    let y = if x > 0.5 { 1.0 - x } else { x };
    s + 2.0 * xlnx(y) + xlnx(1.0 - 2.0 * y)
}

/// `H` for an exact rational, using the exact fold so that `1 - x` carries
/// no rounding.
pub fn reduced_h_exact(x: &Rational, s: f64) -> f64 {
    let y = x.fold_half();
    let one_minus = Rational::reduce(y.denom() - (y.numer() << 1u32), y.denom().clone());
    s + 2.0 * xlnx(y.to_f64()) + xlnx(one_minus.to_f64())
}

/// Both sides of `S(z) = (z + 2) H(1/(z + 2))` for `1/2 <= z <= 1`.
pub fn derham_check(z: &Rational) -> Result<(f64, f64)> {
    let half = Rational::from_u64(1, 2);
    if z < &half {
        return Err(HarosError::OutOfRange(format!("z = {z} below 1/2")));
    }
    let lhs = entropy_s(&build_rational(z).degree_distribution());
    // 1/(z+2) = q/(p + 2q)
    let w = Rational::reduce(z.denom().clone(), z.numer() + (z.denom() << 1u32));
    let h = reduced_h_exact(&w, entropy_s(&build_rational(&w).degree_distribution()));
    let factor = z.to_f64() + 2.0;
    Ok((lhs, factor * h))
}

/// One row of the entropy atlas.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct EntropySample {
    pub x: Rational,
    pub x_float: f64,
    #[serde(rename = "S")]
    pub s: f64,
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(serialize_with = "ser_ratio")]
    pub k_mean: BigRational,
    pub k_geo: f64,
}

fn ser_ratio<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

impl EntropySample {
    pub fn from_distribution(x: Rational, dist: &DegreeDistribution) -> Self {
        let s = entropy_s(dist);
        Self {
            x_float: x.to_f64(),
            h: reduced_h_exact(&x, s),
            s,
            k_mean: mean_degree(dist),
            k_geo: geometric_mean_degree(dist),
            x,
        }
    }

    pub fn of(x: &Rational) -> Self {
        Self::from_distribution(x.clone(), &build_rational(x).degree_distribution())
    }
}

/// One sample per interior fraction of `F_order`, ascending in `x`, keeping
/// every `thin`-th row.
pub fn entropy_curve(order: u64, thin: Option<usize>, budget: u128) -> Result<Vec<EntropySample>> {
    if order < 2 {
        return Err(HarosError::EmptyWindow(format!("F_{order} has no interior fractions")));
    }
    let thin = thin.unwrap_or(1).max(1);
    let rows = sweep_order(order, budget, |p: &DegreeProfile| {
        EntropySample::from_distribution(p.label().clone(), &p.distribution())
    })?;
    Ok(rows.into_iter().step_by(thin).collect())
}

/// Closed window on `x`, optionally open at either end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Window {
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Self { lo, hi, lo_open: false, hi_open: false }
    }

    pub fn unit() -> Self {
        Self::closed(Rational::zero(), Rational::one())
    }

    /// `I_n = (1/(n+1), 1/n]`.
    pub fn interval(n: u64) -> Self {
        Self {
            lo: Rational::from_u64(1, n + 1),
            hi: Rational::from_u64(1, n),
            lo_open: true,
            hi_open: false,
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_open { x > &self.lo } else { x >= &self.lo };
        let below = if self.hi_open { x < &self.hi } else { x <= &self.hi };
        above && below
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Extrema {
    pub argmax: Rational,
    pub max: f64,
    /// Strict local minima of `S` inside the window.
    pub minima: Vec<LocalMinimum>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalMinimum {
    pub x: Rational,
    pub s: f64,
    /// Rational family the point belongs to, if any.
    pub family: Option<super::families::SlopeFamily>,
}

/// Family among `1/n`, `2/(2n+1)`, `3/(3n+2)`, `3/(3n+1)` containing `x` or
/// its mirror.
pub fn rational_family_of(x: &Rational) -> Option<super::families::SlopeFamily> {
    use super::families::SlopeFamily::*;
    let (p, q) = x.fold_half().to_u64_pair()?;
    match (p, q % p.max(1)) {
        (1, _) if q >= 2 => Some(OneOverN),
        (2, 1) if q >= 5 => Some(TwoOver2n1),
        (3, 2) if q >= 8 => Some(ThreeOver3n2),
        (3, 1) if q >= 7 => Some(ThreeOver3n1),
        _ => None,
    }
}

/// Global maximum and local minima of `S` among `samples` inside `window`.
/// Ties resolve to the smallest `x`.
pub fn scan_extrema(samples: &[EntropySample], window: &Window) -> Result<Extrema> {
    let inside: Vec<&EntropySample> = samples.iter().filter(|s| window.contains(&s.x)).collect();
    let first = *inside
        .first()
        .ok_or_else(|| HarosError::EmptyWindow(format!("no samples in [{}, {}]", window.lo, window.hi)))?;
    let best = inside.iter().fold(first, |best, s| if s.s > best.s { s } else { best });
    let minima = inside
        .windows(3)
        .filter(|w| w[1].s < w[0].s && w[1].s < w[2].s)
        .map(|w| LocalMinimum {
            x: w[1].x.clone(),
            s: w[1].s,
            family: rational_family_of(&w[1].x),
        })
        .collect();
    Ok(Extrema {
        argmax: best.x.clone(),
        max: best.s,
        minima,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::DEFAULT_BUDGET;
    use std::f64::consts::LN_2;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn s_of(x: &str) -> f64 {
        entropy_s(&build_rational(&r(x)).degree_distribution())
    }

    #[test]
    fn entropy_examples() {
        assert!((s_of("1/2") - LN_2).abs() < 1e-15);
        assert_eq!(s_of("0/1"), 0.0);
        for n in 3..20u64 {
            let x = 1.0 / n as f64;
            let expect = -2.0 * x * x.ln() - (1.0 - 2.0 * x) * (1.0 - 2.0 * x).ln();
            assert!((s_of(&format!("1/{n}")) - expect).abs() < 1e-14);
        }
        assert!((s_of("2/5") - 1.33218).abs() < 1e-5);
    }

    #[test]
    fn reduced_entropy_examples() {
        let h = |x: &str| reduced_h_exact(&r(x), s_of(x));
        assert!(h("1/4").abs() < 1e-15);
        assert!((h("2/5") - 0.27726).abs() < 1e-5);
        assert!((h("3/7") - 0.27279).abs() < 1e-5);
        assert!((h("3/7") - 3.0 / 7.0 * (3f64.ln() - 2.0 / 3.0 * LN_2)).abs() < 1e-14);
        assert!((reduced_h(0.4, s_of("2/5")) - h("2/5")).abs() < 1e-14);
        assert!((h("3/5") - h("2/5")).abs() < 1e-15);
    }

    #[test]
    fn derham_examples() {
        let (l, rr) = derham_check(&r("1/2")).unwrap();
        assert!((l - LN_2).abs() < 1e-12 && (rr - LN_2).abs() < 1e-12);
        let (l, rr) = derham_check(&r("1/1")).unwrap();
        assert!(l.abs() < 1e-15 && rr.abs() < 1e-14);
        let (l, rr) = derham_check(&r("2/3")).unwrap();
        assert!((l - rr).abs() < 1e-9);
        assert!(derham_check(&r("1/3")).is_err());
    }

    #[test]
    fn curve_rows() {
        let rows = entropy_curve(3, None, DEFAULT_BUDGET).unwrap();
        let xs: Vec<String> = rows.iter().map(|s| s.x.to_string()).collect();
        assert_eq!(xs, ["1/3", "1/2", "2/3"]);
        assert!((rows[1].s - LN_2).abs() < 1e-15);
        let rows = entropy_curve(5, None, DEFAULT_BUDGET).unwrap();
        let row = rows.iter().find(|s| s.x == r("2/5")).unwrap();
        assert!((row.s - 1.33218).abs() < 1e-5);
        assert_eq!(row.k_mean.to_string(), "18/5");
        assert!(entropy_curve(1, None, DEFAULT_BUDGET).is_err());
        assert_eq!(entropy_curve(20, Some(5), DEFAULT_BUDGET).unwrap().len(), 26);
    }

    #[test]
    fn curve_is_mirror_symmetric() {
        let rows = entropy_curve(60, None, DEFAULT_BUDGET).unwrap();
        let n = rows.len();
        for i in 0..n {
            assert_eq!(rows[i].x.complement(), rows[n - 1 - i].x);
            assert!((rows[i].s - rows[n - 1 - i].s).abs() < 1e-12);
            assert!((rows[i].h - rows[n - 1 - i].h).abs() < 1e-12);
        }
    }

    #[test]
    fn extrema() {
        let rows = entropy_curve(200, None, DEFAULT_BUDGET).unwrap();
        let e = scan_extrema(&rows, &Window::interval(3)).unwrap();
        let c1 = 1.0 / (3.0 + (5f64.sqrt() - 1.0) / 2.0);
        assert!((e.argmax.to_f64() - c1).abs() < 0.01, "{}", e.argmax);
        let ends = [EntropySample::of(&Rational::zero()), EntropySample::of(&Rational::one())];
        let e = scan_extrema(&ends, &Window::unit()).unwrap();
        assert_eq!(e.max, 0.0);
        assert!(scan_extrema(&rows, &Window::closed(r("1/1"), r("1/1"))).is_err());
    }

    #[test]
    fn families_recognised() {
        use super::super::families::SlopeFamily::*;
        assert_eq!(rational_family_of(&r("1/7")), Some(OneOverN));
        assert_eq!(rational_family_of(&r("2/7")), Some(TwoOver2n1));
        assert_eq!(rational_family_of(&r("5/7")), Some(TwoOver2n1));
        assert_eq!(rational_family_of(&r("3/8")), Some(ThreeOver3n2));
        assert_eq!(rational_family_of(&r("3/10")), Some(ThreeOver3n1));
        assert_eq!(rational_family_of(&r("4/9")), None);
    }
}
