//! Closed-form degree probabilities, holes and scaling.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::error::{HarosError, Result};
use crate::farey::{rational_to_path, Descent, FareyPath};
use crate::graph::{build_rational, Degree, DegreeDistribution};
use crate::rational::{mediant, Rational};

/// Cell of the piecewise-linear form of `P(k, ·)`: zero outside
/// `(left, right)`, rising from `left` to the apex, falling to `right`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PiecewiseLinearCell {
    pub left: Rational,
    pub apex: Rational,
    pub right: Rational,
    pub k: Degree,
}

impl PiecewiseLinearCell {
    pub fn contains(&self, x: &Rational) -> bool {
        &self.left < x && x < &self.right
    }

    /// Linear part of the cell at an interior `x`, apex excluded.
    pub fn eval(&self, x: &Rational) -> Rational {
        let xr = x.to_ratio();
        let v = if x < &self.apex {
            // q_i x - p_i
            xr * int(self.left.denom()) - int(self.left.numer())
        } else {
            int(self.right.numer()) - xr * int(self.right.denom())
        };
        Rational::from_ratio(&v).expect("cell value in [0,1]")
    }
}

fn int(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// `I_n = (1/(n+1), 1/n]`, the interval of numbers whose first continued
/// fraction term is `n`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct IntervalIndex(pub u64);

impl IntervalIndex {
    pub fn of(x: &Rational) -> Option<Self> {
        if x.is_zero() {
            return None;
        }
        let n = x.denom() / x.numer();
        num_traits::ToPrimitive::to_u64(&n).map(IntervalIndex)
    }

    pub fn bounds(&self) -> (Rational, Rational) {
        (Rational::from_u64(1, self.0 + 1), Rational::from_u64(1, self.0))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let (lo, hi) = self.bounds();
        &lo < x && x <= &hi
    }
}

/// The cell for degree `k >= 5` that lies under the tree node addressed by
/// the first `k - 4` symbols of `path`: its apex is on level `k - 3` and its
/// two ends on level `k - 2`.
pub fn conjecture_cell(k: Degree, path: &FareyPath) -> Option<PiecewiseLinearCell> {
    let apex_len = (k as usize).checked_sub(4)?;
    if k < 5 || path.len() < apex_len {
        return None;
    }
    Some(cell_under(k, &Descent::follow(path.symbols()[..apex_len].iter())))
}

fn cell_under(k: Degree, d: &Descent) -> PiecewiseLinearCell {
    PiecewiseLinearCell {
        left: mediant(&d.left, &d.node),
        right: mediant(&d.node, &d.right),
        apex: d.node.clone(),
        k,
    }
}

/// `P(k, x)` without building the graph.
///
/// `k <= 4` follows the small-degree table. For `k >= 5` the path of `x`
/// decides: a node on level `j < k - 2` has no node of degree `k`, one on
/// level `k - 2` has only its boundary node there, and deeper nodes take the
/// linear value of their cell.
pub fn closed_form_p(k: Degree, x: &Rational) -> Rational {
    if x.is_endpoint() {
        return if k == 2 { Rational::one() } else { Rational::zero() };
    }
    match k {
        0 | 1 => Rational::zero(),
        2 => x.fold_half(),
        3 => {
            let y = x.fold_half();
            Rational::reduce(y.denom() - (y.numer() << 1u32), y.denom().clone())
        }
        4 => {
            if x.is_half() {
                Rational::from_u64(1, 2)
            } else {
                Rational::zero()
            }
        }
        _ => deep_p(k, x, &rational_to_path(x).expect("interior")),
    }
}

fn deep_p(k: Degree, x: &Rational, path: &FareyPath) -> Rational {
    let apex_len = (k as usize - 4).min(path.len());
    deep_p_at(k, x, path, &Descent::follow(path.symbols()[..apex_len].iter()))
}

/// `P(k, x)` for `k >= 5`; `apex` is the descent after `k - 4` symbols of
/// `path` whenever the path is that long.
fn deep_p_at(k: Degree, x: &Rational, path: &FareyPath, apex: &Descent) -> Rational {
    let level = path.level();
    let k_us = k as usize;
    if level + 3 <= k_us {
        return Rational::zero();
    }
    if level + 2 == k_us {
        return Rational::reduce(BigUint::one(), x.denom().clone());
    }
    let cell = cell_under(k, apex);
    if cell.contains(x) && x != &cell.apex {
        cell.eval(x)
    } else {
        Rational::zero()
    }
}

/// `[P(0, x), ..., P(max_k, x)]` by one walk down the path of `x`.
pub fn closed_form_row(x: &Rational, max_k: Degree) -> Vec<Rational> {
    let mut row: Vec<Rational> = (0..=max_k.min(4)).map(|k| closed_form_p(k, x)).collect();
    if max_k < 5 {
        return row;
    }
    if x.is_endpoint() {
        row.extend((5..=max_k).map(|_| Rational::zero()));
        return row;
    }
    let path = rational_to_path(x).expect("interior");
    let mut d = Descent::root();
    for k in 5..=max_k {
        if let Some(&s) = path.symbols().get(k as usize - 5) {
            d.step(s);
        }
        row.push(deep_p_at(k, x, &path, &d));
    }
    row
}

/// Whether degree `kappa` is a hole of the node at `path`: the symbols at
/// 1-based positions `kappa - 3` and `kappa - 2` coincide.
pub fn hole_predicate(path: &FareyPath, kappa: Degree) -> Result<bool> {
    let k = kappa as usize;
    if k < 5 || k > path.len() + 2 {
        return Err(HarosError::OutOfRange(format!(
            "kappa = {kappa} outside [5, {}] for path {path}",
            path.len() + 2
        )));
    }
    Ok(path.symbol_at(k - 3) == path.symbol_at(k - 2))
}

/// `x/(1 + m x)`.
pub fn scaling_map(x: &Rational, m: u64) -> Rational {
    crate::cf::apply_f(x, m)
}

/// Both sides of `P(k, x) = (1 + m x) P(k + m, x/(1 + m x))`, computed from
/// built graphs.
pub fn verify_scaling(x: &Rational, k: Degree, m: u64) -> (BigRational, BigRational) {
    let lhs = build_rational(x).degree_distribution().probability(k);
    let image = build_rational(&scaling_map(x, m)).degree_distribution();
    (lhs.to_ratio(), scaling_rhs(x, m, &image, k))
}

/// `(1 + m x) P(k + m, image)` for a given image distribution.
pub(crate) fn scaling_rhs(x: &Rational, m: u64, image: &DegreeDistribution, k: Degree) -> BigRational {
    let factor = BigRational::one() + x.to_ratio() * BigRational::from_integer(BigInt::from(m));
    factor * image.probability(k + m as Degree).to_ratio()
}

/// `P(5, x/(1+x))`, the one value not carried over by the scaling law:
/// `0` for `x < 1/2` and `(2x - 1)/(x + 1)` for `x > 1/2`. Undefined at `1/2`.
pub fn new_degree_rule(x: &Rational) -> Option<Rational> {
    if x.is_half() || x.is_endpoint() {
        return None;
    }
    if !x.is_above_half() {
        return Some(Rational::zero());
    }
    let (p, q) = (x.numer(), x.denom());
    Some(Rational::reduce((p << 1u32) - q, p + q))
}
