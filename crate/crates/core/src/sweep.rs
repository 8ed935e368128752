//! Parallel in-order walks of the Farey tree.
//!
//! Each visited node is built from its two Farey neighbours, which are the
//! ancestors held on the recursion stack, so a walk never rebuilds a graph
//! from the root. Results come back in ascending order of the node labels
//! whatever the thread scheduling.

use num_bigint::BigUint;

use crate::error::{HarosError, Result};
use crate::farey::{totients, Symbol};
use crate::graph::{concat, DegreeProfile, HarosGraph};
use crate::rational::Rational;

/// Default work budget, in constructed nodes.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

/// Recursion depth below which subtrees are handed to rayon.
const PARALLEL_DEPTH: usize = 10;

/// A value that can be grown along the Farey tree by concatenation.
pub trait TreeNode: Sized + Send + Sync {
    /// `(left, node, right)` at the root: `0/1`, `1/1` and `1/1`.
    fn root_triple() -> (Self, Self, Self);

    /// The child of `node` reached by `s`, given its neighbours.
    fn child(left: &Self, node: &Self, right: &Self, s: Symbol) -> Self;

    fn label(&self) -> &Rational;
}

impl TreeNode for HarosGraph {
    fn root_triple() -> (Self, Self, Self) {
        let d = crate::graph::GraphDescent::root();
        (d.left, d.node, d.right)
    }

    fn child(left: &Self, node: &Self, right: &Self, s: Symbol) -> Self {
        let mut g = match s {
            Symbol::L => concat(left, node),
            Symbol::R => concat(node, right),
        };
        g.set_path(node.path().child(s));
        g
    }

    fn label(&self) -> &Rational {
        HarosGraph::label(self)
    }
}

impl TreeNode for DegreeProfile {
    fn root_triple() -> (Self, Self, Self) {
        (
            DegreeProfile::atom(Rational::zero()),
            DegreeProfile::atom(Rational::one()),
            DegreeProfile::atom(Rational::one()),
        )
    }

    fn child(left: &Self, node: &Self, right: &Self, s: Symbol) -> Self {
        let mut p = match s {
            Symbol::L => DegreeProfile::concat(left, node),
            Symbol::R => DegreeProfile::concat(node, right),
        };
        p.set_depth(node.depth() + 1);
        p
    }

    fn label(&self) -> &Rational {
        DegreeProfile::label(self)
    }
}

#[derive(Clone, Copy, Debug)]
enum Bound<'a> {
    /// Keep nodes with denominator at most this.
    Order(&'a BigUint),
    /// Keep nodes with path length at most this.
    Depth(usize),
}

impl Bound<'_> {
    fn admits(&self, left: &Rational, right: &Rational, depth: usize) -> bool {
        match self {
            Bound::Order(n) => &(left.denom() + right.denom()) <= *n,
            Bound::Depth(max) => depth <= *max,
        }
    }
}

struct Walk<'a, F> {
    bound: Bound<'a>,
    f: &'a F,
}

impl<F> Walk<'_, F> {
    fn run<N, T>(&self, left: &N, node: &N, right: &N, depth: usize, out: &mut Vec<T>)
    where
        N: TreeNode,
        T: Send,
        F: Fn(&N) -> T + Sync,
    {
        let go_left = self.bound.admits(left.label(), node.label(), depth + 1);
        let go_right = self.bound.admits(node.label(), right.label(), depth + 1);
        if depth < PARALLEL_DEPTH && go_left && go_right {
            let (a, b) = rayon::join(
                || {
                    let mut v = Vec::new();
                    let c = N::child(left, node, right, Symbol::L);
                    self.run(left, &c, node, depth + 1, &mut v);
                    v
                },
                || {
                    let mut v = Vec::new();
                    let c = N::child(left, node, right, Symbol::R);
                    self.run(node, &c, right, depth + 1, &mut v);
                    v
                },
            );
            out.extend(a);
            out.push((self.f)(node));
            out.extend(b);
            return;
        }
        if go_left {
            let c = N::child(left, node, right, Symbol::L);
            self.run(left, &c, node, depth + 1, out);
        }
        out.push((self.f)(node));
        if go_right {
            let c = N::child(left, node, right, Symbol::R);
            self.run(node, &c, right, depth + 1, out);
        }
    }
}

/// `Σ q` over the interior of `F_n`: the work of a full order-`n` sweep.
pub fn order_work(order: u64) -> u128 {
    totients(order)
        .iter()
        .enumerate()
        .skip(2)
        .map(|(q, &phi)| q as u128 * phi as u128)
        .sum()
}

/// `Σ q` over every path of length at most `max_len`, root included.
/// Level `ℓ_n` has denominators summing to `2·3^{n-2}`.
pub fn paths_work(max_len: usize) -> u128 {
    3u128.saturating_pow(max_len as u32)
}

fn check_budget(required: u128, budget: u128) -> Result<()> {
    if required > budget {
        return Err(HarosError::BudgetExceeded { required, budget });
    }
    Ok(())
}

/// Applies `f` to the node of every interior fraction of `F_order`, in
/// ascending order of the fractions.
pub fn sweep_order<N, T, F>(order: u64, budget: u128, f: F) -> Result<Vec<T>>
where
    N: TreeNode,
    T: Send,
    F: Fn(&N) -> T + Sync,
{
    if order == 0 {
        return Err(HarosError::InvalidInput("order must be positive".into()));
    }
    check_budget(order_work(order), budget)?;
    let mut out = Vec::new();
    if order < 2 {
        return Ok(out);
    }
    let n = BigUint::from(order);
    let walk = Walk { bound: Bound::Order(&n), f: &f };
    let (left, root, right) = N::root_triple();
    let half = N::child(&left, &root, &right, Symbol::L);
    walk.run(&left, &half, &root, 1, &mut out);
    Ok(out)
}

/// Applies `f` to every node whose path has length at most `max_len`,
/// including the root `1/1`, in ascending order of the labels.
pub fn sweep_paths<N, T, F>(max_len: usize, budget: u128, f: F) -> Result<Vec<T>>
where
    N: TreeNode,
    T: Send,
    F: Fn(&N) -> T + Sync,
{
    check_budget(paths_work(max_len), budget)?;
    let walk = Walk { bound: Bound::Depth(max_len), f: &f };
    let (left, root, right) = N::root_triple();
    let mut out = Vec::new();
    if max_len >= 1 {
        let half = N::child(&left, &root, &right, Symbol::L);
        walk.run(&left, &half, &root, 1, &mut out);
    }
    out.push(f(&root));
    Ok(out)
}

/// Number of interior fractions of `F_order`.
pub fn interior_count(order: u64) -> u128 {
    crate::farey::farey_len(order).saturating_sub(2)
}

/// Largest order whose sweep fits in `budget`.
pub fn max_order_within(budget: u128) -> u64 {
    let mut lo = 1u64;
    let mut hi = 1u64 << 20;
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if order_work(mid) <= budget {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::{farey_sequence, path_to_rational};
    use crate::graph::build;

    #[test]
    fn order_sweep_is_sorted_and_complete() {
        for order in 1..=30 {
            let labels: Vec<Rational> =
                sweep_order(order, DEFAULT_BUDGET, |g: &HarosGraph| g.label().clone()).unwrap();
            let expect = farey_sequence(order).unwrap();
            assert_eq!(labels, expect[1..expect.len() - 1]);
        }
    }

    #[test]
    fn order_sweep_graphs_match_direct_builds() {
        let ok = sweep_order(40, DEFAULT_BUDGET, |g: &HarosGraph| {
            *g == build(g.path()) && path_to_rational(g.path()) == *g.label()
        })
        .unwrap();
        assert!(ok.into_iter().all(|b| b));
    }

    #[test]
    fn profile_sweep_matches_graph_sweep() {
        let a = sweep_order(60, DEFAULT_BUDGET, |g: &HarosGraph| g.degree_distribution()).unwrap();
        let b = sweep_order(60, DEFAULT_BUDGET, |p: &DegreeProfile| p.distribution()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn path_sweep_counts() {
        let paths = sweep_paths(10, DEFAULT_BUDGET, |g: &HarosGraph| g.path().clone()).unwrap();
        assert_eq!(paths.len(), 1 << 10);
        let labels: Vec<Rational> = paths.iter().map(path_to_rational).collect();
        assert!(labels.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(labels.last().unwrap(), &Rational::one());
    }

    #[test]
    fn work_estimates() {
        let q_sum: u128 = sweep_paths(8, DEFAULT_BUDGET, |g: &HarosGraph| g.q() as u128)
            .unwrap()
            .into_iter()
            .sum();
        assert_eq!(q_sum, paths_work(8));
        let q_sum: u128 = sweep_order(50, DEFAULT_BUDGET, |g: &HarosGraph| g.q() as u128)
            .unwrap()
            .into_iter()
            .sum();
        assert_eq!(q_sum, order_work(50));
        assert_eq!(interior_count(1000), 304_191);
    }

    #[test]
    fn budget_guard() {
        let err = sweep_order(100, 10, |g: &HarosGraph| g.q()).unwrap_err();
        assert!(matches!(err, HarosError::BudgetExceeded { budget: 10, .. }));
        assert!(sweep_paths(25, DEFAULT_BUDGET, |g: &HarosGraph| g.q()).is_err());
        let n = max_order_within(1_000_000);
        assert!(order_work(n) <= 1_000_000 && order_work(n + 1) > 1_000_000);
    }
}
