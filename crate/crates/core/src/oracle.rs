//! Brute-force verification harness.
//!
//! Every check rebuilds graphs by concatenation and compares the resulting
//! distributions against a closed form or identity. Reports are assembled in
//! instance order, so they do not depend on thread scheduling.

use std::ops::RangeInclusive;
use std::time::Instant;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::analytics::closed_form::{closed_form_row, hole_predicate, new_degree_rule, scaling_map, scaling_rhs};
use crate::analytics::entropy::{derham_check, entropy_s, reduced_h_exact};
use crate::analytics::families::{
    convergent_profile, family_slope, golden_inverse, theoretical_dist, DistFamily, SlopeFamily,
};
use crate::analytics::means::{mean_degree, thomae};
use crate::cf::CfSpec;
use crate::error::{HarosError, Result};
use crate::graph::{build_rational, Degree, DegreeDistribution, HarosGraph};
use crate::rational::Rational;
use crate::sweep::{sweep_order, sweep_paths};

/// Failure rows kept per report.
pub const MAX_FAILURE_ROWS: usize = 100;
/// Largest path length accepted by [`check_holes`].
pub const MAX_HOLE_LEN: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub check_id: String,
    pub instances_tested: u64,
    pub failure_count: u64,
    /// First [`MAX_FAILURE_ROWS`] failures in instance order.
    pub failures: Vec<Failure>,
    /// Wall-clock seconds; not part of the serialized report by default.
    pub elapsed: f64,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    check_id: &'a str,
    status: &'a str,
    instances_tested: u64,
    failure_count: u64,
    failures: &'a [Failure],
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed: Option<f64>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    /// One JSON line; `timings` adds the elapsed seconds.
    pub fn to_json_line(&self, timings: bool) -> String {
        serde_json::to_string(&ReportJson {
            check_id: &self.check_id,
            status: self.status(),
            instances_tested: self.instances_tested,
            failure_count: self.failure_count,
            failures: &self.failures,
            elapsed: timings.then_some(self.elapsed),
        })
        .expect("report serializes")
    }
}

/// Outcome of one instance group, merged in order.
#[derive(Default, Debug)]
struct Tally {
    tested: u64,
    failed: u64,
    rows: Vec<Failure>,
}

impl Tally {
    fn compare(&mut self, ok: bool, instance: impl FnOnce() -> String, lhs: impl ToString, rhs: impl ToString) {
        self.tested += 1;
        if !ok {
            self.failed += 1;
            if self.rows.len() < MAX_FAILURE_ROWS {
                self.rows.push(Failure {
                    instance: instance(),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.tested += other.tested;
        self.failed += other.failed;
        let room = MAX_FAILURE_ROWS - self.rows.len();
        self.rows.extend(other.rows.into_iter().take(room));
        self
    }

    fn report(self, id: &str, start: Instant) -> CheckReport {
        CheckReport {
            check_id: id.to_string(),
            instances_tested: self.tested,
            failure_count: self.failed,
            failures: self.rows,
            elapsed: start.elapsed().as_secs_f64(),
        }
    }
}

fn merge_all(parts: Vec<Tally>) -> Tally {
    parts.into_iter().fold(Tally::default(), Tally::merge)
}

fn approx(lhs: f64, rhs: f64, tol: f64) -> bool {
    (lhs - rhs).abs() < tol
}

fn fmt_f(v: f64) -> String {
    format!("{v:.17e}")
}

/// Hook that may alter a built distribution before it is compared.
pub type Tamper<'a> = &'a (dyn Fn(&Rational, &mut DegreeDistribution) + Sync);

/// `P(2)`, `P(3)`, `P(4)` of every interior fraction with `q <= max_q`
/// against the small-degree table.
pub fn check_theorem1(max_q: u64, budget: u128) -> Result<CheckReport> {
    check_theorem1_with(max_q, budget, None)
}

/// [`check_theorem1`] with a distribution hook, for harness self-tests.
pub fn check_theorem1_with(max_q: u64, budget: u128, tamper: Option<Tamper<'_>>) -> Result<CheckReport> {
    if max_q < 2 {
        return Err(HarosError::OutOfRange(format!("max_q = {max_q} below 2")));
    }
    let start = Instant::now();
    let parts = sweep_order(max_q, budget, |g: &HarosGraph| {
        let x = g.label();
        let mut dist = g.degree_distribution();
        if let Some(t) = tamper {
            t(x, &mut dist);
        }
        let table = closed_form_row(x, 4);
        let mut tally = Tally::default();
        tally.tested += 1;
        let bad: Vec<Degree> = (2..=4).filter(|&k| dist.probability(k) != table[k as usize]).collect();
        if let Some(&k) = bad.first() {
            tally.failed += 1;
            tally.rows.push(Failure {
                instance: format!("x={x} k={k}"),
                lhs: dist.probability(k).to_string(),
                rhs: table[k as usize].to_string(),
            });
        }
        tally
    })?;
    Ok(merge_all(parts).report("theorem1", start))
}

fn thomae_tally(x: &Rational, dist: &DegreeDistribution) -> Tally {
    let mut tally = Tally::default();
    let (m, t) = (mean_degree(dist), thomae(x));
    tally.compare(m == t, || format!("x={x}"), &m, &t);
    tally
}

/// Mean degree `4 - 2/q` over all of `F_max_q`, endpoints included.
pub fn check_thomae(max_q: u64, budget: u128) -> Result<CheckReport> {
    let start = Instant::now();
    let endpoint = |x: Rational| thomae_tally(&x, &build_rational(&x).degree_distribution());
    let mut parts = vec![endpoint(Rational::zero())];
    parts.extend(sweep_order(max_q, budget, |g: &HarosGraph| {
        thomae_tally(g.label(), &g.degree_distribution())
    })?);
    parts.push(endpoint(Rational::one()));
    Ok(merge_all(parts).report("thomae", start))
}

/// Every path of length `<= max_len`: hole predicate against built zeros,
/// the boundary degree `len + 3`, and a merged node below the boundary.
pub fn check_holes(max_len: usize, budget: u128) -> Result<CheckReport> {
    if max_len > MAX_HOLE_LEN {
        return Err(HarosError::ResourceGuard(format!(
            "max_len = {max_len} would enumerate 2^{max_len} paths; the limit is {MAX_HOLE_LEN}"
        )));
    }
    let start = Instant::now();
    let parts = sweep_paths(max_len, budget, |g: &HarosGraph| {
        let mut tally = Tally::default();
        let path = g.path();
        // one instance per path; the sub-checks only add failure rows
        tally.tested += 1;
        let mut fails = Vec::new();
        if g.q() >= 2 {
            let boundary = g.boundary_degree();
            if boundary as usize != path.len() + 3 {
                fails.push(Failure {
                    instance: format!("path={path} boundary"),
                    lhs: boundary.to_string(),
                    rhs: (path.len() + 3).to_string(),
                });
            }
            if let Some(j) = g.junction() {
                let merged = g.open_degrees()[j];
                if merged >= boundary {
                    fails.push(Failure {
                        instance: format!("path={path} merged"),
                        lhs: merged.to_string(),
                        rhs: boundary.to_string(),
                    });
                }
            }
        }
        for kappa in 5..=(path.len() + 2) as Degree {
            let predicted = hole_predicate(path, kappa).expect("kappa in range");
            let absent = g.degree_count(kappa) == 0;
            if predicted != absent {
                fails.push(Failure {
                    instance: format!("path={path} kappa={kappa}"),
                    lhs: format!("hole={predicted}"),
                    rhs: format!("count={}", g.degree_count(kappa)),
                });
            }
        }
        if !fails.is_empty() {
            tally.failed += 1;
            tally.rows.extend(fails.into_iter().take(MAX_FAILURE_ROWS));
        }
        tally
    })?;
    Ok(merge_all(parts).report("holes", start))
}

/// Closed-form `P(k, x)` against built distributions for `5 <= k <= max_k`
/// and every fraction of `F_max_q`.
pub fn check_conjecture1(max_q: u64, max_k: Degree, budget: u128) -> Result<CheckReport> {
    if max_k < 5 {
        return Err(HarosError::OutOfRange(format!("max_k = {max_k}; the closed form covers k >= 5")));
    }
    let start = Instant::now();
    let parts = sweep_order(max_q, budget, |g: &HarosGraph| {
        let x = g.label();
        let dist = g.degree_distribution();
        let row = closed_form_row(x, max_k);
        let mut tally = Tally::default();
        for k in 5..=max_k {
            let built = dist.probability(k);
            let closed = &row[k as usize];
            tally.compare(&built == closed, || format!("x={x} k={k}"), &built, closed);
        }
        tally
    })?;
    let mut ends = Tally::default();
    for x in [Rational::zero(), Rational::one()] {
        let dist = build_rational(&x).degree_distribution();
        let row = closed_form_row(&x, max_k);
        for k in 5..=max_k {
            let built = dist.probability(k);
            ends.compare(built == row[k as usize], || format!("x={x} k={k}"), &built, &row[k as usize]);
        }
    }
    let mut all = vec![ends];
    all.extend(parts);
    Ok(merge_all(all).report("conjecture1", start))
}

/// `P(k, x) = (1 + m x) P(k + m, x/(1 + m x))` over interior `F_max_q`, plus
/// the new-degree rule for `P(5, x/(1+x))`.
pub fn check_scaling(
    max_q: u64,
    k_range: RangeInclusive<Degree>,
    m_range: RangeInclusive<u64>,
    budget: u128,
) -> Result<CheckReport> {
    if *k_range.start() < 5 {
        return Err(HarosError::OutOfRange("scaling holds for k >= 5".into()));
    }
    if *m_range.start() < 1 {
        return Err(HarosError::OutOfRange("m must be positive".into()));
    }
    let start = Instant::now();
    let parts = sweep_order(max_q, budget, |g: &HarosGraph| {
        let x = g.label();
        let dist = g.degree_distribution();
        let mut tally = Tally::default();
        for m in m_range.clone() {
            let image = build_rational(&scaling_map(x, m)).degree_distribution();
            for k in k_range.clone() {
                let lhs = dist.probability(k).to_ratio();
                let rhs = scaling_rhs(x, m, &image, k);
                tally.compare(lhs == rhs, || format!("x={x} k={k} m={m}"), &lhs, &rhs);
            }
            if m == 1 {
                if let Some(rule) = new_degree_rule(x) {
                    let built = image.probability(5);
                    tally.compare(built == rule, || format!("x={x} P(5,F(x))"), &built, &rule);
                }
            }
        }
        tally
    })?;
    Ok(merge_all(parts).report("scaling", start))
}

/// `|S(z) - (z+2) H(1/(z+2))| < 1e-9` for `z` in `F_max_q ∩ [1/2, 1]`.
pub fn check_derham(max_q: u64, budget: u128) -> Result<CheckReport> {
    const TOL: f64 = 1e-9;
    let start = Instant::now();
    let half = Rational::from_u64(1, 2);
    let mut parts = sweep_order(max_q, budget, |g: &HarosGraph| {
        let mut tally = Tally::default();
        let z = g.label();
        if z >= &half {
            let (l, r) = derham_check(z).expect("z >= 1/2");
            tally.compare(approx(l, r, TOL), || format!("z={z}"), fmt_f(l), fmt_f(r));
        }
        tally
    })?;
    let mut end = Tally::default();
    let (l, r) = derham_check(&Rational::one())?;
    end.compare(approx(l, r, TOL), || "z=1/1".into(), fmt_f(l), fmt_f(r));
    parts.push(end);
    Ok(merge_all(parts).report("derham", start))
}

/// `H(x)/x` against the family slope for `count` members of each rational
/// family, starting at `n = 2`.
pub fn check_families(count: u64) -> Result<CheckReport> {
    const TOL: f64 = 1e-10;
    let start = Instant::now();
    let mut tally = Tally::default();
    for family in SlopeFamily::RATIONAL {
        let slope = family_slope(family);
        let first = family.first_index();
        for n in first..first + count {
            let x = family.rational_member(n).expect("rational family");
            let s = entropy_s(&build_rational(&x).degree_distribution());
            let ratio = reduced_h_exact(&x, s) / x.to_f64();
            tally.compare(approx(ratio, slope, TOL), || format!("{family} n={n} x={x}"), fmt_f(ratio), fmt_f(slope));
        }
    }
    Ok(tally.report("families", start))
}

/// Parameters of [`check_noble`].
#[derive(Clone, Debug)]
pub struct NobleParams {
    /// Convergent depth for distribution comparisons.
    pub depth: usize,
    /// Convergent depth for slope comparisons.
    pub slope_depth: usize,
    /// Convergent depth for golden tail ratios.
    pub tail_depth: usize,
    pub c1: Vec<u64>,
    pub c3: Vec<u64>,
}

impl Default for NobleParams {
    fn default() -> Self {
        Self {
            depth: 40,
            slope_depth: 80,
            tail_depth: 25,
            c1: vec![2, 3, 4],
            c3: vec![2, 3, 4],
        }
    }
}

/// Largest `|P_built(k) - P_theory(k)|` over the support of either.
pub fn max_abs_error(dist: &DegreeDistribution, family: DistFamily) -> f64 {
    (2..=dist.max_degree() + 8)
        .map(|k| (dist.probability_f64(k) - theoretical_dist(family, k)).abs())
        .fold(0.0, f64::max)
}

fn convergent_dist(spec: &CfSpec, depth: usize) -> Result<(Rational, DegreeDistribution)> {
    let p = convergent_profile(spec, depth)?;
    Ok((p.label().clone(), p.distribution()))
}

/// `H(x)/x` of the depth-`depth` convergent of `spec`.
pub fn convergent_slope(spec: &CfSpec, depth: usize) -> Result<f64> {
    let (x, dist) = convergent_dist(spec, depth)?;
    Ok(reduced_h_exact(&x, entropy_s(&dist)) / x.to_f64())
}

/// Noble families: convergent distributions of `C1(n)` and `C3(n,1,2)`
/// against their limits (`< 1e-6`), their entropy slopes (`< 1e-10`), and
/// golden tail ratios `P(k+1)/P(k) = φ⁻¹ ± 1e-3` for `5 <= k <= 12`.
pub fn check_noble(params: &NobleParams) -> Result<CheckReport> {
    const DIST_TOL: f64 = 1e-6;
    const SLOPE_TOL: f64 = 1e-10;
    const TAIL_TOL: f64 = 1e-3;
    let start = Instant::now();
    let mut tally = Tally::default();
    let families = params
        .c1
        .iter()
        .map(|&n| (DistFamily::C1(n), SlopeFamily::NobleC1))
        .chain(params.c3.iter().map(|&n| (DistFamily::C3n12(n), SlopeFamily::NobleC3n12)));
    for (family, slope_family) in families {
        let spec = family.spec();
        let (_, dist) = convergent_dist(&spec, params.depth)?;
        let err = max_abs_error(&dist, family);
        tally.compare(err < DIST_TOL, || format!("{family} depth={} distribution", params.depth), fmt_f(err), DIST_TOL);
        let slope = convergent_slope(&spec, params.slope_depth)?;
        let target = family_slope(slope_family);
        tally.compare(
            approx(slope, target, SLOPE_TOL),
            || format!("{family} depth={} slope", params.slope_depth),
            fmt_f(slope),
            fmt_f(target),
        );
    }
    let (_, golden) = convergent_dist(&CfSpec::golden(), params.tail_depth)?;
    let g = golden_inverse();
    for k in 5..=12 {
        let (a, b) = (golden.count(k), golden.count(k + 1));
        let ratio = if a.is_zero() { f64::NAN } else { b.to_f64().unwrap() / a.to_f64().unwrap() };
        tally.compare(
            approx(ratio, g, TAIL_TOL),
            || format!("golden depth={} P({})/P({k})", params.tail_depth, k + 1),
            fmt_f(ratio),
            fmt_f(g),
        );
    }
    Ok(tally.report("noble", start))
}

/// Degrees of the metallic support `{2,3} ∪ {bn+3}`.
pub fn on_metallic_support(k: Degree, b: u64) -> bool {
    k == 2 || k == 3 || (k > 3 && (k as u64 - 3).is_multiple_of(b))
}

/// Support and distribution of depth-`depth` convergents of `[(b)]`.
///
/// Inner nodes must lie on `{2,3} ∪ {bn+3}`. The boundary node, of degree
/// `len(path) + 3`, is the only degree allowed off the support, with mass
/// exactly `1/q`. The distribution must match the limit within `1e-6`.
pub fn check_metallic(bs: &[u64], depth: usize) -> Result<CheckReport> {
    const TOL: f64 = 1e-6;
    let start = Instant::now();
    let mut tally = Tally::default();
    for &b in bs {
        if b < 2 {
            return Err(HarosError::OutOfRange(format!("metallic index {b}; use b >= 2")));
        }
        let profile = convergent_profile(&CfSpec::metallic(b), depth)?;
        let dist = profile.distribution();
        let boundary = profile.boundary_degree();
        let off: Vec<(Degree, Rational)> = dist.entries().filter(|(k, _)| !on_metallic_support(*k, b)).collect();
        let expected_off: Vec<(Degree, Rational)> = if on_metallic_support(boundary, b) {
            Vec::new()
        } else {
            vec![(boundary, Rational::reduce(1u32.into(), dist.node_count().clone()))]
        };
        let show = |v: &[(Degree, Rational)]| {
            v.iter().map(|(k, p)| format!("{k}:{p}")).collect::<Vec<_>>().join(" ")
        };
        tally.compare(
            off == expected_off,
            || format!("metallic({b}) depth={depth} off-support"),
            show(&off),
            show(&expected_off),
        );
        let err = max_abs_error(&dist, DistFamily::Metallic(b));
        tally.compare(err < TOL, || format!("metallic({b}) depth={depth} distribution"), fmt_f(err), TOL);
    }
    Ok(tally.report("metallic", start))
}

/// The eight named checks with their desk-scale parameters.
pub const CHECK_NAMES: [&str; 8] = [
    "theorem1",
    "holes",
    "conjecture1",
    "scaling",
    "derham",
    "families",
    "noble",
    "metallic",
];

/// Runs every named check at its default parameters.
pub fn run_all(budget: u128) -> Result<Vec<CheckReport>> {
    Ok(vec![
        check_theorem1(200, budget)?,
        check_holes(14, budget)?,
        check_conjecture1(200, 20, budget)?,
        check_scaling(100, 5..=15, 1..=3, budget)?,
        check_derham(100, budget)?,
        check_families(30)?,
        check_noble(&NobleParams::default())?,
        check_metallic(&[2, 3], 40)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::DEFAULT_BUDGET;

    #[test]
    fn theorem1_small() {
        let r = check_theorem1(2, DEFAULT_BUDGET).unwrap();
        assert!(r.passed());
        assert_eq!(r.instances_tested, 1);
        let r = check_theorem1(50, DEFAULT_BUDGET).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(check_theorem1(1, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn tampering_is_reported() {
        let target = Rational::from_u64(2, 7);
        let tamper = |x: &Rational, d: &mut DegreeDistribution| {
            if *x == target {
                d.tamper(3, 4);
            }
        };
        let r = check_theorem1_with(20, DEFAULT_BUDGET, Some(&tamper)).unwrap();
        assert_eq!(r.failure_count, 1);
        assert_eq!(r.failures[0].instance, "x=2/7 k=3");
        assert!(r.to_json_line(false).contains("\"status\":\"fail\""));
    }

    #[test]
    fn holes_small_and_guard() {
        let r = check_holes(8, DEFAULT_BUDGET).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.instances_tested, 256);
        assert!(matches!(check_holes(25, DEFAULT_BUDGET), Err(HarosError::ResourceGuard(_))));
    }

    #[test]
    fn conjecture_small_and_guard() {
        let r = check_conjecture1(40, 20, DEFAULT_BUDGET).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(check_conjecture1(40, 4, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn scaling_and_derham_small() {
        let r = check_scaling(30, 5..=10, 1..=3, DEFAULT_BUDGET).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        let r = check_derham(30, DEFAULT_BUDGET).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn json_lines_are_reproducible() {
        let a = check_families(5).unwrap();
        let b = check_families(5).unwrap();
        assert_eq!(a.to_json_line(false), b.to_json_line(false));
        let v: serde_json::Value = serde_json::from_str(&a.to_json_line(false)).unwrap();
        assert_eq!(v["check_id"], "families");
        assert_eq!(v["instances_tested"], 20);
        assert!(v.get("elapsed").is_none());
        let v: serde_json::Value = serde_json::from_str(&a.to_json_line(true)).unwrap();
        assert!(v["elapsed"].is_number());
    }

    #[test]
    fn metallic_support_rule() {
        assert!(on_metallic_support(5, 2) && on_metallic_support(9, 3) && !on_metallic_support(4, 2));
        assert!(check_metallic(&[1], 10).is_err());
    }
}
