//! Haros graphs built by concatenation along Farey-tree paths.
//!
//! Haros graphs are horizontal visibility graphs, which are determined by
//! their degree sequence, so a graph is stored as its open degree sequence
//! of `q + 1` nodes. Observation happens on the collapsed sequence where the
//! two extreme nodes are identified into one boundary node placed last.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{HarosError, Result};
use crate::farey::{rational_to_path, FareyPath, Symbol};
use crate::rational::{mediant, Rational};

pub type Degree = u32;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HarosGraph {
    open_degrees: Vec<Degree>,
    label: Rational,
    path: FareyPath,
    /// Index of the node merged by the last concatenation.
    junction: Option<usize>,
}

impl HarosGraph {
    /// `G_0`: two nodes joined by an edge, labelled `0/1`.
    pub fn atom() -> Self {
        Self::atom_labelled(Rational::zero())
    }

    fn atom_labelled(label: Rational) -> Self {
        Self {
            open_degrees: vec![1, 1],
            label,
            path: FareyPath::root(),
            junction: None,
        }
    }

    pub fn open_degrees(&self) -> &[Degree] {
        &self.open_degrees
    }

    pub fn label(&self) -> &Rational {
        &self.label
    }

    pub fn path(&self) -> &FareyPath {
        &self.path
    }

    /// Number of nodes after boundary collapse.
    pub fn q(&self) -> usize {
        self.open_degrees.len() - 1
    }

    pub(crate) fn set_path(&mut self, path: FareyPath) {
        self.path = path;
    }

    pub fn junction(&self) -> Option<usize> {
        self.junction
    }

    /// Degree of the collapsed boundary node, `k_1 + k_{q+1}`.
    pub fn boundary_degree(&self) -> Degree {
        self.open_degrees[0] + self.open_degrees[self.open_degrees.len() - 1]
    }

    /// Inner degrees in order followed by the boundary degree.
    pub fn collapse(&self) -> CollapsedSequence {
        let n = self.open_degrees.len();
        let mut degrees = Vec::with_capacity(n - 1);
        degrees.extend_from_slice(&self.open_degrees[1..n - 1]);
        degrees.push(self.boundary_degree());
        CollapsedSequence { degrees }
    }

    pub fn degree_distribution(&self) -> DegreeDistribution {
        self.collapse().distribution()
    }

    /// Multiplicity of degree `k` in the collapsed sequence.
    pub fn degree_count(&self, k: Degree) -> usize {
        let n = self.open_degrees.len();
        let inner = self.open_degrees[1..n - 1].iter().filter(|&&d| d == k).count();
        inner + usize::from(self.boundary_degree() == k)
    }

    /// Serializable dump; `with_distribution` adds the degree frequencies.
    pub fn dump(&self, with_distribution: bool) -> GraphDump {
        let collapsed = self.collapse();
        GraphDump {
            p: self.label.numer().to_string(),
            q: self.label.denom().to_string(),
            path: self.path.to_string(),
            open_degrees: self.open_degrees.iter().map(ToString::to_string).collect(),
            distribution: with_distribution.then(|| {
                let dist = collapsed.distribution();
                dist.counts()
                    .iter()
                    .map(|(k, c)| (k.to_string(), format!("{c}/{}", dist.node_count())))
                    .collect()
            }),
            collapsed: collapsed.degrees.iter().map(ToString::to_string).collect(),
        }
    }
}

/// JSON form of a graph; every number is a decimal string.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct GraphDump {
    pub p: String,
    pub q: String,
    pub path: String,
    pub open_degrees: Vec<String>,
    pub collapsed: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distribution: Option<BTreeMap<String, String>>,
}

/// `G_L ⊕ G_R`: the last node of `G_L` is merged with the first node of
/// `G_R` and a closing edge joins the new extremes.
///
/// Inputs must be Farey neighbours; this is asserted in debug builds via the
/// unit determinant of their labels.
pub fn concat(left: &HarosGraph, right: &HarosGraph) -> HarosGraph {
    debug_assert!(
        left.label.determinant(&right.label).is_one(),
        "{} and {} are not Farey neighbours",
        left.label,
        right.label
    );
    let (l, r) = (&left.open_degrees, &right.open_degrees);
    let mut open = Vec::with_capacity(l.len() + r.len() - 1);
    open.extend_from_slice(&l[..l.len() - 1]);
    open.push(l[l.len() - 1] + r[0]);
    open.extend_from_slice(&r[1..]);
    open[0] += 1;
    let last = open.len() - 1;
    open[last] += 1;
    HarosGraph {
        open_degrees: open,
        label: mediant(&left.label, &right.label),
        path: FareyPath::root(),
        junction: Some(l.len() - 1),
    }
}

/// Neighbour-tracking construction state: `(G_left, G_node, G_right)`.
#[derive(Clone, Debug)]
pub struct GraphDescent {
    pub left: HarosGraph,
    pub node: HarosGraph,
    pub right: HarosGraph,
}

impl GraphDescent {
    pub fn root() -> Self {
        Self {
            left: HarosGraph::atom_labelled(Rational::zero()),
            node: HarosGraph::atom_labelled(Rational::one()),
            right: HarosGraph::atom_labelled(Rational::one()),
        }
    }

    pub fn step(&mut self, s: Symbol) {
        let path = self.node.path.child(s);
        let mut next = match s {
            Symbol::L => concat(&self.left, &self.node),
            Symbol::R => concat(&self.node, &self.right),
        };
        next.path = path;
        let prev = std::mem::replace(&mut self.node, next);
        match s {
            Symbol::L => self.right = prev,
            Symbol::R => self.left = prev,
        }
    }
}

/// Builds `G_x` for the node addressed by `path`.
pub fn build(path: &FareyPath) -> HarosGraph {
    let mut d = GraphDescent::root();
    for &s in path.symbols() {
        d.step(s);
    }
    d.node
}

/// Builds `G_x` for a rational; both endpoints map to `G_0`.
pub fn build_rational(x: &Rational) -> HarosGraph {
    if x.is_endpoint() {
        return HarosGraph::atom_labelled(x.clone());
    }
    build(&rational_to_path(x).expect("interior rational"))
}

/// Degree sequence with the boundary node last.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CollapsedSequence {
    pub degrees: Vec<Degree>,
}

impl CollapsedSequence {
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).sum()
    }

    pub fn distribution(&self) -> DegreeDistribution {
        let max = self.degrees.iter().copied().max().unwrap_or(0) as usize;
        let mut hist = vec![0u64; max + 1];
        for &d in &self.degrees {
            hist[d as usize] += 1;
        }
        let counts = hist
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(k, c)| (k as Degree, BigUint::from(c)))
            .collect();
        DegreeDistribution {
            counts,
            node_count: BigUint::from(self.degrees.len()),
        }
    }
}

/// Exact degree distribution: node counts per degree over `q` nodes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeDistribution {
    counts: BTreeMap<Degree, BigUint>,
    node_count: BigUint,
}

impl DegreeDistribution {
    pub fn from_counts(mut counts: BTreeMap<Degree, BigUint>) -> Result<Self> {
        counts.retain(|_, c| !c.is_zero());
        let node_count: BigUint = counts.values().sum();
        if node_count.is_zero() {
            return Err(HarosError::InvalidInput("empty distribution".into()));
        }
        Ok(Self { counts, node_count })
    }

    pub fn counts(&self) -> &BTreeMap<Degree, BigUint> {
        &self.counts
    }

    pub fn node_count(&self) -> &BigUint {
        &self.node_count
    }

    pub fn count(&self, k: Degree) -> BigUint {
        self.counts.get(&k).cloned().unwrap_or_default()
    }

    /// `P(k)` as an exact fraction.
    pub fn probability(&self, k: Degree) -> Rational {
        Rational::reduce(self.count(k), self.node_count.clone())
    }

    pub fn probability_f64(&self, k: Degree) -> f64 {
        self.probability(k).to_f64()
    }

    /// `(k, P(k))` over the support, ascending in `k`.
    pub fn entries(&self) -> impl Iterator<Item = (Degree, Rational)> + '_ {
        self.counts
            .iter()
            .map(|(&k, c)| (k, Rational::reduce(c.clone(), self.node_count.clone())))
    }

    pub fn support(&self) -> impl Iterator<Item = Degree> + '_ {
        self.counts.keys().copied()
    }

    pub fn max_degree(&self) -> Degree {
        *self.counts.keys().next_back().expect("non-empty")
    }

    /// Exact `Σ k P(k)`, as `(Σ k·count, q)`.
    pub fn degree_sum(&self) -> BigUint {
        self.counts.iter().map(|(&k, c)| c * k).sum()
    }

    /// `Σ P(k)` from the counts.
    pub fn total_probability(&self) -> Rational {
        Rational::reduce(self.counts.values().sum(), self.node_count().clone())
    }

    /// Removes one node of degree `k`; test hook for harness self-checks.
    #[doc(hidden)]
    pub fn tamper(&mut self, from: Degree, to: Degree) {
        if let Some(c) = self.counts.get_mut(&from) {
            if !c.is_zero() {
                *c -= 1u32;
                *self.counts.entry(to).or_default() += 1u32;
                self.counts.retain(|_, c| !c.is_zero());
            }
        }
    }
}

/// Compact form of a Haros graph: the two extreme degrees plus a histogram
/// of inner degrees.
///
/// Concatenation only ever touches the extremes and creates one merged inner
/// node, so the histogram evolves exactly as the full sequence does while
/// costing `O(distinct degrees)` per step. This makes convergents with
/// astronomically many nodes tractable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeProfile {
    label: Rational,
    first: Degree,
    last: Degree,
    inner: BTreeMap<Degree, BigUint>,
    depth: usize,
}

impl DegreeProfile {
    pub fn atom(label: Rational) -> Self {
        Self {
            label,
            first: 1,
            last: 1,
            inner: BTreeMap::new(),
            depth: 0,
        }
    }

    pub fn of_graph(g: &HarosGraph) -> Self {
        let open = g.open_degrees();
        let mut inner: BTreeMap<Degree, BigUint> = BTreeMap::new();
        for &d in &open[1..open.len() - 1] {
            *inner.entry(d).or_default() += 1u32;
        }
        Self {
            label: g.label().clone(),
            first: open[0],
            last: open[open.len() - 1],
            inner,
            depth: g.path().len(),
        }
    }

    pub fn label(&self) -> &Rational {
        &self.label
    }

    /// Path length of the addressed node.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub(crate) fn set_depth(&mut self, depth: usize) {
        self.depth = depth;
    }

    pub fn extremes(&self) -> (Degree, Degree) {
        (self.first, self.last)
    }

    pub fn boundary_degree(&self) -> Degree {
        self.first + self.last
    }

    pub fn concat(left: &Self, right: &Self) -> Self {
        let (small, large) = if left.inner.len() <= right.inner.len() {
            (left, right)
        } else {
            (right, left)
        };
        let mut inner = large.inner.clone();
        for (k, c) in &small.inner {
            *inner.entry(*k).or_default() += c;
        }
        *inner.entry(left.last + right.first).or_default() += 1u32;
        Self {
            label: mediant(&left.label, &right.label),
            first: left.first + 1,
            last: right.last + 1,
            inner,
            depth: 0,
        }
    }

    pub fn distribution(&self) -> DegreeDistribution {
        let mut counts = self.inner.clone();
        *counts.entry(self.boundary_degree()).or_default() += 1u32;
        let node_count = self.label.denom().clone();
        debug_assert_eq!(counts.values().sum::<BigUint>(), node_count);
        DegreeDistribution { counts, node_count }
    }
}

/// Builds the profile of the node reached by `symbols` from the root.
pub fn build_profile(symbols: impl IntoIterator<Item = Symbol>) -> DegreeProfile {
    let mut left = DegreeProfile::atom(Rational::zero());
    let mut node = DegreeProfile::atom(Rational::one());
    let mut right = DegreeProfile::atom(Rational::one());
    let mut depth = 0;
    for s in symbols {
        depth += 1;
        let mut next = match s {
            Symbol::L => DegreeProfile::concat(&left, &node),
            Symbol::R => DegreeProfile::concat(&node, &right),
        };
        next.depth = depth;
        let prev = std::mem::replace(&mut node, next);
        match s {
            Symbol::L => right = prev,
            Symbol::R => left = prev,
        }
    }
    node
}

/// Arithmetic mean of the collapsed degrees; always `4 - 2/q`.
pub fn mean_degree(dist: &DegreeDistribution) -> num_rational::BigRational {
    use num_bigint::BigInt;
    num_rational::BigRational::new(
        BigInt::from(dist.degree_sum()),
        BigInt::from(dist.node_count().clone()),
    )
}

/// `exp(<ln k>)` over the collapsed degrees.
pub fn geometric_mean_degree(dist: &DegreeDistribution) -> f64 {
    let q = dist.node_count().to_f64().unwrap_or(f64::INFINITY);
    let log_sum: f64 = dist
        .counts()
        .iter()
        .map(|(&k, c)| c.to_f64().unwrap_or(f64::INFINITY) * (k as f64).ln())
        .sum();
    (log_sum / q).exp()
}
