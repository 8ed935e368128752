//! Farey sequences and navigation of the Farey binary tree.
//!
//! Nodes of the tree are addressed by [`FareyPath`]s over `{L, R}`. The empty
//! path is the root `1/1`; every other path starts with `L` and descends
//! through `1/2`. A descent keeps the triple (left ancestor, node, right
//! ancestor): `L` replaces the right ancestor by the node and moves to the
//! mediant of the left ancestor and the node, `R` does the mirror move.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{HarosError, Result};
use crate::rational::{neighbour_mediant, Rational};

/// Default cap on the level index accepted by [`tree_level`].
pub const DEFAULT_LEVEL_CAP: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    L,
    R,
}

impl Symbol {
    pub fn flip(self) -> Self {
        match self {
            Symbol::L => Symbol::R,
            Symbol::R => Symbol::L,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::L => 'L',
            Symbol::R => 'R',
        }
    }
}

/// A finite symbolic path in the Farey binary tree.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FareyPath {
    symbols: Vec<Symbol>,
}

impl FareyPath {
    /// The empty path, i.e. the root `1/1`.
    pub fn root() -> Self {
        Self::default()
    }

    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.first() == Some(&Symbol::R) {
            return Err(HarosError::InvalidInput(
                "a non-empty Farey path must start with L".into(),
            ));
        }
        Ok(Self { symbols })
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Level of the addressed node: `1` for the root, `len + 1` otherwise.
    pub fn level(&self) -> usize {
        self.symbols.len() + 1
    }

    /// 1-based symbol access.
    pub fn symbol_at(&self, index: usize) -> Option<Symbol> {
        index.checked_sub(1).and_then(|i| self.symbols.get(i).copied())
    }

    pub fn prefix(&self, len: usize) -> FareyPath {
        FareyPath {
            symbols: self.symbols[..len.min(self.symbols.len())].to_vec(),
        }
    }

    pub fn child(&self, s: Symbol) -> FareyPath {
        let mut symbols = Vec::with_capacity(self.symbols.len() + 1);
        symbols.extend_from_slice(&self.symbols);
        symbols.push(s);
        FareyPath { symbols }
    }

    /// Path of `1 - x`: every symbol after the leading `L` is flipped.
    pub fn mirror(&self) -> FareyPath {
        let symbols = self
            .symbols
            .iter()
            .enumerate()
            .map(|(i, &s)| if i == 0 { s } else { s.flip() })
            .collect();
        FareyPath { symbols }
    }
}

impl fmt::Display for FareyPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for FareyPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for FareyPath {
    type Err = HarosError;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .trim()
            .chars()
            .map(|c| match c {
                'L' => Ok(Symbol::L),
                'R' => Ok(Symbol::R),
                other => Err(HarosError::Parse(other.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        FareyPath::new(symbols)
    }
}

/// Neighbour-tracking cursor in the Farey tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descent {
    pub left: Rational,
    pub node: Rational,
    pub right: Rational,
}

impl Descent {
    /// Cursor at the root `1/1`. The right ancestor is a placeholder; paths
    /// always start with `L`, so it is never read.
    pub fn root() -> Self {
        Self {
            left: Rational::zero(),
            node: Rational::one(),
            right: Rational::one(),
        }
    }

    pub fn step(&mut self, s: Symbol) {
        match s {
            Symbol::L => {
                let next = neighbour_mediant(&self.left, &self.node);
                self.right = std::mem::replace(&mut self.node, next);
            }
            Symbol::R => {
                let next = neighbour_mediant(&self.node, &self.right);
                self.left = std::mem::replace(&mut self.node, next);
            }
        }
    }

    pub fn follow<'a>(symbols: impl IntoIterator<Item = &'a Symbol>) -> Self {
        let mut d = Self::root();
        for &s in symbols {
            d.step(s);
        }
        d
    }
}

/// All reduced fractions in `[0,1]` with denominator at most `n`, ascending.
pub fn farey_sequence(n: u64) -> Result<Vec<Rational>> {
    Ok(farey_pairs(n)?
        .into_iter()
        .map(|(p, q)| Rational::from_reduced(BigUint::from(p), BigUint::from(q)))
        .collect())
}

/// Machine-integer variant of [`farey_sequence`], returning `(p, q)` pairs.
pub fn farey_pairs(n: u64) -> Result<Vec<(u64, u64)>> {
    if n == 0 {
        return Err(HarosError::InvalidInput("Farey order must be at least 1".into()));
    }
    let mut out = vec![(0, 1)];
    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, n);
    while c <= n {
        out.push((c, d));
        let k = (n + b) / d;
        let (nc, nd) = (k * c - a, k * d - b);
        a = c;
        b = d;
        c = nc;
        d = nd;
    }
    Ok(out)
}

/// Number of terms of the Farey sequence of order `n` (`1 + Σ φ(q)`).
pub fn farey_len(n: u64) -> u128 {
    1 + totients(n).iter().skip(1).map(|&t| t as u128).sum::<u128>()
}

/// Euler's totient for `0..=n` (index 0 unused).
pub fn totients(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for i in 2..=n {
        if phi[i] == i as u64 {
            for j in (i..=n).step_by(i) {
                phi[j] -= phi[j] / i as u64;
            }
        }
    }
    phi
}

/// The fractions first appearing at level `n` of the Farey tree, ascending.
///
/// `ℓ_1 = {0/1, 1/1}`, `ℓ_2 = {1/2}` and `|ℓ_n| = 2^(n-2)` for `n >= 2`.
/// Levels above `cap` are refused.
pub fn tree_level(n: u32, cap: u32) -> Result<Vec<Rational>> {
    if n == 0 {
        return Err(HarosError::InvalidInput("tree levels start at 1".into()));
    }
    if n > cap {
        return Err(HarosError::ResourceGuard(format!(
            "level {n} holds 2^{} fractions; cap is level {cap}",
            n - 2
        )));
    }
    if n == 1 {
        return Ok(vec![Rational::zero(), Rational::one()]);
    }
    let mut out = Vec::with_capacity(1usize << (n - 2));
    collect_level(&Rational::zero(), &Rational::one(), n - 2, &mut out);
    Ok(out)
}

fn collect_level(lo: &Rational, hi: &Rational, remaining: u32, out: &mut Vec<Rational>) {
    let mid = neighbour_mediant(lo, hi);
    if remaining == 0 {
        out.push(mid);
        return;
    }
    collect_level(lo, &mid, remaining - 1, out);
    collect_level(&mid, hi, remaining - 1, out);
}

/// Node reached by following `path` from the root.
pub fn path_to_rational(path: &FareyPath) -> Rational {
    Descent::follow(path.symbols()).node
}

/// The unique path reaching `x`, for `0 < x < 1`.
pub fn rational_to_path(x: &Rational) -> Result<FareyPath> {
    if x.is_endpoint() {
        return Err(HarosError::OutOfRange(format!(
            "{x} has no finite proper path in the Farey tree"
        )));
    }
    // Runs of the path are the partial quotients, the last one shortened by one.
    let terms = euclid_terms(x.numer(), x.denom());
    Ok(blocks_to_path(&terms))
}

/// Partial quotients of `p/q = [a1, a2, ...]` for `0 < p < q` (canonical:
/// the last term is at least 2).
pub(crate) fn euclid_terms(p: &BigUint, q: &BigUint) -> Vec<BigUint> {
    let mut terms = Vec::new();
    let (mut num, mut den) = (q.clone(), p.clone());
    while !den.is_zero() {
        let (a, r) = num.div_rem(&den);
        terms.push(a);
        num = den;
        den = r;
    }
    terms
}

/// Alternating blocks `L^a1 R^a2 L^a3 ...` with the last exponent reduced by one.
pub(crate) fn blocks_to_path(terms: &[BigUint]) -> FareyPath {
    let mut symbols = Vec::new();
    let last = terms.len().saturating_sub(1);
    for (i, a) in terms.iter().enumerate() {
        let s = if i % 2 == 0 { Symbol::L } else { Symbol::R };
        let mut run = a.to_usize().expect("partial quotient fits in memory");
        if i == last {
            run -= 1;
        }
        symbols.extend(std::iter::repeat_n(s, run));
    }
    FareyPath { symbols }
}

/// Whether `b` is the successor of `a` in some Farey sequence.
pub fn are_neighbours(a: &Rational, b: &Rational) -> bool {
    a < b && a.determinant(b).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn strs(v: &[Rational]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn farey_sequence_examples() {
        assert_eq!(strs(&farey_sequence(3).unwrap()), ["0/1", "1/3", "1/2", "2/3", "1/1"]);
        assert_eq!(
            strs(&farey_sequence(4).unwrap()),
            ["0/1", "1/4", "1/3", "1/2", "2/3", "3/4", "1/1"]
        );
        assert_eq!(strs(&farey_sequence(1).unwrap()), ["0/1", "1/1"]);
        assert!(farey_sequence(0).is_err());
    }

    #[test]
    fn farey_len_matches_enumeration() {
        for n in 1..60 {
            assert_eq!(farey_len(n), farey_pairs(n).unwrap().len() as u128);
        }
        assert_eq!(farey_len(200) - 2, 12231);
        assert_eq!(farey_len(1000) - 2, 304191);
    }

    #[test]
    fn tree_level_examples() {
        assert_eq!(strs(&tree_level(4, DEFAULT_LEVEL_CAP).unwrap()), ["1/4", "2/5", "3/5", "3/4"]);
        assert_eq!(strs(&tree_level(2, DEFAULT_LEVEL_CAP).unwrap()), ["1/2"]);
        assert_eq!(strs(&tree_level(1, DEFAULT_LEVEL_CAP).unwrap()), ["0/1", "1/1"]);
        let l5 = tree_level(5, DEFAULT_LEVEL_CAP).unwrap();
        assert_eq!(l5.len(), 8);
        assert!(l5.contains(&r("2/7")) && l5.contains(&r("3/8")));
        assert!(matches!(tree_level(31, DEFAULT_LEVEL_CAP), Err(HarosError::ResourceGuard(_))));
    }

    #[test]
    fn path_examples() {
        let p = |s: &str| s.parse::<FareyPath>().unwrap();
        assert_eq!(path_to_rational(&p("LRLRL")), r("8/13"));
        assert_eq!(path_to_rational(&p("L")), r("1/2"));
        assert_eq!(path_to_rational(&p("LLR")), r("2/5"));
        assert_eq!(path_to_rational(&p("")), r("1/1"));
        assert_eq!(rational_to_path(&r("8/13")).unwrap().to_string(), "LRLRL");
        assert_eq!(rational_to_path(&r("1/3")).unwrap().to_string(), "LL");
        assert_eq!(rational_to_path(&r("2/7")).unwrap().to_string(), "LLLR");
        assert!(rational_to_path(&r("0/1")).is_err());
        assert!(rational_to_path(&r("1/1")).is_err());
        assert!("RL".parse::<FareyPath>().is_err());
        assert!("LX".parse::<FareyPath>().is_err());
    }

    #[test]
    fn mirror_path_is_complement() {
        let p: FareyPath = "LLRL".parse().unwrap();
        assert_eq!(path_to_rational(&p.mirror()), path_to_rational(&p).complement());
    }

    #[test]
    fn round_trip_up_to_200() {
        for (p, q) in farey_pairs(200).unwrap() {
            if p == 0 || p == q {
                continue;
            }
            let x = Rational::from_u64(p, q);
            let path = rational_to_path(&x).unwrap();
            assert_eq!(path_to_rational(&path), x);
        }
    }

    #[test]
    fn mediant_lies_between_neighbours() {
        let seq = farey_sequence(40).unwrap();
        for w in seq.windows(2) {
            assert!(are_neighbours(&w[0], &w[1]));
            let m = crate::rational::mediant(&w[0], &w[1]);
            assert!(w[0] < m && m < w[1]);
        }
    }

    #[test]
    fn levels_cover_farey_sequences() {
        let mut union = Vec::new();
        for n in 1..=12 {
            union.extend(tree_level(n, DEFAULT_LEVEL_CAP).unwrap());
            for x in farey_sequence(n as u64).unwrap() {
                assert!(union.contains(&x), "{x} missing from levels <= {n}");
            }
        }
    }
}
