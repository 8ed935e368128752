//! Continued fractions `x = [a1, a2, ...] = 1/(a1 + 1/(a2 + ...))` in `(0,1)`,
//! periodic specifications for quadratic irrationals, convergents and the
//! map `x -> x/(1+mx)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{HarosError, Result};
use crate::farey::{blocks_to_path, euclid_terms, FareyPath, Symbol};
use crate::rational::Rational;

/// Finite continued fraction with canonical terms (last term >= 2).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ContinuedFraction {
    terms: Vec<BigUint>,
}

impl ContinuedFraction {
    /// Accepts any positive terms and normalises a trailing `1`
    /// (`[.., a, 1] == [.., a+1]`). The value must lie in `(0,1)`.
    pub fn new(terms: Vec<BigUint>) -> Result<Self> {
        if terms.is_empty() {
            return Err(HarosError::InvalidInput("empty continued fraction".into()));
        }
        if terms.iter().any(Zero::is_zero) {
            return Err(HarosError::InvalidInput("continued fraction terms must be positive".into()));
        }
        let mut terms = terms;
        if terms.len() > 1 && terms.last().is_some_and(One::is_one) {
            terms.pop();
            *terms.last_mut().unwrap() += 1u32;
        }
        if terms.len() == 1 && terms[0].is_one() {
            return Err(HarosError::OutOfRange("[1] equals 1, outside (0,1)".into()));
        }
        Ok(Self { terms })
    }

    pub fn from_u64(terms: &[u64]) -> Result<Self> {
        Self::new(terms.iter().map(|&a| BigUint::from(a)).collect())
    }

    pub fn terms(&self) -> &[BigUint] {
        &self.terms
    }

    pub fn value(&self) -> Rational {
        let (p, q) = convergent_recurrence(self.terms.iter()).last().expect("non-empty");
        Rational::from_reduced(p, q)
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, &[])
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, transient: &[BigUint], period: &[BigUint]) -> fmt::Result {
    write!(f, "[")?;
    let mut first = true;
    for a in transient {
        if !first {
            write!(f, ",")?;
        }
        first = false;
        write!(f, "{a}")?;
    }
    if !period.is_empty() {
        if !first {
            write!(f, ",")?;
        }
        write!(f, "(")?;
        for (i, b) in period.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")?;
    }
    write!(f, "]")
}

/// Canonical continued fraction of `0 < x < 1`.
pub fn rational_to_cf(x: &Rational) -> Result<ContinuedFraction> {
    if x.is_endpoint() {
        return Err(HarosError::OutOfRange(format!("{x} has no proper continued fraction")));
    }
    Ok(ContinuedFraction {
        terms: euclid_terms(x.numer(), x.denom()),
    })
}

/// `L^a1 R^a2 L^a3 ...`, last exponent `a_n - 1`.
pub fn cf_to_path(cf: &ContinuedFraction) -> FareyPath {
    blocks_to_path(&cf.terms)
}

/// Continued fraction with a finite transient and an optional period.
///
/// An empty period describes a rational; `period == [1]` a noble number;
/// an empty transient with `period == [b]` the metallic ratio `φ_b^{-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CfSpec {
    transient: Vec<BigUint>,
    period: Vec<BigUint>,
}

impl CfSpec {
    pub fn new(transient: Vec<BigUint>, period: Vec<BigUint>) -> Result<Self> {
        if transient.is_empty() && period.is_empty() {
            return Err(HarosError::InvalidInput("empty continued fraction spec".into()));
        }
        if transient.iter().chain(&period).any(Zero::is_zero) {
            return Err(HarosError::InvalidInput("continued fraction terms must be positive".into()));
        }
        if period.is_empty() {
            // rational: reuse the canonical-form validation
            ContinuedFraction::new(transient.clone())?;
        }
        Ok(Self { transient, period })
    }

    pub fn from_u64(transient: &[u64], period: &[u64]) -> Result<Self> {
        let big = |v: &[u64]| v.iter().map(|&a| BigUint::from(a)).collect();
        Self::new(big(transient), big(period))
    }

    /// `φ^{-1} = [(1)]`.
    pub fn golden() -> Self {
        Self::from_u64(&[], &[1]).unwrap()
    }

    /// `C1(n) = [n, (1)] = 1/(n + φ^{-1})`.
    pub fn noble_c1(n: u64) -> Self {
        Self::from_u64(&[n], &[1]).unwrap()
    }

    /// `C3(n,1,2) = [n, 1, 2, (1)]`.
    pub fn noble_c3(n: u64) -> Self {
        Self::from_u64(&[n, 1, 2], &[1]).unwrap()
    }

    /// `φ_b^{-1} = [(b)]`, the positive root of `x² + bx - 1`.
    pub fn metallic(b: u64) -> Self {
        Self::from_u64(&[], &[b]).unwrap()
    }

    pub fn transient(&self) -> &[BigUint] {
        &self.transient
    }

    pub fn period(&self) -> &[BigUint] {
        &self.period
    }

    pub fn is_rational(&self) -> bool {
        self.period.is_empty()
    }

    pub fn is_noble(&self) -> bool {
        self.period.len() == 1 && self.period[0].is_one()
    }

    /// `Some(b)` when the spec is exactly `[(b)]`.
    pub fn metallic_index(&self) -> Option<u64> {
        match (self.transient.as_slice(), self.period.as_slice()) {
            ([], [b]) => b.to_u64(),
            _ => None,
        }
    }

    /// Infinite (or finite, for rationals) stream of partial quotients.
    pub fn terms(&self) -> impl Iterator<Item = &BigUint> + '_ {
        let periodic = (!self.period.is_empty()).then(|| self.period.iter().cycle());
        self.transient.iter().chain(periodic.into_iter().flatten())
    }

    /// First `depth` terms as a finite canonical continued fraction.
    pub fn truncate(&self, depth: usize) -> Result<ContinuedFraction> {
        ContinuedFraction::new(self.terms().take(depth).cloned().collect())
    }

    /// Path symbols of the (possibly infinite) expansion, without the
    /// rational last-block shortening.
    pub fn path_symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.terms().enumerate().flat_map(|(i, a)| {
            let s = if i % 2 == 0 { Symbol::L } else { Symbol::R };
            std::iter::repeat_n(s, a.to_usize().expect("term fits in memory"))
        })
    }
}

impl fmt::Display for CfSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.transient, &self.period)
    }
}

impl FromStr for CfSpec {
    type Err = HarosError;

    /// Parses `"[a1,a2,...]"` or `"[a1,...,(b1,...)]"`; a leading `0;` as in
    /// `[0; 2, 4, (1)]` is tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| HarosError::Parse(s.to_string()))?;
        let inner = match inner.split_once(';') {
            Some((head, rest)) if head.trim() == "0" => rest,
            Some(_) => return Err(HarosError::Parse(s.to_string())),
            None => inner,
        };
        let (head, period) = match inner.find('(') {
            Some(i) => {
                let tail = inner[i + 1..]
                    .trim()
                    .strip_suffix(')')
                    .ok_or_else(|| HarosError::Parse(inner[i..].to_string()))?;
                (&inner[..i], parse_list(tail)?)
            }
            None => (inner, Vec::new()),
        };
        let transient = parse_list(head)?;
        if period.is_empty() && inner.contains('(') {
            return Err(HarosError::Parse("()".into()));
        }
        CfSpec::new(transient, period)
    }
}

fn parse_list(s: &str) -> Result<Vec<BigUint>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<BigUint>().map_err(|_| HarosError::Parse(t.to_string())))
        .collect()
}

/// `(p_n, q_n)` for `n = 1, 2, ...` from `p_n = a_n p_{n-1} + p_{n-2}`,
/// seeded with `p_{-1}/q_{-1} = 1/0` and `p_0/q_0 = 0/1`.
pub(crate) fn convergent_recurrence<'a>(
    terms: impl Iterator<Item = &'a BigUint> + 'a,
) -> impl Iterator<Item = (BigUint, BigUint)> + 'a {
    let mut prev = (BigUint::one(), BigUint::zero());
    let mut cur = (BigUint::zero(), BigUint::one());
    terms.map(move |a| {
        let next = (a * &cur.0 + &prev.0, a * &cur.1 + &prev.1);
        prev = std::mem::replace(&mut cur, next.clone());
        next
    })
}

/// First `depth` convergents of `spec`, each reduced.
pub fn convergents(spec: &CfSpec, depth: usize) -> Result<Vec<Rational>> {
    if depth == 0 {
        return Err(HarosError::InvalidInput("depth must be at least 1".into()));
    }
    Ok(convergent_recurrence(spec.terms())
        .take(depth)
        .map(|(p, q)| Rational::from_reduced(p, q))
        .collect())
}

/// Floating-point value of `spec`.
///
/// Rationals are divided exactly. A periodic tail `y = [(b1..bm)]` is the
/// root in `(0,1)` of `Q_{m-1} y² + (Q_m - P_{m-1}) y - P_m = 0`, where
/// `P_i/Q_i` are the convergents of one period; the transient then acts on
/// `y` as the Möbius map `(p_T + y p_{T-1}) / (q_T + y q_{T-1})`. For
/// `period == [1]` this is the noble closed form `(Aφ⁻¹+B)/(Cφ⁻¹+D)`.
pub fn evaluate(spec: &CfSpec) -> f64 {
    let (p_prev, q_prev, p_t, q_t) = last_two_convergents(spec.transient.iter());
    if spec.is_rational() {
        return Rational::from_reduced(p_t, q_t).to_f64();
    }
    let (pm1, qm1, pm, qm) = last_two_convergents(spec.period.iter());
    let a = to_f64(&qm1);
    let p_m = to_f64(&pm);
    // b = Q_m - P_{m-1} >= 0 because q_m >= q_{m-1} >= p_{m-1}.
    let b = to_f64(&qm) - to_f64(&pm1);
    let disc = b * b + 4.0 * a * p_m;
    // 2c / (b + sqrt(b² - 4ac)) with c = -P_m avoids cancellation for b > 0.
    let y = 2.0 * p_m / (b + disc.sqrt());
    let (pp, qp, pt, qt) = (to_f64(&p_prev), to_f64(&q_prev), to_f64(&p_t), to_f64(&q_t));
    (pt + y * pp) / (qt + y * qp)
}

fn to_f64(n: &BigUint) -> f64 {
    n.to_f64().unwrap_or(f64::INFINITY)
}

/// `(p_{n-1}, q_{n-1}, p_n, q_n)` after consuming `terms`; for no terms this
/// is `(1, 0, 0, 1)`.
fn last_two_convergents<'a>(terms: impl Iterator<Item = &'a BigUint>) -> (BigUint, BigUint, BigUint, BigUint) {
    let mut prev = (BigUint::one(), BigUint::zero());
    let mut cur = (BigUint::zero(), BigUint::one());
    for a in terms {
        let next = (a * &cur.0 + &prev.0, a * &cur.1 + &prev.1);
        prev = std::mem::replace(&mut cur, next);
    }
    (prev.0, prev.1, cur.0, cur.1)
}

/// `x / (1 + m x)`; shifts the first partial quotient by `m`.
pub fn apply_f(x: &Rational, m: u64) -> Rational {
    let q = x.denom() + x.numer() * BigUint::from(m);
    // gcd(p, q + m p) = gcd(p, q) = 1
    Rational::from_reduced(x.numer().clone(), q)
}

/// Fibonacci numbers with `F_0 = F_1 = 1`.
pub fn fibonacci(n: u64) -> BigUint {
    let (mut a, mut b) = (BigUint::one(), BigUint::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// Truncates a float in `(0,1)` to a continued fraction of at most
/// `max_terms` terms. Expansion stops early once the remainder is below the
/// float's resolution.
pub fn decimal_to_cf(x: f64, max_terms: usize) -> Result<ContinuedFraction> {
    if !(x > 0.0 && x < 1.0) {
        return Err(HarosError::OutOfRange(format!("{x} is not in (0,1)")));
    }
    let mut terms = Vec::new();
    let mut r = x;
    while terms.len() < max_terms {
        let inv = 1.0 / r;
        let a = inv.floor();
        if !a.is_finite() || a >= 1e15 {
            break;
        }
        terms.push(BigUint::from(a as u64));
        r = inv - a;
        if r < 1e-12 {
            break;
        }
    }
    ContinuedFraction::new(terms)
}
