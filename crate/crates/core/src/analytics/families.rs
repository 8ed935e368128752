//! Number families with closed-form entropy slopes and degree distributions.

use std::fmt;
use std::str::FromStr;

use crate::cf::{cf_to_path, fibonacci, CfSpec};
use crate::error::{HarosError, Result};
use crate::graph::{build_profile, Degree, DegreeDistribution, DegreeProfile};
use crate::rational::Rational;

/// `φ⁻¹`.
pub fn golden_inverse() -> f64 {
    (5f64.sqrt() - 1.0) / 2.0
}

/// `φ_b⁻¹`, the positive root of `x² + b x - 1`.
pub fn metallic_inverse(b: u64) -> f64 {
    let b = b as f64;
    2.0 / (b + (b * b + 4.0).sqrt())
}

/// Families along which `H(x)/x` is constant.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum SlopeFamily {
    OneOverN,
    TwoOver2n1,
    ThreeOver3n2,
    ThreeOver3n1,
    NobleC1,
    NobleC3n12,
}

impl SlopeFamily {
    pub const ALL: [SlopeFamily; 6] = [
        SlopeFamily::OneOverN,
        SlopeFamily::TwoOver2n1,
        SlopeFamily::ThreeOver3n2,
        SlopeFamily::ThreeOver3n1,
        SlopeFamily::NobleC1,
        SlopeFamily::NobleC3n12,
    ];

    pub const RATIONAL: [SlopeFamily; 4] = [
        SlopeFamily::OneOverN,
        SlopeFamily::TwoOver2n1,
        SlopeFamily::ThreeOver3n2,
        SlopeFamily::ThreeOver3n1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SlopeFamily::OneOverN => "one_over_n",
            SlopeFamily::TwoOver2n1 => "two_over_2n1",
            SlopeFamily::ThreeOver3n2 => "three_over_3n2",
            SlopeFamily::ThreeOver3n1 => "three_over_3n1",
            SlopeFamily::NobleC1 => "noble_C1",
            SlopeFamily::NobleC3n12 => "noble_C3n12",
        }
    }

    /// Smallest index whose member lies in `(0, 1/2]`.
    pub fn first_index(self) -> u64 {
        2
    }

    /// The `n`-th rational member, or `None` for the noble families.
    pub fn rational_member(self, n: u64) -> Option<Rational> {
        let (p, q) = match self {
            SlopeFamily::OneOverN => (1, n),
            SlopeFamily::TwoOver2n1 => (2, 2 * n + 1),
            SlopeFamily::ThreeOver3n2 => (3, 3 * n + 2),
            SlopeFamily::ThreeOver3n1 => (3, 3 * n + 1),
            _ => return None,
        };
        Some(Rational::from_u64(p, q))
    }

    /// The `n`-th noble member as a continued fraction spec.
    pub fn noble_member(self, n: u64) -> Option<CfSpec> {
        match self {
            SlopeFamily::NobleC1 => Some(CfSpec::noble_c1(n)),
            SlopeFamily::NobleC3n12 => Some(CfSpec::noble_c3(n)),
            _ => None,
        }
    }
}

impl fmt::Display for SlopeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SlopeFamily {
    type Err = HarosError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| HarosError::Parse(s.to_string()))
    }
}

/// Constant value of `H(x)/x` along `family`, natural log.
pub fn family_slope(family: SlopeFamily) -> f64 {
    let g = golden_inverse();
    match family {
        SlopeFamily::OneOverN => 0.0,
        SlopeFamily::TwoOver2n1 => 2f64.ln(),
        SlopeFamily::ThreeOver3n2 => 3f64.ln(),
        SlopeFamily::ThreeOver3n1 => 3f64.ln() - 2.0 / 3.0 * 2f64.ln(),
        SlopeFamily::NobleC1 => -g.ln() * (3.0 + g),
        SlopeFamily::NobleC3n12 => (3.0 + g).ln() - (1.0 - g).ln() / (3.0 + g),
    }
}

/// Irrationals whose limiting degree distribution has a closed form.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum DistFamily {
    Golden,
    C1(u64),
    C3n12(u64),
    Metallic(u64),
}

impl DistFamily {
    pub fn spec(self) -> CfSpec {
        match self {
            DistFamily::Golden => CfSpec::golden(),
            DistFamily::C1(n) => CfSpec::noble_c1(n),
            DistFamily::C3n12(n) => CfSpec::noble_c3(n),
            DistFamily::Metallic(b) => CfSpec::metallic(b),
        }
    }

    /// Recognises a spec as a member of one of the families.
    pub fn recognise(spec: &CfSpec) -> Option<Self> {
        use num_traits::ToPrimitive;
        let t: Vec<u64> = spec.transient().iter().map(|a| a.to_u64()).collect::<Option<_>>()?;
        if let Some(b) = spec.metallic_index() {
            return Some(if b == 1 { DistFamily::Golden } else { DistFamily::Metallic(b) });
        }
        if !spec.is_noble() {
            return None;
        }
        match t.as_slice() {
            [] => Some(DistFamily::Golden),
            [n] if *n >= 2 => Some(DistFamily::C1(*n)),
            [n, 1, 2] if *n >= 2 => Some(DistFamily::C3n12(*n)),
            _ => None,
        }
    }

    /// The value `x` of the family member.
    pub fn value(self) -> f64 {
        let g = golden_inverse();
        match self {
            DistFamily::Golden => g,
            DistFamily::C1(n) => 1.0 / (n as f64 + g),
            DistFamily::C3n12(n) => {
                let n = n as f64;
                (3.0 + g) / ((3.0 * n + 2.0) + (n + 1.0) * g)
            }
            DistFamily::Metallic(b) => metallic_inverse(b),
        }
    }
}

impl fmt::Display for DistFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistFamily::Golden => write!(f, "golden"),
            DistFamily::C1(n) => write!(f, "C1({n})"),
            DistFamily::C3n12(n) => write!(f, "C3({n},1,2)"),
            DistFamily::Metallic(b) => write!(f, "metallic({b})"),
        }
    }
}

/// Limiting `P(k)` of the family member. Declared holes return exactly 0.
pub fn theoretical_dist(family: DistFamily, k: Degree) -> f64 {
    let g = golden_inverse();
    let k = k as i64;
    if k < 2 {
        return 0.0;
    }
    match family {
        DistFamily::Golden | DistFamily::Metallic(1) => match k {
            2 => 1.0 - g,
            3 => 2.0 * g - 1.0,
            4 => 0.0,
            _ => g.powi((k - 1) as i32),
        },
        DistFamily::C1(n) => {
            let (n, x) = (n as i64, family.value());
            match k {
                2 => x,
                3 => 1.0 - 2.0 * x,
                _ if k <= n + 2 => 0.0,
                _ => x * g.powi((k - n - 1) as i32),
            }
        }
        DistFamily::C3n12(n) => {
            let (n, x) = (n as i64, family.value());
            let unit = x / (3.0 + g);
            match k {
                2 => x,
                3 => 1.0 - 2.0 * x,
                _ if k <= n + 2 => 0.0,
                _ if k == n + 3 => unit,
                _ if k == n + 4 => (1.0 + g) * unit,
                _ if k == n + 5 => 0.0,
                _ => unit * g.powi((k - n - 4) as i32),
            }
        }
        DistFamily::Metallic(b) => {
            let (b, y) = (b as i64, metallic_inverse(b));
            match k {
                2 => y,
                3 => 1.0 - 2.0 * y,
                _ if (k - 3) % b == 0 => (1.0 - y) * y.powi(((k - 3) / b) as i32),
                _ => 0.0,
            }
        }
    }
}

/// Degree profile of the depth-`depth` convergent of `spec`.
pub fn convergent_profile(spec: &CfSpec, depth: usize) -> Result<DegreeProfile> {
    let cf = spec.truncate(depth)?;
    Ok(build_profile(cf_to_path(&cf).symbols().iter().copied()))
}

/// Exact distribution of `G_{𝔉_{n-1}/𝔉_n}`, built along its zigzag path.
pub fn fibonacci_convergent_dist(n: u64) -> Result<DegreeDistribution> {
    if n < 3 {
        return Err(HarosError::OutOfRange(format!("n = {n} below 3")));
    }
    let x = Rational::new(fibonacci(n - 1), fibonacci(n))?;
    let path = crate::farey::rational_to_path(&x)?;
    Ok(build_profile(path.symbols().iter().copied()).distribution())
}
