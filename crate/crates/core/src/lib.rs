//! Exact arithmetic on Haros graphs: Farey-tree construction, degree
//! distributions, entropy and the checks that tie them together.

pub mod analytics;
pub mod cf;
pub mod error;
pub mod farey;
pub mod graph;
pub mod oracle;
pub mod rational;
pub mod sweep;

pub use cf::{CfSpec, ContinuedFraction};
pub use error::{HarosError, Result};
pub use farey::{FareyPath, Symbol};
pub use graph::{build, build_profile, build_rational, DegreeDistribution, DegreeProfile, HarosGraph};
pub use rational::Rational;
