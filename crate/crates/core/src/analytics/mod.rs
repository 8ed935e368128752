//! Closed forms, entropy functionals and number-family formulas.

pub mod boxcount;
pub mod closed_form;
pub mod entropy;
pub mod families;
pub mod means;

pub use boxcount::box_counting_dimension;
pub use closed_form::{
    closed_form_p, closed_form_row, conjecture_cell, hole_predicate, new_degree_rule, scaling_map, verify_scaling, IntervalIndex,
    PiecewiseLinearCell,
};
pub use entropy::{
    derham_check, entropy_curve, entropy_s, reduced_h, reduced_h_exact, scan_extrema, EntropySample, Extrema, Window,
};
pub use families::{
    convergent_profile, family_slope, fibonacci_convergent_dist, golden_inverse, theoretical_dist, DistFamily,
    SlopeFamily,
};
pub use means::{cf_geometric_mean, geometric_mean_degree, khinchin_constant, mean_degree, thomae};
