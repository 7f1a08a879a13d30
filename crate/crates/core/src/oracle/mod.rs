//! Independent numerical ground truth for the closed forms and the diagram
//! construction: adaptive quadrature, brute-force grid labelings, finite
//! differences and randomized metric-axiom trials.

pub mod calculus;
pub mod grid;
pub mod metric;
pub mod quadrature;

pub use calculus::{finite_difference_check, hessian_asymmetry, numeric_hessian, CalculusTarget};
pub use grid::{brute_force_labels, brute_force_labels_with, GridLabeling, GridSpec};
pub use metric::{random_param, triangle_inequality_trials, MetricTag, TriangleReport};
pub use quadrature::{
    check_location_scale_reduction, integrate_chernoff, integrate_f_divergence,
    integrate_flat_divergence, FGenerator, QuadratureResult, Tolerance,
};
