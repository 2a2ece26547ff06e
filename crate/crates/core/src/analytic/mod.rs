//! Closed-form outage probabilities and derived performance metrics.

mod dynamic;
mod improved;
mod metrics;

pub use self::dynamic::{
    case4_geometry, dynamic_ps_breakdown, outage_dynamic_ps, p_case1, p_case2, p_case3, p_case4,
    CaseFourGeometry, DynamicBreakdown, Scenario,
};
pub use self::improved::{
    cdf_t2, cdf_t3, chi, chi_prime, outage_improved, outage_improved_with, t3_cdf, t_max,
    T2Distribution,
};
pub use self::metrics::{
    analytic_outage, diversity_slope, energy_outage, outage_capacity, slope_from_points,
};
