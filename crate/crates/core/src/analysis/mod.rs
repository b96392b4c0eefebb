//! Grain-boundary detection, dipole geometry, distance and area series, and
//! the closed-form predictions they are checked against.

pub mod boundaries;
pub mod predictions;
pub mod series;

pub use boundaries::{
    detect_grain_boundaries, dipole_angles, equatorial_defects, grain_widths, verify_inflation,
    BoundaryStatus, DipoleAngles, GrainBoundary, InflationCheck, CORE_SITES,
};
pub use predictions::{
    boundary_perimeter_prediction, boundary_polar_angle, boundary_radius, dipole_angle_prediction,
    grain_bounds_estimate, hyperbolic_width_limit, plane_distance_minimum, plane_grain_bounds_estimate,
    radius_ratio_prediction, sphere_thresholds, PredictionError, MAX_DISTANCE_LIMIT, MIN_DISTANCE_LIMIT,
};
pub use series::{
    analytic_distance, area_series, averaged_distance, distance_series, full_series, DistanceRecord,
    SeriesError, SeriesReport, SeriesSummary, SiteRecord,
};
