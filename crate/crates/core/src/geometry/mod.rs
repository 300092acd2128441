//! Tukey depth and δ-convex position, plus minimax affine fitting and the
//! probes built on it.

mod depth;
mod fit;
mod increment;
mod lemma22;
mod points;
mod simplex;

pub use depth::{brute_force_depth, depth_report, is_delta_convex, tukey_depth, DepthReport};
pub use fit::{chebyshev_fit, chebyshev_linear_fit, chebyshev_linear_fit_exact, LinearFit};
pub use increment::{
    cap_volume, density_increment_search, primitive_directions, IncrementOptions, IncrementReport,
    Region,
};
pub use lemma22::{
    cube_samples, lemma22_bound, lemma22_check, Lemma22Report, QuadraticOracle, DEFAULT_REFINE,
};
pub use points::PointSet;
pub use simplex::{solve_standard_form, LpOutcome, Scalar};
