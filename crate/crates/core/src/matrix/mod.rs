//! `SL₂(O_K)` matrices approximating a target point from the orbit of `z`.

mod gamma;
mod mat2;
mod orbit;
mod select;
mod targets;

pub use gamma::{
    build_gamma, choose_ell, gamma_irrational, gamma_origin, gamma_rational,
    height_lower_bound_holds, residual, rho, GammaResult, Residual, TargetClass,
};
pub use mat2::{Mat2, Point2};
pub(crate) use orbit::{expand_slope, flip};
pub use orbit::{run_orbit, OrbitRun, OrbitSpec, TargetInput, DEFAULT_OMEGA};
pub use select::select_indices;
pub use targets::{
    convergent_matrix, normalize_slope, slope_abs, slope_at_most_one, target_matrix_irrational,
    target_matrix_rational,
};
