//! Empirical exponents, brute-force oracles and the closed-form predictions.

mod bounds;
mod dirichlet;
pub mod estimate;
mod floor;
mod inhom;
mod omega;
mod records;

pub use bounds::{
    exact_ratio, predicted_bounds, BoundFlags, IrrationalBounds, OriginBounds, PredictedBounds,
    RationalBounds,
};
pub use dirichlet::{
    dirichlet_profile, dirichlet_rescan_shuffled, dirichlet_search, lattice_ball, DirichletHit,
    DirichletProfile,
};
pub use estimate::{
    estimate_mu, estimate_mu_hat, geometric_grid, ExponentReport, MuEstimate, MuHatEstimate, TRow,
};
pub use floor::{
    enumerate_sl2, planted_violation, residual_floor_check, small_elements, FloorReport, FloorRow,
    FloorSpec,
    DEFAULT_BUDGET,
};
pub use inhom::{inhomogeneous_pair, InhomHit};
pub use omega::{omega_k_estimate, OmegaEstimate};
pub use records::OrbitRecord;
