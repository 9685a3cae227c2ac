//! Finite-difference calculus on functions of the domain: Wirtinger
//! derivatives, the operators `D`, `D̄`, `Δ`, the map `F ↦ θ_F` and the
//! weight-one `SL₂` action.

mod diff;
mod handle;
mod sl2;

pub use diff::{
    apply_d, apply_dbar, apply_delta, partial, partial2, second, theta_map, u_holomorphy_defect, wirtinger, Coord,
    DiffConfig, Scheme, Second, Var,
};
pub use handle::{CustomFn, Family, FunctionHandle, Operator, PlaneWave, HANDLE_HALFWIDTH};
pub use sl2::{s_action_via_degree, sl2_act, slash_point, Sl2};

#[cfg(test)]
mod tests;
