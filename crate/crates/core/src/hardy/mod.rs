//! Discrete Hardy-space machinery on a uniform grid of the unit circle.

mod arcs;
mod factor;
mod grid;
mod inner;
mod outer;
mod radial;

pub use arcs::{
    arc_energies, build_circle_weight, check_log_integrable, log_comparison_bound, ArcEnergies, ArcLayout, ShellPolicy,
    CircleWeight, LogIntegrability, Region, R_FLOOR,
};
pub use factor::{hardy_factor, HardyFactorization, HardyOptions, ANALYTIC_TOL};
pub use grid::{analytic_project, eval_taylor, theta, GridFunction, Spectrum};
pub use inner::{blaschke_factor, inner_check, project_onto_bh2, InnerReport, Projection};
pub use outer::{log_modulus, outer_from_modulus, OuterFunction, OuterOptions};
pub use radial::{radial_decay_check, RadialReport};
