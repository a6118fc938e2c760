//! Path-conservative central-upwind finite-volume solver for the augmented
//! Godunov-Powell ideal MHD and shallow-water MHD systems on uniform
//! Cartesian grids, with a locally divergence-free reconstruction.

pub mod diagnostics;
pub mod driver;
pub mod error;
pub mod grid;
pub mod ideal_mhd;
pub mod io;
pub mod limiter;
pub mod model;
pub mod problems;
pub mod scheme;
pub mod swmhd;
pub mod time_integration;

pub use error::{Result, SolverError};
pub use grid::{build_grid, Boundary, BoundarySpec, Grid, GridSpec, StateField};
pub use ideal_mhd::IdealMhd;
pub use model::{Axis, SystemKind, SystemModel};
pub use scheme::{semidiscrete_rhs, Scheme};
pub use swmhd::SwMhd;
