//! Finite-volume simulation of a chemotaxis system with volume filling,
//! degenerate nonlinear diffusion of p-Laplacian type, and a linear
//! reaction-diffusion equation for the chemoattractant.
//!
//! The cell density `u` and the chemoattractant concentration `v` evolve as
//!
//! ```text
//! du/dt = div(|grad A(u)|^(p-2) grad A(u)) - div(chi u f(u) grad v)
//! dv/dt = d Lap(v) + g(u, v)
//! ```
//!
//! with zero-flux boundaries, `A(u)` the integrated diffusion coefficient,
//! and `f` the volume-filling factor that switches off chemotactic transport
//! at the maximal density `u = 1`.
//!
//! Module map:
//! - [`mesh`]: regular rectangular cell complexes with edge transmissibilities
//! - [`coefficients`]: the model functions a, A, f, g and their parameters
//! - [`scheme`]: explicit-Euler finite-volume update and its stability bound
//! - [`simulator`]: run orchestration, initial data, presets
//! - [`diagnostics`]: invariant checks, reference solutions, oscillation probe
//! - [`io`]: config parsing and snapshot/summary serialization

// Parameter guards use `!(x > 0.0)` so NaN fails validation too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coefficients;
pub mod diagnostics;
pub mod io;
pub mod mesh;
pub mod scheme;
pub mod simulator;

pub use coefficients::{CoefficientKind, CoefficientSet};
pub use mesh::Mesh;
pub use scheme::State;
pub use simulator::{InitialData, Preset, RunOutput, RunSummary, SimConfig, Snapshot};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Invalid configuration (bad bounds, unknown key, parameter out of range).
    #[error("configuration error: {0}")]
    Config(String),

    /// Invalid geometry input (non-positive lengths, empty cylinder).
    #[error("geometry error: {0}")]
    Geometry(String),

    /// Invalid parameter for a diagnostic computation.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// An operation was applied to data it does not fit.
    #[error("usage error: {0}")]
    Usage(String),

    /// The time stepper could not find an admissible step.
    #[error(
        "solver abort at t = {time}: {rejections} consecutive step rejections \
         (last dt = {last_dt:.3e}, worst {field} = {worst_value:.6e} in cell {cell})"
    )]
    SolverAbort {
        time: f64,
        last_dt: f64,
        rejections: u32,
        field: &'static str,
        worst_value: f64,
        cell: usize,
        /// State at the moment of the abort, for post-mortem dumps.
        state: Box<State>,
    },
}

impl Error {
    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SolverAbort { .. } => 2,
            _ => 1,
        }
    }
}
