//! Shared setup helpers for the solver benchmarks.

use chemotax_core::simulator::{discretize_initial, preset, Preset, SimConfig};
use chemotax_core::{Mesh, State};

/// Example 1 configuration at the given resolution and exponent.
pub fn example1_config(n: usize, p: f64) -> SimConfig {
    preset(Preset::Example1).with_resolution(n).with_p(p)
}

/// Mesh and discretized initial state for a config.
pub fn initial_state(config: &SimConfig) -> (Mesh, State) {
    let mesh = config.build_mesh().expect("valid benchmark mesh");
    let u = discretize_initial(&mesh, &config.initial_u, config.quadrature_subsamples)
        .expect("valid initial u");
    let v = discretize_initial(&mesh, &config.initial_v, config.quadrature_subsamples)
        .expect("valid initial v");
    (mesh, State::new(u, v, 0.0))
}
