//! Explicit-Euler finite-volume update.
//!
//! Per step, every interior edge `sigma = K|L` carries two fluxes oriented
//! `K -> L`:
//!
//! - diffusive: `tau * |A_L - A_K|^(p-2) (A_L - A_K)`, added to K and
//!   subtracted from L (mass flows from high A to low A);
//! - chemotactic: `chi * tau * [(v_L - v_K)^+ u_K f(u_L) - (v_L - v_K)^- u_L f(u_K)]`,
//!   subtracted from K and added to L, so mass drifts toward the higher
//!   chemoattractant value; the transported density is upwinded (donor cell)
//!   while the volume-filling factor acts on the receiving cell.
//!
//! Boundary edges carry zero flux. Fluxes are written to per-edge arrays and
//! accumulated in canonical edge order, so results do not depend on how the
//! assembly is scheduled.

use crate::coefficients::CoefficientSet;
use crate::mesh::{InteriorEdge, Mesh};

/// Cell fields at one time level.
#[derive(Clone, Debug, PartialEq)]
pub struct State {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub t: f64,
}

impl State {
    pub fn new(u: Vec<f64>, v: Vec<f64>, t: f64) -> Self {
        assert_eq!(u.len(), v.len(), "u and v must have one value per cell");
        Self { u, v, t }
    }

    pub fn n_cells(&self) -> usize {
        self.u.len()
    }
}

/// Per-edge fluxes for the u-equation, oriented along the canonical edge order.
#[derive(Clone, Debug)]
pub struct EdgeFluxes {
    pub diffusive: Vec<f64>,
    pub chemotactic: Vec<f64>,
}

/// A step that left the admissible range; the driver retries with smaller dt.
#[derive(Clone, Copy, Debug)]
pub struct StabilityViolation {
    pub field: &'static str,
    pub cell: usize,
    pub value: f64,
}

/// Tolerance on the admissible range check after a step. Matches the
/// tolerance of the discrete maximum principle, so the rejection loop
/// enforces that invariant for every accepted step.
pub const STEP_RANGE_TOL: f64 = 1e-12;

/// p-Laplacian flux function |g|^(p-2) * g; odd and nondecreasing.
pub fn p_flux(gradient: f64, p: f64) -> f64 {
    if p == 2.0 {
        gradient
    } else {
        gradient.abs().powf(p - 2.0) * gradient
    }
}

/// Diffusive flux through one interior edge, oriented k -> l.
pub fn diffusive_edge_flux(edge: &InteriorEdge, a_values: &[f64], p: f64) -> f64 {
    edge.transmissibility * p_flux(a_values[edge.l] - a_values[edge.k], p)
}

/// Upwinded chemotactic flux through one interior edge, oriented k -> l.
/// Positive values move mass from k toward l.
///
/// The density factor is taken from the donor cell (no outflow from an empty
/// cell) and the volume-filling factor from the receiving cell (no inflow
/// into a full cell). Together with the degenerate diffusion this keeps the
/// semi-discrete flow inside [0, 1].
pub fn chemotactic_edge_flux(
    edge: &InteriorEdge,
    u: &[f64],
    v: &[f64],
    set: &CoefficientSet,
) -> f64 {
    let dv = v[edge.l] - v[edge.k];
    let up = dv.max(0.0);
    let down = (-dv).max(0.0);
    let toward_l = u[edge.k].clamp(0.0, 1.0) * set.volume_filling(u[edge.l]);
    let toward_k = u[edge.l].clamp(0.0, 1.0) * set.volume_filling(u[edge.k]);
    set.chi * edge.transmissibility * (up * toward_l - down * toward_k)
}

/// Assembles both u-equation fluxes for every interior edge.
pub fn assemble_fluxes(state: &State, mesh: &Mesh, set: &CoefficientSet) -> EdgeFluxes {
    let a_values: Vec<f64> = state
        .u
        .iter()
        .map(|&u| set.integrated_diffusivity(u))
        .collect();
    let mut diffusive = Vec::with_capacity(mesh.interior_edges.len());
    let mut chemotactic = Vec::with_capacity(mesh.interior_edges.len());
    for edge in &mesh.interior_edges {
        diffusive.push(diffusive_edge_flux(edge, &a_values, set.p));
        chemotactic.push(chemotactic_edge_flux(edge, &state.u, &state.v, set));
    }
    EdgeFluxes {
        diffusive,
        chemotactic,
    }
}

fn apply_update(
    state: &State,
    mesh: &Mesh,
    set: &CoefficientSet,
    dt: f64,
    fluxes: &EdgeFluxes,
) -> Result<State, StabilityViolation> {
    let n = state.n_cells();
    let mut acc_diff = vec![0.0; n];
    let mut acc_chemo = vec![0.0; n];
    let mut acc_v = vec![0.0; n];

    for (idx, edge) in mesh.interior_edges.iter().enumerate() {
        let d = fluxes.diffusive[idx];
        let c = fluxes.chemotactic[idx];
        acc_diff[edge.k] += d;
        acc_diff[edge.l] -= d;
        acc_chemo[edge.k] += c;
        acc_chemo[edge.l] -= c;
        let vf = edge.transmissibility * (state.v[edge.l] - state.v[edge.k]);
        acc_v[edge.k] += vf;
        acc_v[edge.l] -= vf;
    }

    let scale = dt / mesh.cell_measure;
    let mut u_new = Vec::with_capacity(n);
    let mut v_new = Vec::with_capacity(n);
    let mut worst: Option<StabilityViolation> = None;
    let mut worst_excess = 0.0;

    for k in 0..n {
        let u = state.u[k] + scale * (acc_diff[k] - acc_chemo[k]);
        let v = state.v[k] + scale * set.d * acc_v[k] + dt * set.reaction(state.u[k], state.v[k]);

        let u_excess = (-STEP_RANGE_TOL - u).max(u - (1.0 + STEP_RANGE_TOL));
        if u_excess > worst_excess {
            worst_excess = u_excess;
            worst = Some(StabilityViolation {
                field: "u",
                cell: k,
                value: u,
            });
        }
        let v_excess = -STEP_RANGE_TOL - v;
        if v_excess > worst_excess {
            worst_excess = v_excess;
            worst = Some(StabilityViolation {
                field: "v",
                cell: k,
                value: v,
            });
        }

        u_new.push(u);
        v_new.push(v);
    }

    if let Some(violation) = worst {
        return Err(violation);
    }
    Ok(State {
        u: u_new,
        v: v_new,
        t: state.t + dt,
    })
}

/// One explicit-Euler step of size `dt`. Fails with a [`StabilityViolation`]
/// if the update leaves `u` outside `[-1e-10, 1 + 1e-10]` or makes `v`
/// negative beyond the same tolerance.
pub fn step(
    state: &State,
    mesh: &Mesh,
    set: &CoefficientSet,
    dt: f64,
) -> Result<State, StabilityViolation> {
    let fluxes = assemble_fluxes(state, mesh, set);
    apply_update(state, mesh, set, dt, &fluxes)
}

/// Dedicated p = 2 stepper: the diffusive flux is evaluated as
/// `tau * (A_L - A_K)` with no power function. Used to cross-check the
/// generic path.
pub fn step_linear(
    state: &State,
    mesh: &Mesh,
    set: &CoefficientSet,
    dt: f64,
) -> Result<State, StabilityViolation> {
    let a_values: Vec<f64> = state
        .u
        .iter()
        .map(|&u| set.integrated_diffusivity(u))
        .collect();
    let mut diffusive = Vec::with_capacity(mesh.interior_edges.len());
    let mut chemotactic = Vec::with_capacity(mesh.interior_edges.len());
    for edge in &mesh.interior_edges {
        diffusive.push(edge.transmissibility * (a_values[edge.l] - a_values[edge.k]));
        chemotactic.push(chemotactic_edge_flux(edge, &state.u, &state.v, set));
    }
    apply_update(
        state,
        mesh,
        set,
        dt,
        &EdgeFluxes {
            diffusive,
            chemotactic,
        },
    )
}

/// Heuristic stability bound for the explicit update, scaled by the safety
/// factor `theta` in (0, 1]. Combines:
///
/// 1. u-diffusion: |K| / sum_sigma tau * L_a^(p-1) * max(1, |dA|^(p-2))
///    with L_a = max a + eps_reg,
/// 2. u-drift: |K| / sum_sigma chi * tau * |dv| * L_uf with L_uf = 1,
/// 3. v-equation: min(|K| / (d * sum_sigma tau), 1/beta),
///
/// the first two harmonically, then the minimum with the third. The bound is
/// heuristic (the degenerate p-Laplacian has no sharp explicit constant); the
/// driver pairs it with a step-rejection loop.
pub fn stable_dt(state: &State, mesh: &Mesh, set: &CoefficientSet, theta: f64) -> f64 {
    assert!(
        theta > 0.0 && theta <= 1.0,
        "cfl safety factor must lie in (0, 1], got {theta}"
    );

    let n = state.n_cells();
    let p = set.p;
    let la_pow = set.max_diffusivity().powf(p - 1.0);
    let a_values: Vec<f64> = state
        .u
        .iter()
        .map(|&u| set.integrated_diffusivity(u))
        .collect();

    let mut diff_sum = vec![0.0; n];
    let mut drift_sum = vec![0.0; n];
    let mut tau_sum = vec![0.0; n];
    for edge in &mesh.interior_edges {
        let tau = edge.transmissibility;
        let grad_factor = if p == 2.0 {
            1.0
        } else {
            (a_values[edge.l] - a_values[edge.k])
                .abs()
                .powf(p - 2.0)
                .max(1.0)
        };
        let w_diff = tau * la_pow * grad_factor;
        diff_sum[edge.k] += w_diff;
        diff_sum[edge.l] += w_diff;

        let w_drift =
            set.chi * tau * (state.v[edge.l] - state.v[edge.k]).abs() * set.drift_lipschitz();
        drift_sum[edge.k] += w_drift;
        drift_sum[edge.l] += w_drift;

        tau_sum[edge.k] += tau;
        tau_sum[edge.l] += tau;
    }

    let cell = mesh.cell_measure;
    let min_bound = |sums: &[f64]| -> f64 {
        sums.iter()
            .filter(|&&s| s > 0.0)
            .map(|&s| cell / s)
            .fold(f64::INFINITY, f64::min)
    };

    let dt_diffusion = min_bound(&diff_sum);
    let dt_drift = min_bound(&drift_sum);
    let dt_u = 1.0 / (1.0 / dt_diffusion + 1.0 / dt_drift);

    let mut dt_v = min_bound(&tau_sum.iter().map(|&s| s * set.d).collect::<Vec<_>>());
    if set.beta > 0.0 {
        dt_v = dt_v.min(1.0 / set.beta);
    }

    theta * dt_u.min(dt_v)
}
