//! Invariant checks and regularity probes for completed runs.
//!
//! The oscillation probe measures `max - min` of the cell density over
//! space-time cylinders `B_rho(x0) x (t0 - tau, t0]` and fits a power law
//! `osc ~ r^alpha` across nested cylinders, the measurable counterpart of
//! Hoelder continuity. Cylinder membership uses cell centers and snapshot
//! times; first-order data gets first-order geometry.

use crate::mesh::Mesh;
use crate::scheme::State;
use crate::simulator::{InitialData, RunSummary};
use crate::Error;

/// Result of one named invariant check.
#[derive(Clone, Debug)]
pub struct InvariantCheck {
    pub name: String,
    pub passed: bool,
    /// The offending value for failed checks, the extremal value otherwise.
    pub worst_value: f64,
    /// Cell index of the witness, when one exists.
    pub cell: Option<usize>,
    /// Step index of the witness, when one exists.
    pub step: Option<usize>,
}

/// Collection of invariant checks with a shared pass/fail verdict.
#[derive(Clone, Debug, Default)]
pub struct InvariantReport {
    pub checks: Vec<InvariantCheck>,
}

impl InvariantReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn push(&mut self, check: InvariantCheck) {
        self.checks.push(check);
    }
}

impl std::fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            let verdict = if c.passed { "pass" } else { "FAIL" };
            write!(
                f,
                "{verdict}  {name}  worst = {v:.6e}",
                name = c.name,
                v = c.worst_value
            )?;
            if let Some(cell) = c.cell {
                write!(f, "  cell = {cell}")?;
            }
            if let Some(step) = c.step {
                write!(f, "  step = {step}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Checks `lo - tol <= value <= hi + tol` for every entry of a field.
/// Pass `f64::INFINITY` as `hi` for one-sided checks.
pub fn check_bounds(name: &str, values: &[f64], lo: f64, hi: f64, tol: f64) -> InvariantCheck {
    let mut worst_value = f64::NAN;
    let mut worst_excess = f64::NEG_INFINITY;
    for (k, &x) in values.iter().enumerate() {
        let excess = (lo - tol - x).max(x - (hi + tol));
        if excess > worst_excess || worst_value.is_nan() {
            worst_excess = excess;
            worst_value = x;
            if excess > 0.0 {
                return InvariantCheck {
                    name: name.to_string(),
                    passed: false,
                    worst_value: x,
                    cell: Some(k),
                    step: None,
                };
            }
        }
    }
    InvariantCheck {
        name: name.to_string(),
        passed: true,
        worst_value,
        cell: None,
        step: None,
    }
}

/// Checks the discrete maximum principle over a whole run: u within
/// `[lo_u, hi_u]` and v nonnegative at every recorded step, to tolerance.
pub fn check_run_bounds(summary: &RunSummary, tol: f64) -> InvariantReport {
    let mut report = InvariantReport::default();
    let mut series = |name: &str, values: &[f64], lo: f64, hi: f64| {
        let mut check = check_bounds(name, values, lo, hi, tol);
        // For series data the witness index is a step, not a cell.
        check.step = check.cell.take();
        report.push(check);
    };
    series("min_u >= 0", &summary.min_u, 0.0, f64::INFINITY);
    series("max_u <= 1", &summary.max_u, f64::NEG_INFINITY, 1.0);
    series("min_v >= 0", &summary.min_v, 0.0, f64::INFINITY);
    report
}

/// Total mass `sum_K |K| u_K`, accumulated in cell order.
pub fn total_mass(field: &[f64], mesh: &Mesh) -> f64 {
    field.iter().map(|&u| u * mesh.cell_measure).sum()
}

/// L2 distance between a verification-run state and the closed-form Neumann
/// cosine solution of the heat equation it discretizes.
///
/// The exact solution for `u0 = mean + amp cos(pi X/Lx) cos(pi Y/Ly)` is the
/// same profile damped by `exp(-pi^2 (1/Lx^2 + 1/Ly^2) t)`.
pub fn heat_reference_error(
    state: &State,
    mesh: &Mesh,
    initial_u: &InitialData,
) -> Result<f64, Error> {
    let (mean, amplitude) = match initial_u {
        InitialData::NeumannCosine { mean, amplitude } => (*mean, *amplitude),
        other => {
            return Err(Error::Usage(format!(
                "heat_reference_error expects the Neumann cosine profile, got {other:?}"
            )))
        }
    };
    let pi = std::f64::consts::PI;
    let lx = mesh.x_max - mesh.x_min;
    let ly = mesh.y_max - mesh.y_min;
    let rate = pi * pi * (1.0 / (lx * lx) + 1.0 / (ly * ly));
    let damp = (-rate * state.t).exp();

    let mut acc = 0.0;
    for (k, &u) in state.u.iter().enumerate() {
        let (x, y) = mesh.cell_center(k);
        let exact = mean
            + amplitude
                * damp
                * (pi * (x - mesh.x_min) / lx).cos()
                * (pi * (y - mesh.y_min) / ly).cos();
        let diff = u - exact;
        acc += mesh.cell_measure * diff * diff;
    }
    Ok(acc.sqrt())
}

/// Oscillation envelopes for the diffusion coefficient near its degeneracies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Envelope {
    /// phi(s) = s^(beta1/(p-1)), psi(s) = s^(beta2/(p-1)) with beta2 > beta1 > 0.
    PowerLaw { beta1: f64, beta2: f64 },
    /// phi = psi = 1 (non-degenerate coefficient).
    Trivial,
}

/// Parameters of the rescaled cylinder `Q(a0 R^p, R)` adapted to the
/// equation's degeneracies.
#[derive(Clone, Copy, Debug)]
pub struct IntrinsicGeometry {
    pub p: f64,
    pub m: u32,
    pub envelope: Envelope,
    /// Essential oscillation the cylinder is scaled by.
    pub omega: f64,
    /// Height factor of the outer cylinder.
    pub a0: f64,
    /// Height factor of the inner subcylinders.
    pub d_cyl: f64,
    /// Whether phi(omega/2^m) <= psi(omega/4), the condition for the
    /// subcylinders to fit inside the outer cylinder.
    pub containment_ok: bool,
}

/// Computes the intrinsic cylinder height factors
///
/// ```text
/// a0    = (omega/2)^(2-p) / phi(omega/2^m)^(p-1)
/// d_cyl = (omega/2)^(2-p) / psi(omega/4)^(p-1)
/// ```
///
/// For p = 2 with trivial envelopes both reduce to 1: the standard parabolic
/// cylinders.
pub fn intrinsic_cylinder_params(
    omega: f64,
    p: f64,
    m: u32,
    envelope: Envelope,
) -> Result<IntrinsicGeometry, Error> {
    if !(omega > 0.0 && omega <= 1.0) {
        return Err(Error::Parameter(format!(
            "omega must lie in (0, 1], got {omega}"
        )));
    }
    if !(p >= 2.0) {
        return Err(Error::Parameter(format!("p must satisfy p >= 2, got {p}")));
    }
    if m < 1 {
        return Err(Error::Parameter("m must be at least 1".into()));
    }
    let (phi_at, psi_at) = match envelope {
        Envelope::PowerLaw { beta1, beta2 } => {
            if !(beta1 > 0.0 && beta2 > beta1) {
                return Err(Error::Parameter(format!(
                    "power-law envelopes need beta2 > beta1 > 0, got beta1 = {beta1}, beta2 = {beta2}"
                )));
            }
            let phi = |s: f64| s.powf(beta1 / (p - 1.0));
            let psi = |s: f64| s.powf(beta2 / (p - 1.0));
            (phi(omega / 2f64.powi(m as i32)), psi(omega / 4.0))
        }
        Envelope::Trivial => (1.0, 1.0),
    };

    let scale = if p == 2.0 {
        1.0
    } else {
        (omega / 2.0).powf(2.0 - p)
    };
    let a0 = scale / phi_at.powf(p - 1.0);
    let d_cyl = scale / psi_at.powf(p - 1.0);
    Ok(IntrinsicGeometry {
        p,
        m,
        envelope,
        omega,
        a0,
        d_cyl,
        containment_ok: phi_at <= psi_at,
    })
}

/// Oscillation (max - min) of a cell field over the space-time cylinder
/// `B_radius(center) x (t0 - height, t0]`.
///
/// `frames` pairs each snapshot time with its cell values; `cell_centers`
/// gives the spatial location of each value.
pub fn oscillation(
    cell_centers: &[(f64, f64)],
    frames: &[(f64, &[f64])],
    center: (f64, f64),
    t0: f64,
    radius: f64,
    height: f64,
) -> Result<f64, Error> {
    if !(radius > 0.0) || !(height > 0.0) {
        return Err(Error::Geometry(format!(
            "cylinder needs positive radius and height, got rho = {radius}, tau = {height}"
        )));
    }
    let r2 = radius * radius;
    let in_ball: Vec<usize> = cell_centers
        .iter()
        .enumerate()
        .filter(|(_, &(x, y))| {
            let dx = x - center.0;
            let dy = y - center.1;
            dx * dx + dy * dy <= r2
        })
        .map(|(k, _)| k)
        .collect();
    if in_ball.is_empty() {
        return Err(Error::Geometry(format!(
            "no cell centers inside the ball of radius {radius} at {center:?}"
        )));
    }

    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut hit_any_frame = false;
    for &(t, values) in frames {
        if t <= t0 - height || t > t0 {
            continue;
        }
        hit_any_frame = true;
        for &k in &in_ball {
            lo = lo.min(values[k]);
            hi = hi.max(values[k]);
        }
    }
    if !hit_any_frame {
        return Err(Error::Geometry(format!(
            "no snapshots inside the time window ({}, {t0}]",
            t0 - height
        )));
    }
    Ok(hi - lo)
}

/// Least-squares power-law fit of oscillation against radius.
#[derive(Clone, Copy, Debug)]
pub struct HolderFit {
    /// Fitted exponent: slope of log(osc) against log(radius).
    pub alpha: f64,
    /// Root-mean-square residual of the fit in log space.
    pub residual: f64,
}

/// Fits `osc = C * r^alpha` through `(radius, oscillation)` pairs.
pub fn holder_fit(pairs: &[(f64, f64)]) -> Result<HolderFit, Error> {
    if pairs.len() < 3 {
        return Err(Error::Parameter(format!(
            "need at least 3 (radius, oscillation) pairs, got {}",
            pairs.len()
        )));
    }
    if pairs.iter().any(|&(r, w)| !(r > 0.0) || !(w > 0.0)) {
        return Err(Error::Parameter(
            "radii and oscillations must be positive".into(),
        ));
    }

    let n = pairs.len() as f64;
    let logs: Vec<(f64, f64)> = pairs.iter().map(|&(r, w)| (r.ln(), w.ln())).collect();
    let mean_x = logs.iter().map(|&(x, _)| x).sum::<f64>() / n;
    let mean_y = logs.iter().map(|&(_, y)| y).sum::<f64>() / n;
    let var: f64 = logs.iter().map(|&(x, _)| (x - mean_x) * (x - mean_x)).sum();
    if var == 0.0 {
        return Err(Error::Parameter("radii must not all coincide".into()));
    }
    let cov: f64 = logs.iter().map(|&(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let alpha = cov / var;
    let intercept = mean_y - alpha * mean_x;
    let ss: f64 = logs
        .iter()
        .map(|&(x, y)| {
            let e = y - (intercept + alpha * x);
            e * e
        })
        .sum();
    Ok(HolderFit {
        alpha,
        residual: (ss / n).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::build_regular_mesh;
    use crate::simulator::{self, preset, InitialData, Preset};

    #[test]
    fn check_bounds_passes_and_fails() {
        let ok = check_bounds("u", &[0.5; 16], 0.0, 1.0, 0.0);
        assert!(ok.passed);

        let mut values = vec![0.5; 16];
        values[7] = 1.0 + 1e-9;
        let bad = check_bounds("u", &values, 0.0, 1.0, 1e-12);
        assert!(!bad.passed);
        assert_eq!(bad.cell, Some(7), "failed check must carry a witness");
        assert_eq!(bad.worst_value, 1.0 + 1e-9);

        let one_sided = check_bounds("v", &[3.0, 0.0, 7.5], 0.0, f64::INFINITY, 0.0);
        assert!(one_sided.passed);
    }

    #[test]
    fn total_mass_values() {
        let mesh = build_regular_mesh(-1.0, 1.0, -1.0, 1.0, 32, 32).unwrap();
        let ones = vec![1.0; mesh.n_cells()];
        assert!((total_mass(&ones, &mesh) - 4.0).abs() < 1e-12);
        let zeros = vec![0.0; mesh.n_cells()];
        assert_eq!(total_mass(&zeros, &mesh), 0.0);
    }

    #[test]
    fn initial_disk_mass_matches_area() {
        // Disk of radius 0.2: area pi * 0.04 ~ 0.12566.
        let cfg = preset(Preset::Example1);
        let mesh = build_regular_mesh(-1.0, 1.0, -1.0, 1.0, 256, 256).unwrap();
        let u0 = simulator::discretize_initial(&mesh, &cfg.initial_u, 8).unwrap();
        let mass = total_mass(&u0, &mesh);
        let disk_area = std::f64::consts::PI * 0.04;
        assert!(
            (mass - disk_area).abs() <= 0.005,
            "mass = {mass}, disk area = {disk_area}"
        );
    }

    #[test]
    fn heat_error_at_t0_is_second_order_small() {
        let initial = InitialData::NeumannCosine {
            mean: 0.5,
            amplitude: 0.25,
        };
        let mut errors = Vec::new();
        for n in [32usize, 64] {
            let mesh = build_regular_mesh(-1.0, 1.0, -1.0, 1.0, n, n).unwrap();
            let u = simulator::discretize_initial(&mesh, &initial, 8).unwrap();
            let state = crate::scheme::State::new(u, vec![0.0; mesh.n_cells()], 0.0);
            errors.push(heat_reference_error(&state, &mesh, &initial).unwrap());
        }
        // Cell-average vs point-value discrepancy shrinks ~4x per refinement.
        let order = (errors[0] / errors[1]).log2();
        assert!(order > 1.8, "observed order {order} from errors {errors:?}");
        assert!(errors[1] < 1e-3);
    }

    #[test]
    fn heat_error_rejects_wrong_profile() {
        let mesh = build_regular_mesh(-1.0, 1.0, -1.0, 1.0, 4, 4).unwrap();
        let state = crate::scheme::State::new(vec![0.0; 16], vec![0.0; 16], 0.0);
        let err = heat_reference_error(&state, &mesh, &InitialData::Constant(0.5));
        assert!(matches!(err, Err(crate::Error::Usage(_))));
    }

    #[test]
    fn intrinsic_params_standard_parabolic_case() {
        let geo = intrinsic_cylinder_params(0.37, 2.0, 3, Envelope::Trivial).unwrap();
        assert_eq!(geo.a0, 1.0, "p = 2 with trivial envelopes is unscaled");
        assert_eq!(geo.d_cyl, 1.0);
        assert!(geo.containment_ok);
    }

    #[test]
    fn intrinsic_params_hand_value() {
        // p = 3, beta1 = 2 => phi(s) = s; omega = 0.5, m = 2:
        // a0 = (0.25)^(-1) / (0.125)^2 = 4 / 0.015625 = 256.
        let geo = intrinsic_cylinder_params(
            0.5,
            3.0,
            2,
            Envelope::PowerLaw {
                beta1: 2.0,
                beta2: 2.0 + 1e-9,
            },
        )
        .unwrap();
        assert!((geo.a0 - 256.0).abs() < 1e-6, "a0 = {}", geo.a0);
    }

    #[test]
    fn intrinsic_a0_grows_as_oscillation_shrinks() {
        let envelope = Envelope::PowerLaw {
            beta1: 1.0,
            beta2: 1.5,
        };
        let mut prev = 0.0;
        for &omega in &[1.0, 0.5, 0.25, 0.125, 0.0625] {
            let geo = intrinsic_cylinder_params(omega, 3.0, 2, envelope).unwrap();
            assert!(geo.a0 > prev, "a0 must grow as omega decreases");
            prev = geo.a0;
        }
    }

    #[test]
    fn intrinsic_p2_reduction_drops_the_omega_prefactor() {
        // For p = 2 the (omega/2)^(2-p) factor is exactly 1, so
        // a0 = 1/phi(omega/2^m) and d_cyl = 1/psi(omega/4).
        let envelope = Envelope::PowerLaw {
            beta1: 1.0,
            beta2: 2.0,
        };
        let omega = 0.3;
        let m = 2;
        let geo = intrinsic_cylinder_params(omega, 2.0, m, envelope).unwrap();
        let phi = (omega / 4.0).powf(1.0);
        let psi = (omega / 4.0).powf(2.0);
        assert!((geo.a0 - 1.0 / phi).abs() < 1e-14);
        assert!((geo.d_cyl - 1.0 / psi).abs() < 1e-14);
    }

    #[test]
    fn intrinsic_params_validation() {
        assert!(intrinsic_cylinder_params(0.0, 2.0, 1, Envelope::Trivial).is_err());
        assert!(intrinsic_cylinder_params(0.5, 1.5, 1, Envelope::Trivial).is_err());
        assert!(intrinsic_cylinder_params(0.5, 2.0, 0, Envelope::Trivial).is_err());
        assert!(intrinsic_cylinder_params(
            0.5,
            3.0,
            1,
            Envelope::PowerLaw {
                beta1: 2.0,
                beta2: 2.0
            }
        )
        .is_err());
    }

    fn grid_centers(n: usize) -> (Vec<(f64, f64)>, crate::mesh::Mesh) {
        let mesh = build_regular_mesh(-1.0, 1.0, -1.0, 1.0, n, n).unwrap();
        let centers = (0..mesh.n_cells()).map(|k| mesh.cell_center(k)).collect();
        (centers, mesh)
    }

    #[test]
    fn oscillation_of_constant_field_is_zero() {
        let (centers, mesh) = grid_centers(16);
        let field = vec![0.7; mesh.n_cells()];
        let frames = [(1.0, field.as_slice())];
        let w = oscillation(&centers, &frames, (0.0, 0.0), 1.0, 0.3, 0.5).unwrap();
        assert_eq!(w, 0.0);
    }

    #[test]
    fn oscillation_of_linear_field_matches_diameter() {
        let (centers, mesh) = grid_centers(64);
        let field: Vec<f64> = centers.iter().map(|&(x, _)| x).collect();
        let frames = [(1.0, field.as_slice())];
        let rho = 0.4;
        let w = oscillation(&centers, &frames, (0.0, 0.0), 1.0, rho, 0.5).unwrap();
        assert!(
            (w - 2.0 * rho).abs() <= mesh.hx,
            "osc = {w}, expect ~{}",
            2.0 * rho
        );
    }

    #[test]
    fn oscillation_shrinks_with_radius_and_respects_shifts() {
        let (centers, mesh) = grid_centers(64);
        let field: Vec<f64> = centers
            .iter()
            .map(|&(x, y)| (x * 2.1).sin() + 0.3 * y)
            .collect();
        let frames = [(1.0, field.as_slice())];
        let mut prev = f64::INFINITY;
        for &rho in &[0.8, 0.4, 0.2, 0.1] {
            let w = oscillation(&centers, &frames, (0.1, -0.2), 1.0, rho, 0.5).unwrap();
            assert!(w <= prev, "oscillation must be monotone in the radius");
            prev = w;
        }

        let shifted: Vec<f64> = field.iter().map(|x| x + 5.0).collect();
        let scaled: Vec<f64> = field.iter().map(|x| x * 3.0).collect();
        let w0 = oscillation(&centers, &frames, (0.0, 0.0), 1.0, 0.3, 0.5).unwrap();
        let frames_shift = [(1.0, shifted.as_slice())];
        let w1 = oscillation(&centers, &frames_shift, (0.0, 0.0), 1.0, 0.3, 0.5).unwrap();
        assert!((w0 - w1).abs() < 1e-12, "shift invariance");
        let frames_scaled = [(1.0, scaled.as_slice())];
        let w2 = oscillation(&centers, &frames_scaled, (0.0, 0.0), 1.0, 0.3, 0.5).unwrap();
        assert!((w2 - 3.0 * w0).abs() < 1e-12, "linear scaling");
        let _ = mesh;
    }

    #[test]
    fn oscillation_rejects_empty_cylinders() {
        let (centers, mesh) = grid_centers(8);
        let field = vec![0.0; mesh.n_cells()];
        let frames = [(1.0, field.as_slice())];
        // Ball outside the domain.
        assert!(oscillation(&centers, &frames, (50.0, 0.0), 1.0, 0.1, 0.5).is_err());
        // Time window before the only frame.
        assert!(oscillation(&centers, &frames, (0.0, 0.0), 0.5, 0.1, 0.2).is_err());
    }

    #[test]
    fn holder_fit_recovers_exact_power_laws() {
        let radii: [f64; 5] = [0.05, 0.1, 0.2, 0.4, 0.8];
        let half: Vec<(f64, f64)> = radii.iter().map(|&r| (r, r.sqrt())).collect();
        let fit = holder_fit(&half).unwrap();
        assert!((fit.alpha - 0.5).abs() < 1e-12, "alpha = {}", fit.alpha);
        assert!(fit.residual < 1e-12);

        let linear: Vec<(f64, f64)> = radii.iter().map(|&r| (r, 3.7 * r)).collect();
        let fit = holder_fit(&linear).unwrap();
        assert!((fit.alpha - 1.0).abs() < 1e-12);
    }

    #[test]
    fn holder_fit_validates_input() {
        assert!(holder_fit(&[(0.1, 0.2), (0.2, 0.3)]).is_err());
        assert!(holder_fit(&[(0.1, 0.2), (0.2, 0.0), (0.4, 0.3)]).is_err());
        assert!(holder_fit(&[(0.1, 0.2), (0.1, 0.2), (0.1, 0.3)]).is_err());
    }
}
