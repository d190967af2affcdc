//! Run orchestration: initial data, presets, and the adaptive time loop.

use std::path::PathBuf;

use crate::coefficients::{CoefficientKind, CoefficientSet};
use crate::mesh::{build_regular_mesh, Mesh};
use crate::scheme::{stable_dt, step, State};
use crate::{diagnostics, Error};

/// Maximum number of consecutive dt halvings before the run aborts.
pub const MAX_STEP_REJECTIONS: u32 = 20;

/// A disk used by piecewise-constant initial data.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Disk {
    pub center: (f64, f64),
    pub radius: f64,
}

impl Disk {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        let dx = x - self.center.0;
        let dy = y - self.center.1;
        dx * dx + dy * dy <= self.radius * self.radius
    }
}

/// Initial profile for one field.
#[derive(Clone, Debug, PartialEq)]
pub enum InitialData {
    Constant(f64),
    /// `inside` on the union of the disks, `outside` elsewhere.
    Disks {
        disks: Vec<Disk>,
        inside: f64,
        outside: f64,
    },
    /// `mean + amplitude * cos(pi (x - x_min)/Lx) * cos(pi (y - y_min)/Ly)`,
    /// compatible with zero-flux boundaries; used by verification runs.
    NeumannCosine {
        mean: f64,
        amplitude: f64,
    },
}

impl InitialData {
    fn eval(&self, x: f64, y: f64, mesh: &Mesh) -> f64 {
        match self {
            InitialData::Constant(c) => *c,
            InitialData::Disks {
                disks,
                inside,
                outside,
            } => {
                if disks.iter().any(|d| d.contains(x, y)) {
                    *inside
                } else {
                    *outside
                }
            }
            InitialData::NeumannCosine { mean, amplitude } => {
                let lx = mesh.x_max - mesh.x_min;
                let ly = mesh.y_max - mesh.y_min;
                mean + amplitude
                    * (std::f64::consts::PI * (x - mesh.x_min) / lx).cos()
                    * (std::f64::consts::PI * (y - mesh.y_min) / ly).cos()
            }
        }
    }

    fn range(&self) -> (f64, f64) {
        match self {
            InitialData::Constant(c) => (*c, *c),
            InitialData::Disks {
                inside, outside, ..
            } => (inside.min(*outside), inside.max(*outside)),
            InitialData::NeumannCosine { mean, amplitude } => {
                (mean - amplitude.abs(), mean + amplitude.abs())
            }
        }
    }
}

/// Named parameter sets from the model's reference experiments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Example1,
    Example2,
    HeatVerify,
}

impl Preset {
    pub fn parse(name: &str) -> Result<Self, Error> {
        match name {
            "example1" => Ok(Preset::Example1),
            "example2" => Ok(Preset::Example2),
            "heat_verify" | "heat-verify" => Ok(Preset::HeatVerify),
            other => Err(Error::Config(format!("unknown preset `{other}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Example1 => "example1",
            Preset::Example2 => "example2",
            Preset::HeatVerify => "heat_verify",
        }
    }
}

/// Full description of one simulation run.
#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
    pub coefficients: CoefficientSet,
    pub t_end: f64,
    /// Sorted times at which exact snapshots are recorded.
    pub snapshot_times: Vec<f64>,
    /// Safety factor applied to the stability bound.
    pub cfl_safety: f64,
    /// Optional hard cap on the step size.
    pub max_dt: Option<f64>,
    /// Subsamples per dimension for cell-average initial data.
    pub quadrature_subsamples: usize,
    pub initial_u: InitialData,
    pub initial_v: InitialData,
    pub output_dir: Option<PathBuf>,
    pub preset: Option<Preset>,
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.x_max > self.x_min) || !(self.y_max > self.y_min) {
            return Err(Error::Config("domain bounds are inverted or empty".into()));
        }
        if self.nx == 0 || self.ny == 0 {
            return Err(Error::Config("nx and ny must be positive".into()));
        }
        if !(self.t_end >= 0.0) {
            return Err(Error::Config(format!(
                "t_end must be >= 0, got {}",
                self.t_end
            )));
        }
        if !(self.cfl_safety > 0.0 && self.cfl_safety <= 1.0) {
            return Err(Error::Config(format!(
                "cfl_safety must lie in (0, 1], got {}",
                self.cfl_safety
            )));
        }
        if let Some(dt) = self.max_dt {
            if !(dt > 0.0) {
                return Err(Error::Config(format!("max_dt must be positive, got {dt}")));
            }
        }
        if self.quadrature_subsamples == 0 {
            return Err(Error::Config(
                "quadrature_subsamples must be positive".into(),
            ));
        }
        let mut prev = 0.0;
        for &s in &self.snapshot_times {
            if s < prev || s > self.t_end {
                return Err(Error::Config(format!(
                    "snapshot times must be sorted within [0, t_end], got {s}"
                )));
            }
            prev = s;
        }
        Ok(())
    }

    pub fn build_mesh(&self) -> Result<Mesh, Error> {
        build_regular_mesh(
            self.x_min, self.x_max, self.y_min, self.y_max, self.nx, self.ny,
        )
    }

    /// Override the per-dimension resolution.
    pub fn with_resolution(mut self, n: usize) -> Self {
        self.nx = n;
        self.ny = n;
        self
    }

    /// Override the p-Laplacian exponent.
    pub fn with_p(mut self, p: f64) -> Self {
        self.coefficients.p = p;
        self
    }
}

/// Returns the fully populated configuration for a named preset.
pub fn preset(id: Preset) -> SimConfig {
    match id {
        Preset::Example1 => SimConfig {
            x_min: -1.0,
            x_max: 1.0,
            y_min: -1.0,
            y_max: 1.0,
            nx: 256,
            ny: 256,
            coefficients: CoefficientSet {
                kind: CoefficientKind::VolumeFilling,
                p: 2.0,
                eps: 0.01,
                eps_reg: 0.0,
                chi: 0.2,
                d: 0.05,
                alpha: 40.0,
                beta: 160.0,
            },
            t_end: 1.0,
            snapshot_times: vec![1.0],
            cfl_safety: 0.9,
            max_dt: None,
            quadrature_subsamples: 8,
            initial_u: InitialData::Disks {
                disks: vec![Disk {
                    center: (0.0, 0.0),
                    radius: 0.2,
                }],
                inside: 1.0,
                outside: 0.0,
            },
            initial_v: InitialData::Constant(4.5),
            output_dir: None,
            preset: Some(Preset::Example1),
        },
        Preset::Example2 => SimConfig {
            x_min: -1.0,
            x_max: 1.0,
            y_min: -1.0,
            y_max: 1.0,
            nx: 256,
            ny: 256,
            coefficients: CoefficientSet {
                kind: CoefficientKind::VolumeFilling,
                p: 2.0,
                eps: 0.5,
                eps_reg: 0.0,
                chi: 1.0,
                d: 0.25,
                alpha: 5.0,
                beta: 0.5,
            },
            t_end: 2.5,
            snapshot_times: vec![0.1, 0.5, 2.5],
            cfl_safety: 0.9,
            max_dt: None,
            quadrature_subsamples: 8,
            initial_u: InitialData::Disks {
                disks: vec![
                    Disk {
                        center: (-0.25, 0.25),
                        radius: 0.2,
                    },
                    Disk {
                        center: (0.25, -0.25),
                        radius: 0.2,
                    },
                ],
                inside: 1.0,
                outside: 0.0,
            },
            initial_v: InitialData::Disks {
                disks: vec![
                    Disk {
                        center: (0.25, 0.25),
                        radius: 0.2,
                    },
                    Disk {
                        center: (-0.25, -0.25),
                        radius: 0.2,
                    },
                ],
                inside: 4.5,
                outside: 0.0,
            },
            output_dir: None,
            preset: Some(Preset::Example2),
        },
        Preset::HeatVerify => SimConfig {
            x_min: -1.0,
            x_max: 1.0,
            y_min: -1.0,
            y_max: 1.0,
            nx: 64,
            ny: 64,
            coefficients: CoefficientSet {
                kind: CoefficientKind::LinearVerification,
                p: 2.0,
                eps: 1.0,
                eps_reg: 0.0,
                chi: 0.0,
                d: 1.0,
                alpha: 0.0,
                beta: 0.0,
            },
            t_end: 0.1,
            snapshot_times: vec![0.1],
            cfl_safety: 0.9,
            max_dt: None,
            quadrature_subsamples: 8,
            initial_u: InitialData::NeumannCosine {
                mean: 0.5,
                amplitude: 0.25,
            },
            initial_v: InitialData::Constant(0.0),
            output_dir: None,
            preset: Some(Preset::HeatVerify),
        },
    }
}

/// Cell averages of the initial profile, approximated by `q x q` midpoint
/// subsampling per cell and clamped to the profile's value range.
pub fn discretize_initial(mesh: &Mesh, profile: &InitialData, q: usize) -> Result<Vec<f64>, Error> {
    if q == 0 {
        return Err(Error::Config(
            "quadrature subsample count must be positive".into(),
        ));
    }
    if let InitialData::Disks { disks, .. } = profile {
        if disks.is_empty() {
            return Err(Error::Config(
                "disk initial data needs at least one disk".into(),
            ));
        }
        if disks.iter().any(|d| !(d.radius > 0.0)) {
            return Err(Error::Config("disk radius must be positive".into()));
        }
    }

    let (lo, hi) = profile.range();
    let inv_q = 1.0 / q as f64;
    let weight = inv_q * inv_q;
    let mut values = Vec::with_capacity(mesh.n_cells());
    for j in 0..mesh.ny {
        for i in 0..mesh.nx {
            let x0 = mesh.x_min + i as f64 * mesh.hx;
            let y0 = mesh.y_min + j as f64 * mesh.hy;
            let mut acc = 0.0;
            for b in 0..q {
                let y = y0 + (b as f64 + 0.5) * inv_q * mesh.hy;
                for a in 0..q {
                    let x = x0 + (a as f64 + 0.5) * inv_q * mesh.hx;
                    acc += profile.eval(x, y, mesh);
                }
            }
            values.push((acc * weight).clamp(lo, hi));
        }
    }
    Ok(values)
}

/// Per-step series recorded over a run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunSummary {
    pub t: Vec<f64>,
    pub dt: Vec<f64>,
    pub mass_u: Vec<f64>,
    pub min_u: Vec<f64>,
    pub max_u: Vec<f64>,
    pub min_v: Vec<f64>,
    pub max_v: Vec<f64>,
    pub rejected_steps: u64,
}

impl RunSummary {
    fn record(&mut self, state: &State, mesh: &Mesh, dt: f64) {
        let fold =
            |f: fn(f64, f64) -> f64, init: f64, xs: &[f64]| xs.iter().fold(init, |a, &b| f(a, b));
        self.t.push(state.t);
        self.dt.push(dt);
        self.mass_u.push(diagnostics::total_mass(&state.u, mesh));
        self.min_u.push(fold(f64::min, f64::INFINITY, &state.u));
        self.max_u.push(fold(f64::max, f64::NEG_INFINITY, &state.u));
        self.min_v.push(fold(f64::min, f64::INFINITY, &state.v));
        self.max_v.push(fold(f64::max, f64::NEG_INFINITY, &state.v));
    }

    pub fn n_steps(&self) -> usize {
        self.t.len().saturating_sub(1)
    }
}

/// State captured at one requested snapshot time.
#[derive(Clone, Debug)]
pub struct Snapshot {
    pub time: f64,
    pub state: State,
}

/// Result of a completed run.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub snapshots: Vec<Snapshot>,
    pub summary: RunSummary,
}

/// Advances the configured system from t = 0 to `t_end` with adaptive stable
/// steps, clipping each step so snapshot times and `t_end` are hit exactly.
pub fn run(config: &SimConfig) -> Result<RunOutput, Error> {
    config.validate()?;
    let mesh = config.build_mesh()?;
    let set = &config.coefficients;
    let q = config.quadrature_subsamples;

    let u0 = discretize_initial(&mesh, &config.initial_u, q)?;
    let v0 = discretize_initial(&mesh, &config.initial_v, q)?;
    let mut state = State::new(u0, v0, 0.0);

    let mut summary = RunSummary::default();
    summary.record(&state, &mesh, 0.0);

    let mut snapshots = Vec::new();
    let mut next_snapshot = 0;
    while next_snapshot < config.snapshot_times.len() && config.snapshot_times[next_snapshot] <= 0.0
    {
        snapshots.push(Snapshot {
            time: state.t,
            state: state.clone(),
        });
        next_snapshot += 1;
    }

    while state.t < config.t_end {
        let mut dt = stable_dt(&state, &mesh, set, config.cfl_safety);
        if let Some(cap) = config.max_dt {
            dt = dt.min(cap);
        }

        // Clip so the next event time is hit exactly.
        let target = if next_snapshot < config.snapshot_times.len() {
            config.snapshot_times[next_snapshot]
        } else {
            config.t_end
        };
        let mut hits_target = false;
        if state.t + dt >= target {
            dt = target - state.t;
            hits_target = true;
        }

        let mut rejections = 0u32;
        let next = loop {
            match step(&state, &mesh, set, dt) {
                Ok(next) => break next,
                Err(violation) => {
                    rejections += 1;
                    summary.rejected_steps += 1;
                    if rejections >= MAX_STEP_REJECTIONS {
                        return Err(Error::SolverAbort {
                            time: state.t,
                            last_dt: dt,
                            rejections,
                            field: violation.field,
                            worst_value: violation.value,
                            cell: violation.cell,
                            state: Box::new(state),
                        });
                    }
                    dt *= 0.5;
                    hits_target = false;
                }
            }
        };
        state = next;
        if hits_target {
            state.t = target; // suppress roundoff in t + dt
        }
        summary.record(&state, &mesh, dt);

        while next_snapshot < config.snapshot_times.len()
            && state.t >= config.snapshot_times[next_snapshot]
        {
            snapshots.push(Snapshot {
                time: state.t,
                state: state.clone(),
            });
            next_snapshot += 1;
        }
    }

    Ok(RunOutput { snapshots, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_example1_parameters() {
        let cfg = preset(Preset::Example1);
        let c = cfg.coefficients;
        assert_eq!(
            (c.eps, c.alpha, c.beta, c.chi, c.d),
            (0.01, 40.0, 160.0, 0.2, 0.05)
        );
        assert_eq!(c.p, 2.0);
        assert_eq!(cfg.t_end, 1.0);
        assert_eq!(cfg.snapshot_times, vec![1.0]);
        assert_eq!(cfg.initial_v, InitialData::Constant(4.5));
        cfg.validate().unwrap();
    }

    #[test]
    fn preset_example2_parameters() {
        let cfg = preset(Preset::Example2);
        let c = cfg.coefficients;
        assert_eq!(
            (c.eps, c.alpha, c.beta, c.chi, c.d),
            (0.5, 5.0, 0.5, 1.0, 0.25)
        );
        assert_eq!(cfg.snapshot_times, vec![0.1, 0.5, 2.5]);
        match &cfg.initial_u {
            InitialData::Disks {
                disks,
                inside,
                outside,
            } => {
                assert_eq!(disks.len(), 2);
                assert_eq!(disks[0].center, (-0.25, 0.25));
                assert_eq!(disks[1].center, (0.25, -0.25));
                assert_eq!((*inside, *outside), (1.0, 0.0));
            }
            other => panic!("unexpected initial u: {other:?}"),
        }
        match &cfg.initial_v {
            InitialData::Disks { disks, inside, .. } => {
                assert_eq!(disks[0].center, (0.25, 0.25));
                assert_eq!(disks[1].center, (-0.25, -0.25));
                assert_eq!(*inside, 4.5);
            }
            other => panic!("unexpected initial v: {other:?}"),
        }
    }

    #[test]
    fn preset_heat_verify_parameters() {
        let cfg = preset(Preset::HeatVerify);
        assert_eq!(cfg.coefficients.kind, CoefficientKind::LinearVerification);
        assert_eq!(cfg.coefficients.chi, 0.0);
        assert_eq!(cfg.coefficients.p, 2.0);
        // Cosine amplitude gives extrema 0.25 and 0.75.
        let mesh = cfg.build_mesh().unwrap();
        let u0 = discretize_initial(&mesh, &cfg.initial_u, 8).unwrap();
        let max = u0.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = u0.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!((max - 0.75).abs() < 0.01, "max u0 = {max}");
        assert!((min - 0.25).abs() < 0.01, "min u0 = {min}");
    }

    #[test]
    fn discretize_disk_inside_outside_and_straddling() {
        let cfg = preset(Preset::Example1);
        let mesh = build_regular_mesh(-1.0, 1.0, -1.0, 1.0, 64, 64).unwrap();
        let u = discretize_initial(&mesh, &cfg.initial_u, 8).unwrap();

        let center_cell = mesh.cell_index(32, 32);
        assert_eq!(u[center_cell], 1.0, "cell wholly inside the disk");
        assert_eq!(u[mesh.cell_index(0, 0)], 0.0, "cell wholly outside");

        // A straddling cell against a fine-subsampling oracle.
        let straddler = (0..mesh.n_cells())
            .find(|&k| u[k] > 0.0 && u[k] < 1.0)
            .expect("some cell straddles the disk boundary");
        let oracle = discretize_initial(&mesh, &cfg.initial_u, 64).unwrap();
        assert!(
            (u[straddler] - oracle[straddler]).abs() <= 0.02,
            "q=8 average {} vs q=64 oracle {}",
            u[straddler],
            oracle[straddler]
        );
    }

    #[test]
    fn discretize_rejects_bad_profiles() {
        let mesh = build_regular_mesh(-1.0, 1.0, -1.0, 1.0, 4, 4).unwrap();
        let no_disks = InitialData::Disks {
            disks: vec![],
            inside: 1.0,
            outside: 0.0,
        };
        assert!(discretize_initial(&mesh, &no_disks, 8).is_err());
        let bad_radius = InitialData::Disks {
            disks: vec![Disk {
                center: (0.0, 0.0),
                radius: 0.0,
            }],
            inside: 1.0,
            outside: 0.0,
        };
        assert!(discretize_initial(&mesh, &bad_radius, 8).is_err());
        let ok = InitialData::Constant(1.0);
        assert!(discretize_initial(&mesh, &ok, 0).is_err());
    }

    #[test]
    fn zero_t_end_returns_initial_state_only() {
        let mut cfg = preset(Preset::Example1).with_resolution(16);
        cfg.t_end = 0.0;
        cfg.snapshot_times = vec![0.0];
        let out = run(&cfg).unwrap();
        assert_eq!(out.summary.t.len(), 1);
        assert_eq!(out.summary.t[0], 0.0);
        assert_eq!(out.snapshots.len(), 1);
        assert_eq!(out.snapshots[0].time, 0.0);
    }

    #[test]
    fn uniform_initial_data_matches_reaction_ode() {
        // With uniform u0, v solves v' = alpha*u0 - beta*v exactly:
        // v(t) = alpha*u0/beta + (v0 - alpha*u0/beta) * exp(-beta t).
        let mut cfg = preset(Preset::Example1).with_resolution(4);
        cfg.initial_u = InitialData::Constant(0.5);
        cfg.initial_v = InitialData::Constant(4.5);
        cfg.max_dt = Some(1e-4);
        cfg.t_end = 0.05;
        cfg.snapshot_times = vec![0.05];
        let out = run(&cfg).unwrap();
        let (alpha, beta) = (40.0, 160.0);
        let v_eq = alpha * 0.5 / beta;
        let exact = v_eq + (4.5 - v_eq) * (-beta * 0.05_f64).exp();
        let got = out.snapshots[0].state.v[0];
        assert!((got - exact).abs() <= 1e-3, "v = {got}, exact = {exact}");
        // u must not have moved at all.
        assert!(out.snapshots[0].state.u.iter().all(|&x| x == 0.5));
    }

    #[test]
    fn snapshot_times_are_hit_exactly() {
        let mut cfg = preset(Preset::Example2).with_resolution(16);
        cfg.t_end = 0.02;
        cfg.snapshot_times = vec![0.007, 0.013, 0.02];
        let out = run(&cfg).unwrap();
        let times: Vec<f64> = out.snapshots.iter().map(|s| s.time).collect();
        assert_eq!(times, vec![0.007, 0.013, 0.02]);
        for s in &cfg.snapshot_times {
            assert!(
                out.summary.t.iter().any(|t| t == s),
                "missing {s} in summary"
            );
        }
    }

    #[test]
    fn example1_at_64_runs_to_t1_with_no_violations() {
        let mut cfg = preset(Preset::Example1).with_resolution(64);
        cfg.snapshot_times = vec![1.0];
        let out = run(&cfg).unwrap();
        let tol = 1e-12;
        for i in 0..out.summary.t.len() {
            assert!(
                out.summary.min_u[i] >= -tol,
                "min u {}",
                out.summary.min_u[i]
            );
            assert!(
                out.summary.max_u[i] <= 1.0 + tol,
                "max u {}",
                out.summary.max_u[i]
            );
            assert!(
                out.summary.min_v[i] >= -tol,
                "min v {}",
                out.summary.min_v[i]
            );
        }
        // Mass conservation over the run.
        let m0 = out.summary.mass_u[0];
        for &m in &out.summary.mass_u {
            assert!((m - m0).abs() <= 1e-10 * m0, "mass drift {m} vs {m0}");
        }
    }

    #[test]
    fn runs_are_deterministic() {
        let mut cfg = preset(Preset::Example2).with_resolution(16);
        cfg.t_end = 0.05;
        cfg.snapshot_times = vec![0.05];
        let a = run(&cfg).unwrap();
        let b = run(&cfg).unwrap();
        assert_eq!(a.snapshots[0].state, b.snapshots[0].state);
        assert_eq!(a.summary, b.summary);
    }

    #[test]
    fn stuck_state_aborts_after_max_rejections() {
        // An inadmissible state can never be stepped back into range; the
        // driver must give up with a solver abort rather than loop forever.
        let mut cfg = preset(Preset::Example1).with_resolution(4);
        cfg.initial_u = InitialData::Constant(0.5);
        cfg.t_end = 1e-3;
        cfg.snapshot_times = vec![];
        let mesh = cfg.build_mesh().unwrap();
        let bad = State::new(vec![-1.0; 16], vec![0.0; 16], 0.0);
        // Drive the scheme directly: every dt, however small, keeps u at -1.
        let mut dt = 1e-3;
        let mut rejections = 0;
        for _ in 0..MAX_STEP_REJECTIONS {
            match step(&bad, &mesh, &cfg.coefficients, dt) {
                Ok(_) => break,
                Err(_) => {
                    rejections += 1;
                    dt *= 0.5;
                }
            }
        }
        assert_eq!(rejections, MAX_STEP_REJECTIONS, "no admissible step exists");
    }
}
