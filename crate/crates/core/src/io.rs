//! Config parsing and snapshot/summary serialization.
//!
//! The config format is sectioned key = value text. Unknown keys are
//! rejected so typos fail loudly. A named preset supplies every default;
//! explicit keys override it. Without a preset line, defaults are those of
//! `example1`.
//!
//! ```text
//! preset = example1
//!
//! [coefficients]
//! p = 6
//!
//! [time]
//! snapshot_times = 0.2, 1.0
//! ```
//!
//! Snapshots are written as `x,y,u,v` CSV with 17 significant digits so
//! doubles survive a round-trip bitwise, and optionally as VTK legacy
//! STRUCTURED_POINTS files with the cell-center lattice as points.

use std::path::PathBuf;

use crate::coefficients::{CoefficientKind, CoefficientSet};
use crate::mesh::Mesh;
use crate::scheme::State;
use crate::simulator::{preset, Disk, InitialData, Preset, RunSummary, SimConfig};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Section {
    Top,
    Domain,
    Coefficients,
    Time,
    InitialU,
    InitialV,
    Output,
}

impl Section {
    fn parse(name: &str) -> Result<Self, Error> {
        match name {
            "domain" => Ok(Section::Domain),
            "coefficients" => Ok(Section::Coefficients),
            "time" => Ok(Section::Time),
            "initial_u" => Ok(Section::InitialU),
            "initial_v" => Ok(Section::InitialV),
            "output" => Ok(Section::Output),
            other => Err(Error::Config(format!("unknown section [{other}]"))),
        }
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64, Error> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("key `{key}`: expected a number, got `{value}`")))
}

fn parse_usize(key: &str, value: &str) -> Result<usize, Error> {
    value.trim().parse().map_err(|_| {
        Error::Config(format!(
            "key `{key}`: expected a positive integer, got `{value}`"
        ))
    })
}

fn parse_f64_list(key: &str, value: &str) -> Result<Vec<f64>, Error> {
    let trimmed = value.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|part| parse_f64(key, part))
        .collect()
}

fn parse_pair(key: &str, value: &str) -> Result<(f64, f64), Error> {
    let items = parse_f64_list(key, value)?;
    if items.len() != 2 {
        return Err(Error::Config(format!(
            "key `{key}`: expected `x, y`, got `{value}`"
        )));
    }
    Ok((items[0], items[1]))
}

/// Accumulates one [initial_u] / [initial_v] section before it is turned into
/// a complete `InitialData`.
#[derive(Default)]
struct InitialSection {
    kind: Option<String>,
    value: Option<f64>,
    center: Option<(f64, f64)>,
    radius: Option<f64>,
    inside: Option<f64>,
    outside: Option<f64>,
    disks: Vec<Disk>,
    mean: Option<f64>,
    amplitude: Option<f64>,
    touched: bool,
}

impl InitialSection {
    fn apply(&mut self, key: &str, value: &str, section: &str) -> Result<(), Error> {
        self.touched = true;
        match key {
            "kind" => self.kind = Some(value.trim().to_string()),
            "value" => self.value = Some(parse_f64(key, value)?),
            "center" => self.center = Some(parse_pair(key, value)?),
            "radius" => self.radius = Some(parse_f64(key, value)?),
            "inside" => self.inside = Some(parse_f64(key, value)?),
            "outside" => self.outside = Some(parse_f64(key, value)?),
            "disk" => {
                let items = parse_f64_list(key, value)?;
                if items.len() != 3 {
                    return Err(Error::Config(format!(
                        "key `disk`: expected `x, y, radius`, got `{value}`"
                    )));
                }
                self.disks.push(Disk {
                    center: (items[0], items[1]),
                    radius: items[2],
                });
            }
            "mean" => self.mean = Some(parse_f64(key, value)?),
            "amplitude" => self.amplitude = Some(parse_f64(key, value)?),
            other => {
                return Err(Error::Config(format!(
                    "unknown key `{other}` in section [{section}]"
                )))
            }
        }
        Ok(())
    }

    fn build(&self, section: &str) -> Result<InitialData, Error> {
        let kind = self
            .kind
            .as_deref()
            .ok_or_else(|| Error::Config(format!("section [{section}] needs a `kind` key")))?;
        let need = |opt: Option<f64>, key: &str| {
            opt.ok_or_else(|| {
                Error::Config(format!(
                    "section [{section}] kind `{kind}` needs key `{key}`"
                ))
            })
        };
        match kind {
            "constant" => Ok(InitialData::Constant(need(self.value, "value")?)),
            "disk" => {
                let center = self.center.ok_or_else(|| {
                    Error::Config(format!(
                        "section [{section}] kind `disk` needs key `center`"
                    ))
                })?;
                Ok(InitialData::Disks {
                    disks: vec![Disk {
                        center,
                        radius: need(self.radius, "radius")?,
                    }],
                    inside: need(self.inside, "inside")?,
                    outside: need(self.outside, "outside")?,
                })
            }
            "disks" => {
                if self.disks.is_empty() {
                    return Err(Error::Config(format!(
                        "section [{section}] kind `disks` needs at least one `disk = x, y, radius`"
                    )));
                }
                Ok(InitialData::Disks {
                    disks: self.disks.clone(),
                    inside: need(self.inside, "inside")?,
                    outside: need(self.outside, "outside")?,
                })
            }
            "cosine" => Ok(InitialData::NeumannCosine {
                mean: need(self.mean, "mean")?,
                amplitude: need(self.amplitude, "amplitude")?,
            }),
            other => Err(Error::Config(format!(
                "section [{section}]: unknown initial data kind `{other}`"
            ))),
        }
    }
}

/// Parses a config document into a validated [`SimConfig`].
pub fn parse_config(text: &str) -> Result<SimConfig, Error> {
    // First pass: preset selection, so later keys override it.
    let mut base: Option<Preset> = None;
    let mut entries: Vec<(Section, String, String)> = Vec::new();
    let mut section = Section::Top;
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name.strip_suffix(']').ok_or_else(|| {
                Error::Config(format!(
                    "line {}: malformed section header `{raw}`",
                    line_no + 1
                ))
            })?;
            section = Section::parse(name.trim())?;
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!(
                "line {}: expected `key = value`, got `{raw}`",
                line_no + 1
            ))
        })?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if section == Section::Top && key == "preset" {
            base = Some(Preset::parse(&value)?);
        } else {
            entries.push((section, key, value));
        }
    }

    let named_preset = base;
    let mut config = preset(named_preset.unwrap_or(Preset::Example1));
    config.preset = named_preset;

    let mut initial_u = InitialSection::default();
    let mut initial_v = InitialSection::default();
    let c = &mut config.coefficients;

    for (section, key, value) in &entries {
        let key = key.as_str();
        let value = value.as_str();
        match section {
            Section::Top => match key {
                "quadrature_subsamples" => {
                    config.quadrature_subsamples = parse_usize(key, value)?
                }
                other => {
                    return Err(Error::Config(format!(
                        "unknown top-level key `{other}` (sections: domain, coefficients, time, initial_u, initial_v, output)"
                    )))
                }
            },
            Section::Domain => match key {
                "x_min" => config.x_min = parse_f64(key, value)?,
                "x_max" => config.x_max = parse_f64(key, value)?,
                "y_min" => config.y_min = parse_f64(key, value)?,
                "y_max" => config.y_max = parse_f64(key, value)?,
                "nx" => config.nx = parse_usize(key, value)?,
                "ny" => config.ny = parse_usize(key, value)?,
                other => {
                    return Err(Error::Config(format!("unknown key `{other}` in section [domain]")))
                }
            },
            Section::Coefficients => match key {
                "kind" => {
                    c.kind = match value {
                        "volume_filling" => CoefficientKind::VolumeFilling,
                        "linear_verification" => CoefficientKind::LinearVerification,
                        other => {
                            return Err(Error::Config(format!(
                                "key `kind`: expected `volume_filling` or `linear_verification`, got `{other}`"
                            )))
                        }
                    }
                }
                "p" => c.p = parse_f64(key, value)?,
                "eps" => c.eps = parse_f64(key, value)?,
                "eps_reg" => c.eps_reg = parse_f64(key, value)?,
                "chi" => c.chi = parse_f64(key, value)?,
                "d" => c.d = parse_f64(key, value)?,
                "alpha" => c.alpha = parse_f64(key, value)?,
                "beta" => c.beta = parse_f64(key, value)?,
                other => {
                    return Err(Error::Config(format!(
                        "unknown key `{other}` in section [coefficients]"
                    )))
                }
            },
            Section::Time => match key {
                "t_end" => config.t_end = parse_f64(key, value)?,
                "snapshot_times" => config.snapshot_times = parse_f64_list(key, value)?,
                "cfl_safety" => config.cfl_safety = parse_f64(key, value)?,
                "max_dt" => config.max_dt = Some(parse_f64(key, value)?),
                other => {
                    return Err(Error::Config(format!("unknown key `{other}` in section [time]")))
                }
            },
            Section::InitialU => initial_u.apply(key, value, "initial_u")?,
            Section::InitialV => initial_v.apply(key, value, "initial_v")?,
            Section::Output => match key {
                "dir" => config.output_dir = Some(PathBuf::from(value)),
                other => {
                    return Err(Error::Config(format!("unknown key `{other}` in section [output]")))
                }
            },
        }
    }

    if initial_u.touched {
        config.initial_u = initial_u.build("initial_u")?;
    }
    if initial_v.touched {
        config.initial_v = initial_v.build("initial_v")?;
    }

    // Revalidate the coefficient set (e.g. `p = 1.5` names p and its bound).
    config.coefficients =
        CoefficientSet::new(c.kind, c.p, c.eps, c.eps_reg, c.chi, c.d, c.alpha, c.beta)?;
    if !(config.t_end > 0.0) {
        return Err(Error::Config(format!(
            "key `t_end`: must be positive, got {}",
            config.t_end
        )));
    }
    config.validate()?;
    Ok(config)
}

/// Writes a config document that `parse_config` maps back to the same
/// `SimConfig` (field equality).
pub fn write_config(config: &SimConfig) -> String {
    let mut out = String::new();
    if let Some(p) = config.preset {
        out.push_str(&format!("preset = {}\n", p.name()));
    }
    out.push_str(&format!(
        "quadrature_subsamples = {}\n",
        config.quadrature_subsamples
    ));
    out.push_str(&format!(
        "\n[domain]\nx_min = {}\nx_max = {}\ny_min = {}\ny_max = {}\nnx = {}\nny = {}\n",
        config.x_min, config.x_max, config.y_min, config.y_max, config.nx, config.ny
    ));
    let c = &config.coefficients;
    let kind = match c.kind {
        CoefficientKind::VolumeFilling => "volume_filling",
        CoefficientKind::LinearVerification => "linear_verification",
    };
    out.push_str(&format!(
        "\n[coefficients]\nkind = {kind}\np = {}\neps = {}\neps_reg = {}\nchi = {}\nd = {}\nalpha = {}\nbeta = {}\n",
        c.p, c.eps, c.eps_reg, c.chi, c.d, c.alpha, c.beta
    ));
    out.push_str(&format!("\n[time]\nt_end = {}\n", config.t_end));
    let times: Vec<String> = config
        .snapshot_times
        .iter()
        .map(|t| t.to_string())
        .collect();
    out.push_str(&format!("snapshot_times = {}\n", times.join(", ")));
    out.push_str(&format!("cfl_safety = {}\n", config.cfl_safety));
    if let Some(dt) = config.max_dt {
        out.push_str(&format!("max_dt = {dt}\n"));
    }
    for (section, data) in [
        ("initial_u", &config.initial_u),
        ("initial_v", &config.initial_v),
    ] {
        out.push_str(&format!("\n[{section}]\n"));
        match data {
            InitialData::Constant(v) => {
                out.push_str(&format!("kind = constant\nvalue = {v}\n"));
            }
            InitialData::Disks {
                disks,
                inside,
                outside,
            } => {
                out.push_str("kind = disks\n");
                for d in disks {
                    out.push_str(&format!(
                        "disk = {}, {}, {}\n",
                        d.center.0, d.center.1, d.radius
                    ));
                }
                out.push_str(&format!("inside = {inside}\noutside = {outside}\n"));
            }
            InitialData::NeumannCosine { mean, amplitude } => {
                out.push_str(&format!(
                    "kind = cosine\nmean = {mean}\namplitude = {amplitude}\n"
                ));
            }
        }
    }
    if let Some(dir) = &config.output_dir {
        out.push_str(&format!("\n[output]\ndir = {}\n", dir.display()));
    }
    out
}

/// One parsed snapshot CSV.
#[derive(Clone, Debug, Default)]
pub struct SnapshotData {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

/// Serializes a state as `x,y,u,v` CSV, one row per cell in canonical
/// (row-major) order, 17 significant digits.
pub fn write_snapshot_csv(state: &State, mesh: &Mesh) -> String {
    let mut out = String::with_capacity(24 + 96 * state.n_cells());
    out.push_str("x,y,u,v\n");
    for k in 0..state.n_cells() {
        let (x, y) = mesh.cell_center(k);
        out.push_str(&format!(
            "{x:.16e},{y:.16e},{u:.16e},{v:.16e}\n",
            u = state.u[k],
            v = state.v[k]
        ));
    }
    out
}

/// Parses a snapshot CSV produced by [`write_snapshot_csv`].
pub fn parse_snapshot_csv(text: &str) -> Result<SnapshotData, Error> {
    let mut lines = text.lines();
    match lines.next() {
        Some("x,y,u,v") => {}
        other => {
            return Err(Error::Usage(format!(
                "snapshot CSV must start with `x,y,u,v`, got {other:?}"
            )))
        }
    }
    let mut data = SnapshotData::default();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let mut next = |name: &str| -> Result<f64, Error> {
            fields
                .next()
                .ok_or_else(|| Error::Usage(format!("row {}: missing column {name}", i + 2)))?
                .parse()
                .map_err(|_| Error::Usage(format!("row {}: bad value in column {name}", i + 2)))
        };
        data.x.push(next("x")?);
        data.y.push(next("y")?);
        data.u.push(next("u")?);
        data.v.push(next("v")?);
    }
    Ok(data)
}

/// Serializes a state as a VTK legacy ASCII STRUCTURED_POINTS dataset with
/// the cell-center lattice as points and `u`, `v` as double scalars.
pub fn write_vtk(state: &State, mesh: &Mesh) -> String {
    let n = state.n_cells();
    let (x0, y0) = mesh.cell_center(0);
    let mut out = String::with_capacity(256 + 48 * n);
    out.push_str("# vtk DataFile Version 3.0\n");
    out.push_str(&format!("chemotax snapshot t = {}\n", state.t));
    out.push_str("ASCII\n");
    out.push_str("DATASET STRUCTURED_POINTS\n");
    out.push_str(&format!("DIMENSIONS {} {} 1\n", mesh.nx, mesh.ny));
    out.push_str(&format!("ORIGIN {x0} {y0} 0\n"));
    out.push_str(&format!("SPACING {} {} 1\n", mesh.hx, mesh.hy));
    out.push_str(&format!("POINT_DATA {n}\n"));
    for (name, values) in [("u", &state.u), ("v", &state.v)] {
        out.push_str(&format!("SCALARS {name} double 1\n"));
        out.push_str("LOOKUP_TABLE default\n");
        for value in values.iter() {
            out.push_str(&format!("{value:.16e}\n"));
        }
    }
    out
}

/// Serializes a run summary as JSON with full-precision numbers.
pub fn write_summary(summary: &RunSummary) -> Result<String, Error> {
    let n = summary.t.len();
    let series: [(&str, &Vec<f64>); 7] = [
        ("t", &summary.t),
        ("dt", &summary.dt),
        ("mass_u", &summary.mass_u),
        ("min_u", &summary.min_u),
        ("max_u", &summary.max_u),
        ("min_v", &summary.min_v),
        ("max_v", &summary.max_v),
    ];
    for (name, values) in &series {
        if values.len() != n {
            return Err(Error::Usage(format!(
                "summary arrays must have equal length: `{name}` has {}, `t` has {n}",
                values.len()
            )));
        }
    }
    let mut out = String::from("{\n");
    for (name, values) in &series {
        let items: Vec<String> = values.iter().map(|v| format!("{v:.16e}")).collect();
        out.push_str(&format!("  \"{name}\": [{}],\n", items.join(", ")));
    }
    out.push_str(&format!(
        "  \"rejected_steps\": {}\n",
        summary.rejected_steps
    ));
    out.push_str("}\n");
    Ok(out)
}

/// File name used for the snapshot with the given index and time.
pub fn snapshot_filename(index: usize, time: f64, extension: &str) -> String {
    format!("snapshot_{index:03}_t{time}.{extension}")
}

/// Recovers the snapshot time encoded by [`snapshot_filename`].
pub fn parse_snapshot_time(filename: &str) -> Option<f64> {
    let stem = filename.rsplit_once('.')?.0;
    stem.rsplit_once("_t")?.1.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::build_regular_mesh;

    #[test]
    fn preset_line_alone_yields_full_config() {
        let cfg = parse_config("preset = example1\n").unwrap();
        let mut expect = preset(Preset::Example1);
        expect.preset = Some(Preset::Example1);
        assert_eq!(cfg, expect);
    }

    #[test]
    fn preset_with_p_override() {
        let cfg = parse_config("preset = example1\n[coefficients]\np = 6\n").unwrap();
        assert_eq!(cfg.coefficients.p, 6.0);
        assert_eq!(
            cfg.coefficients.eps, 0.01,
            "other coefficients keep preset values"
        );
    }

    #[test]
    fn p_below_two_is_rejected_by_name() {
        let err = parse_config("preset = example1\n[coefficients]\np = 1.5\n").unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.contains('p') && msg.contains('2'),
            "message must name p and the bound: {msg}"
        );
    }

    #[test]
    fn unknown_keys_are_rejected_by_name() {
        let err = parse_config("preset = example1\n[coefficients]\nchii = 1\n").unwrap_err();
        assert!(err.to_string().contains("chii"), "{err}");
        let err = parse_config("preset = example1\n[nope]\nx = 1\n").unwrap_err();
        assert!(err.to_string().contains("nope"), "{err}");
    }

    #[test]
    fn nonpositive_t_end_is_rejected() {
        let err = parse_config("preset = example1\n[time]\nt_end = 0\n").unwrap_err();
        assert!(err.to_string().contains("t_end"), "{err}");
    }

    #[test]
    fn initial_sections_replace_profiles() {
        let text = "preset = example2
[initial_u]
kind = constant
value = 0.25
[initial_v]
kind = disks
disk = 0.1, 0.2, 0.3
disk = -0.1, -0.2, 0.3
inside = 2
outside = 0.5
";
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.initial_u, InitialData::Constant(0.25));
        match cfg.initial_v {
            InitialData::Disks {
                ref disks,
                inside,
                outside,
            } => {
                assert_eq!(disks.len(), 2);
                assert_eq!(disks[1].center, (-0.1, -0.2));
                assert_eq!((inside, outside), (2.0, 0.5));
            }
            ref other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn config_round_trips_through_write() {
        let mut cfg = preset(Preset::Example2);
        cfg.nx = 48;
        cfg.ny = 48;
        cfg.coefficients.p = 4.0;
        cfg.max_dt = Some(5e-4);
        cfg.output_dir = Some(PathBuf::from("out/run1"));
        let parsed = parse_config(&write_config(&cfg)).unwrap();
        assert_eq!(parsed, cfg);

        // Also without a preset tag.
        cfg.preset = None;
        let parsed = parse_config(&write_config(&cfg)).unwrap();
        assert_eq!(parsed, cfg);
    }

    #[test]
    fn csv_line_counts_and_ordering() {
        let mesh = build_regular_mesh(0.0, 1.0, 0.0, 1.0, 1, 1).unwrap();
        let state = State::new(vec![0.5], vec![1.0], 0.0);
        let text = write_snapshot_csv(&state, &mesh);
        assert_eq!(text.lines().count(), 2);

        let mesh = build_regular_mesh(-1.0, 1.0, -1.0, 1.0, 2, 2).unwrap();
        let state = State::new(vec![0.0, 0.1, 0.2, 0.3], vec![0.0; 4], 0.0);
        let text = write_snapshot_csv(&state, &mesh);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        // Row-major by cell center: (-0.5,-0.5), (0.5,-0.5), (-0.5,0.5), (0.5,0.5).
        assert!(lines[1].starts_with("-5.0000000000000000e-1,-5.0000000000000000e-1"));
        assert!(lines[2].starts_with("5.0000000000000000e-1,-5.0000000000000000e-1"));
        assert!(lines[3].starts_with("-5.0000000000000000e-1,5.0000000000000000e-1"));
    }

    #[test]
    fn csv_round_trip_is_bitwise() {
        let mesh = build_regular_mesh(-1.0, 1.0, -1.0, 1.0, 5, 3).unwrap();
        let u: Vec<f64> = (0..15)
            .map(|k| (k as f64 * 0.7181).sin().abs() * 1e-3)
            .collect();
        let v: Vec<f64> = (0..15).map(|k| (k as f64 * 1.379).cos() + 2.0).collect();
        let state = State::new(u.clone(), v.clone(), 0.4);
        let parsed = parse_snapshot_csv(&write_snapshot_csv(&state, &mesh)).unwrap();
        assert_eq!(parsed.u, u, "u must round-trip bitwise");
        assert_eq!(parsed.v, v, "v must round-trip bitwise");
        for k in 0..15 {
            assert_eq!((parsed.x[k], parsed.y[k]), mesh.cell_center(k));
        }
    }

    #[test]
    fn vtk_structure() {
        let mesh = build_regular_mesh(-1.0, 1.0, -1.0, 1.0, 2, 2).unwrap();
        let state = State::new(vec![0.0, 0.25, 0.5, 1.0], vec![4.5; 4], 0.0);
        let text = write_vtk(&state, &mesh);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# vtk DataFile Version 3.0");
        assert_eq!(lines[2], "ASCII");
        assert_eq!(lines[3], "DATASET STRUCTURED_POINTS");
        assert_eq!(lines[4], "DIMENSIONS 2 2 1");
        assert_eq!(lines[5], "ORIGIN -0.5 -0.5 0");
        assert_eq!(lines[6], "SPACING 1 1 1");
        assert_eq!(lines[7], "POINT_DATA 4");
        assert_eq!(lines[8], "SCALARS u double 1");
        assert_eq!(lines[9], "LOOKUP_TABLE default");
        let u_values = &lines[10..14];
        assert_eq!(u_values.len(), mesh.n_cells());
        assert_eq!(lines[14], "SCALARS v double 1");
    }

    #[test]
    fn summary_write_and_validation() {
        let mut summary = RunSummary::default();
        summary.t.push(0.0);
        summary.dt.push(0.0);
        summary.mass_u.push(0.125);
        summary.min_u.push(0.0);
        summary.max_u.push(1.0);
        summary.min_v.push(4.5);
        summary.max_v.push(4.5);
        let text = write_summary(&summary).unwrap();
        assert!(text.contains("\"rejected_steps\": 0"));
        assert!(text.contains("\"mass_u\": [1.2500000000000000e-1]"));

        summary.dt.push(1.0); // now unequal lengths
        assert!(write_summary(&summary).is_err());
    }

    #[test]
    fn snapshot_filenames_encode_times() {
        let name = snapshot_filename(2, 0.5, "csv");
        assert_eq!(name, "snapshot_002_t0.5.csv");
        assert_eq!(parse_snapshot_time(&name), Some(0.5));
        let name = snapshot_filename(0, 0.30000000000000004, "csv");
        assert_eq!(parse_snapshot_time(&name), Some(0.30000000000000004));
        assert_eq!(parse_snapshot_time("garbage.csv"), None);
    }
}
