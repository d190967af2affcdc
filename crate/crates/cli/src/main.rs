//! Command-line driver: preset runs, config-file runs, verification studies,
//! and the oscillation probe over recorded snapshots.

// Parameter guards use `!(x > 0.0)` so NaN fails validation too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use chemotax_core::diagnostics::{check_run_bounds, holder_fit, oscillation};
use chemotax_core::io::{
    parse_config, parse_snapshot_csv, parse_snapshot_time, snapshot_filename, write_snapshot_csv,
    write_summary, write_vtk,
};
use chemotax_core::simulator::{preset, run, Preset, RunOutput, SimConfig};
use chemotax_core::{Error, Mesh};

/// Environment variable that overrides every output directory choice.
const OUTPUT_DIR_ENV: &str = "CHEMOTAX_OUTPUT_DIR";

#[derive(Parser)]
#[command(
    name = "chemotax",
    about = "Finite-volume solver for a chemotaxis system with volume filling and p-Laplacian diffusion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunOptions {
    /// Cells per dimension.
    #[arg(long)]
    n: Option<usize>,
    /// p-Laplacian exponent (>= 2).
    #[arg(long)]
    p: Option<f64>,
    /// Safety factor for the stability bound, in (0, 1].
    #[arg(long)]
    theta: Option<f64>,
    /// Final time override.
    #[arg(long)]
    t_end: Option<f64>,
    /// Output directory (defaults to out/<preset>).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write VTK legacy snapshots.
    #[arg(long)]
    vtk: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a simulation described by a config file.
    Run {
        /// Path to the config document.
        #[arg(long)]
        config: PathBuf,
        /// Also write VTK legacy snapshots.
        #[arg(long)]
        vtk: bool,
    },
    /// Aggregating-disk experiment (eps=0.01, alpha=40, beta=160, chi=0.2, d=0.05).
    Example1 {
        #[command(flatten)]
        options: RunOptions,
    },
    /// Two-population experiment (eps=0.5, alpha=5, beta=0.5, chi=1, d=0.25).
    Example2 {
        #[command(flatten)]
        options: RunOptions,
    },
    /// Heat-equation reduction checked against the closed-form cosine solution.
    HeatVerify {
        /// Cells per dimension.
        #[arg(long, default_value_t = 64)]
        n: usize,
    },
    /// Grid-convergence study of the heat-equation reduction.
    Convergence {
        /// Comma-separated resolutions, coarse to fine.
        #[arg(long, default_value = "32,64,128")]
        levels: String,
    },
    /// Oscillation decay over nested space-time cylinders in recorded snapshots.
    OscProbe {
        /// Directory of snapshot CSV files written by a run.
        #[arg(long)]
        snapshot_dir: PathBuf,
        /// Cylinder vertex as `x,y,t`.
        #[arg(long, allow_hyphen_values = true)]
        center: String,
        /// Comma-separated cylinder radii.
        #[arg(long)]
        radii: String,
        /// Exponent for the cylinder heights tau = time_scale * r^p.
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Scale factor for the cylinder heights.
        #[arg(long, default_value_t = 1.0)]
        time_scale: f64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Usage problems are configuration errors (exit 1), not aborts.
            let _ = err.print();
            return match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn dispatch(command: Command) -> Result<(), Error> {
    match command {
        Command::Run { config, vtk } => {
            let text = fs::read_to_string(&config)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", config.display())))?;
            let cfg = parse_config(&text)?;
            let out_dir = resolve_out_dir(None, &cfg, "out/run");
            execute(&cfg, &out_dir, vtk)
        }
        Command::Example1 { options } => preset_run(Preset::Example1, options),
        Command::Example2 { options } => preset_run(Preset::Example2, options),
        Command::HeatVerify { n } => heat_verify(n).map(|_| ()),
        Command::Convergence { levels } => convergence(&levels),
        Command::OscProbe {
            snapshot_dir,
            center,
            radii,
            p,
            time_scale,
        } => osc_probe(&snapshot_dir, &center, &radii, p, time_scale),
    }
}

fn preset_run(id: Preset, options: RunOptions) -> Result<(), Error> {
    let mut cfg = preset(id);
    if let Some(n) = options.n {
        cfg = cfg.with_resolution(n);
    }
    if let Some(p) = options.p {
        cfg = cfg.with_p(p);
    }
    if let Some(theta) = options.theta {
        cfg.cfl_safety = theta;
    }
    if let Some(t_end) = options.t_end {
        cfg.t_end = t_end;
        cfg.snapshot_times.retain(|&t| t <= t_end);
        if cfg.snapshot_times.last() != Some(&t_end) {
            cfg.snapshot_times.push(t_end);
        }
    }
    let out_dir = resolve_out_dir(options.out, &cfg, &format!("out/{}", id.name()));
    execute(&cfg, &out_dir, options.vtk)
}

/// Output directory priority: environment override, explicit flag, config
/// value, subcommand default.
fn resolve_out_dir(flag: Option<PathBuf>, cfg: &SimConfig, default: &str) -> PathBuf {
    if let Ok(dir) = std::env::var(OUTPUT_DIR_ENV) {
        return PathBuf::from(dir);
    }
    flag.or_else(|| cfg.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from(default))
}

fn execute(cfg: &SimConfig, out_dir: &Path, vtk: bool) -> Result<(), Error> {
    let mesh = cfg.build_mesh()?;
    match run(cfg) {
        Ok(output) => {
            write_outputs(&output, &mesh, out_dir, vtk)?;
            report(&output);
            Ok(())
        }
        Err(Error::SolverAbort {
            time,
            last_dt,
            rejections,
            field,
            worst_value,
            cell,
            state,
        }) => {
            // Leave a post-mortem dump next to the regular outputs.
            let dump = write_snapshot_csv(&state, &mesh);
            let path = out_dir.join("abort_state.csv");
            if fs::create_dir_all(out_dir)
                .and_then(|_| fs::write(&path, dump))
                .is_ok()
            {
                eprintln!("wrote diagnostic state dump to {}", path.display());
            }
            Err(Error::SolverAbort {
                time,
                last_dt,
                rejections,
                field,
                worst_value,
                cell,
                state,
            })
        }
        Err(other) => Err(other),
    }
}

fn write_outputs(output: &RunOutput, mesh: &Mesh, out_dir: &Path, vtk: bool) -> Result<(), Error> {
    let io_err =
        |e: std::io::Error| Error::Config(format!("cannot write to {}: {e}", out_dir.display()));
    fs::create_dir_all(out_dir).map_err(io_err)?;
    for (i, snapshot) in output.snapshots.iter().enumerate() {
        let csv = write_snapshot_csv(&snapshot.state, mesh);
        let path = out_dir.join(snapshot_filename(i, snapshot.time, "csv"));
        fs::write(&path, csv).map_err(io_err)?;
        println!("wrote {}", path.display());
        if vtk {
            let path = out_dir.join(snapshot_filename(i, snapshot.time, "vtk"));
            fs::write(&path, write_vtk(&snapshot.state, mesh)).map_err(io_err)?;
            println!("wrote {}", path.display());
        }
    }
    let path = out_dir.join("summary.json");
    fs::write(&path, write_summary(&output.summary)?).map_err(io_err)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn report(output: &RunOutput) {
    let s = &output.summary;
    let steps = s.n_steps();
    let mass0 = s.mass_u.first().copied().unwrap_or(0.0);
    let mass1 = s.mass_u.last().copied().unwrap_or(0.0);
    let drift = if mass0 != 0.0 {
        ((mass1 - mass0) / mass0).abs()
    } else {
        0.0
    };
    println!(
        "completed {} steps ({} rejected), relative mass drift {:.3e}",
        steps, s.rejected_steps, drift
    );
    let bounds = check_run_bounds(s, 1e-12);
    print!("{bounds}");
}

fn heat_verify(n: usize) -> Result<f64, Error> {
    let cfg = preset(Preset::HeatVerify).with_resolution(n);
    let output = run(&cfg)?;
    let mesh = cfg.build_mesh()?;
    let snapshot = output
        .snapshots
        .last()
        .ok_or_else(|| Error::Usage("heat verification produced no snapshot".into()))?;
    let error =
        chemotax_core::diagnostics::heat_reference_error(&snapshot.state, &mesh, &cfg.initial_u)?;
    println!(
        "heat verification at {n}x{n}, t = {}: L2 error = {error:.6e}",
        snapshot.time
    );
    Ok(error)
}

fn convergence(levels: &str) -> Result<(), Error> {
    let levels: Vec<usize> = levels
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad resolution `{s}` in --levels")))
        })
        .collect::<Result<_, _>>()?;
    if levels.len() < 2 {
        return Err(Error::Config(
            "need at least two resolutions for a convergence study".into(),
        ));
    }
    let mut errors = Vec::new();
    for &n in &levels {
        errors.push(heat_verify(n)?);
    }
    for window in levels.windows(2).zip(errors.windows(2)) {
        let (ns, es) = window;
        let ratio = (ns[1] as f64) / (ns[0] as f64);
        let order = (es[0] / es[1]).ln() / ratio.ln();
        println!("observed order {}->{}: {order:.3}", ns[0], ns[1]);
    }
    Ok(())
}

fn osc_probe(
    snapshot_dir: &Path,
    center: &str,
    radii: &str,
    p: f64,
    time_scale: f64,
) -> Result<(), Error> {
    let parts: Vec<f64> = center
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad --center component `{s}`")))
        })
        .collect::<Result<_, _>>()?;
    if parts.len() != 3 {
        return Err(Error::Config("--center expects `x,y,t`".into()));
    }
    let (x0, y0, t0) = (parts[0], parts[1], parts[2]);
    let radii: Vec<f64> = radii
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad radius `{s}`")))
        })
        .collect::<Result<_, _>>()?;
    if !(p >= 2.0) || !(time_scale > 0.0) {
        return Err(Error::Config(
            "osc-probe needs p >= 2 and a positive time scale".into(),
        ));
    }

    // Load every snapshot CSV, times taken from the file names.
    let mut frames: Vec<(f64, Vec<f64>)> = Vec::new();
    let mut centers: Option<Vec<(f64, f64)>> = None;
    let entries = fs::read_dir(snapshot_dir)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", snapshot_dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().map(|e| e == "csv").unwrap_or(false))
        .collect();
    paths.sort();
    for path in paths {
        let name = path
            .file_name()
            .and_then(|n| n.to_str())
            .unwrap_or_default()
            .to_string();
        let Some(time) = parse_snapshot_time(&name) else {
            continue;
        };
        let text = fs::read_to_string(&path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let data = parse_snapshot_csv(&text)?;
        if centers.is_none() {
            centers = Some(data.x.iter().copied().zip(data.y.iter().copied()).collect());
        }
        frames.push((time, data.u));
    }
    let centers = centers
        .ok_or_else(|| Error::Config(format!("no snapshot CSVs in {}", snapshot_dir.display())))?;
    frames.sort_by(|a, b| a.0.total_cmp(&b.0));
    let frame_views: Vec<(f64, &[f64])> = frames.iter().map(|(t, u)| (*t, u.as_slice())).collect();

    println!(
        "{} snapshots, cylinder vertex ({x0}, {y0}, {t0})",
        frame_views.len()
    );
    let mut pairs = Vec::new();
    for &r in &radii {
        let tau = time_scale * r.powf(p);
        let w = oscillation(&centers, &frame_views, (x0, y0), t0, r, tau)?;
        println!("radius {r:<10} height {tau:<12.6e} oscillation {w:.6e}");
        if w > 0.0 {
            pairs.push((r, w));
        }
    }
    match holder_fit(&pairs) {
        Ok(fit) => println!(
            "fitted exponent alpha = {:.4} (log-log residual {:.3e})",
            fit.alpha, fit.residual
        ),
        Err(err) => println!("no exponent fit: {err}"),
    }
    Ok(())
}
