//! Command-line front end. All analysis lives in the library; this binary
//! parses arguments, loads graphs and states, and prints reports or CSV.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 verification
//! failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ndarray::Array1;

use netosc::dynamics::{evolve_superposed, CouplingConfig, DriveSpec};
use netosc::error::{Error, Result};
use netosc::graph::{builtin, Graph};
use netosc::report;
use netosc::resonance::{
    forced_damped, forced_undamped, resonance_frequencies, resonance_map, sup_position,
    TRANSPARENCY_TOL,
};
use netosc::spectral::laplacian_spectrum;
use netosc::swing::{steady_state, swing_solve, transient_metrics, PowerProfile};
use netosc::sync::{empirical_sync_time, first_return_times, sync_time_bounds, OnUnexcited};
use netosc::trajectory::{time_grid, State, Trajectory};

#[derive(Parser)]
#[command(
    name = "netosc",
    about = "Spectral analysis and exact dynamics for networks of coupled harmonic oscillators",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphArgs {
    /// Builtin dataset: toy4, zachary, path:N, cycle:N, complete:N,
    /// clique_pendant:N
    #[arg(long)]
    builtin: Option<String>,
    /// Edge-list file (two 1-based ids per line, '#' comments). Relative
    /// paths also resolve under $NETOSC_DATA_DIR.
    #[arg(long)]
    edges: Option<PathBuf>,
}

impl GraphArgs {
    fn load(&self) -> Result<(Graph, String)> {
        match (&self.builtin, &self.edges) {
            (Some(name), None) => Ok((builtin(name)?, name.clone())),
            (None, Some(path)) => {
                let resolved = resolve_data_path(path);
                let text = std::fs::read_to_string(&resolved)?;
                Ok((
                    Graph::from_edge_list(&text)?,
                    resolved.display().to_string(),
                ))
            }
            _ => Err(Error::InvalidArgument(
                "exactly one of --builtin or --edges is required".into(),
            )),
        }
    }
}

fn resolve_data_path(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    match std::env::var_os("NETOSC_DATA_DIR") {
        Some(dir) => {
            let candidate = PathBuf::from(dir).join(path);
            if candidate.exists() {
                candidate
            } else {
                path.to_path_buf()
            }
        }
        None => path.to_path_buf(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Case {
    /// Elastic coupling (c1=1, c2=1)
    Coupled,
    /// Damping coupling (c1=1, c2'=alpha)
    Damped,
    /// Elastic coupling with a sinusoidal force
    Forced,
    /// Damping coupling with a sinusoidal force
    DampedForced,
    /// Linear swing equation (c2=1, c1'=gamma) with constant power
    Swing,
}

#[derive(Subcommand)]
enum Cmd {
    /// Laplacian spectrum, resonance frequencies, connectivity and density
    Spectrum {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Exact trajectory for one coupling regime, written as CSV
    Simulate {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum)]
        case: Case,
        /// Initial positions: comma list, file path, or sparse e:NODE=VALUE
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<String>,
        /// Initial velocities, same syntax as --x0
        #[arg(long, allow_hyphen_values = true)]
        v0: Option<String>,
        #[arg(long, default_value_t = 20.0)]
        t_max: f64,
        #[arg(long, default_value_t = 0.025)]
        dt: f64,
        /// Inter-node damping scale for the damped cases
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Driven node for the forced cases (1-based)
        #[arg(long, default_value_t = 1)]
        force_node: usize,
        #[arg(long, default_value_t = 1.0)]
        f0: f64,
        /// Driving frequency (required by the forced cases)
        #[arg(long)]
        omega: Option<f64>,
        /// Damping coefficient for the swing case
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        /// Power vector for the swing case, same syntax as --x0
        #[arg(long, allow_hyphen_values = true)]
        power: Option<String>,
        /// Subtract the mean from the power vector
        #[arg(long)]
        rebalance: bool,
        /// Superpose the forced response on a nonzero initial state
        #[arg(long)]
        superpose: bool,
        /// Output CSV path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Synchronization decay rate, time bounds and empirical settle times
    Sync {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        v0: Option<String>,
        #[arg(long, default_value_t = 1e-3)]
        epsilon: f64,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Also evolve the network and measure per-node settle times
        #[arg(long)]
        empirical: bool,
        /// Grid step for the empirical measurement
        #[arg(long, default_value_t = 0.025)]
        dt: f64,
        /// Horizon for the empirical measurement (3x the mean bound when omitted)
        #[arg(long)]
        t_max: Option<f64>,
        /// Descend to the next mode when the dominant one is unexcited
        #[arg(long)]
        next_mode: bool,
    },
    /// Resonance frequencies, influence table and node classification
    Resonance {
        #[command(flatten)]
        graph: GraphArgs,
        /// Source node (1-based)
        #[arg(long, default_value_t = 1)]
        source: usize,
        /// Distinct mode index to classify (1-based, descending)
        #[arg(long)]
        mode: Option<usize>,
        /// Eigenvector component tolerance for transparency
        #[arg(long, default_value_t = TRANSPARENCY_TOL)]
        tol: f64,
        /// Write the forced trajectory at --omega to --out
        #[arg(long)]
        forced: bool,
        /// Add damping coupling to the forced run
        #[arg(long)]
        damped: bool,
        #[arg(long)]
        omega: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        f0: f64,
        #[arg(long, default_value_t = 200.0)]
        t_max: f64,
        #[arg(long, default_value_t = 0.025)]
        dt: f64,
        /// Sweep amplitudes over frequencies START:END:COUNT
        #[arg(long)]
        sweep: Option<String>,
        /// Worker threads for the sweep
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Swing-equation steady state, trajectory and transient metrics
    Swing {
        #[command(flatten)]
        graph: GraphArgs,
        /// Power vector: comma list, file path, or sparse e:NODE=VALUE
        #[arg(long, allow_hyphen_values = true)]
        power: String,
        #[arg(long)]
        rebalance: bool,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value_t = 60.0)]
        t_max: f64,
        #[arg(long, default_value_t = 0.1)]
        dt: f64,
        /// Report transient metrics for one node only
        #[arg(long)]
        node: Option<usize>,
        /// Write the trajectory CSV here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Eigenvalue table of the damping-coupled state matrix and its polar factors
    Polar {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Run the embedded verification suite
    Verify,
}

/// Parses an initial-state or power vector: sparse `e:NODE=VALUE[,...]`,
/// a file with one value per line, or a comma list of n values.
fn parse_vector(spec: &str, n: usize) -> Result<Array1<f64>> {
    let spec = spec.trim();
    if spec.starts_with("e:") {
        let mut out = Array1::zeros(n);
        for term in spec.split(',') {
            let body = term.trim().strip_prefix("e:").ok_or_else(|| {
                Error::InvalidArgument(format!("sparse term '{term}' must start with e:"))
            })?;
            let (node, value) = body.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!("sparse term '{term}' needs NODE=VALUE"))
            })?;
            let node: usize = node
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad node id '{node}'")))?;
            if node < 1 || node > n {
                return Err(Error::NodeOutOfRange(node, n));
            }
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad value '{value}'")))?;
            out[node - 1] = value;
        }
        return Ok(out);
    }
    let path = resolve_data_path(Path::new(spec));
    if path.exists() {
        let text = std::fs::read_to_string(&path)?;
        let vals: Vec<f64> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                l.parse::<f64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad number '{l}' in {spec}")))
            })
            .collect::<Result<_>>()?;
        if vals.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{spec}: {} values for {n} nodes",
                vals.len()
            )));
        }
        return Ok(Array1::from_vec(vals));
    }
    let vals: Vec<f64> = spec
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("bad number '{t}'")))
        })
        .collect::<Result<_>>()?;
    if vals.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} values for {n} nodes",
            vals.len()
        )));
    }
    Ok(Array1::from_vec(vals))
}

fn parse_state(x0: &Option<String>, v0: &Option<String>, n: usize) -> Result<State> {
    let x = match x0 {
        Some(s) => parse_vector(s, n)?,
        None => Array1::zeros(n),
    };
    let v = match v0 {
        Some(s) => parse_vector(s, n)?,
        None => Array1::zeros(n),
    };
    State::new(x, v)
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, content)?;
            Ok(())
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn write_trajectory(traj: &Trajectory, out: &Option<PathBuf>) -> Result<()> {
    emit(out, &traj.to_csv())
}

fn run_spectrum(graph: GraphArgs) -> Result<()> {
    let (g, name) = graph.load()?;
    let dec = laplacian_spectrum(&g)?;
    println!("# netosc spectrum | graph={name}");
    print!("{}", report::spectrum_report(&g, &dec)?);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_simulate(
    graph: GraphArgs,
    case: Case,
    x0: Option<String>,
    v0: Option<String>,
    t_max: f64,
    dt: f64,
    alpha: f64,
    force_node: usize,
    f0: f64,
    omega: Option<f64>,
    gamma: f64,
    power: Option<String>,
    rebalance: bool,
    superpose: bool,
    out: Option<PathBuf>,
) -> Result<()> {
    let (g, _) = graph.load()?;
    let n = g.node_count();
    let y0 = parse_state(&x0, &v0, n)?;
    let times = time_grid(dt, t_max)?;

    let (cfg, drive) = match case {
        Case::Coupled => (CouplingConfig::coupled(), DriveSpec::None),
        Case::Damped => (CouplingConfig::coupled_damped(alpha), DriveSpec::None),
        Case::Forced | Case::DampedForced => {
            let omega = omega
                .ok_or_else(|| Error::InvalidArgument("the forced cases require --omega".into()))?;
            let cfg = if case == Case::Forced {
                CouplingConfig::coupled()
            } else {
                CouplingConfig::coupled_damped(alpha)
            };
            (
                cfg,
                DriveSpec::Sinusoid {
                    node: force_node,
                    amplitude: f0,
                    frequency: omega,
                },
            )
        }
        Case::Swing => {
            let spec = power
                .ok_or_else(|| Error::InvalidArgument("the swing case requires --power".into()))?;
            let p = parse_vector(&spec, n)?;
            let prof = if rebalance {
                PowerProfile::rebalanced(p, gamma)?
            } else {
                PowerProfile::new(p, gamma)?
            };
            (
                CouplingConfig::swing(prof.gamma()),
                DriveSpec::ConstantPower(prof.power().clone()),
            )
        }
    };

    let traj = if superpose {
        evolve_superposed(&g, &cfg, &drive, &y0, &times)?
    } else {
        netosc::dynamics::evolve(&g, &cfg, &drive, &y0, &times)?
    };
    write_trajectory(&traj, &out)
}

#[allow(clippy::too_many_arguments)]
fn run_sync(
    graph: GraphArgs,
    x0: Option<String>,
    v0: Option<String>,
    epsilon: f64,
    alpha: f64,
    empirical: bool,
    dt: f64,
    t_max: Option<f64>,
    next_mode: bool,
) -> Result<()> {
    let (g, name) = graph.load()?;
    let y0 = parse_state(&x0, &v0, g.node_count())?;
    let mode = if next_mode {
        OnUnexcited::NextMode
    } else {
        OnUnexcited::Fail
    };
    let mut rep = sync_time_bounds(&g, &y0, epsilon, alpha, mode)?;
    println!("# netosc sync | graph={name} | epsilon={epsilon} alpha={alpha} dt={dt}");
    if empirical {
        let horizon = t_max.unwrap_or((3.0 * rep.mean_bound_time).max(10.0 * dt));
        let times = time_grid(dt, horizon)?;
        let traj = evolve_superposed(
            &g,
            &CouplingConfig::coupled_damped(alpha),
            &DriveSpec::None,
            &y0,
            &times,
        )?;
        rep.empirical = Some(empirical_sync_time(&traj, epsilon)?);
        let ret = first_return_times(&traj, epsilon)?;
        print!("{}", report::sync_report_text(&rep));
        println!("first-return mean: {:.3}  max: {:.3}", ret.mean, ret.max);
    } else {
        print!("{}", report::sync_report_text(&rep));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_resonance(
    graph: GraphArgs,
    source: usize,
    mode: Option<usize>,
    tol: f64,
    forced: bool,
    damped: bool,
    omega: Option<f64>,
    f0: f64,
    t_max: f64,
    dt: f64,
    sweep: Option<String>,
    jobs: usize,
    out: Option<PathBuf>,
) -> Result<()> {
    let (g, name) = graph.load()?;
    let dec = laplacian_spectrum(&g)?;
    println!("# netosc resonance | graph={name} | source={source} f0={f0}");
    let freqs = resonance_frequencies(&g, 1.0, 1.0)?;
    let distinct = dec.distinct_modes();
    println!("{:>4} {:>12} {:>12} {:>5}", "i", "mu", "omega", "mult");
    let mut full_idx = 0;
    for (i, m) in distinct.iter().enumerate() {
        println!(
            "{:>4} {:>12.6} {:>12.6} {:>5}",
            i + 1,
            m.value.max(0.0),
            freqs[full_idx],
            m.multiplicity
        );
        full_idx += m.multiplicity;
    }

    if let Some(mode) = mode {
        let map = resonance_map(&g, source, mode, tol)?;
        print!("{}", report::resonance_map_report(&map));
        println!("influence of source {source} in mode {mode}:");
        for k in 1..=g.node_count() {
            println!(
                "  node {:>3}: {:+.9}",
                k,
                netosc::resonance::influence(&g, source, k, mode)?
            );
        }
    }

    if let Some(spec) = sweep {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidArgument(
                "--sweep wants START:END:COUNT".into(),
            ));
        }
        let start: f64 = parts[0]
            .parse()
            .map_err(|_| Error::InvalidArgument("bad sweep start".into()))?;
        let end: f64 = parts[1]
            .parse()
            .map_err(|_| Error::InvalidArgument("bad sweep end".into()))?;
        let count: usize = parts[2]
            .parse()
            .map_err(|_| Error::InvalidArgument("bad sweep count".into()))?;
        if count < 2 || !(end > start) || !(start > 0.0) {
            return Err(Error::InvalidArgument(
                "sweep needs 0 < START < END and COUNT >= 2".into(),
            ));
        }
        let omegas: Vec<f64> = (0..count)
            .map(|i| start + (end - start) * i as f64 / (count - 1) as f64)
            .collect();
        let sup = sweep_amplitudes(&g, source, f0, &omegas, t_max, dt, damped, jobs.max(1))?;
        println!("frequency sweep (sup |x| over any node, horizon {t_max}):");
        for (w, s) in omegas.iter().zip(&sup) {
            println!("  omega {w:>9.5}: {s:>12.5}");
        }
    }

    if forced {
        let omega =
            omega.ok_or_else(|| Error::InvalidArgument("--forced requires --omega".into()))?;
        let times = time_grid(dt, t_max)?;
        let traj = if damped {
            forced_damped(&g, source, f0, omega, &times)?
        } else {
            forced_undamped(&g, source, f0, omega, &times)?
        };
        write_trajectory(&traj, &out)?;
    }
    Ok(())
}

/// Largest |x| over all nodes for each drive frequency, optionally spread
/// over worker threads (each frequency is independent).
fn sweep_amplitudes(
    g: &Graph,
    source: usize,
    f0: f64,
    omegas: &[f64],
    t_max: f64,
    dt: f64,
    damped: bool,
    jobs: usize,
) -> Result<Vec<f64>> {
    let times = time_grid(dt, t_max)?;
    let worker = |w: f64| -> Result<f64> {
        let traj = if damped {
            forced_damped(g, source, f0, w, &times)?
        } else {
            forced_undamped(g, source, f0, w, &times)?
        };
        let mut sup: f64 = 0.0;
        for node in 1..=g.node_count() {
            sup = sup.max(sup_position(&traj, node)?);
        }
        Ok(sup)
    };
    if jobs <= 1 {
        return omegas.iter().map(|&w| worker(w)).collect();
    }
    let chunk = omegas.len().div_ceil(jobs);
    let mut results: Vec<Result<Vec<f64>>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = omegas
            .chunks(chunk)
            .map(|ws| {
                scope.spawn(move || ws.iter().map(|&w| worker(w)).collect::<Result<Vec<f64>>>())
            })
            .collect();
        for h in handles {
            results.push(h.join().expect("sweep worker panicked"));
        }
    });
    let mut flat = Vec::with_capacity(omegas.len());
    for r in results {
        flat.extend(r?);
    }
    Ok(flat)
}

#[allow(clippy::too_many_arguments)]
fn run_swing(
    graph: GraphArgs,
    power: String,
    rebalance: bool,
    gamma: f64,
    t_max: f64,
    dt: f64,
    node: Option<usize>,
    out: Option<PathBuf>,
) -> Result<()> {
    let (g, name) = graph.load()?;
    let n = g.node_count();
    let p = parse_vector(&power, n)?;
    let prof = if rebalance {
        PowerProfile::rebalanced(p, gamma)?
    } else {
        PowerProfile::new(p, gamma)?
    };
    println!("# netosc swing | graph={name} | gamma={gamma} dt={dt} t_max={t_max}");
    let x_tilde = steady_state(&g, &prof)?;
    println!("steady state (minimum-norm solution of L x = p):");
    for (i, v) in x_tilde.iter().enumerate() {
        println!("  node {:>3}: {v:+.7}", i + 1);
    }
    let times = time_grid(dt, t_max)?;
    let traj = swing_solve(&g, &prof, &State::zero(n), &times)?;
    let nodes: Vec<usize> = match node {
        Some(k) => vec![k],
        None => (1..=n).collect(),
    };
    let mut metrics = Vec::new();
    for k in nodes {
        match transient_metrics(&traj, k) {
            Ok(m) => metrics.push(m),
            Err(Error::NoPeak(_)) => eprintln!("node {k}: no interior extremum"),
            Err(e) => return Err(e),
        }
    }
    print!("{}", report::transient_report(&metrics));
    if out.is_some() {
        write_trajectory(&traj, &out)?;
    }
    Ok(())
}

fn run_polar(graph: GraphArgs) -> Result<()> {
    let (g, name) = graph.load()?;
    let f = netosc::polar::polar_decompose(&g)?;
    println!("# netosc polar | graph={name}");
    print!("{}", report::polar_report(&f));
    Ok(())
}

fn dispatch(cmd: Cmd) -> Result<u8> {
    match cmd {
        Cmd::Spectrum { graph } => run_spectrum(graph).map(|_| 0),
        Cmd::Simulate {
            graph,
            case,
            x0,
            v0,
            t_max,
            dt,
            alpha,
            force_node,
            f0,
            omega,
            gamma,
            power,
            rebalance,
            superpose,
            out,
        } => run_simulate(
            graph, case, x0, v0, t_max, dt, alpha, force_node, f0, omega, gamma, power, rebalance,
            superpose, out,
        )
        .map(|_| 0),
        Cmd::Sync {
            graph,
            x0,
            v0,
            epsilon,
            alpha,
            empirical,
            dt,
            t_max,
            next_mode,
        } => run_sync(
            graph, x0, v0, epsilon, alpha, empirical, dt, t_max, next_mode,
        )
        .map(|_| 0),
        Cmd::Resonance {
            graph,
            source,
            mode,
            tol,
            forced,
            damped,
            omega,
            f0,
            t_max,
            dt,
            sweep,
            jobs,
            out,
        } => run_resonance(
            graph, source, mode, tol, forced, damped, omega, f0, t_max, dt, sweep, jobs, out,
        )
        .map(|_| 0),
        Cmd::Swing {
            graph,
            power,
            rebalance,
            gamma,
            t_max,
            dt,
            node,
            out,
        } => run_swing(graph, power, rebalance, gamma, t_max, dt, node, out).map(|_| 0),
        Cmd::Polar { graph } => run_polar(graph).map(|_| 0),
        Cmd::Verify => {
            let results = netosc::verify::run_all()?;
            print!("{}", netosc::verify::render(&results));
            Ok(if netosc::verify::all_passed(&results) {
                0
            } else {
                3
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
