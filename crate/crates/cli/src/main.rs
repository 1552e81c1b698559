//! `qantenna`: batch front end for qubit antenna-mode analysis.

mod svg;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;

use qubit_antenna::devices::reference_junction;
use qubit_antenna::duality::BabinetEta;
use qubit_antenna::geometry::parse_geometry;
use qubit_antenna::junction::parse_junction;
use qubit_antenna::mom::solve_currents;
use qubit_antenna::pipeline::{analyze_device, PipelineConfig};
use qubit_antenna::poisoning::{effective_temperature, PoisoningReport};
use qubit_antenna::radiative::{t1_report, Island, T1Config, T1Method};
use qubit_antenna::reproduce::{match_plot, match_table, reproduce, Check, Figure};
use qubit_antenna::{Error, FrequencyGrid, JunctionModel, QubitGeometry, SolverConfig};

const EXIT_CONFIG: u8 = 2;
const EXIT_SOLVER: u8 = 3;
const EXIT_REPRODUCE: u8 = 4;

#[derive(Parser)]
#[command(name = "qantenna", version, about = "Antenna-mode analysis of superconducting qubits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Radiation impedance sweep of a qubit geometry.
    Sweep(SweepArgs),
    /// Conjugate-match coupling efficiency against a junction.
    Match(SweepArgs),
    /// Pair-breaking photon absorption rate, or its inverse temperature.
    Poison(PoisonArgs),
    /// Radiative T1 limit of a transmon island.
    T1(T1Args),
    /// Regenerates canned figures and compares them with reference values.
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// Geometry JSON file.
    #[arg(long)]
    geometry: PathBuf,
    /// Junction JSON file (defaults to R_n = 7 kOhm, C_j = 9 fF).
    #[arg(long)]
    junction: Option<PathBuf>,
    #[arg(long)]
    f_start_ghz: f64,
    #[arg(long)]
    f_stop_ghz: f64,
    #[arg(long, default_value_t = 201)]
    n_points: usize,
    #[arg(long, default_value = "qantenna-out")]
    out: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
    /// Write wire-space segment currents to this CSV.
    #[arg(long)]
    dump_currents: Option<PathBuf>,
    /// Frequency for --dump-currents (defaults to the window center).
    #[arg(long, requires = "dump_currents")]
    dump_at_ghz: Option<f64>,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, default_value_t = 20)]
    segments_per_wavelength: usize,
    /// Wave impedance used in the Babinet map.
    #[arg(long, value_enum, default_value_t = EtaArg::Vacuum)]
    babinet_eta: EtaArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum EtaArg {
    Vacuum,
    WireMedium,
}

impl SolverArgs {
    fn pipeline(&self) -> PipelineConfig {
        PipelineConfig {
            solver: SolverConfig::default().with_segments_per_wavelength(self.segments_per_wavelength),
            babinet: match self.babinet_eta {
                EtaArg::Vacuum => BabinetEta::Vacuum,
                EtaArg::WireMedium => BabinetEta::WireMedium,
            },
            loop_facets: None,
        }
    }
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("given").required(true).args(["t_mk", "gamma_hz"])))]
struct PoisonArgs {
    #[arg(long)]
    f0_ghz: f64,
    #[arg(long)]
    delta_f_n_ghz: f64,
    /// Blackbody temperature; gives the forward rate.
    #[arg(long)]
    t_mk: Option<f64>,
    /// Measured rate; gives the effective temperature.
    #[arg(long)]
    gamma_hz: Option<f64>,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("island").required(true).args(["r_i_um", "area_um2", "differential"])))]
struct T1Args {
    #[arg(long)]
    c_ff: f64,
    #[arg(long)]
    f01_ghz: f64,
    #[arg(long)]
    eps_eff: f64,
    /// Circular island radius.
    #[arg(long)]
    r_i_um: Option<f64>,
    /// Gap width for the finite-gap correction (circular island only).
    #[arg(long, requires = "r_i_um")]
    gap_w_um: Option<f64>,
    /// Island area, mapped to an equal-area circle.
    #[arg(long)]
    area_um2: Option<f64>,
    #[arg(long)]
    differential: bool,
    #[arg(long, value_enum, default_value_t = MethodArg::Analytic)]
    method: MethodArg,
    #[arg(long, default_value_t = 20)]
    segments_per_wavelength: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Analytic,
    Mom,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Figure ids (closed-form, fig1c, fig3, fig4, fig5, fig6, s5, s6) or `all`.
    #[arg(default_value = "all")]
    figures: Vec<String>,
    #[arg(long, default_value = "qantenna-out")]
    out: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
    ReproduceFailed(usize),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::ReproduceFailed(n) => write!(f, "{n} reproduction check(s) failed"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_solver_error() => EXIT_SOLVER,
            CliError::ReproduceFailed(_) => EXIT_REPRODUCE,
            _ => EXIT_CONFIG,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(a) => cmd_sweep(&a, false),
        Command::Match(a) => cmd_sweep(&a, true),
        Command::Poison(a) => cmd_poison(&a),
        Command::T1(a) => cmd_t1(&a),
        Command::Reproduce(a) => cmd_reproduce(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn write(path: &Path, contents: impl AsRef<[u8]>) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.to_path_buf(), e))?;
    }
    fs::write(path, contents).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    info!("wrote {}", path.display());
    Ok(())
}

fn to_json_string(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn load_geometry(path: &Path) -> CliResult<QubitGeometry> {
    Ok(parse_geometry(&read(path)?)?)
}

fn load_junction(path: Option<&Path>) -> CliResult<JunctionModel> {
    match path {
        Some(p) => Ok(parse_junction(&read(p)?)?),
        None => Ok(reference_junction()),
    }
}

fn window(a: &SweepArgs) -> CliResult<FrequencyGrid> {
    let ordered = a.f_stop_ghz > a.f_start_ghz;
    let single = a.n_points == 1 && a.f_stop_ghz == a.f_start_ghz;
    if !(ordered || single) {
        return Err(CliError::Usage(format!(
            "empty frequency window: f-start {} GHz, f-stop {} GHz",
            a.f_start_ghz, a.f_stop_ghz
        )));
    }
    if a.n_points == 1 {
        return Ok(FrequencyGrid::single(a.f_start_ghz * 1e9)?);
    }
    Ok(FrequencyGrid::linear(a.f_start_ghz * 1e9, a.f_stop_ghz * 1e9, a.n_points)?)
}

fn cmd_sweep(a: &SweepArgs, with_match: bool) -> CliResult<()> {
    let geometry = load_geometry(&a.geometry)?;
    let junction = load_junction(a.junction.as_deref())?;
    let grid = window(a)?;
    let cfg = a.solver.pipeline();
    let analysis = analyze_device(&geometry, &junction, &grid, &cfg)?;
    let report = &analysis.report;
    let table = match_table("impedance", report);

    if with_match {
        write(&a.out.join("match.csv"), report.to_csv())?;
        write(&a.out.join("match.json"), to_json_string(&report.summary_json()))?;
        let plot = match_plot("match", "Radiation impedance and coupling efficiency", &[(0, "")], vec![(
            report.f0,
            "f0".into(),
        )]);
        write(&a.out.join("match.svg"), svg::render(&plot, &[table]))?;
        println!("{}", to_json_string(&report.summary_json()).trim_end());
    } else {
        write(&a.out.join("impedance.csv"), table.to_csv())?;
        let mut plot = match_plot("impedance", "Radiation impedance", &[(0, "")], Vec::new());
        plot.panels.truncate(2);
        write(&a.out.join("impedance.svg"), svg::render(&plot, &[table]))?;
        let peaks: Vec<String> = analysis
            .sweep
            .radiation
            .resistance_peaks()
            .iter()
            .map(|f| format!("{:.3}", f * 1e-9))
            .collect();
        println!("Re Z_rad peaks (GHz): [{}]", peaks.join(", "));
    }

    if let Some(path) = &a.dump_currents {
        let f = a.dump_at_ghz.map_or(0.5 * (grid.f_start() + grid.f_stop()), |g| g * 1e9);
        let refined = analysis
            .sweep
            .model
            .discretize(cfg.solver.segments_per_wavelength, grid.f_stop().max(f))?;
        let solution = solve_currents(&refined, f, &cfg.solver)?;
        write(path, solution.currents_csv())?;
    }
    Ok(())
}

fn cmd_poison(a: &PoisonArgs) -> CliResult<()> {
    let f0 = a.f0_ghz * 1e9;
    let df = a.delta_f_n_ghz * 1e9;
    let json = match (a.t_mk, a.gamma_hz) {
        (Some(t), _) => PoisoningReport::from_bandwidth(f0, df, t * 1e-3)?.to_json(),
        (None, Some(gamma)) => {
            let t = effective_temperature(f0, df, gamma)?;
            PoisoningReport::from_bandwidth(f0, df, t)?.to_json()
        }
        (None, None) => unreachable!("clap enforces one of --t-mk / --gamma-hz"),
    };
    let text = to_json_string(&json);
    print!("{text}");
    if let Some(p) = &a.out {
        write(p, &text)?;
    }
    Ok(())
}

fn cmd_t1(a: &T1Args) -> CliResult<()> {
    let island = if let Some(r) = a.r_i_um {
        Island::Circular {
            r_i: r * 1e-6,
            gap_w: a.gap_w_um.map(|w| w * 1e-6),
        }
    } else if let Some(area) = a.area_um2 {
        Island::Area { a: area * 1e-12 }
    } else {
        Island::Differential
    };
    let cfg = T1Config {
        c_qubit: a.c_ff * 1e-15,
        f01: a.f01_ghz * 1e9,
        eps_eff: a.eps_eff,
        island,
    };
    let method = match a.method {
        MethodArg::Analytic => T1Method::Analytic,
        MethodArg::Mom => T1Method::Mom,
    };
    let solver = SolverConfig::default().with_segments_per_wavelength(a.segments_per_wavelength);
    let report = t1_report(&cfg, method, &solver)?;
    let text = to_json_string(&serde_json::to_value(report).expect("T1Report serializes"));
    print!("{text}");
    if let Some(p) = &a.out {
        write(p, &text)?;
    }
    Ok(())
}

fn parse_figures(ids: &[String]) -> CliResult<Vec<Figure>> {
    if ids.iter().any(|s| s == "all") {
        return Ok(Figure::ALL.to_vec());
    }
    Ok(ids.iter().map(|s| s.parse::<Figure>()).collect::<Result<Vec<_>, _>>()?)
}

fn cmd_reproduce(a: &ReproduceArgs) -> CliResult<()> {
    let figures = parse_figures(&a.figures)?;
    let cfg = a.solver.pipeline();
    let mut checks: Vec<Check> = Vec::new();
    for fig in figures {
        info!("reproducing {fig}");
        let out = reproduce(fig, &cfg)?;
        let dir = a.out.join(fig.id());
        for t in &out.tables {
            write(&dir.join(format!("{}.csv", t.name)), t.to_csv())?;
        }
        for p in &out.plots {
            write(&dir.join(format!("{}.svg", p.name)), svg::render(p, &out.tables))?;
        }
        checks.extend(out.checks);
    }
    write(&a.out.join("summary.csv"), summary_csv(&checks))?;
    print!("{}", summary_table(&checks));
    let failed = checks.iter().filter(|c| !c.pass).count();
    if failed > 0 {
        return Err(CliError::ReproduceFailed(failed));
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn summary_csv(checks: &[Check]) -> String {
    let mut s = String::from("figure,check,expected,computed,pass\n");
    for c in checks {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            c.figure,
            csv_field(&c.name),
            csv_field(&c.expected),
            csv_field(&c.computed),
            if c.pass { "PASS" } else { "FAIL" }
        ));
    }
    s
}

fn summary_table(checks: &[Check]) -> String {
    let w_fig = checks.iter().map(|c| c.figure.id().len()).max().unwrap_or(6).max(6);
    let w_name = checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(5).max(5);
    let w_exp = checks.iter().map(|c| c.expected.chars().count()).max().unwrap_or(8).max(8);
    let w_comp = checks.iter().map(|c| c.computed.chars().count()).max().unwrap_or(8).max(8);
    let mut s = format!(
        "{:<w_fig$}  {:<w_name$}  {:<w_exp$}  {:<w_comp$}  result\n",
        "figure", "check", "expected", "computed"
    );
    for c in checks {
        s.push_str(&format!(
            "{:<w_fig$}  {:<w_name$}  {:<w_exp$}  {:<w_comp$}  {}\n",
            c.figure.id(),
            c.name,
            c.expected,
            c.computed,
            if c.pass { "PASS" } else { "FAIL" }
        ));
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    s.push_str(&format!("{} checks, {} passed, {} failed\n", checks.len(), checks.len() - failed, failed));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), EXIT_CONFIG);
        assert_eq!(CliError::ReproduceFailed(1).exit_code(), EXIT_REPRODUCE);
        let singular = Error::SingularMatrix {
            freq_hz: 1e9,
            condition: 1e20,
        };
        assert_eq!(CliError::Core(singular).exit_code(), EXIT_SOLVER);
        assert_eq!(CliError::Core(Error::Config("bad".into())).exit_code(), EXIT_CONFIG);
    }

    #[test]
    fn csv_fields_are_quoted_when_needed() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
    }

    #[test]
    fn figures_parse() {
        assert_eq!(parse_figures(&["all".into()]).unwrap().len(), Figure::ALL.len());
        assert_eq!(parse_figures(&["s5".into()]).unwrap(), vec![Figure::S5]);
        assert!(parse_figures(&["fig9".into()]).is_err());
    }
}
