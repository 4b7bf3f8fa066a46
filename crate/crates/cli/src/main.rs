use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;

use helmsource_core::fbbasis::{FBExpansion, FBSpace, PolarGrid};
use helmsource_core::forward::{ForwardEngine, MeasurementSet, NamedSource, SourceSpec};
use helmsource_core::freqplan::{
    density_estimate, table_covering, zero_gap_stats, DeltaChoice, FrequencyPlan, PlanOptions,
};
use helmsource_core::kmatrix::KMatrix;
use helmsource_core::pipeline::{
    add_noise_set, paper_demo, reconstruct_from_measurements, simulate, write_demo_csv, Reference,
    DEFAULT_SAMPLES,
};
use helmsource_core::specfun::BesselZeroTable;
use helmsource_core::sve::BoundaryRule;
use helmsource_core::{Complex64, Error, Stage};

mod grid_csv;

#[derive(Parser, Debug)]
#[command(name = "helmsource", version, about = "Multi-frequency source reconstruction on a disc")]
struct Cli {
    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a measurement frequency plan.
    Plan(PlanArgs),
    /// Synthesize boundary measurements for every planned frequency.
    Simulate(SimulateArgs),
    /// Recover Fourier-Bessel coefficients from measurements.
    Reconstruct(ReconstructArgs),
    /// Relative errors of a reconstruction against a reference source.
    Evaluate(EvaluateArgs),
    /// Table of Bessel zeros j_{m,n} as CSV.
    Zeros(ZerosArgs),
    /// Estimated and exact zero counts near a sweep of points.
    Density(DensityArgs),
    /// Gap statistics of the merged zeros of several orders.
    ZeroStats(ZeroStatsArgs),
    /// Rerun one of the published experiment tables.
    PaperDemo(PaperDemoArgs),
}

#[derive(Args, Debug)]
struct PlanArgs {
    #[arg(long = "M")]
    m: u32,
    #[arg(long = "N")]
    n: u32,
    #[arg(long = "R0", default_value_t = 1.0)]
    r0: f64,
    #[arg(long = "R", default_value_t = 1.5)]
    r: f64,
    /// Wave speed, used for --report-omega.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Fixed perturbation radius.
    #[arg(long, conflicts_with = "auto_delta")]
    delta_k: Option<f64>,
    /// Largest admissible radius (default when --delta-k is absent).
    #[arg(long)]
    auto_delta: bool,
    /// Permit a radius above 1/R0.
    #[arg(long)]
    allow_wide: bool,
    /// Evaluate the admissible radius at (0, 1) only.
    #[arg(long)]
    fast_lemma1: bool,
    /// Print angular frequencies c*k next to the wavenumbers.
    #[arg(long)]
    report_omega: bool,
    /// Output file (stdout when absent).
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum EngineArg {
    Quadrature,
    Sve,
}

impl From<EngineArg> for ForwardEngine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Quadrature => ForwardEngine::Quadrature,
            EngineArg::Sve => ForwardEngine::Sve,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum RuleArg {
    Trapezoid,
    Simpson,
}

impl From<RuleArg> for BoundaryRule {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::Trapezoid => BoundaryRule::Trapezoid,
            RuleArg::Simpson => BoundaryRule::Simpson,
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct GridArgs {
    /// Radial Gauss-Legendre nodes of the source grid.
    #[arg(long, default_value_t = PolarGrid::DEFAULT_RADIAL)]
    grid_radial: usize,
    /// Angular nodes of the source grid.
    #[arg(long, default_value_t = PolarGrid::DEFAULT_ANGULAR)]
    grid_angular: usize,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    plan: PathBuf,
    /// fb-pair, smooth, discontinuous, or a coefficient JSON file.
    #[arg(long)]
    source: String,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    boundary_samples: usize,
    /// Relative L2 noise level.
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = EngineArg::Sve)]
    forward: EngineArg,
    /// Refuse under-resolved grids instead of warning.
    #[arg(long)]
    strict: bool,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReconstructArgs {
    #[arg(long)]
    plan: PathBuf,
    #[arg(long)]
    measurements: PathBuf,
    #[arg(long, value_enum, default_value_t = RuleArg::Trapezoid)]
    boundary_rule: RuleArg,
    /// Project the result onto real-valued sources.
    #[arg(long)]
    symmetrize: bool,
    /// Write K blocks and dominance margins as CSV.
    #[arg(long)]
    dump_k: Option<PathBuf>,
    /// Write the reconstructed field on the source grid as CSV.
    #[arg(long)]
    grid_out: Option<PathBuf>,
    #[command(flatten)]
    grid: GridArgs,
    /// Coefficient JSON output (stdout when absent).
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    /// fb-pair, smooth, discontinuous, coefficient JSON or field CSV.
    #[arg(long)]
    truth: String,
    /// Coefficient JSON or field CSV.
    #[arg(long)]
    recon: PathBuf,
    /// Disc radius for named sources and CSV inputs.
    #[arg(long = "R0", default_value_t = 1.0)]
    r0: f64,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ZerosArgs {
    #[arg(long, default_value_t = 10)]
    max_order: u32,
    #[arg(long, default_value_t = 10)]
    max_index: u32,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DensityArgs {
    #[arg(long, default_value_t = 2.4048)]
    alpha_start: f64,
    #[arg(long, default_value_t = 0.5769)]
    alpha_step: f64,
    /// First sweep index; 2.4048 itself lies below j_{0,1}.
    #[arg(long, default_value_t = 1)]
    first: u32,
    #[arg(long, default_value_t = 99)]
    last: u32,
    #[arg(long, default_value_t = 0.5)]
    delta_j: f64,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ZeroStatsArgs {
    #[arg(long, default_value_t = 50)]
    max_order: u32,
    #[arg(long, default_value_t = 200.0)]
    x_max: f64,
    /// Orders up to 2000 and zeros up to 3000. Slow.
    #[arg(long)]
    full: bool,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PaperDemoArgs {
    #[arg(long)]
    table: u32,
    #[arg(long, value_enum, default_value_t = EngineArg::Sve)]
    forward: EngineArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

type Result<T> = std::result::Result<T, Error>;

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn with_path<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        e => e,
    })
}

fn read_plan(path: &Path) -> Result<FrequencyPlan> {
    with_path(path, FrequencyPlan::from_json(&read(path)?))
}

fn read_expansion(path: &Path) -> Result<FBExpansion> {
    with_path(path, FBExpansion::from_json(&read(path)?))
}

fn source_from_arg(arg: &str) -> Result<SourceSpec> {
    if let Ok(named) = NamedSource::from_name(arg) {
        return Ok(SourceSpec::Named(named));
    }
    let path = Path::new(arg);
    if path.exists() {
        return Ok(SourceSpec::Expansion(read_expansion(path)?));
    }
    Err(Error::Usage(format!(
        "source '{arg}' is neither fb-pair, smooth, discontinuous nor an existing file"
    )))
}

fn is_csv(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn cmd_plan(a: &PlanArgs) -> Result<()> {
    let mut o = PlanOptions::new(a.m, a.n, a.r0, a.r);
    o.delta = match (a.delta_k, a.auto_delta) {
        (Some(d), _) => DeltaChoice::Fixed(d),
        _ => DeltaChoice::Auto,
    };
    o.allow_wide = a.allow_wide;
    o.fast_lemma1 = a.fast_lemma1;
    if !(a.c > 0.0 && a.c.is_finite()) {
        return Err(Error::Usage(format!("wave speed must be positive, got {}", a.c)));
    }
    let plan = FrequencyPlan::build(&o)?;
    eprintln!(
        "delta_k = {:.6} ({}), |Q_MN| = {}, |Q_s| = {}, bandwidth gated: {}",
        plan.delta_k,
        plan.provenance.delta_source,
        plan.q_mn.len(),
        plan.q_s.len(),
        plan.bandwidth_gated
    );
    if a.report_omega {
        for k in &plan.q_s {
            eprintln!("k = {k:.17e}  omega = {:.17e}", a.c * k);
        }
    }
    let mut w = output(a.out.as_deref())?;
    writeln!(w, "{}", plan.to_json()?)?;
    w.flush()?;
    Ok(())
}

fn cmd_simulate(a: &SimulateArgs) -> Result<()> {
    let plan = read_plan(&a.plan)?;
    let source = source_from_arg(&a.source)?;
    if a.boundary_samples < 8 || a.boundary_samples % 2 == 1 {
        return Err(Error::Usage(format!(
            "boundary sample count must be even and >= 8, got {}",
            a.boundary_samples
        )));
    }
    if !(a.noise >= 0.0 && a.noise.is_finite()) {
        return Err(Error::Usage(format!("noise level must be >= 0, got {}", a.noise)));
    }
    let grid = PolarGrid::new(plan.r0, a.grid.grid_radial, a.grid.grid_angular)?;
    let mut set = simulate(&plan, &source, a.forward.into(), a.boundary_samples, &grid, a.strict)
        .map_err(|e| e.at(Stage::Simulate))?;
    if a.noise > 0.0 {
        set = add_noise_set(&set, a.noise, a.seed).map_err(|e| e.at(Stage::Simulate))?;
    }
    info!("{} measurements at {} samples", set.measurements().len(), set.p());
    let mut w = output(a.out.as_deref())?;
    writeln!(w, "{}", set.to_json()?)?;
    w.flush()?;
    Ok(())
}

fn cmd_reconstruct(a: &ReconstructArgs) -> Result<()> {
    let plan = read_plan(&a.plan)?;
    let set = with_path(&a.measurements, MeasurementSet::from_json(&read(&a.measurements)?))?;
    let space = FBSpace::new(plan.m_max, plan.n_max, plan.r0)?;
    let rec = reconstruct_from_measurements(&plan, &space, &set, a.boundary_rule.into(), a.symmetrize)
        .map_err(|e| e.at(Stage::Reconstruct))?;
    eprintln!(
        "min dominance margin {:.4e}, {} coefficients skipped above the bandwidth",
        rec.dominance.min_margin,
        rec.skipped.len()
    );
    if let Some(path) = &a.dump_k {
        let k = KMatrix::assemble(&plan, &space)?;
        k.write_csv(BufWriter::new(File::create(path)?))?;
    }
    if let Some(path) = &a.grid_out {
        let grid = PolarGrid::new(plan.r0, a.grid.grid_radial, a.grid.grid_angular)?;
        let values = space.synthesize(&rec.expansion, &grid)?;
        grid_csv::write(&grid, &values, BufWriter::new(File::create(path)?))?;
    }
    let mut w = output(a.out.as_deref())?;
    writeln!(w, "{}", rec.expansion.to_json()?)?;
    w.flush()?;
    Ok(())
}

fn relative_l2(grid: &PolarGrid, truth: &[Complex64], approx: &[Complex64]) -> Result<f64> {
    let diff: Vec<Complex64> = truth.iter().zip(approx).map(|(a, b)| a - b).collect();
    let norm = grid.norm(truth)?;
    if norm == 0.0 {
        return Err(Error::Usage("reference field is identically zero".into()));
    }
    Ok(grid.norm(&diff)? / norm)
}

fn cmd_evaluate(a: &EvaluateArgs) -> Result<()> {
    let truth_path = Path::new(&a.truth);
    let (grid, truth) = if is_csv(truth_path) {
        let (g, v) = with_path(truth_path, grid_csv::read(&read(truth_path)?, a.r0))?;
        (g.clone(), SourceSpec::Sampled { grid: g, values: v })
    } else {
        let grid = if is_csv(&a.recon) {
            with_path(&a.recon, grid_csv::read(&read(&a.recon)?, a.r0))?.0
        } else {
            PolarGrid::new(a.r0, a.grid.grid_radial, a.grid.grid_angular)?
        };
        (grid, source_from_arg(&a.truth)?)
    };
    let doc = if is_csv(&a.recon) {
        let (g, recon) = with_path(&a.recon, grid_csv::read(&read(&a.recon)?, grid.r0()))?;
        if g != grid {
            return Err(Error::Usage("truth and reconstruction live on different grids".into()));
        }
        let total = relative_l2(&grid, &truth.sample(&grid)?, &recon)?;
        serde_json::json!({ "rel_err_total": total, "rel_err_projection": null, "rel_err_in_space": null })
    } else {
        let recon = read_expansion(&a.recon)?;
        let space = FBSpace::new(recon.m_max(), recon.n_max(), recon.r0())?;
        if (recon.r0() - grid.r0()).abs() > 1e-12 * grid.r0() {
            return Err(Error::Usage(format!(
                "reconstruction has R0 = {}, reference grid has R0 = {}",
                recon.r0(),
                grid.r0()
            )));
        }
        let m = Reference::new(&truth, &space, grid)?.metrics(&space, &recon)?;
        serde_json::to_value(m).map_err(Error::from)?
    };
    let mut w = output(a.out.as_deref())?;
    writeln!(w, "{}", serde_json::to_string_pretty(&doc).map_err(Error::from)?)?;
    w.flush()?;
    Ok(())
}

fn cmd_zeros(a: &ZerosArgs) -> Result<()> {
    let t = BesselZeroTable::new(a.max_order, a.max_index)?;
    let mut w = output(a.out.as_deref())?;
    writeln!(w, "m,n,j_mn")?;
    for (m, n, z) in t.iter() {
        writeln!(w, "{m},{n},{z:.14e}")?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_density(a: &DensityArgs) -> Result<()> {
    if a.first > a.last {
        return Err(Error::Usage(format!("empty sweep {}..={}", a.first, a.last)));
    }
    let top = a.alpha_start + a.alpha_step * a.last as f64;
    let t = table_covering(top + a.delta_j + 1.0)?;
    let mut w = output(a.out.as_deref())?;
    writeln!(w, "i,alpha,delta_j,estimate,exact_count")?;
    for i in a.first..=a.last {
        let alpha = a.alpha_start + a.alpha_step * i as f64;
        let d = density_estimate(alpha, a.delta_j, &t)?;
        writeln!(w, "{i},{:.16e},{:.16e},{:.16e},{}", d.alpha, d.delta_j, d.estimate, d.exact_count)?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_zero_stats(a: &ZeroStatsArgs) -> Result<()> {
    let (order, x) = if a.full { (2000, 3000.0) } else { (a.max_order, a.x_max) };
    let s = zero_gap_stats(order, x)?;
    let mut w = output(a.out.as_deref())?;
    writeln!(w, "max_order,x_max,count,max_gap,mean_gap,std_gap,min_gap")?;
    writeln!(
        w,
        "{order},{x:.16e},{},{:.16e},{:.16e},{:.16e},{:.16e}",
        s.count, s.max_gap, s.mean_gap, s.std_gap, s.min_gap
    )?;
    w.flush()?;
    Ok(())
}

fn cmd_paper_demo(a: &PaperDemoArgs) -> Result<()> {
    let columns = paper_demo(a.table, a.forward.into(), a.seed)?;
    let mut w = output(a.out.as_deref())?;
    write_demo_csv(&columns, &mut w)?;
    w.flush()?;
    Ok(())
}

/// 0 ok, 1 i/o or parse, 2 planning, 3 simulation, 4 reconstruction.
fn exit_code(e: &Error, fallback: u8) -> u8 {
    match e {
        Error::Io(_) | Error::Parse(_) | Error::Usage(_) => 1,
        Error::Stage { stage, source } => match source.as_ref() {
            Error::Io(_) | Error::Parse(_) => 1,
            _ => match stage {
                Stage::Plan => 2,
                Stage::Simulate => 3,
                Stage::Reconstruct => 4,
            },
        },
        Error::Plan(_) => 2,
        _ => fallback,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let (result, fallback) = match &cli.command {
        Command::Plan(a) => (cmd_plan(a), 2),
        Command::Simulate(a) => (cmd_simulate(a), 3),
        Command::Reconstruct(a) => (cmd_reconstruct(a), 4),
        Command::Evaluate(a) => (cmd_evaluate(a), 4),
        Command::Zeros(a) => (cmd_zeros(a), 1),
        Command::Density(a) => (cmd_density(a), 1),
        Command::ZeroStats(a) => (cmd_zero_stats(a), 1),
        Command::PaperDemo(a) => (cmd_paper_demo(a), 4),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e, fallback))
        }
    }
}
