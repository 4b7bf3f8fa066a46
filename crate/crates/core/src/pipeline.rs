//! End-to-end reconstruction: plan, simulate (or ingest) measurements, extract
//! SVE coefficients at the assigned frequencies, solve `K S = U`, synthesise and
//! score against the source.

use std::io::Write;
use std::time::Instant;

use log::{info, warn};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Stage};
use crate::fbbasis::{FBExpansion, FBSpace, PolarGrid};
use crate::forward::{
    add_noise, forward_quadrature, forward_sve_in, ForwardEngine, GridSeriesForward,
    MeasurementSet, NamedSource, SourceSpec,
};
use crate::freqplan::{DeltaChoice, FrequencyPlan, PlanOptions};
use crate::kmatrix::{DominanceReport, KMatrix};
use crate::sve::{bandwidth_lower, extract_coefficient, BoundaryRule, SingularSystem};

/// Default number of boundary samples.
pub const DEFAULT_SAMPLES: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub m_max: u32,
    pub n_max: u32,
    pub r0: f64,
    pub r: f64,
    /// Wave speed; frequencies are wavenumbers `k = omega / c`.
    pub c: f64,
    pub delta: DeltaChoice,
    pub allow_wide: bool,
    pub fast_lemma1: bool,
    pub source: SourceSpec,
    pub p_count: usize,
    pub noise: f64,
    pub seed: u64,
    pub engine: ForwardEngine,
    pub rule: BoundaryRule,
    /// Grid for quadrature, grid-series forward and metrics.
    pub grid_radial: usize,
    pub grid_angular: usize,
    pub symmetrize: bool,
    pub strict: bool,
}

impl ExperimentConfig {
    /// Unit source disc inside a circle of radius 1.5, unit wave speed, 200 samples.
    pub fn new(m_max: u32, n_max: u32, source: SourceSpec) -> Self {
        Self {
            m_max,
            n_max,
            r0: 1.0,
            r: 1.5,
            c: 1.0,
            delta: DeltaChoice::Auto,
            allow_wide: false,
            fast_lemma1: false,
            source,
            p_count: DEFAULT_SAMPLES,
            noise: 0.0,
            seed: 0,
            engine: ForwardEngine::Sve,
            rule: BoundaryRule::default(),
            grid_radial: PolarGrid::DEFAULT_RADIAL,
            grid_angular: PolarGrid::DEFAULT_ANGULAR,
            symmetrize: false,
            strict: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r0 > 0.0 && self.r > self.r0 && self.r.is_finite()) {
            return Err(Error::Usage(format!(
                "need 0 < R0 < R, got R0 = {}, R = {}",
                self.r0, self.r
            )));
        }
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::Usage(format!(
                "wave speed must be positive, got {}",
                self.c
            )));
        }
        if self.n_max == 0 {
            return Err(Error::Usage("N must be at least 1".into()));
        }
        if self.p_count < 8 || self.p_count % 2 == 1 {
            return Err(Error::Usage(format!(
                "boundary sample count must be even and >= 8, got {}",
                self.p_count
            )));
        }
        if !(self.noise >= 0.0 && self.noise.is_finite()) {
            return Err(Error::Usage(format!(
                "noise level must be >= 0, got {}",
                self.noise
            )));
        }
        Ok(())
    }

    pub fn plan_options(&self) -> PlanOptions {
        PlanOptions {
            m_max: self.m_max,
            n_max: self.n_max,
            r0: self.r0,
            r: self.r,
            delta: self.delta,
            allow_wide: self.allow_wide,
            fast_lemma1: self.fast_lemma1,
        }
    }

    pub fn grid(&self) -> Result<PolarGrid> {
        PolarGrid::new(self.r0, self.grid_radial, self.grid_angular)
    }
}

/// Clean measurements of `source` at every frequency of the plan's reduced set.
pub fn simulate(
    plan: &FrequencyPlan,
    source: &SourceSpec,
    engine: ForwardEngine,
    p_count: usize,
    grid: &PolarGrid,
    strict: bool,
) -> Result<MeasurementSet> {
    let measurements = match (engine, source.as_expansion(plan.r0)?) {
        (ForwardEngine::Sve, Some(e)) => {
            let space = FBSpace::new(e.m_max(), e.n_max(), e.r0())?;
            plan.q_s
                .iter()
                .map(|&k| forward_sve_in(&space, &e, k, plan.r, p_count))
                .collect::<Result<Vec<_>>>()?
        }
        (ForwardEngine::Sve, None) => {
            let series = GridSeriesForward::new(&source.sample(grid)?, grid)?;
            plan.q_s
                .iter()
                .map(|&k| series.forward(k, plan.r, p_count, strict))
                .collect::<Result<Vec<_>>>()?
        }
        (ForwardEngine::Quadrature, _) => plan
            .q_s
            .iter()
            .map(|&k| forward_quadrature(source, k, plan.r, p_count, grid, strict))
            .collect::<Result<Vec<_>>>()?,
    };
    MeasurementSet::new(plan.r, p_count, measurements)
}

/// Noisy copy of a measurement set, one `(seed, k)` stream per frequency.
pub fn add_noise_set(set: &MeasurementSet, delta: f64, seed: u64) -> Result<MeasurementSet> {
    let noisy = set
        .measurements()
        .iter()
        .map(|m| add_noise(m, delta, seed))
        .collect::<Result<Vec<_>>>()?;
    MeasurementSet::new(set.r(), set.p(), noisy)
}

/// A coefficient left out because its order exceeds the bandwidth at its frequency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedCoefficient {
    pub m: u32,
    pub n: u32,
    pub k: f64,
    pub bandwidth: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub expansion: FBExpansion,
    /// Extracted SVE coefficients in packed order.
    pub u_hat: Vec<Complex64>,
    pub skipped: Vec<SkippedCoefficient>,
    pub dominance: DominanceReport,
}

/// Extracts `u_{+-m,i}` from the measurement at `k~_{m,i}`, one per `(m, i)`.
/// Orders above the bandwidth at their frequency are left at zero and reported.
pub fn extract_u_hat(
    plan: &FrequencyPlan,
    set: &MeasurementSet,
    rule: BoundaryRule,
) -> Result<(Vec<Complex64>, Vec<SkippedCoefficient>)> {
    if (set.r() - plan.r).abs() > 1e-12 * plan.r {
        return Err(Error::Usage(format!(
            "measurements taken at R = {}, plan has R = {}",
            set.r(),
            plan.r
        )));
    }
    let (mm, nn) = (plan.m_max, plan.n_max);
    let mut u = vec![Complex64::new(0.0, 0.0); crate::fbbasis::space_dim(mm, nn)];
    let mut skipped = Vec::new();
    for m in 0..=mm {
        for i in 1..=nn {
            let k = plan.assigned(m, i)?;
            let bw = bandwidth_lower(k, plan.r0)?;
            if m > bw {
                skipped.push(SkippedCoefficient {
                    m,
                    n: i,
                    k,
                    bandwidth: bw,
                });
                continue;
            }
            let meas = set.find(k).ok_or_else(|| {
                Error::Usage(format!("no measurement at assigned frequency k = {k}"))
            })?;
            let sys = SingularSystem::new(meas.k(), plan.r, plan.r0)?;
            let signs: &[i32] = if m == 0 {
                &[0]
            } else {
                &[m as i32, -(m as i32)]
            };
            for &s in signs {
                u[crate::fbbasis::pack_index(s, i, mm, nn)?] =
                    extract_coefficient(meas, s, &sys, rule)?;
            }
        }
    }
    if !skipped.is_empty() {
        warn!(
            "{} coefficients above the bandwidth were not extracted",
            skipped.len()
        );
    }
    Ok((u, skipped))
}

/// Solves for the FB coefficients from a measurement set.
pub fn reconstruct_from_measurements(
    plan: &FrequencyPlan,
    space: &FBSpace,
    set: &MeasurementSet,
    rule: BoundaryRule,
    symmetrize: bool,
) -> Result<Reconstruction> {
    let (u_hat, skipped) = extract_u_hat(plan, set, rule)?;
    let k = KMatrix::assemble(plan, space)?;
    let dominance = k.dominance_report();
    if !dominance.dominant {
        warn!(
            "K is not strictly diagonally dominant (minimum margin {:.3e})",
            dominance.min_margin
        );
    }
    let s = k.solve(&u_hat)?;
    let mut expansion = FBExpansion::new(plan.m_max, plan.n_max, plan.r0, s)?;
    if symmetrize {
        expansion = expansion.symmetrized_real();
    }
    Ok(Reconstruction {
        expansion,
        u_hat,
        skipped,
        dominance,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorMetrics {
    /// `||s - s_r|| / ||s||`
    pub rel_err_total: f64,
    /// `||s - s_p|| / ||s||`
    pub rel_err_projection: f64,
    /// `||s_p - s_r|| / ||s_p||`
    pub rel_err_in_space: f64,
}

/// Relative L2 errors on `grid`.
pub fn error_metrics(
    truth: &[Complex64],
    recon: &[Complex64],
    proj: &[Complex64],
    grid: &PolarGrid,
) -> Result<ErrorMetrics> {
    let diff = |a: &[Complex64], b: &[Complex64]| -> Vec<Complex64> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    };
    if recon.len() != truth.len() || proj.len() != truth.len() {
        return Err(Error::Usage("fields live on different grids".into()));
    }
    let ns = grid.norm(truth)?;
    let np = grid.norm(proj)?;
    if ns == 0.0 || np == 0.0 {
        return Err(Error::Usage("relative error against a zero field".into()));
    }
    Ok(ErrorMetrics {
        rel_err_total: grid.norm(&diff(truth, recon))? / ns,
        rel_err_projection: grid.norm(&diff(truth, proj))? / ns,
        rel_err_in_space: grid.norm(&diff(proj, recon))? / np,
    })
}

/// Source, its projection onto `S_{M,N}` and the grid they are sampled on.
#[derive(Debug, Clone)]
pub struct Reference {
    pub grid: PolarGrid,
    pub truth: Vec<Complex64>,
    pub projection: FBExpansion,
    pub projected: Vec<Complex64>,
}

impl Reference {
    pub fn new(source: &SourceSpec, space: &FBSpace, grid: PolarGrid) -> Result<Self> {
        let truth = source.sample(&grid)?;
        let projection = space.project(&truth, &grid)?;
        let projected = space.synthesize(&projection, &grid)?;
        Ok(Self {
            grid,
            truth,
            projection,
            projected,
        })
    }

    pub fn metrics(&self, space: &FBSpace, recon: &FBExpansion) -> Result<ErrorMetrics> {
        let r = space.synthesize(recon, &self.grid)?;
        error_metrics(&self.truth, &r, &self.projected, &self.grid)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanSummary {
    #[serde(rename = "M")]
    pub m_max: u32,
    #[serde(rename = "N")]
    pub n_max: u32,
    #[serde(rename = "R0")]
    pub r0: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub delta_k: f64,
    pub frequencies: Vec<f64>,
    /// `omega = c k` for each frequency.
    pub omega: Vec<f64>,
    pub bandwidth_gated: bool,
}

impl PlanSummary {
    pub fn new(plan: &FrequencyPlan, c: f64) -> Self {
        Self {
            m_max: plan.m_max,
            n_max: plan.n_max,
            r0: plan.r0,
            r: plan.r,
            delta_k: plan.delta_k,
            frequencies: plan.q_s.clone(),
            omega: plan.q_s.iter().map(|k| c * k).collect(),
            bandwidth_gated: plan.bandwidth_gated,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RuntimeStats {
    pub plan_s: f64,
    pub simulate_s: f64,
    pub reconstruct_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionReport {
    pub plan: PlanSummary,
    pub engine: ForwardEngine,
    pub rule: BoundaryRule,
    pub recovered: FBExpansion,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recovered_noisy: Option<FBExpansion>,
    pub metrics: ErrorMetrics,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics_noisy: Option<ErrorMetrics>,
    pub noise_level: f64,
    pub seed: u64,
    pub dominance: DominanceReport,
    pub skipped: Vec<SkippedCoefficient>,
    pub runtime: RuntimeStats,
}

impl ReconstructionReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Full experiment. Metrics are computed for the noiseless data and, when
/// `noise > 0`, for the noisy data as well.
pub fn run_reconstruction(cfg: &ExperimentConfig) -> Result<ReconstructionReport> {
    cfg.validate()?;
    let t0 = Instant::now();
    let plan = FrequencyPlan::build(&cfg.plan_options()).map_err(|e| e.at(Stage::Plan))?;
    run_with_plan(cfg, &plan, t0)
}

/// Same as [`run_reconstruction`] with a prebuilt plan.
pub fn run_with_plan(
    cfg: &ExperimentConfig,
    plan: &FrequencyPlan,
    t0: Instant,
) -> Result<ReconstructionReport> {
    cfg.validate()?;
    let space = FBSpace::new(plan.m_max, plan.n_max, plan.r0).map_err(|e| e.at(Stage::Plan))?;
    let plan_s = t0.elapsed().as_secs_f64();
    let t1 = Instant::now();
    let grid = cfg.grid().map_err(|e| e.at(Stage::Simulate))?;
    let clean = simulate(
        plan,
        &cfg.source,
        cfg.engine,
        cfg.p_count,
        &grid,
        cfg.strict,
    )
    .map_err(|e| e.at(Stage::Simulate))?;
    let noisy = if cfg.noise > 0.0 {
        Some(add_noise_set(&clean, cfg.noise, cfg.seed).map_err(|e| e.at(Stage::Simulate))?)
    } else {
        None
    };
    let simulate_s = t1.elapsed().as_secs_f64();
    let t2 = Instant::now();
    let rec = reconstruct_from_measurements(plan, &space, &clean, cfg.rule, cfg.symmetrize)
        .map_err(|e| e.at(Stage::Reconstruct))?;
    let rec_noisy = noisy
        .as_ref()
        .map(|set| reconstruct_from_measurements(plan, &space, set, cfg.rule, cfg.symmetrize))
        .transpose()
        .map_err(|e| e.at(Stage::Reconstruct))?;
    let reference =
        Reference::new(&cfg.source, &space, grid).map_err(|e| e.at(Stage::Reconstruct))?;
    let metrics = reference
        .metrics(&space, &rec.expansion)
        .map_err(|e| e.at(Stage::Reconstruct))?;
    let metrics_noisy = rec_noisy
        .as_ref()
        .map(|r| reference.metrics(&space, &r.expansion))
        .transpose()
        .map_err(|e| e.at(Stage::Reconstruct))?;
    let reconstruct_s = t2.elapsed().as_secs_f64();
    info!(
        "M = {}, N = {}, {} frequencies: total error {:.4}%",
        plan.m_max,
        plan.n_max,
        plan.q_s.len(),
        100.0 * metrics.rel_err_total
    );
    Ok(ReconstructionReport {
        plan: PlanSummary::new(plan, cfg.c),
        engine: cfg.engine,
        rule: cfg.rule,
        recovered: rec.expansion,
        recovered_noisy: rec_noisy.map(|r| r.expansion),
        metrics,
        metrics_noisy,
        noise_level: cfg.noise,
        seed: cfg.seed,
        dominance: rec.dominance,
        skipped: rec.skipped,
        runtime: RuntimeStats {
            plan_s,
            simulate_s,
            reconstruct_s,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationEntry {
    pub m: i32,
    pub n: u32,
    pub k: f64,
    /// `|u_full - u_projected|`
    pub error: f64,
    /// `|u_projected|`
    pub scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationReport {
    pub entries: Vec<TruncationEntry>,
    pub max_error: f64,
    pub mean_error: f64,
    pub max_scale: f64,
}

/// Difference between the SVE coefficients extracted from the full source and
/// from its projection onto `S_{M,N}`, at the plan's assigned frequencies.
pub fn truncation_diagnostic(
    source: &SourceSpec,
    cfg: &ExperimentConfig,
) -> Result<TruncationReport> {
    cfg.validate()?;
    let plan = FrequencyPlan::build(&cfg.plan_options()).map_err(|e| e.at(Stage::Plan))?;
    let space = FBSpace::new(plan.m_max, plan.n_max, plan.r0)?;
    let grid = cfg.grid()?;
    let projected = SourceSpec::Expansion(space.project(&source.sample(&grid)?, &grid)?);
    let full = simulate(&plan, source, cfg.engine, cfg.p_count, &grid, cfg.strict)
        .map_err(|e| e.at(Stage::Simulate))?;
    let proj = simulate(
        &plan,
        &projected,
        cfg.engine,
        cfg.p_count,
        &grid,
        cfg.strict,
    )
    .map_err(|e| e.at(Stage::Simulate))?;
    let (u_full, _) = extract_u_hat(&plan, &full, cfg.rule)?;
    let (u_proj, skipped) = extract_u_hat(&plan, &proj, cfg.rule)?;
    let mut entries = Vec::new();
    for idx in space.indices() {
        let a = idx.m.unsigned_abs();
        if skipped.iter().any(|s| s.m == a && s.n == idx.n) {
            continue;
        }
        let p = space.pack(idx)?;
        entries.push(TruncationEntry {
            m: idx.m,
            n: idx.n,
            k: plan.assigned(a, idx.n)?,
            error: (u_full[p] - u_proj[p]).norm(),
            scale: u_proj[p].norm(),
        });
    }
    let max_error = entries.iter().map(|e| e.error).fold(0.0, f64::max);
    let mean_error = entries.iter().map(|e| e.error).sum::<f64>() / entries.len().max(1) as f64;
    let max_scale = entries.iter().map(|e| e.scale).fold(0.0, f64::max);
    Ok(TruncationReport {
        entries,
        max_error,
        mean_error,
        max_scale,
    })
}

/// One of the published experiment tables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DemoTable {
    pub id: u32,
    pub source: NamedSource,
    pub m: u32,
    pub n: u32,
    pub ladder: [f64; 5],
}

pub const DEMO_TABLES: [DemoTable; 5] = [
    DemoTable {
        id: 2,
        source: NamedSource::FbPair,
        m: 3,
        n: 3,
        ladder: [0.25, 0.5, 0.75, 0.91, 1.5],
    },
    DemoTable {
        id: 3,
        source: NamedSource::Smooth,
        m: 3,
        n: 3,
        ladder: [0.25, 0.5, 0.75, 0.91, 1.5],
    },
    DemoTable {
        id: 4,
        source: NamedSource::Smooth,
        m: 7,
        n: 7,
        ladder: [0.25, 0.61, 0.75, 1.0, 1.5],
    },
    DemoTable {
        id: 5,
        source: NamedSource::Discontinuous,
        m: 5,
        n: 5,
        ladder: [0.25, 0.7, 0.75, 1.0, 1.5],
    },
    DemoTable {
        id: 6,
        source: NamedSource::Discontinuous,
        m: 15,
        n: 15,
        ladder: [0.25, 0.5, 0.75, 1.0, 1.5],
    },
];

pub fn demo_table(id: u32) -> Result<DemoTable> {
    DEMO_TABLES
        .iter()
        .find(|t| t.id == id)
        .copied()
        .ok_or_else(|| Error::Usage(format!("no demo table {id} (expected 2 to 6)")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemoColumn {
    pub delta_k: f64,
    pub q_s: usize,
    pub metrics: ErrorMetrics,
    pub metrics_noisy: Option<ErrorMetrics>,
    pub min_margin: f64,
}

/// Runs one column per `dk` of the table's ladder with unit geometry, `c = 1`,
/// 200 samples and 20% noise.
pub fn paper_demo(id: u32, engine: ForwardEngine, seed: u64) -> Result<Vec<DemoColumn>> {
    let t = demo_table(id)?;
    t.ladder
        .iter()
        .map(|&dk| {
            let mut cfg = ExperimentConfig::new(t.m, t.n, SourceSpec::Named(t.source));
            cfg.delta = DeltaChoice::Fixed(dk);
            cfg.allow_wide = true;
            cfg.noise = 0.2;
            cfg.seed = seed;
            cfg.engine = engine;
            let report = run_reconstruction(&cfg)?;
            Ok(DemoColumn {
                delta_k: dk,
                q_s: report.plan.frequencies.len(),
                metrics: report.metrics,
                metrics_noisy: report.metrics_noisy,
                min_margin: report.dominance.min_margin,
            })
        })
        .collect()
}

/// CSV in the layout of the published tables: one row per quantity, one column per `dk`.
pub fn write_demo_csv<W: Write>(columns: &[DemoColumn], mut w: W) -> Result<()> {
    let row = |label: &str, f: &dyn Fn(&DemoColumn) -> String| -> String {
        let cells: Vec<String> = columns.iter().map(f).collect();
        format!("{label},{}", cells.join(","))
    };
    let pct = |v: f64| format!("{:.4}", 100.0 * v);
    let noisy = |c: &DemoColumn, f: fn(&ErrorMetrics) -> f64| {
        c.metrics_noisy.map(|m| pct(f(&m))).unwrap_or_default()
    };
    writeln!(w, "{}", row("q_s", &|c| c.q_s.to_string()))?;
    writeln!(w, "{}", row("delta_k", &|c| format!("{}", c.delta_k)))?;
    writeln!(w, "{}", row("total_pct", &|c| pct(c.metrics.rel_err_total)))?;
    writeln!(
        w,
        "{}",
        row("projection_pct", &|c| pct(c.metrics.rel_err_projection))
    )?;
    writeln!(
        w,
        "{}",
        row("in_space_pct", &|c| pct(c.metrics.rel_err_in_space))
    )?;
    writeln!(
        w,
        "{}",
        row("total_noisy_pct", &|c| noisy(c, |m| m.rel_err_total))
    )?;
    writeln!(
        w,
        "{}",
        row("in_space_noisy_pct", &|c| noisy(c, |m| m.rel_err_in_space))
    )?;
    writeln!(
        w,
        "{}",
        row("min_margin", &|c| format!("{:.6e}", c.min_margin))
    )?;
    Ok(())
}
