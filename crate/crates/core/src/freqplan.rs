//! Frequency planning: the scaled-zero set `Q_{M,N}`, the admissible
//! perturbation `dk`, the minimal subcover `Q_s`, the per-index assignment and
//! the bandwidth gate. Also zero-distribution diagnostics.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{bessel_zero, zeros_of_order, BesselZeroTable};

/// One scaled zero `k_{m,n} = j_{m,n} / R0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledZero {
    pub m: u32,
    pub n: u32,
    pub k: f64,
}

/// `Q_{M,N}` in `(m, n)` row-major order.
pub fn full_frequency_set(
    table: &BesselZeroTable,
    m_max: u32,
    n_max: u32,
    r0: f64,
) -> Result<Vec<ScaledZero>> {
    if !(r0 > 0.0) {
        return Err(Error::Usage(format!("R0 must be positive, got {r0}")));
    }
    if n_max == 0 || !table.covers(m_max, n_max) {
        return Err(Error::Usage(format!(
            "zero table (max order {}, max index {}) does not cover M = {m_max}, N = {n_max}",
            table.max_order(),
            table.max_index()
        )));
    }
    let mut out = Vec::with_capacity((m_max as usize + 1) * n_max as usize);
    for m in 0..=m_max {
        for n in 1..=n_max {
            out.push(ScaledZero {
                m,
                n,
                k: table.get(m, n).unwrap() / r0,
            });
        }
    }
    Ok(out)
}

/// Admissible perturbation of one scaled zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndexDelta {
    pub m: u32,
    pub i: u32,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lemma1Result {
    pub delta_k: f64,
    /// Index attaining the minimum.
    pub limiting: (u32, u32),
    pub fast_mode: bool,
    pub per_index: Vec<IndexDelta>,
}

const SCAN_STEPS: usize = 4000;
const BISECT_TOL: f64 = 1e-10;

/// Right side of the log estimate for the off-diagonal row sum at `x`.
/// `k` holds `k_{m,1..N}`, `i` is 1-based.
pub fn log_estimate(k: &[f64], i: usize, x: f64, mu: f64) -> f64 {
    let n = k.len();
    let x2 = x * x;
    let mut rhs = 0.0;
    if i != 1 {
        let k1 = k[0];
        let km = k[i - 2];
        rhs += 0.5 * mu * ((x2 - k1 * k1) / (x2 - km * km)).ln() + km / (x2 - km * km);
    }
    if i != n {
        let kn = k[n - 1];
        let kp = k[i];
        rhs += 0.5 * mu * ((kn * kn - x2) / (kp * kp - x2)).ln() + kp / (kp * kp - x2);
    }
    rhs
}

/// Exact off-diagonal row sum `sum_{n != i} |k_n / (x^2 - k_n^2)|`.
pub fn off_diagonal_sum(k: &[f64], i: usize, x: f64) -> f64 {
    k.iter()
        .enumerate()
        .filter(|(n, _)| n + 1 != i)
        .map(|(_, &kn)| (kn / (x * x - kn * kn)).abs())
        .sum()
}

fn holds(k: &[f64], i: usize, delta: f64, sign: f64, mu: f64) -> bool {
    let ki = k[i - 1];
    let x = ki + sign * delta;
    let lhs = (ki / (x * x - ki * ki)).abs();
    let rhs = log_estimate(k, i, x, mu);
    lhs >= rhs
}

/// Largest `delta` such that the estimate holds on `(0, delta)` for one branch,
/// capped at `cap` (exclusive interval end).
fn branch_delta(k: &[f64], i: usize, sign: f64, mu: f64, cap: f64) -> Result<f64> {
    let step = cap / SCAN_STEPS as f64;
    let mut prev = 0.0;
    for s in 1..=SCAN_STEPS {
        let d = if s == SCAN_STEPS {
            cap * (1.0 - 1e-12)
        } else {
            s as f64 * step
        };
        if !holds(k, i, d, sign, mu) {
            let (mut lo, mut hi) = (prev, d);
            let mut it = 0;
            while hi - lo > BISECT_TOL * hi.max(1.0) {
                let mid = 0.5 * (lo + hi);
                if mid > 0.0 && holds(k, i, mid, sign, mu) {
                    lo = mid;
                } else {
                    hi = mid;
                }
                it += 1;
                if it > 200 {
                    return Err(Error::NonConvergence {
                        what: "perturbation bound bisection".into(),
                        iterations: it,
                        last: lo,
                    });
                }
            }
            return Ok(lo);
        }
        prev = d;
    }
    Ok(cap)
}

/// `mu_m`: `R0 / pi` for `m >= 1`, `R0 / (j_{0,2} - j_{0,1})` for `m = 0`.
pub fn mu(m: u32, r0: f64) -> Result<f64> {
    if m >= 1 {
        Ok(r0 / PI)
    } else {
        Ok(r0 / (bessel_zero(0, 2)? - bessel_zero(0, 1)?))
    }
}

/// Per-index bound for row `i` of order `m`. `k` holds `k_{m,1..N}`.
pub fn index_delta(k: &[f64], i: usize, mu: f64) -> Result<f64> {
    let n = k.len();
    let ki = k[i - 1];
    let lower = if i > 1 { k[i - 2] } else { 0.0 };
    let minus_cap = ki - lower;
    // With no upper neighbour the interval is unbounded; scan as far as k_{m,i}.
    let plus_cap = if i < n { k[i] - ki } else { ki };
    let minus = branch_delta(k, i, -1.0, mu, minus_cap)?;
    let plus = branch_delta(k, i, 1.0, mu, plus_cap)?;
    Ok(minus.min(plus))
}

/// Admissible perturbation: minimum over all `(m, i)` of the per-index bounds.
/// `fast` evaluates `(0, 1)` only.
pub fn lemma1_delta(
    table: &BesselZeroTable,
    m_max: u32,
    n_max: u32,
    r0: f64,
    fast: bool,
) -> Result<Lemma1Result> {
    let q = full_frequency_set(table, m_max, n_max, r0)?;
    let mut per_index = Vec::new();
    let orders = if fast { 0..=0 } else { 0..=m_max };
    for m in orders {
        let k: Vec<f64> = q.iter().filter(|z| z.m == m).map(|z| z.k).collect();
        let mu_m = mu(m, r0)?;
        let rows = if fast { 1..=1 } else { 1..=n_max as usize };
        for i in rows {
            per_index.push(IndexDelta {
                m,
                i: i as u32,
                delta: index_delta(&k, i, mu_m)?,
            });
        }
    }
    let best = per_index
        .iter()
        .min_by(|a, b| a.delta.total_cmp(&b.delta))
        .copied()
        .ok_or_else(|| Error::Usage("empty index set".into()))?;
    Ok(Lemma1Result {
        delta_k: best.delta,
        limiting: (best.m, best.i),
        fast_mode: fast,
        per_index,
    })
}

/// Smallest set of points in `[min, max]` with every centre strictly within `dk` of a point.
pub fn minimal_subcover(centres: &[f64], dk: f64) -> Result<Vec<f64>> {
    if centres.is_empty() {
        return Err(Error::Usage("empty frequency set".into()));
    }
    if !(dk > 0.0 && dk.is_finite()) {
        return Err(Error::Usage(format!("dk must be positive, got {dk}")));
    }
    let mut sorted = centres.to_vec();
    sorted.sort_by(f64::total_cmp);
    let kmax = *sorted.last().unwrap();
    let mut out: Vec<f64> = Vec::new();
    for &c in &sorted {
        if let Some(&last) = out.last() {
            if (c - last).abs() < dk {
                continue;
            }
        }
        let mut p = (c + dk - 1e-9 * dk).min(kmax);
        // for tiny dk the margin can vanish in rounding
        while p - c >= dk {
            p = p.next_down();
        }
        out.push(p);
    }
    Ok(out)
}

/// Nearest point of `q_s` for each scaled zero, ties toward the smaller frequency.
/// Errors when a zero is not strictly within `dk` of its point.
pub fn assign_frequencies(q_mn: &[ScaledZero], q_s: &[f64], dk: f64) -> Result<Vec<f64>> {
    if q_s.is_empty() {
        return Err(Error::Plan("empty reduced frequency set".into()));
    }
    q_mn.iter()
        .map(|z| {
            let pos = q_s.partition_point(|&v| v < z.k);
            let mut best = if pos < q_s.len() {
                q_s[pos]
            } else {
                q_s[q_s.len() - 1]
            };
            if pos > 0 {
                let below = q_s[pos - 1];
                if (z.k - below).abs() <= (best - z.k).abs() {
                    best = below;
                }
            }
            if (best - z.k).abs() >= dk {
                return Err(Error::Plan(format!(
                    "k_{{{},{}}} = {} has no frequency within {dk} (nearest {best})",
                    z.m, z.n, z.k
                )));
            }
            Ok(best)
        })
        .collect()
}

/// How `dk` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "mode", content = "value")]
pub enum DeltaChoice {
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanOptions {
    pub m_max: u32,
    pub n_max: u32,
    pub r0: f64,
    pub r: f64,
    pub delta: DeltaChoice,
    /// Lift the `dk <= 1/R0` bandwidth cap.
    pub allow_wide: bool,
    pub fast_lemma1: bool,
}

impl PlanOptions {
    pub fn new(m_max: u32, n_max: u32, r0: f64, r: f64) -> Self {
        Self {
            m_max,
            n_max,
            r0,
            r,
            delta: DeltaChoice::Auto,
            allow_wide: false,
            fast_lemma1: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assignment {
    pub m: u32,
    pub n: u32,
    pub k_mn: f64,
    pub k: f64,
}

/// Order above the bandwidth at its assigned frequency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandwidthViolation {
    pub m: u32,
    pub n: u32,
    pub k: f64,
    pub bandwidth: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanProvenance {
    pub zero_table_sha256: String,
    pub zero_table_max_order: u32,
    pub zero_table_max_index: u32,
    pub delta_source: String,
    pub lemma1: Lemma1Result,
    pub lower_endpoint_convention: String,
    pub upper_endpoint_convention: String,
}

/// A complete frequency plan. Serialises to the plan file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyPlan {
    #[serde(rename = "M")]
    pub m_max: u32,
    #[serde(rename = "N")]
    pub n_max: u32,
    #[serde(rename = "R0")]
    pub r0: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub delta_k: f64,
    pub q_mn: Vec<ScaledZero>,
    pub q_s: Vec<f64>,
    pub assignment: Vec<Assignment>,
    pub bandwidth_gated: bool,
    pub bandwidth_violations: Vec<BandwidthViolation>,
    pub provenance: PlanProvenance,
}

/// First zeros `j_{m,1}` for `m = 0, 1, ..` up to the first one at or above `x`.
fn first_zeros_through(x: f64) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    let mut m = 0u32;
    loop {
        let z = bessel_zero(m, 1)?;
        out.push(z);
        if z >= x {
            return Ok(out);
        }
        m += 1;
    }
}

/// Bandwidth lower bound from a list of first zeros.
fn bandwidth_from(first: &[f64], x: f64) -> u32 {
    first.iter().position(|&z| z >= x).unwrap_or(first.len()) as u32
}

/// Orders assigned above the bandwidth `M_-` at their frequency.
pub fn bandwidth_violations(assignment: &[Assignment], r0: f64) -> Result<Vec<BandwidthViolation>> {
    let kmax = assignment.iter().map(|a| a.k).fold(0.0, f64::max);
    let first = first_zeros_through(kmax * r0)?;
    Ok(assignment
        .iter()
        .filter_map(|a| {
            let bw = bandwidth_from(&first, a.k * r0);
            (a.m > bw).then_some(BandwidthViolation {
                m: a.m,
                n: a.n,
                k: a.k,
                bandwidth: bw,
            })
        })
        .collect())
}

impl FrequencyPlan {
    /// Builds and validates a plan. A zero table covering `(M, N)` is computed here.
    pub fn build(opts: &PlanOptions) -> Result<Self> {
        let table = BesselZeroTable::new(opts.m_max, opts.n_max.max(2))?;
        Self::build_with_table(opts, &table)
    }

    pub fn build_with_table(opts: &PlanOptions, table: &BesselZeroTable) -> Result<Self> {
        if !(opts.r0 > 0.0 && opts.r > opts.r0) {
            return Err(Error::Usage(format!(
                "need 0 < R0 < R, got R0 = {}, R = {}",
                opts.r0, opts.r
            )));
        }
        let q_mn = full_frequency_set(table, opts.m_max, opts.n_max, opts.r0)?;
        let lemma = lemma1_delta(table, opts.m_max, opts.n_max, opts.r0, opts.fast_lemma1)?;
        let cap = 1.0 / opts.r0;
        let (delta_k, source) = match opts.delta {
            DeltaChoice::Auto => {
                if opts.allow_wide {
                    (lemma.delta_k, "lemma1")
                } else {
                    (
                        lemma.delta_k.min(cap),
                        if lemma.delta_k > cap {
                            "lemma1-capped"
                        } else {
                            "lemma1"
                        },
                    )
                }
            }
            DeltaChoice::Fixed(d) => {
                if !(d > 0.0 && d.is_finite()) {
                    return Err(Error::Usage(format!("dk must be positive, got {d}")));
                }
                if d > cap && !opts.allow_wide {
                    return Err(Error::Plan(format!(
                        "dk = {d} exceeds the bandwidth cap 1/R0 = {cap}; pass allow-wide to override"
                    )));
                }
                if d > lemma.delta_k {
                    warn!(
                        "dk = {d} exceeds the admissible bound {:.6}; K may lose diagonal dominance",
                        lemma.delta_k
                    );
                }
                (d, "user")
            }
        };
        let centres: Vec<f64> = q_mn.iter().map(|z| z.k).collect();
        let q_s = minimal_subcover(&centres, delta_k)?;
        let assigned = assign_frequencies(&q_mn, &q_s, delta_k)?;
        let assignment: Vec<Assignment> = q_mn
            .iter()
            .zip(&assigned)
            .map(|(z, &k)| Assignment {
                m: z.m,
                n: z.n,
                k_mn: z.k,
                k,
            })
            .collect();
        let gated = delta_k <= cap;
        let violations = bandwidth_violations(&assignment, opts.r0)?;
        if gated && !violations.is_empty() {
            let v = &violations[0];
            return Err(Error::Plan(format!(
                "order {} assigned to k = {} above bandwidth {}",
                v.m, v.k, v.bandwidth
            )));
        }
        if !violations.is_empty() {
            warn!(
                "{} coefficients are assigned above the bandwidth lower bound",
                violations.len()
            );
        }
        let plan = FrequencyPlan {
            m_max: opts.m_max,
            n_max: opts.n_max,
            r0: opts.r0,
            r: opts.r,
            delta_k,
            q_mn,
            q_s,
            assignment,
            bandwidth_gated: gated,
            bandwidth_violations: violations,
            provenance: PlanProvenance {
                zero_table_sha256: table.digest_hex(),
                zero_table_max_order: table.max_order(),
                zero_table_max_index: table.max_index(),
                delta_source: source.into(),
                lemma1: lemma,
                lower_endpoint_convention: "k_{m,0} = 0".into(),
                upper_endpoint_convention: "k_{m,N+1} = +inf (scan capped at k_{m,N})".into(),
            },
        };
        plan.validate()?;
        Ok(plan)
    }

    /// Checks the structural invariants of a (possibly deserialised) plan.
    pub fn validate(&self) -> Result<()> {
        let expect = (self.m_max as usize + 1) * self.n_max as usize;
        if self.q_mn.len() != expect || self.assignment.len() != expect {
            return Err(Error::Plan(format!(
                "plan lists {} zeros and {} assignments, expected {expect}",
                self.q_mn.len(),
                self.assignment.len()
            )));
        }
        if !(self.delta_k > 0.0) {
            return Err(Error::Plan("dk must be positive".into()));
        }
        if self.q_s.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Plan(
                "reduced frequency set is not strictly increasing".into(),
            ));
        }
        let kmin = self.q_mn.iter().map(|z| z.k).fold(f64::INFINITY, f64::min);
        let kmax = self.q_mn.iter().map(|z| z.k).fold(0.0, f64::max);
        if self.q_s.iter().any(|&k| k < kmin || k > kmax) {
            return Err(Error::Plan("reduced frequency outside [k-, k+]".into()));
        }
        for (z, a) in self.q_mn.iter().zip(&self.assignment) {
            if z.m != a.m || z.n != a.n || z.k != a.k_mn {
                return Err(Error::Plan(format!(
                    "assignment out of order at ({}, {})",
                    z.m, z.n
                )));
            }
            if !((a.k - a.k_mn).abs() < self.delta_k) {
                return Err(Error::Plan(format!(
                    "|k~ - k| = {} not below dk = {} at ({}, {})",
                    (a.k - a.k_mn).abs(),
                    self.delta_k,
                    a.m,
                    a.n
                )));
            }
            if !self.q_s.contains(&a.k) {
                return Err(Error::Plan(format!(
                    "assigned frequency {} at ({}, {}) not in reduced set",
                    a.k, a.m, a.n
                )));
            }
        }
        if self.bandwidth_gated && self.delta_k > 1.0 / self.r0 {
            return Err(Error::Plan("gated plan with dk above 1/R0".into()));
        }
        Ok(())
    }

    /// Assigned frequency of `(m, n)`.
    pub fn assigned(&self, m: u32, n: u32) -> Result<f64> {
        if m > self.m_max || n == 0 || n > self.n_max {
            return Err(Error::Usage(format!("({m}, {n}) outside plan")));
        }
        Ok(self.assignment[m as usize * self.n_max as usize + n as usize - 1].k)
    }

    /// Indices `(m, n)` assigned to each reduced frequency.
    pub fn groups(&self) -> BTreeMap<usize, Vec<(u32, u32)>> {
        let mut out: BTreeMap<usize, Vec<(u32, u32)>> = BTreeMap::new();
        for a in &self.assignment {
            let j = self
                .q_s
                .iter()
                .position(|&k| k == a.k)
                .unwrap_or(usize::MAX);
            out.entry(j).or_default().push((a.m, a.n));
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let plan: FrequencyPlan = serde_json::from_str(s)?;
        plan.validate()?;
        Ok(plan)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub alpha: f64,
    pub delta_j: f64,
    pub estimate: f64,
    pub exact_count: usize,
}

/// Upper index of the order band used by the estimate, `floor(sqrt(3 a^2 + 16) / 2 - 3)`, clamped at 0.
pub fn density_order_bound(alpha: f64) -> u32 {
    (0.5 * (3.0 * alpha * alpha + 16.0).sqrt() - 3.0)
        .floor()
        .max(0.0) as u32
}

/// Estimated and exact number of zeros `j_{m,n}` with `|j_{m,n} - alpha| < delta_j`.
pub fn density_estimate(
    alpha: f64,
    delta_j: f64,
    table: &BesselZeroTable,
) -> Result<DensityEstimate> {
    let j01 = bessel_zero(0, 1)?;
    if !(alpha > j01) {
        return Err(Error::Usage(format!(
            "alpha must exceed j_0,1 = {j01}, got {alpha}"
        )));
    }
    if !(delta_j > 0.0) {
        return Err(Error::Usage(format!(
            "delta_j must be positive, got {delta_j}"
        )));
    }
    let hi = alpha + delta_j;
    let top = table.max_order();
    let last_first = table.get(top, 1).unwrap();
    let short_row = (0..=top).find(|&m| table.get(m, table.max_index()).unwrap() < hi);
    if last_first < hi || short_row.is_some() {
        return Err(Error::Usage(format!(
            "zero table (max order {top}, max index {}) does not cover zeros up to {hi}; exact count would be partial",
            table.max_index()
        )));
    }
    let exact_count = table
        .iter()
        .filter(|&(_, _, z)| (z - alpha).abs() < delta_j)
        .count();
    let m = density_order_bound(alpha);
    Ok(DensityEstimate {
        alpha,
        delta_j,
        estimate: m as f64 * 2.0 * delta_j / PI,
        exact_count,
    })
}

/// Rectangular table holding every zero below `x_max`.
pub fn table_covering(x_max: f64) -> Result<BesselZeroTable> {
    let first = first_zeros_through(x_max)?;
    let max_order = first.len() as u32 - 1;
    let mut rows = 1u32;
    loop {
        let z = zeros_of_order(0, rows)?;
        if *z.last().unwrap() >= x_max {
            break;
        }
        rows += 1;
    }
    BesselZeroTable::new(max_order, rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapStats {
    pub count: usize,
    pub max_gap: f64,
    pub mean_gap: f64,
    pub std_gap: f64,
    pub min_gap: f64,
}

fn gap_stats(mut zeros: Vec<f64>) -> Result<GapStats> {
    zeros.sort_by(f64::total_cmp);
    if zeros.len() < 2 {
        return Err(Error::Usage(
            "need at least two zeros for gap statistics".into(),
        ));
    }
    let gaps: Vec<f64> = zeros.windows(2).map(|w| w[1] - w[0]).collect();
    let n = gaps.len() as f64;
    let mean = gaps.iter().sum::<f64>() / n;
    let var = gaps.iter().map(|g| (g - mean).powi(2)).sum::<f64>() / n;
    Ok(GapStats {
        count: gaps.len(),
        max_gap: gaps.iter().copied().fold(0.0, f64::max),
        mean_gap: mean,
        std_gap: var.sqrt(),
        min_gap: gaps.iter().copied().fold(f64::INFINITY, f64::min),
    })
}

fn zeros_below(m: u32, x_max: f64) -> Result<Vec<f64>> {
    let mut count = ((x_max - m as f64) / PI).max(0.0) as u32 + 2;
    loop {
        let z = zeros_of_order(m, count)?;
        if *z.last().unwrap() >= x_max {
            return Ok(z.into_iter().filter(|&v| v <= x_max).collect());
        }
        count += 4;
    }
}

/// Gap statistics of the merged, sorted zeros `j_{m,n} <= x_max` over `m <= max_order`.
pub fn zero_gap_stats(max_order: u32, x_max: f64) -> Result<GapStats> {
    let mut all = Vec::new();
    for m in 0..=max_order {
        all.extend(zeros_below(m, x_max)?);
    }
    gap_stats(all)
}

/// Gap statistics of the zeros of a single order below `x_max`.
pub fn order_gap_stats(m: u32, x_max: f64) -> Result<GapStats> {
    gap_stats(zeros_below(m, x_max)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subcover_trivial_cases() {
        assert!(minimal_subcover(&[], 0.5).is_err());
        assert!(minimal_subcover(&[1.0], 0.0).is_err());
        assert_eq!(minimal_subcover(&[1.0], 0.5).unwrap(), vec![1.0]);
        let pts = minimal_subcover(&[1.0, 1.4, 3.0], 0.5).unwrap();
        assert_eq!(pts.len(), 2);
    }

    #[test]
    fn assignment_ties_go_down() {
        let q = [ScaledZero { m: 0, n: 1, k: 2.0 }];
        let got = assign_frequencies(&q, &[1.5, 2.5], 0.6).unwrap();
        assert_eq!(got, vec![1.5]);
        assert!(assign_frequencies(&q, &[1.5, 2.5], 0.5).is_err());
    }

    #[test]
    fn single_radial_mode_uses_caps() {
        let t = BesselZeroTable::new(2, 2).unwrap();
        let r = lemma1_delta(&t, 2, 1, 1.0, false).unwrap();
        for d in &r.per_index {
            let k = t.get(d.m, 1).unwrap();
            assert!((d.delta - k).abs() < 1e-9 * k);
        }
    }

    #[test]
    fn density_example() {
        assert_eq!(density_order_bound(10.0), 5);
        let t = table_covering(12.0).unwrap();
        let d = density_estimate(10.0, 1.6, &t).unwrap();
        assert!((d.estimate - 5.0 * 3.2 / PI).abs() < 1e-12);
        assert!(density_estimate(2.0, 0.5, &t).is_err());
        let small = BesselZeroTable::new(2, 2).unwrap();
        assert!(density_estimate(10.0, 1.6, &small).is_err());
    }

    #[test]
    fn gap_stats_single_order() {
        let s = order_gap_stats(0, 400.0).unwrap();
        // gaps of J_0 grow toward pi from below
        assert!(s.max_gap < PI && PI - s.max_gap < 1e-3);
        assert!((s.min_gap - 3.1153).abs() < 1e-3);
    }
}
