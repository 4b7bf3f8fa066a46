//! Boundary measurements `U_k(theta_p) = (F_k s)(R, theta_p)`, `theta_p = 2 pi p / P`.
//!
//! Three engines:
//!
//! * [`forward_quadrature`]: Green's-function quadrature on a [`PolarGrid`].
//! * [`forward_sve`]: closed form for FB expansions (no 2-D quadrature).
//! * [`GridSeriesForward`]: addition-theorem series on grid samples, for sources
//!   that are not FB expansions.

use std::f64::consts::PI;

use log::warn;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fbbasis::{pack_index, twiddles, FBExpansion, FBSpace, PolarGrid};
use crate::specfun::{
    self, hankel1_orders_unchecked, j0_y0, j_orders_unchecked, y_orders_unchecked,
};

/// Relative noise metadata attached to a noisy measurement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseInfo {
    pub level: f64,
    pub seed: u64,
}

/// `P` complex samples on the circle of radius `R` at wavenumber `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    k: f64,
    r: f64,
    samples: Vec<Complex64>,
    noise: Option<NoiseInfo>,
}

impl Measurement {
    pub fn new(k: f64, r: f64, samples: Vec<Complex64>) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::Usage(format!(
                "measurement frequency must be positive, got {k}"
            )));
        }
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::Usage(format!(
                "measurement radius must be positive, got {r}"
            )));
        }
        let p = samples.len();
        if p < 8 || p % 2 == 1 {
            return Err(Error::Usage(format!(
                "sample count must be even and at least 8, got {p}"
            )));
        }
        if samples
            .iter()
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::Usage(format!("non-finite sample at k = {k}")));
        }
        Ok(Self {
            k,
            r,
            samples,
            noise: None,
        })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn noise(&self) -> Option<NoiseInfo> {
        self.noise
    }

    pub fn theta(&self, p: usize) -> f64 {
        2.0 * PI * p as f64 / self.samples.len() as f64
    }

    /// Trapezoid L2 norm on the circle.
    pub fn boundary_norm(&self) -> f64 {
        let h = 2.0 * PI * self.r / self.samples.len() as f64;
        (self.samples.iter().map(|c| c.norm_sqr()).sum::<f64>() * h).sqrt()
    }

    /// Relative L2 distance `||self - other|| / ||other||` on the circle.
    pub fn relative_distance(&self, other: &Measurement) -> Result<f64> {
        if self.samples.len() != other.samples.len() {
            return Err(Error::Usage("sample counts differ".into()));
        }
        let num: f64 = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        let den: f64 = other.samples.iter().map(|c| c.norm_sqr()).sum();
        if den == 0.0 {
            return Err(Error::Usage("reference measurement is zero".into()));
        }
        Ok((num / den).sqrt())
    }
}

/// Measurement file: `{"R", "P", "measurements": [{"k", "samples": [[re, im], ..]}, ..]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MeasurementFile", into = "MeasurementFile")]
pub struct MeasurementSet {
    r: f64,
    p: usize,
    measurements: Vec<Measurement>,
}

#[derive(Serialize, Deserialize)]
struct MeasurementFile {
    #[serde(rename = "R")]
    r: f64,
    #[serde(rename = "P")]
    p: usize,
    measurements: Vec<MeasurementDoc>,
}

#[derive(Serialize, Deserialize)]
struct MeasurementDoc {
    k: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    noise_level: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    samples: Vec<[f64; 2]>,
}

impl TryFrom<MeasurementFile> for MeasurementSet {
    type Error = Error;

    fn try_from(f: MeasurementFile) -> Result<Self> {
        let measurements = f
            .measurements
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                if d.samples.len() != f.p {
                    return Err(Error::Parse(format!(
                        "measurements[{i}]: {} samples, header says P = {}",
                        d.samples.len(),
                        f.p
                    )));
                }
                let samples = d
                    .samples
                    .iter()
                    .map(|s| Complex64::new(s[0], s[1]))
                    .collect();
                let mut m = Measurement::new(d.k, f.r, samples)
                    .map_err(|e| Error::Parse(format!("measurements[{i}]: {e}")))?;
                m.noise = match (d.noise_level, d.seed) {
                    (Some(level), Some(seed)) => Some(NoiseInfo { level, seed }),
                    (None, None) => None,
                    _ => {
                        return Err(Error::Parse(format!(
                            "measurements[{i}]: noise_level and seed must appear together"
                        )))
                    }
                };
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        MeasurementSet::new(f.r, f.p, measurements)
    }
}

impl From<MeasurementSet> for MeasurementFile {
    fn from(s: MeasurementSet) -> Self {
        MeasurementFile {
            r: s.r,
            p: s.p,
            measurements: s
                .measurements
                .into_iter()
                .map(|m| MeasurementDoc {
                    k: m.k,
                    noise_level: m.noise.map(|n| n.level),
                    seed: m.noise.map(|n| n.seed),
                    samples: m.samples.iter().map(|c| [c.re, c.im]).collect(),
                })
                .collect(),
        }
    }
}

impl MeasurementSet {
    pub fn new(r: f64, p: usize, measurements: Vec<Measurement>) -> Result<Self> {
        for m in &measurements {
            if m.len() != p || (m.r - r).abs() > 1e-14 * r {
                return Err(Error::Usage(format!(
                    "measurement at k = {} has P = {}, R = {}; set has P = {p}, R = {r}",
                    m.k,
                    m.len(),
                    m.r
                )));
            }
        }
        Ok(Self { r, p, measurements })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn measurements(&self) -> &[Measurement] {
        &self.measurements
    }

    /// Measurement whose frequency matches `k` to relative `1e-12`.
    pub fn find(&self, k: f64) -> Option<&Measurement> {
        self.measurements
            .iter()
            .find(|m| (m.k - k).abs() <= 1e-12 * k.abs().max(1.0))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// `G_k(x, y) = -(i/4) H_0^(1)(k |x - y|)`.
pub fn green_kernel(k: f64, x: [f64; 2], y: [f64; 2]) -> Result<Complex64> {
    let d = (x[0] - y[0]).hypot(x[1] - y[1]);
    if d == 0.0 {
        return Err(Error::Domain(
            "Green's function is singular at coincident points".into(),
        ));
    }
    let h = specfun::hankel1(0, k * d)?;
    Ok(Complex64::new(0.0, -0.25) * h)
}

#[inline]
fn green_unchecked(kd: f64) -> Complex64 {
    let (j0, y0) = j0_y0(kd);
    Complex64::new(0.25 * y0, -0.25 * j0)
}

/// Sources with closed-form definitions on the unit disc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NamedSource {
    /// `2 phi_{0,1} + pi phi_{3,3}`.
    FbPair,
    /// Smooth peaks-type function on the disc.
    Smooth,
    /// Piecewise constant: background, a small disc and two rectangles.
    Discontinuous,
}

impl NamedSource {
    pub const ALL: [NamedSource; 3] = [
        NamedSource::FbPair,
        NamedSource::Smooth,
        NamedSource::Discontinuous,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedSource::FbPair => "fb-pair",
            NamedSource::Smooth => "smooth",
            NamedSource::Discontinuous => "discontinuous",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| {
                Error::Usage(format!(
                    "unknown source '{s}' (expected fb-pair, smooth or discontinuous)"
                ))
            })
    }

    /// The FB expansion for `FbPair`, `None` otherwise.
    pub fn expansion(self, r0: f64) -> Result<Option<FBExpansion>> {
        match self {
            NamedSource::FbPair => {
                let mut e = FBExpansion::zeros(3, 3, r0)?;
                e.set(0, 1, Complex64::new(2.0, 0.0))?;
                e.set(3, 3, Complex64::new(PI, 0.0))?;
                Ok(Some(e))
            }
            _ => Ok(None),
        }
    }

    /// Pointwise value for the closed-form sources. `FbPair` returns `None`.
    pub fn value(self, x: f64, y: f64) -> Option<f64> {
        match self {
            NamedSource::FbPair => None,
            NamedSource::Smooth => {
                let (a, b) = (3.0 * x, 3.0 * y);
                Some(
                    0.3 * (1.0 - a).powi(2) * (-a * a - (b + 1.0).powi(2)).exp()
                        - (0.2 * a - a.powi(3) - b.powi(5)) * (-a * a - b * b).exp()
                        - 0.03 * (-(a + 1.0).powi(2) - b * b).exp(),
                )
            }
            NamedSource::Discontinuous => {
                let mut v = 0.1;
                if (x + 0.4).powi(2) + (y + 0.08).powi(2) <= 0.05 * 0.05 {
                    v += 1.0;
                }
                if (x - 0.2).abs() <= 0.15 && (y + 0.4).abs() <= 0.15 {
                    v += 0.5;
                }
                if (x + 0.2).abs() <= 0.2 && (y - 0.4).abs() <= 0.3 {
                    v += 2.0;
                }
                Some(v)
            }
        }
    }
}

/// Source term on the disc.
#[derive(Debug, Clone, PartialEq)]
pub enum SourceSpec {
    Expansion(FBExpansion),
    Named(NamedSource),
    Sampled {
        grid: PolarGrid,
        values: Vec<Complex64>,
    },
}

impl SourceSpec {
    /// The source as an FB expansion, when it is one.
    pub fn as_expansion(&self, r0: f64) -> Result<Option<FBExpansion>> {
        match self {
            SourceSpec::Expansion(e) => Ok(Some(e.clone())),
            SourceSpec::Named(n) => n.expansion(r0),
            SourceSpec::Sampled { .. } => Ok(None),
        }
    }

    /// Values on the nodes of `grid`.
    pub fn sample(&self, grid: &PolarGrid) -> Result<Vec<Complex64>> {
        match self {
            SourceSpec::Expansion(e) => crate::fbbasis::synthesize(e, grid),
            SourceSpec::Named(n) => match n.expansion(grid.r0())? {
                Some(e) => crate::fbbasis::synthesize(&e, grid),
                None => Ok(grid.sample_xy(|x, y| n.value(x, y).unwrap_or(0.0))),
            },
            SourceSpec::Sampled { grid: g, values } => {
                if g != grid {
                    return Err(Error::Usage(
                        "sampled source lives on a different grid".into(),
                    ));
                }
                Ok(values.clone())
            }
        }
    }
}

/// Forward engine selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ForwardEngine {
    #[default]
    Quadrature,
    Sve,
}

impl ForwardEngine {
    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "quadrature" => Ok(ForwardEngine::Quadrature),
            "sve" => Ok(ForwardEngine::Sve),
            _ => Err(Error::Usage(format!("unknown forward engine '{s}'"))),
        }
    }
}

/// Checks 10 nodes per wavelength along a diameter (radial) and around the rim (angular).
pub fn check_resolution(grid: &PolarGrid, k: f64, strict: bool) -> Result<()> {
    let wavelengths = 2.0 * grid.r0() * k / (2.0 * PI);
    let radial_need = 10.0 * wavelengths;
    let angular_need = 10.0 * k * grid.r0();
    let radial_have = 2.0 * grid.n_radial() as f64;
    let angular_have = grid.n_theta() as f64;
    if radial_have < radial_need || angular_have < angular_need {
        let msg = format!(
            "grid {}x{} under-resolves k = {k}: need {} nodes across the diameter and {} around the rim",
            grid.n_radial(),
            grid.n_theta(),
            radial_need.ceil(),
            angular_need.ceil()
        );
        if strict {
            return Err(Error::Usage(msg));
        }
        warn!("{msg}");
    }
    Ok(())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Green's-function quadrature of grid samples. Kernel values depend only on
/// the radius and the angle difference, which is a multiple of `2 pi / lcm(P, n_theta)`.
pub fn quadrature_from_samples(
    values: &[Complex64],
    grid: &PolarGrid,
    k: f64,
    r: f64,
    p_count: usize,
) -> Result<Measurement> {
    if values.len() != grid.len() {
        return Err(Error::Usage(format!(
            "field has {} samples, grid has {}",
            values.len(),
            grid.len()
        )));
    }
    if !(r > grid.r0()) {
        return Err(Error::Usage(format!(
            "need R > R0, got R = {r}, R0 = {}",
            grid.r0()
        )));
    }
    if p_count < 8 || p_count % 2 == 1 {
        return Err(Error::Usage(format!(
            "sample count must be even and >= 8, got {p_count}"
        )));
    }
    let nt = grid.n_theta();
    let l = p_count / gcd(p_count, nt) * nt;
    let a = l / p_count;
    let b = l / nt;
    let dtheta = 2.0 * PI / nt as f64;
    let mut out = vec![Complex64::new(0.0, 0.0); p_count];
    let mut table = vec![Complex64::new(0.0, 0.0); l];
    for (i, &ri) in grid.radii().iter().enumerate() {
        let row = &values[i * nt..(i + 1) * nt];
        if row.iter().all(|v| *v == Complex64::new(0.0, 0.0)) {
            continue;
        }
        let w = grid.radial_weights()[i] * ri * dtheta;
        for q in 0..=l / 2 {
            let ang = 2.0 * PI * q as f64 / l as f64;
            let d2 = r * r + ri * ri - 2.0 * r * ri * ang.cos();
            let g = green_unchecked(k * d2.max(0.0).sqrt());
            table[q] = g * w;
            if q > 0 {
                table[l - q] = table[q];
            }
        }
        for (p, u) in out.iter_mut().enumerate() {
            let base = p * a;
            let mut acc = Complex64::new(0.0, 0.0);
            for (t, v) in row.iter().enumerate() {
                let idx = (base + l - (t * b) % l) % l;
                acc += table[idx] * v;
            }
            *u += acc;
        }
    }
    Measurement::new(k, r, out)
}

/// Measurement by Green's-function quadrature of the source on `grid`.
pub fn forward_quadrature(
    src: &SourceSpec,
    k: f64,
    r: f64,
    p_count: usize,
    grid: &PolarGrid,
    strict: bool,
) -> Result<Measurement> {
    check_resolution(grid, k, strict)?;
    let values = src.sample(grid)?;
    quadrature_from_samples(&values, grid, k, r, p_count)
}

/// Closed-form measurement of an FB expansion, using the space's zeros.
pub fn forward_sve_in(
    space: &FBSpace,
    expansion: &FBExpansion,
    k: f64,
    r: f64,
    p_count: usize,
) -> Result<Measurement> {
    if expansion.m_max() != space.m_max() || expansion.n_max() != space.n_max() {
        return Err(Error::Usage("expansion does not match FB space".into()));
    }
    if !(r > space.r0()) {
        return Err(Error::Usage(format!(
            "need R > R0, got R = {r}, R0 = {}",
            space.r0()
        )));
    }
    if !(k > 0.0) {
        return Err(Error::Usage(format!("frequency must be positive, got {k}")));
    }
    let mm = space.m_max();
    let h = specfun::hankel1_orders(mm, k * r)?;
    // c_m = 2 pi sum_n s_{m,n} norm_{|m|,n} int J_{|m|}(k_{mn} r) J_{|m|}(k r) r dr
    let mut terms = Vec::with_capacity(2 * mm as usize + 1);
    for m in -(mm as i32)..=(mm as i32) {
        let a = m.unsigned_abs();
        let mut c = Complex64::new(0.0, 0.0);
        for n in 1..=space.n_max() {
            let s = expansion.coeffs()[pack_index(m, n, mm, space.n_max())?];
            if s != Complex64::new(0.0, 0.0) {
                c += s * space.norm(a, n) * space.radial_overlap(a, n, k);
            }
        }
        let hm = if m < 0 && a % 2 == 1 {
            -h[a as usize]
        } else {
            h[a as usize]
        };
        terms.push((m, Complex64::new(0.0, -0.25) * hm * c * 2.0 * PI));
    }
    let samples = (0..p_count)
        .map(|p| {
            let theta = 2.0 * PI * p as f64 / p_count as f64;
            terms
                .iter()
                .map(|(m, c)| c * Complex64::from_polar(1.0, *m as f64 * theta))
                .sum()
        })
        .collect();
    Measurement::new(k, r, samples)
}

/// Closed-form measurement of an FB expansion.
pub fn forward_sve(expansion: &FBExpansion, k: f64, r: f64, p_count: usize) -> Result<Measurement> {
    let space = FBSpace::new(expansion.m_max(), expansion.n_max(), expansion.r0())?;
    forward_sve_in(&space, expansion, k, r, p_count)
}

/// Addition-theorem forward for grid samples:
/// `U(theta) = -(i/4) sum_l H_l(kR) e^{il theta} int s(y) J_l(k r) e^{-il theta_y} dy`.
/// Angular transforms of the source are computed once and reused across frequencies.
#[derive(Debug, Clone)]
pub struct GridSeriesForward {
    grid: PolarGrid,
    max_order: usize,
    /// `transforms[i][l + L] = (2 pi / n_theta) sum_t s(r_i, theta_t) e^{-il theta_t}`
    transforms: Vec<Vec<Complex64>>,
}

impl GridSeriesForward {
    pub fn new(values: &[Complex64], grid: &PolarGrid) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Usage(format!(
                "field has {} samples, grid has {}",
                values.len(),
                grid.len()
            )));
        }
        let nt = grid.n_theta();
        let max_order = (nt / 2).saturating_sub(1);
        let tw = twiddles(nt, -1.0);
        let dtheta = 2.0 * PI / nt as f64;
        let transforms = (0..grid.n_radial())
            .map(|i| {
                let row = &values[i * nt..(i + 1) * nt];
                (-(max_order as i64)..=max_order as i64)
                    .map(|l| {
                        let step = l.rem_euclid(nt as i64) as usize;
                        let mut q = 0usize;
                        let mut acc = Complex64::new(0.0, 0.0);
                        for v in row {
                            acc += v * tw[q];
                            q = (q + step) % nt;
                        }
                        acc * dtheta
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            grid: grid.clone(),
            max_order,
            transforms,
        })
    }

    pub fn grid(&self) -> &PolarGrid {
        &self.grid
    }

    /// Order at which the series is cut for frequency `k`: the first order past
    /// `k R0` where `|J_l(k R0) H_l(k R)|` drops below `1e-17` of its running maximum.
    pub fn truncation_order(&self, k: f64, r: f64) -> usize {
        let r0 = self.grid.r0();
        let cap = 4 * self.max_order + 64;
        let j = j_orders_unchecked(cap, k * r0);
        let y = y_orders_unchecked(cap, k * r);
        let mut peak = 0.0f64;
        for l in 0..=cap {
            let b = j[l].abs() * j[l].hypot(y[l]);
            if !b.is_finite() {
                return l.saturating_sub(1);
            }
            peak = peak.max(b);
            if l as f64 > k * r0 && b < 1e-17 * peak {
                return l;
            }
        }
        cap
    }

    pub fn forward(&self, k: f64, r: f64, p_count: usize, strict: bool) -> Result<Measurement> {
        let r0 = self.grid.r0();
        if !(r > r0) {
            return Err(Error::Usage(format!("need R > R0, got R = {r}, R0 = {r0}")));
        }
        if !(k > 0.0) {
            return Err(Error::Usage(format!("frequency must be positive, got {k}")));
        }
        let mut order = self.truncation_order(k, r);
        if order > self.max_order {
            let msg = format!(
                "series at k = {k} needs order {order} but {} angular nodes resolve only {}",
                self.grid.n_theta(),
                self.max_order
            );
            if strict {
                return Err(Error::Usage(msg));
            }
            warn!("{msg}");
            order = self.max_order;
        }
        let big = self.max_order;
        let mut coeff = vec![Complex64::new(0.0, 0.0); 2 * order + 1];
        for (i, &ri) in self.grid.radii().iter().enumerate() {
            let w = self.grid.radial_weights()[i] * ri;
            let j = j_orders_unchecked(order, k * ri);
            let tr = &self.transforms[i];
            for l in -(order as i64)..=order as i64 {
                let jl = j[l.unsigned_abs() as usize];
                coeff[(l + order as i64) as usize] += tr[(l + big as i64) as usize] * (w * jl);
            }
        }
        let h = hankel1_orders_unchecked(order, k * r);
        let terms: Vec<(i64, Complex64)> = (-(order as i64)..=order as i64)
            .map(|l| {
                let c = coeff[(l + order as i64) as usize] * h[l.unsigned_abs() as usize];
                (l, Complex64::new(0.0, -0.25) * c)
            })
            .collect();
        let samples = (0..p_count)
            .map(|p| {
                let theta = 2.0 * PI * p as f64 / p_count as f64;
                terms
                    .iter()
                    .map(|(l, c)| c * Complex64::from_polar(1.0, *l as f64 * theta))
                    .sum()
            })
            .collect();
        Measurement::new(k, r, samples)
    }
}

fn noise_rng(seed: u64, k: f64) -> ChaCha20Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(k.to_bits().to_le_bytes());
    let digest: [u8; 32] = h.finalize().into();
    ChaCha20Rng::from_seed(digest)
}

/// Adds complex Gaussian noise rescaled to relative L2 level `delta` exactly.
/// The stream depends on `(seed, k)` only.
pub fn add_noise(meas: &Measurement, delta: f64, seed: u64) -> Result<Measurement> {
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(Error::Usage(format!(
            "noise level must be >= 0, got {delta}"
        )));
    }
    if delta == 0.0 {
        return Ok(meas.clone());
    }
    let norm_u: f64 = meas
        .samples
        .iter()
        .map(|c| c.norm_sqr())
        .sum::<f64>()
        .sqrt();
    if norm_u == 0.0 {
        return Err(Error::Usage(
            "cannot scale relative noise on a zero measurement".into(),
        ));
    }
    let mut rng = noise_rng(seed, meas.k);
    let eps: Vec<Complex64> = (0..meas.samples.len())
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    let norm_e: f64 = eps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let scale = delta * norm_u / norm_e;
    let samples: Vec<Complex64> = meas
        .samples
        .iter()
        .zip(&eps)
        .map(|(u, e)| u + e * scale)
        .collect();
    let mut out = Measurement::new(meas.k, meas.r, samples)?;
    let level = out.relative_distance(meas)?;
    out.noise = Some(NoiseInfo { level, seed });
    Ok(out)
}
