//! Fourier-Bessel basis on the source disc of radius `R0`:
//! `phi_{m,n}(r, theta) = e^{i m theta} J_m(k_{m,n} r) / (sqrt(pi) |J_{|m|+1}(j_{|m|,n})| R0)`
//! with `k_{m,n} = j_{|m|,n} / R0`.
//!
//! Coefficients are packed as `(m=1..M) x (n=1..N)`, then `m = 0`, then `m = -1..-M`.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre_on;
use crate::specfun::{self, j_unchecked, BesselZeroTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FBIndex {
    pub m: i32,
    pub n: u32,
}

impl FBIndex {
    pub fn new(m: i32, n: u32) -> Self {
        Self { m, n }
    }
}

/// Dimension `(2M + 1) N` of the truncated space.
pub fn space_dim(m_max: u32, n_max: u32) -> usize {
    (2 * m_max as usize + 1) * n_max as usize
}

/// Flat position of `(m, n)` in the packed coefficient vector.
pub fn pack_index(m: i32, n: u32, m_max: u32, n_max: u32) -> Result<usize> {
    if m.unsigned_abs() > m_max || n == 0 || n > n_max {
        return Err(Error::Usage(format!(
            "index (m={m}, n={n}) outside S_{{{m_max},{n_max}}}"
        )));
    }
    let nn = n_max as usize;
    let mm = m_max as usize;
    let col = n as usize - 1;
    let p = match m.cmp(&0) {
        std::cmp::Ordering::Greater => (m as usize - 1) * nn + col,
        std::cmp::Ordering::Equal => mm * nn + col,
        std::cmp::Ordering::Less => (mm + 1) * nn + (m.unsigned_abs() as usize - 1) * nn + col,
    };
    Ok(p)
}

/// Inverse of [`pack_index`].
pub fn unpack_position(p: usize, m_max: u32, n_max: u32) -> Result<FBIndex> {
    let dim = space_dim(m_max, n_max);
    if p >= dim || n_max == 0 {
        return Err(Error::Usage(format!(
            "position {p} outside packed vector of length {dim}"
        )));
    }
    let nn = n_max as usize;
    let mm = m_max as usize;
    let block = p / nn;
    let n = (p % nn) as u32 + 1;
    let m = if block < mm {
        block as i32 + 1
    } else if block == mm {
        0
    } else {
        -((block - mm) as i32)
    };
    Ok(FBIndex { m, n })
}

/// Zeros and normalisation data of `S_{M,N}` on a disc of radius `R0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FBSpace {
    m_max: u32,
    n_max: u32,
    r0: f64,
    zeros: Vec<Vec<f64>>,
    j_next: Vec<Vec<f64>>,
}

impl FBSpace {
    pub fn new(m_max: u32, n_max: u32, r0: f64) -> Result<Self> {
        check_radius(r0)?;
        if n_max == 0 {
            return Err(Error::Usage("N must be at least 1".into()));
        }
        let zeros = (0..=m_max)
            .map(|m| specfun::zeros_of_order(m, n_max))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::assemble(m_max, n_max, r0, zeros))
    }

    pub fn from_table(table: &BesselZeroTable, m_max: u32, n_max: u32, r0: f64) -> Result<Self> {
        check_radius(r0)?;
        if n_max == 0 || !table.covers(m_max, n_max) {
            return Err(Error::Usage(format!(
                "zero table (max order {}, max index {}) does not cover S_{{{m_max},{n_max}}}",
                table.max_order(),
                table.max_index()
            )));
        }
        let zeros = (0..=m_max)
            .map(|m| table.order(m).unwrap()[..n_max as usize].to_vec())
            .collect();
        Ok(Self::assemble(m_max, n_max, r0, zeros))
    }

    fn assemble(m_max: u32, n_max: u32, r0: f64, zeros: Vec<Vec<f64>>) -> Self {
        let j_next = zeros
            .iter()
            .enumerate()
            .map(|(m, row)| row.iter().map(|&z| j_unchecked(m as u32 + 1, z)).collect())
            .collect();
        Self {
            m_max,
            n_max,
            r0,
            zeros,
            j_next,
        }
    }

    pub fn m_max(&self) -> u32 {
        self.m_max
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn dim(&self) -> usize {
        space_dim(self.m_max, self.n_max)
    }

    /// `j_{m,n}`; panics outside the space.
    pub fn zero(&self, m: u32, n: u32) -> f64 {
        self.zeros[m as usize][n as usize - 1]
    }

    /// `k_{m,n} = j_{m,n} / R0`.
    pub fn wavenumber(&self, m: u32, n: u32) -> f64 {
        self.zero(m, n) / self.r0
    }

    /// `J_{m+1}(j_{m,n})`.
    pub fn j_next(&self, m: u32, n: u32) -> f64 {
        self.j_next[m as usize][n as usize - 1]
    }

    /// Normalisation constant `1 / (sqrt(pi) |J_{m+1}(j_{m,n})| R0)`.
    pub fn norm(&self, m: u32, n: u32) -> f64 {
        1.0 / (PI.sqrt() * self.j_next(m, n).abs() * self.r0)
    }

    pub fn contains(&self, idx: FBIndex) -> bool {
        idx.m.unsigned_abs() <= self.m_max && idx.n >= 1 && idx.n <= self.n_max
    }

    pub fn pack(&self, idx: FBIndex) -> Result<usize> {
        pack_index(idx.m, idx.n, self.m_max, self.n_max)
    }

    /// All indices in packed order.
    pub fn indices(&self) -> impl Iterator<Item = FBIndex> + '_ {
        (0..self.dim()).map(|p| unpack_position(p, self.m_max, self.n_max).unwrap())
    }

    /// Signed radial factor `norm * J_m(k_{|m|,n} r)` for signed `m`.
    pub fn radial(&self, m: i32, n: u32, r: f64) -> f64 {
        let a = m.unsigned_abs();
        let v = self.norm(a, n) * j_unchecked(a, self.wavenumber(a, n) * r);
        if m < 0 && a % 2 == 1 {
            -v
        } else {
            v
        }
    }

    pub fn eval(&self, idx: FBIndex, r: f64, theta: f64) -> Result<Complex64> {
        if !self.contains(idx) {
            return Err(Error::Usage(format!(
                "index (m={}, n={}) outside S_{{{},{}}}",
                idx.m, idx.n, self.m_max, self.n_max
            )));
        }
        check_inside(r, self.r0)?;
        Ok(Complex64::from_polar(1.0, idx.m as f64 * theta) * self.radial(idx.m, idx.n, r))
    }

    /// `int_0^R0 J_m(k_{m,n} r) J_m(k r) r dr` in closed form. Within `1e-6` of the
    /// zero (in units of `k R0`) a second-order expansion replaces the quotient.
    pub fn radial_overlap(&self, m: u32, n: u32, k: f64) -> f64 {
        let h = k * self.r0 - self.zero(m, n);
        if h.abs() < NEAR_DIAGONAL {
            self.overlap_expanded(m, n, h)
        } else {
            self.overlap_direct(m, n, h)
        }
    }

    fn overlap_expanded(&self, m: u32, n: u32, h: f64) -> f64 {
        let j = self.zero(m, n);
        let jn = self.j_next(m, n);
        self.r0 * self.r0 * j * jn * jn * (1.0 - h / (2.0 * j)) / (2.0 * j + h)
    }

    fn overlap_direct(&self, m: u32, n: u32, h: f64) -> f64 {
        let j = self.zero(m, n);
        let x = j + h;
        -self.r0 * self.r0 * j * self.j_next(m, n) * j_unchecked(m, x) / ((x - j) * (x + j))
    }

    fn check_expansion(&self, e: &FBExpansion) -> Result<()> {
        if e.m_max != self.m_max
            || e.n_max != self.n_max
            || (e.r0 - self.r0).abs() > 1e-14 * self.r0
        {
            return Err(Error::Usage(format!(
                "expansion S_{{{},{}}} (R0={}) does not match space S_{{{},{}}} (R0={})",
                e.m_max, e.n_max, e.r0, self.m_max, self.n_max, self.r0
            )));
        }
        Ok(())
    }

    /// Pointwise evaluation of an expansion.
    pub fn eval_expansion(&self, e: &FBExpansion, r: f64, theta: f64) -> Result<Complex64> {
        self.check_expansion(e)?;
        check_inside(r, self.r0)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (p, c) in e.coeffs.iter().enumerate() {
            if *c == Complex64::new(0.0, 0.0) {
                continue;
            }
            let idx = unpack_position(p, self.m_max, self.n_max)?;
            acc +=
                c * Complex64::from_polar(1.0, idx.m as f64 * theta) * self.radial(idx.m, idx.n, r);
        }
        Ok(acc)
    }

    /// `(s, phi_{m,n})` for every index, using an angular DFT per radius and the
    /// grid's radial rule.
    pub fn project(&self, values: &[Complex64], grid: &PolarGrid) -> Result<FBExpansion> {
        self.check_grid(grid)?;
        if values.len() != grid.len() {
            return Err(Error::Usage(format!(
                "field has {} samples, grid has {}",
                values.len(),
                grid.len()
            )));
        }
        let nt = grid.n_theta;
        let mm = self.m_max as i32;
        let twiddle = twiddles(nt, -1.0);
        let dtheta = 2.0 * PI / nt as f64;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (i, &r) in grid.radii.iter().enumerate() {
            let row = &values[i * nt..(i + 1) * nt];
            let wr = grid.radial_weights[i] * r;
            for m in -mm..=mm {
                let step = m.rem_euclid(nt as i32) as usize;
                let mut acc = Complex64::new(0.0, 0.0);
                let mut q = 0usize;
                for v in row {
                    acc += v * twiddle[q];
                    q += step;
                    if q >= nt {
                        q -= nt;
                    }
                }
                let fm = acc * (dtheta * wr);
                for n in 1..=self.n_max {
                    let p = pack_index(m, n, self.m_max, self.n_max)?;
                    coeffs[p] += fm * self.radial(m, n, r);
                }
            }
        }
        FBExpansion::new(self.m_max, self.n_max, self.r0, coeffs)
    }

    /// Samples of `sum s_{m,n} phi_{m,n}` on the grid.
    pub fn synthesize(&self, e: &FBExpansion, grid: &PolarGrid) -> Result<Vec<Complex64>> {
        self.check_expansion(e)?;
        if (grid.r0 - self.r0).abs() > 1e-14 * self.r0 {
            return Err(Error::Usage("grid radius differs from basis radius".into()));
        }
        let nt = grid.n_theta;
        let mm = self.m_max as i32;
        let twiddle = twiddles(nt, 1.0);
        let mut out = vec![Complex64::new(0.0, 0.0); grid.len()];
        let mut g = vec![Complex64::new(0.0, 0.0); 2 * mm as usize + 1];
        for (i, &r) in grid.radii.iter().enumerate() {
            for m in -mm..=mm {
                let mut acc = Complex64::new(0.0, 0.0);
                for n in 1..=self.n_max {
                    let c = e.coeffs[pack_index(m, n, self.m_max, self.n_max)?];
                    if c != Complex64::new(0.0, 0.0) {
                        acc += c * self.radial(m, n, r);
                    }
                }
                g[(m + mm) as usize] = acc;
            }
            let row = &mut out[i * nt..(i + 1) * nt];
            for (t, v) in row.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for m in -mm..=mm {
                    let q = (m as i64 * t as i64).rem_euclid(nt as i64) as usize;
                    acc += g[(m + mm) as usize] * twiddle[q];
                }
                *v = acc;
            }
        }
        Ok(out)
    }

    fn check_grid(&self, grid: &PolarGrid) -> Result<()> {
        if (grid.r0 - self.r0).abs() > 1e-14 * self.r0 {
            return Err(Error::Usage(format!(
                "grid radius {} differs from basis radius {}",
                grid.r0, self.r0
            )));
        }
        if grid.n_theta <= 2 * self.m_max as usize {
            return Err(Error::Usage(format!(
                "{} angular nodes cannot resolve orders up to {}",
                grid.n_theta, self.m_max
            )));
        }
        if grid.n_radial() < self.n_max as usize {
            return Err(Error::Usage(format!(
                "{} radial nodes cannot resolve {} radial modes",
                grid.n_radial(),
                self.n_max
            )));
        }
        Ok(())
    }
}

const NEAR_DIAGONAL: f64 = 1e-6;

fn check_radius(r0: f64) -> Result<()> {
    if !(r0 > 0.0 && r0.is_finite()) {
        return Err(Error::Usage(format!(
            "R0 must be positive and finite, got {r0}"
        )));
    }
    Ok(())
}

fn check_inside(r: f64, r0: f64) -> Result<()> {
    if !(r >= 0.0 && r <= r0 * (1.0 + 1e-14)) {
        return Err(Error::Domain(format!("r = {r} outside [0, R0 = {r0}]")));
    }
    Ok(())
}

/// `e^{sign * 2 pi i q / n}` for `q = 0..n`.
pub(crate) fn twiddles(n: usize, sign: f64) -> Vec<Complex64> {
    (0..n)
        .map(|q| Complex64::from_polar(1.0, sign * 2.0 * PI * q as f64 / n as f64))
        .collect()
}

/// `phi_{m,n}(r, theta)` on a disc of radius `R0`.
pub fn eval_basis(idx: FBIndex, r: f64, theta: f64, r0: f64) -> Result<Complex64> {
    check_radius(r0)?;
    if idx.n == 0 {
        return Err(Error::Usage("radial index n starts at 1".into()));
    }
    check_inside(r, r0)?;
    let a = idx.m.unsigned_abs();
    let j = specfun::bessel_zero(a, idx.n)?;
    let norm = 1.0 / (PI.sqrt() * j_unchecked(a + 1, j).abs() * r0);
    let mut v = norm * specfun::bessel_j(idx.m, j * r / r0)?;
    if !v.is_finite() {
        v = 0.0;
    }
    Ok(Complex64::from_polar(1.0, idx.m as f64 * theta) * v)
}

/// Finite FB coefficient vector in packed order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ExpansionDoc", into = "ExpansionDoc")]
pub struct FBExpansion {
    m_max: u32,
    n_max: u32,
    r0: f64,
    coeffs: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct ExpansionDoc {
    #[serde(rename = "M")]
    m: u32,
    #[serde(rename = "N")]
    n: u32,
    #[serde(rename = "R0")]
    r0: f64,
    coeffs: Vec<[f64; 2]>,
}

impl TryFrom<ExpansionDoc> for FBExpansion {
    type Error = Error;

    fn try_from(d: ExpansionDoc) -> Result<Self> {
        let coeffs = d
            .coeffs
            .iter()
            .map(|c| Complex64::new(c[0], c[1]))
            .collect();
        FBExpansion::new(d.m, d.n, d.r0, coeffs)
    }
}

impl From<FBExpansion> for ExpansionDoc {
    fn from(e: FBExpansion) -> Self {
        ExpansionDoc {
            m: e.m_max,
            n: e.n_max,
            r0: e.r0,
            coeffs: e.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl FBExpansion {
    pub fn new(m_max: u32, n_max: u32, r0: f64, coeffs: Vec<Complex64>) -> Result<Self> {
        check_radius(r0)?;
        if n_max == 0 {
            return Err(Error::Usage("N must be at least 1".into()));
        }
        let dim = space_dim(m_max, n_max);
        if coeffs.len() != dim {
            return Err(Error::Usage(format!(
                "S_{{{m_max},{n_max}}} needs {dim} coefficients, got {}",
                coeffs.len()
            )));
        }
        if coeffs
            .iter()
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::Usage("non-finite coefficient".into()));
        }
        Ok(Self {
            m_max,
            n_max,
            r0,
            coeffs,
        })
    }

    pub fn zeros(m_max: u32, n_max: u32, r0: f64) -> Result<Self> {
        Self::new(
            m_max,
            n_max,
            r0,
            vec![Complex64::new(0.0, 0.0); space_dim(m_max, n_max)],
        )
    }

    pub fn m_max(&self) -> u32 {
        self.m_max
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn get(&self, m: i32, n: u32) -> Result<Complex64> {
        Ok(self.coeffs[pack_index(m, n, self.m_max, self.n_max)?])
    }

    pub fn set(&mut self, m: i32, n: u32, value: Complex64) -> Result<()> {
        let p = pack_index(m, n, self.m_max, self.n_max)?;
        self.coeffs[p] = value;
        Ok(())
    }

    /// Euclidean norm of the coefficients, equal to the L2(D0) norm of the field.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Average with the image under `s_{-m,n} = (-1)^m conj(s_{m,n})`, the symmetry of real fields.
    pub fn symmetrized_real(&self) -> Self {
        let mut out = self.clone();
        for m in 0..=self.m_max as i32 {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            for n in 1..=self.n_max {
                let a = self.get(m, n).unwrap();
                let b = self.get(-m, n).unwrap();
                let plus = 0.5 * (a + sign * b.conj());
                out.set(m, n, plus).unwrap();
                out.set(-m, n, sign * plus.conj()).unwrap();
            }
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Tensor grid on the disc: Gauss-Legendre in `r` on `[0, R0]`, uniform trapezoid in `theta`.
/// Point `(i, t)` is stored at `i * n_theta + t`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarGrid {
    r0: f64,
    radii: Vec<f64>,
    radial_weights: Vec<f64>,
    n_theta: usize,
}

impl PolarGrid {
    pub const DEFAULT_RADIAL: usize = 160;
    pub const DEFAULT_ANGULAR: usize = 256;

    pub fn new(r0: f64, n_radial: usize, n_theta: usize) -> Result<Self> {
        check_radius(r0)?;
        if n_radial == 0 || n_theta < 2 {
            return Err(Error::Usage(format!(
                "grid needs at least 1 radial and 2 angular nodes, got {n_radial} x {n_theta}"
            )));
        }
        let (radii, radial_weights) = gauss_legendre_on(n_radial, 0.0, r0);
        Ok(Self {
            r0,
            radii,
            radial_weights,
            n_theta,
        })
    }

    pub fn with_defaults(r0: f64) -> Result<Self> {
        Self::new(r0, Self::DEFAULT_RADIAL, Self::DEFAULT_ANGULAR)
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    /// Gauss-Legendre weights for `dr` (without the factor `r`).
    pub fn radial_weights(&self) -> &[f64] {
        &self.radial_weights
    }

    pub fn n_radial(&self) -> usize {
        self.radii.len()
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.n_theta
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn theta(&self, t: usize) -> f64 {
        2.0 * PI * t as f64 / self.n_theta as f64
    }

    pub fn point(&self, idx: usize) -> (f64, f64) {
        let i = idx / self.n_theta;
        let t = idx % self.n_theta;
        (self.radii[i], self.theta(t))
    }

    pub fn cartesian(&self, idx: usize) -> (f64, f64) {
        let (r, th) = self.point(idx);
        (r * th.cos(), r * th.sin())
    }

    /// Area weight `w_i r_i 2 pi / n_theta` of a node.
    pub fn weight(&self, idx: usize) -> f64 {
        let i = idx / self.n_theta;
        self.radial_weights[i] * self.radii[i] * 2.0 * PI / self.n_theta as f64
    }

    pub fn sample_polar<F: Fn(f64, f64) -> Complex64>(&self, f: F) -> Vec<Complex64> {
        (0..self.len())
            .map(|idx| {
                let (r, th) = self.point(idx);
                f(r, th)
            })
            .collect()
    }

    pub fn sample_xy<F: Fn(f64, f64) -> f64>(&self, f: F) -> Vec<Complex64> {
        (0..self.len())
            .map(|idx| {
                let (x, y) = self.cartesian(idx);
                Complex64::new(f(x, y), 0.0)
            })
            .collect()
    }

    fn check_len(&self, a: &[Complex64]) -> Result<()> {
        if a.len() != self.len() {
            return Err(Error::Usage(format!(
                "field has {} samples, grid has {}",
                a.len(),
                self.len()
            )));
        }
        Ok(())
    }

    /// `int a conj(b)` over the disc.
    pub fn inner(&self, a: &[Complex64], b: &[Complex64]) -> Result<Complex64> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(a.iter()
            .zip(b)
            .enumerate()
            .map(|(idx, (x, y))| x * y.conj() * self.weight(idx))
            .sum())
    }

    pub fn norm(&self, a: &[Complex64]) -> Result<f64> {
        self.check_len(a)?;
        Ok(a.iter()
            .enumerate()
            .map(|(idx, x)| x.norm_sqr() * self.weight(idx))
            .sum::<f64>()
            .sqrt())
    }

    /// CSV with columns `r,theta,re,im`.
    pub fn write_csv_polar<W: Write>(&self, values: &[Complex64], mut w: W) -> Result<()> {
        self.check_len(values)?;
        writeln!(w, "r,theta,re,im")?;
        for (idx, v) in values.iter().enumerate() {
            let (r, th) = self.point(idx);
            writeln!(w, "{r:.16e},{th:.16e},{:.16e},{:.16e}", v.re, v.im)?;
        }
        Ok(())
    }

    /// CSV with columns `x,y,re,im`.
    pub fn write_csv_xy<W: Write>(&self, values: &[Complex64], mut w: W) -> Result<()> {
        self.check_len(values)?;
        writeln!(w, "x,y,re,im")?;
        for (idx, v) in values.iter().enumerate() {
            let (x, y) = self.cartesian(idx);
            writeln!(w, "{x:.16e},{y:.16e},{:.16e},{:.16e}", v.re, v.im)?;
        }
        Ok(())
    }
}

/// Project grid samples onto `S_{M,N}` over the grid's disc.
pub fn project(
    values: &[Complex64],
    grid: &PolarGrid,
    m_max: u32,
    n_max: u32,
) -> Result<FBExpansion> {
    FBSpace::new(m_max, n_max, grid.r0())?.project(values, grid)
}

/// Evaluate an expansion on every grid node.
pub fn synthesize(expansion: &FBExpansion, grid: &PolarGrid) -> Result<Vec<Complex64>> {
    FBSpace::new(expansion.m_max(), expansion.n_max(), expansion.r0())?.synthesize(expansion, grid)
}
