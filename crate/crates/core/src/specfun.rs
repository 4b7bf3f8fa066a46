//! Integer-order Bessel functions of real argument, their zeros, and the
//! coupling norm `A_n(x) = sqrt(J_n(x)^2 - J_{n-1}(x) J_{n+1}(x))`.
//!
//! Regimes for `J_m(x)`:
//!
//! * `x <= 3`: ascending power series.
//! * `m <= 1` and `x >= 25`: Hankel asymptotic expansion, truncated at the
//!   smallest term.
//! * otherwise: Miller backward recurrence normalised with
//!   `J_0 + 2 sum_k J_{2k} = 1`.
//!
//! `Y_0` and `Y_1` come from the Neumann series in even/odd `J_k` (small and
//! mid range) or the Hankel expansion (large range); higher orders use upward
//! recurrence, which is stable for `Y`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Largest supported |order|.
pub const MAX_ORDER: i32 = 400;
/// Largest supported argument.
pub const MAX_ARG: f64 = 5000.0;

const SERIES_MAX: f64 = 3.0;
const ASYMPTOTIC_MIN: f64 = 25.0;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const ZERO_ITER_CAP: usize = 60;

fn check_args(m: i32, x: f64) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!(
            "Bessel argument must be finite and >= 0, got {x}"
        )));
    }
    if m.abs() > MAX_ORDER || x > MAX_ARG {
        return Err(Error::Domain(format!(
            "Bessel evaluation outside supported range (|m| <= {MAX_ORDER}, x <= {MAX_ARG}): m = {m}, x = {x}"
        )));
    }
    Ok(())
}

#[inline]
fn parity_sign(m: i32) -> f64 {
    if m.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `J_m(x)` by the ascending series.
pub(crate) fn j_series(m: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut lead = 1.0;
    for j in 1..=m {
        lead *= half / j as f64;
    }
    if lead == 0.0 {
        return 0.0;
    }
    let q = half * half;
    let mut term = lead;
    let mut sum = lead;
    let mut k = 0u32;
    loop {
        k += 1;
        term *= -q / (k as f64 * (k + m) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() || k > 200 {
            break;
        }
    }
    sum
}

fn miller_start(min_order: usize, x: f64) -> usize {
    let base = (min_order as f64).max(x);
    let n = base + 25.0 + 12.0 * base.max(1.0).cbrt();
    let mut n = n.ceil() as usize;
    if n % 2 == 1 {
        n += 1;
    }
    n
}

/// Miller backward recurrence. Returns `J_0 ..= J_N` for some `N >= min_order`.
pub(crate) fn j_miller(min_order: usize, x: f64) -> Vec<f64> {
    debug_assert!(x > 0.0);
    let start = miller_start(min_order, x);
    let mut vals = vec![0.0; start + 1];
    let two_over_x = 2.0 / x;
    let mut above = 0.0;
    let mut cur = 1e-250;
    let mut norm = 0.0;
    vals[start] = cur;
    if start.is_multiple_of(2) {
        norm += 2.0 * cur;
    }
    for k in (1..=start).rev() {
        let next = k as f64 * two_over_x * cur - above;
        above = cur;
        cur = next;
        vals[k - 1] = cur;
        if k - 1 > 0 && (k - 1) % 2 == 0 {
            norm += 2.0 * cur;
        }
        if cur.abs() > 1e250 {
            let s = 1e-250;
            cur *= s;
            above *= s;
            norm *= s;
            for v in &mut vals[k - 1..] {
                *v *= s;
            }
        }
    }
    norm += vals[0];
    let scale = 1.0 / norm;
    for v in &mut vals {
        *v *= scale;
    }
    vals
}

/// Hankel asymptotic expansion for `(J_m(x), Y_m(x))`, `x` large compared with `m^2`.
pub(crate) fn hankel_asymptotic(m: u32, x: f64) -> (f64, f64) {
    let mu = 4.0 * (m as f64) * (m as f64);
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        let mag = term.abs();
        if mag > prev || mag < 1e-18 {
            break;
        }
        prev = mag;
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
    }
    let chi = x - (0.5 * m as f64 + 0.25) * PI;
    let (s, c) = chi.sin_cos();
    let amp = (2.0 / (PI * x)).sqrt();
    (amp * (p * c - q * s), amp * (p * s + q * c))
}

/// `J_m(x)` for `m >= 0`, `x >= 0`, no range checks.
pub(crate) fn j_unchecked(m: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    if x <= SERIES_MAX {
        return j_series(m, x);
    }
    if m <= 1 && x >= ASYMPTOTIC_MIN {
        return hankel_asymptotic(m, x).0;
    }
    j_miller(m as usize, x)[m as usize]
}

/// `(Y_0(x), Y_1(x))`, `x > 0`.
pub(crate) fn y01(x: f64) -> (f64, f64) {
    if x >= ASYMPTOTIC_MIN {
        return (hankel_asymptotic(0, x).1, hankel_asymptotic(1, x).1);
    }
    let j = j_miller(2, x);
    y01_from_j(&j, x)
}

fn y01_from_j(j: &[f64], x: f64) -> (f64, f64) {
    let lg = (0.5 * x).ln() + EULER_GAMMA;
    let mut even = 0.0;
    let mut odd = 0.0;
    let mut k = 1usize;
    while 2 * k + 1 < j.len() {
        let kf = k as f64;
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        even += sign * j[2 * k] / kf;
        odd -= sign * (2.0 * kf + 1.0) / (kf * (kf + 1.0)) * j[2 * k + 1];
        k += 1;
    }
    let y0 = 2.0 / PI * (lg * j[0] - 2.0 * even);
    let y1 = 2.0 / PI * ((lg - 1.0) * j[1] - j[0] / x + odd);
    (y0, y1)
}

/// `J_0(x), Y_0(x)` with the fast regime split used by the Green's kernel.
pub(crate) fn j0_y0(x: f64) -> (f64, f64) {
    if x >= ASYMPTOTIC_MIN {
        return hankel_asymptotic(0, x);
    }
    let j = j_miller(2, x);
    let (y0, _) = y01_from_j(&j, x);
    let j0 = if x <= SERIES_MAX {
        j_series(0, x)
    } else {
        j[0]
    };
    (j0, y0)
}

/// `Y_0 ..= Y_max` at `x > 0`. Entries may overflow to infinity for orders far beyond `x`.
pub(crate) fn y_orders_unchecked(max_order: usize, x: f64) -> Vec<f64> {
    let (y0, y1) = y01(x);
    let mut out = Vec::with_capacity(max_order + 1);
    out.push(y0);
    if max_order >= 1 {
        out.push(y1);
    }
    for k in 1..max_order {
        let next = 2.0 * k as f64 / x * out[k] - out[k - 1];
        out.push(next);
    }
    out
}

/// `J_0 ..= J_max` at `x >= 0`, no range checks.
pub(crate) fn j_orders_unchecked(max_order: usize, x: f64) -> Vec<f64> {
    if x == 0.0 {
        let mut v = vec![0.0; max_order + 1];
        v[0] = 1.0;
        return v;
    }
    let mut v = j_miller(max_order, x);
    v.truncate(max_order + 1);
    v
}

/// Bessel function of the first kind, `J_m(x)`. Negative orders use `J_{-m} = (-1)^m J_m`.
pub fn bessel_j(m: i32, x: f64) -> Result<f64> {
    check_args(m, x)?;
    Ok(parity_sign(m.min(0)) * j_unchecked(m.unsigned_abs(), x))
}

/// `J_m'(x) = (J_{m-1}(x) - J_{m+1}(x)) / 2`.
pub fn bessel_j_derivative(m: i32, x: f64) -> Result<f64> {
    check_args(m, x)?;
    check_args(m + 1, x)?;
    check_args(m - 1, x)?;
    let lower = bessel_j(m - 1, x)?;
    let upper = bessel_j(m + 1, x)?;
    Ok(0.5 * (lower - upper))
}

/// Bessel function of the second kind, `Y_m(x)`, `x > 0`.
pub fn bessel_y(m: i32, x: f64) -> Result<f64> {
    check_args(m, x)?;
    if x <= 0.0 {
        return Err(Error::Domain(format!("Y_m diverges at x = {x}")));
    }
    let n = m.unsigned_abs() as usize;
    let y = y_orders_unchecked(n, x)[n];
    Ok(parity_sign(m.min(0)) * y)
}

/// All orders `J_0 ..= J_max` at one argument.
pub fn bessel_j_orders(max_order: u32, x: f64) -> Result<Vec<f64>> {
    check_args(max_order as i32, x)?;
    Ok(j_orders_unchecked(max_order as usize, x))
}

/// All orders `Y_0 ..= Y_max` at one argument `x > 0`.
pub fn bessel_y_orders(max_order: u32, x: f64) -> Result<Vec<f64>> {
    check_args(max_order as i32, x)?;
    if x <= 0.0 {
        return Err(Error::Domain(format!("Y_m diverges at x = {x}")));
    }
    Ok(y_orders_unchecked(max_order as usize, x))
}

/// Hankel function of the first kind, `H_n^(1)(x) = J_n(x) + i Y_n(x)`.
pub fn hankel1(n: i32, x: f64) -> Result<Complex64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("H_n^(1) requires x > 0, got {x}")));
    }
    let j = bessel_j(n, x)?;
    let y = bessel_y(n, x)?;
    Ok(Complex64::new(j, y))
}

/// `H_n^(1)(x)` for every order `0 ..= max_order`, `x > 0`.
pub fn hankel1_orders(max_order: u32, x: f64) -> Result<Vec<Complex64>> {
    check_args(max_order as i32, x)?;
    if x <= 0.0 {
        return Err(Error::Domain(format!("H_n^(1) requires x > 0, got {x}")));
    }
    Ok(hankel1_orders_unchecked(max_order as usize, x))
}

pub(crate) fn hankel1_orders_unchecked(max_order: usize, x: f64) -> Vec<Complex64> {
    let j = j_orders_unchecked(max_order, x);
    let y = y_orders_unchecked(max_order, x);
    j.into_iter()
        .zip(y)
        .map(|(a, b)| Complex64::new(a, b))
        .collect()
}

/// `A_n(kappa) = sqrt(J_n^2 - J_{n-1} J_{n+1})`, symmetric in the sign of `n`.
pub fn coupling_norm(n: i32, kappa: f64) -> Result<f64> {
    if !(kappa > 0.0) {
        return Err(Error::Domain(format!(
            "coupling norm requires kappa > 0, got {kappa}"
        )));
    }
    check_args(n.abs() + 1, kappa)?;
    coupling_norm_unchecked(n.unsigned_abs(), kappa)
}

pub(crate) fn coupling_norm_unchecked(n: u32, kappa: f64) -> Result<f64> {
    let jn = j_unchecked(n, kappa);
    let jp = j_unchecked(n + 1, kappa);
    let jm = if n == 0 {
        -jp
    } else {
        j_unchecked(n - 1, kappa)
    };
    radicand_sqrt(jn * jn - jm * jp, n, kappa)
}

fn radicand_sqrt(r: f64, n: u32, kappa: f64) -> Result<f64> {
    if r >= 0.0 {
        Ok(r.sqrt())
    } else if r >= -1e-12 {
        Ok(0.0)
    } else {
        Err(Error::Numeric(format!(
            "negative radicand {r:e} in A_{n}({kappa})"
        )))
    }
}

fn mcmahon(m: u32, n: u32) -> f64 {
    let mu = 4.0 * (m as f64).powi(2);
    let beta = (n as f64 + 0.5 * m as f64 - 0.25) * PI;
    let b8 = 8.0 * beta;
    beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3))
}

fn j_and_next(m: u32, x: f64) -> (f64, f64) {
    if x <= SERIES_MAX {
        (j_series(m, x), j_series(m + 1, x))
    } else {
        let v = j_miller(m as usize + 1, x);
        (v[m as usize], v[m as usize + 1])
    }
}

/// Safeguarded Newton inside a sign-change bracket.
fn refine_zero(m: u32, mut lo: f64, mut hi: f64, guess: f64) -> Result<f64> {
    let f_lo = j_and_next(m, lo).0;
    let mut x = if guess > lo && guess < hi {
        guess
    } else {
        0.5 * (lo + hi)
    };
    for it in 0..ZERO_ITER_CAP {
        let (f, next) = j_and_next(m, x);
        if f == 0.0 {
            return Ok(x);
        }
        if (f > 0.0) == (f_lo > 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        let df = m as f64 / x * f - next;
        let newton = x - f / df;
        let candidate = if df != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (candidate - x).abs();
        x = candidate;
        if step <= 4.0 * f64::EPSILON * x || hi - lo <= 4.0 * f64::EPSILON * x {
            return Ok(x);
        }
        if it + 1 == ZERO_ITER_CAP {
            break;
        }
    }
    Err(Error::NonConvergence {
        what: format!("zero of J_{m} in [{lo}, {hi}]"),
        iterations: ZERO_ITER_CAP,
        last: x,
    })
}

/// First `count` positive zeros of `J_m`.
pub fn zeros_of_order(m: u32, count: u32) -> Result<Vec<f64>> {
    if m as i32 > MAX_ORDER {
        return Err(Error::Domain(format!("order {m} exceeds {MAX_ORDER}")));
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    // J_m > 0 on (0, j_{m,1}); m + pi/2 + 1/2 is a lower bound for j_{m,1}.
    let mut a = m as f64 + FRAC_PI_2 + 0.5;
    if j_and_next(m, a).0 <= 0.0 {
        a = (m as f64).max(0.5);
    }
    let step = 1.0;
    let mut out = Vec::with_capacity(count as usize);
    let mut fa = j_and_next(m, a).0;
    while out.len() < count as usize {
        let b = a + step;
        if b > MAX_ARG {
            return Err(Error::Domain(format!(
                "zero j_{{{m},{}}} beyond supported argument range",
                out.len() + 1
            )));
        }
        let fb = j_and_next(m, b).0;
        if fb == 0.0 {
            out.push(b);
            a = b + 1e-9;
            fa = j_and_next(m, a).0;
            continue;
        }
        if (fa > 0.0) != (fb > 0.0) {
            let n = out.len() as u32 + 1;
            out.push(refine_zero(m, a, b, mcmahon(m, n))?);
        }
        a = b;
        fa = fb;
    }
    Ok(out)
}

/// The `n`-th positive zero `j_{m,n}` of `J_m`.
pub fn bessel_zero(m: u32, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::Usage("zero index n starts at 1".into()));
    }
    Ok(zeros_of_order(m, n)?[n as usize - 1])
}

/// Immutable table of `j_{m,n}` for `0 <= m <= max_order`, `1 <= n <= max_index`.
#[derive(Debug, Clone, PartialEq)]
pub struct BesselZeroTable {
    max_order: u32,
    max_index: u32,
    zeros: Vec<Vec<f64>>,
}

impl BesselZeroTable {
    pub fn new(max_order: u32, max_index: u32) -> Result<Self> {
        if max_index == 0 {
            return Err(Error::Usage("zero table needs max_index >= 1".into()));
        }
        let zeros = (0..=max_order)
            .map(|m| zeros_of_order(m, max_index))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            max_order,
            max_index,
            zeros,
        })
    }

    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    pub fn max_index(&self) -> u32 {
        self.max_index
    }

    pub fn covers(&self, m: u32, n: u32) -> bool {
        m <= self.max_order && n >= 1 && n <= self.max_index
    }

    /// `j_{m,n}`, `None` outside the table.
    pub fn get(&self, m: u32, n: u32) -> Option<f64> {
        if self.covers(m, n) {
            Some(self.zeros[m as usize][n as usize - 1])
        } else {
            None
        }
    }

    pub fn zero(&self, m: u32, n: u32) -> Result<f64> {
        self.get(m, n).ok_or_else(|| {
            Error::Usage(format!(
                "zero j_{{{m},{n}}} outside table (max order {}, max index {})",
                self.max_order, self.max_index
            ))
        })
    }

    /// Zeros of one order, `j_{m,1} ..`.
    pub fn order(&self, m: u32) -> Option<&[f64]> {
        self.zeros.get(m as usize).map(|v| v.as_slice())
    }

    /// `(m, n, j_mn)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        self.zeros.iter().enumerate().flat_map(|(m, row)| {
            row.iter()
                .enumerate()
                .map(move |(i, &z)| (m as u32, i as u32 + 1, z))
        })
    }

    /// SHA-256 over the little-endian bytes of every stored zero.
    pub fn digest_hex(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.max_order.to_le_bytes());
        h.update(self.max_index.to_le_bytes());
        for (_, _, z) in self.iter() {
            h.update(z.to_le_bytes());
        }
        hex::encode(h.finalize())
    }
}
