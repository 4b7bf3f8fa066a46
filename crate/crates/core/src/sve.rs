//! Singular system of the disc-to-circle forward operator
//! `(F_k s)(x) = int_{D0} G_k(x, y) s(y) dy`, `G_k = -(i/4) H_0^(1)(k |x - y|)`.
//!
//! With `kappa = kR`, `kappa0 = kR0`:
//!
//! * `sigma_n = sqrt(2R) pi R0 |H_n(kappa)| A_n(kappa0) / 4`
//! * `psi_n(r, theta) = J_n(kr) e^{in theta} / (sqrt(pi) R0 A_n(kappa0))`
//! * `phi_n(theta) = (2 pi R)^{-1/2} e^{i (arg H_n(kappa) - pi/2)} e^{in theta}`
//!
//! so that `F_k psi_n = sigma_n phi_n`. The factor `1/4` and the phase shift
//! `-pi/2` come from the `-(i/4)` in the Green's function.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forward::Measurement;
use crate::specfun::{self, bessel_zero, coupling_norm_unchecked};

/// Relative threshold below which a singular value counts as vanishing.
pub const VANISHING_SIGMA: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularSystem {
    k: f64,
    r: f64,
    r0: f64,
}

impl SingularSystem {
    pub fn new(k: f64, r: f64, r0: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::Usage(format!("frequency must be positive, got {k}")));
        }
        if !(r0 > 0.0 && r > r0 && r.is_finite()) {
            return Err(Error::Usage(format!(
                "need 0 < R0 < R, got R0 = {r0}, R = {r}"
            )));
        }
        Ok(Self { k, r, r0 })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn kappa(&self) -> f64 {
        self.k * self.r
    }

    pub fn kappa0(&self) -> f64 {
        self.k * self.r0
    }

    fn hankel(&self, n: i32) -> Result<Complex64> {
        specfun::hankel1(n, self.kappa())
    }

    fn raw_sigma(&self, n: u32) -> Result<f64> {
        let h = self.hankel(n as i32)?.norm();
        let a = coupling_norm_unchecked(n, self.kappa0())?;
        let s = (2.0 * self.r).sqrt() * PI * self.r0 * h * a / 4.0;
        if !s.is_finite() {
            return Err(Error::Numeric(format!(
                "sigma_{n} overflowed at k = {}",
                self.k
            )));
        }
        Ok(s)
    }
}

/// `sigma_{|n|}`; errors when it falls below `1e-13 * max(sigma_0, 1)`.
pub fn singular_value(n: i32, sys: &SingularSystem) -> Result<f64> {
    let s = sys.raw_sigma(n.unsigned_abs())?;
    let s0 = sys.raw_sigma(0)?;
    if s < VANISHING_SIGMA * s0.max(1.0) {
        return Err(Error::VanishingSingularValue {
            order: n,
            k: sys.k,
            value: s,
        });
    }
    Ok(s)
}

/// Right singular function `psi_n` on the source disc.
pub fn eval_psi(n: i32, sys: &SingularSystem, r: f64, theta: f64) -> Result<Complex64> {
    if !(r >= 0.0 && r <= sys.r0 * (1.0 + 1e-14)) {
        return Err(Error::Domain(format!(
            "r = {r} outside [0, R0 = {}]",
            sys.r0
        )));
    }
    let a = specfun::coupling_norm(n, sys.kappa0())?;
    let j = specfun::bessel_j(n, sys.k * r)?;
    Ok(Complex64::from_polar(
        j / (PI.sqrt() * sys.r0 * a),
        n as f64 * theta,
    ))
}

/// Unit-modulus phase `e^{i (arg H_n - pi/2)}` of the left singular function.
fn phase(n: i32, sys: &SingularSystem) -> Result<Complex64> {
    let h = sys.hankel(n)?;
    let arg = h.im.atan2(h.re);
    Ok(Complex64::from_polar(1.0, arg - 0.5 * PI))
}

/// Left singular function `phi_n` on the measurement circle.
pub fn eval_phi(n: i32, sys: &SingularSystem, theta: f64) -> Result<Complex64> {
    let scale = (2.0 * PI * sys.r).sqrt().recip();
    Ok(phase(n, sys)? * Complex64::from_polar(scale, n as f64 * theta))
}

/// Quadrature for the boundary inner product over the `P` uniform samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryRule {
    /// Periodic trapezoid rule.
    #[default]
    Trapezoid,
    /// Composite Simpson rule with weights `2h/3, 4h/3, ...`.
    Simpson,
}

impl BoundaryRule {
    fn weight(self, p: usize, h: f64) -> f64 {
        match self {
            BoundaryRule::Trapezoid => h,
            BoundaryRule::Simpson => {
                if p.is_multiple_of(2) {
                    2.0 * h / 3.0
                } else {
                    4.0 * h / 3.0
                }
            }
        }
    }
}

/// `(U, phi_i)` over the measurement circle with arc-length weights.
pub fn boundary_inner(
    meas: &Measurement,
    order: i32,
    sys: &SingularSystem,
    rule: BoundaryRule,
) -> Result<Complex64> {
    let p_count = meas.samples().len();
    let h = 2.0 * PI * sys.r / p_count as f64;
    let ph = phase(order, sys)?.conj();
    let scale = (2.0 * PI * sys.r).sqrt().recip();
    let mut acc = Complex64::new(0.0, 0.0);
    for (p, u) in meas.samples().iter().enumerate() {
        let theta = meas.theta(p);
        let basis = Complex64::from_polar(scale, -(order as f64) * theta);
        acc += u * basis * rule.weight(p, h);
    }
    Ok(acc * ph)
}

/// Largest order that can be extracted from `P` samples without aliasing.
pub fn alias_limit(samples: usize) -> i32 {
    (samples / 2) as i32 - 1
}

/// SVE coefficient `(U, phi_i) / sigma_{|i|}`.
pub fn extract_coefficient(
    meas: &Measurement,
    order: i32,
    sys: &SingularSystem,
    rule: BoundaryRule,
) -> Result<Complex64> {
    let tol = 1e-12;
    if (meas.k() - sys.k).abs() > tol * sys.k || (meas.r() - sys.r).abs() > tol * sys.r {
        return Err(Error::Usage(format!(
            "measurement (k = {}, R = {}) does not match singular system (k = {}, R = {})",
            meas.k(),
            meas.r(),
            sys.k,
            sys.r
        )));
    }
    let limit = alias_limit(meas.samples().len());
    if order.abs() > limit {
        return Err(Error::Usage(format!(
            "order {order} exceeds alias limit {limit} for {} samples",
            meas.samples().len()
        )));
    }
    let sigma = singular_value(order, sys)?;
    Ok(boundary_inner(meas, order, sys, rule)? / sigma)
}

/// Smallest `m` with `j_{m,1} >= k R0`.
pub fn bandwidth_lower(k: f64, r0: f64) -> Result<u32> {
    if !(k > 0.0 && r0 > 0.0) {
        return Err(Error::Usage(format!(
            "need k > 0 and R0 > 0, got k = {k}, R0 = {r0}"
        )));
    }
    let target = k * r0;
    // j_{m,1} > m, so the answer never exceeds ceil(k R0)
    let mut m = 0u32;
    loop {
        if bessel_zero(m, 1)? >= target {
            return Ok(m);
        }
        m += 1;
    }
}
