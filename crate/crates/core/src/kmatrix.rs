//! Block-diagonal change of basis `K` from Fourier-Bessel coefficients to
//! SVE coefficients. Entry `(i, n)` of block `m` is `(phi_{m,n}, psi_m^{k~_{m,i}})`,
//! the same for `+m` and `-m`.

use std::io::Write;

use nalgebra::{DMatrix, Dyn, LU};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fbbasis::{pack_index, space_dim, FBSpace};
use crate::freqplan::FrequencyPlan;
use crate::specfun::coupling_norm_unchecked;

/// Relative residual bound accepted after a block solve.
pub const SOLVE_RESIDUAL: f64 = 1e-10;

/// `(phi_{m,n}, psi_m^{k})` over the disc. Uses the closed form
/// `2 I / (R0^2 |J_{m+1}(j_{m,n})| A_m(k R0))` with `I` the radial overlap.
pub fn k_entry_in(space: &FBSpace, m: u32, n: u32, k: f64) -> Result<f64> {
    if m > space.m_max() || n == 0 || n > space.n_max() {
        return Err(Error::Usage(format!(
            "(m={m}, n={n}) outside S_{{{},{}}}",
            space.m_max(),
            space.n_max()
        )));
    }
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Usage(format!("frequency must be positive, got {k}")));
    }
    let r0 = space.r0();
    let a = coupling_norm_unchecked(m, k * r0)?;
    if !(a > 1e-290) {
        return Err(Error::Numeric(format!(
            "A_{m}({}) = {a:e} vanishes; K entry undefined",
            k * r0
        )));
    }
    let overlap = space.radial_overlap(m, n, k);
    Ok(2.0 * overlap / (r0 * r0 * space.j_next(m, n).abs() * a))
}

/// Standalone entry; computes the zeros of order `m` up to `n`.
pub fn k_entry(m: u32, n: u32, k: f64, r0: f64) -> Result<f64> {
    let space = FBSpace::new(m, n, r0)?;
    k_entry_in(&space, m, n, k)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceReport {
    /// `margins[m][i] = |a_ii| - sum_{j != i} |a_ij|` for block `m`.
    pub margins: Vec<Vec<f64>>,
    pub min_margin: f64,
    pub dominant: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KMatrix {
    m_max: u32,
    n_max: u32,
    /// Row frequencies `k~_{m,i}`, block-major.
    frequencies: Vec<Vec<f64>>,
    blocks: Vec<DMatrix<f64>>,
}

impl KMatrix {
    /// Builds `K` with row `i` of block `m` at frequency `rows[m][i-1]`.
    pub fn from_frequencies(space: &FBSpace, rows: Vec<Vec<f64>>) -> Result<Self> {
        let (mm, nn) = (space.m_max(), space.n_max());
        if rows.len() != mm as usize + 1 || rows.iter().any(|r| r.len() != nn as usize) {
            return Err(Error::Usage(format!(
                "need {} rows of {nn} frequencies",
                mm + 1
            )));
        }
        let mut blocks = Vec::with_capacity(rows.len());
        for (m, freqs) in rows.iter().enumerate() {
            let mut b = DMatrix::zeros(nn as usize, nn as usize);
            for (i, &k) in freqs.iter().enumerate() {
                for n in 1..=nn {
                    let v = k_entry_in(space, m as u32, n, k)?;
                    if !v.is_finite() {
                        return Err(Error::Numeric(format!(
                            "non-finite K entry at block {m}, row {}, column {n}",
                            i + 1
                        )));
                    }
                    b[(i, n as usize - 1)] = v;
                }
            }
            blocks.push(b);
        }
        Ok(Self {
            m_max: mm,
            n_max: nn,
            frequencies: rows,
            blocks,
        })
    }

    /// Assembles `K` for a plan's assignment.
    pub fn assemble(plan: &FrequencyPlan, space: &FBSpace) -> Result<Self> {
        if space.m_max() != plan.m_max || space.n_max() != plan.n_max || space.r0() != plan.r0 {
            return Err(Error::Usage("basis does not match plan".into()));
        }
        let rows = (0..=plan.m_max)
            .map(|m| {
                (1..=plan.n_max)
                    .map(|i| plan.assigned(m, i))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_frequencies(space, rows)
    }

    pub fn m_max(&self) -> u32 {
        self.m_max
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    /// Block `K_{|m|}`.
    pub fn block(&self, m: u32) -> &DMatrix<f64> {
        &self.blocks[m as usize]
    }

    pub fn blocks(&self) -> &[DMatrix<f64>] {
        &self.blocks
    }

    pub fn row_frequencies(&self, m: u32) -> &[f64] {
        &self.frequencies[m as usize]
    }

    /// Largest `|K - I|` entry.
    pub fn max_deviation_from_identity(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| (b - DMatrix::<f64>::identity(b.nrows(), b.ncols())).amax())
            .fold(0.0, f64::max)
    }

    pub fn dominance_report(&self) -> DominanceReport {
        let margins: Vec<Vec<f64>> = self.blocks.iter().map(row_margins).collect();
        let min_margin = margins
            .iter()
            .flatten()
            .copied()
            .fold(f64::INFINITY, f64::min);
        DominanceReport {
            dominant: min_margin > 0.0,
            min_margin,
            margins,
        }
    }

    /// `||K_m||_inf ||K_m^{-1}||_inf`; infinite for a singular block.
    pub fn condition_inf(&self, m: u32) -> f64 {
        let b = self.block(m);
        match b.clone().try_inverse() {
            Some(inv) => inf_norm(b) * inf_norm(&inv),
            None => f64::INFINITY,
        }
    }

    fn check_len(&self, v: &[Complex64]) -> Result<()> {
        let dim = space_dim(self.m_max, self.n_max);
        if v.len() != dim {
            return Err(Error::Usage(format!(
                "coefficient vector has length {}, expected {dim}",
                v.len()
            )));
        }
        Ok(())
    }

    fn gather(&self, v: &[Complex64], m: i32) -> DMatrix<f64> {
        let nn = self.n_max as usize;
        let mut out = DMatrix::zeros(nn, 2);
        for n in 1..=self.n_max {
            let c = v[pack_index(m, n, self.m_max, self.n_max).unwrap()];
            out[(n as usize - 1, 0)] = c.re;
            out[(n as usize - 1, 1)] = c.im;
        }
        out
    }

    fn scatter(&self, out: &mut [Complex64], m: i32, x: &DMatrix<f64>) {
        for n in 1..=self.n_max {
            let p = pack_index(m, n, self.m_max, self.n_max).unwrap();
            out[p] = Complex64::new(x[(n as usize - 1, 0)], x[(n as usize - 1, 1)]);
        }
    }

    /// `K S` in packed ordering.
    pub fn apply(&self, s: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(s)?;
        let mut out = vec![Complex64::new(0.0, 0.0); s.len()];
        let mm = self.m_max as i32;
        for m in -mm..=mm {
            let y = self.block(m.unsigned_abs()) * self.gather(s, m);
            self.scatter(&mut out, m, &y);
        }
        Ok(out)
    }

    /// Solves `K S = U` block by block; `-m` blocks reuse the `+m` factorisation.
    pub fn solve(&self, u: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(u)?;
        let mut out = vec![Complex64::new(0.0, 0.0); u.len()];
        let mm = self.m_max as i32;
        for a in 0..=self.m_max {
            let b = self.block(a);
            let lu: LU<f64, Dyn, Dyn> = b.clone().lu();
            let singular = || Error::SingularBlock {
                block: a as usize,
                min_margin: row_margins(b).into_iter().fold(f64::INFINITY, f64::min),
                margins: row_margins(b),
            };
            let signs: &[i32] = if a == 0 {
                &[0]
            } else {
                &[a as i32, -(a as i32)]
            };
            for &m in signs {
                debug_assert!(m.abs() <= mm);
                let rhs = self.gather(u, m);
                let x = lu.solve(&rhs).ok_or_else(singular)?;
                let resid = (b * &x - &rhs).amax();
                let scale = rhs.amax();
                if !x.iter().all(|v| v.is_finite())
                    || resid > SOLVE_RESIDUAL * scale.max(f64::MIN_POSITIVE)
                {
                    return Err(singular());
                }
                self.scatter(&mut out, m, &x);
            }
        }
        Ok(out)
    }

    /// One line per entry `block,row,col,k_row,value`, then `block,row,margin` lines.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "block,row,col,k_row,value")?;
        for (m, b) in self.blocks.iter().enumerate() {
            for i in 0..b.nrows() {
                for j in 0..b.ncols() {
                    writeln!(
                        w,
                        "{m},{},{},{:.16e},{:.16e}",
                        i + 1,
                        j + 1,
                        self.frequencies[m][i],
                        b[(i, j)]
                    )?;
                }
            }
        }
        writeln!(w, "block,row,margin")?;
        for (m, margins) in self.dominance_report().margins.iter().enumerate() {
            for (i, g) in margins.iter().enumerate() {
                writeln!(w, "{m},{},{g:.16e}", i + 1)?;
            }
        }
        Ok(())
    }
}

fn row_margins(b: &DMatrix<f64>) -> Vec<f64> {
    (0..b.nrows())
        .map(|i| {
            let off: f64 = (0..b.ncols())
                .filter(|&j| j != i)
                .map(|j| b[(i, j)].abs())
                .sum();
            b[(i, i)].abs() - off
        })
        .collect()
}

fn inf_norm(b: &DMatrix<f64>) -> f64 {
    b.row_iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_on_exact_zeros() {
        let space = FBSpace::new(4, 4, 1.0).unwrap();
        let rows = (0..=4)
            .map(|m| (1..=4).map(|n| space.wavenumber(m, n)).collect())
            .collect();
        let k = KMatrix::from_frequencies(&space, rows).unwrap();
        assert!(k.max_deviation_from_identity() < 1e-12);
        let rep = k.dominance_report();
        assert!(rep
            .margins
            .iter()
            .flatten()
            .all(|g| (g - 1.0).abs() < 1e-12));
        let u: Vec<Complex64> = (0..space.dim())
            .map(|p| Complex64::new(p as f64, -1.0))
            .collect();
        let s = k.solve(&u).unwrap();
        for (a, b) in s.iter().zip(&u) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn entry_matches_textbook_form() {
        let space = FBSpace::new(3, 3, 1.3).unwrap();
        for (m, n, kt) in [(0u32, 1u32, 2.1), (2, 3, 5.7), (3, 1, 4.9)] {
            let j = space.zero(m, n);
            let kmn = j / 1.3;
            let jn = space.j_next(m, n);
            let a = coupling_norm_unchecked(m, kt * 1.3).unwrap();
            let jm = crate::specfun::bessel_j(m as i32, kt * 1.3).unwrap();
            let want = -jn.signum() * 2.0 * jm * kmn / (1.3 * a * (kt * kt - kmn * kmn));
            let got = k_entry_in(&space, m, n, kt).unwrap();
            assert!(
                (got - want).abs() < 1e-12 * want.abs().max(1.0),
                "{got} {want}"
            );
        }
    }

    #[test]
    fn rejects_bad_vectors() {
        let space = FBSpace::new(1, 2, 1.0).unwrap();
        let rows = vec![vec![2.0, 5.0], vec![3.5, 7.0]];
        let k = KMatrix::from_frequencies(&space, rows).unwrap();
        assert!(k.solve(&[Complex64::new(1.0, 0.0)]).is_err());
        assert!(KMatrix::from_frequencies(&space, vec![vec![1.0]]).is_err());
    }

    #[test]
    fn singular_block_reported() {
        let space = FBSpace::new(0, 2, 1.0).unwrap();
        let k = space.wavenumber(0, 1);
        let km = KMatrix::from_frequencies(&space, vec![vec![k, k]]).unwrap();
        let u = vec![Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.0)];
        match km.solve(&u) {
            Err(Error::SingularBlock { block, margins, .. }) => {
                assert_eq!(block, 0);
                assert_eq!(margins.len(), 2);
            }
            other => panic!("expected singular block, got {other:?}"),
        }
    }
}
