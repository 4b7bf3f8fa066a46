//! Field values on polar grid nodes as `r,theta,re,im` rows, radius-major.

use std::io::Write;

use helmsource_core::fbbasis::PolarGrid;
use helmsource_core::{Complex64, Error, Result};

const HEADER: &str = "r,theta,re,im";

pub fn write<W: Write>(grid: &PolarGrid, values: &[Complex64], mut w: W) -> Result<()> {
    if values.len() != grid.len() {
        return Err(Error::Usage(format!(
            "{} values for a grid of {} nodes",
            values.len(),
            grid.len()
        )));
    }
    writeln!(w, "{HEADER}")?;
    for (idx, v) in values.iter().enumerate() {
        let (r, t) = grid.point(idx);
        writeln!(w, "{r:.16e},{t:.16e},{:.16e},{:.16e}", v.re, v.im)?;
    }
    w.flush()?;
    Ok(())
}

/// Parses a field file and rebuilds the grid it was sampled on.
pub fn read(text: &str, r0: f64) -> Result<(PolarGrid, Vec<Complex64>)> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, h)) if h.trim() == HEADER => {}
        Some((i, h)) => {
            return Err(Error::Parse(format!(
                "line {}: expected header '{HEADER}', found '{h}'",
                i + 1
            )))
        }
        None => return Err(Error::Parse("empty field file".into())),
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != 4 {
            return Err(Error::Parse(format!(
                "line {}: expected 4 fields, found {}",
                i + 1,
                cells.len()
            )));
        }
        let mut row = [0.0; 4];
        for (slot, (cell, name)) in row.iter_mut().zip(cells.iter().zip(["r", "theta", "re", "im"])) {
            *slot = cell
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: field '{name}' is not a number: '{cell}'", i + 1)))?;
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("field file has no rows".into()));
    }
    let n_theta = rows.iter().take_while(|r| r[0] == rows[0][0]).count();
    if rows.len() % n_theta != 0 {
        return Err(Error::Parse(format!(
            "{} rows do not form rings of {n_theta} angles",
            rows.len()
        )));
    }
    let grid = PolarGrid::new(r0, rows.len() / n_theta, n_theta)?;
    for (idx, row) in rows.iter().enumerate() {
        let (r, t) = grid.point(idx);
        if (row[0] - r).abs() > 1e-12 * r0 || (row[1] - t).abs() > 1e-12 {
            return Err(Error::Parse(format!(
                "row {}: node ({}, {}) is not on the {}x{} polar grid of radius {r0}",
                idx + 1,
                row[0],
                row[1],
                grid.n_radial(),
                n_theta
            )));
        }
    }
    let values = rows.iter().map(|r| Complex64::new(r[2], r[3])).collect();
    Ok((grid, values))
}
