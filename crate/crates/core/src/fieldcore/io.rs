//! Text formats: `LCFIELD 1` field dumps and `LCJUMPS 1` facet lists.

use std::fmt::Write as _;

use super::field::DirectorField;
use super::grid::Grid;
use super::jumps::JumpSet;
use crate::error::{LcError, Result};

/// A real with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_field(f: &DirectorField) -> String {
    let g = &f.grid;
    let mut s = String::with_capacity(64 + g.len() * 80);
    s.push_str("LCFIELD 1\n");
    let _ = writeln!(s, "dims {} {} {}", g.dims[0], g.dims[1], g.dims[2]);
    let _ = writeln!(s, "spacing {} {} {}", fmt17(g.spacing[0]), fmt17(g.spacing[1]), fmt17(g.spacing[2]));
    let _ = writeln!(s, "origin {} {} {}", fmt17(g.origin[0]), fmt17(g.origin[1]), fmt17(g.origin[2]));
    for (idx, v) in f.values.iter().enumerate() {
        let [i, j, k] = g.coords(idx);
        let _ = writeln!(s, "{i} {j} {k} {} {} {}", fmt17(v[0]), fmt17(v[1]), fmt17(v[2]));
    }
    s
}

fn parse_err(line: usize, msg: &str) -> LcError {
    LcError::Parse(format!("line {line}: {msg}"))
}

fn header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, key: &str) -> Result<Vec<&'a str>> {
    let (n, line) = lines.next().ok_or_else(|| parse_err(0, "truncated header"))?;
    let mut it = line.split_whitespace();
    if it.next() != Some(key) {
        return Err(parse_err(n + 1, &format!("expected `{key}`")));
    }
    Ok(it.collect())
}

fn nums<T: std::str::FromStr>(parts: &[&str], n: usize, line: usize) -> Result<Vec<T>> {
    if parts.len() != n {
        return Err(parse_err(line, &format!("expected {n} numbers")));
    }
    parts
        .iter()
        .map(|p| p.parse::<T>().map_err(|_| parse_err(line, &format!("bad number `{p}`"))))
        .collect()
}

pub fn read_field(text: &str) -> Result<DirectorField> {
    let mut lines = text.lines().enumerate();
    if header(&mut lines, "LCFIELD")? != ["1"] {
        return Err(parse_err(1, "unsupported LCFIELD version"));
    }
    let d: Vec<usize> = nums(&header(&mut lines, "dims")?, 3, 2)?;
    let h: Vec<f64> = nums(&header(&mut lines, "spacing")?, 3, 3)?;
    let o: Vec<f64> = nums(&header(&mut lines, "origin")?, 3, 4)?;
    let grid = Grid::new([d[0], d[1], d[2]], [h[0], h[1], h[2]], [o[0], o[1], o[2]])?;
    let mut values = vec![[0.0; 3]; grid.len()];
    let mut seen = 0usize;
    for (n, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 6 {
            return Err(parse_err(n + 1, "expected `i j k vx vy vz`"));
        }
        let ijk: Vec<usize> = nums(&parts[..3], 3, n + 1)?;
        let v: Vec<f64> = nums(&parts[3..], 3, n + 1)?;
        if (0..3).any(|a| ijk[a] >= grid.dims[a]) {
            return Err(parse_err(n + 1, "cell outside grid"));
        }
        values[grid.index(ijk[0], ijk[1], ijk[2])] = [v[0], v[1], v[2]];
        seen += 1;
    }
    if seen != grid.len() {
        return Err(LcError::Parse(format!("{seen} cells for a grid of {}", grid.len())));
    }
    DirectorField::new(grid, values)
}

pub fn write_jumps(js: &JumpSet) -> String {
    let mut s = String::from("LCJUMPS 1\n");
    for f in js.facets() {
        let [i, j, k] = js.grid.coords(f.cell);
        let _ = writeln!(s, "{i} {j} {k} {}", f.axis);
    }
    s
}

/// Reads a facet list for `grid`; traces are taken from `field` when given.
pub fn read_jumps(text: &str, grid: &Grid, field: Option<&DirectorField>) -> Result<JumpSet> {
    let mut lines = text.lines().enumerate();
    if header(&mut lines, "LCJUMPS")? != ["1"] {
        return Err(parse_err(1, "unsupported LCJUMPS version"));
    }
    let mut js = JumpSet::new(grid.clone());
    for (n, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let v: Vec<usize> = nums(&parts, 4, n + 1)?;
        if (0..3).any(|a| v[a] >= grid.dims[a]) {
            return Err(parse_err(n + 1, "cell outside grid"));
        }
        let cell = grid.index(v[0], v[1], v[2]);
        match field {
            Some(f) => js.insert_from(f, cell, v[3])?,
            None => js.insert(cell, v[3], [[0.0; 3]; 2])?,
        };
    }
    Ok(js)
}
