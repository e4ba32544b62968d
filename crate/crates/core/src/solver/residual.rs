use crate::energy::curl;
use crate::error::{LcError, Result};
use crate::fieldcore::{DirectorField, Facet, JumpSet, NormalWeighted, StencilMap};
use crate::linalg::{cross, dot, frob2, norm, scale, Vec3};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ResidualStats {
    pub max: f64,
    pub mean: f64,
    /// (cell, |residual|) for every evaluated cell.
    pub cells: Vec<(usize, f64)>,
}

impl ResidualStats {
    fn from_values(cells: Vec<(usize, f64)>) -> Self {
        let max = cells.iter().map(|c| c.1).fold(0.0, f64::max);
        let mean = if cells.is_empty() { 0.0 } else { cells.iter().map(|c| c.1).sum::<f64>() / cells.len() as f64 };
        ResidualStats { max, mean, cells }
    }
}

/// |Δn - 2t curl n + λ n| with λ = |∇n|² + 2t n·curl n, at free nonzero
/// cells whose full 3-point stencil on every active axis avoids jumps and
/// zero cells.
pub fn el_residual(field: &DirectorField, jumps: &JumpSet, t: f64) -> Result<ResidualStats> {
    let grid = &field.grid;
    let map = StencilMap::new(grid, jumps)?;
    let axes = grid.active_axes();
    let mut out = Vec::new();
    'cells: for p in 0..grid.len() {
        if field.fixed[p] || field.is_zero(p) {
            continue;
        }
        let n = field.values[p];
        let mut lap = [0.0; 3];
        for &a in &axes {
            let (Some(m), Some(q)) = (grid.minus(p, a), grid.plus(p, a)) else { continue 'cells };
            if map.mask.has(m, a) || map.mask.has(p, a) || field.is_zero(m) || field.is_zero(q) {
                continue 'cells;
            }
            let h2 = grid.spacing[a] * grid.spacing[a];
            for i in 0..3 {
                lap[i] += (field.values[q][i] - 2.0 * n[i] + field.values[m][i]) / h2;
            }
        }
        let g = map.grad_at(&field.values, p);
        let c = curl(&g);
        let lambda = frob2(&g) + 2.0 * t * dot(n, c);
        let r: Vec3 = std::array::from_fn(|i| lap[i] - 2.0 * t * c[i] + lambda * n[i]);
        out.push((p, norm(r)));
    }
    Ok(ResidualStats::from_values(out))
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FacetResidual {
    pub max: f64,
    pub mean: f64,
    /// (facet, side, |residual|); side 0 is `facet.cell`, side 1 its +axis neighbor.
    pub sides: Vec<(Facet, u8, f64)>,
}

/// PCA radius used for facet normals in [`natural_bc_residual`]. Staircase
/// bias in the estimated normal falls roughly like 1/radius.
pub const NORMAL_RADIUS_CELLS: usize = 8;

/// |∂n/∂ν + t n×ν| on each free nonzero side of every jump facet, with ν the
/// estimated surface normal pointing out of that side and ∂n/∂ν taken from
/// the one-sided stencil.
pub fn natural_bc_residual(field: &DirectorField, jumps: &JumpSet, t: f64) -> Result<FacetResidual> {
    let normals = NormalWeighted { radius_cells: NORMAL_RADIUS_CELLS }.normals(jumps);
    natural_bc_residual_with(field, jumps, t, &normals)
}

/// As [`natural_bc_residual`] with one unit normal per facet supplied in
/// [`JumpSet::facets`] order; only the line matters, not the sign.
pub fn natural_bc_residual_with(field: &DirectorField, jumps: &JumpSet, t: f64, normals: &[Vec3]) -> Result<FacetResidual> {
    let grid = &field.grid;
    let map = StencilMap::new(grid, jumps)?;
    if normals.len() != jumps.len() {
        return Err(LcError::Dimension(format!("{} normals for {} facets", normals.len(), jumps.len())));
    }
    let mut sides = Vec::new();
    for (f, &nu) in jumps.facets().zip(normals) {
        let nu = if nu[f.axis] < 0.0 { scale(nu, -1.0) } else { nu };
        let q = grid.plus(f.cell, f.axis).expect("facet has a neighbor");
        for (side, c, out) in [(0u8, f.cell, nu), (1u8, q, scale(nu, -1.0))] {
            if field.fixed[c] || field.is_zero(c) {
                continue;
            }
            let g = map.grad_at(&field.values, c);
            let n = field.values[c];
            let nxv = cross(n, out);
            let r: Vec3 = std::array::from_fn(|i| dot(g[i], out) + t * nxv[i]);
            sides.push((f, side, norm(r)));
        }
    }
    let max = sides.iter().map(|s| s.2).fold(0.0, f64::max);
    let mean = if sides.is_empty() { 0.0 } else { sides.iter().map(|s| s.2).sum::<f64>() / sides.len() as f64 };
    Ok(FacetResidual { max, mean, sides })
}
