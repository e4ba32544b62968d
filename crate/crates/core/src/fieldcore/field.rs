use super::grid::Grid;
use crate::error::{LcError, Result};
use crate::linalg::{norm, Mat3, Vec3};

/// Tolerance on |v| used both for "is zero" and for "is unit".
pub const ZERO_TOL: f64 = 1e-9;

/// Director field with values in S² ∪ {0}.
///
/// `fixed` marks cells whose values are boundary data: the grid's strips plus
/// any cells pinned with [`DirectorField::fix_where`].
#[derive(Clone, Debug, PartialEq)]
pub struct DirectorField {
    pub grid: Grid,
    pub values: Vec<Vec3>,
    pub fixed: Vec<bool>,
}

impl DirectorField {
    /// Builds a field and checks the S² ∪ {0} invariant.
    pub fn new(grid: Grid, values: Vec<Vec3>) -> Result<Self> {
        let f = Self::unchecked(grid, values)?;
        f.validate()?;
        Ok(f)
    }

    /// Builds a field without the unit-length check (length is still checked).
    pub fn unchecked(grid: Grid, values: Vec<Vec3>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(LcError::Dimension(format!(
                "{} values for a grid of {} cells",
                values.len(),
                grid.len()
            )));
        }
        let fixed = (0..grid.len()).map(|i| grid.in_strip(i)).collect();
        Ok(DirectorField { grid, values, fixed })
    }

    pub fn uniform(grid: Grid, v: Vec3) -> Result<Self> {
        let n = grid.len();
        Self::new(grid, vec![v; n])
    }

    /// Samples `f` at cell centers.
    pub fn from_fn(grid: Grid, f: impl Fn(Vec3) -> Vec3) -> Result<Self> {
        let values = (0..grid.len()).map(|i| f(grid.center(i))).collect();
        Self::new(grid, values)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, v) in self.values.iter().enumerate() {
            let r = norm(*v);
            if !(r <= ZERO_TOL || (r - 1.0).abs() <= ZERO_TOL) {
                return Err(LcError::Domain(format!(
                    "cell {i}: |v| = {r} is neither 0 nor 1"
                )));
            }
        }
        Ok(())
    }

    #[inline]
    pub fn is_zero(&self, idx: usize) -> bool {
        norm(self.values[idx]) <= ZERO_TOL
    }

    /// Pins every cell whose center satisfies `pred` as boundary data.
    pub fn fix_where(&mut self, pred: impl Fn(Vec3) -> bool) {
        for i in 0..self.grid.len() {
            if pred(self.grid.center(i)) {
                self.fixed[i] = true;
            }
        }
    }

    pub fn flipped(&self) -> Self {
        let mut f = self.clone();
        for v in f.values.iter_mut() {
            *v = [-v[0], -v[1], -v[2]];
        }
        f
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField {
    pub grid: Grid,
    pub values: Vec<f64>,
}

impl ScalarField {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(LcError::Dimension("scalar field length".into()));
        }
        if let Some(i) = values.iter().position(|x| !x.is_finite()) {
            return Err(LcError::Numeric(format!("non-finite scalar at cell {i}")));
        }
        Ok(ScalarField { grid, values })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(Vec3) -> f64) -> Result<Self> {
        let values = (0..grid.len()).map(|i| f(grid.center(i))).collect();
        Self::new(grid, values)
    }
}

/// Symmetric traceless tensors stored as (q11, q12, q13, q22, q23).
#[derive(Clone, Debug, PartialEq)]
pub struct QTensorField {
    pub grid: Grid,
    pub values: Vec<[f64; 5]>,
}

impl QTensorField {
    pub fn new(grid: Grid, values: Vec<[f64; 5]>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(LcError::Dimension("q-tensor field length".into()));
        }
        Ok(QTensorField { grid, values })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(Vec3) -> Mat3) -> Result<Self> {
        let values = (0..grid.len()).map(|i| Self::pack(&f(grid.center(i)))).collect();
        Self::new(grid, values)
    }

    /// Independent components of a symmetric traceless tensor (symmetrized).
    pub fn pack(q: &Mat3) -> [f64; 5] {
        [
            q[0][0],
            0.5 * (q[0][1] + q[1][0]),
            0.5 * (q[0][2] + q[2][0]),
            q[1][1],
            0.5 * (q[1][2] + q[2][1]),
        ]
    }

    /// Rebuilds the full tensor; symmetric and traceless by construction.
    pub fn unpack(c: &[f64; 5]) -> Mat3 {
        let q33 = -c[0] - c[3];
        [[c[0], c[1], c[2]], [c[1], c[3], c[4]], [c[2], c[4], q33]]
    }

    pub fn tensor(&self, idx: usize) -> Mat3 {
        Self::unpack(&self.values[idx])
    }
}
