//! Small dense square matrices: products, inverse, and the matrix
//! exponential.
//!
//! Sized for phase-type generators and linearization matrices (a few dozen
//! states at most), so everything is plain row-major `Vec<f64>` arithmetic:
//! Gaussian elimination with partial pivoting for solves/inverses and
//! scaling-and-squaring with a degree-6 Padé approximant for `exp(S·t)`.

use crate::{Error, Result};

/// Largest dimension accepted by [`mat_exp`].
pub const MAX_EXP_DIM: usize = 32;

/// Pivots at or below this magnitude abort elimination as singular.
pub const PIVOT_THRESHOLD: f64 = 1e-13;

/// Dense square matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl SquareMatrix {
    /// Builds a `dim × dim` matrix from row-major entries.
    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("matrix dimension must be at least 1".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::Domain(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        if !entries.iter().all(|e| e.is_finite()) {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
        Ok(Self { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = 1.0;
        }
        m
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        Self {
            dim,
            entries: vec![0.0; dim * dim],
        }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * diag.len() + i] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        debug_assert!(row < self.dim && col < self.dim);
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        debug_assert!(row < self.dim && col < self.dim);
        self.entries[row * self.dim + col] = value;
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    /// True when every off-diagonal entry is exactly zero.
    pub fn is_diagonal(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j && self.get(i, j) != 0.0 {
                    return false;
                }
            }
        }
        true
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in matmul");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.entries[i * n + k];
                if aik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += aik * other.entries[k * n + j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim, "dimension mismatch in mul_vec");
        let n = self.dim;
        (0..n)
            .map(|i| (0..n).map(|j| self.entries[i * n + j] * v[j]).sum())
            .collect()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in add");
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in sub");
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Infinity norm (maximum absolute row sum).
    pub fn inf_norm(&self) -> f64 {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.get(i, j).abs())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }
}

/// Solves `A·X = B` by Gaussian elimination with partial pivoting.
///
/// Fails with [`Error::SingularMatrix`] when a pivot magnitude drops to
/// [`PIVOT_THRESHOLD`] or below.
pub(crate) fn solve_multi(a: &SquareMatrix, b: &SquareMatrix) -> Result<SquareMatrix> {
    assert_eq!(a.dim, b.dim, "dimension mismatch in solve");
    let n = a.dim;
    let mut lhs = a.entries.clone();
    let mut rhs = b.entries.clone();

    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r1, &r2| {
                lhs[r1 * n + col]
                    .abs()
                    .total_cmp(&lhs[r2 * n + col].abs())
            })
            .unwrap();
        let pivot = lhs[pivot_row * n + col];
        if pivot.abs() <= PIVOT_THRESHOLD {
            return Err(Error::SingularMatrix {
                pivot: pivot.abs(),
                threshold: PIVOT_THRESHOLD,
            });
        }
        if pivot_row != col {
            for j in 0..n {
                lhs.swap(col * n + j, pivot_row * n + j);
                rhs.swap(col * n + j, pivot_row * n + j);
            }
        }
        for row in 0..n {
            if row == col {
                continue;
            }
            let factor = lhs[row * n + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            for j in col..n {
                lhs[row * n + j] -= factor * lhs[col * n + j];
            }
            for j in 0..n {
                rhs[row * n + j] -= factor * rhs[col * n + j];
            }
        }
    }
    for row in 0..n {
        let pivot = lhs[row * n + row];
        for j in 0..n {
            rhs[row * n + j] /= pivot;
        }
    }
    SquareMatrix::new(n, rhs)
}

/// Matrix inverse via Gaussian elimination with partial pivoting.
pub fn mat_inverse(s: &SquareMatrix) -> Result<SquareMatrix> {
    solve_multi(s, &SquareMatrix::identity(s.dim))
}

// Degree-6 diagonal Padé coefficients for exp: c_{j+1} = c_j (6-j)/((12-j)(j+1)).
const PADE6: [f64; 7] = [
    1.0,
    0.5,
    5.0 / 44.0,
    1.0 / 66.0,
    1.0 / 792.0,
    1.0 / 15_840.0,
    1.0 / 665_280.0,
];

/// Matrix exponential `exp(S·t)` by scaling-and-squaring with a degree-6
/// Padé approximant, scaled so the argument's infinity norm is at most 1/2.
///
/// Dimension is capped at [`MAX_EXP_DIM`]; the intended operands are
/// phase-type sub-generators with a handful of states.
pub fn mat_exp(s: &SquareMatrix, t: f64) -> Result<SquareMatrix> {
    if s.dim > MAX_EXP_DIM {
        return Err(Error::DimensionLimit {
            dim: s.dim,
            limit: MAX_EXP_DIM,
        });
    }
    if !t.is_finite() {
        return Err(Error::Domain(format!("mat_exp requires finite t, got {t}")));
    }

    let a = s.scaled(t);
    let norm = a.inf_norm();
    let squarings = if norm <= 0.5 {
        0
    } else {
        (norm / 0.5).log2().ceil() as i32
    };
    let a = a.scaled(0.5f64.powi(squarings));

    let a2 = a.matmul(&a);
    let a4 = a2.matmul(&a2);
    let a6 = a4.matmul(&a2);
    let ident = SquareMatrix::identity(s.dim);

    // U = A(c1 I + c3 A² + c5 A⁴), V = c0 I + c2 A² + c4 A⁴ + c6 A⁶.
    let u = a.matmul(
        &ident
            .scaled(PADE6[1])
            .add(&a2.scaled(PADE6[3]))
            .add(&a4.scaled(PADE6[5])),
    );
    let v = ident
        .scaled(PADE6[0])
        .add(&a2.scaled(PADE6[2]))
        .add(&a4.scaled(PADE6[4]))
        .add(&a6.scaled(PADE6[6]));

    // exp(A) ≈ (V - U)⁻¹ (V + U), then undo the scaling by squaring.
    let mut result = solve_multi(&v.sub(&u), &v.add(&u))?;
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    Ok(result)
}
