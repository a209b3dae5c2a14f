//! Small dense linear algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};

/// Builds a `rows.len() x d` matrix from row slices.
pub fn matrix_from_rows(rows: &[&[f64]], d: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), d, |i, j| rows[i][j])
}

/// Singular values in descending order.
pub fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Smallest singular value of a `k x d` matrix with `k <= d` (the `k`-th one).
pub fn sigma_min(m: &DMatrix<f64>) -> f64 {
    singular_values(m).last().copied().unwrap_or(0.0)
}

/// Spectral norm.
pub fn sigma_max(m: &DMatrix<f64>) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Numerical rank with a relative threshold on the singular values.
pub fn rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    let sv = singular_values(m);
    let Some(&top) = sv.first() else { return 0 };
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}

/// Vector orthogonal to the `d - 1` given rows of length `d`, via signed
/// cofactors (the generalized cross product). Zero when the rows are dependent.
pub fn generalized_cross(rows: &[&[f64]], d: usize) -> Vec<f64> {
    debug_assert_eq!(rows.len() + 1, d);
    if d == 1 {
        return vec![1.0];
    }
    (0..d)
        .map(|j| {
            let minor = DMatrix::from_fn(d - 1, d - 1, |r, c| {
                let col = if c < j { c } else { c + 1 };
                rows[r][col]
            });
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * minor.determinant()
        })
        .collect()
}

/// Solves `m x = b` by LU; `None` when singular.
pub fn solve(m: &DMatrix<f64>, b: &DVector<f64>) -> Option<DVector<f64>> {
    m.clone().lu().solve(b)
}

pub fn lcm(a: u128, b: u128) -> u128 {
    fn gcd(mut a: u128, mut b: u128) -> u128 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}
