//! Dense linear solves for the small systems that arise in Padé fitting.

/// Solution of a square system or the offending pivot magnitude.
#[derive(Debug, Clone, PartialEq)]
pub enum Solve {
    Unique(Vec<f64>),
    Singular { pivot: f64 },
}

/// Relative pivot threshold below which a system is reported as singular.
pub const PIVOT_THRESHOLD: f64 = 1e-13;

/// Gaussian elimination with partial pivoting. `a` is row-major `n x n`.
///
/// Pivots are compared against `PIVOT_THRESHOLD` times the largest entry of
/// the original matrix.
pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Solve {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|r| r.len() == n));
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0_f64, |m, v| m.max(v.abs()));
    if n == 0 {
        return Solve::Unique(Vec::new());
    }
    if scale == 0.0 {
        return Solve::Singular { pivot: 0.0 };
    }
    for col in 0..n {
        let (piv_row, piv) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if piv <= PIVOT_THRESHOLD * scale {
            return Solve::Singular { pivot: piv / scale };
        }
        a.swap(col, piv_row);
        b.swap(col, piv_row);
        for r in col + 1..n {
            let factor = a[r][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for c in col..n {
                a[r][c] -= factor * a[col][c];
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Solve::Unique(x)
}
