//! Implementation-independent Perron root reference for small dense
//! matrices, used to cross-check the sparse certification path.
//!
//! For a nonnegative `A` and `x > 0`, the matrix `xI - A` has nonpositive
//! off-diagonal entries, and such a matrix is a nonsingular M-matrix — i.e.
//! `x > rho(A)` — exactly when all its leading principal minors are
//! positive. That predicate is monotone in `x` regardless of the Perron
//! root's multiplicity, so plain bisection isolates the largest real root
//! of the characteristic polynomial.

/// Perron root of the dense nonnegative matrix `a`, to absolute tolerance
/// `tol`. Quadratic work per probe, so intended for n up to a few dozen.
pub fn perron_root(a: &[Vec<f64>], tol: f64) -> f64 {
    let n = a.len();
    if n == 0 {
        return 0.0;
    }
    assert!(tol > 0.0);
    debug_assert!(a.iter().all(|r| r.len() == n));
    debug_assert!(a.iter().flatten().all(|&v| v >= 0.0 && v.is_finite()));

    let max_row_sum = a
        .iter()
        .map(|r| r.iter().sum::<f64>())
        .fold(0.0f64, f64::max);
    let mut lo = 0.0;
    let mut hi = max_row_sum + 1.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if shifted_minors_positive(a, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All leading principal minors of `xI - A` positive, via elimination
/// without pivoting (an M-matrix eliminates with positive pivots; any
/// nonpositive pivot on the way certifies failure).
fn shifted_minors_positive(a: &[Vec<f64>], x: f64) -> bool {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { x - a[i][j] } else { -a[i][j] })
                .collect()
        })
        .collect();
    for j in 0..n {
        let pivot = m[j][j];
        if !(pivot > 0.0) {
            return false;
        }
        for i in j + 1..n {
            let f = m[i][j] / pivot;
            if f != 0.0 {
                for c in j..n {
                    m[i][c] -= f * m[j][c];
                }
            }
        }
    }
    true
}
