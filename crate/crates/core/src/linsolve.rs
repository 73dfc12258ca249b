//! Dense complex Gaussian elimination with partial pivoting, sized at compile time.

use num_complex::Complex64;

use crate::compensated::TwoFloat;
use crate::error::{Error, Result};

/// Solves `a · x = b` for each of the `K` right-hand-side columns of `b`.
///
/// Rejects the system when the smallest pivot falls below `N·ε` times the
/// largest entry of `a`; the error carries that ratio.
pub fn solve<const N: usize, const K: usize>(
    mut a: [[Complex64; N]; N],
    mut b: [[Complex64; K]; N],
) -> Result<[[Complex64; K]; N]> {
    let scale = a
        .iter()
        .flat_map(|row| row.iter())
        .map(|z| z.norm())
        .fold(0.0_f64, f64::max);
    if scale == 0.0 {
        return Err(Error::Singular {
            context: "zero matrix".into(),
            pivot_ratio: 0.0,
        });
    }
    let mut min_pivot = f64::INFINITY;

    for col in 0..N {
        let pivot_row = (col..N)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .expect("non-empty range");
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);

        let pivot = a[col][col];
        min_pivot = min_pivot.min(pivot.norm());
        if pivot.norm() <= N as f64 * f64::EPSILON * scale {
            return Err(Error::Singular {
                context: format!("pivot {col} vanished"),
                pivot_ratio: pivot.norm() / scale,
            });
        }
        for row in col + 1..N {
            let factor = a[row][col] / pivot;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in col..N {
                let v = a[col][k];
                a[row][k] -= factor * v;
            }
            for k in 0..K {
                let v = b[col][k];
                b[row][k] -= factor * v;
            }
        }
    }

    let mut x = [[Complex64::new(0.0, 0.0); K]; N];
    for row in (0..N).rev() {
        for k in 0..K {
            let mut acc = b[row][k];
            for j in row + 1..N {
                acc -= a[row][j] * x[j][k];
            }
            x[row][k] = acc / a[row][row];
        }
    }
    log::trace!("solve: min pivot ratio {:.3e}", min_pivot / scale);
    Ok(x)
}

/// `b − a·x`, with every product and sum carried in double-word arithmetic.
fn residual<const N: usize, const K: usize>(
    a: &[[Complex64; N]; N],
    b: &[[Complex64; K]; N],
    x: &[[Complex64; K]; N],
) -> [[Complex64; K]; N] {
    let mut r = [[Complex64::new(0.0, 0.0); K]; N];
    for row in 0..N {
        for k in 0..K {
            let mut re = TwoFloat::from(b[row][k].re);
            let mut im = TwoFloat::from(b[row][k].im);
            for j in 0..N {
                let (p, q) = (a[row][j], x[j][k]);
                re = re - TwoFloat::product(p.re, q.re) + TwoFloat::product(p.im, q.im);
                im = im - TwoFloat::product(p.re, q.im) - TwoFloat::product(p.im, q.re);
            }
            r[row][k] = Complex64::new(re.to_f64(), im.to_f64());
        }
    }
    r
}

/// [`solve`] followed by `steps` rounds of iterative refinement against an
/// extra-precise residual.
///
/// Recovers full componentwise accuracy on systems whose small solution
/// components come out of cancellation during elimination.
pub fn solve_refined<const N: usize, const K: usize>(
    a: [[Complex64; N]; N],
    b: [[Complex64; K]; N],
    steps: usize,
) -> Result<[[Complex64; K]; N]> {
    let mut x = solve(a, b)?;
    for _ in 0..steps {
        let correction = solve(a, residual(&a, &b, &x))?;
        for (row, delta) in x.iter_mut().zip(correction.iter()) {
            for (v, d) in row.iter_mut().zip(delta.iter()) {
                *v += *d;
            }
        }
    }
    Ok(x)
}
