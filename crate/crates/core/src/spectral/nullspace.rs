//! Null spaces by Gaussian elimination, exact and floating point.

use crate::scalar::ComplexRational;
use num_complex::Complex64;
use num_traits::{One, Zero};

/// Exact null-space basis of a row-major `rows × cols` matrix. Pivots are
/// the first nonzero entry in each column, so the basis is deterministic:
/// one vector per free column, with a 1 in that column.
// Row operations read one row while writing another; index loops are clearer.
#[allow(clippy::needless_range_loop)]
pub fn nullspace_exact(rows: usize, cols: usize, entries: &[ComplexRational]) -> Vec<Vec<ComplexRational>> {
    let mut a: Vec<Vec<ComplexRational>> = (0..rows).map(|i| entries[i * cols..(i + 1) * cols].to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = ComplexRational::one() / &a[r][c];
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &a[r][j];
                    a[i][j] = &a[i][j] - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    free_columns(cols, &pivots)
        .map(|free| {
            let mut v = vec![ComplexRational::zero(); cols];
            v[free] = ComplexRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][free].clone();
            }
            v
        })
        .collect()
}

fn free_columns(cols: usize, pivots: &[usize]) -> impl Iterator<Item = usize> + '_ {
    (0..cols).filter(move |c| !pivots.contains(c))
}

/// Floating-point null space with partial pivoting. A column counts as
/// pivotal only if its best pivot exceeds `rank_tol · scale`, where `scale`
/// is the largest absolute entry of the input (or 1 for a zero matrix).
/// Each basis vector is scaled so its largest-modulus entry equals 1.
#[allow(clippy::needless_range_loop)]
pub fn nullspace_float(rows: usize, cols: usize, entries: &[Complex64], rank_tol: f64) -> Vec<Vec<Complex64>> {
    let mut a: Vec<Vec<Complex64>> = (0..rows).map(|i| entries[i * cols..(i + 1) * cols].to_vec()).collect();
    let scale = entries.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let threshold = rank_tol * if scale > 0.0 { scale } else { 1.0 };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (p, best) = (r..rows)
            .map(|i| (i, a[i][c].norm()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= threshold {
            for row in a.iter_mut().skip(r) {
                row[c] = Complex64::new(0.0, 0.0);
            }
            continue;
        }
        a.swap(r, p);
        let inv = a[r][c].inv();
        for v in a[r].iter_mut() {
            *v *= inv;
        }
        for i in 0..rows {
            if i != r {
                let f = a[i][c];
                if f != Complex64::new(0.0, 0.0) {
                    for j in 0..cols {
                        let delta = f * a[r][j];
                        a[i][j] -= delta;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    free_columns(cols, &pivots)
        .map(|free| {
            let mut v = vec![Complex64::new(0.0, 0.0); cols];
            v[free] = Complex64::new(1.0, 0.0);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][free];
            }
            let big = v.iter().copied().fold(Complex64::new(0.0, 0.0), |m, z| if z.norm() > m.norm() { z } else { m });
            v.iter().map(|z| z / big).collect()
        })
        .collect()
}
