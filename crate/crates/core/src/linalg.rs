//! Dense Gaussian elimination over exact rationals or binary64.

use crate::scalar::Scalar;

fn negligible<T: Scalar>(v: &T, tol: f64) -> bool {
    if T::EXACT {
        v.is_zero()
    } else {
        v.to_f64().abs() <= tol
    }
}

/// Reduces `a` in place to reduced row echelon form and returns the pivot
/// columns. Pivots are chosen by largest magnitude; `tol` is ignored for
/// exact scalars.
pub fn rref<T: Scalar>(a: &mut [Vec<T>], tol: f64) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .filter(|&i| !negligible(&a[i][col], tol))
            .max_by(|&i, &j| a[i][col].to_f64().abs().total_cmp(&a[j][col].to_f64().abs()));
        let Some(p) = best else { continue };
        a.swap(r, p);
        let inv = T::one() / a[r][col].clone();
        for v in a[r].iter_mut().skip(col) {
            *v = v.clone() * inv.clone();
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !pv.is_zero() {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
            if !T::EXACT {
                row[col] = T::zero();
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Basis of the null space of `a`, one vector per free column.
pub fn nullspace<T: Scalar>(mut a: Vec<Vec<T>>, tol: f64) -> Vec<Vec<T>> {
    let cols = a.first().map_or(0, |r| r.len());
    let pivots = rref(&mut a, tol);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = T::zero() - a[row][f].clone();
            }
            v
        })
        .collect()
}

pub fn mat_vec<T: Scalar>(m: &[Vec<T>], v: &[T]) -> Vec<T> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(T::zero(), |acc, (a, b)| if a.is_zero() { acc } else { acc + a.clone() * b.clone() }))
        .collect()
}
