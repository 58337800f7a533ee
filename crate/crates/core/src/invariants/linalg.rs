//! Dense exact linear algebra over `Q` on row vectors.

use num_traits::{One, Zero};

use crate::graded_algebra::Rational;

/// Row-reduces `rows` in place to reduced row echelon form, drops zero rows,
/// and returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..width {
        let Some(p) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let inv = Rational::one() / &rows[next][col];
        for x in rows[next].iter_mut().skip(col) {
            *x *= &inv;
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    pivots
}

/// Basis of `{y : A y = 0}` for `A` given by its rows, each of length `width`.
pub fn null_space(mut rows: Vec<Vec<Rational>>, width: usize) -> Vec<Vec<Rational>> {
    let pivots = rref(&mut rows);
    let mut is_pivot = vec![false; width];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..width)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut y = vec![Rational::zero(); width];
            y[free] = Rational::one();
            for (row, &p) in rows.iter().zip(&pivots) {
                y[p] = -row[free].clone();
            }
            y
        })
        .collect()
}

/// The canonical (reduced echelon) basis of the span of `vectors`.
pub fn canonical_basis(mut vectors: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    rref(&mut vectors);
    vectors
}
