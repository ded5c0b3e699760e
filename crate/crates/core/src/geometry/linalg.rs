//! Exact rational linear algebra at desk scale: Gaussian elimination for
//! square solves, rank, and kernel vectors. No pivoting heuristics are needed
//! for correctness — arithmetic is exact — so pivots are chosen as the first
//! nonzero entry in each column.

use num_traits::{One, Zero};

use crate::exact::Rat;

pub(crate) fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Forward elimination on `rows` (each of length `width`). Returns the
/// echelon rows and the pivot column of each nonzero row, in order.
fn echelon(mut rows: Vec<Vec<Rat>>, width: usize) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = &rows[i][col] / &rows[r][col];
            for j in col..width {
                let delta = &factor * &rows[r][j];
                rows[i][j] = &rows[i][j] - &delta;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    (rows, pivots)
}

pub(crate) fn rank(rows: &[Vec<Rat>], width: usize) -> usize {
    echelon(rows.to_vec(), width).1.len()
}

/// Solves the square system `rows · x = rhs` exactly. None when singular.
pub(crate) fn solve_square(rows: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let d = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == d) && rhs.len() == d);
    let augmented: Vec<Vec<Rat>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| row.iter().cloned().chain(std::iter::once(b.clone())).collect())
        .collect();
    let (ech, pivots) = echelon(augmented, d + 1);
    if pivots.len() != d || pivots.iter().any(|&c| c >= d) {
        return None;
    }
    // Back substitution; pivot i sits in column i because the matrix is
    // square and nonsingular.
    let mut x = vec![Rat::zero(); d];
    for i in (0..d).rev() {
        let mut acc = ech[i][d].clone();
        for j in i + 1..d {
            let delta = &ech[i][j] * &x[j];
            acc = acc - delta;
        }
        x[i] = acc / ech[i][i].clone();
    }
    Some(x)
}

/// Some nonzero vector in the kernel of `rows` (length-`width` rows), or
/// None when the rows have full column rank `width`.
pub(crate) fn kernel_vector(rows: &[Vec<Rat>], width: usize) -> Option<Vec<Rat>> {
    let (ech, pivots) = echelon(rows.to_vec(), width);
    if pivots.len() == width {
        return None;
    }
    let free = (0..width).find(|c| !pivots.contains(c)).expect("rank < width leaves a free column");
    let mut x = vec![Rat::zero(); width];
    x[free] = Rat::one();
    for (i, &col) in pivots.iter().enumerate().rev() {
        let mut acc = Rat::zero();
        for j in col + 1..width {
            let delta = &ech[i][j] * &x[j];
            acc = acc + delta;
        }
        x[col] = -acc / ech[i][col].clone();
    }
    Some(x)
}
