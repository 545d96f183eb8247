//! Dense exact linear algebra over ℚ: reduced row echelon form and nullspaces.

use num_traits::{One, Zero};

use super::Rational;

/// Reduces `rows` in place to reduced row echelon form and returns the pivot
/// columns. Zero rows are dropped.
pub fn rref(rows: &mut Vec<Vec<Rational>>, columns: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..columns {
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Rational>], columns: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, columns).len()
}

/// A basis of `{v : A v = 0}`, one vector per free column, with a 1 in that
/// column and 0 in the other free columns.
pub fn nullspace(rows: &[Vec<Rational>], columns: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, columns);
    let mut is_pivot = vec![false; columns];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..columns)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); columns];
            v[free] = Rational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| rat(v, 1)).collect())
            .collect()
    }

    #[test]
    fn nullspace_vectors_are_killed() {
        let a = mat(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ns = nullspace(&a, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &a {
                let dot: Rational = row.iter().zip(v).map(|(x, y)| x * y).sum();
                assert!(dot.is_zero());
            }
        }
        assert_eq!(rank(&a, 4), 2);
    }

    #[test]
    fn rref_of_identity_like() {
        let mut a = mat(&[&[0, 2], &[3, 0]]);
        let piv = rref(&mut a, 2);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(a, mat(&[&[1, 0], &[0, 1]]));
        assert!(nullspace(&a, 2).is_empty());
    }
}
