//! Exact Gaussian elimination over the rationals.

use crate::rational::Rational;

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<Rational>>, ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x - &(&f * y);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Vec<Rational>>, ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// A basis of `{v : A·v = 0}`.
pub fn nullspace(rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}

/// Whether `v` lies in the span of `rows`, decided by comparing ranks.
pub fn in_row_space(rows: &[Vec<Rational>], v: &[Rational]) -> bool {
    let n = v.len();
    let base = rank(rows.to_vec(), n);
    let mut ext = rows.to_vec();
    ext.push(v.to_vec());
    rank(ext, n) == base
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn row(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = vec![row(&[1, 2, 3, 4]), row(&[2, 4, 6, 8]), row(&[0, 1, -1, 0])];
        let ns = nullspace(a.clone(), 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &a {
                let dot: Rational = r.iter().zip(v).map(|(x, y)| x * y).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn row_space_membership() {
        let a = vec![row(&[1, -1, 0]), row(&[0, 1, -1])];
        assert!(in_row_space(&a, &row(&[1, 0, -1])));
        assert!(!in_row_space(&a, &row(&[1, 0, 0])));
        assert!(in_row_space(&[], &row(&[0, 0, 0])));
    }
}
