//! Small dense exact linear algebra over the rationals, plus a pivoted
//! Gaussian solver over f64 for the numerical cross-checks. Matrices here
//! have at most a few dozen rows, so fraction-free tricks are unnecessary.

use num::Zero;

use crate::Rat;

/// Rank of a list of column vectors over Q.
pub fn rat_rank(cols: &[Vec<Rat>]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let rows = cols[0].len();
    // row-major working copy, columns become rows for elimination
    let mut m: Vec<Vec<Rat>> = cols.to_vec();
    let mut rank = 0;
    for col in 0..rows {
        let Some(pivot) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].clone();
        for i in rank + 1..m.len() {
            if !m[i][col].is_zero() {
                let factor = &m[i][col] / &inv;
                for j in col..rows {
                    let sub = &factor * &m[rank][j];
                    m[i][j] = &m[i][j] - sub;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Solve A x = b exactly; A is square row-major. Returns None if singular.
pub fn rat_solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].clone();
        for j in col..=n {
            m[col][j] = &m[col][j] / &inv;
        }
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for j in col..=n {
                    let sub = &factor * &m[col][j];
                    m[i][j] = &m[i][j] - sub;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Solve A x = b in f64 with partial pivoting. Returns None if the matrix is
/// numerically singular (pivot below 1e-12 of the largest entry).
pub fn f64_solve(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    let scale = a
        .iter()
        .flatten()
        .fold(0f64, |acc, &v| acc.max(v.abs()))
        .max(1.0);
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[pivot][col].abs() < 1e-12 * scale {
            return None;
        }
        m.swap(col, pivot);
        let inv = m[col][col];
        for j in col..=n {
            m[col][j] /= inv;
        }
        for i in 0..n {
            if i != col && m[i][col] != 0.0 {
                let factor = m[i][col];
                for j in col..=n {
                    m[i][j] -= factor * m[col][j];
                }
            }
        }
    }
    Some(m.iter().map(|row| row[n]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rint};

    #[test]
    fn rank_of_small_matrices() {
        let zero = rint(0);
        let one = rint(1);
        let two = rint(2);
        assert_eq!(rat_rank(&[]), 0);
        assert_eq!(rat_rank(&[vec![zero.clone(), zero.clone()]]), 0);
        assert_eq!(
            rat_rank(&[
                vec![one.clone(), zero.clone()],
                vec![zero.clone(), one.clone()],
                vec![one.clone(), one.clone()],
            ]),
            2
        );
        assert_eq!(
            rat_rank(&[vec![one.clone(), two.clone()], vec![two.clone(), rint(4)]]),
            1
        );
    }

    #[test]
    fn exact_solve_roundtrip() {
        let a = vec![
            vec![rint(2), rint(1)],
            vec![rint(1), rint(3)],
        ];
        let b = vec![rint(5), rint(10)];
        let x = rat_solve(&a, &b).unwrap();
        assert_eq!(x, vec![rint(1), rint(3)]);

        let singular = vec![vec![rint(1), rint(2)], vec![rint(2), rint(4)]];
        assert!(rat_solve(&singular, &b).is_none());
    }

    #[test]
    fn exact_solve_with_fractions() {
        let a = vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 4), rat(1, 5)],
        ];
        let b = vec![rint(1), rint(1)];
        let x = rat_solve(&a, &b).unwrap();
        // verify by substitution
        for (row, rhs) in a.iter().zip(&b) {
            let lhs: Rat = row.iter().zip(&x).map(|(c, v)| c * v).sum();
            assert_eq!(&lhs, rhs);
        }
    }

    #[test]
    fn float_solve_matches_exact() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let b = vec![5.0, 10.0];
        let x = f64_solve(&a, &b).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 3.0).abs() < 1e-12);
        assert!(f64_solve(&[vec![1.0, 2.0], vec![2.0, 4.0]], &b).is_none());
    }
}
