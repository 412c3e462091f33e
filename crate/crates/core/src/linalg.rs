//! Exact rational nullspaces.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Basis of `{x : A x = 0}` for a `rows × cols` matrix, from reduced row
/// echelon form. Each basis vector has a `1` at its free column.
pub fn nullspace(matrix: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = matrix.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = Rational::one() / &m[row][col];
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..cols {
                    let delta = &factor * &m[row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn apply(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
        m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    #[test]
    fn single_equation() {
        // x + y - z = 0
        let m = vec![vec![rat(1), rat(1), rat(-1)]];
        let basis = nullspace(&m, 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(apply(&m, v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn full_rank_has_trivial_nullspace() {
        let m = vec![vec![rat(1), rat(2)], vec![rat(3), rat(4)]];
        assert!(nullspace(&m, 2).is_empty());
    }

    #[test]
    fn no_equations() {
        assert_eq!(nullspace(&[], 2).len(), 2);
    }
}
