//! Exact linear algebra over ℚ: reduced row echelon form, rank, nullspace
//! and a minimum-support solver used by the normalizer.

use itertools::Itertools;
use num::{One, Zero};

use crate::superalgebra::Rational;

/// Dense row-major matrix.
pub type Matrix = Vec<Vec<Rational>>;

/// Row echelon data of an augmented or plain matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub rows: Matrix,
    pub pivots: Vec<usize>,
}

/// Gauss–Jordan elimination; pivots are the leading columns in order.
pub fn rref(a: &[Vec<Rational>]) -> Echelon {
    let mut rows: Matrix = a.to_vec();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][col];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            let (pivot_row, target) = if i < r {
                let (lo, hi) = rows.split_at_mut(r);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = rows.split_at_mut(i);
                (&lo[r], &mut hi[0])
            };
            for (t, p) in target.iter_mut().zip(pivot_row) {
                if !p.is_zero() {
                    *t -= &factor * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    Echelon { rows, pivots }
}

pub fn rank(a: &[Vec<Rational>]) -> usize {
    rref(a).pivots.len()
}

/// A basis of `{v : a v = 0}`.
pub fn nullspace(a: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let e = rref(a);
    let free = (0..ncols).filter(|c| !e.pivots.contains(c));
    free.map(|f| {
        let mut v = vec![Rational::zero(); ncols];
        v[f] = Rational::one();
        for (row, &p) in e.pivots.iter().enumerate() {
            v[p] = -e.rows[row][f].clone();
        }
        v
    })
    .collect()
}

/// Solves `a u = b`, setting free variables to zero; `None` if inconsistent.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let ncols = a.first().map_or(0, Vec::len);
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let e = rref(&aug);
    if e.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut u = vec![Rational::zero(); ncols];
    for (row, &p) in e.pivots.iter().enumerate() {
        u[p] = e.rows[row][ncols].clone();
    }
    Some(u)
}

/// How a solution was selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionKind {
    /// Fewest nonzero unknowns, lexicographically first support.
    MinimumSupport,
    /// The support search ran out of budget; free variables set to zero.
    Basic,
}

/// Solves `a u = b` with as few nonzero entries as possible.
///
/// Supports are tried by increasing size and, within a size, in
/// lexicographic order of column indices. A minimal support has linearly
/// independent columns, so the restricted solution is unique. After
/// `budget` rank checks the search gives up and returns the basic solution.
pub fn sparsest_solution(
    a: &[Vec<Rational>],
    b: &[Rational],
    budget: usize,
) -> Option<(Vec<Rational>, SolutionKind)> {
    let ncols = a.first().map_or(0, Vec::len);
    if b.iter().all(Zero::is_zero) {
        return Some((vec![Rational::zero(); ncols], SolutionKind::MinimumSupport));
    }
    let basic = solve(a, b)?;
    let support_rows: Vec<Vec<usize>> = (0..ncols)
        .map(|c| (0..a.len()).filter(|&i| !a[i][c].is_zero()).collect())
        .collect();
    let live: Vec<usize> = (0..ncols)
        .filter(|&c| !support_rows[c].is_empty())
        .collect();
    let demanding: Vec<usize> = (0..b.len()).filter(|&i| !b[i].is_zero()).collect();
    let mut checks = 0usize;
    for size in 1..=a.len().min(live.len()) {
        for support in live.iter().copied().combinations(size) {
            checks += 1;
            if checks > budget {
                return Some((basic, SolutionKind::Basic));
            }
            // Equations the support does not touch reduce to 0 = b_i.
            let mut touched: Vec<usize> = support
                .iter()
                .flat_map(|&c| support_rows[c].iter().copied())
                .collect();
            touched.sort_unstable();
            touched.dedup();
            if !demanding.iter().all(|i| touched.binary_search(i).is_ok()) {
                continue;
            }
            let sub: Matrix = touched
                .iter()
                .map(|&i| support.iter().map(|&c| a[i][c].clone()).collect())
                .collect();
            let rhs: Vec<Rational> = touched.iter().map(|&i| b[i].clone()).collect();
            if let Some(local) = solve(&sub, &rhs) {
                let mut u = vec![Rational::zero(); ncols];
                for (&c, v) in support.iter().zip(local) {
                    u[c] = v;
                }
                return Some((u, SolutionKind::MinimumSupport));
            }
        }
    }
    Some((basic, SolutionKind::Basic))
}

pub fn mat_vec(a: &[Vec<Rational>], u: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(u).map(|(x, y)| x * y).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&v| q(v)).collect())
            .collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        assert!(mat_vec(&a, &ns[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&a, &[q(2), q(0)]), Some(vec![q(1), q(1)]));
        let a = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&a, &[q(1), q(3)]), None);
    }

    #[test]
    fn sparsest_prefers_small_support_then_lex() {
        // columns 0 and 1 together reach b, and so does column 2 alone
        let a = m(&[&[1, 0, 1], &[0, 1, 1]]);
        let (u, kind) = sparsest_solution(&a, &[q(1), q(1)], 100).unwrap();
        assert_eq!(kind, SolutionKind::MinimumSupport);
        assert_eq!(u, vec![q(0), q(0), q(1)]);
        // two single-column supports: lex-first wins
        let a = m(&[&[2, 1]]);
        let (u, _) = sparsest_solution(&a, &[q(1)], 100).unwrap();
        assert_eq!(u, vec![Rational::new(1.into(), 2.into()), q(0)]);
    }

    #[test]
    fn sparsest_budget_falls_back() {
        let a = m(&[&[1, 0, 1], &[0, 1, 1]]);
        let (u, kind) = sparsest_solution(&a, &[q(1), q(2)], 1).unwrap();
        assert_eq!(kind, SolutionKind::Basic);
        assert_eq!(mat_vec(&a, &u), vec![q(1), q(2)]);
        assert!(sparsest_solution(&m(&[&[0]]), &[q(1)], 10).is_none());
    }
}
