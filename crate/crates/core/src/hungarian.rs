//! Maximum-weight perfect assignment with integral dual potentials.

use crate::error::{Error, Result};

/// A maximal transversal `σ` with potentials `a_i + b_j ≥ c_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssignmentResult {
    /// `sigma[i]` is the column assigned to row `i`.
    pub sigma: Vec<usize>,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub value: i64,
}

impl AssignmentResult {
    /// Feasibility, complementary slackness and equal primal/dual values.
    pub fn certifies(&self, c: &[Vec<i64>]) -> bool {
        let n = c.len();
        let mut used = vec![false; n];
        for &j in &self.sigma {
            if j >= n || used[j] {
                return false;
            }
            used[j] = true;
        }
        let feasible = (0..n).all(|i| (0..n).all(|j| self.a[i] + self.b[j] >= c[i][j]));
        let tight = (0..n).all(|i| self.a[i] + self.b[self.sigma[i]] == c[i][self.sigma[i]]);
        let primal: i64 = (0..n).map(|i| c[i][self.sigma[i]]).sum();
        let dual: i64 = self.a.iter().sum::<i64>() + self.b.iter().sum::<i64>();
        feasible && tight && primal == self.value && dual == self.value
    }
}

/// Maximal transversal sum of a square integer matrix. Potentials are
/// normalized so that `min_j b_j = 0`.
///
/// Runs the shortest-augmenting-path Hungarian method on `−c`, keeping
/// potentials `u, v` with `u_i + v_j ≤ −c_ij`; then `a = −u`, `b = −v`.
pub fn kuhn_munkres(c: &[Vec<i64>]) -> Result<AssignmentResult> {
    let n = c.len();
    if c.iter().any(|row| row.len() != n) {
        return Err(Error::Index("cost matrix is not square".into()));
    }
    if n == 0 {
        return Ok(AssignmentResult { sigma: vec![], a: vec![], b: vec![], value: 0 });
    }
    let cost = |i: usize, j: usize| -c[i - 1][j - 1];
    // 1-based with a virtual column 0
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0;
        let mut minv = vec![i64::MAX; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = i64::MAX;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost(i0, j) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut sigma = vec![0usize; n];
    for j in 1..=n {
        sigma[row_of[j] - 1] = j - 1;
    }
    let mut a: Vec<i64> = u[1..].iter().map(|x| -x).collect();
    let mut b: Vec<i64> = v[1..].iter().map(|x| -x).collect();
    let shift = *b.iter().min().unwrap();
    for x in b.iter_mut() {
        *x -= shift;
    }
    for x in a.iter_mut() {
        *x += shift;
    }
    let value = (0..n).map(|i| c[i][sigma[i]]).sum();
    let result = AssignmentResult { sigma, a, b, value };
    if !result.certifies(c) {
        return Err(Error::Internal("assignment certificate failed".into()));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let r = kuhn_munkres(&[vec![0, 2], vec![1, 3]]).unwrap();
        assert_eq!(r.value, 3);
        assert!(r.certifies(&[vec![0, 2], vec![1, 3]]));
        let r = kuhn_munkres(&[vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!((r.value, r.a.clone(), r.b.clone()), (0, vec![0, 0], vec![0, 0]));
        let r = kuhn_munkres(&[vec![5, 0], vec![0, 5]]).unwrap();
        assert_eq!((r.value, r.sigma), (10, vec![0, 1]));
    }

    #[test]
    fn negative_and_empty() {
        let c = vec![vec![-3, -1, -7], vec![-2, -9, 0], vec![4, -5, -5]];
        let r = kuhn_munkres(&c).unwrap();
        assert_eq!(r.value, -1 + 0 + 4);
        assert_eq!(kuhn_munkres(&[]).unwrap().value, 0);
        assert!(kuhn_munkres(&[vec![1, 2]]).is_err());
    }
}
