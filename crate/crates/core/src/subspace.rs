//! Subspaces of `F^n`, held in reduced row-echelon form.

use crate::field::Field;

/// Reduces `rows` to RREF in place and drops zero rows; returns pivot columns.
pub(crate) fn rref<F: Field>(rows: &mut Vec<Vec<F>>, n: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().unwrap();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..n {
                    let v = rows[r][k].clone();
                    rows[i][k] = rows[i][k].clone() - f.clone() * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Rank of a list of vectors in `F^n`.
pub fn rank<F: Field>(vectors: &[Vec<F>], n: usize) -> usize {
    let mut rows = vectors.to_vec();
    rref(&mut rows, n).len()
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace<F> {
    n: usize,
    rows: Vec<Vec<F>>,
}

impl<F: Field> Subspace<F> {
    /// The span of `vectors` inside `F^n`.
    pub fn span(n: usize, vectors: &[Vec<F>]) -> Self {
        assert!(vectors.iter().all(|v| v.len() == n), "vector length mismatch");
        let mut rows = vectors.to_vec();
        rref(&mut rows, n);
        Subspace { n, rows }
    }

    pub fn zero(n: usize) -> Self {
        Subspace { n, rows: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Self::span(n, &unit_vectors(n))
    }

    /// `span(e_i : i ∈ coords)`.
    pub fn coordinate(n: usize, coords: &[usize]) -> Self {
        let units = unit_vectors::<F>(n);
        Self::span(n, &coords.iter().map(|&i| units[i].clone()).collect::<Vec<_>>())
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The RREF basis.
    pub fn basis(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        rref(&mut rows, self.n).len() == self.dim()
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Self::span(self.n, &rows)
    }

    pub fn sum_all<'a, I: IntoIterator<Item = &'a Self>>(n: usize, spaces: I) -> Self {
        let rows: Vec<Vec<F>> = spaces.into_iter().flat_map(|s| s.rows.iter().cloned()).collect();
        Self::span(n, &rows)
    }

    /// `{w : w·v = 0 for all v}`, the null space of the basis matrix.
    pub fn annihilator(&self) -> Self {
        let mut rows = self.rows.clone();
        let pivots = rref(&mut rows, self.n);
        let free: Vec<usize> = (0..self.n).filter(|c| !pivots.contains(c)).collect();
        let kernel: Vec<Vec<F>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.n];
                v[f] = F::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -rows[r][f].clone();
                }
                v
            })
            .collect();
        Self::span(self.n, &kernel)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// Every vector of the subspace (finite fields only).
    pub fn vectors(&self) -> Option<Vec<Vec<F>>> {
        let elems = F::elements()?;
        let mut out = vec![vec![F::zero(); self.n]];
        for row in &self.rows {
            let mut next = Vec::with_capacity(out.len() * elems.len());
            for v in &out {
                for c in &elems {
                    next.push(v.iter().zip(row).map(|(a, b)| a.clone() + c.clone() * b.clone()).collect());
                }
            }
            out = next;
        }
        Some(out)
    }

    /// Every subspace of `F^n` (finite fields only), by enumerating RREF
    /// matrices.
    pub fn all(n: usize) -> Option<Vec<Self>> {
        let elems = F::elements()?;
        let mut out = Vec::new();
        for r in 0..=n {
            for pivots in crate::detval::combinations(n, r) {
                // free positions: row k, column c > pivots[k], c not a pivot
                let free: Vec<(usize, usize)> = (0..r)
                    .flat_map(|k| {
                        let pivots = &pivots;
                        (pivots[k] + 1..n).filter(move |c| !pivots.contains(c)).map(move |c| (k, c))
                    })
                    .collect();
                let total = elems.len().pow(free.len() as u32);
                for code in 0..total {
                    let mut rows = vec![vec![F::zero(); n]; r];
                    for (k, &p) in pivots.iter().enumerate() {
                        rows[k][p] = F::one();
                    }
                    let mut c = code;
                    for &(k, col) in &free {
                        rows[k][col] = elems[c % elems.len()].clone();
                        c /= elems.len();
                    }
                    out.push(Subspace { n, rows });
                }
            }
        }
        Some(out)
    }
}

pub(crate) fn unit_vectors<F: Field>(n: usize) -> Vec<Vec<F>> {
    (0..n)
        .map(|i| (0..n).map(|k| if k == i { F::one() } else { F::zero() }).collect())
        .collect()
}
