//! The k-ary determinantal valuation
//! `f^t_{i_1…i_k}(L_1, …, L_k) = max −val det(v_11, …, v_{k i_k})` with
//! `v_jm ∈ L_j`, and the star-network costs that bound it from above.
//!
//! By multilinearity of the determinant and the ultrametric inequality the
//! maximum over module elements is attained on subsets of any fixed
//! `O`-basis, so the search runs over `Π_j C(n, i_j)` column selections of
//! the echelon bases.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::lattice::Lattice;
use crate::laurent::LaurentPoly;
use crate::linalg::det_laurent;
use crate::metric::binary_f;

/// Nonnegative indices summing to the rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexVector(Vec<usize>);

impl IndexVector {
    pub fn new(idx: Vec<usize>, n: usize) -> Result<Self> {
        let total: usize = idx.iter().sum();
        if total != n {
            return Err(Error::Index(format!("indices {idx:?} sum to {total}, expected {n}")));
        }
        Ok(IndexVector(idx))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.0.iter().sum()
    }

    /// All index vectors of length `k` summing to `n`, in lexicographic order.
    pub fn all(k: usize, n: usize) -> Vec<IndexVector> {
        fn rec(k: usize, n: usize, prefix: &mut Vec<usize>, out: &mut Vec<IndexVector>) {
            if k == 1 {
                prefix.push(n);
                out.push(IndexVector(prefix.clone()));
                prefix.pop();
                return;
            }
            for first in 0..=n {
                prefix.push(first);
                rec(k - 1, n - first, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if k > 0 {
            rec(k, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

/// Maximizer of the determinantal valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiF {
    pub value: i64,
    /// Chosen echelon-basis column indices, one list per lattice.
    pub selection: Vec<Vec<usize>>,
}

fn check_inputs<F: Field>(idx: &IndexVector, lattices: &[Lattice<F>]) -> Result<usize> {
    let Some(first) = lattices.first() else {
        return Err(Error::Index("no lattices".into()));
    };
    let n = first.rank();
    if lattices.iter().any(|l| l.rank() != n) {
        return Err(Error::Index("lattices of different ranks".into()));
    }
    if idx.len() != lattices.len() {
        return Err(Error::Index(format!("{} indices for {} lattices", idx.len(), lattices.len())));
    }
    if idx.rank() != n {
        return Err(Error::Index(format!("indices {:?} do not sum to rank {n}", idx.as_slice())));
    }
    Ok(n)
}

/// Increasing `r`-subsets of `0..n`.
pub(crate) fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < r - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// `f^t_{i_1…i_k}(L_1, …, L_k)` with the maximizing selection.
pub fn multi_f_detailed<F: Field>(idx: &IndexVector, lattices: &[Lattice<F>]) -> Result<MultiF> {
    let n = check_inputs(idx, lattices)?;
    let choices: Vec<Vec<Vec<usize>>> = idx
        .as_slice()
        .iter()
        .map(|&i| combinations(n, i))
        .collect();
    // −(least exponent) of each echelon column bounds its contribution.
    let col_bound: Vec<Vec<i64>> = lattices
        .iter()
        .map(|l| {
            l.echelon()
                .iter()
                .map(|c| -c.iter().filter_map(LaurentPoly::valuation).min().unwrap())
                .collect()
        })
        .collect();
    let mut best: Option<MultiF> = None;
    let mut odometer = vec![0usize; choices.len()];
    loop {
        let bound: i64 = odometer
            .iter()
            .enumerate()
            .map(|(j, &c)| choices[j][c].iter().map(|&m| col_bound[j][m]).sum::<i64>())
            .sum();
        if best.as_ref().is_none_or(|b| bound > b.value) {
            let cols: Vec<&[LaurentPoly<F>]> = odometer
                .iter()
                .enumerate()
                .flat_map(|(j, &c)| choices[j][c].iter().map(move |&m| (j, m)))
                .map(|(j, m)| lattices[j].echelon()[m].as_slice())
                .collect();
            if let Some(v) = det_laurent(&cols).valuation() {
                if best.as_ref().is_none_or(|b| -v > b.value) {
                    best = Some(MultiF {
                        value: -v,
                        selection: odometer.iter().enumerate().map(|(j, &c)| choices[j][c].clone()).collect(),
                    });
                }
            }
        }
        // advance
        let mut pos = 0;
        loop {
            if pos == odometer.len() {
                return best.ok_or_else(|| Error::Internal("no nonsingular selection".into()));
            }
            odometer[pos] += 1;
            if odometer[pos] < choices[pos].len() {
                break;
            }
            odometer[pos] = 0;
            pos += 1;
        }
    }
}

pub fn multi_f<F: Field>(idx: &IndexVector, lattices: &[Lattice<F>]) -> Result<i64> {
    multi_f_detailed(idx, lattices).map(|m| m.value)
}

/// `Σ_j f^t_{i_j, n−i_j}(L_j, P) − (k − 1)·f^t_n(P)`.
pub fn star_cost<F: Field>(idx: &IndexVector, lattices: &[Lattice<F>], p: &Lattice<F>) -> Result<i64> {
    let n = check_inputs(idx, lattices)?;
    if p.rank() != n {
        return Err(Error::Index("center lattice has a different rank".into()));
    }
    let mut total = 0i64;
    for (&i, l) in idx.as_slice().iter().zip(lattices) {
        total += binary_f(i, n - i, l, p)?;
    }
    Ok(total - (lattices.len() as i64 - 1) * p.unary_f())
}

/// Outcome of comparing the brute-force and invariant-factor routes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeCheck {
    pub holds: bool,
    pub brute_force: i64,
    pub from_invariants: i64,
}

/// Checks `f^t_{ij}(L, M)` by basis-subset maximization against the
/// invariant-factor formula.
pub fn edge_reduction_check<F: Field>(i: usize, j: usize, l: &Lattice<F>, m: &Lattice<F>) -> Result<EdgeCheck> {
    let idx = IndexVector::new(vec![i, j], l.rank())?;
    let brute_force = multi_f(&idx, &[l.clone(), m.clone()])?;
    let from_invariants = binary_f(i, j, l, m)?;
    Ok(EdgeCheck { holds: brute_force == from_invariants, brute_force, from_invariants })
}
