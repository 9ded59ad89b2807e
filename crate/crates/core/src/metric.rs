//! Relative position of two lattices: invariant factors, the
//! coweight-valued distance, dominance order and the binary determinantal
//! valuation.

use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::lattice::Lattice;
use crate::linalg::Columns;
use crate::scalar::ValuedScalar;

/// A weakly decreasing integer vector `a_1 ≥ … ≥ a_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominantCoweight(Vec<i64>);

impl DominantCoweight {
    pub fn new(a: Vec<i64>) -> Result<Self> {
        if a.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Range(format!("{a:?} is not weakly decreasing")));
        }
        Ok(DominantCoweight(a))
    }

    /// Sorts an arbitrary integer vector into dominant position.
    pub fn sorted(mut a: Vec<i64>) -> Self {
        a.sort_unstable_by(|x, y| y.cmp(x));
        DominantCoweight(a)
    }

    pub fn zero(n: usize) -> Self {
        DominantCoweight(vec![0; n])
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `−w_0 μ = (−μ_n, …, −μ_1)`.
    pub fn reverse_negate(&self) -> Self {
        DominantCoweight(self.0.iter().rev().map(|x| -x).collect())
    }
}

impl fmt::Debug for DominantCoweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Componentwise sum; the result is dominant again.
impl Add for &DominantCoweight {
    type Output = DominantCoweight;
    fn add(self, rhs: Self) -> DominantCoweight {
        assert_eq!(self.len(), rhs.len());
        DominantCoweight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

/// A weight, paired with coweights by the dot product.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    pub fn new(w: Vec<i64>) -> Self {
        WeightVector(w)
    }

    /// `ω_i`: `i` ones followed by `n − i` zeros.
    pub fn fundamental(n: usize, i: usize) -> Self {
        assert!(i <= n);
        WeightVector((0..n).map(|k| i64::from(k < i)).collect())
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

/// `w · μ`.
pub fn pair(w: &WeightVector, mu: &DominantCoweight) -> i64 {
    assert_eq!(w.0.len(), mu.len(), "length mismatch");
    w.0.iter().zip(&mu.0).map(|(a, b)| a * b).sum()
}

/// `μ ≤ λ`: every partial sum of `λ − μ` is nonnegative and the total is 0.
pub fn dominance_leq(mu: &DominantCoweight, lambda: &DominantCoweight) -> bool {
    assert_eq!(mu.len(), lambda.len(), "length mismatch");
    let mut partial = 0i64;
    for (l, m) in lambda.0.iter().zip(&mu.0) {
        partial += l - m;
        if partial < 0 {
            return false;
        }
    }
    partial == 0
}

/// Diagonalization of a matrix over the valuation ring.
pub(crate) struct SmithForm<F> {
    /// Valuations of the diagonal entries, nondecreasing.
    pub exponents: Vec<i64>,
    /// The frame `X = base · P⁻¹` where `P` collects the row operations.
    pub frame: Option<Columns<F>>,
}

/// Invariant-factor exponents of a nonsingular `a` (by columns). With a
/// `base` frame, also tracks `X` such that `⟨columns of base⟩ = ⟨X⟩` and
/// `⟨columns of base·a⟩ = ⟨t^{e_m} x_m⟩`.
///
/// Pivot: the entry of least valuation, ties to the lowest (row, column).
pub(crate) fn smith<F: Field>(a: &Columns<F>, base: Option<Columns<F>>) -> Result<SmithForm<F>> {
    let n = a.len();
    // Row-major working copy.
    let mut m: Vec<Vec<ValuedScalar<F>>> =
        (0..n).map(|i| a.iter().map(|c| c[i].clone()).collect()).collect();
    let mut frame = base;
    let mut exponents = Vec::with_capacity(n);
    for s in 0..n {
        let mut best: Option<(i64, usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(s) {
            for (j, x) in row.iter().enumerate().skip(s) {
                if let Some(v) = x.val() {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let (v, pi, pj) = best.ok_or_else(|| Error::Rank("singular relative matrix".into()))?;
        if pi != s {
            m.swap(pi, s);
            if let Some(x) = frame.as_mut() {
                x.swap(pi, s);
            }
        }
        if pj != s {
            for row in m.iter_mut() {
                row.swap(pj, s);
            }
        }
        let pinv = m[s][s].inv()?;
        for i in s + 1..n {
            if m[i][s].is_zero() {
                continue;
            }
            let q = &m[i][s] * &pinv;
            for j in s + 1..n {
                if !m[s][j].is_zero() {
                    m[i][j] = &m[i][j] - &(&q * &m[s][j]);
                }
            }
            m[i][s] = ValuedScalar::zero();
            // row_i -= q·row_s  ⇒  x_s += q·x_i
            if let Some(x) = frame.as_mut() {
                let xi = x[i].clone();
                for (a, b) in x[s].iter_mut().zip(&xi) {
                    if !b.is_zero() {
                        *a = &*a + &(&q * b);
                    }
                }
            }
        }
        exponents.push(v);
    }
    Ok(SmithForm { exponents, frame })
}

/// The `(a_1 ≥ … ≥ a_n)` with `gL = E` and `gM = ⟨t^{-a_i} e_i⟩`.
pub fn relative_invariants<F: Field>(l: &Lattice<F>, m: &Lattice<F>) -> DominantCoweight {
    assert_eq!(l.rank(), m.rank(), "rank mismatch");
    let rel = l.relative_coordinates(m).expect("ranks agree");
    let form = smith(&rel, None).expect("relative matrix of two lattices is nonsingular");
    DominantCoweight::sorted(form.exponents.into_iter().map(|e| -e).collect())
}

/// `d(L, M)`.
pub fn distance<F: Field>(l: &Lattice<F>, m: &Lattice<F>) -> DominantCoweight {
    relative_invariants(l, m)
}

/// `f^t_{ij}(L, M)` for `i + j = n`, from the invariant factors:
/// `a_1 + … + a_j + (i·f_n(L) + j·(f_n(M) − Σa)) / n`.
pub fn binary_f<F: Field>(i: usize, j: usize, l: &Lattice<F>, m: &Lattice<F>) -> Result<i64> {
    let n = l.rank();
    if m.rank() != n {
        return Err(Error::Index("rank mismatch".into()));
    }
    if i + j != n {
        return Err(Error::Index(format!("indices {i} + {j} do not sum to rank {n}")));
    }
    let a = relative_invariants(l, m);
    let top: i64 = a.as_slice()[..j].iter().sum();
    let correction = i as i64 * l.unary_f() + j as i64 * (m.unary_f() - a.total());
    if correction % n as i64 != 0 {
        return Err(Error::Internal(format!("non-integral correction {correction}/{n}")));
    }
    Ok(top + correction / n as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type L = Lattice<Rational>;

    #[test]
    fn invariant_examples() {
        let e = L::standard(2);
        let m = L::diagonal(&[-2, 1]);
        assert_eq!(relative_invariants(&e, &e).into_vec(), vec![0, 0]);
        assert_eq!(relative_invariants(&e, &m).into_vec(), vec![2, -1]);
        assert_eq!(relative_invariants(&m, &e).into_vec(), vec![1, -2]);
        assert_eq!(distance(&m, &e), distance(&e, &m).reverse_negate());
    }

    #[test]
    fn dominance_examples() {
        let a = DominantCoweight::new(vec![1, -1]).unwrap();
        let z = DominantCoweight::zero(2);
        assert!(dominance_leq(&z, &a));
        assert!(!dominance_leq(&a, &z));
        assert!(dominance_leq(&a, &a));
        assert!(DominantCoweight::new(vec![0, 1]).is_err());
    }

    #[test]
    fn pairing_examples() {
        let mu = DominantCoweight::new(vec![2, -1]).unwrap();
        assert_eq!(pair(&WeightVector::fundamental(2, 1), &mu), 2);
        assert_eq!(pair(&WeightVector::fundamental(2, 2), &mu), 1);
    }

    #[test]
    fn binary_examples() {
        let e = L::standard(2);
        let m = L::diagonal(&[-2, 1]);
        assert_eq!(binary_f(1, 1, &e, &m).unwrap(), 2);
        assert_eq!(binary_f(0, 2, &e, &m).unwrap(), m.unary_f());
        assert_eq!(binary_f(2, 0, &m, &e).unwrap(), m.unary_f());
        assert!(matches!(binary_f(1, 2, &e, &m), Err(Error::Index(_))));
    }
}
