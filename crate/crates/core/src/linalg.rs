//! Dense linear algebra over the Laurent field. Matrices are stored as a
//! list of columns, matching how lattices are presented by generators.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::laurent::LaurentPoly;
use crate::scalar::ValuedScalar;

/// A matrix given by its columns.
pub type Columns<F> = Vec<Vec<ValuedScalar<F>>>;

pub fn identity<F: Field>(n: usize) -> Columns<F> {
    (0..n)
        .map(|j| (0..n).map(|i| if i == j { ValuedScalar::one() } else { ValuedScalar::zero() }).collect())
        .collect()
}

pub fn mat_vec<F: Field>(a: &Columns<F>, v: &[ValuedScalar<F>]) -> Vec<ValuedScalar<F>> {
    let rows = a.first().map_or(0, |c| c.len());
    let mut out = vec![ValuedScalar::zero(); rows];
    for (col, x) in a.iter().zip(v) {
        if x.is_zero() {
            continue;
        }
        for (o, e) in out.iter_mut().zip(col) {
            if !e.is_zero() {
                *o = &*o + &(e * x);
            }
        }
    }
    out
}

pub fn mat_mul<F: Field>(a: &Columns<F>, b: &Columns<F>) -> Columns<F> {
    b.iter().map(|col| mat_vec(a, col)).collect()
}

pub fn transpose<F: Field>(a: &Columns<F>) -> Columns<F> {
    let rows = a.first().map_or(0, |c| c.len());
    (0..rows).map(|i| a.iter().map(|col| col[i].clone()).collect()).collect()
}

/// Determinant by elimination, pivoting on the entry of least valuation.
pub fn det<F: Field>(a: &Columns<F>) -> ValuedScalar<F> {
    let polys: Option<Vec<Vec<LaurentPoly<F>>>> =
        a.iter().map(|col| col.iter().map(ValuedScalar::to_laurent).collect()).collect();
    if let Some(polys) = polys {
        let refs: Vec<&[LaurentPoly<F>]> = polys.iter().map(Vec::as_slice).collect();
        return ValuedScalar::from_laurent(&det_laurent(&refs));
    }
    let n = a.len();
    let mut m: Vec<Vec<ValuedScalar<F>>> = a.clone();
    let mut acc = ValuedScalar::one();
    for k in 0..n {
        let Some(p) = (k..n)
            .filter(|&j| !m[j][k].is_zero())
            .min_by_key(|&j| m[j][k].valuation())
        else {
            return ValuedScalar::zero();
        };
        if p != k {
            m.swap(p, k);
            acc = -acc;
        }
        let pivot = m[k][k].clone();
        let pinv = pivot.inv().unwrap();
        for j in k + 1..n {
            if m[j][k].is_zero() {
                continue;
            }
            let c = &m[j][k] * &pinv;
            for i in k + 1..n {
                if !m[k][i].is_zero() {
                    m[j][i] = &m[j][i] - &(&c * &m[k][i]);
                }
            }
        }
        acc = &acc * &pivot;
    }
    acc
}

/// Determinant of a square matrix of Laurent polynomials by fraction-free
/// (Bareiss) elimination.
pub fn det_laurent<F: Field>(cols: &[&[LaurentPoly<F>]]) -> LaurentPoly<F> {
    let n = cols.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    // Shift every column into nonnegative exponents; det picks up t^{-Σ shift}.
    let mut shift_total = 0i64;
    let mut m: Vec<Vec<LaurentPoly<F>>> = Vec::with_capacity(n);
    for col in cols {
        let low = col.iter().filter_map(|e| e.valuation()).min();
        let Some(low) = low else {
            return LaurentPoly::zero();
        };
        shift_total += low;
        m.push(col.iter().map(|e| e.shift(-low)).collect());
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&j| !m[j][k].is_zero()) else {
                return LaurentPoly::zero();
            };
            m.swap(p, k);
            negate = !negate;
        }
        for j in k + 1..n {
            for i in k + 1..n {
                let a = &m[j][i] * &m[k][k];
                let b = &m[j][k] * &m[k][i];
                m[j][i] = (&a - &b).div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].shift(shift_total);
    if negate {
        -&d
    } else {
        d
    }
}

/// Solves `a · X = b` for square nonsingular `a`; `b` is given by columns.
pub fn solve<F: Field>(a: &Columns<F>, b: &Columns<F>) -> Result<Columns<F>> {
    let n = a.len();
    // Row-major augmented system.
    let mut rows: Vec<Vec<ValuedScalar<F>>> = (0..n)
        .map(|i| {
            a.iter()
                .map(|c| c[i].clone())
                .chain(b.iter().map(|c| c[i].clone()))
                .collect()
        })
        .collect();
    let width = n + b.len();
    for k in 0..n {
        let p = (k..n)
            .filter(|&r| !rows[r][k].is_zero())
            .min_by_key(|&r| rows[r][k].valuation())
            .ok_or_else(|| Error::Rank("singular matrix".into()))?;
        rows.swap(p, k);
        let pinv = rows[k][k].inv()?;
        for x in rows[k].iter_mut().skip(k) {
            *x = &*x * &pinv;
        }
        for r in 0..n {
            if r == k || rows[r][k].is_zero() {
                continue;
            }
            let c = rows[r][k].clone();
            for x in k..width {
                if !rows[k][x].is_zero() {
                    rows[r][x] = &rows[r][x] - &(&c * &rows[k][x]);
                }
            }
        }
    }
    Ok((n..width).map(|x| rows.iter().map(|r| r[x].clone()).collect()).collect())
}

pub fn inverse<F: Field>(a: &Columns<F>) -> Result<Columns<F>> {
    solve(a, &identity(a.len()))
}
