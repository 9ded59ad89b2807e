//! Lattices: full-rank `O`-submodules of `K^n`, where `O = F[[t]]` and
//! `K = F((t))`.
//!
//! Every lattice is held in a unique lower-triangular echelon form `H`:
//!
//! * column `j` has zeros above row `j` and the pivot `t^{d_j}` at row `j`;
//! * below the diagonal, the entry in row `i` is a Laurent polynomial whose
//!   exponents are all `< d_i` (a fixed residue system of `K / t^{d_i} O`).
//!
//! Two lattices are equal iff their echelon forms are equal, so `Eq` and
//! `Hash` are structural.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::laurent::LaurentPoly;
use crate::linalg::{self, Columns};
use crate::scalar::ValuedScalar;

/// Largest truncation tried before falling back to exact elimination.
const MAX_PRECISION: usize = 256;

fn series_val<F: Field>(s: &[F]) -> Option<usize> {
    s.iter().position(|c| !c.is_zero())
}

/// `a − q·b` modulo `t^{a.len()}`.
fn sub_mul_trunc<F: Field>(a: &mut [F], q: &[F], b: &[F]) {
    let prec = a.len();
    let (Some(vq), Some(vb)) = (series_val(q), series_val(b)) else {
        return;
    };
    for i in vq..prec {
        if q[i].is_zero() {
            continue;
        }
        for j in vb..prec - i {
            if !b[j].is_zero() {
                a[i + j] = a[i + j].clone() - q[i].clone() * b[j].clone();
            }
        }
    }
}

fn mul_trunc<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); a.len()];
    let neg: Vec<F> = a.iter().map(|x| -x.clone()).collect();
    sub_mul_trunc(&mut out, &neg, b);
    out
}

/// Inverse of a unit modulo `t^{u.len()}`.
fn inv_unit<F: Field>(u: &[F]) -> Vec<F> {
    let prec = u.len();
    let c0 = u[0].inv().expect("unit has nonzero constant term");
    let mut out = vec![F::zero(); prec];
    out[0] = c0.clone();
    for k in 1..prec {
        let mut s = F::zero();
        for i in 1..=k {
            if !u[i].is_zero() && !out[k - i].is_zero() {
                s = s + u[i].clone() * out[k - i].clone();
            }
        }
        out[k] = -(s * c0.clone());
    }
    out
}

/// `t^{−v}·s`, padded with zeros.
fn shift_down<F: Field>(s: &[F], v: usize) -> Vec<F> {
    let mut out: Vec<F> = s[v..].to_vec();
    out.resize(s.len(), F::zero());
    out
}

/// Echelon form of `t^{−vmin}L + t^{prec}Oⁿ`, computed in `(O/t^{prec})ⁿ`.
///
/// Writing `M` for that module and `d_j` for its pivots, `M ⊇ t^{Σd}Oⁿ`; so
/// when `Σd < prec`, `M = t^{−vmin}L + t·M` and `M = t^{−vmin}L` by
/// Nakayama. Otherwise returns `None`.
fn truncated_echelon<F: Field>(
    n: usize,
    gens: &[Vec<ValuedScalar<F>>],
    vmin: i64,
    prec: usize,
) -> Option<Vec<Vec<LaurentPoly<F>>>> {
    let mut rest: Vec<Vec<Vec<F>>> =
        gens.iter().map(|c| c.iter().map(|x| x.shifted_series(vmin, prec)).collect()).collect();
    let mut piv: Vec<Vec<Vec<F>>> = Vec::with_capacity(n);
    let mut exps: Vec<usize> = Vec::with_capacity(n);
    for r in 0..n {
        let (p, v) = rest
            .iter()
            .enumerate()
            .filter_map(|(c, col)| series_val(&col[r]).map(|v| (c, v)))
            .min_by_key(|&(_, v)| v)?;
        let mut pc = rest.swap_remove(p);
        let uinv = inv_unit(&shift_down(&pc[r], v));
        for x in pc.iter_mut().skip(r + 1) {
            *x = mul_trunc(x, &uinv);
        }
        pc[r] = vec![F::zero(); prec];
        pc[r][v] = F::one();
        for col in rest.iter_mut() {
            if series_val(&col[r]).is_none() {
                continue;
            }
            let q = shift_down(&col[r], v);
            col[r] = vec![F::zero(); prec];
            for i in r + 1..n {
                sub_mul_trunc(&mut col[i], &q, &pc[i]);
            }
        }
        piv.push(pc);
        exps.push(v);
    }
    if exps.iter().sum::<usize>() >= prec {
        return None;
    }
    for j in 0..n {
        for i in j + 1..n {
            let d = exps[i];
            if piv[j][i][d..].iter().all(F::is_zero) {
                continue;
            }
            let c = shift_down(&piv[j][i], d);
            for x in piv[j][i][d..].iter_mut() {
                *x = F::zero();
            }
            let (head, tail) = piv.split_at_mut(i);
            for r in i + 1..n {
                sub_mul_trunc(&mut head[j][r], &c, &tail[0][r]);
            }
        }
    }
    let to_laurent = |s: &Vec<F>| {
        LaurentPoly::from_terms(
            s.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k as i64 + vmin, c.clone())),
        )
    };
    Some(piv.iter().map(|col| col.iter().map(to_laurent).collect()).collect())
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice<F> {
    /// Echelon columns; `cols[j][i]` is the entry in row `i`.
    cols: Vec<Vec<LaurentPoly<F>>>,
}

impl<F: Field> Lattice<F> {
    /// The lattice generated by `n` columns, which must be linearly
    /// independent over `K`.
    pub fn from_columns(cols: Columns<F>) -> Result<Self> {
        let n = cols.len();
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::Rank(format!("expected {n} columns of length {n}")));
        }
        Self::from_generators(n, cols)
    }

    /// The lattice generated by any finite spanning set of `K^n`.
    pub fn from_generators(n: usize, gens: Columns<F>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Rank("rank must be positive".into()));
        }
        if gens.iter().any(|c| c.len() != n) {
            return Err(Error::Rank(format!("generators must have length {n}")));
        }
        let gens: Vec<Vec<ValuedScalar<F>>> = gens.into_iter().filter(|c| c.iter().any(|x| !x.is_zero())).collect();
        let Some(vmin) = gens.iter().flatten().filter_map(ValuedScalar::val).min() else {
            return Err(Error::Rank("generators do not span a full-rank lattice".into()));
        };
        let mut prec = 16;
        while prec <= MAX_PRECISION {
            if let Some(cols) = truncated_echelon(n, &gens, vmin, prec) {
                return Ok(Lattice { cols });
            }
            prec *= 2;
        }
        Self::from_generators_exact(n, gens)
    }

    /// Echelon reduction over `K` itself; slow when degrees grow, but needs
    /// no precision bound.
    fn from_generators_exact(n: usize, gens: Columns<F>) -> Result<Self> {
        let mut rest = gens;
        let mut piv: Vec<Vec<ValuedScalar<F>>> = Vec::with_capacity(n);
        for r in 0..n {
            let p = (0..rest.len())
                .filter(|&c| !rest[c][r].is_zero())
                .min_by_key(|&c| rest[c][r].valuation())
                .ok_or_else(|| Error::Rank("generators do not span a full-rank lattice".into()))?;
            let pc = rest.swap_remove(p);
            let pinv = pc[r].inv()?;
            for col in rest.iter_mut() {
                if col[r].is_zero() {
                    continue;
                }
                let q = &col[r] * &pinv;
                col[r] = ValuedScalar::zero();
                for i in r + 1..n {
                    if !pc[i].is_zero() {
                        col[i] = &col[i] - &(&q * &pc[i]);
                    }
                }
            }
            piv.push(pc);
        }
        if rest.iter().any(|c| c.iter().any(|x| !x.is_zero())) {
            return Err(Error::Internal("leftover generator after echelon reduction".into()));
        }
        // Normalize pivots to pure powers of t.
        let mut exps = Vec::with_capacity(n);
        for (j, col) in piv.iter_mut().enumerate() {
            let d = col[j].val().unwrap();
            let unit_inv = col[j].shift(-d).inv()?;
            for x in col.iter_mut().skip(j) {
                if !x.is_zero() {
                    *x = &*x * &unit_inv;
                }
            }
            col[j] = ValuedScalar::t_pow(d);
            exps.push(d);
        }
        // Reduce below-diagonal entries modulo the pivot of their row.
        for j in 0..n {
            for i in j + 1..n {
                let x = piv[j][i].clone();
                if x.is_zero() {
                    continue;
                }
                let kept = ValuedScalar::from_laurent(&x.truncate_below(exps[i]));
                let excess = &x - &kept;
                if excess.is_zero() {
                    continue;
                }
                let c = excess.shift(-exps[i]);
                let (head, tail) = piv.split_at_mut(i);
                let (cj, ci) = (&mut head[j], &tail[0]);
                cj[i] = kept;
                for r in i + 1..n {
                    if !ci[r].is_zero() {
                        cj[r] = &cj[r] - &(&c * &ci[r]);
                    }
                }
            }
        }
        let cols = piv
            .into_iter()
            .map(|col| {
                col.into_iter()
                    .map(|x| x.to_laurent().expect("reduced echelon entries are Laurent polynomials"))
                    .collect()
            })
            .collect();
        Ok(Lattice { cols })
    }

    /// The elementary lattice `E = O^n`.
    pub fn standard(n: usize) -> Self {
        assert!(n >= 1, "rank must be positive");
        Self::diagonal(&vec![0; n])
    }

    /// `⟨t^{d_1} e_1, …, t^{d_n} e_n⟩`.
    pub fn diagonal(exps: &[i64]) -> Self {
        let n = exps.len();
        let cols = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| if i == j { LaurentPoly::t_pow(exps[j]) } else { LaurentPoly::zero() })
                    .collect()
            })
            .collect();
        Lattice { cols }
    }

    pub fn rank(&self) -> usize {
        self.cols.len()
    }

    /// Pivot exponents `d_j` of the echelon form.
    pub fn pivot_exponents(&self) -> Vec<i64> {
        (0..self.rank()).map(|j| self.cols[j][j].valuation().unwrap()).collect()
    }

    pub fn echelon(&self) -> &[Vec<LaurentPoly<F>>] {
        &self.cols
    }

    /// Echelon basis as field elements.
    pub fn basis(&self) -> Columns<F> {
        self.cols
            .iter()
            .map(|c| c.iter().map(ValuedScalar::from_laurent).collect())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<ValuedScalar<F>> {
        self.cols[j].iter().map(ValuedScalar::from_laurent).collect()
    }

    /// Coordinates of `v` in the echelon basis, by forward substitution.
    pub fn coordinates(&self, v: &[ValuedScalar<F>]) -> Result<Vec<ValuedScalar<F>>> {
        let n = self.rank();
        if v.len() != n {
            return Err(Error::Rank(format!("vector of length {} in rank {n}", v.len())));
        }
        let mut res = v.to_vec();
        let mut x = Vec::with_capacity(n);
        for j in 0..n {
            let d = self.cols[j][j].valuation().unwrap();
            let xj = res[j].shift(-d);
            if !xj.is_zero() {
                for i in j + 1..n {
                    if !self.cols[j][i].is_zero() {
                        res[i] = &res[i] - &(&xj * &ValuedScalar::from_laurent(&self.cols[j][i]));
                    }
                }
            }
            x.push(xj);
        }
        Ok(x)
    }

    /// Membership: every coordinate in the echelon basis lies in `O`.
    pub fn contains(&self, v: &[ValuedScalar<F>]) -> bool {
        match self.coordinates(v) {
            Ok(x) => x.iter().all(|c| c.val().is_none_or(|e| e >= 0)),
            Err(_) => false,
        }
    }

    /// `self ⊆ other`.
    pub fn is_sublattice_of(&self, other: &Self) -> bool {
        self.rank() == other.rank() && (0..self.rank()).all(|j| other.contains(&self.column(j)))
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        let mut gens = self.basis();
        gens.extend(other.basis());
        Self::from_generators(self.rank(), gens).expect("sum of lattices is a lattice")
    }

    pub fn sum_all<'a, I: IntoIterator<Item = &'a Self>>(lattices: I) -> Option<Self> {
        let mut it = lattices.into_iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, l| acc.sum(l)))
    }

    /// The dual lattice `{w : wᵀv ∈ O for all v ∈ L}`, basis `(H⁻¹)ᵀ`.
    pub fn dual(&self) -> Self {
        let inv = linalg::inverse(&self.basis()).expect("echelon basis is nonsingular");
        Self::from_columns(linalg::transpose(&inv)).expect("dual of a lattice is a lattice")
    }

    /// Largest common sublattice, via `(L ∩ M)^* = L^* + M^*`.
    pub fn intersect(&self, other: &Self) -> Self {
        self.dual().sum(&other.dual()).dual()
    }

    pub fn intersect_all<'a, I: IntoIterator<Item = &'a Self>>(lattices: I) -> Option<Self> {
        let mut it = lattices.into_iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, l| acc.intersect(l)))
    }

    /// `t^c · L`.
    pub fn scale(&self, c: i64) -> Self {
        Lattice { cols: self.cols.iter().map(|col| col.iter().map(|x| x.shift(c)).collect()).collect() }
    }

    /// `g · L` for a nonsingular matrix `g`.
    pub fn translate(&self, g: &Columns<F>) -> Result<Self> {
        Self::from_columns(linalg::mat_mul(g, &self.basis()))
    }

    /// `f^t_n(L) = −val det(basis)`.
    pub fn unary_f(&self) -> i64 {
        -self.pivot_exponents().iter().sum::<i64>()
    }

    /// The echelon basis of `m` in coordinates of the echelon basis of `self`.
    pub(crate) fn relative_coordinates(&self, m: &Self) -> Result<Columns<F>> {
        (0..m.rank()).map(|j| self.coordinates(&m.column(j))).collect()
    }
}

impl<F: Field> fmt::Debug for Lattice<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.cols.iter()).finish()
    }
}
