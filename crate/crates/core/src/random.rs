//! Seeded generators for lattices, subspaces and apartments.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::apartment::{Apartment, ApartmentPoint};
use crate::field::Field;
use crate::lattice::Lattice;
use crate::laurent::LaurentPoly;
use crate::linalg::{self, Columns};
use crate::scalar::ValuedScalar;
use crate::subspace::Subspace;

pub use rand::SeedableRng;

/// The generator used throughout; reports record its seed.
pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniform element of a finite field, or an integer in `[−3, 3]`.
pub fn scalar<F: Field, R: Rng>(rng: &mut R) -> F {
    match F::elements() {
        Some(els) => els.choose(rng).unwrap().clone(),
        None => F::from_i64(rng.gen_range(-3..=3)),
    }
}

fn nonzero_scalar<F: Field, R: Rng>(rng: &mut R) -> F {
    loop {
        let c: F = scalar(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Each exponent in `lo..=hi` present with probability `density`.
pub fn laurent<F: Field, R: Rng>(rng: &mut R, lo: i64, hi: i64, density: f64) -> LaurentPoly<F> {
    let mut terms = Vec::new();
    for e in lo..=hi {
        if rng.gen_bool(density) {
            terms.push((e, nonzero_scalar::<F, R>(rng)));
        }
    }
    LaurentPoly::from_terms(terms)
}

/// A nonsingular matrix with Laurent-polynomial entries, exponents in `lo..=hi`.
pub fn matrix<F: Field, R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> Columns<F> {
    loop {
        let m: Columns<F> = (0..n)
            .map(|_| (0..n).map(|_| ValuedScalar::from_laurent(&laurent(rng, lo, hi, 0.4))).collect())
            .collect();
        if !linalg::det(&m).is_zero() {
            return m;
        }
    }
}

pub fn lattice<F: Field, R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> Lattice<F> {
    Lattice::from_columns(matrix(rng, n, lo, hi)).expect("nonsingular generators")
}

/// A product of elementary matrices with Laurent-polynomial entries of
/// exponent at most `deg` in absolute value, with the columns then shifted
/// by random powers of `t` in `[−shift, shift]`.
pub fn unimodular<F: Field, R: Rng>(rng: &mut R, n: usize, deg: i64, shift: i64) -> Columns<F> {
    let mut x = linalg::identity::<F>(n);
    if n > 1 {
        for _ in 0..2 * n {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let q = ValuedScalar::from_laurent(&laurent::<F, R>(rng, -deg, deg, 0.5));
            // column j += q · column i
            let ci = x[i].clone();
            for (a, b) in x[j].iter_mut().zip(&ci) {
                *a = &*a + &(&q * b);
            }
        }
        x.shuffle(rng);
    }
    for col in x.iter_mut() {
        let s = rng.gen_range(-shift..=shift);
        let c: F = nonzero_scalar(rng);
        for v in col.iter_mut() {
            *v = v.shift(s).scale(&c);
        }
    }
    x
}

pub fn apartment<F: Field, R: Rng>(rng: &mut R, n: usize) -> Apartment<F> {
    Apartment::new(unimodular(rng, n, 1, 1)).expect("unimodular matrices are nonsingular")
}

pub fn apartment_point<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> ApartmentPoint {
    ApartmentPoint((0..n).map(|_| rng.gen_range(lo..=hi)).collect())
}

/// Span of a random number of random vectors.
pub fn subspace<F: Field, R: Rng>(rng: &mut R, n: usize) -> Subspace<F> {
    let count = rng.gen_range(0..=n);
    let vs: Vec<Vec<F>> = (0..count).map(|_| (0..n).map(|_| scalar(rng)).collect()).collect();
    Subspace::span(n, &vs)
}

/// `E + t⁻¹U` for a random subspace `U`.
pub fn close_lattice<F: Field, R: Rng>(rng: &mut R, n: usize) -> Lattice<F> {
    crate::closecase::lift_subspace(&subspace(rng, n))
}

/// A random index vector of length `k` summing to `n`.
pub fn indices<R: Rng>(rng: &mut R, k: usize, n: usize) -> Vec<usize> {
    let mut idx = vec![0; k];
    for _ in 0..n {
        idx[rng.gen_range(0..k)] += 1;
    }
    idx
}
