mod common;

use affbuild::linalg::{self, Columns};
use affbuild::{random, QLattice, QScalar, Rational, ValuedScalar, F2};
use common::{brute_multi_f, lattice, mono};
use proptest::prelude::*;

type Q = Rational;

#[test]
fn construction_examples() {
    assert_eq!(QLattice::from_columns(linalg::identity(2)).unwrap(), QLattice::standard(2));
    // (e₁, e₁ + e₂)
    assert_eq!(lattice::<Q>(2, &[&[(0, 1, 0)], &[(0, 1, 0), (1, 1, 0)]]), QLattice::standard(2));
    // (t⁻¹e₁, e₂) and (t⁻¹e₁ + e₂, e₂)
    let a = lattice::<Q>(2, &[&[(0, 1, -1)], &[(1, 1, 0)]]);
    let b = lattice::<Q>(2, &[&[(0, 1, -1), (1, 1, 0)], &[(1, 1, 0)]]);
    assert_eq!(a, b);
    for col in b.basis() {
        assert!(a.contains(&col));
    }
    assert_eq!(QLattice::standard(1).basis(), vec![vec![QScalar::one()]]);
    assert!(QLattice::from_columns(vec![vec![QScalar::one(), QScalar::one()], vec![QScalar::one(), QScalar::one()]]).is_err());
}

#[test]
fn membership_examples() {
    let e = QLattice::standard(2);
    assert!(e.contains(&[QScalar::one(), QScalar::zero()]));
    assert!(!e.contains(&[QScalar::t_pow(-1), QScalar::zero()]));
    let l = QLattice::diagonal(&[-1, 0]);
    assert!(l.contains(&[QScalar::t_pow(-1), QScalar::one()]));
}

#[test]
fn unary_examples() {
    assert_eq!(QLattice::standard(3).unary_f(), 0);
    assert_eq!(QLattice::diagonal(&[-2, 1]).unary_f(), 1);
    assert_eq!(QLattice::standard(3).scale(1).unary_f(), -3);
}

/// `−val det` of any generating set, computed by cofactor expansion.
#[test]
fn unary_matches_cofactor_oracle() {
    let mut rng = random::rng(11);
    for n in 1..=4 {
        for _ in 0..10 {
            let gens: Columns<Q> = random::matrix(&mut rng, n, -2, 2);
            let l = QLattice::from_columns(gens.clone()).unwrap();
            let v = common::cofactor_det(&gens).valuation().finite().unwrap();
            assert_eq!(l.unary_f(), -v);
            assert_eq!(brute_multi_f(&[n], &[l.clone()]), l.unary_f());
        }
    }
}

fn mix_columns(seed: u64, gens: &Columns<Q>) -> Columns<Q> {
    // right multiplication by a matrix in GL_n(O): unit diagonal times
    // elementary operations with nonnegative-valuation multipliers
    let mut rng = random::rng(seed);
    let n = gens.len();
    let mut g = gens.clone();
    for step in 0..3 * n {
        let i = step % n;
        let j = (step * 7 + 1) % n;
        if i == j {
            continue;
        }
        let q = ValuedScalar::from_laurent(&random::laurent::<Q, _>(&mut rng, 0, 2, 0.6));
        let ci = g[i].clone();
        for (a, b) in g[j].iter_mut().zip(&ci) {
            *a = &*a + &(&q * b);
        }
    }
    g.reverse();
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_under_unimodular_mixing(seed in any::<u64>(), n in 1usize..=4) {
        let gens: Columns<Q> = random::matrix(&mut random::rng(seed), n, -2, 2);
        let l = QLattice::from_columns(gens.clone()).unwrap();
        prop_assert_eq!(QLattice::from_columns(mix_columns(seed ^ 0x5a, &gens)).unwrap(), l.clone());
        for col in &gens {
            prop_assert!(l.contains(col));
        }
    }

    #[test]
    fn sum_and_intersection(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = random::rng(seed);
        let l: QLattice = random::lattice(&mut rng, n, -2, 2);
        let m: QLattice = random::lattice(&mut rng, n, -2, 2);
        let k: QLattice = random::lattice(&mut rng, n, -2, 2);
        let s = l.sum(&m);
        let i = l.intersect(&m);
        prop_assert!(l.is_sublattice_of(&s) && m.is_sublattice_of(&s));
        prop_assert!(i.is_sublattice_of(&l) && i.is_sublattice_of(&m));
        prop_assert!(s.unary_f() >= l.unary_f().max(m.unary_f()));
        prop_assert!(i.unary_f() <= l.unary_f().min(m.unary_f()));
        prop_assert_eq!(&s, &m.sum(&l));
        prop_assert_eq!(&i, &m.intersect(&l));
        prop_assert_eq!(&l.sum(&l), &l);
        prop_assert_eq!(&l.intersect(&l), &l);
        prop_assert_eq!(s.sum(&k), l.sum(&m.sum(&k)));
        prop_assert_eq!(i.intersect(&k), l.intersect(&m.intersect(&k)));
        // modular identity for the determinant: f(L+M) + f(L∩M) = f(L) + f(M)
        prop_assert_eq!(s.unary_f() + i.unary_f(), l.unary_f() + m.unary_f());
        prop_assert_eq!(l.dual().dual(), l.clone());
    }

    #[test]
    fn scaling(seed in any::<u64>(), n in 1usize..=4, c in -3i64..=3) {
        let l: QLattice = random::lattice(&mut random::rng(seed), n, -2, 2);
        prop_assert_eq!(l.scale(c).unary_f(), l.unary_f() - c * n as i64);
    }
}

#[test]
fn prime_field_lattices() {
    let mut rng = random::rng(5);
    for _ in 0..20 {
        let l: affbuild::F2Lattice = random::lattice(&mut rng, 3, -2, 2);
        let m: affbuild::F2Lattice = random::lattice(&mut rng, 3, -2, 2);
        let s = l.sum(&m);
        assert!(l.is_sublattice_of(&s));
        assert_eq!(s.unary_f() + l.intersect(&m).unary_f(), l.unary_f() + m.unary_f());
        let _ = mono::<F2>(1, 0);
    }
}
