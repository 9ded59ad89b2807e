mod common;

use affbuild::detval::{edge_reduction_check, multi_f_detailed};
use affbuild::linalg::Columns;
use affbuild::{multi_f, random, star_cost, IndexVector, QLattice, Rational, F2};
use common::{brute_multi_f, brute_star_cost, compositions, idx};
use proptest::prelude::*;

type Q = Rational;

fn axes() -> [QLattice; 3] {
    [QLattice::diagonal(&[-1, 0, 0]), QLattice::diagonal(&[0, -1, 0]), QLattice::diagonal(&[0, 0, -1])]
}

#[test]
fn ternary_values() {
    let e = QLattice::standard(3);
    let line = QLattice::diagonal(&[-1, 0, 0]);
    let one = idx(&[1, 1, 1]);
    assert_eq!(multi_f(&one, &[e.clone(), e.clone(), e.clone()]).unwrap(), 0);
    assert_eq!(multi_f(&one, &[line.clone(), line.clone(), line.clone()]).unwrap(), 1);
    assert_eq!(brute_multi_f(&[1, 1, 1], &[line.clone(), line.clone(), line.clone()]), 1);
    assert_eq!(multi_f(&one, &axes()).unwrap(), 3);
    assert_eq!(brute_multi_f(&[1, 1, 1], &axes()), 3);
}

#[test]
fn star_cost_values() {
    let e = QLattice::standard(3);
    let line = QLattice::diagonal(&[-1, 0, 0]);
    let one = idx(&[1, 1, 1]);
    assert_eq!(star_cost(&one, &[e.clone(), e.clone(), e.clone()], &e).unwrap(), 0);
    assert_eq!(star_cost(&one, &[line.clone(), line.clone(), line.clone()], &line).unwrap(), 1);
    assert_eq!(star_cost(&one, &axes(), &e.scale(1)).unwrap(), 3);
    assert_eq!(brute_star_cost(&[1, 1, 1], &axes(), &e.scale(1)), 3);
}

#[test]
fn edge_reduction_values() {
    let e = QLattice::standard(2);
    let m = QLattice::diagonal(&[-2, 1]);
    let c = edge_reduction_check(1, 1, &e, &m).unwrap();
    assert!(c.holds && c.brute_force == 2);
    let c = edge_reduction_check(2, 0, &e, &m).unwrap();
    assert!(c.holds && c.brute_force == e.unary_f());
    let c = edge_reduction_check(0, 2, &e, &m).unwrap();
    assert!(c.holds && c.brute_force == m.unary_f());
}

#[test]
fn input_errors() {
    let e = QLattice::standard(2);
    assert!(IndexVector::new(vec![1, 2], 2).is_err());
    assert!(multi_f(&idx(&[1, 1]), &[e.clone()]).is_err());
    assert!(multi_f(&idx(&[1, 1, 1]), &[QLattice::standard(3), e.clone(), e]).is_err());
}

#[test]
fn prime_field_selection_is_valid() {
    let mut rng = random::rng(9);
    for _ in 0..20 {
        let ls: Vec<affbuild::F2Lattice> = (0..3).map(|_| random::lattice(&mut rng, 3, -2, 2)).collect();
        for c in compositions(3, 3) {
            let r = multi_f_detailed(&idx(&c), &ls).unwrap();
            assert_eq!(r.value, brute_multi_f(&c, &ls));
            for (sel, &i) in r.selection.iter().zip(&c) {
                assert_eq!(sel.len(), i);
            }
            let cols: Columns<F2> =
                r.selection.iter().zip(&ls).flat_map(|(s, l)| s.iter().map(|&m| l.column(m))).collect();
            assert_eq!(common::cofactor_det(&cols).valuation().finite(), Some(-r.value));
        }
    }
}

fn lattices(seed: u64, k: usize, n: usize) -> Vec<QLattice> {
    let mut rng = random::rng(seed);
    (0..k).map(|_| random::lattice(&mut rng, n, -2, 2)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn agrees_with_brute_force(seed in any::<u64>(), n in 1usize..=3, k in 1usize..=3) {
        let ls = lattices(seed, k, n);
        for c in compositions(k, n) {
            prop_assert_eq!(multi_f(&idx(&c), &ls).unwrap(), brute_multi_f(&c, &ls));
        }
    }

    #[test]
    fn one_direction(seed in any::<u64>(), n in 1usize..=3) {
        let ls = lattices(seed, 4, n);
        let (p, rest) = ls.split_last().unwrap();
        for c in compositions(3, n) {
            let v = multi_f(&idx(&c), rest).unwrap();
            prop_assert!(v <= star_cost(&idx(&c), rest, p).unwrap());
        }
    }

    #[test]
    fn scaling_permutation_monotonicity(seed in any::<u64>(), n in 1usize..=3, j in 0usize..3) {
        let ls = lattices(seed, 3, n);
        for c in compositions(3, n) {
            let v = multi_f(&idx(&c), &ls).unwrap();
            let mut scaled = ls.clone();
            scaled[j] = scaled[j].scale(-1);
            prop_assert_eq!(multi_f(&idx(&c), &scaled).unwrap(), v + c[j] as i64);
            let (pc, pl) = ([c[2], c[0], c[1]], [ls[2].clone(), ls[0].clone(), ls[1].clone()]);
            prop_assert_eq!(multi_f(&idx(&pc), &pl).unwrap(), v);
            let mut bigger = ls.clone();
            bigger[j] = bigger[j].sum(&QLattice::standard(n));
            prop_assert!(multi_f(&idx(&c), &bigger).unwrap() >= v);
        }
    }

    #[test]
    fn translation_shift(seed in any::<u64>(), n in 1usize..=3) {
        let ls = lattices(seed, 3, n);
        let g: Columns<Q> = random::unimodular(&mut random::rng(seed ^ 7), n, 1, 2);
        let dv = affbuild::linalg::det(&g).valuation().finite().unwrap();
        let moved: Vec<QLattice> = ls.iter().map(|l| l.translate(&g).unwrap()).collect();
        for c in compositions(3, n) {
            prop_assert_eq!(multi_f(&idx(&c), &moved).unwrap(), multi_f(&idx(&c), &ls).unwrap() - dv);
        }
    }
}
