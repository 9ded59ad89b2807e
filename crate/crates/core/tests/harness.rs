mod common;

use affbuild::harness::{
    asymptotic_check, asymptotic_verified_at, positivity_check, scale_config, sl4_network_cost, sl4_node_bound,
    two_node_cost, NetworkShape, Sl4Shape,
};
use affbuild::linalg::{self, Columns};
use affbuild::{
    random, star_cost, verify_star, DominantCoweight, Error, F2Lattice, HarnessOptions, IndexVector, QLattice,
    Rational, Status, Strategy, F2,
};
use common::{brute_multi_f, brute_star_cost, idx};
use rand::Rng;

type Q = Rational;

fn random_triple(rng: &mut random::Rng64, n: usize) -> Vec<QLattice> {
    (0..3).map(|_| random::lattice(rng, n, -2, 2)).collect()
}

#[test]
fn reports_are_sound() {
    let mut rng = random::rng(31);
    let opts = HarnessOptions { budget: 200, ..Default::default() };
    for _ in 0..12 {
        let n = rng.gen_range(1..=3);
        let ls = random_triple(&mut rng, n);
        let c = random::indices(&mut rng, 3, n);
        for s in Strategy::ALL {
            let r = verify_star(&idx(&c), &ls, s, &opts).unwrap();
            assert_eq!(r.lhs, brute_multi_f(&c, &ls));
            assert_eq!(r.candidates_examined, r.candidates.len());
            assert!(r.candidates_examined <= opts.budget);
            assert!(r.candidates.iter().all(|x| x.cost >= r.lhs));
            for x in r.candidates.iter().take(3) {
                assert_eq!(brute_star_cost(&c, &ls, &x.lattice), x.cost);
            }
            match r.status {
                Status::Verified => {
                    let w = r.witness().unwrap();
                    assert_eq!(brute_star_cost(&c, &ls, w), r.lhs);
                }
                Status::Inconclusive => assert!(r.witness().is_none()),
            }
        }
    }
}

#[test]
fn same_line_triple_is_close() {
    let l = QLattice::diagonal(&[-1, 0, 0]);
    let r = verify_star(&idx(&[1, 1, 1]), &[l.clone(), l.clone(), l.clone()], Strategy::Close, &Default::default())
        .unwrap();
    assert_eq!((r.status, r.lhs), (Status::Verified, 1));
    assert_eq!(r.witness(), Some(&l.sum(&l).sum(&l)));
    // close abstains when more than one step apart
    let far = [QLattice::standard(2), QLattice::diagonal(&[-2, 0]), QLattice::standard(2)];
    let r = verify_star(&idx(&[1, 1, 0]), &far, Strategy::Close, &Default::default()).unwrap();
    assert_eq!(r.status, Status::Inconclusive);
}

#[test]
fn apartment_strategy_on_two_lattices() {
    let ls = [QLattice::standard(2), QLattice::diagonal(&[-2, 0])];
    let r = verify_star(&idx(&[1, 1]), &ls, Strategy::Apartment, &Default::default()).unwrap();
    assert_eq!((r.status, r.lhs), (Status::Verified, 2));
    assert_eq!(brute_star_cost(&[1, 1], &ls, r.witness().unwrap()), 2);
}

#[test]
fn enumeration_over_f2() {
    let mut rng = random::rng(37);
    for _ in 0..6 {
        let ls: Vec<F2Lattice> = (0..3).map(|_| random::lattice(&mut rng, 2, -2, 2)).collect();
        for id in IndexVector::all(3, 2) {
            let r = verify_star(&id, &ls, Strategy::Enumerate, &Default::default()).unwrap();
            assert_eq!(r.status, Status::Verified);
        }
    }
    let e = QLattice::standard(2);
    let r = verify_star(&idx(&[1, 1]), &[e.clone(), e], Strategy::Enumerate, &Default::default()).unwrap();
    assert_eq!((r.status, r.candidates_examined), (Status::Inconclusive, 0));
    assert!(r.note.is_some());
}

#[test]
fn budget_seed_and_threads() {
    let mut rng = random::rng(41);
    let ls = random_triple(&mut rng, 3);
    let id = idx(&[1, 1, 1]);
    for s in Strategy::ALL {
        let r = verify_star(&id, &ls, s, &HarnessOptions { budget: 0, ..Default::default() }).unwrap();
        assert_eq!((r.status, r.candidates_examined), (Status::Inconclusive, 0));
    }
    let opts = |seed, threads| HarnessOptions { budget: 150, seed, threads, ..Default::default() };
    let a = verify_star(&id, &ls, Strategy::Random, &opts(5, 1)).unwrap();
    let b = verify_star(&id, &ls, Strategy::Random, &opts(5, 1)).unwrap();
    let c = verify_star(&id, &ls, Strategy::Random, &opts(5, 4)).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert_eq!(a.seed, 5);
}

#[test]
fn frames_are_tried_first() {
    let mut rng = random::rng(43);
    for _ in 0..10 {
        let apt = random::apartment::<Q, _>(&mut rng, 3);
        let ls: Vec<QLattice> =
            (0..3).map(|_| apt.lattice(&random::apartment_point(&mut rng, 3, -3, 3)).unwrap()).collect();
        let c = random::indices(&mut rng, 3, 3);
        let opts = HarnessOptions { frames: vec![apt.basis().clone()], ..Default::default() };
        let r = verify_star(&idx(&c), &ls, Strategy::Apartment, &opts).unwrap();
        assert_eq!((r.status, r.candidates_examined), (Status::Verified, 1));
    }
}

#[test]
fn two_node_with_equal_centers_is_the_star() {
    let mut rng = random::rng(47);
    for _ in 0..10 {
        let ls: Vec<QLattice> = (0..4).map(|_| random::lattice(&mut rng, 4, -1, 1)).collect();
        let p: QLattice = random::lattice(&mut rng, 4, -1, 1);
        let c = random::indices(&mut rng, 4, 4);
        let star = star_cost(&idx(&c), &ls, &p).unwrap();
        for shape in [NetworkShape::pairs_12_34(), NetworkShape::pairs_41_23()] {
            assert_eq!(two_node_cost(&idx(&c), &ls, &shape, &p, &p).unwrap(), star);
        }
    }
    let e = QLattice::standard(2);
    let bad = NetworkShape::TwoNode { p: vec![0, 0], q: vec![1, 2] };
    assert!(two_node_cost(&idx(&[1, 1, 0]), &[e.clone(), e.clone(), e.clone()], &bad, &e, &e).is_err());
}

#[test]
fn sl4_costs_bound_below() {
    let mut rng = random::rng(53);
    let e = QLattice::standard(4);
    for shape in [Sl4Shape::First, Sl4Shape::Second] {
        let ls = vec![e.clone(); 4];
        assert_eq!(sl4_network_cost(&ls, shape, &e, &e).unwrap(), 0);
    }
    for _ in 0..8 {
        let ls: Vec<QLattice> = (0..4).map(|_| random::lattice(&mut rng, 4, -1, 1)).collect();
        let p: QLattice = random::lattice(&mut rng, 4, -1, 1);
        let q: QLattice = random::lattice(&mut rng, 4, -1, 1);
        for shape in [Sl4Shape::First, Sl4Shape::Second] {
            let cost = sl4_network_cost(&ls, shape, &p, &q).unwrap();
            assert!(cost >= sl4_node_bound(&ls, shape, &p, &q).unwrap());
        }
    }
}

#[test]
fn scaling() {
    let mut rng = random::rng(59);
    let x: Columns<Q> = random::unimodular(&mut rng, 3, 1, 0);
    let own = QLattice::from_columns(x.clone()).unwrap();
    assert_eq!(scale_config(&[x.clone()], &[DominantCoweight::zero(3)]).unwrap()[0], own);
    let c = DominantCoweight::new(vec![2, 2, 2]).unwrap();
    assert_eq!(scale_config(&[x.clone()], &[c]).unwrap()[0], own.scale(-2));
    let lam = DominantCoweight::new(vec![3, 1, 0]).unwrap();
    let scaled = scale_config(&[x.clone()], &[lam.clone()]).unwrap();
    assert_eq!(scaled[0].unary_f(), own.unary_f() + lam.total());
    assert!(scale_config(&[x], &[DominantCoweight::zero(2)]).is_err());
}

#[test]
fn asymptotics() {
    let mut rng = random::rng(61);
    let lam = |v: &[i64]| DominantCoweight::new(v.to_vec()).unwrap();
    for _ in 0..5 {
        let bases: Vec<Columns<F2>> = (0..3).map(|_| random::unimodular(&mut rng, 2, 1, 0)).collect();
        let schedule: Vec<Vec<DominantCoweight>> =
            (0..4).map(|m| vec![lam(&[m, 0]), lam(&[2 * m, 0]), lam(&[m, m])]).collect();
        let step = asymptotic_verified_at(&bases, &schedule, &Default::default()).unwrap();
        assert!(step.is_some());
        assert!(asymptotic_check(&bases, &schedule, &Default::default()).unwrap());
    }
    // one shared frame always lies in an apartment
    let x: Columns<Q> = random::unimodular(&mut rng, 3, 1, 0);
    let schedule = vec![vec![lam(&[4, 1, 0]), lam(&[2, 2, 0]), lam(&[1, 0, -1])]];
    let bases = vec![x.clone(), x.clone(), x];
    assert_eq!(asymptotic_verified_at(&bases, &schedule, &Default::default()).unwrap(), Some(0));
    assert_eq!(asymptotic_verified_at(&bases, &[], &Default::default()).unwrap(), None);
}

#[test]
fn positivity() {
    let e = linalg::identity::<Q>(3);
    assert!(positivity_check(&[e.clone(), e.clone()]).unwrap());
    assert!(positivity_check::<Q>(&[]).unwrap());
    let f2 = linalg::identity::<F2>(2);
    assert!(matches!(positivity_check(&[f2.clone(), f2.clone(), f2]), Err(Error::Unsupported(_))));
}
