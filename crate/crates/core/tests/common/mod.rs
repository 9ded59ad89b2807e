//! Independent oracles shared by the integration tests. Nothing here calls the
//! elimination, flow or assignment code of the library.

#![allow(dead_code)]

use affbuild::field::Field;
use affbuild::{IndexVector, Lattice, Subspace, Valuation, ValuedScalar};

pub fn mono<F: Field>(c: i64, e: i64) -> ValuedScalar<F> {
    ValuedScalar::monomial(F::from_i64(c), e)
}

/// Lattice generated by the given columns, each a list of `(row, coeff, exp)`.
pub fn lattice<F: Field>(n: usize, cols: &[&[(usize, i64, i64)]]) -> Lattice<F> {
    let cols = cols
        .iter()
        .map(|terms| {
            let mut col = vec![ValuedScalar::zero(); n];
            for &(row, c, e) in terms.iter() {
                col[row] = &col[row] + &mono::<F>(c, e);
            }
            col
        })
        .collect();
    Lattice::from_columns(cols).unwrap()
}

/// Laplace expansion along the first column.
pub fn cofactor_det<F: Field>(cols: &[Vec<ValuedScalar<F>>]) -> ValuedScalar<F> {
    let n = cols.len();
    if n == 0 {
        return ValuedScalar::one();
    }
    let mut total = ValuedScalar::zero();
    for row in 0..n {
        let entry = &cols[0][row];
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<ValuedScalar<F>>> = cols[1..]
            .iter()
            .map(|c| c.iter().enumerate().filter(|&(r, _)| r != row).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = entry * &cofactor_det(&minor);
        total = if row % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    if n < r {
        return vec![];
    }
    let mut out = combinations(n - 1, r);
    for mut c in combinations(n - 1, r - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// `max −val det` over all choices of `i_j` basis vectors from each lattice.
pub fn brute_multi_f<F: Field>(idx: &[usize], lattices: &[Lattice<F>]) -> i64 {
    let n = lattices[0].rank();
    let bases: Vec<_> = lattices.iter().map(Lattice::basis).collect();
    let mut best: Option<i64> = None;
    let mut choice: Vec<Vec<usize>> = Vec::new();
    fn rec<F: Field>(
        j: usize,
        idx: &[usize],
        n: usize,
        bases: &[Vec<Vec<ValuedScalar<F>>>],
        choice: &mut Vec<Vec<usize>>,
        best: &mut Option<i64>,
    ) {
        if j == idx.len() {
            let cols: Vec<_> = choice.iter().zip(bases).flat_map(|(c, b)| c.iter().map(|&m| b[m].clone())).collect();
            if let Valuation::Finite(v) = cofactor_det(&cols).valuation() {
                *best = Some(best.map_or(-v, |b| b.max(-v)));
            }
            return;
        }
        for c in combinations(n, idx[j]) {
            choice.push(c);
            rec(j + 1, idx, n, bases, choice, best);
            choice.pop();
        }
    }
    rec(0, idx, n, &bases, &mut choice, &mut best);
    best.expect("some selection is nonsingular")
}

/// `Σ_j brute f_{i_j, n−i_j}(L_j, P) − (k−1) f_n(P)`.
pub fn brute_star_cost<F: Field>(idx: &[usize], lattices: &[Lattice<F>], p: &Lattice<F>) -> i64 {
    let n = p.rank();
    let unary = brute_multi_f(&[n], std::slice::from_ref(p));
    let binary: i64 = idx
        .iter()
        .zip(lattices)
        .map(|(&i, l)| brute_multi_f(&[i, n - i], &[l.clone(), p.clone()]))
        .sum();
    binary - (lattices.len() as i64 - 1) * unary
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn brute_assignment(c: &[Vec<i64>]) -> i64 {
    permutations(c.len()).iter().map(|p| p.iter().enumerate().map(|(i, &j)| c[i][j]).sum()).max().unwrap()
}

/// Rank of bit vectors over 𝔽₂.
pub fn rank_bits(vs: &[u32]) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for &v in vs {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
        }
    }
    basis.len()
}

pub fn to_bits<F: Field>(v: &[F]) -> u32 {
    v.iter().enumerate().fold(0, |acc, (i, x)| if x.is_zero() { acc } else { acc | (1 << i) })
}

/// Largest set of independent vectors drawn one each from distinct
/// subspaces, every vector taken from the subspace's echelon basis.
pub fn brute_konig_f2<F: Field>(spaces: &[Subspace<F>]) -> usize {
    let bases: Vec<Vec<u32>> = spaces.iter().map(|s| s.basis().iter().map(|v| to_bits(v)).collect()).collect();
    fn rec(j: usize, bases: &[Vec<u32>], chosen: &mut Vec<u32>, best: &mut usize) {
        if j == bases.len() {
            if rank_bits(chosen) == chosen.len() {
                *best = (*best).max(chosen.len());
            }
            return;
        }
        rec(j + 1, bases, chosen, best);
        for &v in &bases[j] {
            chosen.push(v);
            rec(j + 1, bases, chosen, best);
            chosen.pop();
        }
    }
    let mut best = 0;
    rec(0, &bases, &mut Vec::new(), &mut best);
    best
}

pub fn idx(v: &[usize]) -> IndexVector {
    IndexVector::new(v.to_vec(), v.iter().sum()).unwrap()
}

/// All `(i_1, …, i_k)` with sum `n`.
pub fn compositions(k: usize, n: usize) -> Vec<Vec<usize>> {
    IndexVector::all(k, n).into_iter().map(|v| v.as_slice().to_vec()).collect()
}
