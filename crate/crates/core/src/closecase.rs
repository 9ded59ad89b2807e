//! Triples of lattices squeezed between `E` and `t⁻¹E`.
//!
//! Such a lattice is `E ⊕ t⁻¹U` for a subspace `U ⊆ 𝔽ⁿ`, so a triple of
//! them is a representation of the `D4` quiver. The determinantal
//! valuation reduces to a max-flow over its indecomposable summands and to
//! an eight-term minimum over the cuts of that network.

use crate::detval::{star_cost, IndexVector};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::flow::FlowNetwork;
use crate::lattice::Lattice;
use crate::scalar::ValuedScalar;
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceTriple<F> {
    pub u1: Subspace<F>,
    pub u2: Subspace<F>,
    pub u3: Subspace<F>,
}

impl<F: Field> SubspaceTriple<F> {
    pub fn new(u1: Subspace<F>, u2: Subspace<F>, u3: Subspace<F>) -> Result<Self> {
        let n = u1.ambient();
        if u2.ambient() != n || u3.ambient() != n {
            return Err(Error::Index("subspaces in different ambient spaces".into()));
        }
        Ok(SubspaceTriple { u1, u2, u3 })
    }

    pub fn ambient(&self) -> usize {
        self.u1.ambient()
    }

    pub fn as_array(&self) -> [&Subspace<F>; 3] {
        [&self.u1, &self.u2, &self.u3]
    }
}

/// The image of `E ⊆ L ⊆ t⁻¹E` in `t⁻¹E/E ≅ 𝔽ⁿ`.
pub fn extract_subspace<F: Field>(l: &Lattice<F>) -> Result<Subspace<F>> {
    let n = l.rank();
    let e = Lattice::standard(n);
    if !e.is_sublattice_of(l) || !l.is_sublattice_of(&e.scale(-1)) {
        return Err(Error::Range("lattice is not between E and t⁻¹E".into()));
    }
    let rows: Vec<Vec<F>> = l
        .echelon()
        .iter()
        .map(|col| col.iter().map(|x| x.coefficient(-1)).collect())
        .collect();
    Ok(Subspace::span(n, &rows))
}

pub fn extract_triple<F: Field>(l: &Lattice<F>, m: &Lattice<F>, n: &Lattice<F>) -> Result<SubspaceTriple<F>> {
    if l.rank() != m.rank() || l.rank() != n.rank() {
        return Err(Error::Index("lattices of different ranks".into()));
    }
    SubspaceTriple::new(extract_subspace(l)?, extract_subspace(m)?, extract_subspace(n)?)
}

/// `E + t⁻¹U`.
pub fn lift_subspace<F: Field>(u: &Subspace<F>) -> Lattice<F> {
    let n = u.ambient();
    let mut gens: Vec<Vec<ValuedScalar<F>>> = (0..n)
        .map(|i| (0..n).map(|k| if k == i { ValuedScalar::one() } else { ValuedScalar::zero() }).collect())
        .collect();
    gens.extend(
        u.basis()
            .iter()
            .map(|v| v.iter().map(|c| ValuedScalar::monomial(c.clone(), -1)).collect()),
    );
    Lattice::from_generators(n, gens).expect("generators span a full-rank lattice")
}

pub fn lift_triple<F: Field>(t: &SubspaceTriple<F>) -> [Lattice<F>; 3] {
    [lift_subspace(&t.u1), lift_subspace(&t.u2), lift_subspace(&t.u3)]
}

/// Multiplicities of the nine injective indecomposables.
///
/// | type | A | A′ | A″ | B | B′ | B″ | C | D | S |
/// |------|---|----|----|---|----|----|---|---|---|
/// | U₁   | 1 |    |    | 1 | 1  |    | 1 | 1 |   |
/// | U₂   |   | 1  |    | 1 |    | 1  | 1 | 1 |   |
/// | U₃   |   |    | 1  |   | 1  | 1  | 1 | 1 |   |
/// | V    | 1 | 1  | 1  | 1 | 1  | 1  | 1 | 2 | 1 |
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct QuiverMultiplicities {
    pub a: usize,
    pub a1: usize,
    pub a2: usize,
    pub b: usize,
    pub b1: usize,
    pub b2: usize,
    pub c: usize,
    pub d: usize,
    pub s: usize,
}

/// One indecomposable type: its name, `dim V` part, and which `U_m` it meets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RepType {
    pub name: &'static str,
    pub v_dim: usize,
    pub meets: [bool; 3],
}

pub const REP_TYPES: [RepType; 9] = [
    RepType { name: "A", v_dim: 1, meets: [true, false, false] },
    RepType { name: "A'", v_dim: 1, meets: [false, true, false] },
    RepType { name: "A''", v_dim: 1, meets: [false, false, true] },
    RepType { name: "B", v_dim: 1, meets: [true, true, false] },
    RepType { name: "B'", v_dim: 1, meets: [true, false, true] },
    RepType { name: "B''", v_dim: 1, meets: [false, true, true] },
    RepType { name: "C", v_dim: 1, meets: [true, true, true] },
    RepType { name: "D", v_dim: 2, meets: [true, true, true] },
    RepType { name: "S", v_dim: 1, meets: [false, false, false] },
];

impl QuiverMultiplicities {
    /// In the order of [`REP_TYPES`].
    pub fn as_array(&self) -> [usize; 9] {
        [self.a, self.a1, self.a2, self.b, self.b1, self.b2, self.c, self.d, self.s]
    }

    pub fn from_array(m: [usize; 9]) -> Self {
        let [a, a1, a2, b, b1, b2, c, d, s] = m;
        QuiverMultiplicities { a, a1, a2, b, b1, b2, c, d, s }
    }

    pub fn ambient(&self) -> usize {
        REP_TYPES.iter().zip(self.as_array()).map(|(t, m)| t.v_dim * m).sum()
    }

    /// `dim U_m`, `m ∈ {0, 1, 2}`.
    pub fn dim_u(&self, m: usize) -> usize {
        REP_TYPES.iter().zip(self.as_array()).filter(|(t, _)| t.meets[m]).map(|(_, k)| k).sum()
    }

    /// `dim Σ_{m ∈ set} U_m`: each summand contributes `min(v_dim, #U_m met)`.
    pub fn dim_sum(&self, set: &[usize]) -> usize {
        REP_TYPES
            .iter()
            .zip(self.as_array())
            .map(|(t, k)| k * t.v_dim.min(set.iter().filter(|&&m| t.meets[m]).count()))
            .sum()
    }

    /// `dim ∩_{m ∈ set} U_m` for a set of size two or three.
    pub fn dim_intersection(&self, set: &[usize]) -> usize {
        REP_TYPES
            .iter()
            .zip(self.as_array())
            .filter(|(t, _)| t.v_dim == 1 && set.iter().all(|&m| t.meets[m]))
            .map(|(_, k)| k)
            .sum()
    }
}

/// Solves the triangular dimension system for the multiplicities.
pub fn decompose<F: Field>(t: &SubspaceTriple<F>) -> Result<QuiverMultiplicities> {
    let n = t.ambient() as i64;
    let [u1, u2, u3] = t.as_array();
    let dim = |s: &Subspace<F>| s.dim() as i64;
    let c = dim(&u1.intersect(u2).intersect(u3));
    let b = dim(&u1.intersect(u2)) - c;
    let b1 = dim(&u1.intersect(u3)) - c;
    let b2 = dim(&u2.intersect(u3)) - c;
    let d = dim(&u1.sum(u2).intersect(u3)) - b1 - b2 - c;
    let a = dim(u1) - b - b1 - c - d;
    let a1 = dim(u2) - b - b2 - c - d;
    let a2 = dim(u3) - b1 - b2 - c - d;
    let s = n - (a + a1 + a2 + b + b1 + b2 + c + 2 * d);
    let raw = [a, a1, a2, b, b1, b2, c, d, s];
    if raw.iter().any(|&x| x < 0) {
        return Err(Error::Internal(format!("negative multiplicity in {raw:?}")));
    }
    let m = QuiverMultiplicities::from_array(raw.map(|x| x as usize));
    // consistency with the remaining dimension data
    let checks = [
        (m.dim_u(0), u1.dim()),
        (m.dim_u(1), u2.dim()),
        (m.dim_u(2), u3.dim()),
        (m.dim_sum(&[0, 1]), u1.sum(u2).dim()),
        (m.dim_sum(&[0, 2]), u1.sum(u3).dim()),
        (m.dim_sum(&[1, 2]), u2.sum(u3).dim()),
        (m.dim_sum(&[0, 1, 2]), u1.sum(u2).sum(u3).dim()),
    ];
    if checks.iter().any(|(x, y)| x != y) {
        return Err(Error::Internal(format!("multiplicities {m:?} inconsistent with dimensions")));
    }
    Ok(m)
}

/// Source, one vertex per occurring type (capacities scaled by its
/// multiplicity), the three `U`-vertices and the sink.
pub fn build_network(m: &QuiverMultiplicities, i: usize, j: usize, k: usize) -> FlowNetwork {
    let mut net = FlowNetwork::default();
    net.source = net.add_vertex("source");
    let u: Vec<usize> = ["U1", "U2", "U3"].iter().map(|l| net.add_vertex(*l)).collect();
    net.sink = net.add_vertex("sink");
    for (t, mult) in REP_TYPES.iter().zip(m.as_array()) {
        if mult == 0 {
            continue;
        }
        let r = net.add_vertex(t.name);
        net.add_edge(net.source, r, (t.v_dim * mult) as i64);
        for (slot, &meets) in t.meets.iter().enumerate() {
            if meets {
                net.add_edge(r, u[slot], mult as i64);
            }
        }
    }
    for (slot, cap) in [i, j, k].into_iter().enumerate() {
        net.add_edge(u[slot], net.sink, cap as i64);
    }
    net
}

pub use crate::flow::max_flow;

/// The eight cut capacities, ordered to match [`CANDIDATES`].
pub fn cut_terms<F: Field>(t: &SubspaceTriple<F>, i: usize, j: usize, k: usize) -> [usize; 8] {
    let [u1, u2, u3] = t.as_array();
    [
        i + j + k,
        j + k + u1.dim(),
        i + k + u2.dim(),
        i + j + u3.dim(),
        k + u1.sum(u2).dim(),
        j + u1.sum(u3).dim(),
        i + u2.sum(u3).dim(),
        u1.sum(u2).sum(u3).dim(),
    ]
}

pub fn min_formula<F: Field>(t: &SubspaceTriple<F>, i: usize, j: usize, k: usize) -> usize {
    cut_terms(t, i, j, k).into_iter().min().unwrap()
}

/// Names of the candidate centers, in tie-breaking order.
pub const CANDIDATES: [&str; 8] = ["tE", "L", "M", "N", "L+M", "L+N", "M+N", "L+M+N"];

pub fn candidates<F: Field>(l: &Lattice<F>, m: &Lattice<F>, n: &Lattice<F>) -> [Lattice<F>; 8] {
    let lm = l.sum(m);
    [
        Lattice::standard(l.rank()).scale(1),
        l.clone(),
        m.clone(),
        n.clone(),
        lm.clone(),
        l.sum(n),
        m.sum(n),
        lm.sum(n),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CloseWitness<F: Field> {
    pub value: i64,
    pub witness: Lattice<F>,
    pub label: &'static str,
    /// Star costs of the eight candidates, in [`CANDIDATES`] order.
    pub costs: [i64; 8],
    pub multiplicities: QuiverMultiplicities,
}

/// The value of `f_{ijk}(L, M, N)` and a center among the eight candidates
/// attaining it. The candidate matching the first minimal cut term is tried
/// first, then the rest in fixed order.
pub fn close_witness<F: Field>(
    l: &Lattice<F>,
    m: &Lattice<F>,
    n: &Lattice<F>,
    i: usize,
    j: usize,
    k: usize,
) -> Result<CloseWitness<F>> {
    let triple = extract_triple(l, m, n)?;
    let rank = triple.ambient();
    let idx = IndexVector::new(vec![i, j, k], rank)?;
    let multiplicities = decompose(&triple)?;
    let terms = cut_terms(&triple, i, j, k);
    let value = *terms.iter().min().unwrap() as i64;
    let cands = candidates(l, m, n);
    let lattices = [l.clone(), m.clone(), n.clone()];
    let mut costs = [0i64; 8];
    for (c, p) in costs.iter_mut().zip(&cands) {
        *c = star_cost(&idx, &lattices, p)?;
    }
    let first_cut = terms.iter().position(|&x| x as i64 == value).unwrap();
    let pick = if costs[first_cut] == value {
        Some(first_cut)
    } else {
        costs.iter().position(|&c| c == value)
    };
    let pick = pick.ok_or_else(|| Error::Internal(format!("no candidate attains {value}: {costs:?}")))?;
    Ok(CloseWitness {
        value,
        witness: cands[pick].clone(),
        label: CANDIDATES[pick],
        costs,
        multiplicities,
    })
}
