//! Witness search for the star identity
//! `f_{i_1…i_k}(L_1, …, L_k) = min_P Σ_j f_{i_j, n−i_j}(L_j, P) − (k−1) f_n(P)`,
//! the two-internal-node networks for four leaves, scaling experiments and
//! positivity of configurations.

use std::collections::HashSet;

use crate::apartment::{apartment_witness, find_common_apartment, locate, simultaneous_frame, Apartment};
use crate::closecase::{candidates, close_witness};
use crate::detval::{multi_f, star_cost, IndexVector};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::lattice::Lattice;
use crate::linalg::{self, Columns};
use crate::metric::{binary_f, DominantCoweight};
use crate::random;
use crate::scalar::ValuedScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// The eight candidates for triples within one step of a common lattice.
    Close,
    /// The potential lattice of a common apartment.
    Apartment,
    /// Every lattice between the intersection and the sum (finite fields).
    Enumerate,
    /// Diagonal lattices in random apartments.
    Random,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Strategy::Close, Strategy::Apartment, Strategy::Enumerate, Strategy::Random];

    pub fn label(self) -> &'static str {
        match self {
            Strategy::Close => "close",
            Strategy::Apartment => "apartment",
            Strategy::Enumerate => "enumerate",
            Strategy::Random => "random",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|x| x.label() == s)
            .ok_or_else(|| Error::Parse(format!("unknown strategy {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct HarnessOptions<F: Field> {
    /// Maximum number of candidates examined.
    pub budget: usize,
    pub seed: u64,
    /// Worker threads for candidate evaluation; results do not depend on it.
    pub threads: usize,
    /// Extra bases tried as common apartments before the pairwise search.
    pub frames: Vec<Columns<F>>,
}

impl<F: Field> Default for HarnessOptions<F> {
    fn default() -> Self {
        HarnessOptions { budget: 100_000, seed: 0, threads: 1, frames: Vec::new() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Verified,
    Inconclusive,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate<F: Field> {
    pub lattice: Lattice<F>,
    pub cost: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport<F: Field> {
    pub lhs: i64,
    /// Cheapest candidate examined.
    pub best: Option<Candidate<F>>,
    pub status: Status,
    pub candidates_examined: usize,
    pub strategy: Strategy,
    /// Every examined candidate, in examination order.
    pub candidates: Vec<Candidate<F>>,
    pub seed: u64,
    /// Why the strategy produced no candidates, if it abstained.
    pub note: Option<String>,
}

impl<F: Field> ConjectureReport<F> {
    pub fn witness(&self) -> Option<&Lattice<F>> {
        match self.status {
            Status::Verified => self.best.as_ref().map(|c| &c.lattice),
            Status::Inconclusive => None,
        }
    }
}

struct Search<'a, F: Field> {
    idx: &'a IndexVector,
    lattices: &'a [Lattice<F>],
    lhs: i64,
    budget: usize,
    threads: usize,
    examined: Vec<Candidate<F>>,
    hit: bool,
}

impl<F: Field> Search<'_, F> {
    fn exhausted(&self) -> bool {
        self.hit || self.examined.len() >= self.budget
    }

    /// Evaluates `batch` in order, stopping at the first candidate attaining
    /// the lower bound or when the budget runs out.
    fn offer(&mut self, mut batch: Vec<Lattice<F>>) -> Result<()> {
        if self.exhausted() {
            return Ok(());
        }
        batch.truncate(self.budget - self.examined.len());
        let costs = evaluate(self.idx, self.lattices, &batch, self.threads);
        for (lattice, cost) in batch.into_iter().zip(costs) {
            let cost = cost?;
            if cost < self.lhs {
                return Err(Error::Internal(format!("star cost {cost} below determinantal value {}", self.lhs)));
            }
            self.examined.push(Candidate { lattice, cost });
            if cost == self.lhs {
                self.hit = true;
                break;
            }
        }
        Ok(())
    }
}

fn evaluate<F: Field>(idx: &IndexVector, lattices: &[Lattice<F>], batch: &[Lattice<F>], threads: usize) -> Vec<Result<i64>> {
    if threads <= 1 || batch.len() < 2 {
        return batch.iter().map(|p| star_cost(idx, lattices, p)).collect();
    }
    let chunk = batch.len().div_ceil(threads);
    std::thread::scope(|s| {
        let handles: Vec<_> = batch
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|p| star_cost(idx, lattices, p)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// Star cost with every binary term recomputed by basis-subset search.
fn independent_star_cost<F: Field>(idx: &IndexVector, lattices: &[Lattice<F>], p: &Lattice<F>) -> Result<i64> {
    let n = p.rank();
    let mut total = 0;
    for (&i, l) in idx.as_slice().iter().zip(lattices) {
        total += multi_f(&IndexVector::new(vec![i, n - i], n)?, &[l.clone(), p.clone()])?;
    }
    Ok(total - (lattices.len() as i64 - 1) * p.unary_f())
}

/// Searches for a lattice `P` attaining the star identity.
pub fn verify_star<F: Field>(
    idx: &IndexVector,
    lattices: &[Lattice<F>],
    strategy: Strategy,
    opts: &HarnessOptions<F>,
) -> Result<ConjectureReport<F>> {
    let lhs = multi_f(idx, lattices)?;
    let mut search = Search {
        idx,
        lattices,
        lhs,
        budget: opts.budget,
        threads: opts.threads.max(1),
        examined: Vec::new(),
        hit: false,
    };
    let note = match strategy {
        Strategy::Close => close_candidates(&mut search)?,
        Strategy::Apartment => apartment_candidates(&mut search, opts)?,
        Strategy::Enumerate => enumerate_candidates(&mut search)?,
        Strategy::Random => random_candidates(&mut search, opts.seed)?,
    };
    let best = search.examined.iter().min_by_key(|c| c.cost).cloned();
    let status = if search.hit { Status::Verified } else { Status::Inconclusive };
    if let (Status::Verified, Some(b)) = (status, &best) {
        let again = independent_star_cost(idx, lattices, &b.lattice)?;
        if again != lhs || b.cost != lhs {
            return Err(Error::Internal(format!("witness re-check gave {again}, expected {lhs}")));
        }
    }
    Ok(ConjectureReport {
        lhs,
        best,
        status,
        candidates_examined: search.examined.len(),
        strategy,
        candidates: search.examined,
        seed: opts.seed,
        note,
    })
}

fn close_candidates<F: Field>(search: &mut Search<'_, F>) -> Result<Option<String>> {
    let ls = search.lattices;
    if ls.len() != 3 {
        return Ok(Some("close strategy needs three lattices".into()));
    }
    let s = Lattice::intersect_all(ls).unwrap();
    let t = Lattice::sum_all(ls).unwrap();
    if !t.is_sublattice_of(&s.scale(-1)) {
        return Ok(Some("no common lattice S with S ⊆ L, M, N ⊆ t⁻¹S".into()));
    }
    // g maps E onto S
    let g = s.basis();
    let ginv = linalg::inverse(&g)?;
    let moved: Vec<Lattice<F>> = ls.iter().map(|l| l.translate(&ginv)).collect::<Result<_>>()?;
    let idx = search.idx.as_slice();
    let w = close_witness(&moved[0], &moved[1], &moved[2], idx[0], idx[1], idx[2])?;
    let all = candidates(&moved[0], &moved[1], &moved[2]);
    let first = all.iter().position(|c| *c == w.witness).unwrap();
    let mut order = vec![first];
    order.extend((0..all.len()).filter(|&c| c != first));
    let batch: Vec<Lattice<F>> = order.into_iter().map(|c| all[c].translate(&g)).collect::<Result<_>>()?;
    search.offer(batch)?;
    Ok(None)
}

fn apartment_candidates<F: Field>(search: &mut Search<'_, F>, opts: &HarnessOptions<F>) -> Result<Option<String>> {
    let ls = search.lattices;
    let mut found = None;
    for frame in &opts.frames {
        let Ok(apt) = Apartment::new(frame.clone()) else {
            continue;
        };
        let points: Option<Vec<_>> = ls.iter().map(|l| locate(&apt, l)).collect::<Result<_>>()?;
        if let Some(points) = points {
            found = Some((apt, points));
            break;
        }
    }
    if found.is_none() {
        found = find_common_apartment(ls)?;
    }
    let Some((apt, points)) = found else {
        return Ok(Some("no common apartment found".into()));
    };
    let w = apartment_witness(&apt, &points, search.idx)?;
    search.offer(vec![w.witness])?;
    Ok(None)
}

/// Lines of `Fⁿ`, normalized so the first nonzero coordinate is one.
fn projective_points<F: Field>(n: usize) -> Vec<Vec<F>> {
    let els = F::elements().expect("finite field");
    let nonzero: Vec<F> = els.iter().filter(|x| !x.is_zero()).cloned().collect();
    let mut out = Vec::new();
    for lead in 0..n {
        let mut tails: Vec<Vec<F>> = vec![Vec::new()];
        for _ in lead + 1..n {
            tails = tails
                .into_iter()
                .flat_map(|t| {
                    els.iter().map(move |x| {
                        let mut t = t.clone();
                        t.push(x.clone());
                        t
                    })
                })
                .collect();
        }
        for tail in tails {
            let mut v = vec![F::zero(); lead];
            v.push(F::one());
            v.extend(tail);
            out.push(v);
        }
    }
    debug_assert!(out.len() * nonzero.len() == els.len().pow(n as u32) - 1);
    out
}

/// Breadth-first over the interval `[∩L_j, ΣL_j]`, one simple extension
/// `Q + O·t⁻¹q` at a time.
fn enumerate_candidates<F: Field>(search: &mut Search<'_, F>) -> Result<Option<String>> {
    if F::elements().is_none() {
        return Ok(Some("enumeration needs a finite base field".into()));
    }
    let ls = search.lattices;
    let n = ls[0].rank();
    let bottom = Lattice::intersect_all(ls).unwrap();
    let top = Lattice::sum_all(ls).unwrap();
    let lines = projective_points::<F>(n);
    let mut seen: HashSet<Lattice<F>> = HashSet::from([bottom.clone()]);
    let mut level = vec![bottom];
    while !level.is_empty() && !search.exhausted() {
        search.offer(level.clone())?;
        let mut next = Vec::new();
        for q in &level {
            let basis = q.basis();
            for w in &lines {
                let v: Vec<ValuedScalar<F>> = (0..n)
                    .map(|i| {
                        basis
                            .iter()
                            .zip(w)
                            .filter(|(_, c)| !c.is_zero())
                            .fold(ValuedScalar::zero(), |acc, (col, c)| &acc + &col[i].scale(c))
                            .shift(-1)
                    })
                    .collect();
                if !top.contains(&v) {
                    continue;
                }
                let mut gens = basis.clone();
                gens.push(v);
                let up = Lattice::from_generators(n, gens)?;
                if seen.insert(up.clone()) {
                    next.push(up);
                }
            }
        }
        level = next;
    }
    Ok(None)
}

fn random_candidates<F: Field>(search: &mut Search<'_, F>, seed: u64) -> Result<Option<String>> {
    use rand::Rng;
    let ls = search.lattices;
    let n = ls[0].rank();
    let mut rng = random::rng(seed);
    let window = ls
        .iter()
        .flat_map(|l| l.pivot_exponents())
        .map(i64::abs)
        .max()
        .unwrap_or(0)
        + 1;
    while !search.exhausted() {
        let mut batch = Vec::with_capacity(64);
        for _ in 0..64 {
            let apt = if ls.len() >= 2 && rng.gen_bool(0.5) {
                let a = rng.gen_range(0..ls.len());
                let mut b = rng.gen_range(0..ls.len() - 1);
                if b >= a {
                    b += 1;
                }
                simultaneous_frame(&ls[a], &ls[b])?.0
            } else {
                random::apartment(&mut rng, n)
            };
            let point = random::apartment_point(&mut rng, n, -window, window);
            batch.push(apt.lattice(&point)?);
        }
        search.offer(batch)?;
    }
    Ok(None)
}

/// Tree shapes with the leaves attached to one or two internal nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NetworkShape {
    Star(usize),
    /// Leaves `p` hang off `P`, leaves `q` off `Q`; the `P–Q` edge carries
    /// `Σ_{a∈p} i_a` from the `P` side.
    TwoNode { p: Vec<usize>, q: Vec<usize> },
}

impl NetworkShape {
    /// `(12)(34)`.
    pub fn pairs_12_34() -> Self {
        NetworkShape::TwoNode { p: vec![0, 1], q: vec![2, 3] }
    }

    /// `(41)(23)`.
    pub fn pairs_41_23() -> Self {
        NetworkShape::TwoNode { p: vec![3, 0], q: vec![1, 2] }
    }

    pub fn validate(&self, leaves: usize) -> Result<()> {
        match self {
            NetworkShape::Star(k) if *k == leaves => Ok(()),
            NetworkShape::Star(k) => Err(Error::Index(format!("star with {k} leaves for {leaves} lattices"))),
            NetworkShape::TwoNode { p, q } => {
                let mut all: Vec<usize> = p.iter().chain(q).copied().collect();
                all.sort_unstable();
                if p.is_empty() || q.is_empty() || all != (0..leaves).collect::<Vec<_>>() {
                    return Err(Error::Index(format!("{p:?} and {q:?} do not partition the leaves")));
                }
                Ok(())
            }
        }
    }
}

/// Leaf terms at each internal node, the `P–Q` edge term, and unary
/// corrections `|p|·f_n(P) + |q|·f_n(Q)`.
pub fn two_node_cost<F: Field>(
    idx: &IndexVector,
    lattices: &[Lattice<F>],
    shape: &NetworkShape,
    p: &Lattice<F>,
    q: &Lattice<F>,
) -> Result<i64> {
    shape.validate(lattices.len())?;
    if idx.len() != lattices.len() {
        return Err(Error::Index("one index per lattice expected".into()));
    }
    let n = p.rank();
    if idx.rank() != n {
        return Err(Error::Index(format!("indices {:?} do not sum to rank {n}", idx.as_slice())));
    }
    let i = idx.as_slice();
    match shape {
        NetworkShape::Star(_) => star_cost(idx, lattices, p),
        NetworkShape::TwoNode { p: pl, q: ql } => {
            let mut total = 0;
            for &a in pl {
                total += binary_f(i[a], n - i[a], &lattices[a], p)?;
            }
            for &a in ql {
                total += binary_f(i[a], n - i[a], &lattices[a], q)?;
            }
            let e: usize = pl.iter().map(|&a| i[a]).sum();
            total += binary_f(e, n - e, p, q)?;
            Ok(total - pl.len() as i64 * p.unary_f() - ql.len() as i64 * q.unary_f())
        }
    }
}

/// The two rank-four networks with leaf weights `ω2, ω1, ω2, ω3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sl4Shape {
    /// `L1, L2` at `P`; `L3, L4` at `Q`.
    First,
    /// `L4, L1` at `P`; `L2, L3` at `Q`.
    Second,
}

fn sl4_inputs<F: Field>(lattices: &[Lattice<F>], p: &Lattice<F>, q: &Lattice<F>) -> Result<()> {
    if lattices.len() != 4 {
        return Err(Error::Index("four lattices expected".into()));
    }
    if p.rank() != 4 || q.rank() != 4 || lattices.iter().any(|l| l.rank() != 4) {
        return Err(Error::Index("rank four expected".into()));
    }
    Ok(())
}

pub fn sl4_network_cost<F: Field>(lattices: &[Lattice<F>], shape: Sl4Shape, p: &Lattice<F>, q: &Lattice<F>) -> Result<i64> {
    sl4_inputs(lattices, p, q)?;
    let [l1, l2, l3, l4] = [&lattices[0], &lattices[1], &lattices[2], &lattices[3]];
    Ok(match shape {
        Sl4Shape::First => {
            binary_f(2, 2, l1, p)? + binary_f(1, 3, l2, p)? + binary_f(3, 1, p, q)? + binary_f(2, 2, l3, q)?
                + binary_f(3, 1, l4, q)?
                - 2 * p.unary_f()
                - q.unary_f()
        }
        Sl4Shape::Second => {
            binary_f(3, 1, l4, p)? + binary_f(2, 2, l1, p)? + binary_f(1, 3, p, q)? + binary_f(1, 3, l2, q)?
                + binary_f(2, 2, l3, q)?
                - p.unary_f()
                - 2 * q.unary_f()
        }
    })
}

/// Lower bound for [`sl4_network_cost`]: at the node whose incident weights
/// sum to four the star terms are replaced by the determinantal valuation of
/// its neighbours; the other node's terms are kept.
pub fn sl4_node_bound<F: Field>(lattices: &[Lattice<F>], shape: Sl4Shape, p: &Lattice<F>, q: &Lattice<F>) -> Result<i64> {
    sl4_inputs(lattices, p, q)?;
    let [l1, l2, l3, l4] = [&lattices[0], &lattices[1], &lattices[2], &lattices[3]];
    Ok(match shape {
        Sl4Shape::First => {
            multi_f(&IndexVector::new(vec![2, 1, 1], 4)?, &[l1.clone(), l2.clone(), q.clone()])?
                + binary_f(2, 2, l3, q)?
                + binary_f(3, 1, l4, q)?
                - q.unary_f()
        }
        Sl4Shape::Second => {
            multi_f(&IndexVector::new(vec![1, 2, 1], 4)?, &[l2.clone(), l3.clone(), p.clone()])?
                + binary_f(3, 1, l4, p)?
                + binary_f(2, 2, l1, p)?
                - p.unary_f()
        }
    })
}

/// The lattices generated by `t^{−λ_{im}} v_{im}`.
pub fn scale_config<F: Field>(bases: &[Columns<F>], lambdas: &[DominantCoweight]) -> Result<Vec<Lattice<F>>> {
    if bases.len() != lambdas.len() {
        return Err(Error::Index(format!("{} bases for {} coweights", bases.len(), lambdas.len())));
    }
    scaled_bases(bases, lambdas)?.into_iter().map(Lattice::from_columns).collect()
}

fn scaled_bases<F: Field>(bases: &[Columns<F>], lambdas: &[DominantCoweight]) -> Result<Vec<Columns<F>>> {
    bases
        .iter()
        .zip(lambdas)
        .map(|(b, lam)| {
            if lam.len() != b.len() {
                return Err(Error::Index("coweight length differs from rank".into()));
            }
            Ok(b.iter().zip(lam.as_slice()).map(|(v, &l)| v.iter().map(|x| x.shift(-l)).collect()).collect())
        })
        .collect()
}

/// The first step of `schedule` at which the scaled configuration passes
/// [`verify_star`] for every index vector, trying the apartment strategy
/// (with the scaled bases as frames) and then enumeration.
pub fn asymptotic_verified_at<F: Field>(
    bases: &[Columns<F>],
    schedule: &[Vec<DominantCoweight>],
    opts: &HarnessOptions<F>,
) -> Result<Option<usize>> {
    let Some(first) = bases.first() else {
        return Ok(Some(0));
    };
    let n = first.len();
    'steps: for (step, lambdas) in schedule.iter().enumerate() {
        let lattices = scale_config(bases, lambdas)?;
        let frames = scaled_bases(bases, lambdas)?;
        let local = HarnessOptions { frames, ..opts.clone() };
        for idx in IndexVector::all(bases.len(), n) {
            let mut ok = verify_star(&idx, &lattices, Strategy::Apartment, &local)?.status == Status::Verified;
            if !ok && F::elements().is_some() {
                ok = verify_star(&idx, &lattices, Strategy::Enumerate, &local)?.status == Status::Verified;
            }
            if !ok {
                continue 'steps;
            }
        }
        return Ok(Some(step));
    }
    Ok(None)
}

pub fn asymptotic_check<F: Field>(
    bases: &[Columns<F>],
    schedule: &[Vec<DominantCoweight>],
    opts: &HarnessOptions<F>,
) -> Result<bool> {
    Ok(asymptotic_verified_at(bases, schedule, opts)?.is_some())
}

/// For each `p < q < r` and `i + j + k = n`: the determinant of the first
/// `i`, `j`, `k` basis vectors of `x_p, x_q, x_r` attains `f_{ijk}` and has
/// positive leading coefficient.
pub fn positivity_check<F: Field>(bases: &[Columns<F>]) -> Result<bool> {
    if F::one().is_positive().is_none() {
        return Err(Error::Unsupported(format!("positivity needs an ordered field, not {}", F::label())));
    }
    let Some(first) = bases.first() else {
        return Ok(true);
    };
    let n = first.len();
    let lattices: Vec<Lattice<F>> = bases.iter().map(|b| Lattice::from_columns(b.clone())).collect::<Result<_>>()?;
    let m = bases.len();
    for p in 0..m {
        for q in p + 1..m {
            for r in q + 1..m {
                for idx in IndexVector::all(3, n) {
                    let [i, j, k] = [idx.as_slice()[0], idx.as_slice()[1], idx.as_slice()[2]];
                    let cols: Columns<F> = bases[p][..i]
                        .iter()
                        .chain(&bases[q][..j])
                        .chain(&bases[r][..k])
                        .cloned()
                        .collect();
                    let d = linalg::det(&cols);
                    let Some(v) = d.val() else {
                        return Ok(false);
                    };
                    let target = multi_f(&idx, &[lattices[p].clone(), lattices[q].clone(), lattices[r].clone()])?;
                    if -v != target || d.leading_coefficient()?.is_positive() != Some(true) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}
