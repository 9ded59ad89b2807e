//! Lattices diagonal in a common basis, and the star identity there.

use crate::detval::{star_cost, IndexVector};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hungarian::{kuhn_munkres, AssignmentResult};
use crate::lattice::Lattice;
use crate::linalg::{self, Columns};
use crate::metric::smith;

/// A basis `x_1, …, x_n` of `Kⁿ`; its apartment is the set of lattices
/// `⟨t^{−c_1} x_1, …, t^{−c_n} x_n⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Apartment<F: Field> {
    x: Columns<F>,
    det_val: i64,
}

/// The exponent vector `c` of `⟨t^{−c_m} x_m⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ApartmentPoint(pub Vec<i64>);

impl<F: Field> Apartment<F> {
    pub fn new(x: Columns<F>) -> Result<Self> {
        let n = x.len();
        if n == 0 || x.iter().any(|c| c.len() != n) {
            return Err(Error::Rank("apartment basis must be square and nonempty".into()));
        }
        let det_val = linalg::det(&x)
            .val()
            .ok_or_else(|| Error::Rank("apartment basis is singular".into()))?;
        Ok(Apartment { x, det_val })
    }

    pub fn standard(n: usize) -> Self {
        Self::new(linalg::identity(n)).expect("identity is nonsingular")
    }

    pub fn rank(&self) -> usize {
        self.x.len()
    }

    pub fn basis(&self) -> &Columns<F> {
        &self.x
    }

    /// `val det X`.
    pub fn det_valuation(&self) -> i64 {
        self.det_val
    }

    pub fn lattice(&self, p: &ApartmentPoint) -> Result<Lattice<F>> {
        if p.0.len() != self.rank() {
            return Err(Error::Rank(format!("point of length {} in rank {}", p.0.len(), self.rank())));
        }
        let cols = self
            .x
            .iter()
            .zip(&p.0)
            .map(|(col, &c)| col.iter().map(|v| v.shift(-c)).collect())
            .collect();
        Lattice::from_columns(cols)
    }
}

/// One row per unit of index: point `j` repeated `i_j` times.
fn replicated(points: &[ApartmentPoint], idx: &IndexVector, n: usize) -> Result<Vec<Vec<i64>>> {
    if points.len() != idx.len() {
        return Err(Error::Index(format!("{} indices for {} points", idx.len(), points.len())));
    }
    if idx.rank() != n {
        return Err(Error::Index(format!("indices {:?} do not sum to rank {n}", idx.as_slice())));
    }
    if points.iter().any(|p| p.0.len() != n) {
        return Err(Error::Rank("point length differs from rank".into()));
    }
    Ok(points
        .iter()
        .zip(idx.as_slice())
        .flat_map(|(p, &i)| std::iter::repeat_n(p.0.clone(), i))
        .collect())
}

/// `f^t_{i_1…i_k}` of points of one apartment: a maximal transversal of the
/// replicated exponent matrix, minus `val det X`.
pub fn apartment_multi_f<F: Field>(a: &Apartment<F>, points: &[ApartmentPoint], idx: &IndexVector) -> Result<i64> {
    let c = replicated(points, idx, a.rank())?;
    Ok(kuhn_munkres(&c)?.value - a.det_valuation())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApartmentWitness<F: Field> {
    pub witness: Lattice<F>,
    /// The point `b` of the witness, `P = ⟨t^{−b_m} x_m⟩`.
    pub point: ApartmentPoint,
    pub value: i64,
    pub assignment: AssignmentResult,
}

/// `P = ⟨t^{−b_1} x_1, …, t^{−b_n} x_n⟩` from the column potentials.
pub fn apartment_witness<F: Field>(
    a: &Apartment<F>,
    points: &[ApartmentPoint],
    idx: &IndexVector,
) -> Result<ApartmentWitness<F>> {
    let c = replicated(points, idx, a.rank())?;
    let assignment = kuhn_munkres(&c)?;
    let point = ApartmentPoint(assignment.b.clone());
    let witness = a.lattice(&point)?;
    Ok(ApartmentWitness { witness, point, value: assignment.value - a.det_valuation(), assignment })
}

/// Realizes the points and checks the star cost at the witness against the
/// value.
pub fn apartment_star_check<F: Field>(
    a: &Apartment<F>,
    points: &[ApartmentPoint],
    idx: &IndexVector,
) -> Result<(i64, i64)> {
    let w = apartment_witness(a, points, idx)?;
    let lattices: Vec<Lattice<F>> = points.iter().map(|p| a.lattice(p)).collect::<Result<_>>()?;
    Ok((w.value, star_cost(idx, &lattices, &w.witness)?))
}

/// A basis in which both lattices are diagonal: `L = ⟨x_m⟩` and
/// `M = ⟨t^{e_m} x_m⟩`.
pub fn simultaneous_frame<F: Field>(l: &Lattice<F>, m: &Lattice<F>) -> Result<(Apartment<F>, ApartmentPoint, ApartmentPoint)> {
    if l.rank() != m.rank() {
        return Err(Error::Index("rank mismatch".into()));
    }
    let rel = l.relative_coordinates(m)?;
    let form = smith(&rel, Some(l.basis()))?;
    let x = form.frame.expect("frame was requested");
    let apt = Apartment::new(x)?;
    let pm = ApartmentPoint(form.exponents.iter().map(|e| -e).collect());
    Ok((apt, ApartmentPoint(vec![0; l.rank()]), pm))
}

/// The exponents of `l` in the apartment, if `l` is one of its points.
pub fn locate<F: Field>(a: &Apartment<F>, l: &Lattice<F>) -> Result<Option<ApartmentPoint>> {
    if l.rank() != a.rank() {
        return Err(Error::Index("rank mismatch".into()));
    }
    // coordinates of l's basis in X; a point of the apartment has
    // c_m = −min_j val(coefficient of x_m in the j-th generator)
    let coords = linalg::solve(a.basis(), &l.basis())?;
    let n = a.rank();
    let mut c = Vec::with_capacity(n);
    for m in 0..n {
        let least = coords.iter().filter_map(|col| col[m].val()).min();
        let Some(least) = least else {
            return Ok(None);
        };
        c.push(-least);
    }
    let p = ApartmentPoint(c);
    Ok((a.lattice(&p)? == *l).then_some(p))
}

/// Best effort: tries the frames of every pair and keeps the first one
/// containing all lattices.
pub fn find_common_apartment<F: Field>(lattices: &[Lattice<F>]) -> Result<Option<(Apartment<F>, Vec<ApartmentPoint>)>> {
    let Some(first) = lattices.first() else {
        return Ok(None);
    };
    let n = first.rank();
    if lattices.len() == 1 {
        return Ok(Some((Apartment::new(first.basis())?, vec![ApartmentPoint(vec![0; n])])));
    }
    for i in 0..lattices.len() {
        for j in i + 1..lattices.len() {
            let (apt, _, _) = simultaneous_frame(&lattices[i], &lattices[j])?;
            let mut points = Vec::with_capacity(lattices.len());
            for l in lattices {
                match locate(&apt, l)? {
                    Some(p) => points.push(p),
                    None => break,
                }
            }
            if points.len() == lattices.len() {
                return Ok(Some((apt, points)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detval::multi_f;
    use crate::field::Rational;
    use crate::metric::binary_f;
    use crate::scalar::ValuedScalar;

    type Q = Rational;

    fn idx(v: &[usize]) -> IndexVector {
        IndexVector::new(v.to_vec(), v.iter().sum()).unwrap()
    }

    #[test]
    fn multi_f_examples() {
        let a = Apartment::<Q>::standard(2);
        let pts = [ApartmentPoint(vec![0, 0]), ApartmentPoint(vec![2, 0])];
        assert_eq!(apartment_multi_f(&a, &pts, &idx(&[1, 1])).unwrap(), 2);
        let ls: Vec<_> = pts.iter().map(|p| a.lattice(p).unwrap()).collect();
        assert_eq!(multi_f(&idx(&[1, 1]), &ls).unwrap(), 2);
        let zero = [ApartmentPoint(vec![0, 0]), ApartmentPoint(vec![0, 0])];
        assert_eq!(apartment_multi_f(&a, &zero, &idx(&[1, 1])).unwrap(), 0);
        let one = [ApartmentPoint(vec![3, -1])];
        assert_eq!(apartment_multi_f(&a, &one, &idx(&[2])).unwrap(), a.lattice(&one[0]).unwrap().unary_f());
    }

    #[test]
    fn witness_examples() {
        let a = Apartment::<Q>::standard(2);
        let pts = [ApartmentPoint(vec![0, 0]), ApartmentPoint(vec![2, 0])];
        let w = apartment_witness(&a, &pts, &idx(&[1, 1])).unwrap();
        assert_eq!(w.value, 2);
        let e = Lattice::<Q>::standard(2);
        let l2 = Lattice::<Q>::diagonal(&[-2, 0]);
        let star = binary_f(1, 1, &e, &w.witness).unwrap() + binary_f(1, 1, &l2, &w.witness).unwrap()
            - w.witness.unary_f();
        assert_eq!(star, 2);
        assert_eq!(apartment_star_check(&a, &pts, &idx(&[1, 1])).unwrap(), (2, 2));

        let same = [ApartmentPoint(vec![1, 0]), ApartmentPoint(vec![1, 0])];
        let w = apartment_witness(&a, &same, &idx(&[1, 1])).unwrap();
        assert_eq!(w.value, a.lattice(&same[0]).unwrap().unary_f());

        let a3 = Apartment::<Q>::standard(3);
        let axes = [ApartmentPoint(vec![1, 0, 0]), ApartmentPoint(vec![0, 1, 0]), ApartmentPoint(vec![0, 0, 1])];
        assert_eq!(apartment_star_check(&a3, &axes, &idx(&[1, 1, 1])).unwrap(), (3, 3));
    }

    #[test]
    fn frames_and_common_apartments() {
        let e = Lattice::<Q>::standard(2);
        let m = Lattice::<Q>::from_columns(vec![
            vec![ValuedScalar::t_pow(-1), ValuedScalar::t_pow(-1)],
            vec![ValuedScalar::zero(), ValuedScalar::t_pow(2)],
        ])
        .unwrap();
        let (apt, pl, pm) = simultaneous_frame(&e, &m).unwrap();
        assert_eq!(apt.lattice(&pl).unwrap(), e);
        assert_eq!(apt.lattice(&pm).unwrap(), m);
        let found = find_common_apartment(&[e.clone(), m.clone(), e.scale(3)]).unwrap().unwrap();
        for (p, l) in found.1.iter().zip([&e, &m, &e.scale(3)]) {
            assert_eq!(found.0.lattice(p).unwrap(), *l);
        }
    }
}
