//! Systems of distinct and of linearly independent representatives.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::subspace::{rank, Subspace};

/// Largest `r` for which subset minimizations are run.
pub const MAX_SUBSETS: usize = 20;

/// Maximum number of distinct representatives, by bipartite matching.
pub fn konig_set_max<T: Eq + Hash + Clone>(sets: &[Vec<T>]) -> usize {
    let mut ids: HashMap<T, usize> = HashMap::new();
    let adj: Vec<Vec<usize>> = sets
        .iter()
        .map(|s| {
            s.iter()
                .map(|x| {
                    let next = ids.len();
                    *ids.entry(x.clone()).or_insert(next)
                })
                .collect()
        })
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; ids.len()];
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &x in &adj[u] {
            if !seen[x] {
                seen[x] = true;
                if owner[x].is_none_or(|w| augment(w, adj, seen, owner)) {
                    owner[x] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let mut size = 0;
    for u in 0..sets.len() {
        let mut seen = vec![false; ids.len()];
        if augment(u, &adj, &mut seen, &mut owner) {
            size += 1;
        }
    }
    debug_assert!(sets.len() > 12 || size == konig_set_formula(sets));
    size
}

/// `min_I |∪_{i∈I} S_i| + r − |I|` by scanning all subsets.
pub fn konig_set_formula<T: Eq + Hash + Clone>(sets: &[Vec<T>]) -> usize {
    let r = sets.len();
    assert!(r <= MAX_SUBSETS, "too many sets for subset scan");
    (0u32..1 << r)
        .map(|mask| {
            let union: std::collections::HashSet<&T> =
                (0..r).filter(|i| mask >> i & 1 == 1).flat_map(|i| &sets[i]).collect();
            union.len() + r - mask.count_ones() as usize
        })
        .min()
        .unwrap()
}

fn check_ambient<F: Field>(subspaces: &[Subspace<F>]) -> Result<usize> {
    let n = subspaces.first().map_or(0, Subspace::ambient);
    if subspaces.iter().any(|s| s.ambient() != n) {
        return Err(Error::Index("subspaces in different ambient spaces".into()));
    }
    if subspaces.len() > MAX_SUBSETS {
        return Err(Error::Unsupported(format!(
            "{} subspaces exceeds the subset-scan limit {MAX_SUBSETS}",
            subspaces.len()
        )));
    }
    Ok(n)
}

/// `(value, minimizing I)`, ties to smallest `|I|` then lexicographic.
fn konig_minimizer<F: Field>(subspaces: &[Subspace<F>]) -> Result<(usize, Vec<usize>)> {
    let n = check_ambient(subspaces)?;
    let r = subspaces.len();
    let mut best: Option<(usize, Vec<usize>)> = None;
    for mask in 0u32..1 << r {
        let set: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
        let dim = Subspace::sum_all(n, set.iter().map(|&i| &subspaces[i])).dim();
        let value = dim + r - set.len();
        let better = best.as_ref().is_none_or(|(bv, bs)| {
            (value, set.len(), &set) < (*bv, bs.len(), bs)
        });
        if better {
            best = Some((value, set));
        }
    }
    Ok(best.unwrap())
}

/// `min_I dim(Σ_{i∈I} V_i) + r − |I|`.
pub fn konig_linear_value<F: Field>(subspaces: &[Subspace<F>]) -> Result<usize> {
    konig_minimizer(subspaces).map(|(v, _)| v)
}

/// A maximum family of linearly independent vectors taking at most one
/// generator from each group; returns `(group, generator)` pairs.
///
/// Matroid intersection of the linear matroid on all generators with the
/// partition matroid of the groups, by shortest augmenting paths.
pub(crate) fn independent_transversal<F: Field>(groups: &[Vec<Vec<F>>], n: usize) -> Vec<(usize, usize)> {
    let ground: Vec<(usize, usize)> = groups
        .iter()
        .enumerate()
        .flat_map(|(g, gens)| (0..gens.len()).map(move |k| (g, k)))
        .collect();
    let vec_of = |e: usize| groups[ground[e].0][ground[e].1].clone();
    let independent = |set: &[usize]| {
        let vs: Vec<Vec<F>> = set.iter().map(|&e| vec_of(e)).collect();
        rank(&vs, n) == vs.len()
    };
    let mut chosen: Vec<usize> = Vec::new();
    loop {
        let outside: Vec<usize> = (0..ground.len()).filter(|e| !chosen.contains(e)).collect();
        let used_group = |set: &[usize], g: usize| set.iter().any(|&e| ground[e].0 == g);
        // exchange graph over ground elements
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); ground.len()];
        for (pos, &y) in chosen.iter().enumerate() {
            let mut without: Vec<usize> = chosen.clone();
            without.remove(pos);
            for &x in &outside {
                let mut swapped = without.clone();
                swapped.push(x);
                if independent(&swapped) {
                    adj[y].push(x);
                }
                if !used_group(&without, ground[x].0) {
                    adj[x].push(y);
                }
            }
        }
        let sources: Vec<usize> = outside
            .iter()
            .copied()
            .filter(|&x| {
                let mut s = chosen.clone();
                s.push(x);
                independent(&s)
            })
            .collect();
        let is_sink = |x: usize| !chosen.contains(&x) && !used_group(&chosen, ground[x].0);
        let mut prev: Vec<Option<usize>> = vec![None; ground.len()];
        let mut seen = vec![false; ground.len()];
        let mut queue = VecDeque::new();
        for &s in &sources {
            seen[s] = true;
            queue.push_back(s);
        }
        let mut end = None;
        while let Some(v) = queue.pop_front() {
            if is_sink(v) {
                end = Some(v);
                break;
            }
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        let Some(mut v) = end else {
            break;
        };
        // symmetric difference along the path
        loop {
            if let Some(p) = chosen.iter().position(|&e| e == v) {
                chosen.remove(p);
            } else {
                chosen.push(v);
            }
            match prev[v] {
                Some(p) => v = p,
                None => break,
            }
        }
    }
    let mut out: Vec<(usize, usize)> = chosen.into_iter().map(|e| ground[e]).collect();
    out.sort_unstable();
    out
}

/// One linearly independent representative from each subspace, if such a
/// system exists.
pub fn moshonkin_system<F: Field>(subspaces: &[Subspace<F>]) -> Result<Option<Vec<Vec<F>>>> {
    let n = check_ambient(subspaces)?;
    let groups: Vec<Vec<Vec<F>>> = subspaces.iter().map(|s| s.basis().to_vec()).collect();
    let picked = independent_transversal(&groups, n);
    if picked.len() < subspaces.len() {
        return Ok(None);
    }
    Ok(Some(picked.into_iter().map(|(g, k)| groups[g][k].clone()).collect()))
}

/// `dim Σ_{i∈I} V_i ≥ |I|` for every `I`.
pub fn moshonkin_check<F: Field>(subspaces: &[Subspace<F>]) -> Result<bool> {
    Ok(konig_linear_value(subspaces)? == subspaces.len())
}

/// Linearly independent representatives `(index, vector)` from distinct
/// subspaces, as many as [`konig_linear_value`].
///
/// With `M` the minimizing index set and `W = Σ_{i∈M} V_i`: the indices
/// outside `M` get representatives independent modulo `W`, and those in `M`
/// a basis of `W`, found after padding each `V_i` by `𝔽^{|M| − dim W}`.
pub fn konig_linear_witness<F: Field>(subspaces: &[Subspace<F>]) -> Result<Vec<(usize, Vec<F>)>> {
    let (value, m_set) = konig_minimizer(subspaces)?;
    let n = subspaces.first().map_or(0, Subspace::ambient);
    let k_set: Vec<usize> = (0..subspaces.len()).filter(|i| !m_set.contains(i)).collect();
    let w = Subspace::sum_all(n, m_set.iter().map(|&i| &subspaces[i]));
    let mut out: Vec<(usize, Vec<F>)> = Vec::new();

    // quotient phase: coordinates on V/W via the annihilator of W
    let ann = w.annihilator();
    let project = |v: &[F]| -> Vec<F> {
        ann.basis()
            .iter()
            .map(|a| a.iter().zip(v).fold(F::zero(), |s, (x, y)| s + x.clone() * y.clone()))
            .collect()
    };
    let groups: Vec<Vec<Vec<F>>> = k_set.iter().map(|&i| subspaces[i].basis().to_vec()).collect();
    let images: Vec<Vec<Vec<F>>> = groups.iter().map(|g| g.iter().map(|v| project(v)).collect()).collect();
    let picked = independent_transversal(&images, ann.dim());
    if picked.len() != k_set.len() {
        return Err(Error::Internal("quotient system of representatives is incomplete".into()));
    }
    for (g, idx) in picked {
        out.push((k_set[g], groups[g][idx].clone()));
    }

    // basis phase: pad by m − dim W coordinates
    let m = m_set.len();
    let pad = m - w.dim();
    let padded: Vec<Vec<Vec<F>>> = m_set
        .iter()
        .map(|&i| {
            let mut gens: Vec<Vec<F>> = subspaces[i]
                .basis()
                .iter()
                .map(|v| v.iter().cloned().chain(std::iter::repeat_n(F::zero(), pad)).collect())
                .collect();
            for p in 0..pad {
                let mut e = vec![F::zero(); n + pad];
                e[n + p] = F::one();
                gens.push(e);
            }
            gens
        })
        .collect();
    let picked = independent_transversal(&padded, n + pad);
    if picked.len() != m {
        return Err(Error::Internal("padded system of representatives is incomplete".into()));
    }
    let mut basis: Vec<Vec<F>> = Vec::new();
    for (g, idx) in picked {
        let v: Vec<F> = padded[g][idx][..n].to_vec();
        let mut trial = basis.clone();
        trial.push(v.clone());
        if rank(&trial, n) == trial.len() {
            basis = trial;
            out.push((m_set[g], v));
        }
    }

    out.sort_by_key(|(i, _)| *i);
    let vectors: Vec<Vec<F>> = out.iter().map(|(_, v)| v.clone()).collect();
    if out.len() != value || rank(&vectors, n) != value {
        return Err(Error::Internal(format!("witness of size {} for value {value}", out.len())));
    }
    Ok(out)
}

/// The König value of the multiset with `U₁` repeated `i` times, `U₂` `j`
/// times and `U₃` `k` times.
pub fn multiset_g<F: Field>(u1: &Subspace<F>, u2: &Subspace<F>, u3: &Subspace<F>, i: usize, j: usize, k: usize) -> Result<usize> {
    let list: Vec<Subspace<F>> = std::iter::repeat_n(u1.clone(), i)
        .chain(std::iter::repeat_n(u2.clone(), j))
        .chain(std::iter::repeat_n(u3.clone(), k))
        .collect();
    konig_linear_value(&list)
}
