use anyhow::{anyhow, bail, Context};
use serde_json::{json, Value};

use affbuild::apartment::{apartment_witness, Apartment, ApartmentPoint};
use affbuild::closecase::{build_network, close_witness, extract_triple, max_flow, min_formula, REP_TYPES};
use affbuild::detval::{multi_f_detailed, star_cost, IndexVector};
use affbuild::harness::{verify_star, ConjectureReport, HarnessOptions, Status, Strategy};
use affbuild::hungarian::kuhn_munkres;
use affbuild::io::{self, Instance};
use affbuild::konig::{konig_linear_value, konig_linear_witness, moshonkin_check};
use affbuild::metric::distance as coweight_distance;
use affbuild::{random, Field, Lattice};

use crate::{GenKind, Settings};

/// What a subcommand prints, and its exit code.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn success(json: Value, text: String) -> Self {
        Outcome { json, text, code: 0 }
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values serialize")
}

fn lattice_text<F: Field>(l: &Lattice<F>) -> String {
    compact(&io::lattice_to_json(l))
}

fn instance_indices<F: Field>(inst: &Instance<F>, flag: Option<Vec<usize>>) -> anyhow::Result<IndexVector> {
    let idx = flag
        .or_else(|| inst.indices.clone())
        .ok_or_else(|| anyhow!("no indices given in the file or with --indices"))?;
    Ok(IndexVector::new(idx, inst.n)?)
}

pub fn compute_f<F: Field>(doc: &Value, indices: Option<Vec<usize>>) -> anyhow::Result<Outcome> {
    let inst = io::instance_from_json::<F>(doc)?;
    let idx = instance_indices(&inst, indices)?;
    let r = multi_f_detailed(&idx, &inst.lattices)?;
    let mut text = format!("{}\n", r.value);
    for (j, sel) in r.selection.iter().enumerate() {
        text.push_str(&format!("lattice {j}: columns {sel:?}\n"));
    }
    let json = json!({ "value": r.value, "indices": idx.as_slice(), "selection": r.selection });
    Ok(Outcome::success(json, text))
}

pub fn distance<F: Field>(doc: &Value) -> anyhow::Result<Outcome> {
    let inst = io::instance_from_json::<F>(doc)?;
    let [l, m] = match inst.lattices.as_slice() {
        [l, m, ..] => [l, m],
        _ => bail!("distance needs two lattices"),
    };
    let d = coweight_distance(l, m);
    let back = coweight_distance(m, l);
    let antisymmetric = back == d.reverse_negate();
    let text = format!(
        "d(L, M) = {:?}\nd(M, L) = {:?}\nreverse-negate: {}\n",
        d.as_slice(),
        back.as_slice(),
        if antisymmetric { "ok" } else { "FAILED" }
    );
    let json = json!({ "distance": d.as_slice(), "reverse": back.as_slice(), "antisymmetric": antisymmetric });
    Ok(Outcome::success(json, text))
}

fn report_text<F: Field>(r: &ConjectureReport<F>) -> String {
    let mut text = format!(
        "lhs {}\nstatus {}\nstrategy {}\ncandidates examined {}\n",
        r.lhs,
        r.status.label(),
        r.strategy.label(),
        r.candidates_examined
    );
    if let Some(best) = &r.best {
        text.push_str(&format!("best cost {}\n", best.cost));
    }
    if let Some(w) = r.witness() {
        text.push_str(&format!("witness {}\n", lattice_text(w)));
    }
    if let Some(note) = &r.note {
        text.push_str(&format!("note {note}\n"));
    }
    text
}

pub fn verify<F: Field>(doc: &Value, strategy: &str, s: &Settings) -> anyhow::Result<Outcome> {
    let inst = io::instance_from_json::<F>(doc)?;
    let idx = instance_indices(&inst, None)?;
    let strategies: Vec<Strategy> = if strategy == "all" { Strategy::ALL.to_vec() } else { vec![Strategy::parse(strategy)?] };
    let opts = HarnessOptions { budget: s.budget, seed: s.seed, threads: s.threads, frames: Vec::new() };
    // first verified report, else the inconclusive one with the cheapest candidate
    let mut chosen: Option<ConjectureReport<F>> = None;
    for st in strategies {
        let r = verify_star(&idx, &inst.lattices, st, &opts)?;
        if r.status == Status::Verified {
            chosen = Some(r);
            break;
        }
        let better = match (&chosen, &r.best) {
            (None, _) => true,
            (Some(c), Some(b)) => c.best.as_ref().is_none_or(|cb| b.cost < cb.cost),
            (Some(_), None) => false,
        };
        if better {
            chosen = Some(r);
        }
    }
    let r = chosen.expect("at least one strategy ran");
    let code = match r.status {
        Status::Verified => 0,
        Status::Inconclusive => 2,
    };
    Ok(Outcome { json: io::report_to_json(&r), text: report_text(&r), code })
}

fn three<F: Field>(inst: &Instance<F>) -> anyhow::Result<([&Lattice<F>; 3], [usize; 3])> {
    let [l, m, n] = match inst.lattices.as_slice() {
        [l, m, n] => [l, m, n],
        other => bail!("close-case needs exactly three lattices, found {}", other.len()),
    };
    let idx = instance_indices(inst, None)?;
    let [i, j, k] = match idx.as_slice() {
        [i, j, k] => [*i, *j, *k],
        _ => bail!("close-case needs three indices"),
    };
    Ok(([l, m, n], [i, j, k]))
}

pub fn close_case<F: Field>(doc: &Value) -> anyhow::Result<Outcome> {
    let inst = io::instance_from_json::<F>(doc)?;
    let ([l, m, n], [i, j, k]) = three(&inst)?;
    let w = close_witness(l, m, n, i, j, k)?;
    let triple = extract_triple(l, m, n)?;
    let formula = min_formula(&triple, i, j, k);
    let flow = max_flow(&build_network(&w.multiplicities, i, j, k));
    let mults: serde_json::Map<String, Value> = REP_TYPES
        .iter()
        .zip(w.multiplicities.as_array())
        .map(|(t, c)| (t.name.to_string(), json!(c)))
        .collect();
    let json = json!({
        "value": w.value,
        "min_formula": formula,
        "max_flow": flow,
        "label": w.label,
        "witness": io::lattice_to_json(&w.witness),
        "costs": w.costs,
        "multiplicities": mults,
    });
    let text = format!(
        "value {}\nmin formula {}\nmax flow {}\nwitness {} {}\ncosts {:?}\nmultiplicities {}\n",
        w.value,
        formula,
        flow,
        w.label,
        lattice_text(&w.witness),
        w.costs,
        compact(&Value::Object(mults.clone()))
    );
    Ok(Outcome::success(json, text))
}

/// `{"n", "field", "basis": columns, "points": [[int, …], …], "indices"}`.
pub fn apartment<F: Field>(doc: &Value) -> anyhow::Result<Outcome> {
    let n = io::field_of(doc, "n")?.as_u64().ok_or_else(|| anyhow!("n must be a nonnegative integer"))? as usize;
    let a = Apartment::new(io::columns_from_json::<F>(io::field_of(doc, "basis")?)?)?;
    if a.rank() != n {
        bail!("basis has rank {}, expected {n}", a.rank());
    }
    let points: Vec<ApartmentPoint> = io::field_of(doc, "points")?
        .as_array()
        .ok_or_else(|| anyhow!("points must be an array"))?
        .iter()
        .map(|p| io::int_vector_from_json(p).map(ApartmentPoint))
        .collect::<affbuild::Result<_>>()?;
    let idx = IndexVector::new(io::usize_vector_from_json(io::field_of(doc, "indices")?)?, n)?;
    let w = apartment_witness(&a, &points, &idx)?;
    let lattices: Vec<Lattice<F>> = points.iter().map(|p| a.lattice(p)).collect::<affbuild::Result<_>>()?;
    let cost = star_cost(&idx, &lattices, &w.witness)?;
    let json = json!({
        "value": w.value,
        "point": w.point.0,
        "witness": io::lattice_to_json(&w.witness),
        "star_cost": cost,
        "assignment": { "sigma": w.assignment.sigma, "a": w.assignment.a, "b": w.assignment.b },
    });
    let text = format!(
        "value {}\nwitness point {:?}\nwitness {}\nstar cost {}\n",
        w.value,
        w.point.0,
        lattice_text(&w.witness),
        cost
    );
    Ok(Outcome::success(json, text))
}

pub fn konig<F: Field>(doc: &Value) -> anyhow::Result<Outcome> {
    let (_, spaces) = io::subspaces_from_json::<F>(doc)?;
    let value = konig_linear_value(&spaces)?;
    let reps = konig_linear_witness(&spaces)?;
    let moshonkin = moshonkin_check(&spaces)?;
    let reps_json: Vec<Value> = reps.iter().map(|(i, v)| json!({ "subspace": i, "vector": io::vector_to_json(v) })).collect();
    let mut text = format!("value {value}\nsubspaces {}\nindependent system {moshonkin}\n", spaces.len());
    for r in &reps_json {
        text.push_str(&format!("representative {}\n", compact(r)));
    }
    let json = json!({ "value": value, "r": spaces.len(), "moshonkin": moshonkin, "witness": reps_json });
    Ok(Outcome::success(json, text))
}

/// Accepts `{"matrix": [[…]]}` or a bare matrix.
pub fn hungarian(doc: &Value) -> anyhow::Result<Outcome> {
    let m = doc.get("matrix").unwrap_or(doc);
    let c = io::int_matrix_from_json(m)?;
    let r = kuhn_munkres(&c)?;
    let certified = r.certifies(&c);
    let json = json!({ "value": r.value, "sigma": r.sigma, "a": r.a, "b": r.b, "certified": certified });
    let text = format!("value {}\nsigma {:?}\na {:?}\nb {:?}\ncertified {certified}\n", r.value, r.sigma, r.a, r.b);
    Ok(Outcome::success(json, text))
}

pub fn gen<F: Field>(kind: GenKind, n: usize, k: usize, s: &Settings) -> anyhow::Result<Outcome> {
    if n == 0 {
        bail!("--n must be positive");
    }
    let mut rng = random::rng(s.seed);
    let mut doc = match kind {
        GenKind::Random | GenKind::Close => {
            let lattices: Vec<Lattice<F>> = (0..k)
                .map(|_| match kind {
                    GenKind::Close => random::close_lattice(&mut rng, n),
                    _ => random::lattice(&mut rng, n, -3, 3),
                })
                .collect();
            let indices = Some(random::indices(&mut rng, k, n));
            io::instance_to_json(&Instance { n, lattices, indices })
        }
        GenKind::Apartment => {
            let a: Apartment<F> = random::apartment(&mut rng, n);
            let points: Vec<ApartmentPoint> = (0..k).map(|_| random::apartment_point(&mut rng, n, -5, 5)).collect();
            let lattices: Vec<Lattice<F>> = points.iter().map(|p| a.lattice(p)).collect::<affbuild::Result<_>>()?;
            let indices = random::indices(&mut rng, k, n);
            let mut doc = io::instance_to_json(&Instance { n, lattices, indices: Some(indices) });
            doc["basis"] = io::columns_to_json(a.basis());
            doc["points"] = json!(points.iter().map(|p| p.0.clone()).collect::<Vec<_>>());
            doc
        }
        GenKind::Subspaces => {
            let spaces: Vec<Value> = (0..k).map(|_| io::subspace_to_json(&random::subspace::<F, _>(&mut rng, n))).collect();
            json!({ "n": n, "field": F::label(), "subspaces": spaces })
        }
        GenKind::Matrix => {
            use rand::Rng;
            let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect()).collect();
            json!({ "matrix": m })
        }
    };
    doc["seed"] = json!(s.seed);
    let text = format!("{}\n", serde_json::to_string_pretty(&doc).context("serializing")?);
    Ok(Outcome::success(doc, text))
}
