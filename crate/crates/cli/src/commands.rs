use std::fs;
use std::path::Path;
use std::result::Result;

use serde::Serialize;
use serde_json::{json, Map, Value};
use sieve_core::partition::meet_all;
use sieve_core::sieve::sample_detectors;
use sieve_core::system::system_partitions;
use sieve_core::*;

use crate::{Emit, Failure, Source};

type Outcome = Result<Value, Failure>;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("core types serialize to JSON")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::invalid("Io", format!("cannot read {what} file {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::invalid("Parse", format!("invalid {what} JSON in {}: {e}", path.display())))
}

/// A system and the basis it is meant to separate.
struct Resolved {
    system: PropositionSystem,
    basis: Basis,
    unitary: Option<NamedUnitary>,
    key: BasisKey,
}

fn permutation(source: &Source) -> Result<Option<SystemPermutation>, Failure> {
    source
        .perm
        .as_deref()
        .map(SystemPermutation::from_targets)
        .transpose()
        .map_err(Failure::from)
}

fn load_system(path: &Path, source: &Source) -> Result<PropositionSystem, Failure> {
    let system: PropositionSystem = read_json(path, "system")?;
    if let Some(n) = source.n.filter(|&n| n != system.n()) {
        return Err(Failure::invalid(
            "DimensionMismatch",
            format!("--n {n} but the system file has n = {}", system.n()),
        ));
    }
    Ok(system)
}

/// With `--system` the file is taken as already expressed in `--basis`
/// unless `conjugate_file` is set; otherwise the standard system is moved
/// into the basis.
fn resolve(source: &Source, conjugate_file: bool, tol: Tolerance) -> Result<Resolved, Failure> {
    let (mut system, from_file) = match &source.system {
        Some(path) => (load_system(path, source)?, true),
        None => (
            standard_system(source.n.expect("clap requires --n without --system"))?,
            false,
        ),
    };
    if let Some(perm) = permutation(source)? {
        system = permute_system(&system, &perm, tol)?;
    }
    let (basis, unitary) = catalog(source.basis, system.n())?;
    if let Some(u) = unitary.as_ref().filter(|_| !from_file || conjugate_file) {
        system = transformed_system(&u.matrix, &system, tol)?;
    }
    Ok(Resolved {
        system,
        basis,
        unitary,
        key: source.basis,
    })
}

fn labelled_partitions(system: &PropositionSystem, basis: &Basis, tol: Tolerance) -> Result<Value, Failure> {
    let parts = system_partitions(system, basis, tol)?;
    let meet = meet_all(&parts)?.unwrap_or_else(|| Partition::trivial(basis.dim()));
    Ok(json!({
        "partitions": parts.iter().map(to_value).collect::<Vec<_>>(),
        "meet": to_value(&meet),
        "atomic": is_atomic(&meet),
    }))
}

fn codes(system: &PropositionSystem, basis: &Basis, tol: Tolerance) -> Result<Value, Failure> {
    let rows = (1..=basis.dim())
        .map(|k| {
            let out = route_basis_state(system, basis, k, tol)?;
            let bits: String = out.answer_bits.iter().map(|&b| char::from(b'0' + b)).collect();
            Ok(json!({
                "state": k,
                "label": basis.labels()[k - 1],
                "bits": bits,
                "detector": out.detector,
            }))
        })
        .collect::<Result<Vec<_>, SieveError>>()?;
    Ok(Value::Array(rows))
}

fn emit_items(r: &Resolved, emit: &[Emit], tol: Tolerance) -> Outcome {
    let mut out = Map::new();
    out.insert("n".into(), json!(r.system.n()));
    out.insert("basis".into(), json!(r.key.as_str()));
    for item in emit {
        match item {
            Emit::Projectors => {
                out.insert("projectors".into(), to_value(&r.system.projectors()));
            }
            Emit::Partitions => {
                if let Value::Object(m) = labelled_partitions(&r.system, &r.basis, tol)? {
                    out.extend(m);
                }
            }
            Emit::Basis => {
                out.insert("basis_states".into(), to_value(&r.basis));
            }
            Emit::Unitary => {
                out.insert(
                    "unitary".into(),
                    r.unitary.as_ref().map_or(Value::Null, |u| to_value(&u.matrix)),
                );
            }
            Emit::Codes => {
                out.insert("codes".into(), codes(&r.system, &r.basis, tol)?);
            }
        }
    }
    Ok(Value::Object(out))
}

pub fn build(source: &Source, emit: &[Emit], tol: Tolerance) -> Outcome {
    if source.system.is_some() {
        return Err(Failure::invalid(
            "InvalidSystem",
            "build constructs a system from --n; use transform or verify for files",
        ));
    }
    emit_items(&resolve(source, false, tol)?, emit, tol)
}

pub fn transform(source: &Source, emit: &[Emit], tol: Tolerance) -> Outcome {
    emit_items(&resolve(source, true, tol)?, emit, tol)
}

pub fn verify(source: &Source, tol: Tolerance) -> Outcome {
    let r = resolve(source, false, tol)?;
    let certified = r.system.certify(tol);
    let report = verify_requirements(&r.system, &r.basis, tol)?;
    let separating = report.eigenbasis && separates(r.system.projectors(), &r.basis, tol)?;
    let pass = certified.is_ok() && report.all_pass() && separating;
    let value = json!({
        "n": r.system.n(),
        "basis": r.key.as_str(),
        "projector_checks": certified.as_ref().map_or_else(|e| e.to_string(), |_| "ok".to_string()),
        "requirements": to_value(&report),
        "separates": separating,
        "pass": pass,
    });
    if pass {
        Ok(value)
    } else {
        Err(Failure::Violation(value))
    }
}

pub fn enumerate(n: usize, limit: Option<usize>, count_only: bool, force: bool, tol: Tolerance) -> Outcome {
    let mut systems = enumerate_systems(n, limit, force)?;
    if count_only {
        return Ok(json!({ "count": systems.count() }));
    }
    let mut listed = Vec::new();
    while let Some((perm, system)) = systems.next_with_permutation() {
        let diagonals: Vec<String> = system
            .diagonal_bits(tol)?
            .iter()
            .map(|d| d.iter().map(|&b| char::from(b'0' + b)).collect())
            .collect();
        listed.push(json!({
            "index": listed.len() + 1,
            "perm": perm.targets(),
            "diagonals": diagonals,
        }));
    }
    Ok(json!({ "n": n, "count": listed.len(), "systems": listed }))
}

pub fn partition(source: &Source, tol: Tolerance) -> Outcome {
    let r = resolve(source, false, tol)?;
    let mut out = labelled_partitions(&r.system, &r.basis, tol)?;
    out["n"] = json!(r.system.n());
    out["basis"] = json!(r.key.as_str());
    Ok(out)
}

fn guard_n(n: usize, force: bool, what: &'static str) -> Result<(), Failure> {
    if n > MAX_N && !force {
        return Err(SieveError::ResourceGuard { what, n }.into());
    }
    Ok(())
}

pub fn simulate(
    source: &Source,
    index: Option<usize>,
    state: Option<&Path>,
    sample: Option<u64>,
    seed: u64,
    force: bool,
    tol: Tolerance,
) -> Outcome {
    if let Some(n) = source.n {
        guard_n(n, force, "simulation")?;
    }
    let r = resolve(source, false, tol)?;
    let (label, vector) = match state {
        Some(path) => ("file".to_string(), read_json::<StateVector>(path, "state")?),
        None => {
            let k = index.unwrap_or(1);
            let v = r.basis.vector(k)?.clone();
            (r.basis.labels()[k - 1].clone(), v)
        }
    };
    let mut out = json!({ "n": r.system.n(), "basis": r.key.as_str(), "state": label });
    match sample {
        Some(shots) => {
            let counts = sample_detectors(&r.system, &vector, shots, seed, tol)?;
            out["seed"] = json!(counts.seed);
            out["shots"] = json!(counts.shots);
            out["counts"] = json!(counts.counts);
        }
        None => {
            let dist = measure_state(&r.system, &vector, tol)?;
            out["point_mass"] = json!(dist.point_mass(tol));
            out["detectors"] = json!(dist.probabilities);
        }
    }
    Ok(out)
}

pub fn stats(n: usize, trials: u64, seed: u64, infer_last: bool, force: bool) -> Outcome {
    guard_n(n, force, "simulation")?;
    Ok(to_value(&question_count_stats(n, trials, seed, infer_last)?))
}

pub fn pauli(axes: &[String], basis: BasisKey, emit: &[Emit], tol: Tolerance) -> Outcome {
    let assignments = axes
        .iter()
        .map(|a| a.parse())
        .collect::<Result<Vec<AxisAssignment>, _>>()?;
    let sites = assignments[0].len();
    if let Some(bad) = assignments.iter().find(|a| a.len() != sites) {
        return Err(Failure::invalid(
            "InvalidAxes",
            format!("axis strings differ in length: {} vs {bad}", assignments[0]),
        ));
    }
    let projectors = assignments
        .iter()
        .map(sigma_product_proposition)
        .collect::<Result<Vec<_>, _>>()?;
    let mut commuting = true;
    for (i, a) in projectors.iter().enumerate() {
        for b in &projectors[i + 1..] {
            commuting &= commutator_norm(a, b)? <= tol.eps();
        }
    }
    let mut out = json!({
        "n": sites,
        "axes": assignments.iter().map(to_value).collect::<Vec<_>>(),
        "traces": projectors.iter().map(|p| p.trace().re).collect::<Vec<_>>(),
        "commuting": commuting,
    });
    for item in emit {
        match item {
            Emit::Projectors => out["projectors"] = to_value(&projectors),
            Emit::Partitions => {
                let (b, _) = catalog(basis, sites)?;
                let parts = projectors
                    .iter()
                    .map(|p| partition_from_projector(p, &b, tol))
                    .collect::<Result<Vec<_>, _>>()?;
                let meet = meet_all(&parts)?.expect("at least one axis string");
                out["basis"] = json!(basis.as_str());
                out["partitions"] = to_value(&parts);
                out["meet"] = to_value(&meet);
                out["atomic"] = json!(is_atomic(&meet));
            }
            other => {
                return Err(Failure::invalid(
                    "InvalidEmit",
                    format!("pauli emits projectors and partitions, not {other:?}"),
                ))
            }
        }
    }
    Ok(out)
}
