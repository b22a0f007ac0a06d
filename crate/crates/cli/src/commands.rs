use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use irrhodge::character::{dominant_weights_up_to_dim, weyl_dimension};
use irrhodge::chevalley::{adjoint_rep, classical_std_rep, jordan_type, principal_triple};
use irrhodge::connection::{
    bracket_with_rho, check_flatness, expected_bracket_with_rho, rmodule_pair,
};
use irrhodge::grading::{
    exponents, grading_of_weights, hodge_from_partition, partition_from_grading, rho_grading,
    HodgeTable, RhoGrading,
};
use irrhodge::kkp::{kkp_check, minuscule_nodes, KkpReport, MinusculeCase};
use irrhodge::rootdatum::{RootDatum, SimpleType, Weight};
use irrhodge::{Error, Rational, Result};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::CharacterCache;

/// Rendered output plus whether every check in it passed.
pub struct Output {
    pub text: String,
    pub ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

pub struct Env {
    pub json: bool,
    pub max_dim: u64,
    pub cache: CharacterCache,
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn parse_weight(datum: &RootDatum, s: &str) -> Result<Weight> {
    let w = Weight::parse(s)?;
    if w.rank() != datum.rank() {
        return Err(Error::Usage(format!(
            "{} needs {} weight coordinates, got {}",
            datum.simple_type(),
            datum.rank(),
            w.rank()
        )));
    }
    if !w.is_dominant() {
        return Err(Error::Usage(format!("weight {w} is not dominant")));
    }
    Ok(w)
}

fn guard_dim(env: &Env, datum: &RootDatum, lambda: &Weight) -> Result<BigUint> {
    let dim = weyl_dimension(datum, lambda)?;
    if dim > BigUint::from(env.max_dim) {
        return Err(Error::Resource(format!(
            "dim V_{lambda} = {dim} exceeds --max-dim {}",
            env.max_dim
        )));
    }
    Ok(dim)
}

fn hodge_table(env: &Env, datum: &RootDatum, lambda: &Weight) -> Result<HodgeTable> {
    guard_dim(env, datum, lambda)?;
    let chi = env.cache.get(datum, lambda)?;
    Ok(HodgeTable::from_character(datum, &chi))
}

/// `k / 2` as an integer or half-integer.
fn half(k: i64) -> String {
    if k % 2 == 0 {
        (k / 2).to_string()
    } else {
        format!("{k}/2")
    }
}

pub fn hodge(env: &Env, ty: SimpleType, weight: &str) -> Result<Output> {
    let datum = RootDatum::new(ty)?;
    let lambda = parse_weight(&datum, weight)?;
    let table = hodge_table(env, &datum, &lambda)?;
    if env.json {
        return Ok(Output::ok(to_json(&table.to_json()?)));
    }
    let mut out = format!("{ty} {lambda}  dim {}\n", table.dim());
    let width = table
        .levels()
        .dims()
        .keys()
        .map(|&k| half(k).len())
        .max()
        .unwrap_or(1)
        .max(5);
    let _ = writeln!(out, "{:>width$}  h", "alpha");
    for (k, h) in table.levels().dims() {
        let _ = writeln!(out, "{:>width$}  {h}", half(*k));
    }
    Ok(Output::ok(out))
}

#[derive(Serialize)]
struct JordanJson {
    #[serde(rename = "type")]
    ty: String,
    weight: Vec<i64>,
    blocks: Vec<u64>,
}

pub fn jordan(env: &Env, ty: SimpleType, weight: &str) -> Result<Output> {
    let datum = RootDatum::new(ty)?;
    let lambda = parse_weight(&datum, weight)?;
    let table = hodge_table(env, &datum, &lambda)?;
    let p = partition_from_grading(table.levels())?;
    if env.json {
        return Ok(Output::ok(to_json(&JordanJson {
            ty: ty.to_string(),
            weight: lambda.coords().to_vec(),
            blocks: p.blocks().to_vec(),
        })));
    }
    Ok(Output::ok(format!("{ty} {lambda}: {p}\n")))
}

#[derive(Serialize)]
struct ExponentsJson {
    #[serde(rename = "type")]
    ty: String,
    exponents: Vec<u64>,
}

pub fn exponents_cmd(env: &Env, ty: SimpleType) -> Result<Output> {
    let datum = RootDatum::new(ty)?;
    let e = exponents(&datum)?;
    if env.json {
        return Ok(Output::ok(to_json(&ExponentsJson {
            ty: ty.to_string(),
            exponents: e,
        })));
    }
    let parts: Vec<String> = e.iter().map(u64::to_string).collect();
    Ok(Output::ok(format!("{}\n", parts.join(" "))))
}

#[derive(Serialize)]
struct VerifyJson {
    #[serde(rename = "type")]
    ty: String,
    rep: String,
    dim: usize,
    jordan: Vec<u64>,
    jordan_matches_character: bool,
    lie_identities: bool,
    flat: bool,
    pass: bool,
}

pub fn verify(env: &Env, ty: SimpleType, rep: &str, dump_dir: Option<&Path>) -> Result<Output> {
    let datum = RootDatum::new(ty)?;
    let lambda = match rep {
        "adjoint" => datum.adjoint_weight(),
        "std" => Weight::fundamental(datum.rank(), 1)?,
        other => return Err(Error::Usage(format!("unknown representation {other:?}"))),
    };
    let dim = guard_dim(env, &datum, &lambda)?;
    let matrices = if rep == "adjoint" {
        adjoint_rep(&datum)?
    } else {
        classical_std_rep(&datum)?
    };
    let triple = principal_triple(&datum, &matrices)?;

    let from_matrix = jordan_type(triple.n())?;
    let mut basis: BTreeMap<Weight, BigUint> = BTreeMap::new();
    for w in triple.basis_weights() {
        *basis.entry(w.clone()).or_default() += 1u32;
    }
    let basis_grading = grading_of_weights(&datum, &basis);
    let chi = env.cache.get(&datum, &lambda)?;
    let jordan_ok = basis_grading == rho_grading(&datum, &chi)
        && partition_from_grading(&basis_grading)? == from_matrix;

    let hm1 = Rational::from_integer((triple.coxeter() as i64 - 1).into());
    let lie_ok = triple.n().commutator(triple.rho()) == -triple.n()
        && triple.e().commutator(triple.rho()) == triple.e().scale(&hm1)
        && bracket_with_rho(&triple) == expected_bracket_with_rho(&triple);

    let pair = rmodule_pair(&triple, triple.coxeter() as i64)?;
    let flatness = check_flatness(&pair)?;

    if let Some(dir) = dump_dir {
        fs::create_dir_all(dir).map_err(|e| Error::Config(format!("{}: {e}", dir.display())))?;
        for (name, m) in [("N", triple.n()), ("E", triple.e()), ("RHO", triple.rho())] {
            let path = dir.join(format!("{name}.txt"));
            fs::write(&path, m.to_triplet_text())
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        }
    }

    let pass = jordan_ok && lie_ok && flatness.pass();
    if env.json {
        return Ok(Output {
            text: to_json(&VerifyJson {
                ty: ty.to_string(),
                rep: rep.to_string(),
                dim: triple.dim(),
                jordan: from_matrix.blocks().to_vec(),
                jordan_matches_character: jordan_ok,
                lie_identities: lie_ok,
                flat: flatness.pass(),
                pass,
            }),
            ok: pass,
        });
    }
    let verdict = |b: bool| if b { "PASS" } else { "FAIL" };
    let mut out = format!("{ty} {rep} (dim {dim}, h = {})\n", triple.coxeter());
    let _ = writeln!(
        out,
        "  jordan type of N      {from_matrix}  {}",
        verdict(jordan_ok)
    );
    let _ = writeln!(out, "  [N,RHO] = -N, [E,RHO] = (h-1)E  {}", verdict(lie_ok));
    match &flatness.first_nonzero {
        None => {
            let _ = writeln!(out, "  d_z A - d_t B = [A,B]  PASS");
        }
        Some((r, c, p)) => {
            let _ = writeln!(out, "  d_z A - d_t B = [A,B]  FAIL at ({r}, {c}): {p}");
        }
    }
    let _ = writeln!(out, "{}", verdict(pass));
    Ok(Output {
        text: out,
        ok: pass,
    })
}

fn kkp_text(r: &KkpReport) -> String {
    let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    let mut out = format!("{} node {}  dim X = {}\n", r.ty, r.node, r.dim_x);
    let _ = writeln!(out, "  betti          {{{}}}", list(r.betti.values()));
    let _ = writeln!(out, "  hodge shifted  {{{}}}", list(&r.hodge_shifted));
    match r.first_mismatch {
        None => out.push_str("PASS\n"),
        Some(p) => {
            let _ = writeln!(out, "FAIL at p = {p}");
        }
    }
    out
}

pub fn kkp(env: &Env, ty: SimpleType, node: Option<usize>) -> Result<Output> {
    let datum = RootDatum::new(ty)?;
    let nodes = match node {
        Some(n) => vec![n],
        None => minuscule_nodes(ty),
    };
    if nodes.is_empty() {
        return Err(Error::Usage(format!("{ty} has no minuscule nodes")));
    }
    let reports = nodes
        .iter()
        .map(|&n| kkp_check(&datum, &MinusculeCase::new(&datum, n)?))
        .collect::<Result<Vec<_>>>()?;
    let ok = reports.iter().all(KkpReport::pass);
    let text = if env.json {
        let jsons: Vec<_> = reports.iter().map(KkpReport::to_json).collect();
        if node.is_some() {
            to_json(&jsons[0])
        } else {
            to_json(&jsons)
        }
    } else {
        reports.iter().map(kkp_text).collect()
    };
    Ok(Output { text, ok })
}

#[derive(Serialize)]
struct SweepCase {
    #[serde(rename = "type")]
    ty: String,
    weight: Vec<i64>,
    dim: u64,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct SweepJson {
    max_rank: usize,
    max_dim: u64,
    cases: Vec<SweepCase>,
    kkp: Vec<irrhodge::kkp::KkpJson>,
    passed: usize,
    failed: usize,
}

/// Sum rule, symmetry and partition roundtrip for one representation.
fn sweep_case(env: &Env, datum: &RootDatum, lambda: &Weight, dim: u64) -> SweepCase {
    let check = || -> Result<()> {
        let chi = env.cache.get(datum, lambda)?;
        let g: RhoGrading = rho_grading(datum, &chi);
        if g.total() != BigUint::from(dim) {
            return Err(Error::Integrity(format!("sum {} != dim {dim}", g.total())));
        }
        let p = partition_from_grading(&g)?;
        if hodge_from_partition(&p) != g {
            return Err(Error::Integrity(
                "partition roundtrip changed the grading".into(),
            ));
        }
        Ok(())
    };
    let result = check();
    SweepCase {
        ty: datum.simple_type().to_string(),
        weight: lambda.coords().to_vec(),
        dim,
        pass: result.is_ok(),
        error: result.err().map(|e| e.to_string()),
    }
}

pub fn sweep(env: &Env, max_rank: usize) -> Result<Output> {
    let mut cases = Vec::new();
    let mut minuscule = Vec::new();
    for ty in SimpleType::all_up_to_rank(max_rank) {
        let datum = RootDatum::new(ty)?;
        for (w, dim) in dominant_weights_up_to_dim(&datum, env.max_dim) {
            cases.push((datum.clone(), w, dim));
        }
        for node in minuscule_nodes(ty) {
            minuscule.push((datum.clone(), node));
        }
    }
    // Indexed parallel collect keeps the input order.
    let results: Vec<SweepCase> = cases
        .par_iter()
        .map(|(d, w, dim)| sweep_case(env, d, w, *dim))
        .collect();
    let kkp_reports: Vec<Result<KkpReport>> = minuscule
        .par_iter()
        .map(|(d, n)| kkp_check(d, &MinusculeCase::new(d, *n)?))
        .collect();
    let kkp_reports = kkp_reports.into_iter().collect::<Result<Vec<_>>>()?;

    let failed = results.iter().filter(|c| !c.pass).count()
        + kkp_reports.iter().filter(|r| !r.pass()).count();
    let passed = results.len() + kkp_reports.len() - failed;
    let text = if env.json {
        to_json(&SweepJson {
            max_rank,
            max_dim: env.max_dim,
            cases: results,
            kkp: kkp_reports.iter().map(KkpReport::to_json).collect(),
            passed,
            failed,
        })
    } else {
        let mut out = String::new();
        for c in &results {
            let w: Vec<String> = c.weight.iter().map(i64::to_string).collect();
            let status = match &c.error {
                None => "PASS".to_string(),
                Some(e) => format!("FAIL {e}"),
            };
            let _ = writeln!(
                out,
                "{:<4} ({})  dim {}  {status}",
                c.ty,
                w.join(","),
                c.dim
            );
        }
        for r in &kkp_reports {
            let status = if r.pass() { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "kkp {} node {}  {status}", r.ty, r.node);
        }
        let _ = writeln!(out, "sweep: {passed} passed, {failed} failed");
        out
    };
    Ok(Output {
        text,
        ok: failed == 0,
    })
}
