//! Subcommand implementations. Each builds its full output in memory and
//! writes it in one shot, so identical configurations produce byte-identical
//! files.

use std::fmt::Write as _;
use std::process::ExitCode;

use serde_json::json;

use symmetra::models::{
    butterfly_sweep, h2_hamiltonian, h2_sector_name, harper_hamiltonian, ising_hamiltonian,
    ising_symmetry_projectors, mixed_sector_state, restrict_to_projector_range, sample_integrals,
    sorted_spectrum, three_particle_projectors, H2Integrals, IsingParams,
};
use symmetra::qct::build_qct;
use symmetra::qpe::sqpe as run_sqpe;
use symmetra::resources::{
    cyclic_increment_resources, cyclic_select_resources, unary_iteration_resources, CyclicScheme,
    ResourceEstimate,
};
use symmetra::selftest;
use symmetra::simulator::{StateVector, RNG_ALGORITHM};
use symmetra::tgsa::{project_and_postselect, projector_matrix, tgsa_apply, TgsaInput};
use symmetra::wire::vector_to_wire;

use crate::spec::{
    parse_flux, parse_group, parse_rep, parse_state, parse_sweep, CliError, CliResult,
};
use crate::OutputArgs;

fn emit(out: Option<&str>, content: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn fnum(v: f64) -> String {
    format!("{v:.12e}")
}

/// Quote a CSV field when it contains commas or quotes (irrep labels like
/// `(2,1)` do).
fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

pub fn characters(group_spec: &str, output: &OutputArgs) -> CliResult<()> {
    let group = parse_group(group_spec)?;
    let table = group.character_table();
    let content = match output.format.as_str() {
        "json" => serde_json::to_string_pretty(&table.to_wire()).expect("serializable") + "\n",
        _ => {
            let mut csv = String::from("irrep,dim,class,size,re,im\n");
            for (i, (irrep, dim)) in table.irreps().iter().enumerate() {
                for (c, (class, size)) in table.classes().iter().enumerate() {
                    let chi = table.chi(i, c);
                    let _ = writeln!(
                        csv,
                        "{},{dim},{},{size},{},{}",
                        csv_field(&irrep.to_string()),
                        csv_field(&class.to_string()),
                        fnum(chi.re),
                        fnum(chi.im)
                    );
                }
            }
            csv
        }
    };
    emit(output.out.as_deref(), &content)
}

pub fn qct(group_spec: &str, out: Option<&str>) -> CliResult<()> {
    let group = parse_group(group_spec)?;
    let qct = build_qct(&group)?;
    let content = serde_json::to_string_pretty(&qct.to_wire()).expect("serializable") + "\n";
    emit(out, &content)
}

pub fn project(rep_spec: &str, irrep: usize, state_spec: &str, out: Option<&str>) -> CliResult<()> {
    let rep = parse_rep(rep_spec)?;
    if irrep >= rep.group().n_classes() {
        return Err(CliError::usage(format!(
            "irrep {irrep} out of range: {} has {} irreps",
            rep.group().name(),
            rep.group().n_classes()
        )));
    }
    let state = parse_state(state_spec, rep.n_qubits())?;
    let projected = project_and_postselect(&rep, irrep, &state)?;
    let label = rep.group().character_table().irreps()[irrep].0.to_string();
    let content = serde_json::to_string_pretty(&json!({
        "group": rep.group().name(),
        "irrep": label,
        "probability": projected.probability,
        "state": vector_to_wire(projected.state.amplitudes()),
        "rng": RNG_ALGORITHM,
        "input": state_spec,
    }))
    .expect("serializable")
        + "\n";
    emit(out, &content)
}

pub fn tgsa(rep_spec: &str, state_spec: &str, out: Option<&str>) -> CliResult<()> {
    let rep = parse_rep(rep_spec)?;
    let state = parse_state(state_spec, rep.n_qubits())?;
    let outcome = tgsa_apply(&rep, TgsaInput::Irrep(rep.group().trivial_irrep_index()), &state)?;
    let mut value = serde_json::to_value(outcome.to_wire()).expect("serializable");
    value["rng"] = json!(RNG_ALGORITHM);
    value["input"] = json!(state_spec);
    let content = serde_json::to_string_pretty(&value).expect("serializable") + "\n";
    emit(out, &content)
}

fn load_integrals(config: Option<&str>) -> CliResult<H2Integrals> {
    match config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let ints: H2Integrals = serde_json::from_str(&text)
                .map_err(|e| CliError::usage(format!("bad integrals file {path}: {e}")))?;
            Ok(ints)
        }
        None => Ok(sample_integrals()),
    }
}

pub fn sqpe(
    model: &str,
    n: usize,
    config: Option<&str>,
    state_spec: &str,
    size: Option<usize>,
    b: &str,
    output: &OutputArgs,
) -> CliResult<()> {
    let (model, default_state) = match model.to_ascii_lowercase().as_str() {
        "h2" => {
            let ints = load_integrals(config)?;
            (h2_hamiltonian(&ints)?, Some(mixed_sector_state()))
        }
        "ising" => {
            let sites = size.unwrap_or(4);
            (
                ising_hamiltonian(&IsingParams::uniform(sites, 1.0, 1.0))?,
                None,
            )
        }
        "harper" => {
            let m = size.unwrap_or(2);
            (harper_hamiltonian(m, parse_flux(b)?, 1.0, 1.0)?, None)
        }
        other => {
            return Err(CliError::usage(format!(
                "unknown model `{other}`: expected h2, ising, or harper"
            )))
        }
    };
    let state = if state_spec == "default" {
        default_state.unwrap_or_else(|| StateVector::zero(model.rep.n_qubits()))
    } else {
        parse_state(state_spec, model.rep.n_qubits())?
    };

    let dist = run_sqpe(&model.rep, &model.hamiltonian, &state, n, TgsaInput::Irrep(0))?;
    let is_h2 = model.name == "h2";
    let content = match output.format.as_str() {
        "json" => {
            let rows: Vec<_> = dist
                .rows()
                .into_iter()
                .map(|(label, u, p, e)| json!({"irrep": label, "u": u, "probability": p, "energy": e}))
                .collect();
            serde_json::to_string_pretty(&json!({
                "model": model.name,
                "n_phase_qubits": dist.n_phase_qubits,
                "calibration": dist.calibration,
                "lcu_probability": dist.lcu_probability,
                "rows": rows,
            }))
            .expect("serializable")
                + "\n"
        }
        _ => {
            let mut csv = if is_h2 {
                String::from("statistics,spin,u,probability,energy\n")
            } else {
                String::from("irrep,u,probability,energy\n")
            };
            for branch in &dist.branches {
                for (u, &p) in branch.probabilities.iter().enumerate() {
                    let e = symmetra::qpe::phase_to_energy(u as u64, n, &dist.calibration);
                    if is_h2 {
                        let (stat, spin) = h2_sector_name(branch.irrep);
                        let _ = writeln!(csv, "{stat},{spin},{u},{},{}", fnum(p), fnum(e));
                    } else {
                        let _ = writeln!(csv, "{},{u},{},{}", csv_field(&branch.label), fnum(p), fnum(e));
                    }
                }
            }
            csv
        }
    };
    emit(output.out.as_deref(), &content)
}

pub fn model_ising(sites: usize, a: f64, j: f64, output: &OutputArgs) -> CliResult<()> {
    let model = ising_hamiltonian(&IsingParams::uniform(sites, a, j))?;
    let projectors = ising_symmetry_projectors(sites)?;
    let mut rows: Vec<(usize, usize, f64)> = Vec::new();
    for ((k, sigma), p) in &projectors {
        let block = restrict_to_projector_range(model.hamiltonian.matrix(), p.matrix())?;
        for e in sorted_spectrum(&block)? {
            rows.push((*k, *sigma, e));
        }
    }
    let content = match output.format.as_str() {
        "json" => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(k, s, e)| json!({"k": k, "sigma": s, "energy": e}))
                .collect();
            serde_json::to_string_pretty(&json!({"model": "ising", "sites": sites, "rows": rows}))
                .expect("serializable")
                + "\n"
        }
        _ => {
            let mut csv = String::from("k,sigma,energy\n");
            for (k, s, e) in &rows {
                let _ = writeln!(csv, "{k},{s},{}", fnum(*e));
            }
            csv
        }
    };
    emit(output.out.as_deref(), &content)
}

pub fn model_harper(
    m: usize,
    b: &str,
    jx: f64,
    jy: f64,
    sweep: Option<&str>,
    output: &OutputArgs,
) -> CliResult<()> {
    let content = if let Some(sweep_spec) = sweep {
        let q_max = parse_sweep(sweep_spec)?;
        let points = butterfly_sweep(m, q_max, jx, jy)?;
        match output.format.as_str() {
            "json" => {
                let rows: Vec<_> = points
                    .iter()
                    .map(|pt| json!({"p": pt.p, "q": pt.q, "b": pt.b, "eigenvalues": pt.eigenvalues}))
                    .collect();
                serde_json::to_string_pretty(&json!({"model": "harper", "m": m, "points": rows}))
                    .expect("serializable")
                    + "\n"
            }
            _ => {
                let mut csv = String::from("b,p,q,energy\n");
                for pt in &points {
                    for e in &pt.eigenvalues {
                        let _ = writeln!(csv, "{},{},{},{}", fnum(pt.b), pt.p, pt.q, fnum(*e));
                    }
                }
                csv
            }
        }
    } else {
        let flux = parse_flux(b)?;
        let blocks = symmetra::models::harper_momentum_blocks(m, flux, jx, jy)?;
        match output.format.as_str() {
            "json" => {
                let rows: Vec<_> = blocks
                    .iter()
                    .enumerate()
                    .map(|(k, block)| {
                        json!({"k": k, "eigenvalues": sorted_spectrum(block).expect("hermitian block")})
                    })
                    .collect();
                serde_json::to_string_pretty(
                    &json!({"model": "harper", "m": m, "b": flux.value(), "blocks": rows}),
                )
                .expect("serializable")
                    + "\n"
            }
            _ => {
                let mut csv = String::from("k,energy\n");
                for (k, block) in blocks.iter().enumerate() {
                    for e in sorted_spectrum(block)? {
                        let _ = writeln!(csv, "{k},{}", fnum(e));
                    }
                }
                csv
            }
        }
    };
    emit(output.out.as_deref(), &content)
}

pub fn model_h2(config: Option<&str>, output: &OutputArgs) -> CliResult<()> {
    let ints = load_integrals(config)?;
    let model = h2_hamiltonian(&ints)?;
    let mut rows = Vec::new();
    for irrep in 0..4 {
        let p = projector_matrix(&model.rep, irrep)?;
        let block = restrict_to_projector_range(model.hamiltonian.matrix(), p.matrix())?;
        let (stat, spin) = h2_sector_name(irrep);
        for e in sorted_spectrum(&block)? {
            rows.push((stat, spin, e));
        }
    }
    let content = match output.format.as_str() {
        "json" => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(stat, spin, e)| json!({"statistics": stat, "spin": spin, "energy": e}))
                .collect();
            serde_json::to_string_pretty(&json!({"model": "h2", "rows": rows}))
                .expect("serializable")
                + "\n"
        }
        _ => {
            let mut csv = String::from("statistics,spin,energy\n");
            for (stat, spin, e) in &rows {
                let _ = writeln!(csv, "{stat},{spin},{}", fnum(*e));
            }
            csv
        }
    };
    emit(output.out.as_deref(), &content)
}

pub fn model_para(d: usize, output: &OutputArgs) -> CliResult<()> {
    let sectors = three_particle_projectors(d)?;
    let content = match output.format.as_str() {
        "json" => {
            let rows: Vec<_> = sectors
                .iter()
                .map(|s| json!({"irrep": s.label, "dim": s.irrep_dim, "rank": s.rank}))
                .collect();
            serde_json::to_string_pretty(&json!({"model": "para", "d": d, "sectors": rows}))
                .expect("serializable")
                + "\n"
        }
        _ => {
            let mut csv = String::from("irrep,dim,rank\n");
            for s in &sectors {
                let _ = writeln!(csv, "{},{},{}", csv_field(&s.label), s.irrep_dim, s.rank);
            }
            csv
        }
    };
    emit(output.out.as_deref(), &content)
}

fn depth_name(est: &ResourceEstimate) -> &'static str {
    match est.depth_class {
        symmetra::resources::DepthClass::Linear => "linear",
        symmetra::resources::DepthClass::Quadratic => "quadratic",
        symmetra::resources::DepthClass::Exponential => "exponential",
    }
}

pub fn resources(max_m: u64, unary: Option<&str>, output: &OutputArgs) -> CliResult<()> {
    let mut rows: Vec<(String, String, u64, ResourceEstimate)> = Vec::new();
    for m in 1..=max_m {
        for (name, scheme) in [
            ("incrementer", CyclicScheme::Incrementer),
            ("adder", CyclicScheme::Adder),
        ] {
            rows.push((
                "increment".into(),
                name.into(),
                m,
                cyclic_increment_resources(m, scheme),
            ));
            rows.push((
                "select".into(),
                name.into(),
                m,
                cyclic_select_resources(m, scheme),
            ));
        }
    }
    let unary_row = match unary {
        Some(spec) => {
            let (n_conj, max_class) = spec
                .split_once('/')
                .and_then(|(a, b)| Some((a.parse::<u64>().ok()?, b.parse::<u64>().ok()?)))
                .ok_or_else(|| {
                    CliError::usage(format!("bad unary spec `{spec}`: expected N_CONJ/MAX_CLASS"))
                })?;
            Some((n_conj, max_class, unary_iteration_resources(n_conj, max_class)))
        }
        None => None,
    };

    let content = match output.format.as_str() {
        "json" => {
            let mut value = json!({
                "rows": rows.iter().map(|(op, scheme, m, est)| json!({
                    "op": op, "scheme": scheme, "m": m,
                    "t": est.t_count, "toffoli": est.toffoli_count,
                    "ancilla": est.ancilla_qubits, "depth": depth_name(est),
                    "leading_term_only": est.leading_term_only,
                })).collect::<Vec<_>>(),
            });
            if let Some((n_conj, max_class, est)) = unary_row {
                value["unary_iteration"] = json!({
                    "n_conj": n_conj, "max_class": max_class,
                    "t": est.t_count, "toffoli": est.toffoli_count,
                    "ancilla": est.ancilla_qubits,
                });
            }
            serde_json::to_string_pretty(&value).expect("serializable") + "\n"
        }
        _ => {
            let mut csv = String::from("op,scheme,m,t,toffoli,ancilla,depth,leading_term_only\n");
            for (op, scheme, m, est) in &rows {
                let _ = writeln!(
                    csv,
                    "{op},{scheme},{m},{},{},{},{},{}",
                    est.t_count,
                    est.toffoli_count,
                    est.ancilla_qubits,
                    depth_name(est),
                    est.leading_term_only
                );
            }
            if let Some((n_conj, max_class, est)) = unary_row {
                let _ = writeln!(
                    csv,
                    "unary_iteration,{n_conj}/{max_class},,{},{},{},{},true",
                    est.t_count,
                    est.toffoli_count,
                    est.ancilla_qubits,
                    depth_name(&est)
                );
            }
            csv
        }
    };
    emit(output.out.as_deref(), &content)
}

pub fn selftest(verbose: bool) -> ExitCode {
    let scale = selftest::tolerance_scale_from_env();
    println!("acceptance suite (tolerance scale {scale}, rng {RNG_ALGORITHM})");
    let report = selftest::run_all(scale);
    for result in &report.results {
        let verdict = if result.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} [{verdict}] {}", result.id, result.name);
        if verbose || !result.passed {
            for line in &result.details {
                println!("    {line}");
            }
        }
    }
    if report.all_passed() {
        println!("all criteria passed");
        ExitCode::SUCCESS
    } else {
        let failed: Vec<String> = report
            .results
            .iter()
            .filter(|r| !r.passed)
            .map(|r| r.id.to_string())
            .collect();
        println!("failed criteria: {}", failed.join(", "));
        ExitCode::FAILURE
    }
}
