use anyhow::{anyhow, bail, Context, Result};
use mcg_core::cohomology::{build_phi_c, check_cocycle_on_relations, cohomologous_mod_scalar};
use mcg_core::normal_form::{
    assert_eigen_theorem, classify_dichotomy, extra_gen_solve, key_lemma_replay, key_lemma_solve,
    normalize_chain, normalize_chain_2g, Checked, DichotomyVerdict, SolverReport,
};
use mcg_core::selftest;
use mcg_core::surface::{generator_set, relation_catalog};
use mcg_core::symplectic::{rho0, rotation_g, symplectic_form};
use mcg_core::{CrossedHomData, GeneratorRep, Matrix, SurfaceSig};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map};

use crate::io::{read_json, single_input, write_json, write_text};
use crate::{Common, Status};

fn require_sig(c: &Common) -> Result<SurfaceSig> {
    c.sig()?.ok_or_else(|| anyhow!("--genus is required"))
}

fn status(pass: bool) -> Status {
    if pass {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

pub fn gen(c: &Common) -> Result<Status> {
    let sig = require_sig(c)?;
    let mut bundle = Map::new();
    for gen in generator_set(&sig)? {
        bundle.insert(gen.to_string(), serde_json::to_value(rho0(&sig, gen)?)?);
    }
    bundle.insert("G".into(), serde_json::to_value(rotation_g(sig.g)?)?);
    bundle.insert("J".into(), serde_json::to_value(symplectic_form(sig.g))?);
    write_json(c.output.as_deref(), &bundle)?;
    Ok(Status::Pass)
}

#[derive(Serialize)]
struct RelReport {
    label: &'static str,
    dim: usize,
    relations: usize,
    failures: Vec<String>,
}

/// Without an input file, checks both the symplectic representation and its
/// extension by the trivial summand.
pub fn relcheck(c: &Common) -> Result<Status> {
    let reps = match c.input.as_slice() {
        [] => {
            let sig = require_sig(c)?;
            vec![
                ("rho0", GeneratorRep::rho0(sig)?),
                ("rho0+trivial", GeneratorRep::rho0_plus_trivial(sig)?),
            ]
        }
        _ => vec![("input", read_json::<GeneratorRep>(single_input(&c.input)?)?)],
    };
    let mut reports = Vec::new();
    for (label, rep) in &reps {
        let relations = relation_catalog(rep.sig())?
            .iter()
            .filter(|r| r.is_checkable())
            .count();
        reports.push(RelReport {
            label,
            dim: rep.dim(),
            relations,
            failures: rep.relation_failures()?,
        });
    }
    let pass = reports.iter().all(|r| r.failures.is_empty());
    write_json(
        c.output.as_deref(),
        &json!({ "verdict": verdict(pass), "sig": reps[0].1.sig(), "reports": reports }),
    )?;
    Ok(status(pass))
}

pub fn build_rep(c: &Common) -> Result<Status> {
    let cocycle: CrossedHomData = read_json(single_input(&c.input)?)?;
    let violations = check_cocycle_on_relations(&cocycle)?;
    if !violations.is_empty() {
        write_json(
            c.output.as_deref(),
            &json!({ "verdict": "fail", "violations": violations }),
        )?;
        return Ok(Status::Fail);
    }
    write_json(c.output.as_deref(), &build_phi_c(&cocycle)?)?;
    Ok(Status::Pass)
}

pub fn analyze(c: &Common) -> Result<Status> {
    let rep: GeneratorRep = read_json(single_input(&c.input)?)?;
    let checks = rep
        .generators()
        .iter()
        .map(|&g| assert_eigen_theorem(&rep, g))
        .collect::<mcg_core::Result<Vec<_>>>()?;
    let pass = checks.iter().all(|e| e.pass);
    write_json(
        c.output.as_deref(),
        &json!({ "verdict": verdict(pass), "generators": checks }),
    )?;
    Ok(status(pass))
}

pub fn classify(c: &Common) -> Result<Status> {
    let rep: GeneratorRep = read_json(single_input(&c.input)?)?;
    let result = classify_dichotomy(&rep)?;
    let pass = !matches!(result.verdict, DichotomyVerdict::NotBlockForm { .. });
    write_json(c.output.as_deref(), &result)?;
    Ok(status(pass))
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Solver {
    #[default]
    Chain,
    KeyLemma,
    Replay,
    Extra,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum NormalizeInput {
    Full {
        #[serde(default)]
        solver: Solver,
        #[serde(default, alias = "g")]
        genus: Option<u32>,
        matrices: Vec<Matrix>,
    },
    Bare(Vec<Matrix>),
}

/// Input: `{"solver": .., "genus": .., "matrices": [..]}` or a bare list.
/// The chain solver picks the `2g` or `2g+1` variant from the matrix size;
/// the single-matrix solvers read the tail size off it.
pub fn normalize(c: &Common) -> Result<Status> {
    let (solver, genus, xs) = match read_json(single_input(&c.input)?)? {
        NormalizeInput::Full {
            solver,
            genus,
            matrices,
        } => (solver, genus, matrices),
        NormalizeInput::Bare(m) => (Solver::Chain, None, m),
    };
    let first = xs.first().ok_or_else(|| anyhow!("no matrices given"))?;
    let n = first.rows();
    if xs.iter().any(|x| x.shape() != (n, n)) {
        bail!("all matrices must be square of the same size");
    }
    let g = match (genus.or(c.genus), solver) {
        (Some(g), _) => g,
        (None, Solver::Chain) => u32::try_from(xs.len() + 1)?,
        (None, _) => bail!("--genus (or a \"genus\" field) is required for this solver"),
    };
    let dim2g = 2 * g as usize;
    if n < dim2g {
        bail!("matrices are {n}x{n}, smaller than 2g = {dim2g}");
    }
    let m = n - dim2g;
    let single = || -> Result<&Matrix> {
        match xs.as_slice() {
            [x] => Ok(x),
            _ => bail!("this solver takes exactly one matrix, got {}", xs.len()),
        }
    };
    let report = match solver {
        Solver::Chain => match m {
            0 => report(&normalize_chain_2g(&xs, g)?)?,
            1 => report(&normalize_chain(&xs, g)?)?,
            _ => bail!("chain normalization needs size 2g or 2g+1, got {n} for g={g}"),
        },
        Solver::KeyLemma => report(&key_lemma_solve(single()?, g, m)?)?,
        Solver::Replay => report(&key_lemma_replay(single()?, g, m)?)?,
        Solver::Extra => report(&extra_gen_solve(single()?, g, m)?)?,
    };
    let pass = report.passed();
    write_json(c.output.as_deref(), &report)?;
    Ok(status(pass))
}

fn report<T: Serialize>(outcome: &Checked<T>) -> Result<SolverReport> {
    Ok(SolverReport::from_checked(outcome)?)
}

pub fn equiv(c: &Common) -> Result<Status> {
    let [a, b] = c.input.as_slice() else {
        bail!(
            "equiv needs exactly two --input files, got {}",
            c.input.len()
        );
    };
    let c1: CrossedHomData = read_json(a)?;
    let c2: CrossedHomData = read_json(b)?;
    let out = match cohomologous_mod_scalar(&c1, &c2)? {
        Some(cert) => {
            if !cert.verify(&c1, &c2)? {
                bail!("internal: certificate failed to verify");
            }
            json!({ "verdict": "feasible", "mu": cert.mu, "w": cert.w })
        }
        None => json!({ "verdict": "infeasible" }),
    };
    let pass = out["verdict"] == "feasible";
    write_json(c.output.as_deref(), &out)?;
    Ok(status(pass))
}

/// Prints a summary table; `--output` additionally receives the JSON results.
pub fn selftest(c: &Common, only: &[u8]) -> Result<Status> {
    let results = if only.is_empty() {
        selftest::run_all(c.seed)
    } else {
        let mut ids = only.to_vec();
        ids.sort_unstable();
        ids.dedup();
        ids.iter()
            .map(|&id| {
                selftest::run_criterion(id, c.seed).with_context(|| format!("no criterion {id}"))
            })
            .collect::<Result<Vec<_>>>()?
    };
    let mut table = String::new();
    for r in &results {
        table.push_str(&format!("{r}\n"));
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    table.push_str(&format!(
        "{} passed, {failed} failed (seed {})\n",
        results.len() - failed,
        c.seed
    ));
    match c.output.as_deref() {
        Some(p) if p.as_os_str() != "-" => {
            print!("{table}");
            write_json(Some(p), &json!({ "seed": c.seed, "results": results }))?;
        }
        _ => write_text(None, &table)?,
    }
    Ok(status(failed == 0))
}
