//! The seeded invariant suite. Each criterion builds its instances from
//! [`crate::samples`], runs the public solvers, and re-checks the outputs
//! against the defining identities. Everything is exact.

use std::fmt;

use serde::Serialize;

use crate::algebra::{self, determinant, rank, Matrix, Scalar, Vector};
use crate::cohomology::{
    build_phi_c, cohomologous_mod_scalar, principal_cocycle, CrossedHomData, GeneratorRep,
};
use crate::normal_form::rigidity::{block_scalar_basis, same_span, symplectic_commutant};
use crate::normal_form::{
    assert_eigen_theorem, classify_dichotomy, condition_check, failed_conditions, key_lemma_solve,
    normalize_chain, normalize_chain_2g, DichotomyVerdict, KeyLemmaForm, Role,
};
use crate::samples::{self, Violation};
use crate::surface::{generator_set, relation_catalog, Family, SurfaceSig};
use crate::symplectic::{
    a_matrix, b_matrix, block_embed, c_matrix, curve_class, pl_twist_matrix, rho0, rotation_g,
    symplectic_form, HomologyClass,
};
use crate::Error;

pub const DEFAULT_SEED: u64 = 0x6d63_6772_6570;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} [{}] {}: {}", self.id, self.name, self.detail)
    }
}

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "relation soundness"),
    (2, "Picard-Lefschetz consistency"),
    (3, "rotation identities"),
    (4, "conjugation lemma"),
    (5, "eigen-structure"),
    (6, "key-lemma suite"),
    (7, "chain normalization"),
    (8, "dichotomy and equivalence"),
    (9, "rigidity solution space"),
];

struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(format!("error: {e}"))
    }
}

type Run = std::result::Result<String, Failure>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), Failure> {
    if cond {
        Ok(())
    } else {
        Err(Failure(msg()))
    }
}

/// Runs one criterion by id (1..=9).
pub fn run_criterion(id: u8, seed: u64) -> Option<CriterionResult> {
    let (_, name) = *CRITERIA.iter().find(|c| c.0 == id)?;
    let outcome = match id {
        1 => relation_soundness(),
        2 => picard_lefschetz(),
        3 => rotation_identities(),
        4 => conjugation_lemma(seed),
        5 => eigen_structure(seed),
        6 => key_lemma_suite(seed),
        7 => chain_suite(seed),
        8 => dichotomy_suite(seed),
        _ => rigidity(),
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(Failure(d)) => (false, d),
    };
    Some(CriterionResult {
        id,
        name,
        passed,
        detail,
    })
}

/// All criteria, one thread each, sorted by id.
pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .map(|&(id, _)| scope.spawn(move || run_criterion(id, seed)))
            .collect();
        handles
            .into_iter()
            .filter_map(|h| h.join().expect("criterion thread panicked"))
            .collect()
    })
}

fn closed(g: u32) -> Result<SurfaceSig, Failure> {
    Ok(SurfaceSig::closed(g)?)
}

fn relation_soundness() -> Run {
    let mut checked = 0;
    for g in 2..=8 {
        let sig = closed(g)?;
        let n = relation_catalog(&sig)?
            .iter()
            .filter(|r| r.is_checkable())
            .count();
        for (label, rep) in [
            ("rho0", GeneratorRep::rho0(sig)?),
            ("rho0+trivial", GeneratorRep::rho0_plus_trivial(sig)?),
        ] {
            let bad = rep.relation_failures()?;
            ensure(bad.is_empty(), || {
                format!(
                    "g={g} {label}: {} relations fail, first {}",
                    bad.len(),
                    bad[0]
                )
            })?;
            checked += n;
        }
    }
    Ok(format!(
        "g=2..8, {checked} relation instances hold under rho0 and rho0+trivial"
    ))
}

fn picard_lefschetz() -> Run {
    let mut count = 0;
    for g in 2..=8 {
        let sig = closed(g)?;
        let j = symplectic_form(g);
        for gen in generator_set(&sig)? {
            let m = rho0(&sig, gen)?;
            ensure(
                m == pl_twist_matrix(&curve_class(&sig, gen)?.to_vector()),
                || format!("g={g} {gen}: rho0 != PL"),
            )?;
            let literal = match gen.family {
                Family::A => a_matrix(g, gen.index),
                Family::B => b_matrix(g, gen.index),
                Family::C => c_matrix(g, gen.index),
                Family::E | Family::F => unreachable!("closed surface"),
            };
            ensure(m == literal, || {
                format!("g={g} {gen}: PL differs from the block matrix")
            })?;
            ensure(&(&m.transpose() * &j) * &m == j, || {
                format!("g={g} {gen}: not symplectic")
            })?;
            ensure(determinant(&m)?.is_one(), || {
                format!("g={g} {gen}: det != 1")
            })?;
            count += 1;
        }
    }
    Ok(format!(
        "g=2..8, {count} generator images match PL and the block matrices, symplectic, det 1"
    ))
}

fn rotation_identities() -> Run {
    for g in 3..=6 {
        let rot = rotation_g(g)?;
        let inv = algebra::inverse(&rot)?;
        let conj = |m: &Matrix| &(&inv * m) * &rot;
        ensure(rot.transpose() == inv, || format!("g={g}: ᵗG != G⁻¹"))?;
        ensure(rot.pow(g).is_identity(), || format!("g={g}: G^g != I"))?;
        let prev = |i: u32| if i == 1 { g } else { i - 1 };
        for i in 1..=g {
            ensure(conj(&a_matrix(g, i)) == a_matrix(g, prev(i)), || {
                format!("g={g}: G⁻¹A{i}G")
            })?;
            ensure(conj(&b_matrix(g, i)) == b_matrix(g, prev(i)), || {
                format!("g={g}: G⁻¹B{i}G")
            })?;
        }
        for k in 2..g {
            ensure(conj(&c_matrix(g, k)) == c_matrix(g, k - 1), || {
                format!("g={g}: G⁻¹C{k}G")
            })?;
        }
        // C_0 = C_g is the transvection along x_g - x_1.
        let wrap = &HomologyClass::x(g, g) - &HomologyClass::x(g, 1);
        ensure(
            conj(&c_matrix(g, 1)) == pl_twist_matrix(&wrap.to_vector()),
            || format!("g={g}: G⁻¹C1G != C_g"),
        )?;
    }
    Ok("g=3..6, A/B/C shift down one index mod g, ᵗG = G⁻¹, G^g = I".into())
}

fn conjugation_lemma(seed: u64) -> Run {
    let mut cases = 0;
    for g in 2..=5 {
        let sig = closed(g)?;
        let n = sig.homology_dim();
        for case in 0..50 {
            let mut rng = samples::rng(seed, &[4, g as u64, case]);
            let (_, c) = samples::principal(&mut rng, &sig)?;
            let w0 = samples::vector(&mut rng, n);
            let z = samples::nonzero_scalar(&mut rng);
            let phi = build_phi_c(&c)?;

            let shifted = phi.conjugate(&block_embed(&w0, &Matrix::identity(n))?)?;
            let c_prime = c.sub(&principal_cocycle(&sig, &w0)?)?;
            ensure(shifted == build_phi_c(&c_prime)?, || {
                format!("g={g} case={case}: translation conjugation")
            })?;

            let scaled =
                phi.conjugate(&block_embed(&algebra::zero_vec(n), &Matrix::scalar(n, &z))?)?;
            ensure(scaled == build_phi_c(&c.scale(&z))?, || {
                format!("g={g} case={case}: scalar conjugation")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} seeded (w0, z) pairs over g=2..5"))
}

fn eigen_structure(seed: u64) -> Run {
    let mut images = 0;
    for g in 2..=8 {
        let sig = closed(g)?;
        let mut rng = samples::rng(seed, &[5, g as u64]);
        let (_, c) = samples::principal(&mut rng, &sig)?;
        let rep = build_phi_c(&c)?;
        for &gen in rep.generators() {
            let check = assert_eigen_theorem(&rep, gen)?;
            ensure(check.pass, || {
                format!(
                    "g={g} {gen}: mult {} dim E1 {}",
                    check.report.mult_of_one, check.report.eigenspace_dim_one
                )
            })?;
            images += 1;
        }
    }
    Ok(format!(
        "g=2..8, {images} images: char_poly (x-1)^(2g+1), dim E1 = 2g"
    ))
}

fn wide_tail_fixture() -> KeyLemmaForm {
    let ints = |v: &[i64]| v.iter().map(|&x| Scalar::from_int(x)).collect::<Vector>();
    KeyLemmaForm {
        m: 2,
        p: Scalar::one(),
        w: ints(&[1, 1]),
        s: ints(&[1, -1]),
        t: Matrix::from_ints(&[[2, 1], [-1, 0]]),
    }
}

fn key_lemma_suite(seed: u64) -> Run {
    let mut cases = 0;
    for g in 2..=4 {
        for case in 0..100 {
            let mut rng = samples::rng(seed, &[6, g as u64, case]);
            let (x, form) = samples::key_lemma_instance(&mut rng, g);
            let ctx = || format!("g={g} case={case}");
            let sol = match key_lemma_solve(&x, g, 1)? {
                Ok(sol) => sol,
                Err(w) => {
                    return Err(Failure(format!(
                        "{}: rejected at {} {}",
                        ctx(),
                        w.stage,
                        w.context
                    )))
                }
            };
            ensure(sol.form == form, || {
                format!("{}: recovered form differs", ctx())
            })?;
            ensure(sol.form.verify().is_ok() && sol.form.is_split(), || {
                format!("{}: form identities", ctx())
            })?;
            ensure(sol.conjugator == form.conjugator(g), || {
                format!("{}: conjugator", ctx())
            })?;
            let back = &(&algebra::inverse(&sol.conjugator)? * &x) * &sol.conjugator;
            ensure(back == sol.conjugated && back == form.to_matrix(g), || {
                format!("{}: P⁻¹XP", ctx())
            })?;
            cases += 1;
        }
    }

    let form = wide_tail_fixture();
    let (w, s, t) = (
        Matrix::row_vector(&form.w),
        Matrix::column(&form.s),
        form.t.clone(),
    );
    ensure((&w * &s).is_zero(), || "fixture: ᵗws != 0".into())?;
    ensure(&w * &t == w, || "fixture: ᵗwT != ᵗw".into())?;
    ensure(&t * &s == s, || "fixture: Ts != s".into())?;
    ensure(&(&t * &t) - &t == &s * &w, || "fixture: T²-T != sᵗw".into())?;
    for g in 2..=4 {
        let x = form.to_matrix(g);
        ensure(condition_check(&x, Role::Chain(1), g, 2)?.is_ok(), || {
            format!("fixture g={g}: conditions fail")
        })?;
        let sol = key_lemma_solve(&x, g, 2)?
            .map_err(|w| Failure(format!("fixture g={g}: rejected at {}", w.stage)))?;
        let both = !algebra::is_zero_vec(&sol.form.w) && !algebra::is_zero_vec(&sol.form.s);
        ensure(both && sol.form == form, || {
            format!("fixture g={g}: expected both w, s nonzero")
        })?;
    }
    Ok(format!(
        "{cases} round trips at m=1 over g=2..4; m=2 fixture keeps w != 0 and s != 0"
    ))
}

fn chain_suite(seed: u64) -> Run {
    let (mut trips, mut violations) = (0, 0);
    for g in 3..=5 {
        for case in 0..100 {
            let mut rng = samples::rng(seed, &[7, g as u64, case]);
            let ctx = || format!("g={g} case={case}");
            let (xs, expected) = samples::chain_instance(&mut rng, g);
            let chain = normalize_chain(&xs, g)?.map_err(|w| {
                Failure(format!(
                    "{}: chain rejected at {} {}",
                    ctx(),
                    w.stage,
                    w.context
                ))
            })?;
            ensure(chain == expected, || {
                format!("{}: chain output differs", ctx())
            })?;
            ensure(chain.verify(&xs)?.is_ok(), || {
                format!("{}: postconditions", ctx())
            })?;

            let (xs2, p_list) = samples::chain_2g_instance(&mut rng, g);
            let c2 = normalize_chain_2g(&xs2, g)?.map_err(|w| {
                Failure(format!(
                    "{}: 2g chain rejected at {} {}",
                    ctx(),
                    w.stage,
                    w.context
                ))
            })?;
            ensure(c2.p_list == p_list && c2.verify(&xs2)?.is_ok(), || {
                format!("{}: 2g postconditions", ctx())
            })?;
            trips += 1;

            if case < 3 {
                violations += chain_violations(&xs, g, 1)? + chain_violations(&xs2, g, 0)?;
            }
        }
    }
    Ok(format!("{trips} round trips each for dims 2g+1 and 2g over g=3..5; {violations} single-condition violations rejected"))
}

/// Replaces each `X_k` in turn by a matrix breaking exactly one condition,
/// and checks both the condition report and the solver's rejection.
fn chain_violations(xs: &[Matrix], g: u32, m: usize) -> std::result::Result<usize, Failure> {
    let mut count = 0;
    for k in 1..g {
        for which in Violation::ALL {
            let Some(bad) = samples::chain_violation(&xs[k as usize - 1], g, k, m, which) else {
                continue;
            };
            let ctx = || format!("g={g} m={m} k={k} violation {}", which.stage());
            let failed = failed_conditions(&bad, Role::Chain(k), g, m)?;
            ensure(
                failed.len() == 1 && failed[0].stage == which.stage(),
                || {
                    format!(
                        "{}: failed conditions {:?}",
                        ctx(),
                        failed.iter().map(|w| &w.stage).collect::<Vec<_>>()
                    )
                },
            )?;
            ensure(failed[0].lhs != failed[0].rhs, || {
                format!("{}: witness sides agree", ctx())
            })?;
            let mut inputs = xs.to_vec();
            inputs[k as usize - 1] = bad;
            let w = if m == 1 {
                normalize_chain(&inputs, g)?.err()
            } else {
                normalize_chain_2g(&inputs, g)?.err()
            };
            let w = w.ok_or_else(|| Failure(format!("{}: accepted", ctx())))?;
            ensure(
                w.stage == which.stage() && w.context.starts_with(&format!("k={k}")),
                || format!("{}: rejected at {} {}", ctx(), w.stage, w.context),
            )?;
            ensure(w.lhs != w.rhs, || {
                format!("{}: solver witness sides agree", ctx())
            })?;
            count += 1;
        }
    }
    Ok(count)
}

fn dichotomy_suite(seed: u64) -> Run {
    let mut cases = 0;
    for g in 2..=4 {
        let sig = closed(g)?;
        for case in 0..50 {
            let mut rng = samples::rng(seed, &[8, g as u64, case]);
            let ctx = || format!("g={g} case={case}");
            let (w0, c) = samples::principal(&mut rng, &sig)?;
            let phi = build_phi_c(&c)?;
            let a = classify_dichotomy(&phi)?;
            ensure(
                a.verdict == DichotomyVerdict::TypeA && a.extracted.as_ref() == Some(&c),
                || format!("{}: type A extraction", ctx()),
            )?;
            let b = classify_dichotomy(&phi.dual()?)?;
            ensure(
                b.verdict == DichotomyVerdict::TypeB && b.extracted.as_ref() == Some(&c),
                || format!("{}: type B extraction", ctx()),
            )?;

            // c is principal plus a non-coboundary term at a1.
            let (gen, delta) = samples::off_image_at_a1(&mut rng, g);
            let base = samples::perturb(&principal_cocycle(&sig, &w0)?, gen, &delta);
            let mu = samples::nonzero_scalar(&mut rng);
            let w = samples::vector(&mut rng, sig.homology_dim());
            let c1 = base.scale(&mu).add(&principal_cocycle(&sig, &w)?)?;
            let cert = cohomologous_mod_scalar(&c1, &base)?
                .ok_or_else(|| Failure(format!("{}: feasible pair refused", ctx())))?;
            ensure(cert.verify(&c1, &base)?, || {
                format!("{}: certificate does not verify", ctx())
            })?;
            ensure(system_feasible(&c1, &base)?, || {
                format!("{}: oracle disagrees on feasible pair", ctx())
            })?;

            let (gen2, delta2) = samples::off_image_at_b1(&mut rng, g);
            let c2 = samples::perturb(&base, gen2, &delta2);
            ensure(cohomologous_mod_scalar(&c2, &base)?.is_none(), || {
                format!("{}: infeasible pair certified", ctx())
            })?;
            ensure(!system_feasible(&c2, &base)?, || {
                format!("{}: oracle finds infeasible pair feasible", ctx())
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases over g=2..4: type A and B extraction exact, equivalence certified and refused"))
}

/// Rank test for `c1 = mu c2 + (rho0 - I) w` in the unknowns `(mu, w)`.
fn system_feasible(c1: &CrossedHomData, c2: &CrossedHomData) -> std::result::Result<bool, Failure> {
    let sig = *c1.sig();
    let n = sig.homology_dim();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for &gen in c1.generators() {
        let shifted = &rho0(&sig, gen)? - &Matrix::identity(n);
        let (lhs, rhs) = (c2.get(gen)?, c1.get(gen)?);
        for r in 0..n {
            let mut row = vec![lhs[r].clone()];
            row.extend_from_slice(shifted.row(r));
            row.push(rhs[r].clone());
            rows.push(row);
        }
    }
    let aug = Matrix::from_rows(rows)?;
    let coeffs = aug.block(0, 0, aug.rows(), n + 1);
    Ok(rank(&coeffs) == rank(&aug))
}

fn rigidity() -> Run {
    for g in 1..=6 {
        let basis = symplectic_commutant(g);
        ensure(basis.len() == g as usize, || {
            format!("g={g}: commutant has dimension {}", basis.len())
        })?;
        let expected = block_scalar_basis(g);
        ensure(same_span(&basis, &expected), || {
            format!("g={g}: span differs from block scalars")
        })?;
        for z in &expected {
            for i in 1..=g {
                for m in [a_matrix(g, i), b_matrix(g, i)] {
                    ensure(z * &m == &m * z, || {
                        format!("g={g}: block scalar fails to commute")
                    })?;
                }
            }
        }
    }
    Ok("g=1..6: commutant of {A_i, B_i} has dimension g, spanned by block scalars".into())
}
