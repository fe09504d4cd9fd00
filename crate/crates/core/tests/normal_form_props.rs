mod common;

use common::{matrix, vector};
use mcg_core::algebra::{self, rank};
use mcg_core::cohomology::{build_phi_c, principal_cocycle};
use mcg_core::normal_form::rigidity::{commutant, same_span, u_commutant, u_commutant_fixed};
use mcg_core::normal_form::{
    classify_dichotomy, condition_check, extra_gen_solve, failed_conditions, key_lemma_solve,
    mixed_blocks_commute, normalize_chain, normalize_chain_2g, DichotomyVerdict, Role,
};
use mcg_core::samples::{self, Violation};
use mcg_core::symplectic::{a_matrix, b_matrix, c_matrix, rho0_word, tilde};
use mcg_core::{GeneratorId, Matrix, Scalar, SurfaceSig, TwistWord};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn key_lemma_round_trip(seed in any::<u64>(), g in 2u32..=5) {
        let (x, form) = samples::key_lemma_instance(&mut samples::rng(seed, &[]), g);
        let sol = key_lemma_solve(&x, g, 1).unwrap().unwrap();
        prop_assert_eq!(&sol.form, &form);
        prop_assert!(sol.form.verify().is_ok() && sol.form.is_split());
        prop_assert_eq!(sol.conjugated, form.to_matrix(g));
    }

    #[test]
    fn chain_output_invariants(seed in any::<u64>(), g in 2u32..=5) {
        let (xs, expected) = samples::chain_instance(&mut samples::rng(seed, &[]), g);
        let chain = normalize_chain(&xs, g).unwrap().unwrap();
        prop_assert!(chain.check_invariants().is_ok());
        prop_assert_eq!(chain, expected);
    }

    #[test]
    fn chain_2g_round_trip(seed in any::<u64>(), g in 2u32..=5) {
        let (xs, p_list) = samples::chain_2g_instance(&mut samples::rng(seed, &[]), g);
        let chain = normalize_chain_2g(&xs, g).unwrap().unwrap();
        prop_assert!(chain.verify(&xs).unwrap().is_ok());
        prop_assert_eq!(chain.p_list, p_list);
    }

    #[test]
    fn extra_generator_round_trip(seed in any::<u64>(), g in 2u32..=5) {
        let (f, form) = samples::extra_instance(&mut samples::rng(seed, &[]), g);
        let got = extra_gen_solve(&f, g, 1).unwrap().unwrap();
        prop_assert_eq!(got.to_matrix(g), f);
        prop_assert_eq!(got, form);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn wide_tail_round_trip(seed in any::<u64>(), g in 2u32..=3, m in 2usize..=3) {
        let (x, form) = samples::key_lemma_instance_wide(&mut samples::rng(seed, &[]), g, m);
        prop_assert!(form.verify().is_ok());
        prop_assert_eq!(condition_check(&x, Role::Chain(1), g, m).unwrap(), Ok(()));
        let sol = key_lemma_solve(&x, g, m).unwrap().unwrap();
        prop_assert_eq!(sol.form, form);
    }

    #[test]
    fn violations_break_exactly_one_condition(seed in any::<u64>(), g in 3u32..=4, m in 0usize..=1) {
        let mut r = samples::rng(seed, &[]);
        let (xs, _) = samples::chain_instance(&mut r, g);
        let k = 1 + (seed % (g as u64 - 1)) as u32;
        let x = if m == 1 { xs[k as usize - 1].clone() } else { c_matrix(g, k) };
        prop_assert!(failed_conditions(&x, Role::Chain(k), g, m).unwrap().is_empty());
        for which in Violation::ALL {
            let bad = samples::chain_violation(&x, g, k, m, which).unwrap();
            let failed = failed_conditions(&bad, Role::Chain(k), g, m).unwrap();
            prop_assert_eq!(failed.len(), 1);
            prop_assert_eq!(failed[0].stage.as_str(), which.stage());
            let first = condition_check(&bad, Role::Chain(k), g, m).unwrap().unwrap_err();
            prop_assert_eq!(first.stage.as_str(), which.stage());
        }
    }

    #[test]
    fn dichotomy_recovers_cocycles(g in 2u32..=3, p in 0u32..=1, r in 0u32..=1, w0 in vector(6)) {
        let sig = SurfaceSig::new(g, p, r).unwrap();
        let c = principal_cocycle(&sig, &w0[..sig.homology_dim()]).unwrap();
        let phi = build_phi_c(&c).unwrap();
        let a = classify_dichotomy(&phi).unwrap();
        prop_assert_eq!(a.verdict, DichotomyVerdict::TypeA);
        prop_assert_eq!(a.extracted.as_ref(), Some(&c));
        let b = classify_dichotomy(&phi.dual().unwrap()).unwrap();
        prop_assert_eq!(b.verdict, DichotomyVerdict::TypeB);
        prop_assert_eq!(b.extracted.as_ref(), Some(&c));
    }

    #[test]
    fn mixed_blocks_commute_only_if_outer_product_vanishes(
        letters in prop::collection::vec((0usize..4, -1i32..=1), 0..4),
        power in 0u32..=2,
        w in vector(4),
        s in vector(4),
        kill in 0u8..4,
    ) {
        let sig = SurfaceSig::closed(2).unwrap();
        let gens = [GeneratorId::a(1), GeneratorId::b(1), GeneratorId::a(2), GeneratorId::b(2)];
        let x = rho0_word(&sig, &TwistWord::from_letters(letters.into_iter().map(|(i, e)| (gens[i], e)))).unwrap();
        let y = x.pow(power);
        let zero = algebra::zero_vec(4);
        let w = if kill & 1 == 1 { zero.clone() } else { w };
        let s = if kill & 2 == 2 { zero } else { s };
        let (commute, outer_zero) = mixed_blocks_commute(&x, &w, &y, &s);
        if commute {
            prop_assert!(outer_zero);
        }
        let row_fixed = &Matrix::row_vector(&s) * &x == Matrix::row_vector(&s);
        if outer_zero && y.mul_vec(&w).unwrap() == w && row_fixed {
            prop_assert!(commute);
        }
    }

    #[test]
    fn commutant_elements_commute(m in (1usize..=4).prop_flat_map(|n| matrix(n, n))) {
        let n = m.rows();
        let basis = commutant(std::slice::from_ref(&m));
        prop_assert!(basis.len() >= n);
        for z in &basis {
            prop_assert_eq!(z * &m, &m * z);
        }
        let flat = Matrix::from_fn(basis.len(), n * n, |r, c| basis[r].entries()[c].clone());
        prop_assert_eq!(rank(&flat), basis.len());
    }
}

#[test]
fn u_block_spaces() {
    let n = Matrix::from_ints(&[[0, 1], [0, 0]]);
    assert!(same_span(&u_commutant(), &[Matrix::identity(2), n.clone()]));
    assert!(same_span(&u_commutant_fixed(), &[n]));
}

#[test]
fn non_symplectic_generator_set_gives_larger_commutant() {
    // Dropping the B_i leaves far more freedom than the g block scalars.
    let g = 3;
    let only_a: Vec<Matrix> = (1..=g).map(|i| a_matrix(g, i)).collect();
    assert!(commutant(&only_a).len() > g as usize);
    let all: Vec<Matrix> = (1..=g)
        .flat_map(|i| [a_matrix(g, i), b_matrix(g, i)])
        .collect();
    assert_eq!(commutant(&all).len(), g as usize);
}

#[test]
fn tilde_generators_pass_for_every_tail() {
    for m in 0..=3 {
        let x = tilde(&c_matrix(3, 2), m);
        assert_eq!(condition_check(&x, Role::Chain(2), 3, m).unwrap(), Ok(()));
        assert_eq!(
            key_lemma_solve(&tilde(&c_matrix(3, 1), m), 3, m)
                .unwrap()
                .unwrap()
                .form
                .p,
            Scalar::one()
        );
    }
}
